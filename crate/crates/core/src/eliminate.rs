//! The seven elimination rules and the orchestrating report.
//!
//! Every `eliminated` verdict carries a witness payload from which the
//! rule's defining predicate can be re-checked independently (see
//! [`verify_witness`]). Caps always degrade toward `inconclusive`:
//! an elimination is a certificate, an inconclusive verdict is only "no
//! certificate found under these caps".

use crate::aut::{has_involution_automorphism, is_asymmetric};
use crate::graph::{Graph, GraphStats, VertexSet};
use crate::structure::{
    orbit_restrictors, unique_neighbourhood_cliques, NbhdAnalysis, UniquenessMode,
};
use serde::Serialize;
use serde_json::{json, Value};
use std::cell::OnceCell;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RuleId {
    #[serde(rename = "R1-edge-bound")]
    EdgeBound,
    #[serde(rename = "R2-complete-valency")]
    CompleteValency,
    #[serde(rename = "R3-odd-class-involution")]
    OddClassInvolution,
    #[serde(rename = "R4-unique-clique")]
    UniqueClique,
    #[serde(rename = "R5-prime-clique")]
    PrimeClique,
    #[serde(rename = "R6-orbit-restrictor-order")]
    OrbitRestrictorOrder,
    #[serde(rename = "R7-fixed-subset")]
    FixedSubset,
}

impl RuleId {
    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::EdgeBound => "R1-edge-bound",
            RuleId::CompleteValency => "R2-complete-valency",
            RuleId::OddClassInvolution => "R3-odd-class-involution",
            RuleId::UniqueClique => "R4-unique-clique",
            RuleId::PrimeClique => "R5-prime-clique",
            RuleId::OrbitRestrictorOrder => "R6-orbit-restrictor-order",
            RuleId::FixedSubset => "R7-fixed-subset",
        }
    }
}

impl std::fmt::Display for RuleId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

pub const ALL_RULES: [RuleId; 7] = [
    RuleId::EdgeBound,
    RuleId::CompleteValency,
    RuleId::OddClassInvolution,
    RuleId::UniqueClique,
    RuleId::PrimeClique,
    RuleId::OrbitRestrictorOrder,
    RuleId::FixedSubset,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Eliminated,
    Inconclusive,
    NotApplicable,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Outcome::Eliminated => "eliminated",
            Outcome::Inconclusive => "inconclusive",
            Outcome::NotApplicable => "not-applicable",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    VertexTransitive,
    CayleyOnly,
}

impl std::fmt::Display for Scope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Scope::VertexTransitive => "vertex-transitive",
            Scope::CayleyOnly => "cayley-only",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub id: RuleId,
    pub outcome: Outcome,
    pub scope: Scope,
    pub witness: Value,
    pub explanation: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Overall {
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scope: Option<Scope>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<RuleId>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Limits {
    pub max_clique_order: usize,
    pub enum_cap: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct EliminationReport {
    /// canonical graph6 of the input
    pub input: String,
    pub n: usize,
    pub m: usize,
    pub asymmetric: bool,
    pub rules: Vec<Verdict>,
    pub overall: Overall,
    pub limits: Limits,
}

#[derive(Clone, Debug)]
pub struct Options {
    pub all_rules: bool,
    pub max_clique_order: usize,
    /// cap on isomorphism-family enumeration in R6/R7
    pub enum_cap: usize,
    /// count eliminations toward the overall verdict only at this scope
    pub scope_filter: Option<Scope>,
    /// looser reading of "product of transpositions": involutions with
    /// fixed points also qualify; never the default
    pub loose_involutions: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            all_rules: false,
            max_clique_order: 8,
            enum_cap: 20_000,
            scope_filter: None,
            loose_involutions: false,
        }
    }
}

struct Ctx<'g> {
    g: &'g Graph,
    stats: GraphStats,
    asymmetric: bool,
    analysis: OnceCell<NbhdAnalysis<'g>>,
}

impl<'g> Ctx<'g> {
    fn new(g: &'g Graph) -> Self {
        Ctx {
            g,
            stats: g.stats(),
            asymmetric: is_asymmetric(g),
            analysis: OnceCell::new(),
        }
    }

    fn analysis(&self) -> &NbhdAnalysis<'g> {
        self.analysis.get_or_init(|| NbhdAnalysis::new(self.g))
    }

    fn base_scope(&self) -> Scope {
        if self.asymmetric {
            Scope::VertexTransitive
        } else {
            Scope::CayleyOnly
        }
    }

    fn labels(&self, vs: &VertexSet) -> Vec<String> {
        vs.iter().map(|v| self.g.label_of(v)).collect()
    }

    fn has_invol(&self, g: &Graph, loose: bool) -> bool {
        has_involution_automorphism(g, loose)
    }
}

fn verdict(id: RuleId, outcome: Outcome, scope: Scope, witness: Value, expl: String) -> Verdict {
    Verdict {
        id,
        outcome,
        scope,
        witness,
        explanation: expl,
    }
}

fn r1(ctx: &Ctx) -> Verdict {
    let (n, m) = (ctx.stats.n as i64, ctx.stats.m as i64);
    let id = RuleId::EdgeBound;
    if ctx.stats.is_clique {
        verdict(
            id,
            Outcome::NotApplicable,
            Scope::VertexTransitive,
            json!({"n": n, "m": m}),
            "the graph is a clique, for which the edge bound says nothing".into(),
        )
    } else if 2 * m > n * (n - 2) {
        verdict(
            id,
            Outcome::Eliminated,
            Scope::VertexTransitive,
            json!({"n": n, "m": m}),
            format!("2m = {} exceeds n(n-2) = {}", 2 * m, n * (n - 2)),
        )
    } else {
        verdict(
            id,
            Outcome::Inconclusive,
            Scope::VertexTransitive,
            json!({"n": n, "m": m}),
            "edge count within the connectivity bound".into(),
        )
    }
}

fn r2(ctx: &Ctx) -> Verdict {
    let id = RuleId::CompleteValency;
    let n = ctx.stats.n as i64;
    let cv = &ctx.stats.complete_valency;
    let witness = json!({"n": n, "complete_valency": ctx.labels(cv)});
    if ctx.stats.is_clique {
        verdict(
            id,
            Outcome::NotApplicable,
            Scope::VertexTransitive,
            witness,
            "the graph is a clique, for which the valency bound says nothing".into(),
        )
    } else if 3 * cv.len() as i64 > n - 2 {
        verdict(
            id,
            Outcome::Eliminated,
            Scope::VertexTransitive,
            witness,
            format!(
                "{} complete-valency vertices exceed (n-2)/3 = {}/3",
                cv.len(),
                n - 2
            ),
        )
    } else {
        verdict(
            id,
            Outcome::Inconclusive,
            Scope::VertexTransitive,
            witness,
            "too few complete-valency vertices".into(),
        )
    }
}

fn r3(ctx: &Ctx, opts: &Options) -> Verdict {
    let id = RuleId::OddClassInvolution;
    let analysis = ctx.analysis();
    for (ci, class) in analysis.partition.classes.iter().enumerate() {
        if class.len() % 2 == 0 {
            continue;
        }
        let rep = analysis.class_rep(ci);
        let nbhd = &analysis.nbhd[rep].graph;
        if ctx.has_invol(nbhd, opts.loose_involutions) {
            continue;
        }
        let fast_path = class.len() == 1 && nbhd.order() % 2 == 1;
        let witness = json!({
            "class": ctx.labels(class),
            "class_size": class.len(),
            "neighbourhood": crate::aut::canonical_form(nbhd).unwrap_or_else(|_| "(n>62)".into()),
            "unique_odd_vertex": fast_path,
        });
        return verdict(
            id,
            Outcome::Eliminated,
            ctx.base_scope(),
            witness,
            format!(
                "class of size {} is odd and its neighbourhood has no \
                 automorphism that is a product of transpositions",
                class.len()
            ),
        );
    }
    verdict(
        id,
        Outcome::Inconclusive,
        ctx.base_scope(),
        json!({}),
        "every odd class has a neighbourhood with a fixed-point-free involution".into(),
    )
}

fn r4(ctx: &Ctx, opts: &Options) -> Verdict {
    let id = RuleId::UniqueClique;
    let analysis = ctx.analysis();
    for k in 1..=opts.max_clique_order.min(ctx.g.order()) {
        let witnesses = unique_neighbourhood_cliques(ctx.g, k, UniquenessMode::Iso).unwrap();
        for w in witnesses {
            for v in w.members.iter() {
                let class = analysis.partition.class_of_vertex(v);
                let inter = w.members.intersection(class);
                if inter.len() % 2 == 0 {
                    continue;
                }
                let branch = if !ctx.has_invol(&analysis.nbhd[v].graph, opts.loose_involutions) {
                    Some("neighbourhood-involution")
                } else if !w.common.is_empty()
                    && !ctx.has_invol(
                        &ctx.g.induced_subgraph(&w.common).unwrap().graph,
                        opts.loose_involutions,
                    )
                {
                    Some("common-involution")
                } else if k % 2 == 0 {
                    Some("even-clique-parity")
                } else {
                    None
                };
                if let Some(branch) = branch {
                    let witness = json!({
                        "clique": ctx.labels(&w.members),
                        "vertex": ctx.g.label_of(v),
                        "class_intersection_size": inter.len(),
                        "common": ctx.labels(&w.common),
                        "branch": branch,
                    });
                    return verdict(
                        id,
                        Outcome::Eliminated,
                        ctx.base_scope(),
                        witness,
                        format!(
                            "iso-unique clique of order {k} with odd class \
                             intersection fails the {branch} condition"
                        ),
                    );
                }
            }
        }
    }
    verdict(
        id,
        Outcome::Inconclusive,
        ctx.base_scope(),
        json!({}),
        format!(
            "no violating unique-neighbourhood clique up to order {}",
            opts.max_clique_order
        ),
    )
}

fn primes_with_pred_le(cap: usize) -> Vec<usize> {
    (2..=cap + 1)
        .filter(|&p| p >= 2 && (2..p).all(|d| !p.is_multiple_of(d)))
        .collect()
}

fn r5(ctx: &Ctx, opts: &Options) -> Verdict {
    let id = RuleId::PrimeClique;
    for p in primes_with_pred_le(opts.max_clique_order) {
        let k = p - 1;
        if k > ctx.g.order() {
            continue;
        }
        let witnesses = unique_neighbourhood_cliques(ctx.g, k, UniquenessMode::Count).unwrap();
        for w in witnesses {
            // |C| = 0 is divisible by every p, so divisibility says nothing
            if w.common.is_empty() || w.common.len() % p == 0 {
                continue;
            }
            let witness = json!({
                "p": p,
                "clique": ctx.labels(&w.members),
                "common": ctx.labels(&w.common),
                "common_count": w.common.len(),
            });
            return verdict(
                id,
                Outcome::Eliminated,
                ctx.base_scope(),
                witness,
                format!(
                    "clique of order {k} with a unique number of common \
                     neighbours {} not divisible by p = {p}",
                    w.common.len()
                ),
            );
        }
    }
    verdict(
        id,
        Outcome::Inconclusive,
        ctx.base_scope(),
        json!({}),
        "no count-unique clique of prime-minus-one order violates divisibility".into(),
    )
}

/// Does any of the restrictions have uniform cycle length d with d > 1 and
/// d dividing `modulus` (any d > 1 if `modulus` is None)?
fn some_valid_restriction(restrictions: &[crate::perm::Permutation], modulus: Option<usize>) -> bool {
    restrictions.iter().any(|r| {
        let prof = r.profile();
        if !prof.is_semiregular || prof.cycle_lengths.is_empty() {
            return false;
        }
        let d = prof.cycle_lengths[0];
        d > 1 && modulus.is_none_or(|m| m % d == 0)
    })
}

fn r6(ctx: &Ctx, opts: &Options) -> Verdict {
    let id = RuleId::OrbitRestrictorOrder;
    let analysis = ctx.analysis();
    let mut capped = false;
    for s in orbit_restrictors(analysis, opts.max_clique_order) {
        for v in s.iter() {
            let f = analysis.max_fixed_subset(v);
            if f.is_empty() {
                continue;
            }
            let class = analysis.partition.class_of[v];
            let Some(restrictions) =
                analysis.iso_restrictions(class, &f, Some(v), opts.enum_cap)
            else {
                capped = true;
                continue;
            };
            if !some_valid_restriction(&restrictions, Some(s.len() + 1)) {
                let witness = json!({
                    "clique": ctx.labels(&s),
                    "vertex": ctx.g.label_of(v),
                    "s_plus_one": s.len() + 1,
                    "fixed_subset": ctx.labels(&f),
                    "restrictions_tried": restrictions.len(),
                });
                return verdict(
                    id,
                    Outcome::Eliminated,
                    ctx.base_scope(),
                    witness,
                    format!(
                        "no isomorphism restricts on F to a semiregular \
                         permutation of order dividing |S|+1 = {}",
                        s.len() + 1
                    ),
                );
            }
        }
    }
    let note = if capped {
        "isomorphism enumeration cap exceeded for at least one restrictor"
    } else {
        "every orbit-restrictor admits a valid semiregular restriction"
    };
    verdict(
        id,
        Outcome::Inconclusive,
        ctx.base_scope(),
        json!({"capped": capped}),
        note.into(),
    )
}

fn r7(ctx: &Ctx, opts: &Options) -> Verdict {
    let id = RuleId::FixedSubset;
    let analysis = ctx.analysis();
    let mut capped = false;
    for class in 0..analysis.class_count() {
        let rep = analysis.class_rep(class);
        let f = analysis.max_fixed_subset(rep);
        if f.is_empty() {
            continue;
        }
        let Some(restrictions) = analysis.iso_restrictions(class, &f, None, opts.enum_cap) else {
            capped = true;
            continue;
        };
        if !some_valid_restriction(&restrictions, None) {
            let witness = json!({
                "class": ctx.labels(&analysis.partition.classes[class]),
                "fixed_subset": ctx.labels(&f),
                "restrictions_tried": restrictions.len(),
            });
            return verdict(
                id,
                Outcome::Eliminated,
                ctx.base_scope(),
                witness,
                "no isomorphism between class neighbourhoods restricts on F \
                 to a fixed-point-free semiregular permutation"
                    .into(),
            );
        }
    }
    let note = if capped {
        "isomorphism enumeration cap exceeded for at least one class"
    } else {
        "every class with nonempty F admits a semiregular restriction"
    };
    verdict(
        id,
        Outcome::Inconclusive,
        ctx.base_scope(),
        json!({"capped": capped}),
        note.into(),
    )
}

fn run_rule(ctx: &Ctx, opts: &Options, id: RuleId) -> Verdict {
    match id {
        RuleId::EdgeBound => r1(ctx),
        RuleId::CompleteValency => r2(ctx),
        RuleId::OddClassInvolution => r3(ctx, opts),
        RuleId::UniqueClique => r4(ctx, opts),
        RuleId::PrimeClique => r5(ctx, opts),
        RuleId::OrbitRestrictorOrder => r6(ctx, opts),
        RuleId::FixedSubset => r7(ctx, opts),
    }
}

fn counts_toward_overall(v: &Verdict, opts: &Options) -> bool {
    v.outcome == Outcome::Eliminated
        && match opts.scope_filter {
            Some(Scope::VertexTransitive) => v.scope == Scope::VertexTransitive,
            _ => true,
        }
}

/// Run the rules in cost order R1..R7, stopping at the first elimination
/// unless `all_rules` is set.
pub fn run_all(g: &Graph, opts: &Options) -> EliminationReport {
    let ctx = Ctx::new(g);
    let mut rules: Vec<Verdict> = Vec::new();
    for id in ALL_RULES {
        let v = run_rule(&ctx, opts, id);
        let stop = counts_toward_overall(&v, opts) && !opts.all_rules;
        rules.push(v);
        if stop {
            break;
        }
    }
    let eliminating: Vec<&Verdict> = rules
        .iter()
        .filter(|v| counts_toward_overall(v, opts))
        .collect();
    let best = eliminating
        .iter()
        .find(|v| v.scope == Scope::VertexTransitive)
        .or(eliminating.first());
    let overall = match best {
        Some(v) => Overall {
            outcome: Outcome::Eliminated,
            scope: Some(v.scope),
            rule: Some(v.id),
        },
        None => Overall {
            outcome: if rules.iter().all(|v| v.outcome == Outcome::NotApplicable) {
                Outcome::NotApplicable
            } else {
                Outcome::Inconclusive
            },
            scope: None,
            rule: None,
        },
    };
    EliminationReport {
        input: crate::aut::canonical_form(g).unwrap_or_else(|_| "(n>62)".into()),
        n: ctx.stats.n,
        m: ctx.stats.m,
        asymmetric: ctx.asymmetric,
        rules,
        overall,
        limits: Limits {
            max_clique_order: opts.max_clique_order,
            enum_cap: opts.enum_cap,
        },
    }
}

// standalone per-rule entry points

pub fn rule_edge_bound(g: &Graph) -> Verdict {
    r1(&Ctx::new(g))
}

pub fn rule_complete_valency(g: &Graph) -> Verdict {
    r2(&Ctx::new(g))
}

pub fn rule_odd_class_involution(g: &Graph) -> Verdict {
    r3(&Ctx::new(g), &Options::default())
}

pub fn rule_unique_clique(g: &Graph) -> Verdict {
    r4(&Ctx::new(g), &Options::default())
}

pub fn rule_prime_clique(g: &Graph) -> Verdict {
    r5(&Ctx::new(g), &Options::default())
}

pub fn rule_orbit_restrictor_order(g: &Graph) -> Verdict {
    r6(&Ctx::new(g), &Options::default())
}

pub fn rule_fixed_subset(g: &Graph) -> Verdict {
    r7(&Ctx::new(g), &Options::default())
}

/// Re-evaluate an eliminated verdict's defining predicate from its witness
/// payload alone. Returns false on any mismatch.
pub fn verify_witness(g: &Graph, v: &Verdict, opts: &Options) -> bool {
    if v.outcome != Outcome::Eliminated {
        return true;
    }
    let resolve = |labels: &Value| -> Option<VertexSet> {
        let names: Vec<String> = labels
            .as_array()?
            .iter()
            .map(|x| x.as_str().map(str::to_string))
            .collect::<Option<_>>()?;
        let mut set = VertexSet::empty(g.order());
        for name in names {
            let id = (0..g.order()).find(|&u| g.label_of(u) == name)?;
            set.insert(id);
        }
        Some(set)
    };
    let w = &v.witness;
    match v.id {
        RuleId::EdgeBound => {
            let st = g.stats();
            !st.is_clique && 2 * st.m as i64 > st.n as i64 * (st.n as i64 - 2)
        }
        RuleId::CompleteValency => {
            let st = g.stats();
            !st.is_clique && 3 * st.complete_valency.len() as i64 > st.n as i64 - 2
        }
        RuleId::OddClassInvolution => (|| {
            let class = resolve(&w["class"])?;
            let rep = class.iter().next()?;
            let analysis = NbhdAnalysis::new(g);
            let actual = analysis.partition.class_of_vertex(rep);
            Some(
                *actual == class
                    && class.len() % 2 == 1
                    && !has_involution_automorphism(
                        &analysis.nbhd[rep].graph,
                        opts.loose_involutions,
                    ),
            )
        })()
        .unwrap_or(false),
        RuleId::UniqueClique => (|| {
            let s = resolve(&w["clique"])?;
            let vertex = resolve(&w["vertex"].clone().map_single())?.iter().next()?;
            let analysis = NbhdAnalysis::new(g);
            let found = unique_neighbourhood_cliques(g, s.len(), UniquenessMode::Iso)
                .ok()?
                .into_iter()
                .find(|cw| cw.members == s)?;
            let inter = s.intersection(analysis.partition.class_of_vertex(vertex));
            if inter.len() % 2 == 0 {
                return Some(false);
            }
            Some(match w["branch"].as_str()? {
                "neighbourhood-involution" => !has_involution_automorphism(
                    &analysis.nbhd[vertex].graph,
                    opts.loose_involutions,
                ),
                "common-involution" => {
                    !found.common.is_empty()
                        && !has_involution_automorphism(
                            &g.induced_subgraph(&found.common).ok()?.graph,
                            opts.loose_involutions,
                        )
                }
                "even-clique-parity" => s.len() % 2 == 0,
                _ => false,
            })
        })()
        .unwrap_or(false),
        RuleId::PrimeClique => (|| {
            let s = resolve(&w["clique"])?;
            let p = w["p"].as_u64()? as usize;
            if s.len() + 1 != p || !(2..p).all(|d| !p.is_multiple_of(d)) {
                return Some(false);
            }
            let found = unique_neighbourhood_cliques(g, s.len(), UniquenessMode::Count)
                .ok()?
                .into_iter()
                .find(|cw| cw.members == s)?;
            Some(!found.common.is_empty() && found.common.len() % p != 0)
        })()
        .unwrap_or(false),
        RuleId::OrbitRestrictorOrder => (|| {
            let s = resolve(&w["clique"])?;
            let vertex = resolve(&w["vertex"].clone().map_single())?.iter().next()?;
            let analysis = NbhdAnalysis::new(g);
            if !analysis.is_orbit_restrictor(&s).ok()? {
                return Some(false);
            }
            let f = analysis.max_fixed_subset(vertex);
            if f.is_empty() {
                return Some(false);
            }
            let class = analysis.partition.class_of[vertex];
            let restrictions =
                analysis.iso_restrictions(class, &f, Some(vertex), opts.enum_cap)?;
            Some(!some_valid_restriction(&restrictions, Some(s.len() + 1)))
        })()
        .unwrap_or(false),
        RuleId::FixedSubset => (|| {
            let class_set = resolve(&w["class"])?;
            let rep = class_set.iter().next()?;
            let analysis = NbhdAnalysis::new(g);
            let class = analysis.partition.class_of[rep];
            if analysis.partition.classes[class] != class_set {
                return Some(false);
            }
            let f = analysis.max_fixed_subset(rep);
            if f.is_empty() {
                return Some(false);
            }
            let restrictions = analysis.iso_restrictions(class, &f, None, opts.enum_cap)?;
            Some(!some_valid_restriction(&restrictions, None))
        })()
        .unwrap_or(false),
    }
}

trait SingleLabel {
    fn map_single(self) -> Value;
}

impl SingleLabel for Value {
    /// Wrap a bare label into a one-element array for `resolve`.
    fn map_single(self) -> Value {
        Value::Array(vec![self])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle};

    fn k5_minus_edge() -> Graph {
        let mut edges = Vec::new();
        for u in 0..5 {
            for v in u + 1..5 {
                if (u, v) != (0, 1) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(5, &edges).unwrap()
    }

    fn star3() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn edge_bound_cases() {
        let v = rule_edge_bound(&k5_minus_edge());
        assert_eq!(v.outcome, Outcome::Eliminated);
        assert_eq!(v.scope, Scope::VertexTransitive);

        assert_eq!(rule_edge_bound(&cycle(5)).outcome, Outcome::Inconclusive);
        assert_eq!(rule_edge_bound(&complete(4)).outcome, Outcome::NotApplicable);
    }

    #[test]
    fn complete_valency_cases() {
        assert_eq!(rule_complete_valency(&star3()).outcome, Outcome::Eliminated);
        assert_eq!(
            rule_complete_valency(&cycle(5)).outcome,
            Outcome::Inconclusive
        );
        assert_eq!(
            rule_complete_valency(&complete(4)).outcome,
            Outcome::NotApplicable
        );
    }

    #[test]
    fn odd_class_cases() {
        // C5 is itself vertex-transitive: must stay inconclusive
        assert_eq!(
            rule_odd_class_involution(&cycle(5)).outcome,
            Outcome::Inconclusive
        );
        // K1,3: the centre is a singleton class with neighbourhood 3K1,
        // which has no fpf involution (odd order)
        let v = rule_odd_class_involution(&star3());
        assert_eq!(v.outcome, Outcome::Eliminated);
        assert_eq!(v.scope, Scope::CayleyOnly); // star is not asymmetric
        assert_eq!(v.witness["unique_odd_vertex"], true);
    }

    #[test]
    fn run_all_stops_early() {
        let report = run_all(&k5_minus_edge(), &Options::default());
        assert_eq!(report.overall.outcome, Outcome::Eliminated);
        assert_eq!(report.overall.rule, Some(RuleId::EdgeBound));
        assert_eq!(report.rules.len(), 1);

        let report = run_all(
            &k5_minus_edge(),
            &Options {
                all_rules: true,
                ..Options::default()
            },
        );
        assert_eq!(report.rules.len(), 7);
    }

    #[test]
    fn vertex_transitive_controls_stay_inconclusive() {
        for g in [cycle(5), cycle(6), complete(4)] {
            let report = run_all(
                &g,
                &Options {
                    all_rules: true,
                    ..Options::default()
                },
            );
            assert_ne!(
                report.overall.outcome,
                Outcome::Eliminated,
                "false elimination on {g:?}"
            );
            for v in &report.rules {
                assert_ne!(v.outcome, Outcome::Eliminated, "rule {:?} on {g:?}", v.id);
            }
        }
    }

    #[test]
    fn witnesses_verify() {
        let opts = Options::default();
        for g in [k5_minus_edge(), star3()] {
            let report = run_all(
                &g,
                &Options {
                    all_rules: true,
                    ..opts.clone()
                },
            );
            for v in &report.rules {
                assert!(verify_witness(&g, v, &opts), "witness of {:?} on {g:?}", v.id);
            }
        }
    }

    #[test]
    fn json_is_deterministic() {
        let g = k5_minus_edge();
        let a = serde_json::to_string(&run_all(&g, &Options::default())).unwrap();
        let b = serde_json::to_string(&run_all(&g, &Options::default())).unwrap();
        assert_eq!(a, b);
    }
}
