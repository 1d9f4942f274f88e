//! Small-group catalog, Cayley-graph construction, the semidihedral
//! demonstration, and the neighbourhood census used as the elimination
//! engine's soundness oracle.
//!
//! Groups are explicit multiplication tables, never presentations; the
//! semidihedral group is hard-coded through its normal-form product rule.

use crate::aut::{canonical_form, is_asymmetric};
use crate::eliminate::{run_all, Options, Outcome};
use crate::graph::Graph;
use crate::structure::{orbit_restrictors, NbhdAnalysis};
use crate::{Error, Result};
use std::collections::BTreeSet;

#[derive(Clone, Debug)]
pub struct GroupTable {
    order: usize,
    /// row-major order×order
    mul: Vec<usize>,
    identity: usize,
    inv: Vec<usize>,
    names: Vec<String>,
}

impl GroupTable {
    /// Validate closure, identity, inverses, and (for order ≤ 32,
    /// exhaustively) associativity.
    pub fn new(order: usize, mul: Vec<usize>, names: Vec<String>) -> Result<Self> {
        if order == 0 {
            return Err(Error::Group("order must be positive".into()));
        }
        if mul.len() != order * order {
            return Err(Error::Group(format!(
                "table has {} entries, expected {}",
                mul.len(),
                order * order
            )));
        }
        if names.len() != order {
            return Err(Error::Group("one name per element required".into()));
        }
        if let Some(pos) = mul.iter().position(|&x| x >= order) {
            return Err(Error::Group(format!(
                "closure fails: entry at ({}, {}) is {} >= order",
                pos / order,
                pos % order,
                mul[pos]
            )));
        }
        let at = |a: usize, b: usize| mul[a * order + b];
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or_else(|| Error::Group("no two-sided identity".into()))?;
        let mut inv = vec![0; order];
        for (a, slot) in inv.iter_mut().enumerate() {
            *slot = (0..order)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or_else(|| Error::Group(format!("element {a} has no inverse")))?;
        }
        if order <= 32 {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        if at(at(a, b), c) != at(a, at(b, c)) {
                            return Err(Error::Group(format!(
                                "associativity fails at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(GroupTable {
            order,
            mul,
            identity,
            inv,
            names,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Does `s` generate the whole group? (closure from the identity)
    pub fn generates(&self, s: &ConnectionSet) -> bool {
        let mut reached = vec![false; self.order];
        reached[self.identity] = true;
        let mut frontier = vec![self.identity];
        while let Some(a) = frontier.pop() {
            for &x in &s.elements {
                let b = self.mul(a, x);
                if !reached[b] {
                    reached[b] = true;
                    frontier.push(b);
                }
            }
        }
        reached.iter().all(|&r| r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    /// parameter is the group order 2n
    Dihedral(usize),
    Quaternion8,
    Semidihedral16,
    DirectProduct(Box<GroupSpec>, Box<GroupSpec>),
    FromTable(String),
}

pub fn make_group(spec: &GroupSpec) -> Result<GroupTable> {
    match spec {
        GroupSpec::Cyclic(n) => cyclic(*n),
        GroupSpec::Dihedral(order) => dihedral(*order),
        GroupSpec::Quaternion8 => quaternion8(),
        GroupSpec::Semidihedral16 => semidihedral16(),
        GroupSpec::DirectProduct(a, b) => direct_product(&make_group(a)?, &make_group(b)?),
        GroupSpec::FromTable(text) => from_table(text),
    }
}

pub fn cyclic(n: usize) -> Result<GroupTable> {
    if n == 0 {
        return Err(Error::Group("cyclic group needs order >= 1".into()));
    }
    let mul = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a + b) % n))
        .collect();
    GroupTable::new(n, mul, (0..n).map(|i| i.to_string()).collect())
}

/// Dihedral group of the given (even) order 2n; elements r^i s^j.
pub fn dihedral(order: usize) -> Result<GroupTable> {
    if order < 4 || !order.is_multiple_of(2) {
        return Err(Error::Group(format!(
            "dihedral order must be even and >= 4, got {order}"
        )));
    }
    let n = order / 2;
    let id = |i: usize, j: usize| i + n * j;
    let mut mul = vec![0; order * order];
    let mut names = vec![String::new(); order];
    for i in 0..n {
        for j in 0..2 {
            names[id(i, j)] = if j == 0 {
                format!("r{i}")
            } else {
                format!("r{i}s")
            };
            for k in 0..n {
                for l in 0..2 {
                    // r^i s^j · r^k s^l = r^(i ± k) s^(j+l)
                    let ii = if j == 0 { (i + k) % n } else { (i + n - k) % n };
                    mul[id(i, j) * order + id(k, l)] = id(ii, (j + l) % 2);
                }
            }
        }
    }
    GroupTable::new(order, mul, names)
}

/// Quaternion group Q8; elements a^i b^j, i∈0..4, j∈0..2, with
/// b² = a² and b·a = a⁻¹·b.
pub fn quaternion8() -> Result<GroupTable> {
    let id = |i: usize, j: usize| i + 4 * j;
    let mut mul = vec![0; 64];
    let mut names = vec![String::new(); 8];
    for i in 0..4 {
        for j in 0..2 {
            names[id(i, j)] = format!("a{i}b{j}");
            for k in 0..4 {
                for l in 0..2 {
                    let ii = (i + if j == 0 { k } else { 4 - k } + if j == 1 && l == 1 { 2 } else { 0 }) % 4;
                    mul[id(i, j) * 8 + id(k, l)] = id(ii, (j + l) % 2);
                }
            }
        }
    }
    GroupTable::new(8, mul, names)
}

/// Semidihedral group of order 16; elements (i,j) = y^i x^j with id i+8j
/// and product (i,j)·(k,l) = (i + 3^j·k mod 8, j+l mod 2).
pub fn semidihedral16() -> Result<GroupTable> {
    let id = |i: usize, j: usize| i + 8 * j;
    let mut mul = vec![0; 256];
    let mut names = vec![String::new(); 16];
    for i in 0..8 {
        for j in 0..2 {
            names[id(i, j)] = format!("({i},{j})");
            for k in 0..8 {
                for l in 0..2 {
                    let ii = (i + if j == 0 { k } else { 3 * k }) % 8;
                    mul[id(i, j) * 16 + id(k, l)] = id(ii, (j + l) % 2);
                }
            }
        }
    }
    GroupTable::new(16, mul, names)
}

pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Result<GroupTable> {
    let order = a.order * b.order;
    let id = |x: usize, y: usize| x * b.order + y;
    let mut mul = vec![0; order * order];
    let mut names = vec![String::new(); order];
    for x1 in 0..a.order {
        for y1 in 0..b.order {
            names[id(x1, y1)] = format!("({},{})", a.name(x1), b.name(y1));
            for x2 in 0..a.order {
                for y2 in 0..b.order {
                    mul[id(x1, y1) * order + id(x2, y2)] = id(a.mul(x1, x2), b.mul(y1, y2));
                }
            }
        }
    }
    GroupTable::new(order, mul, names)
}

/// Whitespace row-major table with a header line `order=<n>`.
pub fn from_table(text: &str) -> Result<GroupTable> {
    let mut tokens = text.split_whitespace();
    let header = tokens
        .next()
        .ok_or_else(|| Error::Group("empty input".into()))?;
    let order: usize = header
        .strip_prefix("order=")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Group(format!("expected header order=<n>, got {header:?}")))?;
    let mut mul = Vec::with_capacity(order * order);
    for tok in tokens {
        let x: usize = tok
            .parse()
            .map_err(|_| Error::Group(format!("bad table entry {tok:?}")))?;
        mul.push(x);
    }
    GroupTable::new(order, mul, (0..order).map(|i| i.to_string()).collect())
}

/// Identity-free inverse-closed subset of group elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionSet {
    pub elements: BTreeSet<usize>,
}

impl ConnectionSet {
    pub fn new<I: IntoIterator<Item = usize>>(g: &GroupTable, elements: I) -> Result<Self> {
        let elements: BTreeSet<usize> = elements.into_iter().collect();
        for &x in &elements {
            if x >= g.order {
                return Err(Error::ConnectionSet(format!(
                    "element {x} out of range for order {}",
                    g.order
                )));
            }
            if x == g.identity {
                return Err(Error::ConnectionSet("identity not allowed".into()));
            }
            if !elements.contains(&g.inv(x)) {
                return Err(Error::ConnectionSet(format!(
                    "not inverse-closed: {} missing",
                    g.name(g.inv(x))
                )));
            }
        }
        Ok(ConnectionSet { elements })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// All identity-free inverse-closed subsets, as choices over
/// {involutions} ∪ {inverse pairs}, optionally size-bounded.
pub fn connection_sets(g: &GroupTable, max_size: Option<usize>) -> Vec<ConnectionSet> {
    let mut items: Vec<Vec<usize>> = Vec::new();
    for a in 0..g.order {
        if a == g.identity {
            continue;
        }
        let b = g.inv(a);
        if b == a {
            items.push(vec![a]);
        } else if a < b {
            items.push(vec![a, b]);
        }
    }
    assert!(items.len() < 32, "group too large for subset enumeration");
    let mut out = Vec::new();
    for mask in 0u32..1 << items.len() {
        let mut elements = Vec::new();
        for (i, item) in items.iter().enumerate() {
            if mask >> i & 1 == 1 {
                elements.extend_from_slice(item);
            }
        }
        if max_size.is_some_and(|cap| elements.len() > cap) {
            continue;
        }
        out.push(ConnectionSet {
            elements: elements.into_iter().collect(),
        });
    }
    out
}

/// Γ(G,S): vertices are group elements, edge [a,b] ⇔ a⁻¹·b ∈ S.
/// Vertices are labelled with the element names.
pub fn cayley_graph(g: &GroupTable, s: &ConnectionSet) -> Result<Graph> {
    // revalidate: s may have been built against a different table
    let s = ConnectionSet::new(g, s.elements.iter().copied())?;
    let mut edges = Vec::new();
    for a in 0..g.order {
        for b in a + 1..g.order {
            if s.elements.contains(&g.mul(g.inv(a), b)) {
                edges.push((a, b));
            }
        }
    }
    let mut graph = Graph::from_edges(g.order, &edges)?;
    graph.set_labels(g.names.clone());
    Ok(graph)
}

/// The semidihedral worked example: Γ(G,S) for G = SD16 and
/// S = {y, y⁻¹, yx, xy⁻¹, x, y⁴}, and the induced neighbourhood of the
/// identity. Panics on any deviation from the expected shape — a failure
/// here is a build-blocking defect, not a runtime condition.
pub struct DemoReport {
    pub cayley: Graph,
    pub neighbourhood: Graph,
    pub graph6: String,
    pub neighbourhood_names: Vec<String>,
    pub elimination: crate::eliminate::EliminationReport,
}

pub fn semidihedral_demo() -> Result<DemoReport> {
    let g = semidihedral16()?;
    let y = 1; // (1,0)
    let x = 8; // (0,1)
    let s = ConnectionSet::new(
        &g,
        [
            y,
            g.inv(y),
            g.mul(y, x),
            g.mul(x, g.inv(y)),
            x,
            g.mul(g.mul(y, y), g.mul(y, y)),
        ],
    )?;
    assert_eq!(s.len(), 6);
    let cayley = cayley_graph(&g, &s)?;
    assert_eq!(cayley.order(), 16);
    assert!((0..16).all(|v| cayley.degree(v) == 6), "not 6-regular");
    assert!(cayley.is_connected());

    let view = cayley.induced_neighbourhood(g.identity())?;
    let nbhd = view.graph.clone();
    let names: Vec<String> = (0..nbhd.order()).map(|v| nbhd.label_of(v)).collect();
    assert_eq!(nbhd.order(), 6);
    assert_eq!(nbhd.size(), 6);
    let mut valencies = nbhd.stats().valencies;
    valencies.sort_unstable();
    assert_eq!(valencies, vec![1, 1, 2, 2, 3, 3]);

    // triangle with a pendant vertex on one corner and a pendant path of
    // two edges on another
    let reference =
        Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (1, 4), (4, 5)]).unwrap();
    assert!(
        crate::aut::find_isomorphism(&nbhd, &reference).is_some(),
        "neighbourhood shape mismatch"
    );
    assert!(is_asymmetric(&nbhd));

    let elimination = run_all(&nbhd, &Options::default());
    assert_ne!(
        elimination.overall.outcome,
        Outcome::Eliminated,
        "a real Cayley neighbourhood must never be eliminated"
    );

    Ok(DemoReport {
        graph6: canonical_form(&nbhd)?,
        cayley,
        neighbourhood: nbhd,
        neighbourhood_names: names,
        elimination,
    })
}

/// The documented census catalog: cyclic(n) for n ≤ 16, dihedral groups of
/// order ≤ 16, non-cyclic abelian products up to order 16, Q8, and SD16.
/// Not a complete list of groups of order ≤ 16.
pub fn catalog() -> Vec<(String, GroupTable)> {
    let mut out: Vec<(String, GroupTable)> = Vec::new();
    for n in 1..=16 {
        out.push((format!("cyclic({n})"), cyclic(n).unwrap()));
    }
    for n in 2..=8 {
        out.push((format!("dihedral({})", 2 * n), dihedral(2 * n).unwrap()));
    }
    let c = |n: usize| cyclic(n).unwrap();
    let abelian: Vec<(String, GroupTable)> = vec![
        ("C2xC2".into(), direct_product(&c(2), &c(2)).unwrap()),
        ("C2xC4".into(), direct_product(&c(2), &c(4)).unwrap()),
        (
            "C2xC2xC2".into(),
            direct_product(&direct_product(&c(2), &c(2)).unwrap(), &c(2)).unwrap(),
        ),
        ("C3xC3".into(), direct_product(&c(3), &c(3)).unwrap()),
        ("C2xC6".into(), direct_product(&c(2), &c(6)).unwrap()),
        ("C2xC8".into(), direct_product(&c(2), &c(8)).unwrap()),
        ("C4xC4".into(), direct_product(&c(4), &c(4)).unwrap()),
        (
            "C2xC2xC4".into(),
            direct_product(&direct_product(&c(2), &c(2)).unwrap(), &c(4)).unwrap(),
        ),
        (
            "C2xC2xC2xC2".into(),
            direct_product(
                &direct_product(&c(2), &c(2)).unwrap(),
                &direct_product(&c(2), &c(2)).unwrap(),
            )
            .unwrap(),
        ),
    ];
    out.extend(abelian);
    out.push(("quaternion8".into(), quaternion8().unwrap()));
    out.push(("semidihedral16".into(), semidihedral16().unwrap()));
    out
}

#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub connected_only: bool,
    /// global bound on |S|
    pub max_size: Option<usize>,
    /// tighter bound applied to groups of order >= 16
    pub order16_cap: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            connected_only: true,
            max_size: None,
            order16_cap: 8,
        }
    }
}

/// A deduplicated set of canonical neighbourhood forms with a provenance
/// header, persistable as a sorted text file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub meta: String,
    pub forms: BTreeSet<String>,
}

impl Census {
    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        let mut text = format!("# meta: {}\n", self.meta);
        for form in &self.forms {
            text.push_str(form);
            text.push('\n');
        }
        std::fs::write(path, text)?;
        Ok(())
    }

    pub fn load(path: &std::path::Path) -> Result<Census> {
        let text = std::fs::read_to_string(path)?;
        let mut meta = String::new();
        let mut forms = BTreeSet::new();
        for line in text.lines() {
            if let Some(rest) = line.strip_prefix("# meta:") {
                meta = rest.trim().to_string();
            } else if !line.trim().is_empty() && !line.starts_with('#') {
                crate::codec::parse_graph6(line)?; // reject corrupt files early
                forms.insert(line.trim().to_string());
            }
        }
        Ok(Census { meta, forms })
    }
}

/// For each group and each connection set whose Cayley graph qualifies,
/// the canonical form of ⟨N(identity)⟩. By vertex-transitivity the
/// identity's neighbourhood represents every vertex's.
pub fn neighbourhood_census(groups: &[(String, GroupTable)], opts: &CensusOptions) -> Census {
    let mut forms = BTreeSet::new();
    for (_, g) in groups {
        let cap = if g.order() >= 16 {
            Some(opts.max_size.map_or(opts.order16_cap, |m| m.min(opts.order16_cap)))
        } else {
            opts.max_size
        };
        for s in connection_sets(g, cap) {
            let graph = cayley_graph(g, &s).expect("enumerated sets are valid");
            if opts.connected_only && !graph.is_connected() {
                continue;
            }
            let nbhd = graph.induced_neighbourhood(g.identity()).unwrap().graph;
            forms.insert(canonical_form(&nbhd).expect("neighbourhood order < 16"));
        }
    }
    let names: Vec<&str> = groups.iter().map(|(name, _)| name.as_str()).collect();
    let meta = format!(
        "catalog=[{}]; connected_only={}; max_size={}; order16_cap={}",
        names.join(","),
        opts.connected_only,
        opts.max_size.map_or("none".into(), |m| m.to_string()),
        opts.order16_cap
    );
    Census { meta, forms }
}

#[derive(Clone, Debug)]
pub struct Violation {
    pub member: String,
    pub detail: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.member, self.detail)
    }
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).all(|d| !p.is_multiple_of(d))
}

/// Runs the elimination engine on every census member; any elimination is
/// a violation. For asymmetric members, additionally checks that every
/// orbit-restrictor S with |S|+1 prime satisfies
/// F(X,v) = ∩_{w∈S} N(w,X) for all v ∈ S.
pub fn soundness_check(census: &Census, opts: &Options) -> Vec<Violation> {
    let mut violations = Vec::new();
    for form in &census.forms {
        let g = match crate::codec::parse_graph6(form) {
            Ok(g) => g,
            Err(e) => {
                violations.push(Violation {
                    member: form.clone(),
                    detail: format!("unparsable census member: {e}"),
                });
                continue;
            }
        };
        let report = run_all(&g, opts);
        if report.overall.outcome == Outcome::Eliminated {
            violations.push(Violation {
                member: form.clone(),
                detail: format!(
                    "eliminated by {:?} at {:?} scope",
                    report.overall.rule, report.overall.scope
                ),
            });
            continue;
        }
        if !is_asymmetric(&g) {
            continue;
        }
        let analysis = NbhdAnalysis::new(&g);
        for s in orbit_restrictors(&analysis, opts.max_clique_order) {
            if !is_prime(s.len() + 1) {
                continue;
            }
            let common = g.common_neighbourhood(&s).expect("restrictors are nonempty");
            for v in s.iter() {
                if analysis.max_fixed_subset(v) != common {
                    violations.push(Violation {
                        member: form.clone(),
                        detail: format!(
                            "F(X,{}) differs from the common neighbourhood of {:?}",
                            g.label_of(v),
                            s.to_vec()
                        ),
                    });
                }
            }
        }
    }
    violations
}
