//! Structural objects on top of neighbourhood isomorphism: the ~ classes,
//! cliques and unique-neighbourhood cliques, orbit-restrictors, [v]-fixed
//! subsets and the maximal fixed subset F(X,v).
//!
//! "All isomorphisms" quantifiers between class neighbourhoods are never
//! enumerated elementwise. Every isomorphism ⟨N(v1)⟩ → ⟨N(v2)⟩ factors as
//! ψ_{v2} ∘ τ ∘ ψ_{v1}⁻¹ through a class representative r, where ψ_v is a
//! fixed base isomorphism ⟨N(r)⟩ → ⟨N(v)⟩ and τ ranges over Aut(⟨N(r)⟩),
//! so base maps plus automorphism generators decide the quantifier.

use crate::aut::{automorphism_group, canonical_form, find_isomorphism, AutGroup};
use crate::graph::{Graph, SubgraphView, VertexSet};
use crate::perm::Permutation;
use crate::{Error, Result};
use std::collections::HashMap;

/// Partition of the vertices by isomorphism type of their induced
/// neighbourhoods (the ~ relation). Classes are ordered by smallest member.
#[derive(Clone, Debug)]
pub struct ClassPartition {
    pub classes: Vec<VertexSet>,
    /// canonical form of the members' induced neighbourhoods, per class
    pub class_key: Vec<String>,
    pub class_of: Vec<usize>,
}

impl ClassPartition {
    pub fn class_of_vertex(&self, v: usize) -> &VertexSet {
        &self.classes[self.class_of[v]]
    }
}

pub fn classify_vertices(g: &Graph) -> ClassPartition {
    NbhdAnalysis::new(g).partition
}

struct ClassData {
    rep: usize,
    /// Aut(⟨N(rep)⟩)
    aut: AutGroup,
    /// member -> base isomorphism, as local ids of ⟨N(rep)⟩ to local ids of ⟨N(member)⟩
    base: HashMap<usize, Vec<usize>>,
}

/// Per-graph cache of neighbourhood subgraphs, the class partition, and the
/// factored isomorphism families. Everything downstream (orbit-restrictors,
/// fixed subsets, the elimination rules) runs through this.
pub struct NbhdAnalysis<'g> {
    pub graph: &'g Graph,
    pub nbhd: Vec<SubgraphView>,
    pub partition: ClassPartition,
    class_data: Vec<ClassData>,
}

impl<'g> NbhdAnalysis<'g> {
    pub fn new(g: &'g Graph) -> Self {
        let n = g.order();
        let nbhd: Vec<SubgraphView> = (0..n).map(|v| g.induced_neighbourhood(v).unwrap()).collect();
        let keys: Vec<String> = nbhd
            .iter()
            .map(|s| canonical_form(&s.graph).expect("neighbourhood fits graph6"))
            .collect();

        let mut by_key: HashMap<&str, Vec<usize>> = HashMap::new();
        for (v, key) in keys.iter().enumerate() {
            by_key.entry(key).or_default().push(v);
        }
        let mut groups: Vec<Vec<usize>> = by_key.into_values().collect();
        groups.sort_by_key(|members| members[0]);

        let mut class_of = vec![0; n];
        let mut classes = Vec::new();
        let mut class_key = Vec::new();
        let mut class_data = Vec::new();
        for (ci, members) in groups.iter().enumerate() {
            let rep = members[0];
            let mut base = HashMap::new();
            for &v in members {
                class_of[v] = ci;
                let iso = if v == rep {
                    (0..nbhd[rep].graph.order()).collect()
                } else {
                    find_isomorphism(&nbhd[rep].graph, &nbhd[v].graph)
                        .expect("equal canonical forms imply isomorphic")
                };
                base.insert(v, iso);
            }
            classes.push(VertexSet::from_iter(n, members.iter().copied()));
            class_key.push(keys[rep].clone());
            class_data.push(ClassData {
                rep,
                aut: automorphism_group(&nbhd[rep].graph),
                base,
            });
        }
        NbhdAnalysis {
            graph: g,
            nbhd,
            partition: ClassPartition {
                classes,
                class_key,
                class_of,
            },
            class_data,
        }
    }

    pub fn class_count(&self) -> usize {
        self.partition.classes.len()
    }

    pub fn class_rep(&self, class: usize) -> usize {
        self.class_data[class].rep
    }

    pub fn rep_aut(&self, class: usize) -> &AutGroup {
        &self.class_data[class].aut
    }

    /// ∩_{w∈[v]} N(w) for the class as a whole.
    pub fn class_common(&self, class: usize) -> VertexSet {
        self.graph
            .common_neighbourhood(&self.partition.classes[class])
            .expect("classes are nonempty")
    }

    /// ψ_member applied to a parent vertex of N(rep).
    fn psi(&self, class: usize, member: usize, parent: usize) -> usize {
        let data = &self.class_data[class];
        let local = self.nbhd[data.rep].local_of(parent).expect("in N(rep)");
        self.nbhd[member].back_map[data.base[&member][local]]
    }

    /// ψ_member⁻¹ applied to a parent vertex of N(member).
    fn psi_inv(&self, class: usize, member: usize, parent: usize) -> usize {
        let data = &self.class_data[class];
        let local = self.nbhd[member].local_of(parent).expect("in N(member)");
        let pos = data.base[&member].iter().position(|&x| x == local).unwrap();
        self.nbhd[data.rep].back_map[pos]
    }

    /// An Aut(⟨N(rep)⟩) generator as a parent-id map on N(rep).
    fn tau(&self, class: usize, gen: &Permutation, parent: usize) -> usize {
        let rep = self.class_data[class].rep;
        let local = self.nbhd[rep].local_of(parent).expect("in N(rep)");
        self.nbhd[rep].back_map[gen.apply(local)]
    }

    /// Is z a [v]-fixed subset: z ⊆ ∩_{w∈[v]}N(w) and every isomorphism
    /// between class neighbourhoods maps z onto itself?
    pub fn is_fixed_subset(&self, v: usize, z: &VertexSet) -> bool {
        let class = self.partition.class_of[v];
        if !z.is_subset_of(&self.class_common(class)) {
            return false;
        }
        // stability under the generating maps implies stability under the
        // whole composition-closed family
        let data = &self.class_data[class];
        for x in z.iter() {
            for gen in &data.aut.generators {
                if !z.contains(self.tau(class, gen, x)) {
                    return false;
                }
                if !z.contains(self.tau(class, &gen.inverse(), x)) {
                    return false;
                }
            }
            for member in self.partition.classes[class].iter() {
                if !z.contains(self.psi(class, member, x)) {
                    return false;
                }
                if !z.contains(self.psi_inv(class, member, x)) {
                    return false;
                }
            }
        }
        true
    }

    /// F(X,v): the unique maximal [v]-fixed subset, by fixpoint deletion
    /// from ∩_{w∈[v]}N(w).
    pub fn max_fixed_subset(&self, v: usize) -> VertexSet {
        let class = self.partition.class_of[v];
        let data = &self.class_data[class];
        let mut c = self.class_common(class);
        loop {
            let mut doomed: Vec<usize> = Vec::new();
            'scan: for x in c.iter() {
                for gen in &data.aut.generators {
                    if !c.contains(self.tau(class, gen, x))
                        || !c.contains(self.tau(class, &gen.inverse(), x))
                    {
                        doomed.push(x);
                        continue 'scan;
                    }
                }
                for member in self.partition.classes[class].iter() {
                    if !c.contains(self.psi(class, member, x))
                        || !c.contains(self.psi_inv(class, member, x))
                    {
                        doomed.push(x);
                        continue 'scan;
                    }
                }
            }
            if doomed.is_empty() {
                return c;
            }
            for x in doomed {
                c.remove(x);
            }
        }
    }

    /// Orbit-restrictor test: s must be a clique; every member's class is
    /// contained in s; and every isomorphism between class neighbourhoods
    /// maps s−{v1} onto s−{v2}.
    pub fn is_orbit_restrictor(&self, s: &VertexSet) -> Result<bool> {
        if !self.graph.is_clique_set(s) {
            return Err(Error::NotAClique(s.to_vec()));
        }
        let member_classes: std::collections::BTreeSet<usize> =
            s.iter().map(|v| self.partition.class_of[v]).collect();
        for &class in &member_classes {
            if !self.partition.classes[class].is_subset_of(s) {
                return Ok(false);
            }
            // localize s−{v} into N(rep) through ψ_v⁻¹; the quantified
            // condition holds iff all these pullbacks agree and every
            // Aut(⟨N(rep)⟩) generator fixes the common pullback setwise
            let data = &self.class_data[class];
            let mut pullback: Option<VertexSet> = None;
            for v in self.partition.classes[class].iter() {
                let mut a = VertexSet::empty(self.graph.order());
                for w in s.iter().filter(|&w| w != v) {
                    a.insert(self.psi_inv(class, v, w));
                }
                match &pullback {
                    None => pullback = Some(a),
                    Some(prev) if *prev == a => {}
                    Some(_) => return Ok(false),
                }
            }
            let a = pullback.expect("class nonempty");
            for gen in &data.aut.generators {
                for x in a.iter() {
                    if !a.contains(self.tau(class, gen, x)) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Restrictions to a fixed subset `f` of all isomorphisms between class
    /// neighbourhoods, as permutations of the members of `f` in ascending
    /// order. With `into_member` set, only isomorphisms ⟨N(v′)⟩ → ⟨N(that
    /// member)⟩ are taken. `None` when the Aut enumeration exceeds `cap`.
    pub fn iso_restrictions(
        &self,
        class: usize,
        f: &VertexSet,
        into_member: Option<usize>,
        cap: usize,
    ) -> Option<Vec<Permutation>> {
        let data = &self.class_data[class];
        let members: Vec<usize> = f.to_vec();
        let index_of = |parent: usize| members.binary_search(&parent).unwrap();

        let taus = data.aut.elements(cap)?;
        // restriction of τ to f, in f-index space
        let tau_restr: Vec<Vec<usize>> = taus
            .iter()
            .map(|t| {
                members
                    .iter()
                    .map(|&x| index_of(self.tau(class, t, x)))
                    .collect()
            })
            .collect();
        let psi_restr: HashMap<usize, Vec<usize>> = self.partition.classes[class]
            .iter()
            .map(|m| {
                (
                    m,
                    members
                        .iter()
                        .map(|&x| index_of(self.psi(class, m, x)))
                        .collect(),
                )
            })
            .collect();

        let targets: Vec<usize> = match into_member {
            Some(m) => vec![m],
            None => self.partition.classes[class].iter().collect(),
        };
        let mut out: std::collections::HashSet<Permutation> = std::collections::HashSet::new();
        for v1 in self.partition.classes[class].iter() {
            let inv1 = {
                let fwd = &psi_restr[&v1];
                let mut inv = vec![0; fwd.len()];
                for (i, &x) in fwd.iter().enumerate() {
                    inv[x] = i;
                }
                inv
            };
            for &v2 in &targets {
                let fwd2 = &psi_restr[&v2];
                for t in &tau_restr {
                    // ψ_{v2} ∘ τ ∘ ψ_{v1}⁻¹ restricted to f
                    let image: Vec<usize> = (0..members.len()).map(|i| fwd2[t[inv1[i]]]).collect();
                    out.insert(Permutation::from_image(image));
                    if out.len() > cap {
                        return None;
                    }
                }
            }
        }
        Some(out.into_iter().collect())
    }
}

/// All vertex sets of size k inducing complete subgraphs, in lexicographic
/// member order.
pub fn cliques_of_order(g: &Graph, k: usize) -> Result<Vec<VertexSet>> {
    let n = g.order();
    if k == 0 || k > n {
        return Err(Error::CliqueOrderOutOfRange { k, n });
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(k);
    fn extend(
        g: &Graph,
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<VertexSet>,
    ) {
        if cur.len() == k {
            out.push(VertexSet::from_iter(g.order(), cur.iter().copied()));
            return;
        }
        for v in start..g.order() {
            if g.order() - v < k - cur.len() {
                break;
            }
            if cur.iter().all(|&u| g.adjacent(u, v)) {
                cur.push(v);
                extend(g, k, v + 1, cur, out);
                cur.pop();
            }
        }
    }
    extend(g, k, 0, &mut cur, &mut out);
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UniquenessMode {
    /// ⟨∩N⟩ isomorphic to no other order-k clique's ⟨∩N⟩
    Iso,
    /// |∩N| different from every other order-k clique's |∩N|
    Count,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Uniqueness {
    IsoUnique,
    CountUnique,
}

#[derive(Clone, Debug)]
pub struct CliqueWitness {
    pub members: VertexSet,
    pub common: VertexSet,
    pub uniqueness: Uniqueness,
}

/// Cliques of order k whose common-neighbourhood subgraph is unique among
/// all order-k cliques, either up to isomorphism or by cardinality.
/// A graph with a single order-k clique makes that clique vacuously unique.
pub fn unique_neighbourhood_cliques(
    g: &Graph,
    k: usize,
    mode: UniquenessMode,
) -> Result<Vec<CliqueWitness>> {
    let cliques = cliques_of_order(g, k)?;
    let commons: Vec<VertexSet> = cliques
        .iter()
        .map(|s| g.common_neighbourhood(s).expect("cliques are nonempty"))
        .collect();

    let mut count_freq: HashMap<usize, usize> = HashMap::new();
    for c in &commons {
        *count_freq.entry(c.len()).or_default() += 1;
    }
    // canonical forms memoized on exact adjacency bytes; distinct cliques
    // frequently share identical induced commons
    let mut canon_memo: HashMap<(usize, Vec<u8>), String> = HashMap::new();
    let iso_keys: Vec<String> = commons
        .iter()
        .map(|c| {
            let sub = g.induced_subgraph(c).expect("common in range").graph;
            canon_memo
                .entry((sub.order(), sub.adjacency_bytes()))
                .or_insert_with(|| canonical_form(&sub).expect("small graph"))
                .clone()
        })
        .collect();
    let mut iso_freq: HashMap<&str, usize> = HashMap::new();
    for key in &iso_keys {
        *iso_freq.entry(key).or_default() += 1;
    }

    let mut out = Vec::new();
    for (i, s) in cliques.iter().enumerate() {
        let count_unique = count_freq[&commons[i].len()] == 1;
        let iso_unique = iso_freq[iso_keys[i].as_str()] == 1;
        let keep = match mode {
            UniquenessMode::Iso => iso_unique,
            UniquenessMode::Count => count_unique,
        };
        if keep {
            out.push(CliqueWitness {
                members: s.clone(),
                common: commons[i].clone(),
                uniqueness: if count_unique {
                    Uniqueness::CountUnique
                } else {
                    Uniqueness::IsoUnique
                },
            });
        }
    }
    Ok(out)
}

/// Standalone orbit-restrictor test; prefer [`NbhdAnalysis`] when testing
/// many sets on one graph.
pub fn is_orbit_restrictor(g: &Graph, s: &VertexSet) -> Result<bool> {
    NbhdAnalysis::new(g).is_orbit_restrictor(s)
}

pub fn is_fixed_subset(g: &Graph, v: usize, z: &VertexSet) -> Result<bool> {
    if v >= g.order() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            order: g.order(),
        });
    }
    Ok(NbhdAnalysis::new(g).is_fixed_subset(v, z))
}

pub fn max_fixed_subset(g: &Graph, v: usize) -> Result<VertexSet> {
    if v >= g.order() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            order: g.order(),
        });
    }
    Ok(NbhdAnalysis::new(g).max_fixed_subset(v))
}

/// All orbit-restrictors of order 1..=max_order.
pub fn orbit_restrictors(analysis: &NbhdAnalysis, max_order: usize) -> Vec<VertexSet> {
    let mut out = Vec::new();
    for k in 1..=max_order.min(analysis.graph.order()) {
        for s in cliques_of_order(analysis.graph, k).expect("k in range") {
            if analysis.is_orbit_restrictor(&s).expect("s is a clique") {
                out.push(s);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle};
    use crate::Graph;

    fn star3() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn classify_basics() {
        let part = classify_vertices(&cycle(5));
        assert_eq!(part.classes.len(), 1);
        assert_eq!(part.classes[0].len(), 5);

        let part = classify_vertices(&star3());
        assert_eq!(part.classes.len(), 2);
        assert_eq!(part.class_of_vertex(0).to_vec(), vec![0]);
        assert_eq!(part.class_of_vertex(1).len(), 3);
    }

    #[test]
    fn classify_figure2_shape() {
        // triangle 0-1-2, pendant 3 on 2, path 1-4-5
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (1, 4), (4, 5)]).unwrap();
        let part = classify_vertices(&g);
        // oracle: direct computation of all six induced neighbourhoods
        // 0: {1,2} with edge -> K2; 1: {0,2,4} edge(0,2) -> K2+K1
        // 2: {0,1,3} edge(0,1) -> K2+K1; 3: {2} -> K1; 4: {1,5} -> 2K1; 5: {4} -> K1
        assert_eq!(part.classes.len(), 4);
        assert_eq!(part.class_of[1], part.class_of[2]);
        assert_eq!(part.class_of[3], part.class_of[5]);
        assert_ne!(part.class_of[0], part.class_of[4]);
        // the two leaves are ~-equivalent even though their supports differ
        assert_eq!(part.class_of_vertex(3).to_vec(), vec![3, 5]);
    }

    #[test]
    fn clique_enumeration() {
        assert_eq!(cliques_of_order(&complete(4), 3).unwrap().len(), 4);
        assert_eq!(cliques_of_order(&cycle(5), 3).unwrap().len(), 0);
        assert_eq!(cliques_of_order(&cycle(5), 2).unwrap().len(), 5);
        assert_eq!(cliques_of_order(&cycle(5), 1).unwrap().len(), 5);
        assert!(cliques_of_order(&cycle(5), 0).is_err());
        assert!(cliques_of_order(&cycle(5), 6).is_err());
    }

    #[test]
    fn unique_cliques() {
        // K4: all 6 edges share ⟨common⟩ ≅ K2
        let w = unique_neighbourhood_cliques(&complete(4), 2, UniquenessMode::Iso).unwrap();
        assert!(w.is_empty());

        // path a-b-c: only b has two common neighbours
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let w = unique_neighbourhood_cliques(&p3, 1, UniquenessMode::Count).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].members.to_vec(), vec![1]);
        assert_eq!(w[0].uniqueness, Uniqueness::CountUnique);
    }

    #[test]
    fn orbit_restrictor_rejects_k4_edge() {
        let k4 = complete(4);
        let s = VertexSet::from_iter(4, [0, 1]);
        // [0] is all of K4, not contained in s
        assert!(!is_orbit_restrictor(&k4, &s).unwrap());
        // non-clique input errors
        let c5 = cycle(5);
        let bad = VertexSet::from_iter(5, [0, 2]);
        assert!(is_orbit_restrictor(&c5, &bad).is_err());
    }

    #[test]
    fn fixed_subsets_basics() {
        let c5 = cycle(5);
        // empty set is always fixed
        assert!(is_fixed_subset(&c5, 0, &VertexSet::empty(5)).unwrap());
        // on C5 the class is everything and the common intersection is empty
        assert!(max_fixed_subset(&c5, 0).unwrap().is_empty());

        let k4 = complete(4);
        let z = VertexSet::from_iter(4, [1]);
        assert!(!is_fixed_subset(&k4, 0, &z).unwrap());
    }

    #[test]
    fn star_centre_fixed_subset() {
        let g = star3();
        // [centre] is a singleton; C = N(centre) = all three leaves and
        // Aut(⟨N(centre)⟩) = S3 fixes the set as a whole
        let f = max_fixed_subset(&g, 0).unwrap();
        assert_eq!(f.to_vec(), vec![1, 2, 3]);
        assert!(is_fixed_subset(&g, 0, &f).unwrap());
        // but no proper nonempty subset is fixed
        assert!(!is_fixed_subset(&g, 0, &VertexSet::from_iter(4, [1])).unwrap());
    }

    #[test]
    fn max_fixed_subset_is_maximal_exhaustively() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (1, 4), (4, 5)]).unwrap();
        let analysis = NbhdAnalysis::new(&g);
        for v in 0..6 {
            let f = analysis.max_fixed_subset(v);
            assert!(analysis.is_fixed_subset(v, &f));
            let c = analysis.class_common(analysis.partition.class_of[v]);
            let members = c.to_vec();
            for bits in 0..1u32 << members.len() {
                let z = VertexSet::from_iter(
                    6,
                    members
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| bits >> i & 1 == 1)
                        .map(|(_, &m)| m),
                );
                if analysis.is_fixed_subset(v, &z) {
                    assert!(z.is_subset_of(&f), "fixed {z:?} outside F at v={v}");
                }
            }
        }
    }

    #[test]
    fn iso_unique_cliques_are_orbit_restrictors_small() {
        // spot-check of the census-scale property on a fixed small graph
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)]).unwrap();
        let analysis = NbhdAnalysis::new(&g);
        for k in 1..=3 {
            for w in unique_neighbourhood_cliques(&g, k, UniquenessMode::Iso).unwrap() {
                assert!(
                    analysis.is_orbit_restrictor(&w.members).unwrap(),
                    "clique {:?} of order {k}",
                    w.members
                );
            }
        }
    }
}
