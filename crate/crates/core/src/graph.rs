//! Finite simple graphs over dense vertex ids `0..n`, with bitset adjacency
//! rows so that neighbourhood intersections are word-parallel.

use crate::{Error, Result};

/// Subset of the vertices of a graph of a fixed order, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    bits: Vec<u64>,
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet {
            universe,
            bits: vec![0; words_for(universe)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for v in 0..universe {
            s.insert(v);
        }
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(universe: usize, iter: I) -> Self {
        let mut s = Self::empty(universe);
        for v in iter {
            assert!(v < universe, "vertex {v} out of universe {universe}");
            s.insert(v);
        }
        s
    }

    pub(crate) fn from_words(universe: usize, bits: Vec<u64>) -> Self {
        debug_assert_eq!(bits.len(), words_for(universe));
        VertexSet { universe, bits }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < self.universe);
        self.bits[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        debug_assert!(v < self.universe);
        self.bits[v / 64] &= !(1 << (v % 64));
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.bits[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a &= b;
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.universe).filter(move |&v| self.contains(v))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Finite simple graph. Immutable after construction; adjacency is a
/// symmetric, irreflexive relation over `0..order`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    labels: Option<Vec<String>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = words_for(n);
        Graph {
            n,
            words,
            adj: vec![0; n.max(1) * words],
            labels: None,
        }
    }

    /// Build from an edge list; loops are rejected, duplicates collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: u.max(v),
                    order: n,
                });
            }
            if u == v {
                return Err(Error::EdgeList {
                    line: 0,
                    reason: format!("self-loop at vertex {u}"),
                });
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.adj[u * self.words + v / 64] |= 1 << (v % 64);
        self.adj[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub(crate) fn set_labels(&mut self, labels: Vec<String>) {
        debug_assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Edge count.
    pub fn size(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of a vertex: its input label when available, else its id.
    pub fn label_of(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    /// N(v): the set of vertices adjacent to v, never containing v itself.
    pub fn neighbourhood(&self, v: usize) -> Result<VertexSet> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.n,
            });
        }
        Ok(VertexSet::from_words(self.n, self.row(v).to_vec()))
    }

    /// ∩_{w∈s} N(w). Errors on an empty set.
    pub fn common_neighbourhood(&self, s: &VertexSet) -> Result<VertexSet> {
        let mut members = s.iter();
        let first = members.next().ok_or(Error::EmptySet)?;
        let mut acc = self.neighbourhood(first)?;
        for w in members {
            if w >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: w,
                    order: self.n,
                });
            }
            acc.intersect_with(&self.neighbourhood(w)?);
        }
        Ok(acc)
    }

    /// The subgraph induced on `s`, re-indexed densely; `back_map` lists the
    /// members of `s` in ascending parent-id order.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<SubgraphView> {
        let back_map = s.to_vec();
        if let Some(&v) = back_map.iter().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.n,
            });
        }
        let k = back_map.len();
        let mut g = Graph::empty(k);
        for i in 0..k {
            for j in i + 1..k {
                if self.adjacent(back_map[i], back_map[j]) {
                    g.set_edge(i, j);
                }
            }
        }
        if let Some(labels) = &self.labels {
            g.set_labels(back_map.iter().map(|&v| labels[v].clone()).collect());
        }
        Ok(SubgraphView { graph: g, back_map })
    }

    /// ⟨N(v)⟩: the subgraph induced on the neighbours of v.
    pub fn induced_neighbourhood(&self, v: usize) -> Result<SubgraphView> {
        let nb = self.neighbourhood(v)?;
        self.induced_subgraph(&nb)
    }

    pub fn is_clique_set(&self, s: &VertexSet) -> bool {
        let members = s.to_vec();
        members
            .iter()
            .enumerate()
            .all(|(i, &u)| members[i + 1..].iter().all(|&v| self.adjacent(u, v)))
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = VertexSet::empty(self.n);
        let mut stack = vec![0];
        seen.insert(0);
        while let Some(v) = stack.pop() {
            for u in self.neighbourhood(v).unwrap().iter() {
                if !seen.contains(u) {
                    seen.insert(u);
                    stack.push(u);
                }
            }
        }
        seen.len() == self.n
    }

    pub fn stats(&self) -> GraphStats {
        let n = self.n;
        let valencies: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let complete_valency =
            VertexSet::from_iter(n, (0..n).filter(|&v| n > 0 && valencies[v] == n - 1));
        let m = valencies.iter().sum::<usize>() / 2;
        GraphStats {
            n,
            m,
            is_clique: m == n * n.saturating_sub(1) / 2,
            is_connected: self.is_connected(),
            complete_valency,
            valencies,
        }
    }

    /// Copy of the graph with vertex `i` renamed to `map[i]`.
    pub fn relabelled(&self, map: &[usize]) -> Graph {
        debug_assert_eq!(map.len(), self.n);
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adjacent(u, v) {
                    g.set_edge(map[u], map[v]);
                }
            }
        }
        g
    }

    /// Upper-triangle adjacency bits packed into bytes, in the graph6 bit
    /// order. Two graphs are identical (not just isomorphic) iff their
    /// orders and adjacency bytes agree.
    pub fn adjacency_bytes(&self) -> Vec<u8> {
        let mut bytes = Vec::new();
        let mut cur = 0u8;
        let mut nbits = 0;
        for j in 1..self.n {
            for i in 0..j {
                cur = (cur << 1) | u8::from(self.adjacent(i, j));
                nbits += 1;
                if nbits == 8 {
                    bytes.push(cur);
                    cur = 0;
                    nbits = 0;
                }
            }
        }
        if nbits > 0 {
            bytes.push(cur << (8 - nbits));
        }
        bytes
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let edges: Vec<(usize, usize)> = (0..self.n)
            .flat_map(|u| {
                (u + 1..self.n)
                    .filter(move |&v| self.adjacent(u, v))
                    .map(move |v| (u, v))
            })
            .collect();
        write!(f, "Graph(n={}, edges={:?})", self.n, edges)
    }
}

/// An induced subgraph re-indexed to `0..|S|`, plus the map back to the
/// parent graph's vertex ids.
#[derive(Clone, Debug)]
pub struct SubgraphView {
    pub graph: Graph,
    pub back_map: Vec<usize>,
}

impl SubgraphView {
    /// Parent ids of a local vertex set.
    pub fn to_parent(&self, local: &VertexSet) -> Vec<usize> {
        local.iter().map(|i| self.back_map[i]).collect()
    }

    /// Local id of a parent vertex, if present.
    pub fn local_of(&self, parent: usize) -> Option<usize> {
        self.back_map.binary_search(&parent).ok()
    }
}

#[derive(Clone, Debug)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub valencies: Vec<usize>,
    pub complete_valency: VertexSet,
    pub is_clique: bool,
    pub is_connected: bool,
}

#[cfg(test)]
pub(crate) use tests::{complete, cycle};

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    pub(crate) fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn neighbourhood_basics() {
        let k4 = complete(4);
        assert_eq!(k4.neighbourhood(0).unwrap().to_vec(), vec![1, 2, 3]);
        let c5 = cycle(5);
        assert_eq!(c5.neighbourhood(0).unwrap().to_vec(), vec![1, 4]);
        let lonely = Graph::empty(1);
        assert!(lonely.neighbourhood(0).unwrap().is_empty());
        assert!(matches!(
            c5.neighbourhood(7),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn neighbourhood_never_contains_self() {
        let c5 = cycle(5);
        for v in 0..5 {
            assert!(!c5.neighbourhood(v).unwrap().contains(v));
        }
    }

    #[test]
    fn induced_subgraph_cases() {
        let k4 = complete(4);
        let s = VertexSet::from_iter(4, [0, 1, 2]);
        let sub = k4.induced_subgraph(&s).unwrap();
        assert_eq!(sub.graph.order(), 3);
        assert_eq!(sub.graph.size(), 3);
        assert_eq!(sub.back_map, vec![0, 1, 2]);

        let c5 = cycle(5);
        let s = VertexSet::from_iter(5, [0, 1, 3]);
        let sub = c5.induced_subgraph(&s).unwrap();
        assert_eq!(sub.graph.size(), 1);
        assert!(sub.graph.adjacent(0, 1));

        let empty = c5.induced_subgraph(&VertexSet::empty(5)).unwrap();
        assert_eq!(empty.graph.order(), 0);
    }

    #[test]
    fn induced_neighbourhood_cases() {
        let k4 = complete(4);
        let nb = k4.induced_neighbourhood(0).unwrap();
        assert_eq!(nb.graph.order(), 3);
        assert_eq!(nb.graph.size(), 3);

        let c5 = cycle(5);
        let nb = c5.induced_neighbourhood(0).unwrap();
        assert_eq!(nb.graph.order(), 2);
        assert_eq!(nb.graph.size(), 0);
    }

    #[test]
    fn common_neighbourhood_cases() {
        let k4 = complete(4);
        let s = VertexSet::from_iter(4, [0, 1]);
        assert_eq!(k4.common_neighbourhood(&s).unwrap().to_vec(), vec![2, 3]);

        let c5 = cycle(5);
        let s = VertexSet::from_iter(5, [0, 1]);
        assert!(c5.common_neighbourhood(&s).unwrap().is_empty());

        assert!(matches!(
            c5.common_neighbourhood(&VertexSet::empty(5)),
            Err(Error::EmptySet)
        ));

        // singleton set degenerates to the plain neighbourhood
        let s = VertexSet::from_iter(5, [2]);
        assert_eq!(
            c5.common_neighbourhood(&s).unwrap().to_vec(),
            c5.neighbourhood(2).unwrap().to_vec()
        );
    }

    #[test]
    fn stats_cases() {
        let k4 = complete(4);
        let st = k4.stats();
        assert_eq!((st.n, st.m), (4, 6));
        assert!(st.is_clique);
        assert_eq!(st.complete_valency.len(), 4);

        let c5 = cycle(5);
        let st = c5.stats();
        assert_eq!((st.n, st.m), (5, 5));
        assert_eq!(st.valencies, vec![2; 5]);
        assert!(st.complete_valency.is_empty());
        assert!(!st.is_clique);

        // star K1,3: centre 0
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.stats().complete_valency.to_vec(), vec![0]);
    }

    #[test]
    fn handshake() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let st = g.stats();
        assert_eq!(st.valencies.iter().sum::<usize>(), 2 * st.m);
    }

    #[test]
    fn rejects_loops() {
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
    }

    #[test]
    fn back_map_strictly_increasing() {
        let g = cycle(7);
        let s = VertexSet::from_iter(7, [6, 2, 4, 0]);
        let sub = g.induced_subgraph(&s).unwrap();
        assert!(sub.back_map.windows(2).all(|w| w[0] < w[1]));
    }
}
