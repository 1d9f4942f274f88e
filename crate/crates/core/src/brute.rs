//! Brute-force oracles: exhaustive permutation filters and small-graph
//! enumeration. These deliberately avoid the refinement machinery in
//! `aut` so the two routes stay independent; they back the self-test
//! suites and the acceptance gate.

use crate::graph::Graph;
use crate::perm::Permutation;

/// Hard ceiling on factorial search; 8! = 40320 permutations.
pub const MAX_DEGREE: usize = 8;

/// All `n!` permutations of `0..n`. Panics above [`MAX_DEGREE`].
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    assert!(n <= MAX_DEGREE, "brute force capped at degree {MAX_DEGREE}");
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut rest: Vec<usize> = (0..n).collect();
    fn go(out: &mut Vec<Permutation>, cur: &mut Vec<usize>, rest: &mut Vec<usize>) {
        if rest.is_empty() {
            out.push(Permutation::from_image(cur.clone()));
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            go(out, cur, rest);
            cur.pop();
            rest.insert(i, x);
        }
    }
    go(&mut out, &mut cur, &mut rest);
    out
}

fn preserves_adjacency(g: &Graph, p: &Permutation) -> bool {
    let n = g.order();
    (0..n).all(|u| (u + 1..n).all(|v| g.adjacent(u, v) == g.adjacent(p.apply(u), p.apply(v))))
}

/// Every automorphism of `g`, by filtering all `n!` permutations.
pub fn automorphisms(g: &Graph) -> Vec<Permutation> {
    all_permutations(g.order())
        .into_iter()
        .filter(|p| preserves_adjacency(g, p))
        .collect()
}

/// Exhaustive isomorphism search between two small graphs.
pub fn isomorphism(a: &Graph, b: &Graph) -> Option<Permutation> {
    if a.order() != b.order() {
        return None;
    }
    let n = a.order();
    all_permutations(n).into_iter().find(|p| {
        (0..n).all(|u| (u + 1..n).all(|v| a.adjacent(u, v) == b.adjacent(p.apply(u), p.apply(v))))
    })
}

/// Does `g` have an automorphism whose cycles all have length 2?
pub fn has_fpf_involution(g: &Graph) -> bool {
    automorphisms(g)
        .iter()
        .any(|p| p.profile().is_fpf_involution)
}

/// All labelled graphs on `n` vertices, one per adjacency bit pattern.
pub fn all_labelled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let nbits = n * n.saturating_sub(1) / 2;
    assert!(nbits < 64, "enumeration capped well below this");
    (0u64..1 << nbits).map(move |bits| {
        let mut edges = Vec::new();
        let mut k = 0;
        for u in 0..n {
            for v in u + 1..n {
                if bits >> k & 1 == 1 {
                    edges.push((u, v));
                }
                k += 1;
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    })
}

/// One representative per isomorphism class on `n` vertices, deduplicated
/// by canonical form.
pub fn iso_class_representatives(n: usize) -> Vec<Graph> {
    let mut seen = std::collections::HashSet::new();
    let mut reps = Vec::new();
    for g in all_labelled_graphs(n) {
        if seen.insert(crate::canonical_form(&g).unwrap()) {
            reps.push(g);
        }
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle};

    #[test]
    fn permutation_counts() {
        assert_eq!(all_permutations(0).len(), 1);
        assert_eq!(all_permutations(4).len(), 24);
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&cycle(5)).len(), 10);
        assert_eq!(automorphisms(&complete(4)).len(), 24);
    }

    #[test]
    fn known_iso_class_counts() {
        // numbers of graphs on n unlabelled vertices
        assert_eq!(iso_class_representatives(1).len(), 1);
        assert_eq!(iso_class_representatives(2).len(), 2);
        assert_eq!(iso_class_representatives(3).len(), 4);
        assert_eq!(iso_class_representatives(4).len(), 11);
        assert_eq!(iso_class_representatives(5).len(), 34);
    }
}
