//! Automorphism groups, isomorphism search, and canonical forms via
//! equitable-partition refinement with individualization backtracking.
//!
//! The refinement is 1-dimensional Weisfeiler-Leman with a canonical cell
//! order: cells are keyed by (previous colour, neighbour counts per colour)
//! and re-numbered in sorted key order, so two isomorphic coloured graphs
//! refine to corresponding colourings. Group orders come from a naive
//! stabiliser chain: individualize a target vertex, find transporters to
//! the rest of its cell, multiply orbit sizes.

use crate::graph::Graph;
use crate::perm::Permutation;
use crate::{emit_graph6, Result};

type Colors = Vec<usize>;

fn normalize(colors: &[usize]) -> Colors {
    let mut values: Vec<usize> = colors.to_vec();
    values.sort_unstable();
    values.dedup();
    colors
        .iter()
        .map(|c| values.binary_search(c).unwrap())
        .collect()
}

fn color_count(colors: &[usize]) -> usize {
    colors.iter().copied().max().map_or(0, |m| m + 1)
}

/// Refine to the coarsest equitable colouring finer than `colors`, with
/// canonical colour numbering.
fn refine(g: &Graph, colors: &[usize]) -> Colors {
    let n = g.order();
    if n == 0 {
        return Vec::new();
    }
    let mut colors = normalize(colors);
    loop {
        let k = color_count(&colors);
        let mut keys: Vec<(usize, Vec<usize>)> = Vec::with_capacity(n);
        for v in 0..n {
            let mut counts = vec![0usize; k];
            for u in g.neighbourhood(v).unwrap().iter() {
                counts[colors[u]] += 1;
            }
            keys.push((colors[v], counts));
        }
        let mut sorted: Vec<&(usize, Vec<usize>)> = keys.iter().collect();
        sorted.sort();
        sorted.dedup();
        if sorted.len() == k {
            return colors;
        }
        colors = keys
            .iter()
            .map(|key| sorted.binary_search(&key).unwrap())
            .collect();
    }
}

fn cells_of(colors: &[usize]) -> Vec<Vec<usize>> {
    let k = color_count(colors);
    let mut cells = vec![Vec::new(); k];
    for (v, &c) in colors.iter().enumerate() {
        cells[c].push(v);
    }
    cells
}

/// First smallest non-singleton cell, if any.
fn target_cell(cells: &[Vec<usize>]) -> Option<usize> {
    cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() > 1)
        .min_by_key(|(i, c)| (c.len(), *i))
        .map(|(i, _)| i)
}

fn individualized(colors: &[usize], v: usize) -> Colors {
    let mut c = colors.to_vec();
    c[v] = color_count(colors);
    c
}

fn map_is_isomorphism(a: &Graph, b: &Graph, map: &[usize]) -> bool {
    let n = a.order();
    (0..n).all(|u| (u + 1..n).all(|v| a.adjacent(u, v) == b.adjacent(map[u], map[v])))
}

/// Backtracking search for a colour-respecting isomorphism a -> b.
fn search_iso(a: &Graph, b: &Graph, ca: &[usize], cb: &[usize]) -> Option<Vec<usize>> {
    let ca = refine(a, ca);
    let cb = refine(b, cb);
    let cells_a = cells_of(&ca);
    let cells_b = cells_of(&cb);
    if cells_a.len() != cells_b.len() {
        return None;
    }
    if cells_a
        .iter()
        .zip(&cells_b)
        .any(|(x, y)| x.len() != y.len())
    {
        return None;
    }
    match target_cell(&cells_a) {
        None => {
            let mut map = vec![0; a.order()];
            for (ca_cell, cb_cell) in cells_a.iter().zip(&cells_b) {
                map[ca_cell[0]] = cb_cell[0];
            }
            map_is_isomorphism(a, b, &map).then_some(map)
        }
        Some(t) => {
            let v = cells_a[t][0];
            let ca2 = individualized(&ca, v);
            for &u in &cells_b[t] {
                if let Some(m) = search_iso(a, b, &ca2, &individualized(&cb, u)) {
                    return Some(m);
                }
            }
            None
        }
    }
}

/// Isomorphism between uncoloured graphs, as the image vector of vertices
/// of `a` in `b`.
pub fn find_isomorphism(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    if a.order() != b.order() || a.size() != b.size() {
        return None;
    }
    search_iso(a, b, &vec![0; a.order()], &vec![0; b.order()])
}

/// Automorphism group given by generators plus its exact order.
#[derive(Clone, Debug)]
pub struct AutGroup {
    pub degree: usize,
    pub generators: Vec<Permutation>,
    pub group_order: u128,
}

impl AutGroup {
    pub fn trivial(degree: usize) -> Self {
        AutGroup {
            degree,
            generators: Vec::new(),
            group_order: 1,
        }
    }

    /// Every element of the generated group, or `None` once more than
    /// `cap` elements have been produced.
    pub fn elements(&self, cap: usize) -> Option<Vec<Permutation>> {
        let mut seen: std::collections::HashSet<Permutation> = std::collections::HashSet::new();
        let id = Permutation::identity(self.degree);
        seen.insert(id.clone());
        let mut queue = vec![id];
        while let Some(p) = queue.pop() {
            for gen in &self.generators {
                let q = gen.compose(&p);
                if seen.insert(q.clone()) {
                    if seen.len() > cap {
                        return None;
                    }
                    queue.push(q);
                }
            }
        }
        Some(seen.into_iter().collect())
    }

    /// Orbit of a point under the generated group.
    pub fn orbit(&self, v: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[v] = true;
        let mut queue = vec![v];
        let mut out = vec![v];
        while let Some(x) = queue.pop() {
            for gen in &self.generators {
                for y in [gen.apply(x), gen.inverse().apply(x)] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push(y);
                        out.push(y);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

fn orbit_closure(start: usize, gens: &[Permutation], degree: usize) -> Vec<bool> {
    let mut seen = vec![false; degree];
    seen[start] = true;
    let mut queue = vec![start];
    while let Some(x) = queue.pop() {
        for gen in gens {
            let y = gen.apply(x);
            if !seen[y] {
                seen[y] = true;
                queue.push(y);
            }
            let z = gen.inverse().apply(x);
            if !seen[z] {
                seen[z] = true;
                queue.push(z);
            }
        }
    }
    seen
}

/// Stabiliser-chain computation of the colour-respecting automorphism
/// group: generators plus exact order.
fn aut_group_colored(g: &Graph, colors: &[usize]) -> (Vec<Permutation>, u128) {
    let mut colors = colors.to_vec();
    let mut all_gens: Vec<Permutation> = Vec::new();
    let mut order: u128 = 1;
    loop {
        colors = refine(g, &colors);
        let cells = cells_of(&colors);
        let Some(t) = target_cell(&cells) else {
            return (all_gens, order);
        };
        let v = cells[t][0];
        let mut level_gens: Vec<Permutation> = Vec::new();
        let cv = individualized(&colors, v);
        for &u in &cells[t][1..] {
            if orbit_closure(v, &level_gens, g.order())[u] {
                continue;
            }
            if let Some(m) = search_iso(g, g, &cv, &individualized(&colors, u)) {
                level_gens.push(Permutation::from_image(m));
            }
        }
        let orbit = orbit_closure(v, &level_gens, g.order());
        order *= orbit.iter().filter(|&&b| b).count() as u128;
        all_gens.extend(level_gens);
        colors = cv;
    }
}

pub fn automorphism_group(g: &Graph) -> AutGroup {
    let (generators, group_order) = aut_group_colored(g, &vec![0; g.order()]);
    AutGroup {
        degree: g.order(),
        generators,
        group_order,
    }
}

pub fn is_asymmetric(g: &Graph) -> bool {
    automorphism_group(g).group_order == 1
}

/// Canonical labelling: the map sending old ids to canonical positions.
fn canon_colored(g: &Graph, colors: &[usize]) -> (Vec<u8>, Vec<usize>) {
    let colors = refine(g, colors);
    let cells = cells_of(&colors);
    match target_cell(&cells) {
        None => {
            let map = colors.clone();
            (g.relabelled(&map).adjacency_bytes(), map)
        }
        Some(t) => {
            // individualizing orbit-equivalent vertices yields the same set
            // of leaves, so one representative per orbit suffices
            let (gens, _) = aut_group_colored(g, &colors);
            let mut reps: Vec<usize> = Vec::new();
            let mut covered = vec![false; g.order()];
            for &u in &cells[t] {
                if !covered[u] {
                    reps.push(u);
                    for (x, hit) in orbit_closure(u, &gens, g.order()).iter().enumerate() {
                        covered[x] |= hit;
                    }
                }
            }
            reps.into_iter()
                .map(|u| canon_colored(g, &individualized(&colors, u)))
                .min()
                .unwrap()
        }
    }
}

/// Canonical labelling of `g`: `map[v]` is the canonical position of `v`.
pub fn canonical_labelling(g: &Graph) -> Vec<usize> {
    canon_colored(g, &vec![0; g.order()]).1
}

/// Canonical form as a graph6 string: equal strings iff isomorphic graphs.
/// Canonical only within this implementation, not across tools.
pub fn canonical_form(g: &Graph) -> Result<String> {
    emit_graph6(&g.relabelled(&canonical_labelling(g)))
}

/// The set of all isomorphisms a -> b, represented by one base isomorphism
/// and the automorphism group of b: the family is { σ ∘ base }.
#[derive(Clone, Debug)]
pub struct IsoFamily {
    pub base: Vec<usize>,
    pub target_aut: AutGroup,
}

impl IsoFamily {
    pub fn size(&self) -> u128 {
        self.target_aut.group_order
    }

    /// Every isomorphism in the family, or `None` past `cap`.
    pub fn enumerate(&self, cap: usize) -> Option<Vec<Vec<usize>>> {
        let sigmas = self.target_aut.elements(cap)?;
        Some(
            sigmas
                .iter()
                .map(|s| self.base.iter().map(|&x| s.apply(x)).collect())
                .collect(),
        )
    }
}

/// Empty result means a ≇ b.
pub fn all_isomorphisms(a: &Graph, b: &Graph) -> Option<IsoFamily> {
    let base = find_isomorphism(a, b)?;
    Some(IsoFamily {
        base,
        target_aut: automorphism_group(b),
    })
}

/// Does `g` have an automorphism with every cycle of length exactly 2?
/// Vacuously true on the empty graph; always false on odd order.
pub fn has_fpf_involution_automorphism(g: &Graph) -> bool {
    has_involution_automorphism(g, false)
}

/// Involution search; with `fixed_points_allowed`, any non-identity
/// involutory automorphism qualifies (the looser reading of "product of
/// transpositions").
pub fn has_involution_automorphism(g: &Graph, fixed_points_allowed: bool) -> bool {
    let n = g.order();
    if n == 0 {
        return true;
    }
    if n % 2 == 1 && !fixed_points_allowed {
        return false;
    }
    let colors = refine(g, &vec![0; n]);
    let mut map: Vec<Option<usize>> = vec![None; n];
    search_involution(g, &colors, &mut map, fixed_points_allowed, false)
}

fn search_involution(
    g: &Graph,
    colors: &[usize],
    map: &mut Vec<Option<usize>>,
    fixed_points_allowed: bool,
    moved_any: bool,
) -> bool {
    let n = g.order();
    let Some(v) = (0..n).find(|&v| map[v].is_none()) else {
        return moved_any;
    };
    let consistent = |map: &[Option<usize>], v: usize, u: usize| {
        (0..n).all(|w| match map[w] {
            Some(mw) => g.adjacent(v, w) == g.adjacent(u, mw),
            None => true,
        })
    };
    for u in v..n {
        if u == v && !fixed_points_allowed {
            continue;
        }
        if map[u].is_some() || colors[u] != colors[v] {
            continue;
        }
        map[v] = Some(u);
        map[u] = Some(v);
        if consistent(map, v, u)
            && (u == v || consistent(map, u, v))
            && search_involution(g, colors, map, fixed_points_allowed, moved_any || u != v)
        {
            return true;
        }
        map[v] = None;
        if u != v {
            map[u] = None;
        }
    }
    false
}
