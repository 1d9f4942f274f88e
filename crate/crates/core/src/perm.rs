//! Permutations of `0..n`, cycle statistics, and the four equivalent
//! regularity conditions for transitive permutation groups.

use crate::{Error, Result};
use std::collections::HashSet;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            image: (0..degree).collect(),
        }
    }

    /// `image[i]` is where `i` maps. Panics unless it is a bijection.
    pub fn from_image(image: Vec<usize>) -> Self {
        let mut seen = vec![false; image.len()];
        for &x in &image {
            assert!(x < image.len() && !seen[x], "not a bijection: {image:?}");
            seen[x] = true;
        }
        Permutation { image }
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.image.len()];
        for (i, &x) in self.image.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { image: inv }
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            image: other.image.iter().map(|&x| self.image[x]).collect(),
        }
    }

    /// Cycles in order of smallest member; fixed points appear as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.image.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut cur = self.image[start];
            while cur != start {
                seen[cur] = true;
                cyc.push(cur);
                cur = self.image[cur];
            }
            cycles.push(cyc);
        }
        cycles
    }

    pub fn profile(&self) -> PermProfile {
        let mut cycle_lengths: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        cycle_lengths.sort_unstable();
        let order = cycle_lengths.iter().fold(1u64, |acc, &l| lcm(acc, l as u64));
        let is_semiregular = cycle_lengths.windows(2).all(|w| w[0] == w[1]);
        let is_fpf_involution = !cycle_lengths.is_empty() && cycle_lengths.iter().all(|&l| l == 2);
        PermProfile {
            order,
            cycle_lengths,
            is_semiregular,
            is_fpf_involution,
        }
    }

    /// Cycle notation, e.g. `(0 3)(1 2)`; the identity renders as `()`.
    pub fn cycle_string(&self) -> String {
        let nontrivial: Vec<Vec<usize>> =
            self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.is_empty() {
            return "()".to_string();
        }
        nontrivial
            .iter()
            .map(|c| {
                let inner: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                format!("({})", inner.join(" "))
            })
            .collect()
    }
}

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Cycle statistics of a permutation. A permutation is semiregular when
/// all cycle lengths agree; a fixed-point-free involution has every cycle
/// of length exactly 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermProfile {
    pub order: u64,
    pub cycle_lengths: Vec<usize>,
    pub is_semiregular: bool,
    pub is_fpf_involution: bool,
}

/// The four equivalent conditions for a transitive group to be regular,
/// evaluated independently.
#[derive(Clone, Debug)]
pub struct RegularActionReport {
    pub stabilisers_trivial: bool,
    pub order_equals_degree: bool,
    pub unique_transporter: bool,
    pub all_semiregular: bool,
    pub agree: bool,
}

impl RegularActionReport {
    pub fn is_regular(&self) -> bool {
        self.stabilisers_trivial
    }
}

/// Evaluate all four regularity conditions on a full element list of a
/// transitive permutation group. Errors unless the input is closed under
/// composition and inverse and acts transitively.
pub fn is_regular_action(perms: &[Permutation], degree: usize) -> Result<RegularActionReport> {
    let elements: HashSet<&Permutation> = perms.iter().collect();
    if elements.iter().any(|p| p.degree() != degree) {
        return Err(Error::NotTransitiveGroup(format!(
            "degree mismatch (expected {degree})"
        )));
    }
    if elements.is_empty() {
        return Err(Error::NotTransitiveGroup("empty input".into()));
    }
    for p in &elements {
        if !elements.contains(&p.inverse()) {
            return Err(Error::NotTransitiveGroup(format!(
                "not closed under inverse at {p:?}"
            )));
        }
        for q in &elements {
            if !elements.contains(&p.compose(q)) {
                return Err(Error::NotTransitiveGroup(format!(
                    "not closed under composition at {p:?}·{q:?}"
                )));
            }
        }
    }
    if degree > 0 {
        let reachable: HashSet<usize> = elements.iter().map(|p| p.apply(0)).collect();
        if reachable.len() != degree {
            return Err(Error::NotTransitiveGroup(format!(
                "orbit of 0 has size {} < {degree}",
                reachable.len()
            )));
        }
    }

    let stabilisers_trivial = (0..degree).all(|x| {
        elements
            .iter()
            .filter(|p| p.apply(x) == x)
            .all(|p| p.is_identity())
    });
    let order_equals_degree = elements.len() == degree;
    let unique_transporter = (0..degree).all(|x| {
        (0..degree).all(|y| elements.iter().filter(|p| p.apply(x) == y).count() == 1)
    });
    let all_semiregular = elements.iter().all(|p| p.profile().is_semiregular);

    let agree = [order_equals_degree, unique_transporter, all_semiregular]
        .iter()
        .all(|&c| c == stabilisers_trivial);
    Ok(RegularActionReport {
        stabilisers_trivial,
        order_equals_degree,
        unique_transporter,
        all_semiregular,
        agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(image: &[usize]) -> Permutation {
        Permutation::from_image(image.to_vec())
    }

    #[test]
    fn profiles() {
        let id4 = Permutation::identity(4);
        let p = id4.profile();
        assert_eq!(p.order, 1);
        assert_eq!(p.cycle_lengths, vec![1, 1, 1, 1]);
        assert!(p.is_semiregular && !p.is_fpf_involution);

        let swap2 = perm(&[1, 0, 3, 2]); // (0 1)(2 3)
        let p = swap2.profile();
        assert_eq!(p.order, 2);
        assert!(p.is_semiregular && p.is_fpf_involution);

        let partial = perm(&[1, 0, 2]); // (0 1)(2)
        let p = partial.profile();
        assert_eq!(p.order, 2);
        assert!(!p.is_semiregular && !p.is_fpf_involution);
    }

    #[test]
    fn profile_order_is_lcm() {
        let p = perm(&[1, 2, 0, 4, 3]); // (0 1 2)(3 4)
        assert_eq!(p.profile().order, 6);
    }

    #[test]
    fn cycle_strings() {
        assert_eq!(perm(&[3, 2, 1, 0]).cycle_string(), "(0 3)(1 2)");
        assert_eq!(Permutation::identity(3).cycle_string(), "()");
    }

    #[test]
    fn compose_and_inverse() {
        let p = perm(&[1, 2, 0]);
        assert!(p.compose(&p.inverse()).is_identity());
        let q = perm(&[0, 2, 1]);
        // (p∘q)(1) = p(q(1)) = p(2) = 0
        assert_eq!(p.compose(&q).apply(1), 0);
    }

    fn cyclic_group(n: usize) -> Vec<Permutation> {
        (0..n)
            .map(|s| Permutation::from_image((0..n).map(|i| (i + s) % n).collect()))
            .collect()
    }

    fn symmetric_group(n: usize) -> Vec<Permutation> {
        fn go(acc: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, rest: &mut Vec<usize>) {
            if rest.is_empty() {
                acc.push(cur.clone());
            }
            for i in 0..rest.len() {
                let x = rest.remove(i);
                cur.push(x);
                go(acc, cur, rest);
                cur.pop();
                rest.insert(i, x);
            }
        }
        let mut images = Vec::new();
        go(&mut images, &mut Vec::new(), &mut (0..n).collect());
        images.into_iter().map(Permutation::from_image).collect()
    }

    #[test]
    fn regular_actions() {
        let r = is_regular_action(&cyclic_group(4), 4).unwrap();
        assert!(r.stabilisers_trivial && r.order_equals_degree);
        assert!(r.unique_transporter && r.all_semiregular && r.agree);

        let r = is_regular_action(&symmetric_group(3), 3).unwrap();
        assert!(!r.stabilisers_trivial && !r.order_equals_degree);
        assert!(!r.unique_transporter && !r.all_semiregular);
        assert!(r.agree);

        // Klein four-group acting on itself
        let klein = vec![
            Permutation::identity(4),
            perm(&[1, 0, 3, 2]),
            perm(&[2, 3, 0, 1]),
            perm(&[3, 2, 1, 0]),
        ];
        let r = is_regular_action(&klein, 4).unwrap();
        assert!(r.stabilisers_trivial && r.agree);
    }

    #[test]
    fn regular_action_rejects_bad_input() {
        // not closed: a lone 3-cycle without its inverse's closure partner set
        let not_closed = vec![Permutation::identity(3), perm(&[1, 2, 0])];
        assert!(is_regular_action(&not_closed, 3).is_err());

        // intransitive: identity only on 2 points
        let intransitive = vec![Permutation::identity(2)];
        assert!(is_regular_action(&intransitive, 2).is_err());
    }
}
