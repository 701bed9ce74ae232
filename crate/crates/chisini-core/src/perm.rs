//! Permutations of {1..n} and cyclical types.

use serde::{Deserialize, Serialize};
use std::fmt;

/// A permutation stored as its image sequence on 0-based points; the
/// public/display convention is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// From a 0-based image vector; must be a bijection.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Permutation { images })
    }

    /// From disjoint cycles in 1-based points.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Option<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut moved = vec![false; n];
        for cycle in cycles {
            for w in 0..cycle.len() {
                let a = cycle[w].checked_sub(1)?;
                let b = cycle[(w + 1) % cycle.len()].checked_sub(1)?;
                if a >= n || b >= n || moved[a] {
                    return None;
                }
                moved[a] = true;
                images[a] = b;
            }
        }
        Some(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// self * other: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: (0..self.degree())
                .map(|i| self.images[other.images[i]])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// g^-1 * self * g.
    pub fn conjugate(&self, g: &Permutation) -> Permutation {
        g.inverse().compose(self).compose(g)
    }

    /// Disjoint cycles (1-based), nontrivial ones only, each rotated to
    /// start at its least point, sorted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start + 1];
            seen[start] = true;
            let mut next = self.images[start];
            while next != start {
                seen[next] = true;
                cycle.push(next + 1);
                next = self.images[next];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn cyclical_type(&self) -> CyclicalType {
        let mut lengths: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        CyclicalType { lengths }
    }

    /// All permutations of S_n in lexicographic image order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut images: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation {
                images: images.clone(),
            });
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1))
                .rev()
                .find(|&i| images[i] < images[i + 1])
            else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| images[j] > images[i]).unwrap();
            images.swap(i, j);
            images[i + 1..].reverse();
        }
        out
    }

    /// All permutations of S_n with the given cyclical type, in
    /// lexicographic image order.
    pub fn all_of_type(n: usize, t: &CyclicalType) -> Vec<Permutation> {
        Permutation::all(n)
            .into_iter()
            .filter(|p| &p.cyclical_type() == t)
            .collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

/// Multiset of nontrivial cycle lengths, descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(transparent)]
pub struct CyclicalType {
    pub lengths: Vec<usize>,
}

impl CyclicalType {
    pub fn new(mut lengths: Vec<usize>) -> Option<Self> {
        if lengths.iter().any(|&l| l < 2) {
            return None;
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        Some(CyclicalType { lengths })
    }

    pub fn trivial() -> Self {
        CyclicalType {
            lengths: Vec::new(),
        }
    }

    pub fn is_single_cycle(&self) -> bool {
        self.lengths.len() == 1
    }

    /// Total points moved; achievable in S_n only when this is <= n.
    pub fn moved_points(&self) -> usize {
        self.lengths.iter().sum()
    }
}

impl fmt::Display for CyclicalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.lengths.iter().map(|l| l.to_string()).collect();
        write!(f, "({})", body.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_and_types() {
        let id = Permutation::identity(5);
        assert_eq!(id.cyclical_type(), CyclicalType::trivial());

        let p = Permutation::from_cycles(5, &[vec![1, 2], vec![3, 4, 5]]).unwrap();
        assert_eq!(p.cyclical_type(), CyclicalType::new(vec![2, 3]).unwrap());
        assert_eq!(p.cyclical_type().lengths, vec![3, 2]);

        let t = Permutation::from_cycles(4, &[vec![1, 2]]).unwrap();
        assert_eq!(t.cyclical_type(), CyclicalType::new(vec![2]).unwrap());
    }

    #[test]
    fn compose_convention() {
        // apply (1 2) then (2 3): 1 -> 2 -> 3
        let a = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![2, 3]]).unwrap();
        let c = b.compose(&a);
        assert_eq!(c.apply(0), 2);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Permutation::all(4).len(), 24);
        let t2 = CyclicalType::new(vec![2]).unwrap();
        assert_eq!(Permutation::all_of_type(3, &t2).len(), 3);
        assert_eq!(Permutation::all_of_type(4, &t2).len(), 6);
    }

    #[test]
    fn conjugation_preserves_type() {
        let p = Permutation::from_cycles(4, &[vec![1, 2, 3]]).unwrap();
        for g in Permutation::all(4) {
            assert_eq!(p.conjugate(&g).cyclical_type(), p.cyclical_type());
        }
    }
}
