//! Permutations of `1..=n` in one-line form, with disjoint-cycle views.

use crate::graph::VertexId;

/// A permutation of `1..=n`; `map[0]` is unused.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    map: Vec<VertexId>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation { map: (0..=n).collect() }
    }

    /// Wraps a 1-based image table. Returns `None` unless it is a bijection of `1..=n`.
    pub fn from_map(map: Vec<VertexId>) -> Option<Permutation> {
        let n = map.len().checked_sub(1)?;
        let mut seen = vec![false; n + 1];
        for &x in &map[1..] {
            if x == 0 || x > n || seen[x] {
                return None;
            }
            seen[x] = true;
        }
        Some(Permutation { map })
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[VertexId]]) -> Option<Permutation> {
        let mut map: Vec<VertexId> = (0..=n).collect();
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                map[x] = c[(i + 1) % c.len()];
            }
        }
        Permutation::from_map(map)
    }

    pub fn n(&self) -> usize {
        self.map.len() - 1
    }

    #[inline]
    pub fn apply(&self, x: VertexId) -> VertexId {
        self.map[x]
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.map
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        let map = (0..=self.n())
            .map(|x| if x == 0 { 0 } else { self.map[other.map[x]] })
            .collect();
        Permutation { map }
    }

    pub fn inverse(&self) -> Permutation {
        let mut map = vec![0; self.map.len()];
        for x in 1..self.map.len() {
            map[self.map[x]] = x;
        }
        Permutation { map }
    }

    /// Number of points not fixed.
    pub fn moved(&self) -> usize {
        (1..self.map.len()).filter(|&x| self.map[x] != x).count()
    }

    pub fn is_identity(&self) -> bool {
        self.moved() == 0
    }

    /// Nontrivial cycles, each starting at its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.map.len()];
        let mut out = Vec::new();
        for x in 1..self.map.len() {
            if seen[x] || self.map[x] == x {
                continue;
            }
            let mut c = vec![x];
            seen[x] = true;
            let mut y = self.map[x];
            while y != x {
                seen[y] = true;
                c.push(y);
                y = self.map[y];
            }
            out.push(c);
        }
        out
    }

    /// Count of all cycles including fixed points.
    pub fn cycle_count(&self) -> usize {
        self.cycles().len() + (self.n() - self.moved())
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_and_parity() {
        let p = Permutation::from_cycles(6, &[&[1, 2, 3], &[4, 5]]).unwrap();
        assert_eq!(p.cycles(), vec![vec![1, 2, 3], vec![4, 5]]);
        assert_eq!(p.moved(), 5);
        assert!(!p.is_even());
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert!(p.compose(&p.inverse()).is_identity());
        assert_eq!(p.cycle_count(), 3);
    }

    #[test]
    fn compose_applies_right_first() {
        let a = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[2, 3]]).unwrap();
        // a∘b sends 2 -> 3 -> 3, 3 -> 2 -> 1
        let ab = a.compose(&b);
        assert_eq!(ab.apply(2), 3);
        assert_eq!(ab.apply(3), 1);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_map(vec![0, 1, 1]).is_none());
        assert!(Permutation::from_map(vec![0, 3, 1]).is_none());
    }
}
