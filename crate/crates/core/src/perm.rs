//! Finite permutations in one-line notation (0-based internally).
//!
//! Cycle notation at the JSON/CLI boundary is 1-based, matching the usual
//! `(1 2)` convention for transpositions.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PermError {
    #[error("cycle entry {0} out of range 1..={1}")]
    EntryOutOfRange(usize, usize),
    #[error("repeated entry {0} in cycle notation")]
    RepeatedEntry(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
}

/// A permutation of `{0, .., n-1}`; `map[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            map: (0..n).collect(),
        }
    }

    pub fn from_map(map: Vec<usize>) -> Self {
        debug_assert!({
            let mut seen = vec![false; map.len()];
            map.iter().all(|&v| {
                v < map.len() && !std::mem::replace(&mut seen[v], true)
            })
        });
        Permutation { map }
    }

    /// Build from 1-based cycle notation, e.g. `[[1,2],[3,4]]` in S_n.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut map: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for cycle in cycles {
            for &v in cycle {
                if v == 0 || v > n {
                    return Err(PermError::EntryOutOfRange(v, n));
                }
                if std::mem::replace(&mut seen[v - 1], true) {
                    return Err(PermError::RepeatedEntry(v));
                }
            }
            for (i, &v) in cycle.iter().enumerate() {
                let w = cycle[(i + 1) % cycle.len()];
                map[v - 1] = w - 1;
            }
        }
        Ok(Permutation { map })
    }

    /// Transposition (i j), 0-based.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut map: Vec<usize> = (0..n).collect();
        map.swap(i, j);
        Permutation { map }
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_transposition(&self) -> bool {
        self.map.iter().enumerate().filter(|&(i, &v)| i != v).count() == 2
    }

    pub fn inverse(&self) -> Self {
        let mut map = vec![0; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            map[v] = i;
        }
        Permutation { map }
    }

    /// Composition `self` then `other`: `(self.then(other))(i) = other(self(i))`.
    pub fn then(&self, other: &Permutation) -> Result<Self, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(Permutation {
            map: self.map.iter().map(|&v| other.map[v]).collect(),
        })
    }

    /// Cycle decomposition; singletons omitted, cycles start at their minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.map.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.map[start];
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.map[cur];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Number of cycles including fixed points (orbit count of `<self>`).
    pub fn cycle_count(&self) -> usize {
        let n = self.map.len();
        n - self.cycles().iter().map(|c| c.len() - 1).sum::<usize>()
    }

    /// Sorted cycle-length partition of n (including fixed points).
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        let moved: usize = lens.iter().sum();
        lens.extend(std::iter::repeat(1).take(self.degree() - moved));
        lens.sort_unstable();
        lens
    }

    /// Orbits of `{0..n-1}` under the subgroup generated by `gens`.
    pub fn orbit_count(n: usize, gens: &[Permutation]) -> usize {
        let mut uf = UnionFind::new(n);
        for g in gens {
            for i in 0..n {
                uf.union(i, g.apply(i));
            }
        }
        uf.count()
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.then(other).ok() == other.then(self).ok()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, v) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", v + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Plain union-find, used by the covering-space oracles.
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let root = self.find(self.parent[i]);
            self.parent[i] = root;
        }
        self.parent[i]
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    pub fn count(&mut self) -> usize {
        (0..self.parent.len())
            .filter(|&i| self.find(i) == i)
            .count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_roundtrip() {
        let p = Permutation::from_cycles(4, &[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(p.cycles(), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(p.cycle_type(), vec![2, 2]);
        assert!(p.then(&p).unwrap().is_identity());
    }

    #[test]
    fn composition_order() {
        // (1 2) then (2 3): 1 -> 2 -> 3.
        let a = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![2, 3]]).unwrap();
        let c = a.then(&b).unwrap();
        assert_eq!(c.apply(0), 2);
        assert_eq!(c.cycle_type(), vec![3]);
    }

    #[test]
    fn overlapping_cycles_rejected() {
        assert_eq!(
            Permutation::from_cycles(3, &[vec![1, 2], vec![2, 3]]),
            Err(PermError::RepeatedEntry(2))
        );
    }

    #[test]
    fn orbit_counting() {
        let a = Permutation::from_cycles(4, &[vec![1, 2]]).unwrap();
        let b = Permutation::from_cycles(4, &[vec![3, 4]]).unwrap();
        assert_eq!(Permutation::orbit_count(4, &[a.clone(), b]), 2);
        assert_eq!(Permutation::orbit_count(4, &[a]), 3);
        assert_eq!(Permutation::orbit_count(4, &[]), 4);
    }
}
