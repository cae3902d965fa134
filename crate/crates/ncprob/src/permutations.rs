//! Permutations of `{1..n}`, the transposition Cayley metric, and the
//! geodesic embedding of the noncrossing lattice into the symmetric group.
//!
//! Products use the convention `(s * t)(i) = s(t(i))` throughout.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::partitions::{PartitionError, SetPartition};

/// Errors from permutation construction and composition.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermutationError {
    /// The image list is not a bijection of `1..=n`.
    #[error("images are not a bijection of 1..={0}")]
    NotBijective(usize),
    /// Two operands act on different ground sets.
    #[error("ground-set sizes differ: {0} vs {1}")]
    MismatchedSize(usize, usize),
    /// Unparseable textual form.
    #[error("invalid permutation text `{0}`")]
    Parse(String),
}

/// A permutation in one-line form; `images[i-1]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, PermutationError> {
        let n = images.len();
        if n == 0 {
            return Err(PermutationError::NotBijective(0));
        }
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(PermutationError::NotBijective(n));
            }
            seen[v] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (1..=n).collect(),
        }
    }

    /// The long cycle `c = (1 2 ... n)`, i.e. `c(i) = i + 1 mod n`.
    pub fn long_cycle(n: usize) -> Self {
        Self {
            images: (1..=n).map(|i| i % n + 1).collect(),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Self { images: inv }
    }

    /// Composition `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self, PermutationError> {
        if self.ground_size() != other.ground_size() {
            return Err(PermutationError::MismatchedSize(
                self.ground_size(),
                other.ground_size(),
            ));
        }
        Ok(Self {
            images: other.images.iter().map(|&v| self.images[v - 1]).collect(),
        })
    }

    /// Orbits (cycles, including fixed points), each starting at its minimum,
    /// ordered by minimum.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.ground_size();
        let mut seen = vec![false; n + 1];
        let mut orbits = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut cur = self.apply(start);
            while cur != start {
                seen[cur] = true;
                orbit.push(cur);
                cur = self.apply(cur);
            }
            orbits.push(orbit);
        }
        orbits
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits().len()
    }

    /// Cayley norm `|s| = n - #orbits`: minimal number of transpositions.
    pub fn cayley_norm(&self) -> usize {
        self.ground_size() - self.orbit_count()
    }
}

/// Graph distance on the transposition Cayley graph:
/// `d(s1, s2) = n - #orbits(s1^{-1} s2)`.
pub fn cayley_distance(s1: &Permutation, s2: &Permutation) -> Result<usize, PermutationError> {
    let prod = s1.inverse().compose(s2)?;
    Ok(prod.cayley_norm())
}

impl fmt::Display for Permutation {
    /// One-line image list, e.g. `3,2,1,4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Permutation {
    type Err = PermutationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let images: Result<Vec<usize>, _> = s.split(',').map(|t| t.trim().parse()).collect();
        match images {
            Ok(v) => Permutation::new(v),
            Err(_) => Err(PermutationError::Parse(s.to_string())),
        }
    }
}

/// Embed a noncrossing partition as a permutation: each element maps to the
/// next element of its block in cyclic order (sorted order with wrap-around).
pub fn nc_to_permutation(p: &SetPartition) -> Result<Permutation, PartitionError> {
    if !p.is_noncrossing() {
        return Err(PartitionError::Crossing);
    }
    let mut images = vec![0usize; p.ground_size()];
    for block in p.blocks() {
        for (i, &e) in block.iter().enumerate() {
            images[e - 1] = block[(i + 1) % block.len()];
        }
    }
    Ok(Permutation { images })
}

/// Invert the embedding: if `s` lies on a geodesic from the identity to the
/// long cycle (`|s| + |s^{-1} c| = |c|`), return the partition formed by its
/// orbits; otherwise `None`.
pub fn permutation_to_nc(s: &Permutation) -> Option<SetPartition> {
    let n = s.ground_size();
    let c = Permutation::long_cycle(n);
    let rest = s.inverse().compose(&c).expect("same ground set");
    if s.cayley_norm() + rest.cayley_norm() != c.cayley_norm() {
        return None;
    }
    let partition =
        SetPartition::new(n, s.orbits()).expect("orbits always partition the ground set");
    debug_assert!(partition.is_noncrossing());
    Some(partition)
}
