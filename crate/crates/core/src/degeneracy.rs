//! Degeneracy words in Eilenberg–Zilber normal form and helpers for
//! monotone maps between finite ordinals.
//!
//! A monotone map `[m] -> [n]` is stored as a slice of length `m + 1`
//! whose entries lie in `0..=n`.

use std::fmt;

use crate::error::{Error, Result};

/// A word `s_{i1} ... s_{ik}` with `i1 > ... > ik`, stored as a bitmask of
/// the indices. The empty word is the identity.
///
/// Equivalently, the set of positions `j` at which the associated monotone
/// surjection repeats a value (`σ(j) = σ(j + 1)`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DegeneracyWord(u32);

pub const MAX_DIM: usize = 31;

impl DegeneracyWord {
    pub const IDENTITY: DegeneracyWord = DegeneracyWord(0);

    pub fn identity() -> Self {
        Self::IDENTITY
    }

    /// Builds a word from its indices, which must be strictly decreasing.
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut bits = 0u32;
        for (k, &i) in indices.iter().enumerate() {
            if i >= MAX_DIM || (k > 0 && indices[k - 1] <= i) {
                return Err(Error::InvalidWord(indices.to_vec()));
            }
            bits |= 1 << i;
        }
        Ok(DegeneracyWord(bits))
    }

    pub(crate) fn from_bits(bits: u32) -> Self {
        DegeneracyWord(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Indices in normal-form order (strictly decreasing).
    pub fn indices(self) -> Vec<usize> {
        (0..MAX_DIM).rev().filter(|&i| self.contains(i)).collect()
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_DIM && self.0 & (1 << i) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Whether the word can act on simplices of dimension `base`, i.e. every
    /// index is below the realized dimension `base + len`.
    pub fn fits(self, base: usize) -> bool {
        let n = base + self.len();
        n <= MAX_DIM && (self.0 >> n) == 0
    }

    /// The monotone surjection `[n] -> [n - len]` with `n` the realized dimension.
    pub fn surjection(self, n: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(n + 1);
        let mut v = 0;
        for j in 0..=n {
            if j > 0 && !self.contains(j - 1) {
                v += 1;
            }
            out.push(v);
        }
        out
    }

    /// Reads off the normal form of a monotone surjection.
    pub fn from_surjection(s: &[usize]) -> Self {
        let mut bits = 0u32;
        for j in 0..s.len().saturating_sub(1) {
            if s[j] == s[j + 1] {
                bits |= 1 << j;
            }
        }
        DegeneracyWord(bits)
    }

    /// The word of `s^outer ∘ s^self`, i.e. first apply `self` and then
    /// `outer`, acting on a simplex of dimension `base`.
    pub fn then(self, outer: DegeneracyWord, base: usize) -> DegeneracyWord {
        let mid = base + self.len();
        let n = mid + outer.len();
        let inner = self.surjection(mid);
        let outer_s = outer.surjection(n);
        let composite: Vec<usize> = outer_s.iter().map(|&j| inner[j]).collect();
        DegeneracyWord::from_surjection(&composite)
    }
}

impl fmt::Debug for DegeneracyWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{:?}", self.indices())
    }
}

/// The coface `δ^i : [n-1] -> [n]` skipping `i`.
pub fn face_op(n: usize, i: usize) -> Vec<usize> {
    (0..n).map(|j| if j < i { j } else { j + 1 }).collect()
}

/// The codegeneracy `σ^i : [n+1] -> [n]` repeating `i`.
pub fn degen_op(n: usize, i: usize) -> Vec<usize> {
    (0..=n + 1).map(|j| if j <= i { j } else { j - 1 }).collect()
}

/// `outer ∘ inner`.
pub fn compose(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&j| outer[j]).collect()
}

pub fn identity_op(n: usize) -> Vec<usize> {
    (0..=n).collect()
}

/// The map `[n] -> [n]` that is the identity except `j ↦ j + 1`; a simplex
/// `z` satisfies `z = s_j d_j z` iff it is fixed by this operator.
pub(crate) fn repeat_op(n: usize, j: usize) -> Vec<usize> {
    (0..=n).map(|k| if k == j { k + 1 } else { k }).collect()
}

/// A section of the surjection with repeat set `word`, picking the first
/// element of each fibre. Maps `[n - len] -> [n]`.
pub(crate) fn section(word: DegeneracyWord, n: usize) -> Vec<usize> {
    let mut out = vec![0];
    for j in 0..n {
        if !word.contains(j) {
            out.push(j + 1);
        }
    }
    out
}

pub fn is_monotone(op: &[usize]) -> bool {
    op.windows(2).all(|w| w[0] <= w[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surjection_round_trip() {
        let w = DegeneracyWord::from_indices(&[1, 0]).unwrap();
        assert_eq!(w.surjection(2), vec![0, 0, 0]);
        assert_eq!(DegeneracyWord::from_surjection(&[0, 0, 0]), w);
        let w = DegeneracyWord::from_indices(&[2]).unwrap();
        assert_eq!(w.surjection(3), vec![0, 1, 2, 2]);
    }

    #[test]
    fn rejects_non_decreasing() {
        assert!(DegeneracyWord::from_indices(&[0, 1]).is_err());
        assert!(DegeneracyWord::from_indices(&[1, 1]).is_err());
        assert!(DegeneracyWord::from_indices(&[]).unwrap().is_empty());
    }

    #[test]
    fn composition_follows_simplicial_identity() {
        // s_i s_j = s_{j+1} s_i for i <= j: apply s_0 then s_0 gives s_1 s_0.
        let s0 = DegeneracyWord::from_indices(&[0]).unwrap();
        assert_eq!(s0.then(s0, 0).indices(), vec![1, 0]);
        // s_2 after s_0 on a 1-simplex is already normal.
        let s2 = DegeneracyWord::from_indices(&[2]).unwrap();
        assert_eq!(s0.then(s2, 1).indices(), vec![2, 0]);
        // s_0 after s_1 on a 1-simplex renormalizes to s_2 s_0.
        let s1 = DegeneracyWord::from_indices(&[1]).unwrap();
        assert_eq!(s1.then(s0, 1).indices(), vec![2, 0]);
    }

    #[test]
    fn fits_checks_range() {
        let w = DegeneracyWord::from_indices(&[2, 0]).unwrap();
        assert!(!w.fits(0));
        assert!(w.fits(1));
    }
}
