//! `±1` encodings of Boolean inputs.
//!
//! A bit `x_i` maps to `(-1)^{x_i}`, so the weight of a sign vector (number of
//! `-1` entries) is the Hamming weight of the bit string.

use alloc::vec::Vec;

use crate::{Error, Result};

/// A vector in `{-1, +1}^n`, `n >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignVector {
    entries: Vec<i8>,
}

impl SignVector {
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::OutOfRange {
                name: "n",
                value: 0,
                constraint: "n >= 1",
            });
        }
        if let Some(bad) = entries.iter().find(|&&e| e != 1 && e != -1) {
            return Err(Error::InvalidArgument(alloc::format!(
                "sign entries must be -1 or +1, got {bad}"
            )));
        }
        Ok(Self { entries })
    }

    /// `x_i = 0 -> +1`, `x_i = 1 -> -1`.
    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        Self::new(bits.iter().map(|&b| if b { -1 } else { 1 }).collect())
    }

    /// Entry `i` is `-1` iff bit `i` of `mask` is set.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        if n > 64 {
            return Err(Error::OutOfRange {
                name: "n",
                value: n as i128,
                constraint: "n <= 64",
            });
        }
        Self::new((0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect())
    }

    /// The weight-`s` vector whose first `s` entries are `-1`.
    pub fn with_weight(n: usize, s: usize) -> Result<Self> {
        if s > n {
            return Err(Error::OutOfRange {
                name: "s",
                value: s as i128,
                constraint: "s <= n",
            });
        }
        Self::new((0..n).map(|i| if i < s { -1 } else { 1 }).collect())
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    /// Number of `-1` entries.
    pub fn weight(&self) -> usize {
        self.entries.iter().filter(|&&e| e == -1).count()
    }

    /// Bitmask of the `-1` positions (`n <= 64`).
    pub fn mask(&self) -> u64 {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &e)| e == -1)
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    /// `(v∘π)_i = v_{π(i)}`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self {
            entries: perm.iter().map(|&p| self.entries[p]).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_counts_minus_ones() {
        let v = SignVector::from_bits(&[true, false, true]).unwrap();
        assert_eq!(v.entries(), &[-1, 1, -1]);
        assert_eq!(v.weight(), 2);
        assert_eq!(v.mask(), 0b101);
        assert_eq!(SignVector::from_mask(3, 0b101).unwrap(), v);
    }

    #[test]
    fn rejects_bad_entries() {
        assert!(SignVector::new(alloc::vec![]).is_err());
        assert!(SignVector::new(alloc::vec![1, 0]).is_err());
        assert!(SignVector::with_weight(2, 3).is_err());
    }
}
