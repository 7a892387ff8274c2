//! Size limits for the exponential routines.
//!
//! Every enumeration or search that grows exponentially is checked against a
//! [`Budget`] before it starts. The `Default` budget holds the documented
//! limits; [`Budget::unlimited`] lifts them up to what the bitmask
//! representations can index.

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Longest input for exhaustive `2^len` sweeps of the query algorithm.
    pub exhaustive_len: usize,
    /// Largest `n` for the ordered-pair enumeration oracle.
    pub enumeration_n: usize,
    /// Largest `n` for the outer-product projector check.
    pub projector_n: usize,
    /// Largest `n` for the witness grid.
    pub grid_n: usize,
    /// Largest number of steps per grid axis.
    pub grid_resolution: u32,
    /// Largest `n` for the numeric algorithm search (`2^{n+1}` inputs per
    /// objective evaluation).
    pub search_n: usize,
}

impl Budget {
    pub const DEFAULT: Budget = Budget {
        exhaustive_len: 24,
        enumeration_n: 10,
        projector_n: 8,
        grid_n: 8,
        grid_resolution: 500,
        search_n: 8,
    };

    pub fn unlimited() -> Self {
        Budget {
            exhaustive_len: 62,
            enumeration_n: 20,
            projector_n: 12,
            grid_n: usize::MAX,
            grid_resolution: 1 << 20,
            search_n: 30,
        }
    }

    pub(crate) fn check(what: &'static str, requested: usize, limit: usize) -> Result<()> {
        if requested > limit {
            Err(Error::BudgetExceeded {
                what,
                requested: requested as u64,
                limit: limit as u64,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::DEFAULT
    }
}
