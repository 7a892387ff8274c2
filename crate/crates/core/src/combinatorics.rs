//! Small exact combinatorial helpers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Falling factorial `x (x-1) ... (x-k+1)` over the integers.
pub fn falling(x: i64, k: u64) -> BigInt {
    (0..k as i64).fold(BigInt::one(), |acc, i| acc * (x - i))
}

/// Value of the elementary symmetric polynomial `S_m` at any `±1` vector of
/// length `n` with `s` entries equal to `-1`:
/// `sum_k (-1)^k C(s, k) C(n-s, m-k)`.
pub fn elementary_symmetric_value(n: u64, m: u64, s: u64) -> BigInt {
    debug_assert!(s <= n);
    (0..=m.min(s)).fold(BigInt::zero(), |acc, k| {
        let term = binomial(s, k) * binomial(n - s, m - k);
        if k % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    })
}
