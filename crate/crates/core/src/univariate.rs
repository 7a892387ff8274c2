//! Exact univariate polynomials in the weight variable `s`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::{int, to_fraction_string, Rational};

/// `coeffs[k]` is the coefficient of `s^k`; trailing zeros are trimmed, so the
/// zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UnivariatePoly {
    coeffs: Vec<Rational>,
}

impl UnivariatePoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `s`.
    pub fn var() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `s - root`.
    pub fn linear_factor(root: Rational) -> Self {
        Self::new(vec![-root, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `s^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, s: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * s + c)
    }

    pub fn eval_int(&self, s: i64) -> Rational {
        self.eval(&int(s))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Polynomial through `(i, values[i])` for `i = 0..values.len()`, via
    /// Newton forward differences.
    pub fn interpolate_integer_points(values: &[Rational]) -> Self {
        // divided differences at nodes 0, 1, 2, ...
        let mut diffs: Vec<Rational> = values.to_vec();
        let m = diffs.len();
        for level in 1..m {
            for i in (level..m).rev() {
                diffs[i] = (&diffs[i] - &diffs[i - 1]) / int(level as i64);
            }
        }
        // Horner over the Newton basis (s)(s-1)...(s-k+1)
        let mut acc = Self::zero();
        for k in (0..m).rev() {
            acc = &(&acc * &Self::linear_factor(int(k as i64))) + &Self::constant(diffs[k].clone());
        }
        acc
    }
}

impl Add for &UnivariatePoly {
    type Output = UnivariatePoly;
    fn add(self, rhs: Self) -> UnivariatePoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        UnivariatePoly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UnivariatePoly {
    type Output = UnivariatePoly;
    fn sub(self, rhs: Self) -> UnivariatePoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        UnivariatePoly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UnivariatePoly {
    type Output = UnivariatePoly;
    fn mul(self, rhs: Self) -> UnivariatePoly {
        if self.is_zero() || rhs.is_zero() {
            return UnivariatePoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UnivariatePoly::new(out)
    }
}

impl Neg for &UnivariatePoly {
    type Output = UnivariatePoly;
    fn neg(self) -> UnivariatePoly {
        UnivariatePoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for UnivariatePoly {
    /// Highest power first, e.g. `s^2 - 2*s + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            let unit = mag.is_one();
            if !unit || k == 0 {
                out.push_str(&to_fraction_string(&mag));
            }
            if k > 0 {
                if !unit {
                    out.push('*');
                }
                out.push('s');
                if k > 1 {
                    out.push('^');
                    out.push_str(&alloc::format!("{k}"));
                }
            }
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use alloc::string::ToString;

    #[test]
    fn trims_and_degrees() {
        let p = UnivariatePoly::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(UnivariatePoly::from_ints(&[0, 0]).degree(), None);
    }

    #[test]
    fn arithmetic() {
        let a = UnivariatePoly::from_ints(&[-1, 1]);
        let sq = a.square();
        assert_eq!(sq, UnivariatePoly::from_ints(&[1, -2, 1]));
        assert_eq!(&sq - &sq, UnivariatePoly::zero());
        assert_eq!(sq.eval_int(3), int(4));
        assert_eq!(sq.eval(&frac(1, 2)), frac(1, 4));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = UnivariatePoly::new(alloc::vec![frac(1, 3), int(-2), frac(5, 7), int(1)]);
        let values: Vec<_> = (0..4).map(|s| p.eval_int(s)).collect();
        assert_eq!(UnivariatePoly::interpolate_integer_points(&values), p);
        assert_eq!(UnivariatePoly::interpolate_integer_points(&[]), UnivariatePoly::zero());
    }

    #[test]
    fn display() {
        assert_eq!(UnivariatePoly::from_ints(&[1, -2, 1]).to_string(), "s^2 - 2*s + 1");
        assert_eq!(UnivariatePoly::new(alloc::vec![int(0), frac(-1, 2)]).to_string(), "-1/2*s");
        assert_eq!(UnivariatePoly::zero().to_string(), "0");
    }
}
