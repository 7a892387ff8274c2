//! Multilinear polynomials over the `±1` hypercube.
//!
//! A polynomial in `n` variables is a map from monomials (index subsets of
//! `[n]`) to rational coefficients. Since `x̂_i^2 = 1` on the hypercube, the
//! product of two monomials is the symmetric difference of their index sets.
//! Monomials are stored as bitmasks, and numeric bitmask order is colex order
//! on subsets, which fixes the iteration (and serialization) order.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::combinatorics::binomial;
use crate::rational::{int, Rational};
use crate::sign::SignVector;
use crate::univariate::UnivariatePoly;
use crate::{Error, Result};

/// Largest supported number of variables.
pub const MAX_VARS: usize = 64;

/// A monomial `x̂_S`, stored as the bitmask of `S` (bit `i` is variable `i+1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    /// From 1-based variable indices. Duplicates are rejected.
    pub fn from_vars(vars: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &v in vars {
            if v == 0 || v > MAX_VARS {
                return Err(Error::OutOfRange {
                    name: "variable index",
                    value: v as i128,
                    constraint: "1 <= index <= 64",
                });
            }
            let bit = 1u64 << (v - 1);
            if mask & bit != 0 {
                return Err(Error::OverlappingIndices(v));
            }
            mask |= bit;
        }
        Ok(Monomial(mask))
    }

    /// Sorted 1-based variable indices.
    pub fn vars(self) -> Vec<usize> {
        (0..MAX_VARS).filter(|&i| self.0 >> i & 1 == 1).map(|i| i + 1).collect()
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Highest variable index used, 0 for the constant monomial.
    pub fn max_var(self) -> usize {
        MAX_VARS - self.0.leading_zeros() as usize
    }

    /// `x̂_S · x̂_T = x̂_{S Δ T}`.
    pub fn times(self, other: Monomial) -> Monomial {
        Monomial(self.0 ^ other.0)
    }

    /// `±1` value at `v`: the parity of `-1` entries inside `S`.
    pub fn eval_mask(self, minus_mask: u64) -> i8 {
        if (self.0 & minus_mask).count_ones().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Image under the variable map `i -> perm[i]` (0-based).
    pub fn mapped(self, perm: &[usize]) -> Monomial {
        let mut out = 0u64;
        let mut rest = self.0;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            out |= 1 << perm[i];
            rest &= rest - 1;
        }
        Monomial(out)
    }
}

/// A multilinear polynomial `sum_S a_S x̂_S` in `n` variables. Zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultilinearPoly {
    n: usize,
    coeffs: BTreeMap<Monomial, Rational>,
}

impl MultilinearPoly {
    pub fn zero(n: usize) -> Result<Self> {
        check_vars(n)?;
        Ok(Self {
            n,
            coeffs: BTreeMap::new(),
        })
    }

    pub fn constant(n: usize, c: Rational) -> Result<Self> {
        Self::from_terms(n, [(Monomial::ONE, c)])
    }

    /// The single variable `x̂_i` (1-based).
    pub fn var(n: usize, i: usize) -> Result<Self> {
        Self::from_terms(n, [(Monomial::from_vars(&[i])?, Rational::one())])
    }

    /// Builds from `(monomial, coefficient)` pairs, summing repeats.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Result<Self> {
        let mut p = Self::zero(n)?;
        for (m, c) in terms {
            if m.max_var() > n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: m.max_var(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(m).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms in colex order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Rational)> {
        self.coeffs.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, m: Monomial) -> Rational {
        self.coeffs.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().map(|m| m.degree()).max()
    }

    pub fn eval(&self, v: &SignVector) -> Result<Rational> {
        self.same_n(v.n())?;
        Ok(self.eval_mask(v.mask()))
    }

    /// Evaluation at the sign vector whose `-1` positions are `minus_mask`.
    pub fn eval_mask(&self, minus_mask: u64) -> Rational {
        self.coeffs.iter().fold(Rational::zero(), |acc, (m, c)| {
            if m.eval_mask(minus_mask) == 1 {
                acc + c
            } else {
                acc - c
            }
        })
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same_n(other.n)?;
        let mut out = Self::zero(self.n)?;
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                out.add_term(a.times(*b), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self {
            n: self.n,
            coeffs: BTreeMap::new(),
        };
        for (m, a) in &self.coeffs {
            out.add_term(*m, a * c);
        }
        out
    }

    /// `p∘π`: variable `i` is replaced by variable `perm[i]` (0-based).
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: perm.len(),
            });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || core::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidArgument(format!("not a permutation: {perm:?}")));
            }
        }
        Self::from_terms(self.n, self.coeffs.iter().map(|(m, c)| (m.mapped(perm), c.clone())))
    }

    /// Sum of coefficients grouped by monomial degree: `out[k] = sum_{|S|=k} a_S`.
    fn coefficient_mass_by_degree(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.n + 1];
        for (m, c) in &self.coeffs {
            out[m.degree()] += c;
        }
        out
    }

    /// Mean of `p` over all `C(n, s)` sign vectors of weight `s`.
    ///
    /// Every monomial of degree `k` has the same mean
    /// `K_k(s) / C(n, k)`, where `K_k(s)` is the value of `S_k` at any
    /// weight-`s` vector, so the mean only depends on the per-degree mass.
    pub fn weight_class_mean(&self, s: usize) -> Rational {
        assert!(s <= self.n, "weight {s} exceeds n = {}", self.n);
        let mass = self.coefficient_mass_by_degree();
        weight_class_mean_from_mass(self.n, &mass, s)
    }

    /// Symmetrization: the unique `q` with `deg q <= deg p` such that
    /// `q(|v|)` is the average of `p` over all variable permutations of `v`.
    ///
    /// Computed from weight-class means at `s = 0..=deg p` followed by exact
    /// interpolation; the remaining weights `deg p + 1 ..= n` are checked
    /// against the interpolant.
    pub fn symmetrize(&self) -> Result<UnivariatePoly> {
        let Some(deg) = self.degree() else {
            return Ok(UnivariatePoly::zero());
        };
        let mass = self.coefficient_mass_by_degree();
        let values: Vec<Rational> = (0..=deg)
            .map(|s| weight_class_mean_from_mass(self.n, &mass, s))
            .collect();
        let q = UnivariatePoly::interpolate_integer_points(&values);
        for s in deg + 1..=self.n {
            let mean = weight_class_mean_from_mass(self.n, &mass, s);
            if q.eval_int(s as i64) != mean {
                return Err(Error::Invariant(format!(
                    "symmetrization interpolant disagrees with weight-class mean at s = {s}"
                )));
            }
        }
        Ok(q)
    }

    fn same_n(&self, found: usize) -> Result<()> {
        if self.n == found {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.n,
                found,
            })
        }
    }
}

fn weight_class_mean_from_mass(n: usize, mass: &[Rational], s: usize) -> Rational {
    mass.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(Rational::zero(), |acc, (k, c)| {
            let esym = crate::combinatorics::elementary_symmetric_value(n as u64, k as u64, s as u64);
            acc + c * Rational::new(esym, binomial(n as u64, k as u64))
        })
}

fn check_vars(n: usize) -> Result<()> {
    if n > MAX_VARS {
        return Err(Error::OutOfRange {
            name: "n",
            value: n as i128,
            constraint: "n <= 64",
        });
    }
    Ok(())
}

/// `S_m(x̂_1, ..., x̂_n)`: coefficient 1 on every `m`-subset; `S_0 = 1`.
pub fn elementary_symmetric(n: usize, m: usize) -> Result<MultilinearPoly> {
    elementary_symmetric_over(n, m, full_mask(n))
}

/// `S_m` restricted to the variables in `support` (a bitmask).
fn elementary_symmetric_over(n: usize, m: usize, support: u64) -> Result<MultilinearPoly> {
    check_vars(n)?;
    let width = support.count_ones() as usize;
    if m > width {
        return Err(Error::OutOfRange {
            name: "m",
            value: m as i128,
            constraint: "0 <= m <= number of variables",
        });
    }
    let vars: Vec<usize> = (0..MAX_VARS).filter(|&i| support >> i & 1 == 1).collect();
    let mut out = MultilinearPoly::zero(n)?;
    for_each_subset(&vars, m, &mut |mask| out.add_term(Monomial(mask), Rational::one()));
    Ok(out)
}

fn for_each_subset(vars: &[usize], size: usize, f: &mut impl FnMut(u64)) {
    fn go(vars: &[usize], size: usize, acc: u64, f: &mut impl FnMut(u64)) {
        if size == 0 {
            f(acc);
            return;
        }
        if vars.len() < size {
            return;
        }
        go(&vars[1..], size - 1, acc | 1 << vars[0], f);
        go(&vars[1..], size, acc, f);
    }
    go(vars, size, 0, f)
}

fn full_mask(n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        u64::MAX >> (64 - n)
    }
}

/// The irreducible-subspace generator
/// `(x̂_{i_1} - x̂_{j_1}) ... (x̂_{i_b} - x̂_{j_b}) · sum_m alpha[m] S_m(x̂')`,
/// where `x̂'` are the `n - 2b` variables not used by the pairs. Pairs are
/// 1-based.
pub fn basis_poly(n: usize, pairs: &[(usize, usize)], alpha: &[Rational]) -> Result<MultilinearPoly> {
    check_vars(n)?;
    let b = pairs.len();
    if 2 * b > n {
        return Err(Error::OutOfRange {
            name: "b",
            value: b as i128,
            constraint: "2b <= n",
        });
    }
    let mut used = 0u64;
    for &(i, j) in pairs {
        for v in [i, j] {
            if v == 0 || v > n {
                return Err(Error::OutOfRange {
                    name: "pair index",
                    value: v as i128,
                    constraint: "1 <= index <= n",
                });
            }
            let bit = 1u64 << (v - 1);
            if used & bit != 0 {
                return Err(Error::OverlappingIndices(v));
            }
            used |= bit;
        }
    }
    if alpha.len() != n - 2 * b + 1 {
        return Err(Error::InvalidArgument(format!(
            "alpha has length {}, expected n - 2b + 1 = {}",
            alpha.len(),
            n - 2 * b + 1
        )));
    }

    let rest = full_mask(n) & !used;
    let mut tail = MultilinearPoly::zero(n)?;
    for (m, a) in alpha.iter().enumerate() {
        if !a.is_zero() {
            tail = &tail + &elementary_symmetric_over(n, m, rest)?.scale(a);
        }
    }
    pairs.iter().try_fold(tail, |acc, &(i, j)| {
        let diff = &MultilinearPoly::var(n, i)? - &MultilinearPoly::var(n, j)?;
        acc.multiply(&diff)
    })
}

/// `prod_{0 <= i < j} (s - i)(n - s - i)`, the weight of the `j`-th term of a
/// Blekherman decomposition.
pub fn falling_factorial_weight(n: usize, j: usize) -> Result<UnivariatePoly> {
    if 2 * j > n {
        return Err(Error::OutOfRange {
            name: "j",
            value: j as i128,
            constraint: "2j <= n",
        });
    }
    let s = UnivariatePoly::var();
    Ok((0..j).fold(UnivariatePoly::constant(Rational::one()), |acc, i| {
        let left = &s - &UnivariatePoly::constant(int(i as i64));
        let right = &UnivariatePoly::constant(int(n as i64 - i as i64)) - &s;
        &(&acc * &left) * &right
    }))
}

impl Add for &MultilinearPoly {
    type Output = MultilinearPoly;
    /// Panics on mismatched `n`.
    fn add(self, rhs: Self) -> MultilinearPoly {
        assert_eq!(self.n, rhs.n, "adding polynomials over different n");
        let mut out = self.clone();
        for (m, c) in &rhs.coeffs {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &MultilinearPoly {
    type Output = MultilinearPoly;
    fn sub(self, rhs: Self) -> MultilinearPoly {
        self + &-rhs
    }
}

impl Neg for &MultilinearPoly {
    type Output = MultilinearPoly;
    fn neg(self) -> MultilinearPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &MultilinearPoly {
    type Output = MultilinearPoly;
    /// Panics on mismatched `n`; see [`MultilinearPoly::multiply`].
    fn mul(self, rhs: Self) -> MultilinearPoly {
        self.multiply(rhs).expect("multiplying polynomials over different n")
    }
}

impl fmt::Display for MultilinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.coeffs.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({})", crate::rational::to_fraction_string(c))?;
            for v in m.vars() {
                write!(f, "*x{v}")?;
            }
        }
        Ok(())
    }
}
