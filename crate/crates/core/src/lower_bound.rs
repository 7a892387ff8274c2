//! The polynomial-method lower bound for `AND_n`.
//!
//! The acceptance probability of a one-query algorithm, symmetrized, is a
//! quadratic `p(s) = sum_i (a_i s + b_i)^2 + (n - s) s sum_j c_j^2`. Stored as
//! a [`Witness`]: `p = A s^2 + B s + C` with `lambda = sum_j c_j^2`, the
//! sum-of-squares part `p(s) - lambda s(n - s)` represented by its Gram data.
//!
//! Restricted to Hamming weights `0`, `n - 1` and `n`, an algorithm with error
//! `eps` forces `p(0), p(n-1) in [0, eps]` and `p(n) in [1 - eps, 1]`. The best
//! such `eps` is `1/2 - n/(n^2+1)`, attained by `p(s) = a (s - (n-1)/2)^2`
//! with `a = 2/(n^2+1)`. Weaker shapes (a line, a convex parabola with its
//! vertex left of 0) give the larger bounds in [`line_case_bound`] and
//! [`case_a_bound`].
//!
//! Two oracles back the closed form: [`grid_falsify`] scans a rational grid
//! of witnesses, and [`numeric_min_error_search`] optimizes directly over
//! one-query algorithms.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::nelder_mead::{self, NelderMeadOptions};
use crate::rational::{frac, int, Rational};
use crate::univariate::UnivariatePoly;
use crate::{Budget, Error, Result};

/// Fewest restarts [`numeric_min_error_search`] runs with.
pub const MIN_SEARCH_RESTARTS: usize = 50;

fn need_n(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::OutOfRange {
            name: "n",
            value: n as i128,
            constraint: if min == 1 { "n >= 1" } else { "n >= 2" },
        });
    }
    Ok(())
}

/// `eps*(n) = p(0)` for the optimal parabola: `(n-1)^2 / (2(n^2+1))`, which
/// equals `1/2 - n/(n^2+1)`.
pub fn theoretical_lower_bound(n: usize) -> Result<Rational> {
    need_n(n, 1)?;
    let n = n as i64;
    Ok(frac((n - 1) * (n - 1), 2 * (n * n + 1)))
}

/// Best error of a line through the origin: solving
/// `eps/(n-1) = (1-eps)/n` gives `eps = (n-1)/(2n-1)`.
pub fn line_case_bound(n: usize) -> Result<Rational> {
    need_n(n, 2)?;
    let n = n as i64;
    Ok(frac(n - 1, 2 * n - 1))
}

/// Best error of a convex parabola `a s^2 + b s` with `b >= 0`:
/// `1 - n^2/(n^2 + (n-1)^2)`.
pub fn case_a_bound(n: usize) -> Result<Rational> {
    need_n(n, 2)?;
    let n = n as i64;
    let m = n - 1;
    Ok(frac(m * m, n * n + m * m))
}

/// A candidate symmetrized acceptance polynomial `A s^2 + B s + C` together
/// with the weight `lambda` of its `s(n-s)` part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub lambda: Rational,
}

impl Witness {
    pub fn polynomial(&self) -> UnivariatePoly {
        UnivariatePoly::new(vec![self.c.clone(), self.b.clone(), self.a.clone()])
    }

    pub fn eval(&self, s: &Rational) -> Rational {
        self.polynomial().eval(s)
    }

    /// `lambda >= 0` and `p(s) - lambda s(n-s)` nonnegative on all reals:
    /// `A + lambda >= 0`, `C >= 0`, `(B - lambda n)^2 <= 4(A + lambda)C`. When
    /// `A + lambda = 0` the last condition forces `B - lambda n = 0`.
    pub fn is_structurally_nonnegative(&self, n: usize) -> bool {
        if self.lambda.is_negative() || self.c.is_negative() {
            return false;
        }
        let lead = &self.a + &self.lambda;
        if lead.is_negative() {
            return false;
        }
        let lin = &self.b - &self.lambda * int(n as i64);
        &lin * &lin <= int(4) * lead * &self.c
    }
}

/// The promise problem at error level `epsilon`: constraints at weights
/// `0`, `n - 1` and `n` only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityInstance {
    pub n: usize,
    pub epsilon: Rational,
}

impl FeasibilityInstance {
    pub fn new(n: usize, epsilon: Rational) -> Result<Self> {
        need_n(n, 2)?;
        if epsilon.is_negative() || epsilon > frac(1, 2) {
            return Err(Error::InvalidArgument(format!("epsilon = {epsilon} is outside [0, 1/2]")));
        }
        Ok(Self { n, epsilon })
    }

    /// `0 <= p(0) <= eps`, `0 <= p(n-1) <= eps`, `1 - eps <= p(n) <= 1`.
    pub fn interval_constraints_hold(&self, w: &Witness) -> bool {
        let low = |v: Rational| !v.is_negative() && v <= self.epsilon;
        let p = w.polynomial();
        let n = self.n as i64;
        let top = p.eval_int(n);
        low(p.eval_int(0)) && low(p.eval_int(n - 1)) && top >= Rational::one() - &self.epsilon && top <= Rational::one()
    }
}

/// `p(s) = (2/(n^2+1)) (s - (n-1)/2)^2`, `lambda = 0`.
pub fn optimal_witness(n: usize) -> Result<Witness> {
    need_n(n, 2)?;
    let n = n as i64;
    let d = n * n + 1;
    Ok(Witness {
        a: frac(2, d),
        b: frac(-2 * (n - 1), d),
        c: frac((n - 1) * (n - 1), 2 * d),
        lambda: Rational::zero(),
    })
}

pub fn check_feasible(w: &Witness, inst: &FeasibilityInstance) -> bool {
    w.is_structurally_nonnegative(inst.n) && inst.interval_constraints_hold(w)
}

/// Scans a rational grid of witnesses and returns the first feasible one.
///
/// The grid is laid over the three constrained values rather than over the
/// coefficients: `p(0) = i/R`, `p(n-1) = j/R`, `p(n) = k/R` with
/// `i, j, k in 0..=R`, and `lambda = 2l/R` with `l in 0..=R`, scanned in
/// lexicographic `(i, j, k, l)` order. `(A, B, C)` is the parabola through
/// the three values. Every point lies in the box `|A| <= 2`, `|B| <= 2n`,
/// `0 <= C <= 1`, `0 <= lambda <= 2`.
///
/// A coefficient grid with the same number of steps per axis misses the
/// feasible set entirely for some `n` (at `n = 5`, `eps = eps* + 1/100`,
/// `R = 400` the set is far thinner than one cell), while on the value grid
/// its size scales with the slack `eps - eps*` directly.
///
/// The scan is a sanity oracle, not a proof; the arithmetic is exact (scaled
/// integers) and a returned witness is re-checked with [`check_feasible`].
pub fn grid_falsify(n: usize, epsilon: &Rational, resolution: u32) -> Result<Option<Witness>> {
    grid_falsify_with_budget(n, epsilon, resolution, &Budget::default())
}

pub fn grid_falsify_with_budget(
    n: usize,
    epsilon: &Rational,
    resolution: u32,
    budget: &Budget,
) -> Result<Option<Witness>> {
    let inst = FeasibilityInstance::new(n, epsilon.clone())?;
    Budget::check("grid n", n, budget.grid_n)?;
    Budget::check("grid resolution", resolution as usize, budget.grid_resolution as usize)?;
    if resolution == 0 {
        return Err(Error::OutOfRange {
            name: "resolution",
            value: 0,
            constraint: "resolution >= 1",
        });
    }
    let (Some(en), Some(ed)) = (epsilon.numer().to_i128(), epsilon.denom().to_i128()) else {
        return Err(Error::InvalidArgument(format!("epsilon = {epsilon} has too many digits for the grid")));
    };
    if en.unsigned_abs() > 1 << 62 || ed > 1 << 62 {
        return Err(Error::InvalidArgument(format!("epsilon = {epsilon} has too many digits for the grid")));
    }

    let r = resolution as i128;
    let n_i = n as i128;
    let m = n_i - 1;
    // value v/R is at most eps  <=>  v ed <= en R
    let low_max = (en * r / ed).min(r);
    // value v/R is at least 1 - eps  <=>  v ed >= (ed - en) R
    let top_min = ((ed - en) * r + ed - 1) / ed;

    // with S = R m n:  A S = m(k-i) - n(j-i),  B S = n^2 (j-i) - m^2 (k-i),
    // C S = i m n,  lambda S = 2 l m n
    let scale = r * m * n_i;
    for i in 0..=low_max {
        let c = i * m * n_i;
        for j in 0..=low_max {
            for k in top_min..=r {
                let a = m * (k - i) - n_i * (j - i);
                let b = n_i * n_i * (j - i) - m * m * (k - i);
                for l in 0..=r {
                    let lam = 2 * l * m * n_i;
                    let lead = a + lam;
                    let lin = b - lam * n_i;
                    if lead >= 0 && lin * lin <= 4 * lead * c {
                        let w = Witness {
                            a: Rational::new(a.into(), scale.into()),
                            b: Rational::new(b.into(), scale.into()),
                            c: Rational::new(c.into(), scale.into()),
                            lambda: Rational::new(lam.into(), scale.into()),
                        };
                        if !check_feasible(&w, &inst) {
                            return Err(Error::Invariant(format!("grid witness {w:?} fails the exact check")));
                        }
                        return Ok(Some(w));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Best one-query algorithm found by [`numeric_search`].
#[derive(Debug, Clone)]
pub struct NumericSearchResult {
    pub best_error: f64,
    /// Normalized initial state over `|0>, |1>, ..., |n+1>`.
    pub state: Vec<f64>,
    /// Measurement vector `g`; the accepting operator is
    /// `g g^T / max(1, |g|^2)`.
    pub measurement: Vec<f64>,
    pub evaluations: usize,
}

/// Worst-case error over all `2^{n+1}` inputs of `EQUALITY_{n+1}` for the
/// algorithm `(psi, g)`, where the query maps `|0> -> |0>` and
/// `|i> -> (-1)^{x_i} |i>`.
fn worst_case_numeric(n: usize, theta: &[f64]) -> f64 {
    let d = n + 2;
    let (psi, g) = theta.split_at(d);
    let norm_sq: f64 = psi.iter().map(|v| v * v).sum();
    if !(norm_sq > 0.0 && norm_sq.is_finite()) {
        return 1.0;
    }
    let g_sq: f64 = g.iter().map(|v| v * v).sum();
    let scale = 1.0 / (norm_sq * g_sq.max(1.0));
    let len = n + 1;
    let weights: Vec<f64> = psi.iter().zip(g).map(|(p, q)| p * q).collect();
    let all_ones = (1u64 << len) - 1;
    let mut worst = 0.0f64;
    for mask in 0..1u64 << len {
        let mut amp = weights[0];
        for i in 0..len {
            let w = weights[i + 1];
            amp += if mask >> i & 1 == 1 { -w } else { w };
        }
        let accept = amp * amp * scale;
        let err = if mask == 0 || mask == all_ones { 1.0 - accept } else { accept };
        worst = worst.max(err);
    }
    worst
}

/// Numeric upper bound on `err(EQUALITY_{n+1})` by direct search over
/// one-query algorithms.
///
/// An algorithm is a real unit vector `psi` over `n + 2` basis states (the
/// query register plus the untouched `|0>`) and a rank-one accepting operator
/// `M = g g^T / max(1, |g|^2)`, so `0 <= M <= I`. This family contains the
/// Fourier-sampling algorithm (uniform `psi` on `|1>..|n+1>`, `g` a scaled
/// zero-frequency vector), so the optimum of the search is the true optimum.
/// Nelder-Mead minimizes the worst-case error from `restarts` seeded random
/// starts, each polished by a few fresh-simplex rounds.
pub fn numeric_search(n: usize, restarts: usize, seed: u64) -> Result<NumericSearchResult> {
    numeric_search_with_budget(n, restarts, seed, &Budget::default())
}

pub fn numeric_search_with_budget(n: usize, restarts: usize, seed: u64, budget: &Budget) -> Result<NumericSearchResult> {
    need_n(n, 1)?;
    Budget::check("search n", n, budget.search_n)?;
    if restarts < MIN_SEARCH_RESTARTS {
        return Err(Error::OutOfRange {
            name: "restarts",
            value: restarts as i128,
            constraint: "restarts >= 50",
        });
    }
    const ROUNDS: usize = 5;
    let d = n + 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let opts = NelderMeadOptions::default();
    let objective = |theta: &[f64]| worst_case_numeric(n, theta);

    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut evaluations = 0;
    for _ in 0..restarts {
        let mut x: Vec<f64> = (0..2 * d).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut fx = objective(&x);
        for _ in 0..ROUNDS {
            let r = nelder_mead::minimize(objective, &x, &opts);
            evaluations += r.evals;
            let improved = r.f < fx;
            x = r.x;
            fx = r.f;
            if !improved {
                break;
            }
        }
        if best.as_ref().is_none_or(|(bf, _)| fx < *bf) {
            best = Some((fx, x));
        }
    }
    let (best_error, theta) = best.expect("restarts >= 1");
    let (psi, g) = theta.split_at(d);
    let norm = libm::sqrt(psi.iter().map(|v| v * v).sum::<f64>());
    Ok(NumericSearchResult {
        best_error,
        state: psi.iter().map(|v| v / norm).collect(),
        measurement: g.to_vec(),
        evaluations,
    })
}

pub fn numeric_min_error_search(n: usize, restarts: usize, seed: u64) -> Result<f64> {
    numeric_search(n, restarts, seed).map(|r| r.best_error)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_examples() {
        assert_eq!(theoretical_lower_bound(2).unwrap(), frac(1, 10));
        assert_eq!(theoretical_lower_bound(3).unwrap(), frac(1, 5));
        assert_eq!(theoretical_lower_bound(1).unwrap(), Rational::zero());
        assert_eq!(line_case_bound(2).unwrap(), frac(1, 3));
        assert_eq!(line_case_bound(3).unwrap(), frac(2, 5));
        assert_eq!(case_a_bound(2).unwrap(), frac(1, 5));
        assert_eq!(case_a_bound(3).unwrap(), frac(4, 13));
        assert!(line_case_bound(1).is_err());
    }

    #[test]
    fn case_a_chain() {
        for n in 2..60 {
            let lhs = Rational::one() - case_a_bound(n).unwrap();
            let n_r = int(n as i64);
            assert!(lhs <= frac(1, 2) + &n_r / (&n_r * &n_r + Rational::one()));
            assert!(case_a_bound(n).unwrap() >= theoretical_lower_bound(n).unwrap());
        }
    }

    #[test]
    fn optimal_witness_examples() {
        let w = optimal_witness(2).unwrap();
        assert_eq!((w.a.clone(), w.b.clone(), w.c.clone()), (frac(2, 5), frac(-2, 5), frac(1, 10)));
        assert_eq!(w.eval(&int(0)), frac(1, 10));
        assert_eq!(w.eval(&int(1)), frac(1, 10));
        assert_eq!(w.eval(&int(2)), frac(9, 10));
        let w = optimal_witness(3).unwrap();
        assert_eq!(w.polynomial(), UnivariatePoly::linear_factor(int(1)).square().scale(&frac(1, 5)));
        assert_eq!(w.eval(&int(0)), frac(1, 5));
        assert_eq!(w.eval(&int(2)), frac(1, 5));
        assert_eq!(w.eval(&int(3)), frac(4, 5));
        assert_eq!(optimal_witness(5).unwrap().eval(&int(0)), frac(4, 13));
    }

    #[test]
    fn feasibility_examples() {
        for n in [2usize, 3, 7] {
            let eps = theoretical_lower_bound(n).unwrap();
            let w = optimal_witness(n).unwrap();
            assert!(check_feasible(&w, &FeasibilityInstance::new(n, eps.clone()).unwrap()));
            let tighter = FeasibilityInstance::new(n, eps - frac(1, 1000)).unwrap();
            assert!(!check_feasible(&w, &tighter));
        }
    }

    #[test]
    fn line_witnesses() {
        for n in 2..20usize {
            let eps = line_case_bound(n).unwrap();
            let inst = FeasibilityInstance::new(n, eps.clone()).unwrap();
            let naive = Witness {
                a: Rational::zero(),
                b: frac(1, n as i64),
                c: Rational::zero(),
                lambda: Rational::zero(),
            };
            // s/n: structural check fails (a line is not a nonnegative quadratic)
            assert!(!check_feasible(&naive, &inst));
            // and p(n-1) = (n-1)/n > eps
            assert!(!inst.interval_constraints_hold(&naive));
            let stretched = Witness {
                b: (Rational::one() - &eps) / int(n as i64),
                ..naive
            };
            assert!(inst.interval_constraints_hold(&stretched));
        }
    }

    #[test]
    fn instance_validation() {
        assert!(FeasibilityInstance::new(1, frac(1, 4)).is_err());
        assert!(FeasibilityInstance::new(3, frac(3, 4)).is_err());
        assert!(FeasibilityInstance::new(3, frac(-1, 4)).is_err());
    }

    #[test]
    fn grid_examples() {
        assert_eq!(grid_falsify(2, &(frac(1, 10) - frac(1, 100)), 200).unwrap(), None);
        let w = grid_falsify(2, &(frac(1, 10) + frac(1, 100)), 400).unwrap().unwrap();
        assert!(check_feasible(&w, &FeasibilityInstance::new(2, frac(11, 100)).unwrap()));
        let w = grid_falsify(2, &frac(1, 2), 10).unwrap().unwrap();
        assert!(check_feasible(&w, &FeasibilityInstance::new(2, frac(1, 2)).unwrap()));
    }

    #[test]
    fn grid_stays_in_box() {
        for n in 2..=6 {
            let eps = theoretical_lower_bound(n).unwrap() + frac(1, 20);
            let w = grid_falsify(n, &eps, 40).unwrap().unwrap();
            let bound = int(2 * n as i64);
            assert!(w.a.abs() <= int(2) && w.b.abs() <= bound, "{w:?}");
            assert!(!w.c.is_negative() && w.c <= int(1));
            assert!(!w.lambda.is_negative() && w.lambda <= int(2));
        }
    }

    #[test]
    fn grid_budget() {
        assert!(matches!(
            grid_falsify(9, &frac(1, 2), 10),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(matches!(
            grid_falsify(2, &frac(1, 2), Budget::DEFAULT.grid_resolution + 1),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(grid_falsify_with_budget(9, &frac(1, 2), 4, &Budget::unlimited()).is_ok());
    }

    #[test]
    fn numeric_objective_at_known_algorithm() {
        for n in 1..6usize {
            let d = n + 2;
            let mut theta = vec![0.0; 2 * d];
            let bias = crate::rational::to_f64(&crate::query::coin_bias(n as u64));
            for i in 1..d {
                theta[i] = 1.0;
                theta[d + i] = libm::sqrt(bias / (n + 1) as f64);
            }
            let eps = crate::rational::to_f64(&theoretical_lower_bound(n).unwrap());
            assert!((worst_case_numeric(n, &theta) - eps).abs() < 1e-12);
        }
    }

    #[test]
    fn numeric_search_preconditions() {
        assert!(numeric_min_error_search(2, 10, 0).is_err());
        assert!(matches!(
            numeric_min_error_search(9, 50, 0),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
