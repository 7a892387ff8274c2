//! The one-query Fourier-sampling algorithm for `EQUALITY_{n+1}` and the
//! `AND_n` reduction.
//!
//! The algorithm prepares the uniform superposition over `|1>, ..., |n+1>`,
//! queries once (phase `(-1)^{x_i}` on `|i>`), applies the Fourier transform
//! `F|i> = (n+1)^{-1/2} sum_j w^{(i-1)(j-1)} |j>` with `w = e^{2 pi i/(n+1)}`,
//! and measures. Outcome `|1>` carries the zero-frequency component, so it is
//! observed with probability `(sign_sum / (n+1))^2`, where
//! `sign_sum = sum_i (-1)^{x_i}`. On `|1>` the algorithm outputs 1 with
//! probability `1/2 + n/(n^2+1)`; on any other outcome it outputs 0.
//!
//! Only the `(n+1)`-dimensional query register is simulated. The general
//! model also carries a work register and an output register, but this
//! algorithm never touches the work register and the final biased coin is
//! classical post-processing, folded exactly into [`OutcomeDistribution`].

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rational::{frac, Rational};
use crate::{Budget, Error, Result};

/// A Boolean input `x in {0,1}^len`, `len >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitInput {
    bits: Vec<bool>,
}

impl BitInput {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::OutOfRange {
                name: "length",
                value: 0,
                constraint: "length >= 1",
            });
        }
        Ok(Self { bits })
    }

    /// Parses a string of `0`/`1` characters.
    pub fn parse(text: &str) -> Result<Self> {
        let bits = text
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidArgument(format!("bad bit {other:?} in {text:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(bits)
    }

    /// Bit `i` of `mask` becomes `x_{i+1}`.
    pub fn from_mask(len: usize, mask: u64) -> Result<Self> {
        if len > 64 {
            return Err(Error::OutOfRange {
                name: "length",
                value: len as i128,
                constraint: "length <= 64",
            });
        }
        Self::new((0..len).map(|i| mask >> i & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// `sum_i (-1)^{x_i}`.
    pub fn sign_sum(&self) -> i64 {
        self.bits.iter().map(|&b| if b { -1 } else { 1 }).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.bits.iter().all(|&b| b == self.bits[0])
    }

    pub fn with_appended(&self, bit: bool) -> Self {
        let mut bits = self.bits.clone();
        bits.push(bit);
        Self { bits }
    }

    pub fn to_bit_string(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

/// Exact output distribution of a one-query algorithm on a fixed input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutcomeDistribution {
    pub p_output1: Rational,
    pub p_output0: Rational,
}

impl OutcomeDistribution {
    fn from_p1(p_output1: Rational) -> Self {
        let p_output0 = Rational::one() - &p_output1;
        Self { p_output1, p_output0 }
    }
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::OutOfRange {
            name: "n",
            value: 0,
            constraint: "n >= 1",
        });
    }
    Ok(())
}

/// `1/2 - n/(n^2+1)`: the optimal one-query error of `AND_n` and of
/// `EQUALITY_{n+1}`.
pub fn theoretical_err(n: u64) -> Result<Rational> {
    check_n(n)?;
    let n = Rational::from_integer(n.into());
    Ok(frac(1, 2) - &n / (&n * &n + Rational::one()))
}

/// Classical one-query errors `(errc(EQUALITY_n), errc(AND_n))
/// = (1/2, 1/2 - 1/(4n-2))`.
pub fn classical_reference(n: u64) -> Result<(Rational, Rational)> {
    check_n(n)?;
    let and = frac(1, 2) - Rational::new(1.into(), (4 * n as i128 - 2).into());
    Ok((frac(1, 2), and))
}

/// Probability of outputting 1 after observing `|1>`: `1/2 + n/(n^2+1)`.
pub fn coin_bias(n: u64) -> Rational {
    let n = Rational::from_integer(n.into());
    frac(1, 2) + &n / (&n * &n + Rational::one())
}

fn check_eq_len(x: &BitInput) -> Result<u64> {
    if x.len() < 2 {
        return Err(Error::OutOfRange {
            name: "length",
            value: x.len() as i128,
            constraint: "EQUALITY inputs need length >= 2",
        });
    }
    Ok(x.len() as u64 - 1)
}

/// Probability that the algorithm for `EQUALITY_{n+1}` outputs 1 on `x`
/// (`x.len() = n + 1`): `(sign_sum/(n+1))^2 (1/2 + n/(n^2+1))`.
pub fn eq_accept_probability(x: &BitInput) -> Result<Rational> {
    let n = check_eq_len(x)?;
    let amp = Rational::new(x.sign_sum().into(), (n as i64 + 1).into());
    Ok(&amp * &amp * coin_bias(n))
}

pub fn eq_distribution(x: &BitInput) -> Result<OutcomeDistribution> {
    eq_accept_probability(x).map(OutcomeDistribution::from_p1)
}

pub fn equality(x: &BitInput) -> bool {
    x.is_constant()
}

pub fn and(x: &BitInput) -> bool {
    x.bits().iter().all(|&b| b)
}

fn error_from_accept(accept: Rational, correct_is_one: bool) -> Rational {
    if correct_is_one {
        Rational::one() - accept
    } else {
        accept
    }
}

/// Probability that the algorithm outputs `1 - EQUALITY(x)`.
pub fn eq_error_probability(x: &BitInput) -> Result<Rational> {
    Ok(error_from_accept(eq_accept_probability(x)?, equality(x)))
}

/// Worst case over a sweep, together with every input attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorstCase {
    pub error: Rational,
    pub maximizers: Vec<BitInput>,
}

fn sweep(len: usize, budget: &Budget, error: impl Fn(&BitInput) -> Result<Rational>) -> Result<WorstCase> {
    Budget::check("exhaustive input length", len, budget.exhaustive_len)?;
    let mut worst = WorstCase {
        error: -Rational::one(),
        maximizers: Vec::new(),
    };
    for mask in 0..1u64 << len {
        let x = BitInput::from_mask(len, mask)?;
        let e = error(&x)?;
        match e.cmp(&worst.error) {
            core::cmp::Ordering::Greater => {
                worst.error = e;
                worst.maximizers.clear();
                worst.maximizers.push(x);
            }
            core::cmp::Ordering::Equal => worst.maximizers.push(x),
            core::cmp::Ordering::Less => {}
        }
    }
    Ok(worst)
}

/// Exhaustive worst case of the `EQUALITY_len` algorithm over all `2^len`
/// inputs.
pub fn worst_case_eq(len: usize) -> Result<WorstCase> {
    worst_case_eq_with_budget(len, &Budget::default())
}

pub fn worst_case_eq_with_budget(len: usize, budget: &Budget) -> Result<WorstCase> {
    if len < 2 {
        return Err(Error::OutOfRange {
            name: "length",
            value: len as i128,
            constraint: "length >= 2",
        });
    }
    sweep(len, budget, eq_error_probability)
}

pub fn worst_case_error_eq(len: usize) -> Result<Rational> {
    worst_case_eq(len).map(|w| w.error)
}

/// `AND_n(x) = EQUALITY_{n+1}(x, 1)`: run the equality algorithm on `x` with
/// a constant 1 bit appended.
pub fn and_accept_probability(x: &BitInput) -> Result<Rational> {
    eq_accept_probability(&x.with_appended(true))
}

pub fn and_error_probability(x: &BitInput) -> Result<Rational> {
    Ok(error_from_accept(and_accept_probability(x)?, and(x)))
}

/// Exhaustive worst case of the reduced `AND_n` algorithm over `{0,1}^n`.
pub fn worst_case_and(n: usize) -> Result<WorstCase> {
    worst_case_and_with_budget(n, &Budget::default())
}

pub fn worst_case_and_with_budget(n: usize, budget: &Budget) -> Result<WorstCase> {
    check_n(n as u64)?;
    sweep(n, budget, and_error_probability)
}

/// Pure state of the `n+1`-dimensional query register, `|1>` at index 0.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(Complex64::norm_sqr).sum()
    }

    /// Born probability of basis state `|index + 1>`.
    pub fn probability(&self, index: usize) -> f64 {
        self.amplitudes[index].norm_sqr()
    }
}

/// Floating-point run of the algorithm up to (not including) measurement.
pub fn simulate_state(x: &BitInput) -> Result<StateVector> {
    check_eq_len(x)?;
    let dim = x.len();
    let norm = 1.0 / libm::sqrt(dim as f64);
    let queried: Vec<Complex64> = x
        .bits()
        .iter()
        .map(|&b| Complex64::new(if b { -norm } else { norm }, 0.0))
        .collect();
    // F|i> = dim^{-1/2} sum_j w^{ij} |j>  (0-based), so
    // out_j = dim^{-1/2} sum_i w^{ij} in_i. Reduce ij mod dim for accuracy.
    let amplitudes = (0..dim)
        .map(|j| {
            let acc: Complex64 = queried
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    let angle = 2.0 * PI * ((i * j) % dim) as f64 / dim as f64;
                    a * Complex64::new(libm::cos(angle), libm::sin(angle))
                })
                .sum();
            acc * norm
        })
        .collect();
    let state = StateVector { amplitudes };
    let total = state.norm_sqr();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::Invariant(format!("state norm drifted to {total}")));
    }
    Ok(state)
}

/// Exact probability of measuring `|1>`: `(sign_sum/(n+1))^2`.
pub fn exact_first_outcome_probability(x: &BitInput) -> Result<Rational> {
    let n = check_eq_len(x)?;
    let amp = Rational::new(x.sign_sum().into(), (n as i64 + 1).into());
    Ok(&amp * &amp)
}

/// Seeded Monte-Carlo draw of `shots` outputs from a Bernoulli with exact
/// probability `p_output1`. Returns `(count_output1, count_output0)`.
pub fn sample_distribution(dist: &OutcomeDistribution, shots: u64, seed: u64) -> Result<(u64, u64)> {
    if shots == 0 {
        return Err(Error::OutOfRange {
            name: "shots",
            value: 0,
            constraint: "shots >= 1",
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = &dist.p_output1;
    let ones = match (p.numer().to_u64(), p.denom().to_u64()) {
        // exact: uniform integer in [0, den) below num
        (Some(num), Some(den)) => (0..shots).filter(|_| rng.gen_range(0..den) < num).count(),
        _ => {
            let pf = crate::rational::to_f64(p);
            (0..shots).filter(|_| rng.gen::<f64>() < pf).count()
        }
    } as u64;
    Ok((ones, shots - ones))
}

/// [`sample_distribution`] on the `EQUALITY` algorithm's output for `x`.
pub fn sample(x: &BitInput, shots: u64, seed: u64) -> Result<(u64, u64)> {
    sample_distribution(&eq_distribution(x)?, shots, seed)
}
