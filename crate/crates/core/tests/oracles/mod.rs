//! Brute-force reference implementations used by the integration tests.
//! Deliberately naive: they share no code paths with the library's fast
//! routines beyond polynomial evaluation.
#![allow(dead_code)]

use num_traits::Zero;
use rand::Rng;
use sqerr_core::multilinear::{Monomial, MultilinearPoly};
use sqerr_core::rational::Rational;
use sqerr_core::SignVector;

/// Lexicographic successor; `false` once `perm` is the last permutation.
pub fn next_permutation(perm: &mut [usize]) -> bool {
    let Some(i) = perm.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = perm.iter().rposition(|&x| x > perm[i]).unwrap();
    perm.swap(i, j);
    perm[i + 1..].reverse();
    true
}

/// `(1/n!) sum_pi p(pi . v)`, enumerating every permutation.
pub fn permutation_average(p: &MultilinearPoly, v: &SignVector) -> Rational {
    let n = v.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Rational::zero();
    let mut count = 0u64;
    loop {
        total += p.eval(&v.permuted(&perm)).unwrap();
        count += 1;
        if !next_permutation(&mut perm) {
            break;
        }
    }
    total / Rational::from_integer(count.into())
}

/// Mean of `p` over every sign vector of weight `s`, by enumerating all `2^n`
/// vectors.
pub fn weight_class_average(p: &MultilinearPoly, s: usize) -> Rational {
    let n = p.n();
    let mut total = Rational::zero();
    let mut count = 0u64;
    for mask in 0..1u64 << n {
        if mask.count_ones() as usize == s {
            total += p.eval(&SignVector::from_mask(n, mask).unwrap()).unwrap();
            count += 1;
        }
    }
    total / Rational::from_integer(count.into())
}

/// Random multilinear polynomial with up to `terms` monomials of degree at
/// most `max_degree` and small rational coefficients.
pub fn random_poly(rng: &mut impl Rng, n: usize, max_degree: usize, terms: usize) -> MultilinearPoly {
    let mut out = Vec::new();
    for _ in 0..terms {
        let deg = rng.gen_range(0..=max_degree.min(n));
        let mut vars: Vec<usize> = (1..=n).collect();
        for i in 0..deg {
            let j = rng.gen_range(i..n);
            vars.swap(i, j);
        }
        let m = Monomial::from_vars(&vars[..deg]).unwrap();
        let num: i64 = rng.gen_range(-9..=9);
        let den: i64 = rng.gen_range(1..=5);
        out.push((m, Rational::new(num.into(), den.into())));
    }
    MultilinearPoly::from_terms(n, out).unwrap()
}

/// Random affine polynomial `a_0 + sum_i a_i x_i` with at least one nonzero
/// coefficient.
pub fn random_affine(rng: &mut impl Rng, n: usize) -> MultilinearPoly {
    loop {
        let terms = (0..=n).map(|i| {
            let m = if i == 0 {
                Monomial::ONE
            } else {
                Monomial::from_vars(&[i]).unwrap()
            };
            let num: i64 = rng.gen_range(-6..=6);
            let den: i64 = rng.gen_range(1..=4);
            (m, Rational::new(num.into(), den.into()))
        });
        let p = MultilinearPoly::from_terms(n, terms).unwrap();
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    perm
}
