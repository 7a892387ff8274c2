//! Blekherman-form decompositions of symmetrized squares.
//!
//! If `p` is multilinear of degree `t <= n/2`, the symmetrization `q` of
//! `p^2` satisfies, at every integer `s = 0..=n`,
//!
//! ```text
//! q(s) = sum_{j=0}^{t} p_{t-j}(s) prod_{0 <= i < j} (s - i)(n - s - i)
//! ```
//!
//! with each `p_{t-j}` a sum of squares of polynomials of degree `<= t-j`.
//! A [`DecompositionCertificate`] stores the `p_{t-j}` and is checked by
//! exact evaluation at those `n + 1` points. Search is only provided for
//! `deg q <= 2`, the shape the lower bound needs.
//!
//! The module also carries exact checks of two facts behind the
//! decomposition: the outer-product sum over an irreducible generator's orbit
//! is proportional to a projector, and the probability that `b` random
//! disjoint pairs are all mixed has a falling-factorial closed form.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::falling;
use crate::multilinear::{basis_poly, falling_factorial_weight, Monomial, MultilinearPoly};
use crate::rational::{int, rational_sqrt, Rational};
use crate::univariate::UnivariatePoly;
use crate::{Budget, Error, Result};

/// A nonnegative quadratic `a s^2 + b s + c` given by its Gram data:
/// `a >= 0`, `c >= 0`, `b^2 <= 4ac`. Stands in for an explicit sum of
/// squares when the square roots are irrational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramQuadratic {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl GramQuadratic {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        let g = Self { a, b, c };
        g.validate()?;
        Ok(g)
    }

    pub fn is_valid(&self) -> bool {
        !self.a.is_negative() && !self.c.is_negative() && &self.b * &self.b <= int(4) * &self.a * &self.c
    }

    fn validate(&self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::MalformedCertificate(format!(
                "Gram data (A={}, B={}, C={}) is not a nonnegative quadratic",
                self.a, self.b, self.c
            )))
        }
    }

    pub fn polynomial(&self) -> UnivariatePoly {
        UnivariatePoly::new(vec![self.c.clone(), self.b.clone(), self.a.clone()])
    }
}

/// A univariate sum of squares, either explicit or in Gram form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SosWitness {
    Squares(Vec<UnivariatePoly>),
    Gram(GramQuadratic),
}

impl SosWitness {
    /// Explicit squares when the roots are rational, Gram form otherwise.
    pub fn from_gram(g: GramQuadratic) -> Self {
        if g.a.is_zero() {
            if let Some(r) = rational_sqrt(&g.c) {
                return SosWitness::Squares(vec![UnivariatePoly::constant(r)]);
            }
        } else if &g.b * &g.b == int(4) * &g.a * &g.c {
            if let Some(r) = rational_sqrt(&g.a) {
                let shift = &g.b / (int(2) * &r);
                return SosWitness::Squares(vec![UnivariatePoly::new(vec![shift, r])]);
            }
        }
        SosWitness::Gram(g)
    }

    pub fn polynomial(&self) -> UnivariatePoly {
        match self {
            SosWitness::Squares(sq) => sq.iter().fold(UnivariatePoly::zero(), |acc, p| &acc + &p.square()),
            SosWitness::Gram(g) => g.polynomial(),
        }
    }

    pub fn eval(&self, s: &Rational) -> Rational {
        match self {
            SosWitness::Squares(sq) => sq.iter().map(|p| {
                let v = p.eval(s);
                &v * &v
            }).sum(),
            SosWitness::Gram(g) => g.polynomial().eval(s),
        }
    }

    /// Largest degree among the squared polynomials; `None` when the witness
    /// represents zero.
    pub fn half_degree(&self) -> Option<usize> {
        match self {
            SosWitness::Squares(sq) => sq.iter().filter_map(UnivariatePoly::degree).max(),
            SosWitness::Gram(g) => {
                if !g.a.is_zero() || !g.b.is_zero() {
                    Some(1)
                } else if !g.c.is_zero() {
                    Some(0)
                } else {
                    None
                }
            }
        }
    }

    /// Multiplies every square by `gamma`, i.e. the polynomial by `gamma^2`.
    pub fn scaled(&self, gamma: &Rational) -> Self {
        match self {
            SosWitness::Squares(sq) => SosWitness::Squares(sq.iter().map(|p| p.scale(gamma)).collect()),
            SosWitness::Gram(g) => {
                let g2 = gamma * gamma;
                SosWitness::Gram(GramQuadratic {
                    a: &g.a * &g2,
                    b: &g.b * &g2,
                    c: &g.c * &g2,
                })
            }
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            SosWitness::Squares(sq) if sq.is_empty() => {
                Err(Error::MalformedCertificate("empty list of squares".into()))
            }
            SosWitness::Squares(_) => Ok(()),
            SosWitness::Gram(g) => g.validate(),
        }
    }
}

/// `q(s) = sum_j terms[j](s) * prod_{i<j} (s-i)(n-s-i)` with `j = 0..=t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionCertificate {
    n: usize,
    t: usize,
    terms: Vec<Option<SosWitness>>,
}

impl DecompositionCertificate {
    /// Checks `2t <= n`, one slot per `j = 0..=t`, and half-degree of slot `j`
    /// at most `t - j`.
    pub fn new(n: usize, t: usize, terms: Vec<Option<SosWitness>>) -> Result<Self> {
        let cert = Self { n, t, terms };
        cert.validate()?;
        Ok(cert)
    }

    /// Builds a certificate from sparse `(j, witness)` pairs.
    pub fn from_terms(n: usize, t: usize, terms: impl IntoIterator<Item = (usize, SosWitness)>) -> Result<Self> {
        let mut slots = vec![None; t + 1];
        for (j, w) in terms {
            let slot = slots.get_mut(j).ok_or_else(|| {
                Error::MalformedCertificate(format!("term index j = {j} exceeds t = {t}"))
            })?;
            if slot.is_some() {
                return Err(Error::MalformedCertificate(format!("duplicate term j = {j}")));
            }
            *slot = Some(w);
        }
        Self::new(n, t, slots)
    }

    fn validate(&self) -> Result<()> {
        if 2 * self.t > self.n {
            return Err(Error::MalformedCertificate(format!(
                "t = {} exceeds n/2 for n = {}",
                self.t, self.n
            )));
        }
        if self.terms.len() != self.t + 1 {
            return Err(Error::MalformedCertificate(format!(
                "{} term slots for t = {}",
                self.terms.len(),
                self.t
            )));
        }
        for (j, w) in self.terms.iter().enumerate() {
            let Some(w) = w else { continue };
            w.validate()?;
            if let Some(h) = w.half_degree() {
                if h > self.t - j {
                    return Err(Error::MalformedCertificate(format!(
                        "term j = {j} has half-degree {h} > t - j = {}",
                        self.t - j
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn terms(&self) -> &[Option<SosWitness>] {
        &self.terms
    }

    /// Every square multiplied by `gamma`.
    pub fn scaled(&self, gamma: &Rational) -> Self {
        Self {
            n: self.n,
            t: self.t,
            terms: self.terms.iter().map(|w| w.as_ref().map(|w| w.scaled(gamma))).collect(),
        }
    }

    /// The represented polynomial (as a polynomial identity, not only on
    /// integer points).
    pub fn polynomial(&self) -> UnivariatePoly {
        self.terms
            .iter()
            .enumerate()
            .filter_map(|(j, w)| w.as_ref().map(|w| (j, w)))
            .fold(UnivariatePoly::zero(), |acc, (j, w)| {
                let weight = falling_factorial_weight(self.n, j).expect("validated: 2j <= n");
                &acc + &(&w.polynomial() * &weight)
            })
    }
}

pub fn evaluate_certificate(cert: &DecompositionCertificate, s: &Rational) -> Rational {
    cert.terms
        .iter()
        .enumerate()
        .filter_map(|(j, w)| w.as_ref().map(|w| (j, w)))
        .map(|(j, w)| {
            let weight = falling_factorial_weight(cert.n, j).expect("validated: 2j <= n");
            w.eval(s) * weight.eval(s)
        })
        .sum()
}

/// Outcome of checking a certificate against a target polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateCheck {
    Verified,
    /// `deg q > 2t`.
    DegreeTooHigh { degree: usize, bound: usize },
    /// First integer point where the two sides differ.
    Mismatch { s: usize, expected: Rational, found: Rational },
}

impl CertificateCheck {
    pub fn is_verified(&self) -> bool {
        matches!(self, CertificateCheck::Verified)
    }
}

/// Compares `cert` with `q` at `s = 0..=n`. Since both sides have degree at
/// most `2t <= n`, agreement there is a polynomial identity.
pub fn check_certificate(cert: &DecompositionCertificate, q: &UnivariatePoly) -> Result<CertificateCheck> {
    cert.validate()?;
    if let Some(degree) = q.degree() {
        if degree > 2 * cert.t {
            return Ok(CertificateCheck::DegreeTooHigh {
                degree,
                bound: 2 * cert.t,
            });
        }
    }
    for s in 0..=cert.n {
        let at = int(s as i64);
        let expected = q.eval(&at);
        let found = evaluate_certificate(cert, &at);
        if expected != found {
            return Ok(CertificateCheck::Mismatch { s, expected, found });
        }
    }
    Ok(CertificateCheck::Verified)
}

pub fn verify_certificate(cert: &DecompositionCertificate, q: &UnivariatePoly) -> Result<bool> {
    check_certificate(cert, q).map(|c| c.is_verified())
}

/// A rational `lambda >= 0` such that `q(s) - lambda s(n-s)` is nonnegative on
/// all reals, for `q = A s^2 + B s + C`.
///
/// With `r = q - lambda s(n-s) = (A+lambda)s^2 + (B-lambda n)s + C`, the
/// conditions are `C >= 0`, `A + lambda >= 0` and
/// `D(lambda) = (B - lambda n)^2 - 4(A+lambda)C <= 0`. `D` is a convex
/// quadratic in `lambda` minimized at `(Bn + 2C)/n^2`, so the feasible set is
/// an interval. When it has positive length a rational strictly inside is
/// returned; when it is a single point that point is rational (a double root
/// or the clip `max(0, -A)`), and it is returned as is.
pub fn feasible_lambda(q: &UnivariatePoly, n: usize) -> Result<Option<Rational>> {
    check_deg2(q, n)?;
    let (a, b, c) = (q.coeff(2), q.coeff(1), q.coeff(0));
    if c.is_negative() {
        return Ok(None);
    }
    let nn = int(n as i64);
    let disc = |lambda: &Rational| {
        let lin = &b - lambda * &nn;
        &lin * &lin - int(4) * (&a + lambda) * &c
    };
    let clip = if a.is_negative() { -a.clone() } else { Rational::zero() };
    let center = (&b * &nn + int(2) * &c) / (&nn * &nn);

    if center > clip {
        let d = disc(&center);
        return Ok(if d.is_positive() { None } else { Some(center) });
    }
    let d = disc(&clip);
    if d.is_positive() {
        return Ok(None);
    }
    if d.is_zero() {
        return Ok(Some(clip));
    }
    // D(clip) < 0: the interval continues to the right of clip
    let mut step = Rational::one();
    loop {
        let candidate = &clip + &step;
        if disc(&candidate).is_negative() {
            return Ok(Some(candidate));
        }
        step /= int(2);
    }
}

fn check_deg2(q: &UnivariatePoly, n: usize) -> Result<()> {
    if q.degree().is_some_and(|d| d > 2) {
        return Err(Error::InvalidArgument(format!(
            "degree-2 decomposition search needs deg q <= 2, got {}",
            q.degree().unwrap_or(0)
        )));
    }
    if n < 2 {
        return Err(Error::OutOfRange {
            name: "n",
            value: n as i128,
            constraint: "n >= 2 so that t = 1 <= n/2",
        });
    }
    Ok(())
}

/// Searches for `q(s) = r(s) + lambda s(n-s)` with `r` a nonnegative quadratic
/// and `lambda >= 0`: a `t = 1` certificate whose `j = 0` slot holds `r` and
/// whose `j = 1` slot holds the constant `lambda`.
pub fn find_decomposition_deg2(q: &UnivariatePoly, n: usize) -> Result<Option<DecompositionCertificate>> {
    let Some(lambda) = feasible_lambda(q, n)? else {
        return Ok(None);
    };
    let nn = int(n as i64);
    let r = GramQuadratic::new(q.coeff(2) + &lambda, q.coeff(1) - &lambda * &nn, q.coeff(0))
        .map_err(|e| Error::Invariant(format!("feasible lambda produced invalid Gram data: {e}")))?;
    let mut terms = Vec::new();
    if !r.polynomial().is_zero() {
        terms.push((0, SosWitness::from_gram(r)));
    }
    if !lambda.is_zero() {
        terms.push((1, SosWitness::from_gram(GramQuadratic::new(Rational::zero(), Rational::zero(), lambda)?)));
    }
    DecompositionCertificate::from_terms(n, 1, terms).map(Some)
}

fn check_pairs_args(n: usize, s: usize, b: usize) -> Result<()> {
    if 2 * b > n {
        return Err(Error::OutOfRange {
            name: "b",
            value: b as i128,
            constraint: "2b <= n",
        });
    }
    if s > n {
        return Err(Error::OutOfRange {
            name: "s",
            value: s as i128,
            constraint: "s <= n",
        });
    }
    Ok(())
}

/// Probability that `b` uniformly random disjoint pairs of coordinates of a
/// weight-`s` sign vector are all mixed (one `-1`, one `+1`):
/// `2^b s^(b) (n-s)^(b) / n^(2b)` with falling powers. `b = 0` gives 1.
pub fn pr_all_pairs_mixed(n: usize, s: usize, b: usize) -> Result<Rational> {
    check_pairs_args(n, s, b)?;
    let (n, s, b) = (n as i64, s as i64, b as u64);
    let num = (BigInt::one() << b as usize) * falling(s, b) * falling(n - s, b);
    Ok(Rational::new(num, falling(n, 2 * b)))
}

/// Enumeration oracle for [`pr_all_pairs_mixed`]: counts ordered selections
/// of `2b` distinct indices `(i_1, j_1, ..., i_b, j_b)` against the vector
/// whose first `s` entries are `-1`.
pub fn pr_all_pairs_mixed_bruteforce(n: usize, s: usize, b: usize) -> Result<Rational> {
    pr_all_pairs_mixed_bruteforce_with_budget(n, s, b, &Budget::default())
}

pub fn pr_all_pairs_mixed_bruteforce_with_budget(n: usize, s: usize, b: usize, budget: &Budget) -> Result<Rational> {
    check_pairs_args(n, s, b)?;
    Budget::check("enumeration n", n, budget.enumeration_n)?;
    let minus: Vec<bool> = (0..n).map(|i| i < s).collect();
    let mut good = 0u64;
    let mut total = 0u64;
    let mut used = vec![false; n];
    let mut chosen = Vec::with_capacity(2 * b);
    enumerate_ordered(n, 2 * b, &mut used, &mut chosen, &mut |sel| {
        total += 1;
        if sel.chunks(2).all(|p| minus[p[0]] != minus[p[1]]) {
            good += 1;
        }
    });
    Ok(Rational::new(good.into(), total.into()))
}

fn enumerate_ordered(n: usize, len: usize, used: &mut [bool], chosen: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if chosen.len() == len {
        f(chosen);
        return;
    }
    for i in 0..n {
        if !used[i] {
            used[i] = true;
            chosen.push(i);
            enumerate_ordered(n, len, used, chosen, f);
            chosen.pop();
            used[i] = false;
        }
    }
}

/// Symmetrization of the square of a basis polynomial, with its structure
/// checked: it vanishes at integer `s < b` and `s > n - b`, and is
/// nonnegative at every integer `s` in `[0, n]`.
pub fn symmetrize_basis_square(n: usize, pairs: &[(usize, usize)], alpha: &[Rational]) -> Result<UnivariatePoly> {
    let p = basis_poly(n, pairs, alpha)?;
    let q = p.multiply(&p)?.symmetrize()?;
    let b = pairs.len();
    for s in 0..=n {
        let v = q.eval_int(s as i64);
        if (s < b || s + b > n) && !v.is_zero() {
            return Err(Error::Invariant(format!("symmetrized basis square is {v} at s = {s}, expected 0")));
        }
        if v.is_negative() {
            return Err(Error::Invariant(format!("symmetrized basis square is negative at s = {s}")));
        }
    }
    Ok(q)
}

/// Dense symmetric rational matrix indexed by monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OuterProductMatrix {
    monomials: Vec<Monomial>,
    entries: Vec<Vec<Rational>>,
}

impl OuterProductMatrix {
    /// `rho = sum v v^T` over the coefficient vectors `v` of
    /// `basis_poly(n, pairs, alpha)` for every ordered tuple of `b` disjoint
    /// ordered pairs. Rows and columns are restricted to the monomials that
    /// occur in some `v`; everything else is zero.
    pub fn orbit_sum(n: usize, b: usize, alpha: &[Rational]) -> Result<Self> {
        Self::orbit_sum_with_budget(n, b, alpha, &Budget::default())
    }

    pub fn orbit_sum_with_budget(n: usize, b: usize, alpha: &[Rational], budget: &Budget) -> Result<Self> {
        Budget::check("projector n", n, budget.projector_n)?;
        if 2 * b > n {
            return Err(Error::OutOfRange {
                name: "b",
                value: b as i128,
                constraint: "2b <= n",
            });
        }
        let mut vectors: Vec<MultilinearPoly> = Vec::new();
        let mut used = vec![false; n];
        let mut chosen = Vec::with_capacity(2 * b);
        let mut failure = None;
        enumerate_ordered(n, 2 * b, &mut used, &mut chosen, &mut |sel| {
            let pairs: Vec<(usize, usize)> = sel.chunks(2).map(|p| (p[0] + 1, p[1] + 1)).collect();
            match basis_poly(n, &pairs, alpha) {
                Ok(p) => vectors.push(p),
                Err(e) => failure = Some(e),
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }

        let index: BTreeMap<Monomial, usize> = vectors
            .iter()
            .flat_map(|p| p.terms().map(|(m, _)| m))
            .collect::<alloc::collections::BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let dim = index.len();
        let mut entries = vec![vec![Rational::zero(); dim]; dim];
        for p in &vectors {
            let support: Vec<(usize, &Rational)> = p.terms().map(|(m, c)| (index[&m], c)).collect();
            for &(i, ci) in &support {
                for &(j, cj) in &support {
                    entries[i][j] += ci * cj;
                }
            }
        }
        Ok(Self {
            monomials: index.into_keys().collect(),
            entries,
        })
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim()).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn trace(&self) -> Rational {
        (0..self.dim()).map(|i| self.entries[i][i].clone()).sum()
    }

    pub fn square(&self) -> Self {
        let d = self.dim();
        let mut out = vec![vec![Rational::zero(); d]; d];
        for (i, row) in out.iter_mut().enumerate() {
            for (k, a) in self.entries[i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, cell) in row.iter_mut().enumerate() {
                    let bkj = &self.entries[k][j];
                    if !bkj.is_zero() {
                        *cell += a * bkj;
                    }
                }
            }
        }
        Self {
            monomials: self.monomials.clone(),
            entries: out,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            monomials: self.monomials.clone(),
            entries: self.entries.iter().map(|r| r.iter().map(|x| x * c).collect()).collect(),
        }
    }
}

/// Result of the `rho^2 = c rho` test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectorCheck {
    pub c: Rational,
    pub ok: bool,
}

/// Builds `rho` (see [`OuterProductMatrix::orbit_sum`]) and tests
/// `rho^2 = c rho` for the only possible constant
/// `c = trace(rho^2) / trace(rho)`. A zero `rho` passes with `c = 0`.
pub fn projector_proportionality_check(n: usize, b: usize, alpha: &[Rational]) -> Result<ProjectorCheck> {
    projector_proportionality_check_with_budget(n, b, alpha, &Budget::default())
}

pub fn projector_proportionality_check_with_budget(
    n: usize,
    b: usize,
    alpha: &[Rational],
    budget: &Budget,
) -> Result<ProjectorCheck> {
    let rho = OuterProductMatrix::orbit_sum_with_budget(n, b, alpha, budget)?;
    if rho.is_zero() {
        return Ok(ProjectorCheck {
            c: Rational::zero(),
            ok: true,
        });
    }
    let tr = rho.trace();
    if tr.is_zero() {
        return Err(Error::Invariant("nonzero outer-product sum with zero trace".into()));
    }
    let sq = rho.square();
    let c = sq.trace() / tr;
    let ok = sq == rho.scale(&c);
    Ok(if ok {
        ProjectorCheck { c, ok }
    } else {
        ProjectorCheck {
            c: Rational::zero(),
            ok,
        }
    })
}
