//! Derivative-free minimization with the Nelder-Mead simplex method.
//!
//! Uses the dimension-adaptive coefficients of Gao and Han, which keep the
//! simplex from collapsing in a few dozen dimensions.

use alloc::vec;
use alloc::vec::Vec;

#[derive(Debug, Clone)]
pub struct NelderMeadOptions {
    pub max_evals: usize,
    /// Stop when the spread of objective values over the simplex is below this.
    pub f_tol: f64,
    /// ... and every vertex is within this distance (max-norm) of the best.
    pub x_tol: f64,
    /// Edge length of the initial axis-aligned simplex.
    pub initial_step: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            max_evals: 20_000,
            f_tol: 1e-12,
            x_tol: 1e-10,
            initial_step: 0.05,
        }
    }
}

#[derive(Debug, Clone)]
pub struct NelderMeadResult {
    pub x: Vec<f64>,
    pub f: f64,
    pub evals: usize,
    pub converged: bool,
}

pub fn minimize(mut f: impl FnMut(&[f64]) -> f64, x0: &[f64], opts: &NelderMeadOptions) -> NelderMeadResult {
    let d = x0.len();
    let df = d as f64;
    let (alpha, beta, gamma, delta) = if d > 1 {
        (1.0, 1.0 + 2.0 / df, 0.75 - 1.0 / (2.0 * df), 1.0 - 1.0 / df)
    } else {
        (1.0, 2.0, 0.5, 0.5)
    };

    let mut simplex: Vec<Vec<f64>> = vec![x0.to_vec()];
    for i in 0..d {
        let mut v = x0.to_vec();
        v[i] += if v[i] != 0.0 { opts.initial_step * v[i].abs().max(1.0) } else { opts.initial_step };
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| f(v)).collect();
    let mut evals = d + 1;
    let mut converged = false;

    let mut order: Vec<usize> = (0..=d).collect();
    while evals < opts.max_evals {
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        let best = order[0];
        let worst = order[d];
        let second_worst = order[d.saturating_sub(1)];

        let spread = values[worst] - values[best];
        let size = simplex
            .iter()
            .flat_map(|v| v.iter().zip(&simplex[best]).map(|(a, b)| (a - b).abs()))
            .fold(0.0f64, f64::max);
        if spread <= opts.f_tol && size <= opts.x_tol {
            converged = true;
            break;
        }

        let mut centroid = vec![0.0; d];
        for &i in &order[..d] {
            for (c, x) in centroid.iter_mut().zip(&simplex[i]) {
                *c += x / df;
            }
        }
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[worst])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let reflected = along(alpha);
        let fr = f(&reflected);
        evals += 1;

        if fr < values[best] {
            let expanded = along(alpha * beta);
            let fe = f(&expanded);
            evals += 1;
            if fe < fr {
                simplex[worst] = expanded;
                values[worst] = fe;
            } else {
                simplex[worst] = reflected;
                values[worst] = fr;
            }
            continue;
        }
        if fr < values[second_worst] {
            simplex[worst] = reflected;
            values[worst] = fr;
            continue;
        }
        let (contracted, fc) = if fr < values[worst] {
            let c = along(alpha * gamma);
            let fc = f(&c);
            (c, fc)
        } else {
            let c = along(-gamma);
            let fc = f(&c);
            (c, fc)
        };
        evals += 1;
        if fc < fr.min(values[worst]) {
            simplex[worst] = contracted;
            values[worst] = fc;
            continue;
        }
        // shrink toward the best vertex
        let anchor = simplex[best].clone();
        for i in 0..=d {
            if i == best {
                continue;
            }
            for (x, a) in simplex[i].iter_mut().zip(&anchor) {
                *x = a + delta * (*x - a);
            }
            values[i] = f(&simplex[i]);
            evals += 1;
        }
    }

    let best = (0..=d).min_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap_or(0);
    NelderMeadResult {
        x: simplex.swap_remove(best),
        f: values[best],
        evals,
        converged,
    }
}
