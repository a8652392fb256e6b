//! Derivative-free Nelder–Mead minimization.
//!
//! Uses the dimension-adaptive coefficients of Gao & Han (2012), which keep
//! the simplex from collapsing prematurely in 4–6 dimensions. Non-finite
//! objective values are treated as `+∞`, so the simplex steps away from
//! rejected regions instead of stopping.

use alloc::vec;
use alloc::vec::Vec;

use crate::math::sqrt;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadOptions {
    /// Stop when the best value moved by less than this (absolute plus
    /// relative to |f|) over the last `2 · dim` iterations...
    pub f_tol: f64,
    /// ...and every vertex lies within this ∞-norm distance of the best.
    pub x_tol: f64,
    pub max_evals: usize,
    /// Edge length of the initial axis-aligned simplex.
    pub initial_step: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            f_tol: 1e-10,
            x_tol: 1e-8,
            max_evals: 100_000,
            initial_step: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
}

struct Coefficients {
    reflect: f64,
    expand: f64,
    contract: f64,
    shrink: f64,
}

impl Coefficients {
    fn adaptive(dim: usize) -> Self {
        let n = dim.max(2) as f64;
        Self {
            reflect: 1.0,
            expand: 1.0 + 2.0 / n,
            contract: 0.75 - 1.0 / (2.0 * n),
            shrink: 1.0 - 1.0 / n,
        }
    }
}

fn sanitize(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

/// Minimize `f` starting from `x0`.
pub fn minimize<F>(mut f: F, x0: &[f64], opts: &NelderMeadOptions) -> Minimum
where
    F: FnMut(&[f64]) -> f64,
{
    let dim = x0.len();
    let mut evaluations = 0usize;
    let mut eval = |x: &[f64], count: &mut usize| {
        *count += 1;
        sanitize(f(x))
    };

    if dim == 0 {
        let value = eval(x0, &mut evaluations);
        return Minimum {
            x: Vec::new(),
            value,
            iterations: 0,
            evaluations,
            converged: true,
        };
    }

    let c = Coefficients::adaptive(dim);
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
    let mut values: Vec<f64> = Vec::with_capacity(dim + 1);
    simplex.push(x0.to_vec());
    values.push(eval(x0, &mut evaluations));
    for i in 0..dim {
        let mut v = x0.to_vec();
        v[i] += opts.initial_step;
        values.push(eval(&v, &mut evaluations));
        simplex.push(v);
    }

    let window = 2 * dim;
    let mut history: Vec<f64> = Vec::new();
    let mut iterations = 0usize;
    let mut converged = false;
    let mut order: Vec<usize> = (0..=dim).collect();
    let mut centroid = vec![0.0; dim];
    let mut trial = vec![0.0; dim];
    let mut trial2 = vec![0.0; dim];

    while evaluations < opts.max_evals {
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        let best = order[0];
        let worst = order[dim];
        let second_worst = order[dim - 1];
        history.push(values[best]);

        if history.len() > window {
            let old = history[history.len() - 1 - window];
            let fb = values[best];
            let f_ok = fb.is_finite() && (old - fb).abs() <= opts.f_tol * (1.0 + fb.abs());
            let spread_ok = values[worst] - fb <= opts.f_tol * (1.0 + fb.abs());
            let diameter = simplex
                .iter()
                .flat_map(|v| v.iter().zip(&simplex[best]).map(|(a, b)| (a - b).abs()))
                .fold(0.0, f64::max);
            if f_ok && spread_ok && diameter <= opts.x_tol {
                converged = true;
                break;
            }
        }
        iterations += 1;

        centroid.iter_mut().for_each(|x| *x = 0.0);
        for &i in &order[..dim] {
            for (cj, xj) in centroid.iter_mut().zip(&simplex[i]) {
                *cj += xj;
            }
        }
        centroid.iter_mut().for_each(|x| *x /= dim as f64);

        let along = |out: &mut [f64], t: f64, from: &[f64]| {
            for j in 0..dim {
                out[j] = centroid[j] + t * (from[j] - centroid[j]);
            }
        };

        along(&mut trial, -c.reflect, &simplex[worst]);
        let fr = eval(&trial, &mut evaluations);

        if fr < values[best] {
            along(&mut trial2, -c.reflect * c.expand, &simplex[worst]);
            let fe = eval(&trial2, &mut evaluations);
            if fe < fr {
                simplex[worst].copy_from_slice(&trial2);
                values[worst] = fe;
            } else {
                simplex[worst].copy_from_slice(&trial);
                values[worst] = fr;
            }
            continue;
        }
        if fr < values[second_worst] {
            simplex[worst].copy_from_slice(&trial);
            values[worst] = fr;
            continue;
        }

        // contraction: outside if the reflection helped at all, else inside
        let (t, bound) = if fr < values[worst] {
            (-c.reflect * c.contract, fr)
        } else {
            (c.contract, values[worst])
        };
        along(&mut trial2, t, &simplex[worst]);
        let fc = eval(&trial2, &mut evaluations);
        if fc < bound || (fc.is_finite() && fc == bound) {
            simplex[worst].copy_from_slice(&trial2);
            values[worst] = fc;
            continue;
        }

        let anchor = simplex[best].clone();
        for &i in &order[1..] {
            for (xj, aj) in simplex[i].iter_mut().zip(&anchor) {
                *xj = aj + c.shrink * (*xj - aj);
            }
            values[i] = eval(&simplex[i], &mut evaluations);
        }
    }

    let best = (0..=dim)
        .min_by(|&a, &b| values[a].total_cmp(&values[b]))
        .unwrap();
    Minimum {
        x: simplex[best].clone(),
        value: values[best],
        iterations,
        evaluations,
        converged,
    }
}

/// Euclidean norm; used by callers comparing optima.
pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    sqrt(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum())
}
