//! Binned maximum-likelihood estimation with the power-law bound `k` fixed.
//!
//! The objective is
//!
//! ```text
//! lgL(θ) = Σ_k φ_k · ln(F(a_k + Δ_k; θ) − F(a_k; θ))
//! ```
//!
//! with the open top bracket contributing `φ_m · ln(1 − F(a_m; θ))`. It is
//! maximized by Nelder–Mead in the unconstrained coordinates of
//! [`ParamVector::to_unconstrained`], restarted from jittered copies of the
//! initial point and polished from the best result.

use alloc::vec;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::binned::BinnedSample;
use crate::dist::Continuous;
use crate::error::{Error, Result};
use crate::math::{ln, sqrt};
use crate::mixture::{MixtureModel, ModelKind, ModelSpec};
use crate::optimize::{minimize, NelderMeadOptions};
use crate::params::{FreeParam, ParamVector};
use crate::rng::{open_unit, seeded};

/// Bin probabilities below this are treated as zero.
pub const PROBABILITY_FLOOR: f64 = 1e-300;

/// Model probability of each bin of `s`, in bin order.
///
/// Differences are taken on whichever of cdf / ccdf is smaller at the lower
/// edge, so upper-tail brackets keep full relative precision.
pub fn bin_probabilities(s: &BinnedSample, model: &MixtureModel) -> Vec<f64> {
    let mut lower_cdf = model.cdf(s.bins()[0].lower);
    let mut lower_ccdf = model.ccdf(s.bins()[0].lower);
    s.bins()
        .iter()
        .map(|bin| match bin.upper {
            None => lower_ccdf,
            Some(u) => {
                let (uc, us) = (model.cdf(u), model.ccdf(u));
                let p = if lower_cdf <= 0.5 {
                    uc - lower_cdf
                } else {
                    lower_ccdf - us
                };
                lower_cdf = uc;
                lower_ccdf = us;
                p.max(0.0)
            }
        })
        .collect()
}

/// Binned log-likelihood. Empty bins contribute exactly 0; a populated bin
/// with probability below [`PROBABILITY_FLOOR`] makes the result `-∞`.
pub fn binned_log_likelihood(s: &BinnedSample, model: &MixtureModel) -> f64 {
    let probs = bin_probabilities(s, model);
    let mut total = 0.0;
    for (bin, p) in s.bins().iter().zip(probs) {
        if bin.count == 0 {
            continue;
        }
        if !(p >= PROBABILITY_FLOOR) {
            return f64::NEG_INFINITY;
        }
        total += bin.count as f64 * ln(p);
    }
    total
}

fn log_likelihood_at(s: &BinnedSample, theta: &ParamVector) -> f64 {
    match theta.to_model() {
        Ok(m) => binned_log_likelihood(s, &m),
        Err(_) => f64::NEG_INFINITY,
    }
}

/// Heuristic starting point: A = 0.9, B = 0.05, β = 1/mean, μ = ln(median),
/// σ = 1, α = 1.5.
pub fn default_init(s: &BinnedSample, spec: ModelSpec) -> Result<ParamVector> {
    let median = s.median_income()?;
    let beta = match s.mean_income() {
        Ok(mean) if mean > 0.0 => 1.0 / mean,
        // no totals: the exponential median is ln 2 / β
        _ => core::f64::consts::LN_2 / median.max(1.0),
    };
    let mu = ln(median.max(1.0));
    let k = spec.k();
    Ok(match spec.kind {
        ModelKind::ExpPwr => ParamVector::exp_pwr(0.9, beta, k, 1.5),
        ModelKind::LgnPwr => ParamVector::lgn_pwr(0.9, mu, 1.0, k, 1.5),
        ModelKind::ExpLgnPwr => ParamVector::exp_lgn_pwr(0.9, 0.05, beta, mu, 1.0, k, 1.5),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitOptions {
    /// Tolerance on the change of the per-observation objective −lgL/n.
    pub tolerance: f64,
    /// Simplex diameter tolerance in the unconstrained coordinates.
    pub x_tolerance: f64,
    /// Evaluation budget of each Nelder–Mead run.
    pub max_evaluations: usize,
    /// Number of starts: the initial point plus `starts − 1` jittered copies.
    pub starts: usize,
    /// Half-width of the uniform jitter applied in unconstrained coordinates.
    pub jitter: f64,
    pub initial_step: f64,
    /// Also start from a fixed grid of points around the init (see
    /// [`scan_starts`]). The binned likelihood of the three-component model
    /// is often bimodal and jitter alone misses the other mode.
    pub scan: bool,
    pub seed: u64,
    pub compute_std_errors: bool,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-10,
            x_tolerance: 1e-8,
            max_evaluations: 100_000,
            starts: 5,
            jitter: 0.5,
            initial_step: 0.1,
            scan: true,
            seed: 0,
            compute_std_errors: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HessianStatus {
    Ok,
    /// −H is not positive definite.
    NotPositiveDefinite,
    /// −H is numerically singular.
    Singular,
    /// A finite-difference probe left the admissible region or gave a
    /// non-finite likelihood.
    NonFinite,
    /// Not computed.
    Skipped,
}

/// Standard errors of the free parameters from the observed information.
#[derive(Debug, Clone, PartialEq)]
pub struct StdErrors {
    pub params: &'static [FreeParam],
    /// `None` unless `status` is `Ok`.
    pub values: Option<Vec<f64>>,
    pub status: HessianStatus,
}

impl StdErrors {
    pub fn skipped(kind: ModelKind) -> Self {
        Self {
            params: kind.free_params(),
            values: None,
            status: HessianStatus::Skipped,
        }
    }

    pub fn is_reliable(&self) -> bool {
        self.status == HessianStatus::Ok
    }

    pub fn get(&self, p: FreeParam) -> Option<f64> {
        let i = self.params.iter().position(|q| *q == p)?;
        self.values.as_ref().map(|v| v[i])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub theta_hat: ParamVector,
    pub lgl_max: f64,
    pub std_errors: StdErrors,
    pub converged: bool,
    /// Iterations of the winning start plus the polishing restarts.
    pub iterations: usize,
    /// Objective evaluations over all starts.
    pub evaluations: usize,
    /// (k, lgL) pairs when the fit came out of a k scan.
    pub k_profile: Option<Vec<(f64, f64)>>,
    pub n: u64,
    pub data_fingerprint: u64,
}

impl FitResult {
    pub fn kind(&self) -> ModelKind {
        self.theta_hat.kind
    }

    pub fn kappa(&self) -> usize {
        self.kind().free_param_count()
    }

    pub fn model(&self) -> Result<MixtureModel> {
        self.theta_hat.to_model()
    }
}

/// Maximize the binned likelihood over the free parameters of `spec`.
///
/// Non-convergence is reported through `converged = false` with the best
/// point found. Errors only for inadmissible input or too few bins.
pub fn fit(s: &BinnedSample, spec: ModelSpec, init: &ParamVector, opts: &FitOptions) -> Result<FitResult> {
    if init.kind != spec.kind {
        return Err(Error::KindMismatch {
            expected: spec.kind.name(),
            found: init.kind.name(),
        });
    }
    let kappa = spec.kind.free_param_count();
    if s.bins().len() < kappa {
        return Err(Error::DegenerateData {
            bins: s.bins().len(),
            params: kappa,
        });
    }
    if s.n() == 0 {
        return Err(Error::EmptySample);
    }
    let mut init = init.clone();
    init.k = spec.k();
    let z0 = init.to_unconstrained()?;
    let init_lgl = log_likelihood_at(s, &init);

    let n = s.n() as f64;
    let objective = |z: &[f64]| match ParamVector::from_unconstrained(spec, z) {
        Ok(theta) => -log_likelihood_at(s, &theta) / n,
        Err(_) => f64::INFINITY,
    };
    let nm = NelderMeadOptions {
        f_tol: opts.tolerance,
        x_tol: opts.x_tolerance,
        max_evals: opts.max_evaluations,
        initial_step: opts.initial_step,
    };

    let mut rng = seeded(opts.seed);
    let mut starts: Vec<Vec<f64>> = vec![z0.clone()];
    for _ in 1..opts.starts.max(1) {
        starts.push(z0.iter().map(|x| x + jitter(&mut rng, opts.jitter)).collect());
    }
    if opts.scan {
        for theta in scan_starts(&init) {
            if let Ok(z) = theta.to_unconstrained() {
                starts.push(z);
            }
        }
    }

    let mut iterations = 0;
    let mut evaluations = 0;
    let mut best: Option<(Vec<f64>, f64, usize)> = None;
    for z in &starts {
        let m = minimize(objective, z, &nm);
        evaluations += m.evaluations;
        if best.as_ref().map_or(true, |(_, v, _)| m.value < *v) {
            best = Some((m.x, m.value, m.iterations));
        }
    }

    // polish: restart from the incumbent until a restart stops improving it
    let (mut z_best, mut f_best, winner_iterations) = best.unwrap();
    iterations += winner_iterations;
    let mut converged = false;
    for _ in 0..10 {
        let m = minimize(objective, &z_best, &nm);
        iterations += m.iterations;
        evaluations += m.evaluations;
        let improved = f_best - m.value > opts.tolerance * (1.0 + f_best.abs());
        if m.value < f_best {
            z_best = m.x;
            f_best = m.value;
        }
        converged = m.converged;
        if !improved {
            break;
        }
    }

    let mut theta_hat = ParamVector::from_unconstrained(spec, &z_best)?;
    let mut lgl_max = log_likelihood_at(s, &theta_hat);
    if !(lgl_max >= init_lgl) {
        theta_hat = init;
        lgl_max = init_lgl;
    }
    let std_errors = if opts.compute_std_errors {
        std_errors_from_hessian(s, &theta_hat)
    } else {
        StdErrors::skipped(spec.kind)
    };
    Ok(FitResult {
        theta_hat,
        lgl_max,
        std_errors,
        converged,
        iterations,
        evaluations,
        k_profile: None,
        n: s.n(),
        data_fingerprint: s.fingerprint(),
    })
}

/// Deterministic start grid around `init`: A ∈ {0.3, 0.6, 0.9}, β × {½, 1, 2},
/// μ + {−½, 0, ½}, σ ∈ {0.5, 1}, over whichever of these the kind has.
/// B keeps its init value (shrunk if A + B would exceed 1).
pub fn scan_starts(init: &ParamVector) -> Vec<ParamVector> {
    let mut out = vec![init.clone()];
    let expand = |out: &mut Vec<ParamVector>, f: &dyn Fn(&mut ParamVector, f64), values: &[f64]| {
        *out = out
            .iter()
            .flat_map(|t| {
                values.iter().map(move |v| {
                    let mut t = t.clone();
                    f(&mut t, *v);
                    t
                })
            })
            .collect();
    };
    expand(&mut out, &|t, a| set_a_keeping_b(t, a), &[0.3, 0.6, 0.9]);
    if let Some(beta) = init.beta {
        expand(&mut out, &|t, m| t.beta = Some(beta * m), &[0.5, 1.0, 2.0]);
    }
    if let (Some(mu), Some(_)) = (init.mu, init.sigma) {
        expand(&mut out, &|t, d| t.mu = Some(mu + d), &[-0.5, 0.0, 0.5]);
        expand(&mut out, &|t, s| t.sigma = Some(s), &[0.5, 1.0]);
    }
    out
}

fn set_a_keeping_b(t: &mut ParamVector, a: f64) {
    match t.b() {
        Some(b) => {
            let b = b.min(0.5 * (1.0 - a));
            t.weights = vec![a, 1.0 - a - b, b];
        }
        None => t.weights = vec![a, 1.0 - a],
    }
}

fn jitter<R: RngCore + ?Sized>(rng: &mut R, half_width: f64) -> f64 {
    (2.0 * open_unit(rng) - 1.0) * half_width
}

/// Central-difference Hessian of `f` at `x` with per-coordinate steps.
pub fn numerical_hessian<F>(mut f: F, x: &[f64], steps: &[f64]) -> Vec<Vec<f64>>
where
    F: FnMut(&[f64]) -> f64,
{
    let d = x.len();
    let mut h = vec![vec![0.0; d]; d];
    let f0 = f(x);
    let mut p = x.to_vec();
    for i in 0..d {
        p[i] = x[i] + steps[i];
        let fp = f(&p);
        p[i] = x[i] - steps[i];
        let fm = f(&p);
        p[i] = x[i];
        h[i][i] = (fp - 2.0 * f0 + fm) / (steps[i] * steps[i]);
        for j in 0..i {
            let mut corner = |si: f64, sj: f64| {
                p[i] = x[i] + si * steps[i];
                p[j] = x[j] + sj * steps[j];
                let v = f(&p);
                p[i] = x[i];
                p[j] = x[j];
                v
            };
            let v = (corner(1.0, 1.0) - corner(1.0, -1.0) - corner(-1.0, 1.0) + corner(-1.0, -1.0))
                / (4.0 * steps[i] * steps[j]);
            h[i][j] = v;
            h[j][i] = v;
        }
    }
    h
}

/// Relative step used for the likelihood Hessian.
const HESSIAN_REL_STEP: f64 = 1e-4;

/// Standard errors from the inverse of the negated numerical Hessian of
/// lgL in the natural parameterization (A, B, β, μ, σ, α).
pub fn std_errors_from_hessian(s: &BinnedSample, theta_hat: &ParamVector) -> StdErrors {
    let params = theta_hat.kind.free_params();
    let x = theta_hat.free_values();
    let steps: Vec<f64> = x
        .iter()
        .map(|v| if *v != 0.0 { HESSIAN_REL_STEP * v.abs() } else { HESSIAN_REL_STEP })
        .collect();
    let mut bad_probe = false;
    let hess = numerical_hessian(
        |v| {
            let lgl = theta_hat
                .with_free_values(v)
                .map_or(f64::NEG_INFINITY, |t| log_likelihood_at(s, &t));
            if !lgl.is_finite() {
                bad_probe = true;
            }
            lgl
        },
        &x,
        &steps,
    );
    let fail = |status| StdErrors {
        params,
        values: None,
        status,
    };
    if bad_probe || hess.iter().flatten().any(|v| !v.is_finite()) {
        return fail(HessianStatus::NonFinite);
    }
    let info: Vec<Vec<f64>> = hess.iter().map(|r| r.iter().map(|v| -v).collect()).collect();
    match invert_spd(&info) {
        Ok(cov) => StdErrors {
            params,
            values: Some((0..x.len()).map(|i| sqrt(cov[i][i])).collect()),
            status: HessianStatus::Ok,
        },
        Err(status) => fail(status),
    }
}

/// Inverse of a symmetric positive-definite matrix via Cholesky on its
/// diagonally scaled (correlation-form) copy.
fn invert_spd(a: &[Vec<f64>]) -> core::result::Result<Vec<Vec<f64>>, HessianStatus> {
    let d = a.len();
    if a.iter().enumerate().any(|(i, r)| !(r[i] > 0.0)) {
        return Err(HessianStatus::NotPositiveDefinite);
    }
    let scale: Vec<f64> = (0..d).map(|i| 1.0 / sqrt(a[i][i])).collect();
    let c: Vec<Vec<f64>> = (0..d)
        .map(|i| (0..d).map(|j| a[i][j] * scale[i] * scale[j]).collect())
        .collect();

    let mut l = vec![vec![0.0; d]; d];
    for i in 0..d {
        for j in 0..=i {
            let mut sum = c[i][j];
            for m in 0..j {
                sum -= l[i][m] * l[j][m];
            }
            if i == j {
                if !(sum > 0.0) {
                    return Err(HessianStatus::NotPositiveDefinite);
                }
                if sum < 1e-13 {
                    return Err(HessianStatus::Singular);
                }
                l[i][i] = sqrt(sum);
            } else {
                l[i][j] = sum / l[j][j];
            }
        }
    }
    // inv(C) = inv(L)ᵀ inv(L)
    let mut linv = vec![vec![0.0; d]; d];
    for i in 0..d {
        linv[i][i] = 1.0 / l[i][i];
        for j in 0..i {
            let mut sum = 0.0;
            for m in j..i {
                sum -= l[i][m] * linv[m][j];
            }
            linv[i][j] = sum / l[i][i];
        }
    }
    let mut inv = vec![vec![0.0; d]; d];
    for i in 0..d {
        for j in 0..d {
            let sum: f64 = (i.max(j)..d).map(|m| linv[m][i] * linv[m][j]).sum();
            inv[i][j] = sum * scale[i] * scale[j];
        }
    }
    Ok(inv)
}

/// Outcome of a scan over the power-law lower bound.
#[derive(Debug, Clone)]
pub struct KProfile {
    pub points: Vec<(f64, Result<FitResult>)>,
    /// Index into `points` of the highest-likelihood successful fit.
    pub best: Option<usize>,
}

impl KProfile {
    pub fn best_fit(&self) -> Option<&FitResult> {
        self.best.and_then(|i| self.points[i].1.as_ref().ok())
    }

    pub fn best_k(&self) -> Option<f64> {
        self.best.map(|i| self.points[i].0)
    }
}

/// One constrained fit per `k` in `k_grid`, each from the default init.
/// Failed points are kept in the profile and do not stop the scan.
pub fn profile_k(s: &BinnedSample, kind: ModelKind, k_grid: &[f64], opts: &FitOptions) -> Result<KProfile> {
    if k_grid.is_empty() {
        return Err(Error::EmptyRange);
    }
    if k_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidParameter {
            name: "k_grid",
            value: f64::NAN,
        });
    }
    let mut points: Vec<(f64, Result<FitResult>)> = k_grid
        .iter()
        .map(|&k| {
            let res = ModelSpec::new(kind, k)
                .and_then(|spec| default_init(s, spec).and_then(|init| fit(s, spec, &init, opts)));
            (k, res)
        })
        .collect();
    let trace: Vec<(f64, f64)> = points
        .iter()
        .filter_map(|(k, r)| r.as_ref().ok().map(|f| (*k, f.lgl_max)))
        .collect();
    let best = points
        .iter()
        .enumerate()
        .filter_map(|(i, (_, r))| r.as_ref().ok().map(|f| (i, f.lgl_max)))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(i, _)| i);
    if let Some(i) = best {
        if let Ok(f) = &mut points[i].1 {
            f.k_profile = Some(trace);
        }
    }
    Ok(KProfile { points, best })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binned::Bin;

    fn two_bin_sample(c: u64, edge: f64) -> BinnedSample {
        BinnedSample::new(vec![Bin::bounded(1.0, edge, c, None), Bin::open(edge, c, None)], "").unwrap()
    }

    #[test]
    fn single_open_bin_has_zero_log_likelihood() {
        let s = BinnedSample::new(vec![Bin::open(1.0, 500, None)], "").unwrap();
        // F(1) = 1 - exp(-1e-5) so lgL = 500 · (-1e-5 · 1)
        let m = MixtureModel::exp_pwr(1.0, 1e-5, 44_000.0, 1.0).unwrap();
        let lgl = binned_log_likelihood(&s, &m);
        assert!((lgl - 500.0 * -1e-5).abs() < 1e-12);
    }

    #[test]
    fn equal_probability_bins() {
        // pure exponential with β = 1; F(1) ≈ 0.632, choose the edge where the
        // two brackets split the remaining mass evenly
        let m = MixtureModel::exp_pwr(1.0, 1.0, 1e9, 1.0).unwrap();
        let s1 = m.ccdf(1.0);
        let edge = -ln(s1 / 2.0);
        let s = two_bin_sample(7, edge);
        let expected = 14.0 * ln(s1 / 2.0);
        assert!((binned_log_likelihood(&s, &m) - expected).abs() < 1e-12);

        // mass below the first edge is negligible here
        let m = MixtureModel::exp_pwr(1.0, 1e-9, 1e12, 1.0).unwrap();
        let edge = 1.0 + core::f64::consts::LN_2 / 1e-9;
        let s = two_bin_sample(10, edge);
        assert!((binned_log_likelihood(&s, &m) - 20.0 * ln(0.5)).abs() < 1e-6);
    }

    #[test]
    fn empty_zero_probability_bin_contributes_nothing() {
        let s = BinnedSample::new(
            vec![Bin::bounded(1.0, 10.0, 5, None), Bin::bounded(10.0, 20.0, 0, None), Bin::open(20.0, 0, None)],
            "",
        )
        .unwrap();
        // β so large that the upper brackets have probability 0 in f64
        let m = MixtureModel::exp_pwr(1.0, 100.0, 1e9, 1.0).unwrap();
        assert_eq!(bin_probabilities(&s, &m)[1], 0.0);
        assert!(binned_log_likelihood(&s, &m).is_finite());
        let s = BinnedSample::new(vec![Bin::bounded(1.0, 10.0, 5, None), Bin::open(10.0, 1, None)], "").unwrap();
        assert_eq!(binned_log_likelihood(&s, &m), f64::NEG_INFINITY);
    }

    #[test]
    fn probabilities_match_cdf_differences() {
        let m = MixtureModel::exp_lgn_pwr(0.59, 0.08, 3.79e-5, 10.35, 0.825, 45_000.0, 1.266).unwrap();
        let s = BinnedSample::new(
            vec![
                Bin::bounded(1.0, 1e4, 1, None),
                Bin::bounded(1e4, 5e4, 1, None),
                Bin::bounded(5e4, 1e6, 1, None),
                Bin::open(1e6, 1, None),
            ],
            "",
        )
        .unwrap();
        let p = bin_probabilities(&s, &m);
        let direct = [
            m.cdf(1e4) - m.cdf(1.0),
            m.cdf(5e4) - m.cdf(1e4),
            m.cdf(1e6) - m.cdf(5e4),
            1.0 - m.cdf(1e6),
        ];
        for (a, b) in p.iter().zip(direct) {
            assert!((a - b).abs() < 1e-14);
        }
        assert!((p.iter().sum::<f64>() - m.ccdf(1.0)).abs() < 1e-14);
    }

    #[test]
    fn spd_inverse() {
        let a = vec![vec![4.0, 1.0, 0.5], vec![1.0, 3.0, 0.2], vec![0.5, 0.2, 2.0]];
        let inv = invert_spd(&a).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let v: f64 = (0..3).map(|m| a[i][m] * inv[m][j]).sum();
                assert!((v - if i == j { 1.0 } else { 0.0 }).abs() < 1e-14);
            }
        }
        assert_eq!(
            invert_spd(&[vec![1.0, 2.0], vec![2.0, 1.0]]),
            Err(HessianStatus::NotPositiveDefinite)
        );
        assert_eq!(invert_spd(&[vec![-1.0]]), Err(HessianStatus::NotPositiveDefinite));
        assert_eq!(
            invert_spd(&[vec![1.0, 1.0], vec![1.0, 1.0 + 1e-14]]),
            Err(HessianStatus::Singular)
        );
    }

    #[test]
    fn hessian_of_quadratic() {
        let f = |x: &[f64]| -(3.0 * x[0] * x[0] + 2.0 * x[0] * x[1] + x[1] * x[1]);
        let h = numerical_hessian(f, &[0.3, -0.2], &[1e-3, 1e-3]);
        assert!((h[0][0] + 6.0).abs() < 1e-6);
        assert!((h[0][1] + 2.0).abs() < 1e-6);
        assert!((h[1][1] + 2.0).abs() < 1e-6);
    }

    #[test]
    fn degenerate_data_is_an_error() {
        let s = two_bin_sample(10, 100.0);
        let spec = ModelSpec::with_default_k(ModelKind::ExpPwr);
        let init = ParamVector::exp_pwr(0.9, 0.01, 44_000.0, 1.5);
        assert_eq!(
            fit(&s, spec, &init, &FitOptions::default()).unwrap_err(),
            Error::DegenerateData { bins: 2, params: 3 }
        );
        let wrong = ParamVector::lgn_pwr(0.9, 3.0, 1.0, 44_000.0, 1.5);
        assert!(matches!(
            fit(&s, spec, &wrong, &FitOptions::default()),
            Err(Error::KindMismatch { .. })
        ));
    }

    #[test]
    fn profile_rejects_bad_grids() {
        let s = two_bin_sample(10, 100.0);
        assert!(profile_k(&s, ModelKind::ExpPwr, &[], &FitOptions::default()).is_err());
        assert!(profile_k(&s, ModelKind::ExpPwr, &[2.0, 1.0], &FitOptions::default()).is_err());
        // per-point errors are kept, not propagated
        let p = profile_k(&s, ModelKind::ExpPwr, &[40.0, 50.0], &FitOptions::default()).unwrap();
        assert!(p.points.iter().all(|(_, r)| r.is_err()));
        assert_eq!(p.best, None);
    }
}
