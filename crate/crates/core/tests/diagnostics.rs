use mixfit_core::diagnostics::{ccdf_linearity_probe, collapse_metric, model_linearity_probe, DEFAULT_COLLAPSE_EPSILON};
use mixfit_core::estimation::default_init;
use mixfit_core::*;

/// Fitted temperature of an exponential / Pareto fit with `k` known.
fn fitted_temperature(s: &BinnedSample, k: f64) -> f64 {
    let spec = ModelSpec::new(ModelKind::ExpPwr, k).unwrap();
    let opts = FitOptions {
        compute_std_errors: false,
        ..Default::default()
    };
    let f = fit(s, spec, &default_init(s, spec).unwrap(), &opts).unwrap();
    1.0 / f.theta_hat.beta.unwrap()
}

#[test]
fn scaled_copies_collapse_on_fitted_temperatures() {
    let base = MixtureModel::exp_pwr(0.944, 2.98e-5, 44_000.0, 1.033).unwrap();
    let mut samples = Vec::new();
    let mut temps = Vec::new();
    for (i, c) in [1.0, 2.0].into_iter().enumerate() {
        let m = base.rescaled(1.0 / c).unwrap();
        let (s, _) = generate(&SynthSpec::new(m, 1_000_000, 20 + i as u64)).unwrap();
        temps.push(fitted_temperature(&s, 44_000.0 * c));
        samples.push(s.with_label(format!("T x {c}")));
    }
    let r = collapse_metric(&samples, &temps, DEFAULT_COLLAPSE_EPSILON).unwrap();
    assert!(r.collapsed, "{r:?}");
    assert!(r.max_gap() < 0.01, "gap {}", r.max_gap());
}

#[test]
fn log_normals_of_different_shape_do_not_collapse() {
    let mk = |sigma: f64, seed| {
        let m = MixtureModel::lgn_pwr(1.0, 10.0, sigma, 1e9, 1.5).unwrap();
        generate(&SynthSpec::new(m, 1_000_000, seed)).unwrap().0
    };
    let t = 10f64.exp();
    let r = collapse_metric(&[mk(0.6, 1), mk(1.2, 2)], &[t, t], DEFAULT_COLLAPSE_EPSILON).unwrap();
    assert!(!r.collapsed);
    assert!(r.max_gap() > 0.1);
}

#[test]
fn exponential_ccdf_probe_recovers_rate() {
    let m = MixtureModel::exp_pwr(1.0, 3e-5, 1e9, 1.5).unwrap();
    let spec = SynthSpec::new(m.clone(), 1_000_000, 4).with_bins(synth::BinSchema::Explicit(
        (0..=40).map(|i| 1.0 + 5_000.0 * i as f64).collect(),
    ));
    let (s, _) = generate(&spec).unwrap();
    let p = ccdf_linearity_probe(&s, 0.0, 150_000.0).unwrap();
    assert!(((p.slope + 3e-5) / 3e-5).abs() < 0.01, "slope {}", p.slope);
    assert!(p.max_abs_residual < 0.02);
    let exact = model_linearity_probe(&m, 0.0, 100_000.0, 101).unwrap();
    assert!(exact.max_abs_residual < 1e-9);
}
