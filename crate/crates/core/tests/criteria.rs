use mixfit_core::criteria::{
    criteria_report, id_index, kl_from_masses, ks_statistic, relative_information, KS_CRITICAL_5PCT,
};
use mixfit_core::estimation::default_init;
use mixfit_core::synth::{bin_values, draw_raw, exact_ks_oracle, BinSchema};
use mixfit_core::*;
use proptest::prelude::*;

fn masses(raw: &[f64]) -> Vec<f64> {
    let total: f64 = raw.iter().sum();
    raw.iter().map(|x| x / total).collect()
}

proptest! {
    #[test]
    fn gibbs_inequality(
        pairs in prop::collection::vec((0.001f64..1.0, 0.001f64..1.0), 2..30)
    ) {
        let p = masses(&pairs.iter().map(|x| x.0).collect::<Vec<_>>());
        let q = masses(&pairs.iter().map(|x| x.1).collect::<Vec<_>>());
        prop_assert!(kl_from_masses(&p, &q) >= 0.0);
        prop_assert_eq!(kl_from_masses(&p, &p), 0.0);
    }
}

#[test]
fn binned_ks_is_bracketed_by_exact_ks() {
    let m = MixtureModel::exp_pwr(1.0, 1e-4, 1e9, 1.5).unwrap();
    let edges = BinSchema::LogSpaced {
        count: 200,
        lower: 1.0,
        upper: 2e5,
    }
    .edges()
    .unwrap();
    for seed in 0..20 {
        let raw = draw_raw(&m, 10_000, edges[0], seed);
        let s = bin_values(&raw, &edges, "ks").unwrap();
        let binned = ks_statistic(&s, &m).unwrap().raw;
        let exact = exact_ks_oracle(&raw, &m).unwrap();
        let max_mass = s.empirical_masses().unwrap().into_iter().fold(0.0, f64::max);
        assert!(binned <= exact + 1e-12, "seed {seed}: {binned} > {exact}");
        assert!(binned >= exact - max_mass, "seed {seed}: {binned} < {exact} - {max_mass}");
    }
}

#[test]
fn ks_is_invariant_under_temperature_normalization() {
    let m = MixtureModel::exp_lgn_pwr(0.59, 0.08, 3.79e-5, 10.35, 0.825, 45_000.0, 1.266).unwrap();
    let (s, _) = generate(&SynthSpec::new(m.clone(), 100_000, 1)).unwrap();
    let t = 26_385.0;
    let a = ks_statistic(&s, &m).unwrap();
    let b = ks_statistic(&s.normalize_by_temperature(t).unwrap(), &m.rescaled(t).unwrap()).unwrap();
    assert!((a.raw - b.raw).abs() < 1e-12, "{} vs {}", a.raw, b.raw);
}

#[test]
fn three_component_truth_ranks_first_everywhere() {
    let truth = MixtureModel::exp_lgn_pwr(0.704, 0.025, 6.86e-5, 10.25, 0.615, 45_000.0, 1.199).unwrap();
    let (s, _) = generate(&SynthSpec::new(truth, 1_000_000, 0)).unwrap();
    let fits: Vec<FitResult> = ModelKind::ALL
        .iter()
        .map(|&kind| {
            let spec = ModelSpec::new(kind, 45_000.0).unwrap();
            let o = FitOptions {
                compute_std_errors: false,
                ..Default::default()
            };
            fit(&s, spec, &default_init(&s, spec).unwrap(), &o).unwrap()
        })
        .collect();
    let report = compare_models(&s, &fits).unwrap();
    let keys: [(&str, fn(&CriteriaReport) -> f64); 5] = [
        ("kl", |c| c.d_kl),
        ("id", |c| c.id),
        ("ks", |c| c.d_ks_raw),
        ("aic", |c| c.aic),
        ("bic", |c| c.bic),
    ];
    for (name, key) in keys {
        let order: Vec<ModelKind> = report.rank_by(key).into_iter().map(|i| report.entries[i].fit.kind()).collect();
        assert_eq!(order, vec![ModelKind::ExpLgnPwr, ModelKind::ExpPwr, ModelKind::LgnPwr], "{name}");
    }
    let ri = report
        .pairwise
        .iter()
        .find(|p| {
            report.entries[p.simple].fit.kind() == ModelKind::ExpPwr
                && report.entries[p.complex].fit.kind() == ModelKind::ExpLgnPwr
        })
        .and_then(|p| p.ri)
        .unwrap();
    assert!(ri > 0.0);
}

#[test]
fn id_and_ri_of_published_values() {
    // published ID pairs: exp / pwr-law against the three-component mixture
    assert!((relative_information(0.0078, 0.0018).unwrap() - 0.769).abs() < 5e-4);
    assert!((relative_information(0.0079, 0.0026).unwrap() - 0.671).abs() < 5e-4);
    assert!((id_index(0.0128).unwrap() - 0.0127).abs() < 5e-5);
}

#[test]
fn criteria_of_true_model_are_small() {
    let m = MixtureModel::exp_pwr(0.944, 2.98e-5, 44_000.0, 1.033).unwrap();
    let (s, _) = generate(&SynthSpec::new(m.clone(), 1_000_000, 3)).unwrap();
    let lgl = estimation::binned_log_likelihood(&s, &m);
    let c = criteria_report(&s, &m, lgl, 3).unwrap();
    // sampling noise only: KL ~ bins / 2n, KS well under the critical value
    assert!(c.d_kl < 1e-4, "{}", c.d_kl);
    assert!(c.d_ks_scaled < KS_CRITICAL_5PCT, "{}", c.d_ks_scaled);
    assert!(!c.ks_rejects_at_5pct);
}
