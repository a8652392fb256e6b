//! Model-comparison statistics: Kullback–Leibler divergence, informational
//! distinguishability (ID), relative information (RI), Kolmogorov–Smirnov
//! distance and the AIC / BIC information criteria.
//!
//! Two sign conventions differ from the usual printed forms and are spelled
//! out in [`SIGN_NOTES`]: ID uses `1 − exp(−D_KL)` so that it lies in [0, 1),
//! and AIC carries a `+2κ` complexity penalty.

use alloc::string::String;
use alloc::vec::Vec;

use crate::binned::BinnedSample;
use crate::dist::Continuous;
use crate::error::{Error, Result};
use crate::estimation::{bin_probabilities, FitResult};
use crate::math::{exp_m1, ln, sqrt};
use crate::mixture::{MixtureModel, ModelKind};

/// 5% critical value of √n·D_KS.
pub const KS_CRITICAL_5PCT: f64 = 1.358;

/// Conventions attached to every comparison report.
pub const SIGN_NOTES: [&str; 2] = [
    "ID = 1 - exp(-D_KL): the negative exponent keeps ID in [0, 1)",
    "AIC = -2 lnL + 2 kappa: the complexity penalty is added, not subtracted",
];

/// D_KL(p ‖ q) = Σ pᵢ ln(pᵢ/qᵢ) over pᵢ > 0 for discrete distributions.
/// `+∞` if some pᵢ > 0 has qᵢ = 0.
pub fn kl_from_masses(p: &[f64], q: &[f64]) -> f64 {
    p.iter()
        .zip(q)
        .filter(|(pi, _)| **pi > 0.0)
        .map(|(pi, qi)| if *qi > 0.0 { pi * ln(pi / qi) } else { f64::INFINITY })
        .sum()
}

/// D_KL in bin-mass form, plus the first populated bin the model assigns
/// zero probability (which makes the divergence `+∞`).
pub fn kl_divergence_with_diagnostic(s: &BinnedSample, model: &MixtureModel) -> Result<(f64, Option<usize>)> {
    let p = s.empirical_masses()?;
    let q = bin_probabilities(s, model);
    let unsupported = p.iter().zip(&q).position(|(pi, qi)| *pi > 0.0 && *qi <= 0.0);
    Ok((kl_from_masses(&p, &q), unsupported))
}

/// D_KL between the empirical bin masses fᵢ/n and the model masses P*ᵢ.
pub fn kl_divergence(s: &BinnedSample, model: &MixtureModel) -> Result<f64> {
    kl_divergence_with_diagnostic(s, model).map(|(d, _)| d)
}

/// ID = 1 − exp(−D_KL).
pub fn id_index(d_kl: f64) -> Result<f64> {
    if d_kl.is_nan() {
        return Err(Error::NonFinite(d_kl));
    }
    if d_kl < 0.0 {
        return Err(Error::Negative(d_kl));
    }
    Ok(-exp_m1(-d_kl))
}

/// RI = 1 − ID_complex / ID_simple. Negative when the "complex" model fits
/// worse.
pub fn relative_information(id_simple: f64, id_complex: f64) -> Result<f64> {
    if id_simple == 0.0 {
        return Err(Error::ZeroReferenceId);
    }
    if !(id_simple > 0.0) {
        return Err(Error::Negative(id_simple));
    }
    if !(id_complex >= 0.0) {
        return Err(Error::Negative(id_complex));
    }
    Ok(1.0 - id_complex / id_simple)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsStatistic {
    /// sup over bin edges of |F_emp − F_model|.
    pub raw: f64,
    /// √n · raw.
    pub scaled: f64,
    /// Edge where the supremum is attained.
    pub at: f64,
}

impl KsStatistic {
    /// √n·D_KS exceeds the 5% critical value.
    pub fn rejects_at_5pct(&self) -> bool {
        self.scaled > KS_CRITICAL_5PCT
    }
}

/// KS distance evaluated at the bin edges, where the empirical cdf is known
/// exactly.
pub fn ks_statistic(s: &BinnedSample, model: &MixtureModel) -> Result<KsStatistic> {
    let points = s.empirical_cdf_at_edges()?;
    let mut best = KsStatistic {
        raw: 0.0,
        scaled: 0.0,
        at: points[0].0,
    };
    for (x, f_emp) in points {
        // compare in the tail through the ccdf to keep precision
        let d = if f_emp > 0.5 {
            ((1.0 - f_emp) - model.ccdf(x)).abs()
        } else {
            (f_emp - model.cdf(x)).abs()
        };
        if d > best.raw {
            best.raw = d;
            best.at = x;
        }
    }
    best.scaled = sqrt(s.n() as f64) * best.raw;
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InformationCriteria {
    pub aic: f64,
    pub bic: f64,
}

/// AIC = −2 lgL + 2κ, BIC = −2 lgL + κ ln n.
pub fn information_criteria(lgl: f64, kappa: usize, n: u64) -> InformationCriteria {
    let kappa = kappa as f64;
    InformationCriteria {
        aic: -2.0 * lgl + 2.0 * kappa,
        bic: -2.0 * lgl + kappa * ln(n as f64),
    }
}

/// Every criterion for one model on one dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct CriteriaReport {
    pub kind: Option<ModelKind>,
    pub lgl: f64,
    pub d_kl: f64,
    pub id: f64,
    pub d_ks_raw: f64,
    pub d_ks_scaled: f64,
    pub ks_rejects_at_5pct: bool,
    pub aic: f64,
    pub bic: f64,
    pub kappa: usize,
    pub n: u64,
}

/// Evaluate all criteria for `model` with maximized log-likelihood `lgl`.
pub fn criteria_report(s: &BinnedSample, model: &MixtureModel, lgl: f64, kappa: usize) -> Result<CriteriaReport> {
    let d_kl = kl_divergence(s, model)?;
    let id = if d_kl.is_finite() { id_index(d_kl)? } else { 1.0 };
    let ks = ks_statistic(s, model)?;
    let ic = information_criteria(lgl, kappa, s.n());
    Ok(CriteriaReport {
        kind: model.kind(),
        lgl,
        d_kl,
        id,
        d_ks_raw: ks.raw,
        d_ks_scaled: ks.scaled,
        ks_rejects_at_5pct: ks.rejects_at_5pct(),
        aic: ic.aic,
        bic: ic.bic,
        kappa,
        n: s.n(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonEntry {
    pub name: String,
    pub fit: FitResult,
    pub criteria: CriteriaReport,
}

/// RI of the pair (`simple`, `complex`), indices into the report entries.
#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseRi {
    pub simple: usize,
    pub complex: usize,
    /// `None` when the simpler model has ID = 0.
    pub ri: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub label: String,
    pub n: u64,
    pub entries: Vec<ComparisonEntry>,
    pub pairwise: Vec<PairwiseRi>,
    /// Entry indices by ascending AIC.
    pub ranking: Vec<usize>,
    pub notes: Vec<String>,
}

impl ComparisonReport {
    /// Entry indices ordered by a criterion, smallest first.
    pub fn rank_by(&self, key: impl Fn(&CriteriaReport) -> f64) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.entries.len()).collect();
        idx.sort_by(|&a, &b| key(&self.entries[a].criteria).total_cmp(&key(&self.entries[b].criteria)));
        idx
    }
}

/// Criteria for each fit plus RI for every pair. In a pair the model with
/// fewer free parameters is the simpler one; ties go to the larger ID.
pub fn compare_models(s: &BinnedSample, fits: &[FitResult]) -> Result<ComparisonReport> {
    if fits.len() < 2 {
        return Err(Error::TooFewInputs {
            needed: 2,
            got: fits.len(),
        });
    }
    let fp = s.fingerprint();
    if fits.iter().any(|f| f.data_fingerprint != fp || f.n != s.n()) {
        return Err(Error::DatasetMismatch);
    }
    let mut entries = Vec::with_capacity(fits.len());
    for f in fits {
        let model = f.model()?;
        let criteria = criteria_report(s, &model, f.lgl_max, f.kappa())?;
        entries.push(ComparisonEntry {
            name: String::from(f.kind().name()),
            fit: f.clone(),
            criteria,
        });
    }

    let mut notes: Vec<String> = SIGN_NOTES.iter().map(|s| String::from(*s)).collect();
    let mut pairwise = Vec::new();
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            let (ci, cj) = (&entries[i].criteria, &entries[j].criteria);
            let i_is_simple = match ci.kappa.cmp(&cj.kappa) {
                core::cmp::Ordering::Less => true,
                core::cmp::Ordering::Greater => false,
                core::cmp::Ordering::Equal => ci.id >= cj.id,
            };
            let (simple, complex) = if i_is_simple { (i, j) } else { (j, i) };
            let ri = relative_information(entries[simple].criteria.id, entries[complex].criteria.id).ok();
            if let Some(v) = ri {
                if v < 0.0 {
                    notes.push(alloc::format!(
                        "RI({} -> {}) is negative: the larger model fits worse",
                        entries[simple].name,
                        entries[complex].name
                    ));
                }
            }
            pairwise.push(PairwiseRi { simple, complex, ri });
        }
    }
    for e in &entries {
        if e.criteria.ks_rejects_at_5pct {
            notes.push(alloc::format!(
                "{}: sqrt(n) D_KS = {:.4} exceeds the 5% critical value {KS_CRITICAL_5PCT}",
                e.name, e.criteria.d_ks_scaled
            ));
        }
    }

    let mut report = ComparisonReport {
        label: String::from(s.label()),
        n: s.n(),
        entries,
        pairwise,
        ranking: Vec::new(),
        notes,
    };
    report.ranking = report.rank_by(|c| c.aic);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binned::Bin;
    use alloc::vec;

    #[test]
    fn kl_examples() {
        assert_eq!(kl_from_masses(&[0.25, 0.75], &[0.25, 0.75]), 0.0);
        let d = kl_from_masses(&[0.5, 0.5], &[0.9, 0.1]);
        let expected = 0.5 * (0.5f64 / 0.9).ln() + 0.5 * (0.5f64 / 0.1).ln();
        assert!((d - expected).abs() < 1e-15);
        assert!((d - 0.5108).abs() < 1e-4);
        assert_eq!(kl_from_masses(&[0.5, 0.5], &[1.0, 0.0]), f64::INFINITY);
        assert_eq!(kl_from_masses(&[1.0, 0.0], &[0.5, 0.5]), 2f64.ln());
    }

    #[test]
    fn kl_diagnostic_names_unsupported_bin() {
        let s = BinnedSample::new(vec![Bin::bounded(1.0, 10.0, 5, None), Bin::open(10.0, 1, None)], "").unwrap();
        let m = MixtureModel::exp_pwr(1.0, 100.0, 1e9, 1.0).unwrap();
        let (d, bin) = kl_divergence_with_diagnostic(&s, &m).unwrap();
        assert_eq!(d, f64::INFINITY);
        assert_eq!(bin, Some(1));
    }

    #[test]
    fn id_examples() {
        assert_eq!(id_index(0.0).unwrap(), 0.0);
        let id = id_index(0.0078).unwrap();
        assert!((id - 0.007_770).abs() < 5e-7);
        assert!((id_index(0.0214).unwrap() - 0.02117).abs() < 5e-6);
        assert_eq!(id_index(-0.1), Err(Error::Negative(-0.1)));
        assert!(id_index(f64::NAN).is_err());
        assert_eq!(id_index(f64::INFINITY).unwrap(), 1.0);
    }

    #[test]
    fn ri_examples() {
        assert_eq!(relative_information(0.3, 0.3).unwrap(), 0.0);
        assert!((relative_information(0.0078, 0.0018).unwrap() - 0.769).abs() < 5e-4);
        assert!((relative_information(0.0079, 0.0026).unwrap() - 0.671).abs() < 5e-4);
        assert_eq!(relative_information(0.0, 0.1), Err(Error::ZeroReferenceId));
        assert!(relative_information(0.1, 0.2).unwrap() < 0.0);
    }

    #[test]
    fn information_criteria_examples() {
        let ic = information_criteria(0.0, 3, 1);
        assert_eq!(ic.aic, 6.0);
        assert_eq!(ic.bic, 0.0);
        let ic = information_criteria(0.0, 3, 7);
        assert!((ic.bic - 3.0 * 7f64.ln()).abs() < 1e-15);
        let a = information_criteria(-10.0, 3, 100);
        let b = information_criteria(-12.0, 3, 100);
        assert!(a.aic < b.aic && a.bic < b.bic);
        // ln n > 2 makes the BIC penalty the larger one
        let ic = information_criteria(-100.0, 4, 1000);
        assert!(ic.bic >= ic.aic);
    }

    #[test]
    fn ks_vanishes_when_edges_sit_on_model_quantiles() {
        let m = MixtureModel::exp_pwr(1.0, 1.0, 1e9, 1.0).unwrap();
        let mut edges = vec![0.0];
        edges.extend((1..=4).map(|i| m.quantile(i as f64 / 5.0).unwrap()));
        let mut bins: Vec<Bin> = edges.windows(2).map(|w| Bin::bounded(w[0], w[1], 200, None)).collect();
        bins.push(Bin::open(edges[4], 200, None));
        let s = BinnedSample::new(bins, "").unwrap();
        let ks = ks_statistic(&s, &m).unwrap();
        assert!(ks.raw < 1e-15, "{}", ks.raw);
        assert!(!ks.rejects_at_5pct());
    }

    #[test]
    fn ks_flags_rejection_above_critical_value() {
        let m = MixtureModel::exp_pwr(1.0, 1.0, 1e9, 1.0).unwrap();
        let s = BinnedSample::new(vec![Bin::bounded(0.0, 1.0, 10_000, None), Bin::open(1.0, 0, None)], "").unwrap();
        let ks = ks_statistic(&s, &m).unwrap();
        assert!((ks.raw - (-1f64).exp()).abs() < 1e-15);
        assert!((ks.scaled - 100.0 * ks.raw).abs() < 1e-12);
        assert!(ks.rejects_at_5pct());
    }
}
