//! JSON artifacts. Every top-level record carries `schema_version`.
//! Non-finite floats are written as `null` and read back as NaN.

use std::collections::BTreeMap;

use mixfit_core::criteria::{ComparisonReport, CriteriaReport};
use mixfit_core::diagnostics::CollapseReport;
use mixfit_core::estimation::{FitResult, HessianStatus};
use mixfit_core::synth::{BinSchema, SynthSpec};
use mixfit_core::{MixtureModel, ModelKind, ParamVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

fn schema_version() -> u32 {
    SCHEMA_VERSION
}

mod lossy {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
    }
}

mod kind_name {
    use mixfit_core::ModelKind;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(k: &ModelKind, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(k.name())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ModelKind, D::Error> {
        let name = String::deserialize(d)?;
        name.parse().map_err(|_| D::Error::custom(format!("unknown model `{name}`")))
    }
}

/// Hex form of a 64-bit digest.
pub fn hex(v: u64) -> String {
    format!("{v:016x}")
}

/// FNV-1a over raw bytes, for input files in the manifest.
pub fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    pub alpha: f64,
}

/// A fully specified mixture: weights in component order, component
/// parameters and the power-law lower bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelRecord {
    #[serde(with = "kind_name")]
    pub kind: ModelKind,
    pub weights: Vec<f64>,
    pub params: ComponentParams,
    pub k: f64,
}

impl ModelRecord {
    pub fn from_params(p: &ParamVector) -> Self {
        Self {
            kind: p.kind,
            weights: p.weights.clone(),
            params: ComponentParams {
                beta: p.beta,
                mu: p.mu,
                sigma: p.sigma,
                alpha: p.alpha,
            },
            k: p.k,
        }
    }

    pub fn to_params(&self) -> ParamVector {
        ParamVector {
            kind: self.kind,
            weights: self.weights.clone(),
            beta: self.params.beta,
            mu: self.params.mu,
            sigma: self.params.sigma,
            alpha: self.params.alpha,
            k: self.k,
        }
    }

    pub fn to_model(&self) -> Result<MixtureModel> {
        self.to_params().to_model().map_err(|e| Error::core("model", e))
    }
}

fn status_name(s: HessianStatus) -> &'static str {
    match s {
        HessianStatus::Ok => "ok",
        HessianStatus::NotPositiveDefinite => "not_positive_definite",
        HessianStatus::Singular => "singular",
        HessianStatus::NonFinite => "non_finite",
        HessianStatus::Skipped => "skipped",
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StdErrorRecord {
    pub status: String,
    pub values: Option<BTreeMap<String, f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitRecord {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    #[serde(with = "kind_name")]
    pub model: ModelKind,
    pub dataset: String,
    pub n: u64,
    pub data_fingerprint: String,
    pub k: f64,
    /// Free parameters by name.
    pub params: BTreeMap<String, f64>,
    pub weights: Vec<f64>,
    pub std_errors: StdErrorRecord,
    #[serde(rename = "lgL", with = "lossy")]
    pub lgl: f64,
    pub converged: bool,
    pub iterations: usize,
    pub evaluations: usize,
    /// `[k, lgL]` pairs of a k scan.
    pub k_profile: Option<Vec<(f64, f64)>>,
    pub fitted: ModelRecord,
}

impl FitRecord {
    pub fn new(fit: &FitResult, dataset: &str) -> Self {
        let p = &fit.theta_hat;
        let params = fit
            .kind()
            .free_params()
            .iter()
            .filter_map(|&q| p.get(q).map(|v| (q.name().to_string(), v)))
            .collect();
        let se = &fit.std_errors;
        let values = se.values.as_ref().map(|v| {
            se.params
                .iter()
                .zip(v)
                .map(|(q, x)| (q.name().to_string(), *x))
                .collect()
        });
        Self {
            schema_version: SCHEMA_VERSION,
            model: fit.kind(),
            dataset: dataset.to_string(),
            n: fit.n,
            data_fingerprint: hex(fit.data_fingerprint),
            k: p.k,
            params,
            weights: p.weights.clone(),
            std_errors: StdErrorRecord {
                status: status_name(se.status).to_string(),
                values,
            },
            lgl: fit.lgl_max,
            converged: fit.converged,
            iterations: fit.iterations,
            evaluations: fit.evaluations,
            k_profile: fit.k_profile.clone(),
            fitted: ModelRecord::from_params(p),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriteriaRecord {
    pub name: String,
    pub kappa: usize,
    #[serde(rename = "lgL", with = "lossy")]
    pub lgl: f64,
    #[serde(with = "lossy")]
    pub d_kl: f64,
    #[serde(with = "lossy")]
    pub id: f64,
    #[serde(with = "lossy")]
    pub d_ks_raw: f64,
    #[serde(with = "lossy")]
    pub d_ks_scaled: f64,
    pub ks_rejects_at_5pct: bool,
    #[serde(with = "lossy")]
    pub aic: f64,
    #[serde(with = "lossy")]
    pub bic: f64,
    pub fit: FitRecord,
}

impl CriteriaRecord {
    fn new(name: &str, c: &CriteriaReport, fit: FitRecord) -> Self {
        Self {
            name: name.to_string(),
            kappa: c.kappa,
            lgl: c.lgl,
            d_kl: c.d_kl,
            id: c.id,
            d_ks_raw: c.d_ks_raw,
            d_ks_scaled: c.d_ks_scaled,
            ks_rejects_at_5pct: c.ks_rejects_at_5pct,
            aic: c.aic,
            bic: c.bic,
            fit,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairRecord {
    pub simple: String,
    pub complex: String,
    /// `null` when the simpler model has ID = 0.
    pub ri: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRecord {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub dataset: String,
    pub n: u64,
    pub models: Vec<CriteriaRecord>,
    pub pairwise_ri: Vec<PairRecord>,
    pub ranking_by_aic: Vec<String>,
    pub notes: Vec<String>,
}

impl ComparisonRecord {
    pub fn new(r: &ComparisonReport) -> Self {
        let models = r
            .entries
            .iter()
            .map(|e| CriteriaRecord::new(&e.name, &e.criteria, FitRecord::new(&e.fit, &r.label)))
            .collect();
        let pairwise_ri = r
            .pairwise
            .iter()
            .map(|p| PairRecord {
                simple: r.entries[p.simple].name.clone(),
                complex: r.entries[p.complex].name.clone(),
                ri: p.ri,
            })
            .collect();
        Self {
            schema_version: SCHEMA_VERSION,
            dataset: r.label.clone(),
            n: r.n,
            models,
            pairwise_ri,
            ranking_by_aic: r.ranking.iter().map(|&i| r.entries[i].name.clone()).collect(),
            notes: r.notes.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CollapseRecord {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub labels: Vec<String>,
    pub temperatures: Vec<f64>,
    /// `"given"` or the model whose fitted temperature was used.
    pub temperature_source: String,
    pub gaps: Vec<Vec<f64>>,
    pub grid_range: (f64, f64),
    pub epsilon: f64,
    pub max_gap: f64,
    pub collapsed: bool,
}

impl CollapseRecord {
    pub fn new(r: &CollapseReport, temperature_source: &str) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            labels: r.labels.clone(),
            temperatures: r.temperatures.clone(),
            temperature_source: temperature_source.to_string(),
            gaps: r.gaps.clone(),
            grid_range: r.grid_range,
            epsilon: r.epsilon,
            max_gap: r.max_gap(),
            collapsed: r.collapsed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BinSchemaRecord {
    LogSpaced { count: usize, lower: f64, upper: f64 },
    Explicit(Vec<f64>),
}

impl Default for BinSchemaRecord {
    fn default() -> Self {
        BinSchemaRecord::from(&BinSchema::default())
    }
}

impl From<&BinSchema> for BinSchemaRecord {
    fn from(b: &BinSchema) -> Self {
        match b {
            BinSchema::LogSpaced { count, lower, upper } => BinSchemaRecord::LogSpaced {
                count: *count,
                lower: *lower,
                upper: *upper,
            },
            BinSchema::Explicit(e) => BinSchemaRecord::Explicit(e.clone()),
        }
    }
}

impl From<&BinSchemaRecord> for BinSchema {
    fn from(b: &BinSchemaRecord) -> Self {
        match b {
            BinSchemaRecord::LogSpaced { count, lower, upper } => BinSchema::LogSpaced {
                count: *count,
                lower: *lower,
                upper: *upper,
            },
            BinSchemaRecord::Explicit(e) => BinSchema::Explicit(e.clone()),
        }
    }
}

/// Input of `mixfit simulate`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthSpecRecord {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub model: ModelRecord,
    pub n: u64,
    #[serde(default)]
    pub bins: BinSchemaRecord,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl SynthSpecRecord {
    /// Core spec; `seed` overrides the record's own.
    pub fn to_spec(&self, seed: u64) -> Result<SynthSpec> {
        Ok(SynthSpec::new(self.model.to_model()?, self.n, seed).with_bins(BinSchema::from(&self.bins)))
    }
}

/// Ground truth written next to a simulated dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruthRecord {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub dataset: String,
    pub model: ModelRecord,
    pub n: u64,
    pub seed: u64,
    pub bins: BinSchemaRecord,
    pub edges: Vec<f64>,
    pub data_fingerprint: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputRecord {
    pub path: String,
    pub bytes: u64,
    pub fingerprint: String,
}

/// Everything needed to rerun a command. Deliberately free of timestamps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub tool: String,
    pub version: String,
    pub core_version: String,
    pub subcommand: String,
    pub argv: Vec<String>,
    pub seed: u64,
    pub config: serde_json::Value,
    pub inputs: Vec<InputRecord>,
    pub outputs: Vec<String>,
}

pub fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|source| Error::Json {
        origin: "output".to_string(),
        source,
    })?;
    s.push('\n');
    Ok(s)
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str, origin: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|source| Error::Json {
        origin: origin.to_string(),
        source,
    })
}
