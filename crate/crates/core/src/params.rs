//! Parameter vectors for the three model kinds and the unconstrained
//! reparameterization the optimizer works in.
//!
//! Weights map to additive log-ratios against the Pareto weight; β, σ and α
//! map to their logarithms; μ is left as is. `k` is never free.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::math::{exp, ln};
use crate::mixture::{MixtureModel, ModelKind, ModelSpec};

/// A parameter the estimator may vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FreeParam {
    A,
    B,
    Beta,
    Mu,
    Sigma,
    Alpha,
}

impl FreeParam {
    pub fn name(self) -> &'static str {
        match self {
            Self::A => "A",
            Self::B => "B",
            Self::Beta => "beta",
            Self::Mu => "mu",
            Self::Sigma => "sigma",
            Self::Alpha => "alpha",
        }
    }
}

impl fmt::Display for FreeParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl ModelKind {
    /// Free parameters in reporting order.
    pub fn free_params(self) -> &'static [FreeParam] {
        use FreeParam::*;
        match self {
            ModelKind::ExpPwr => &[A, Beta, Alpha],
            ModelKind::LgnPwr => &[A, Mu, Sigma, Alpha],
            ModelKind::ExpLgnPwr => &[A, B, Beta, Mu, Sigma, Alpha],
        }
    }
}

/// Full parameter set θ of one model kind.
///
/// `weights` follow the component order of [`MixtureModel`]; `beta` is set
/// iff the kind has an exponential, `mu`/`sigma` iff it has a log-normal.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamVector {
    pub kind: ModelKind,
    pub weights: Vec<f64>,
    pub beta: Option<f64>,
    pub mu: Option<f64>,
    pub sigma: Option<f64>,
    pub alpha: f64,
    pub k: f64,
}

impl ParamVector {
    pub fn exp_pwr(a: f64, beta: f64, k: f64, alpha: f64) -> Self {
        Self {
            kind: ModelKind::ExpPwr,
            weights: vec![a, 1.0 - a],
            beta: Some(beta),
            mu: None,
            sigma: None,
            alpha,
            k,
        }
    }

    pub fn lgn_pwr(a: f64, mu: f64, sigma: f64, k: f64, alpha: f64) -> Self {
        Self {
            kind: ModelKind::LgnPwr,
            weights: vec![a, 1.0 - a],
            beta: None,
            mu: Some(mu),
            sigma: Some(sigma),
            alpha,
            k,
        }
    }

    #[allow(clippy::too_many_arguments)]
    pub fn exp_lgn_pwr(a: f64, b: f64, beta: f64, mu: f64, sigma: f64, k: f64, alpha: f64) -> Self {
        Self {
            kind: ModelKind::ExpLgnPwr,
            weights: vec![a, 1.0 - a - b, b],
            beta: Some(beta),
            mu: Some(mu),
            sigma: Some(sigma),
            alpha,
            k,
        }
    }

    /// Recover θ from a mixture of one of the supported kinds.
    pub fn from_model(model: &MixtureModel) -> Result<Self> {
        let kind = model.kind().ok_or(Error::UnsupportedModel)?;
        let pareto = model.pareto().ok_or(Error::UnsupportedModel)?;
        Ok(Self {
            kind,
            weights: model.weights().to_vec(),
            beta: model.exponential().map(|e| e.beta()),
            mu: model.log_normal().map(|l| l.mu()),
            sigma: model.log_normal().map(|l| l.sigma()),
            alpha: pareto.alpha(),
            k: pareto.k(),
        })
    }

    pub fn spec(&self) -> Result<ModelSpec> {
        ModelSpec::new(self.kind, self.k)
    }

    pub fn a(&self) -> f64 {
        self.weights[0]
    }

    pub fn b(&self) -> Option<f64> {
        (self.kind == ModelKind::ExpLgnPwr).then(|| self.weights[2])
    }

    fn required(&self, name: &'static str, v: Option<f64>) -> Result<f64> {
        v.ok_or(Error::InvalidParameter {
            name,
            value: f64::NAN,
        })
    }

    /// Build the mixture. Fails if θ is inadmissible.
    pub fn to_model(&self) -> Result<MixtureModel> {
        if self.weights.len() != self.kind.component_count() {
            return Err(Error::ComponentCount(self.weights.len()));
        }
        match self.kind {
            ModelKind::ExpPwr => MixtureModel::exp_pwr(
                self.weights[0],
                self.required("beta", self.beta)?,
                self.k,
                self.alpha,
            ),
            ModelKind::LgnPwr => MixtureModel::lgn_pwr(
                self.weights[0],
                self.required("mu", self.mu)?,
                self.required("sigma", self.sigma)?,
                self.k,
                self.alpha,
            ),
            ModelKind::ExpLgnPwr => {
                let comps = vec![
                    crate::dist::ComponentDist::exponential(self.required("beta", self.beta)?)?,
                    crate::dist::ComponentDist::log_normal(
                        self.required("mu", self.mu)?,
                        self.required("sigma", self.sigma)?,
                    )?,
                    crate::dist::ComponentDist::pareto(self.k, self.alpha)?,
                ];
                MixtureModel::new(comps, self.weights.clone())
            }
        }
    }

    pub fn get(&self, p: FreeParam) -> Option<f64> {
        match p {
            FreeParam::A => Some(self.weights[0]),
            FreeParam::B => self.b(),
            FreeParam::Beta => self.beta,
            FreeParam::Mu => self.mu,
            FreeParam::Sigma => self.sigma,
            FreeParam::Alpha => Some(self.alpha),
        }
    }

    /// Set one free parameter, keeping the weights on the simplex by
    /// adjusting the middle (log-normal) weight for the three-component
    /// kind and the tail weight for the two-component kinds.
    pub fn set(&mut self, p: FreeParam, value: f64) -> Result<()> {
        let mismatch = Error::KindMismatch {
            expected: self.kind.name(),
            found: p.name(),
        };
        match (p, self.kind) {
            (FreeParam::A, ModelKind::ExpLgnPwr) => {
                self.weights[0] = value;
                self.weights[1] = 1.0 - value - self.weights[2];
            }
            (FreeParam::A, _) => {
                self.weights[0] = value;
                self.weights[1] = 1.0 - value;
            }
            (FreeParam::B, ModelKind::ExpLgnPwr) => {
                self.weights[2] = value;
                self.weights[1] = 1.0 - self.weights[0] - value;
            }
            (FreeParam::Beta, k) if k.has_exponential() => self.beta = Some(value),
            (FreeParam::Mu, k) if k.has_log_normal() => self.mu = Some(value),
            (FreeParam::Sigma, k) if k.has_log_normal() => self.sigma = Some(value),
            (FreeParam::Alpha, _) => self.alpha = value,
            _ => return Err(mismatch),
        }
        Ok(())
    }

    /// Free parameter values in [`ModelKind::free_params`] order.
    pub fn free_values(&self) -> Vec<f64> {
        self.kind
            .free_params()
            .iter()
            .map(|p| self.get(*p).unwrap_or(f64::NAN))
            .collect()
    }

    pub fn with_free_values(&self, values: &[f64]) -> Result<Self> {
        let params = self.kind.free_params();
        if values.len() != params.len() {
            return Err(Error::LengthMismatch(values.len(), params.len()));
        }
        let mut out = self.clone();
        for (p, v) in params.iter().zip(values) {
            out.set(*p, *v)?;
        }
        Ok(out)
    }

    /// Map θ to ℝ^κ. Requires strictly positive weights and parameters.
    pub fn to_unconstrained(&self) -> Result<Vec<f64>> {
        self.to_model()?;
        let w = &self.weights;
        let reference = *w.last().unwrap();
        let mut z = Vec::with_capacity(self.kind.free_param_count());
        for (i, &wi) in w[..w.len() - 1].iter().enumerate() {
            if !(wi > 0.0 && reference > 0.0) {
                return Err(Error::InvalidWeights(alloc::format!(
                    "weight {i} must be strictly inside the simplex for the log-ratio transform"
                )));
            }
            z.push(ln(wi) - ln(reference));
        }
        if let Some(beta) = self.beta {
            z.push(ln(beta));
        }
        if let (Some(mu), Some(sigma)) = (self.mu, self.sigma) {
            z.push(mu);
            z.push(ln(sigma));
        }
        z.push(ln(self.alpha));
        Ok(z)
    }

    /// Inverse of [`to_unconstrained`](Self::to_unconstrained).
    pub fn from_unconstrained(spec: ModelSpec, z: &[f64]) -> Result<Self> {
        let kind = spec.kind;
        if z.len() != kind.free_param_count() {
            return Err(Error::LengthMismatch(z.len(), kind.free_param_count()));
        }
        let ratios = kind.component_count() - 1;
        let weights = softmax_with_reference(&z[..ratios]);
        let mut rest = z[ratios..].iter().copied();
        let mut next = || rest.next().unwrap();
        let beta = kind.has_exponential().then(|| exp(next()));
        let (mu, sigma) = if kind.has_log_normal() {
            let mu = next();
            (Some(mu), Some(exp(next())))
        } else {
            (None, None)
        };
        let alpha = exp(next());
        Ok(Self {
            kind,
            weights,
            beta,
            mu,
            sigma,
            alpha,
            k: spec.k(),
        })
    }
}

/// Weights (e^{z_1}, …, e^{z_m}, 1) / (1 + Σ e^{z_i}), computed without overflow.
fn softmax_with_reference(z: &[f64]) -> Vec<f64> {
    let top = z.iter().copied().fold(0.0f64, f64::max);
    let mut w: Vec<f64> = z.iter().map(|zi| exp(zi - top)).collect();
    w.push(exp(-top));
    let total: f64 = w.iter().sum();
    for wi in &mut w {
        *wi /= total;
    }
    // put rounding residue on the largest weight so the sum is 1 to an ulp
    let sum: f64 = w.iter().sum();
    if let Some(max) = w.iter_mut().max_by(|a, b| a.total_cmp(b)) {
        *max += 1.0 - sum;
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn free_values_follow_table_order() {
        let p = ParamVector::exp_lgn_pwr(0.704, 0.025, 6.86e-5, 10.25, 0.615, 45_000.0, 1.199);
        assert_eq!(p.free_values(), vec![0.704, 0.025, 6.86e-5, 10.25, 0.615, 1.199]);
        assert_eq!(p.kind.free_params().len(), p.kind.free_param_count());
        let q = p.with_free_values(&[0.6, 0.1, 7e-5, 10.0, 0.7, 1.3]).unwrap();
        assert!((q.weights[1] - 0.3).abs() < 1e-15);
        assert!(q.with_free_values(&[1.0]).is_err());
    }

    #[test]
    fn model_round_trip() {
        let p = ParamVector::lgn_pwr(0.925, 9.98, 1.119, 46_000.0, 4.122);
        let back = ParamVector::from_model(&p.to_model().unwrap()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn inadmissible_vectors_fail_to_build() {
        assert!(ParamVector::exp_pwr(1.2, 1e-5, 44_000.0, 1.0).to_model().is_err());
        assert!(ParamVector::exp_pwr(0.9, -1e-5, 44_000.0, 1.0).to_model().is_err());
        let mut p = ParamVector::exp_pwr(0.9, 1e-5, 44_000.0, 1.0);
        assert!(p.set(FreeParam::Mu, 3.0).is_err());
        p.beta = None;
        assert!(p.to_model().is_err());
    }

    #[test]
    fn boundary_weights_have_no_log_ratio() {
        assert!(ParamVector::exp_pwr(1.0, 1e-5, 44_000.0, 1.0).to_unconstrained().is_err());
    }

    proptest! {
        #[test]
        fn transform_round_trips(
            a in 0.01f64..0.95,
            bfrac in 0.01f64..0.95,
            beta in 1e-7f64..1e-2,
            mu in 5.0f64..15.0,
            sigma in 0.05f64..3.0,
            alpha in 0.3f64..30.0,
        ) {
            let b = (1.0 - a) * bfrac;
            let cases = [
                ParamVector::exp_pwr(a, beta, 45_000.0, alpha),
                ParamVector::lgn_pwr(a, mu, sigma, 45_000.0, alpha),
                ParamVector::exp_lgn_pwr(a, b * 0.999, beta, mu, sigma, 45_000.0, alpha),
            ];
            for p in cases {
                let z = p.to_unconstrained().unwrap();
                let back = ParamVector::from_unconstrained(p.spec().unwrap(), &z).unwrap();
                for (x, y) in back.free_values().iter().zip(p.free_values()) {
                    prop_assert!(rel(*x, y) < 1e-12, "{} vs {}", x, y);
                }
                prop_assert!((back.weights.iter().sum::<f64>() - 1.0).abs() < 1e-15);
            }
        }
    }
}
