//! Finite mixtures of the component laws.
//!
//! Weights are kept as a full simplex vector in component order. The three
//! supported model kinds lay their components out as
//!
//! | kind          | components                    | weights           |
//! |---------------|-------------------------------|-------------------|
//! | `ExpPwr`      | exponential, Pareto           | A, 1−A            |
//! | `LgnPwr`      | log-normal, Pareto            | A, 1−A            |
//! | `ExpLgnPwr`   | exponential, log-normal, Pareto | A, 1−A−B, B     |
//!
//! The pdf jumps at the Pareto lower bound `k`; the cdf is continuous.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand_core::RngCore;

use crate::dist::{Continuous, ComponentDist, ExponentialDist, LogNormalDist, ParetoTailDist};
use crate::error::{Error, Result};
use crate::rng::open_unit;

const WEIGHT_SUM_TOL: f64 = 1e-12;

/// The competing mixture families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelKind {
    ExpPwr,
    LgnPwr,
    ExpLgnPwr,
}

impl ModelKind {
    pub const ALL: [ModelKind; 3] = [ModelKind::ExpPwr, ModelKind::LgnPwr, ModelKind::ExpLgnPwr];

    /// CLI / JSON name.
    pub fn name(self) -> &'static str {
        match self {
            Self::ExpPwr => "exp-pwr",
            Self::LgnPwr => "lgn-pwr",
            Self::ExpLgnPwr => "exp-lgn-pwr",
        }
    }

    /// Column heading used in the text tables.
    pub fn title(self) -> &'static str {
        match self {
            Self::ExpPwr => "Exp / Pwr-Law",
            Self::LgnPwr => "lg-Normal / Pwr-Law",
            Self::ExpLgnPwr => "Exp / lg-Normal / Pwr-Law",
        }
    }

    pub fn component_count(self) -> usize {
        match self {
            Self::ExpPwr | Self::LgnPwr => 2,
            Self::ExpLgnPwr => 3,
        }
    }

    /// Number of estimated parameters κ. The lower bound `k` is held fixed
    /// and does not count.
    pub fn free_param_count(self) -> usize {
        match self {
            Self::ExpPwr => 3,
            Self::LgnPwr => 4,
            Self::ExpLgnPwr => 6,
        }
    }

    /// Default power-law lower bound for each family.
    pub fn default_k(self) -> f64 {
        match self {
            Self::ExpPwr => 44_000.0,
            Self::LgnPwr => 46_000.0,
            Self::ExpLgnPwr => 45_000.0,
        }
    }

    pub fn has_exponential(self) -> bool {
        matches!(self, Self::ExpPwr | Self::ExpLgnPwr)
    }

    pub fn has_log_normal(self) -> bool {
        matches!(self, Self::LgnPwr | Self::ExpLgnPwr)
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "exp-pwr" => Ok(Self::ExpPwr),
            "lgn-pwr" => Ok(Self::LgnPwr),
            "exp-lgn-pwr" => Ok(Self::ExpLgnPwr),
            _ => Err(Error::UnsupportedModel),
        }
    }
}

/// A model family together with its fixed power-law lower bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelSpec {
    pub kind: ModelKind,
    k_fixed: f64,
}

impl ModelSpec {
    pub fn new(kind: ModelKind, k_fixed: f64) -> Result<Self> {
        if !(k_fixed.is_finite() && k_fixed > 0.0) {
            return Err(Error::InvalidParameter {
                name: "k",
                value: k_fixed,
            });
        }
        Ok(Self { kind, k_fixed })
    }

    pub fn with_default_k(kind: ModelKind) -> Self {
        Self {
            kind,
            k_fixed: kind.default_k(),
        }
    }

    pub fn k(&self) -> f64 {
        self.k_fixed
    }
}

/// Weighted combination of two or three components.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureModel {
    components: Vec<ComponentDist>,
    weights: Vec<f64>,
}

impl MixtureModel {
    pub fn new(components: Vec<ComponentDist>, weights: Vec<f64>) -> Result<Self> {
        if !(2..=3).contains(&components.len()) {
            return Err(Error::ComponentCount(components.len()));
        }
        if weights.len() != components.len() {
            return Err(Error::InvalidWeights(format!(
                "{} weights for {} components",
                weights.len(),
                components.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(**w >= 0.0 && **w <= 1.0)) {
            return Err(Error::InvalidWeights(format!("weight {w} outside [0, 1]")));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidWeights(format!("weights sum to {total}")));
        }
        Ok(Self {
            components,
            weights,
        })
    }

    /// A·Exp(β) + (1−A)·Pareto(k, α).
    pub fn exp_pwr(a: f64, beta: f64, k: f64, alpha: f64) -> Result<Self> {
        Self::new(
            alloc::vec![
                ComponentDist::exponential(beta)?,
                ComponentDist::pareto(k, alpha)?
            ],
            alloc::vec![a, 1.0 - a],
        )
    }

    /// A·lgN(μ, σ) + (1−A)·Pareto(k, α).
    pub fn lgn_pwr(a: f64, mu: f64, sigma: f64, k: f64, alpha: f64) -> Result<Self> {
        Self::new(
            alloc::vec![
                ComponentDist::log_normal(mu, sigma)?,
                ComponentDist::pareto(k, alpha)?
            ],
            alloc::vec![a, 1.0 - a],
        )
    }

    /// A·Exp(β) + (1−A−B)·lgN(μ, σ) + B·Pareto(k, α).
    #[allow(clippy::too_many_arguments)]
    pub fn exp_lgn_pwr(
        a: f64,
        b: f64,
        beta: f64,
        mu: f64,
        sigma: f64,
        k: f64,
        alpha: f64,
    ) -> Result<Self> {
        Self::new(
            alloc::vec![
                ComponentDist::exponential(beta)?,
                ComponentDist::log_normal(mu, sigma)?,
                ComponentDist::pareto(k, alpha)?
            ],
            alloc::vec![a, 1.0 - a - b, b],
        )
    }

    pub fn components(&self) -> &[ComponentDist] {
        &self.components
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Which supported family this mixture belongs to, if any.
    pub fn kind(&self) -> Option<ModelKind> {
        use ComponentDist::*;
        match self.components.as_slice() {
            [Exponential(_), Pareto(_)] => Some(ModelKind::ExpPwr),
            [LogNormal(_), Pareto(_)] => Some(ModelKind::LgnPwr),
            [Exponential(_), LogNormal(_), Pareto(_)] => Some(ModelKind::ExpLgnPwr),
            _ => None,
        }
    }

    /// Weight of the leading component (exponential, or log-normal for `LgnPwr`).
    pub fn a(&self) -> f64 {
        self.weights[0]
    }

    /// Weight of the power-law tail in the three-component model.
    pub fn b(&self) -> Option<f64> {
        match self.kind() {
            Some(ModelKind::ExpLgnPwr) => Some(self.weights[2]),
            _ => None,
        }
    }

    pub fn exponential(&self) -> Option<&ExponentialDist> {
        self.components.iter().find_map(|c| match c {
            ComponentDist::Exponential(d) => Some(d),
            _ => None,
        })
    }

    pub fn log_normal(&self) -> Option<&LogNormalDist> {
        self.components.iter().find_map(|c| match c {
            ComponentDist::LogNormal(d) => Some(d),
            _ => None,
        })
    }

    pub fn pareto(&self) -> Option<&ParetoTailDist> {
        self.components.iter().find_map(|c| match c {
            ComponentDist::Pareto(d) => Some(d),
            _ => None,
        })
    }

    /// Temperature 1/β of the exponential component.
    pub fn temperature(&self) -> Option<f64> {
        self.exponential().map(ExponentialDist::temperature)
    }

    fn weighted(&self, f: impl Fn(&ComponentDist) -> f64) -> f64 {
        self.components
            .iter()
            .zip(&self.weights)
            .filter(|(_, w)| **w > 0.0)
            .map(|(c, w)| w * f(c))
            .sum()
    }

    /// Distribution of X / `scale`; used for temperature normalization.
    pub fn rescaled(&self, scale: f64) -> Result<Self> {
        let components = self
            .components
            .iter()
            .map(|c| c.rescaled(scale))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            components,
            weights: self.weights.clone(),
        })
    }

    /// Smallest x with cdf(x) ≥ p, found by bisection on a log scale.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::ProbabilityOutOfRange(p));
        }
        // bracket between the extreme component quantiles
        let mut lo = f64::INFINITY;
        let mut hi: f64 = 0.0;
        for (c, w) in self.components.iter().zip(&self.weights) {
            if *w > 0.0 {
                lo = lo.min(c.quantile(p)?);
                hi = hi.max(c.quantile(p)?);
            }
        }
        if self.cdf(lo) >= p {
            return Ok(lo);
        }
        for _ in 0..200 {
            let mid = if lo > 0.0 {
                crate::math::sqrt(lo * hi)
            } else {
                0.5 * (lo + hi)
            };
            if mid <= lo || mid >= hi {
                break;
            }
            if self.cdf(mid) < p {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(hi)
    }

    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.draw(rng)).collect()
    }

    /// Component index from the weights, then that component's draw.
    pub fn draw_with_label<R: RngCore + ?Sized>(&self, rng: &mut R) -> (usize, f64) {
        let u = open_unit(rng);
        let mut acc = 0.0;
        let mut idx = self.weights.len() - 1;
        for (i, w) in self.weights.iter().enumerate() {
            acc += w;
            if u < acc {
                idx = i;
                break;
            }
        }
        // weight rounding can leave the chosen tail slot at zero weight
        while self.weights[idx] == 0.0 {
            idx -= 1;
        }
        (idx, self.components[idx].draw(rng))
    }
}

impl Continuous for MixtureModel {
    fn pdf(&self, x: f64) -> f64 {
        self.weighted(|c| c.pdf(x))
    }

    fn cdf(&self, x: f64) -> f64 {
        self.weighted(|c| c.cdf(x)).min(1.0)
    }

    fn ccdf(&self, x: f64) -> f64 {
        self.weighted(|c| c.ccdf(x)).min(1.0)
    }

    fn quantile(&self, p: f64) -> Result<f64> {
        MixtureModel::quantile(self, p)
    }

    /// `+∞` as soon as any weighted component has no mean.
    fn mean(&self) -> f64 {
        self.weighted(|c| c.mean())
    }

    fn draw<R: RngCore + ?Sized>(&self, rng: &mut R) -> f64 {
        self.draw_with_label(rng).1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::exp;
    use crate::rng::seeded;

    fn singles_1998() -> MixtureModel {
        MixtureModel::exp_lgn_pwr(0.704, 0.025, 6.86e-5, 10.25, 0.615, 45_000.0, 1.199).unwrap()
    }

    #[test]
    fn degenerate_weight_is_pure_exponential() {
        let m = MixtureModel::exp_pwr(1.0, 2e-5, 44_000.0, 1.1).unwrap();
        let e = ExponentialDist::new(2e-5).unwrap();
        for &x in &[0.0, 1.0, 1e4, 4.4e4, 1e5, 1e6] {
            assert_eq!(m.pdf(x), e.pdf(x));
            assert_eq!(m.cdf(x), e.cdf(x));
        }
    }

    #[test]
    fn below_k_only_exponential_contributes() {
        let (a, beta) = (0.944, 2.98e-5);
        let m = MixtureModel::exp_pwr(a, beta, 44_000.0, 1.033).unwrap();
        let expected = a * beta * exp(-beta * 20_000.0);
        assert!((m.pdf(20_000.0) - expected).abs() <= 1e-15 * expected);
    }

    #[test]
    fn cdf_examples() {
        for m in [
            MixtureModel::exp_pwr(0.5, 1.0, 1.0, 1.0).unwrap(),
            singles_1998(),
            MixtureModel::lgn_pwr(0.9, 10.0, 1.1, 46_000.0, 4.0).unwrap(),
        ] {
            assert_eq!(m.cdf(0.0), 0.0);
            assert_eq!(m.cdf(f64::INFINITY), 1.0);
        }
        let m = MixtureModel::exp_pwr(0.5, 1.0, 1.0, 1.0).unwrap();
        assert!((m.cdf(1.0) - 0.5 * (1.0 - exp(-1.0))).abs() < 1e-16);
        let c = singles_1998().cdf(1e6);
        assert!(c > 0.99 && c < 1.0);
    }

    #[test]
    fn weights_are_validated() {
        let comps = || {
            alloc::vec![
                ComponentDist::exponential(1.0).unwrap(),
                ComponentDist::pareto(1.0, 1.0).unwrap()
            ]
        };
        assert!(MixtureModel::new(comps(), alloc::vec![0.5, 0.6]).is_err());
        assert!(MixtureModel::new(comps(), alloc::vec![1.2, -0.2]).is_err());
        assert!(MixtureModel::new(comps(), alloc::vec![1.0]).is_err());
        assert!(MixtureModel::new(alloc::vec![ComponentDist::exponential(1.0).unwrap()], alloc::vec![1.0]).is_err());
        assert!(MixtureModel::exp_lgn_pwr(0.7, 0.4, 1.0, 0.0, 1.0, 1.0, 1.0).is_err());
        assert!(MixtureModel::new(comps(), alloc::vec![0.3, 0.7]).is_ok());
    }

    #[test]
    fn accessors_follow_naming() {
        let m = singles_1998();
        assert_eq!(m.kind(), Some(ModelKind::ExpLgnPwr));
        assert_eq!(m.a(), 0.704);
        assert_eq!(m.b(), Some(0.025));
        assert!((m.weights()[1] - 0.271).abs() < 1e-15);
        assert!((m.temperature().unwrap() - 1.0 / 6.86e-5).abs() < 1e-9);
        assert_eq!(m.pareto().unwrap().k(), 45_000.0);
        let two = MixtureModel::lgn_pwr(0.925, 9.98, 1.119, 46_000.0, 4.122).unwrap();
        assert_eq!(two.b(), None);
        assert_eq!(two.temperature(), None);
    }

    #[test]
    fn mean_is_infinite_with_heavy_tail() {
        let m = MixtureModel::exp_pwr(0.945, 2.21e-5, 44_000.0, 0.882).unwrap();
        assert_eq!(m.mean(), f64::INFINITY);
        let light = MixtureModel::exp_pwr(0.5, 1.0, 1.0, 3.0).unwrap();
        assert!((light.mean() - (0.5 * 1.0 + 0.5 * 1.5)).abs() < 1e-15);
    }

    #[test]
    fn sampling_with_unit_weight_uses_first_component() {
        let m = MixtureModel::exp_pwr(1.0, 1.0, 1.0, 1.0).unwrap();
        let mut rng = seeded(3);
        for _ in 0..100 {
            assert_eq!(m.draw_with_label(&mut rng).0, 0);
        }
        assert_eq!(m.sample(&mut seeded(5), 50), m.sample(&mut seeded(5), 50));
    }

    #[test]
    fn mixture_quantile_inverts_cdf() {
        let m = singles_1998();
        for &p in &[1e-6, 0.01, 0.3, 0.5, 0.9, 0.99, 0.999_999, 1.0 - 1e-10] {
            let x = m.quantile(p).unwrap();
            assert!((m.cdf(x) - p).abs() <= 1e-12 * p.max(1e-3), "p={p}");
        }
    }

    #[test]
    fn model_kind_names_round_trip() {
        for k in ModelKind::ALL {
            assert_eq!(k.name().parse::<ModelKind>().unwrap(), k);
        }
        assert!("gamma".parse::<ModelKind>().is_err());
        assert!(ModelSpec::new(ModelKind::ExpPwr, 0.0).is_err());
    }
}
