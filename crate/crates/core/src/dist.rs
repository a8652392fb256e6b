//! Parametric building blocks: exponential, log-normal and Pareto tail.
//!
//! All three expose the same [`Continuous`] surface. `cdf` and `ccdf` are
//! each evaluated in their own numerically stable form, so `ccdf` stays
//! accurate in the far tail where `1 - cdf` would round to zero.

use alloc::vec::Vec;

use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::math::{exp, exp_m1, ln, ln_1p, powf};
use crate::rng::open_unit;
use crate::special::{normal_cdf, normal_pdf, normal_quantile, normal_sf};

/// Common interface of the mixture components.
pub trait Continuous {
    /// Density at `x`. Zero outside the support.
    fn pdf(&self, x: f64) -> f64;

    /// P(X ≤ x). `+∞` maps to 1.
    fn cdf(&self, x: f64) -> f64;

    /// P(X > x).
    fn ccdf(&self, x: f64) -> f64;

    /// Inverse cdf for `p` in (0, 1).
    fn quantile(&self, p: f64) -> Result<f64>;

    /// Expected value; `+∞` when it does not exist.
    fn mean(&self) -> f64;

    /// One inverse-transform draw.
    fn draw<R: RngCore + ?Sized>(&self, rng: &mut R) -> f64;

    fn pdf_checked(&self, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(Error::NonFinite(x));
        }
        if x < 0.0 {
            return Err(Error::Negative(x));
        }
        Ok(self.pdf(x))
    }

    fn cdf_checked(&self, x: f64) -> Result<f64> {
        if x.is_nan() || x == f64::NEG_INFINITY {
            return Err(Error::NonFinite(x));
        }
        Ok(self.cdf(x))
    }

    fn sample<R: RngCore + ?Sized>(&self, rng: &mut R, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.draw(rng)).collect()
    }
}

fn check_probability(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::ProbabilityOutOfRange(p))
    }
}

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter { name, value })
    }
}

/// Exponential law with rate `beta` (the thermal component).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentialDist {
    beta: f64,
}

impl ExponentialDist {
    pub fn new(beta: f64) -> Result<Self> {
        Ok(Self {
            beta: positive("beta", beta)?,
        })
    }

    /// Construct from the temperature T = 1/β.
    pub fn from_temperature(temperature: f64) -> Result<Self> {
        Self::new(1.0 / positive("temperature", temperature)?)
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn temperature(&self) -> f64 {
        1.0 / self.beta
    }
}

impl Continuous for ExponentialDist {
    fn pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            0.0
        } else {
            self.beta * exp(-self.beta * x)
        }
    }

    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else {
            -exp_m1(-self.beta * x)
        }
    }

    fn ccdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            1.0
        } else {
            exp(-self.beta * x)
        }
    }

    fn quantile(&self, p: f64) -> Result<f64> {
        check_probability(p)?;
        Ok(-ln_1p(-p) / self.beta)
    }

    fn mean(&self) -> f64 {
        1.0 / self.beta
    }

    fn draw<R: RngCore + ?Sized>(&self, rng: &mut R) -> f64 {
        // u plays the role of the ccdf value
        -ln(open_unit(rng)) / self.beta
    }
}

/// Log-normal law: ln X ~ N(mu, sigma²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogNormalDist {
    mu: f64,
    sigma: f64,
}

impl LogNormalDist {
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        if !mu.is_finite() {
            return Err(Error::InvalidParameter {
                name: "mu",
                value: mu,
            });
        }
        Ok(Self {
            mu,
            sigma: positive("sigma", sigma)?,
        })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn median(&self) -> f64 {
        exp(self.mu)
    }

    #[inline]
    fn z(&self, x: f64) -> f64 {
        (ln(x) - self.mu) / self.sigma
    }
}

impl Continuous for LogNormalDist {
    fn pdf(&self, x: f64) -> f64 {
        if x <= 0.0 || x == f64::INFINITY {
            0.0
        } else {
            normal_pdf(self.z(x)) / (x * self.sigma)
        }
    }

    fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else if x == f64::INFINITY {
            1.0
        } else {
            normal_cdf(self.z(x))
        }
    }

    fn ccdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            1.0
        } else if x == f64::INFINITY {
            0.0
        } else {
            normal_sf(self.z(x))
        }
    }

    fn quantile(&self, p: f64) -> Result<f64> {
        check_probability(p)?;
        Ok(exp(self.mu + self.sigma * normal_quantile(p)))
    }

    fn mean(&self) -> f64 {
        exp(self.mu + 0.5 * self.sigma * self.sigma)
    }

    fn draw<R: RngCore + ?Sized>(&self, rng: &mut R) -> f64 {
        exp(self.mu + self.sigma * normal_quantile(open_unit(rng)))
    }
}

/// Pareto tail on `[k, ∞)` with exponent `alpha` (the superthermal component).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParetoTailDist {
    k: f64,
    alpha: f64,
}

impl ParetoTailDist {
    pub fn new(k: f64, alpha: f64) -> Result<Self> {
        Ok(Self {
            k: positive("k", k)?,
            alpha: positive("alpha", alpha)?,
        })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// ln(k / x) · α, the log of the ccdf on the support.
    #[inline]
    fn log_ccdf(&self, x: f64) -> f64 {
        self.alpha * ln(self.k / x)
    }
}

impl Continuous for ParetoTailDist {
    fn pdf(&self, x: f64) -> f64 {
        if x < self.k || x == f64::INFINITY {
            0.0
        } else {
            self.alpha / x * exp(self.log_ccdf(x))
        }
    }

    fn cdf(&self, x: f64) -> f64 {
        if x <= self.k {
            0.0
        } else if x == f64::INFINITY {
            1.0
        } else {
            -exp_m1(self.log_ccdf(x))
        }
    }

    fn ccdf(&self, x: f64) -> f64 {
        if x <= self.k {
            1.0
        } else if x == f64::INFINITY {
            0.0
        } else {
            exp(self.log_ccdf(x))
        }
    }

    fn quantile(&self, p: f64) -> Result<f64> {
        check_probability(p)?;
        Ok(self.k * exp(-ln_1p(-p) / self.alpha))
    }

    /// `+∞` whenever α ≤ 1.
    fn mean(&self) -> f64 {
        if self.alpha <= 1.0 {
            f64::INFINITY
        } else {
            self.alpha * self.k / (self.alpha - 1.0)
        }
    }

    fn draw<R: RngCore + ?Sized>(&self, rng: &mut R) -> f64 {
        self.k * powf(open_unit(rng), -1.0 / self.alpha)
    }
}

/// One mixture component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ComponentDist {
    Exponential(ExponentialDist),
    LogNormal(LogNormalDist),
    Pareto(ParetoTailDist),
}

impl ComponentDist {
    pub fn exponential(beta: f64) -> Result<Self> {
        ExponentialDist::new(beta).map(Self::Exponential)
    }

    pub fn log_normal(mu: f64, sigma: f64) -> Result<Self> {
        LogNormalDist::new(mu, sigma).map(Self::LogNormal)
    }

    pub fn pareto(k: f64, alpha: f64) -> Result<Self> {
        ParetoTailDist::new(k, alpha).map(Self::Pareto)
    }

    pub fn family(&self) -> &'static str {
        match self {
            Self::Exponential(_) => "exponential",
            Self::LogNormal(_) => "log-normal",
            Self::Pareto(_) => "pareto",
        }
    }

    /// Distribution of X / `scale`.
    pub fn rescaled(&self, scale: f64) -> Result<Self> {
        positive("scale", scale)?;
        match *self {
            Self::Exponential(d) => Self::exponential(d.beta * scale),
            Self::LogNormal(d) => Self::log_normal(d.mu - ln(scale), d.sigma),
            Self::Pareto(d) => Self::pareto(d.k / scale, d.alpha),
        }
    }
}

macro_rules! delegate {
    ($self:ident, $d:ident => $e:expr) => {
        match $self {
            ComponentDist::Exponential($d) => $e,
            ComponentDist::LogNormal($d) => $e,
            ComponentDist::Pareto($d) => $e,
        }
    };
}

impl Continuous for ComponentDist {
    fn pdf(&self, x: f64) -> f64 {
        delegate!(self, d => d.pdf(x))
    }

    fn cdf(&self, x: f64) -> f64 {
        delegate!(self, d => d.cdf(x))
    }

    fn ccdf(&self, x: f64) -> f64 {
        delegate!(self, d => d.ccdf(x))
    }

    fn quantile(&self, p: f64) -> Result<f64> {
        delegate!(self, d => d.quantile(p))
    }

    fn mean(&self) -> f64 {
        delegate!(self, d => d.mean())
    }

    fn draw<R: RngCore + ?Sized>(&self, rng: &mut R) -> f64 {
        delegate!(self, d => d.draw(rng))
    }
}
