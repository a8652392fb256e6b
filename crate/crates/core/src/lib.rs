//! Finite-mixture models of personal income fit to binned tabulations.
//!
//! Three mixtures are supported, each with a Pareto upper tail above a fixed
//! lower bound `k`:
//!
//! | kind          | components                          |
//! |---------------|-------------------------------------|
//! | `exp-pwr`     | exponential + Pareto                |
//! | `lgn-pwr`     | log-normal + Pareto                 |
//! | `exp-lgn-pwr` | exponential + log-normal + Pareto   |
//!
//! Parameters are estimated by maximizing the binned log-likelihood
//! [`estimation::fit`], and fitted models are compared with
//! [`criteria::compare_models`] (KL, ID, RI, KS, AIC, BIC). The crate is
//! `no_std` with `alloc`; file formats and the CLI live in `mixfit`.

#![cfg_attr(not(test), no_std)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

mod math;

pub mod binned;
pub mod criteria;
pub mod diagnostics;
pub mod dist;
pub mod error;
pub mod estimation;
pub mod mixture;
pub mod optimize;
pub mod params;
pub mod rng;
pub mod special;
pub mod synth;

pub use binned::{Bin, BinnedSample, DroppedRow, TableRow};
pub use criteria::{compare_models, ComparisonReport, CriteriaReport};
pub use dist::{ComponentDist, Continuous, ExponentialDist, LogNormalDist, ParetoTailDist};
pub use error::{Error, Result};
pub use estimation::{fit, profile_k, FitOptions, FitResult, HessianStatus, StdErrors};
pub use mixture::{MixtureModel, ModelKind, ModelSpec};
pub use params::{FreeParam, ParamVector};
pub use synth::{generate, BinSchema, SynthSpec};
