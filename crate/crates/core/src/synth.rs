//! Synthetic binned datasets with known truth, and brute-force oracles used
//! to check the estimator and the criteria.

use alloc::vec::Vec;

use crate::binned::{Bin, BinnedSample, MIN_LOWER_EDGE};
use crate::dist::Continuous;
use crate::error::{Error, Result};
use crate::estimation::binned_log_likelihood;
use crate::math::{exp, ln};
use crate::mixture::{MixtureModel, ModelSpec};
use crate::params::{FreeParam, ParamVector};
use crate::rng::seeded;

/// Largest grid [`grid_likelihood_oracle`] will scan.
pub const MAX_GRID_POINTS: u64 = 1_000_000;

/// Lower edges of the bins; the last edge starts the open top bracket.
#[derive(Debug, Clone, PartialEq)]
pub enum BinSchema {
    /// `count` log-spaced edges from `lower` to `upper` inclusive.
    LogSpaced { count: usize, lower: f64, upper: f64 },
    Explicit(Vec<f64>),
}

impl Default for BinSchema {
    fn default() -> Self {
        BinSchema::LogSpaced {
            count: 40,
            lower: 1.0,
            upper: 1e7,
        }
    }
}

impl BinSchema {
    pub fn edges(&self) -> Result<Vec<f64>> {
        let edges = match self {
            BinSchema::LogSpaced { count, lower, upper } => {
                if *count < 2 {
                    return Err(Error::InvalidParameter {
                        name: "count",
                        value: *count as f64,
                    });
                }
                if !(upper > lower && upper.is_finite()) {
                    return Err(Error::InvalidParameter {
                        name: "upper",
                        value: *upper,
                    });
                }
                let (a, b) = (ln(*lower), ln(*upper));
                let last = (*count - 1) as f64;
                let mut e: Vec<f64> = (0..*count).map(|i| exp(a + (b - a) * i as f64 / last)).collect();
                e[0] = *lower;
                e[*count - 1] = *upper;
                e
            }
            BinSchema::Explicit(e) => e.clone(),
        };
        validate_edges(&edges)?;
        Ok(edges)
    }
}

fn validate_edges(edges: &[f64]) -> Result<()> {
    let first = *edges.first().ok_or(Error::EmptyRange)?;
    if !(first >= MIN_LOWER_EDGE && first.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "first edge",
            value: first,
        });
    }
    for w in edges.windows(2) {
        if !(w[1] > w[0] && w[1].is_finite()) {
            return Err(Error::InvalidParameter {
                name: "edge",
                value: w[1],
            });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    pub model: MixtureModel,
    pub n: u64,
    pub bins: BinSchema,
    pub seed: u64,
}

impl SynthSpec {
    pub fn new(model: MixtureModel, n: u64, seed: u64) -> Self {
        Self {
            model,
            n,
            bins: BinSchema::default(),
            seed,
        }
    }

    pub fn with_bins(mut self, bins: BinSchema) -> Self {
        self.bins = bins;
        self
    }
}

/// `n` draws from the model, redrawing any that fall below `min`.
pub fn draw_raw(model: &MixtureModel, n: u64, min: f64, seed: u64) -> Vec<f64> {
    let mut rng = seeded(seed);
    let mut out = Vec::with_capacity(n as usize);
    while (out.len() as u64) < n {
        let x = model.draw(&mut rng);
        if x >= min {
            out.push(x);
        }
    }
    out
}

/// Bin raw values on the lower `edges`, the last bracket open, with exact
/// per-bin totals. Values below the first edge are ignored.
pub fn bin_values(values: &[f64], edges: &[f64], label: &str) -> Result<BinnedSample> {
    validate_edges(edges)?;
    let mut counts = alloc::vec![0u64; edges.len()];
    let mut totals = alloc::vec![0.0f64; edges.len()];
    for &x in values {
        let i = edges.partition_point(|e| *e <= x);
        if i == 0 {
            continue;
        }
        counts[i - 1] += 1;
        totals[i - 1] += x;
    }
    let m = edges.len();
    let bins = (0..m)
        .map(|i| {
            if i + 1 < m {
                Bin::bounded(edges[i], edges[i + 1], counts[i], Some(totals[i]))
            } else {
                Bin::open(edges[i], counts[i], Some(totals[i]))
            }
        })
        .collect();
    BinnedSample::new(bins, label)
}

/// Draw `spec.n` values from the truth and bin them. Draws below the first
/// edge are redrawn, so the counts sum to `n` exactly.
pub fn generate(spec: &SynthSpec) -> Result<(BinnedSample, ParamVector)> {
    if spec.n == 0 {
        return Err(Error::EmptySample);
    }
    let truth = ParamVector::from_model(&spec.model)?;
    let edges = spec.bins.edges()?;
    let values = draw_raw(&spec.model, spec.n, edges[0], spec.seed);
    let s = bin_values(&values, &edges, "synthetic")?;
    Ok((s, truth))
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridAxis {
    pub param: FreeParam,
    pub values: Vec<f64>,
}

/// Cartesian grid over some free parameters; the rest are held at `base`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamGrid {
    pub base: ParamVector,
    pub axes: Vec<GridAxis>,
}

impl ParamGrid {
    pub fn size(&self) -> u64 {
        self.axes
            .iter()
            .map(|a| a.values.len() as u64)
            .fold(1u64, |acc, l| acc.saturating_mul(l))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridArgmax {
    pub point: ParamVector,
    /// Index into each axis.
    pub index: Vec<usize>,
    pub lgl: f64,
    /// Points whose parameters were invalid (e.g. weights outside [0, 1]).
    pub skipped: u64,
}

/// Exhaustive scan of the binned log-likelihood over `grid`.
pub fn grid_likelihood_oracle(s: &BinnedSample, spec: ModelSpec, grid: &ParamGrid) -> Result<GridArgmax> {
    if grid.base.kind != spec.kind {
        return Err(Error::KindMismatch {
            expected: spec.kind.name(),
            found: grid.base.kind.name(),
        });
    }
    let size = grid.size();
    if size > MAX_GRID_POINTS {
        return Err(Error::GridTooLarge(size));
    }
    if size == 0 {
        return Err(Error::EmptyRange);
    }
    let mut base = grid.base.clone();
    base.k = spec.k();

    let dims = grid.axes.len();
    let mut index = alloc::vec![0usize; dims];
    let mut best: Option<(f64, Vec<usize>, ParamVector)> = None;
    let mut skipped = 0u64;
    for _ in 0..size {
        let mut theta = base.clone();
        let mut ok = true;
        for (axis, &i) in grid.axes.iter().zip(&index) {
            ok &= theta.set(axis.param, axis.values[i]).is_ok();
        }
        match theta.to_model() {
            Ok(model) if ok => {
                let l = binned_log_likelihood(s, &model);
                if best.as_ref().map_or(true, |b| l > b.0) {
                    best = Some((l, index.clone(), theta));
                }
            }
            _ => skipped += 1,
        }
        // odometer increment, last axis fastest
        for d in (0..dims).rev() {
            index[d] += 1;
            if index[d] < grid.axes[d].values.len() {
                break;
            }
            index[d] = 0;
        }
    }
    let (lgl, index, point) = best.ok_or(Error::EmptyRange)?;
    Ok(GridArgmax {
        point,
        index,
        lgl,
        skipped,
    })
}

/// Textbook one-sample KS distance between the raw sample and the model:
/// sup over sample points of |F_emp − F_model|, unscaled.
pub fn exact_ks_oracle(raw: &[f64], model: &MixtureModel) -> Result<f64> {
    if raw.is_empty() {
        return Err(Error::EmptySample);
    }
    if let Some(x) = raw.iter().find(|x| x.is_nan()) {
        return Err(Error::NonFinite(*x));
    }
    let mut xs = raw.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let mut d: f64 = 0.0;
    for (i, x) in xs.iter().enumerate() {
        let f = model.cdf(*x);
        d = d.max((i + 1) as f64 / n - f).max(f - i as f64 / n);
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mixture::ModelKind;

    fn pure_exp(beta: f64) -> MixtureModel {
        MixtureModel::exp_pwr(1.0, beta, 1e9, 1.5).unwrap()
    }

    #[test]
    fn default_schema_edges() {
        let e = BinSchema::default().edges().unwrap();
        assert_eq!(e.len(), 40);
        assert_eq!(e[0], 1.0);
        assert_eq!(e[39], 1e7);
        assert!(e.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn invalid_schemas() {
        assert!(BinSchema::Explicit(Vec::new()).edges().is_err());
        assert!(BinSchema::Explicit(alloc::vec![0.5, 2.0]).edges().is_err());
        assert!(BinSchema::Explicit(alloc::vec![1.0, 1.0]).edges().is_err());
        assert!(BinSchema::LogSpaced { count: 1, lower: 1.0, upper: 10.0 }.edges().is_err());
        assert!(BinSchema::LogSpaced { count: 5, lower: 10.0, upper: 1.0 }.edges().is_err());
    }

    #[test]
    fn generate_is_deterministic_and_exact() {
        let spec = SynthSpec::new(MixtureModel::exp_pwr(0.94, 3e-5, 44_000.0, 1.03).unwrap(), 1_000, 11);
        let (a, truth) = generate(&spec).unwrap();
        let (b, _) = generate(&spec).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.n(), 1_000);
        assert!(a.has_open_bracket());
        assert_eq!(truth.kind, ModelKind::ExpPwr);
        assert!(a.inconsistent_bin_means().is_empty());
        let (c, _) = generate(&SynthSpec { seed: 12, ..spec }).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn generate_rejects_empty() {
        let spec = SynthSpec::new(pure_exp(1e-5), 0, 0);
        assert_eq!(generate(&spec), Err(Error::EmptySample));
    }

    #[test]
    fn binning_puts_edges_in_upper_bin() {
        let s = bin_values(&[0.5, 1.0, 1.5, 2.0, 9.0], &[1.0, 2.0, 3.0], "t").unwrap();
        let counts: Vec<u64> = s.counts().collect();
        assert_eq!(counts, alloc::vec![2, 1, 1]);
        assert_eq!(s.bins()[0].total_amount, Some(2.5));
        assert_eq!(s.bins()[2].total_amount, Some(9.0));
    }

    #[test]
    fn exact_ks_single_point_at_median() {
        let m = pure_exp(1.0);
        let d = exact_ks_oracle(&[core::f64::consts::LN_2], &m).unwrap();
        assert!((d - 0.5).abs() < 1e-15);
        assert_eq!(exact_ks_oracle(&[], &m), Err(Error::EmptySample));
    }

    #[test]
    fn single_point_grid() {
        let spec = SynthSpec::new(pure_exp(1e-4), 2_000, 3);
        let (s, _) = generate(&spec).unwrap();
        let base = ParamVector::exp_pwr(0.9, 1e-4, 44_000.0, 1.5);
        let grid = ParamGrid {
            base: base.clone(),
            axes: alloc::vec![GridAxis { param: FreeParam::Beta, values: alloc::vec![2e-4] }],
        };
        let spec = ModelSpec::new(ModelKind::ExpPwr, 44_000.0).unwrap();
        let r = grid_likelihood_oracle(&s, spec, &grid).unwrap();
        assert_eq!(r.point.beta, Some(2e-4));
        assert_eq!(r.index, alloc::vec![0]);
    }

    #[test]
    fn oversized_grid_is_refused() {
        let (s, _) = generate(&SynthSpec::new(pure_exp(1e-4), 100, 3)).unwrap();
        let axis = |p| GridAxis { param: p, values: alloc::vec![0.5; 101] };
        let grid = ParamGrid {
            base: ParamVector::exp_pwr(0.9, 1e-4, 44_000.0, 1.5),
            axes: alloc::vec![axis(FreeParam::A), axis(FreeParam::Beta), axis(FreeParam::Alpha)],
        };
        let spec = ModelSpec::with_default_k(ModelKind::ExpPwr);
        assert_eq!(grid_likelihood_oracle(&s, spec, &grid), Err(Error::GridTooLarge(1_030_301)));
    }
}
