//! Graphical-method diagnostics: temperature-normalized ccdf overlays, a
//! numeric collapse metric, and a linearity probe for ln(ccdf) against income.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::binned::BinnedSample;
use crate::dist::Continuous;
use crate::error::{Error, Result};
use crate::math::{exp, ln};
use crate::mixture::MixtureModel;

pub const DEFAULT_COLLAPSE_EPSILON: f64 = 0.02;
pub const COLLAPSE_GRID_POINTS: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub struct CollapseReport {
    pub labels: Vec<String>,
    pub temperatures: Vec<f64>,
    /// Symmetric matrix of sup-distances between interpolated normalized ccdfs.
    pub gaps: Vec<Vec<f64>>,
    /// Normalized-income interval the comparison grid spans.
    pub grid_range: (f64, f64),
    pub epsilon: f64,
    pub collapsed: bool,
}

impl CollapseReport {
    pub fn max_gap(&self) -> f64 {
        self.gaps.iter().flatten().copied().fold(0.0, f64::max)
    }
}

/// ccdf points of `s` up to its last finite edge, where the ccdf of a bounded
/// top bracket reaches 0.
fn ccdf_polyline(s: &BinnedSample) -> Result<Vec<(f64, f64)>> {
    let mut pts = s.empirical_ccdf()?;
    if let Some(u) = s.bins().last().and_then(|b| b.upper) {
        pts.push((u, 0.0));
    }
    Ok(pts)
}

/// Interpolation on a polyline with increasing x, linear in ln x (linear in
/// x on a segment starting at 0); clamps outside.
fn interpolate(pts: &[(f64, f64)], x: f64) -> f64 {
    let i = pts.partition_point(|p| p.0 <= x);
    if i == 0 {
        return pts[0].1;
    }
    if i == pts.len() {
        return pts[pts.len() - 1].1;
    }
    let (x0, y0) = pts[i - 1];
    let (x1, y1) = pts[i];
    if x0 > 0.0 {
        return y0 + (y1 - y0) * (ln(x) - ln(x0)) / (ln(x1) - ln(x0));
    }
    y0 + (y1 - y0) * (x - x0) / (x1 - x0)
}

/// Normalize every sample by its temperature and report the pairwise sup
/// distance between the interpolated ccdfs on a shared log grid.
///
/// The grid has [`COLLAPSE_GRID_POINTS`] log-spaced points from the largest
/// normalized first edge to the smallest normalized last finite edge. Each
/// ccdf is interpolated between its edges linearly in ln x, which matches
/// log-spaced brackets far better than interpolating in x.
pub fn collapse_metric(samples: &[BinnedSample], temps: &[f64], epsilon: f64) -> Result<CollapseReport> {
    if samples.len() < 2 {
        return Err(Error::TooFewInputs {
            needed: 2,
            got: samples.len(),
        });
    }
    if samples.len() != temps.len() {
        return Err(Error::LengthMismatch(samples.len(), temps.len()));
    }
    let curves = samples
        .iter()
        .zip(temps)
        .map(|(s, t)| ccdf_polyline(&s.normalize_by_temperature(*t)?))
        .collect::<Result<Vec<_>>>()?;

    let lo = curves.iter().map(|c| c[0].0).fold(f64::NEG_INFINITY, f64::max);
    let hi = curves.iter().map(|c| c[c.len() - 1].0).fold(f64::INFINITY, f64::min);
    if !(hi > lo) {
        return Err(Error::NoCommonSupport);
    }
    let grid = log_grid(lo, hi, COLLAPSE_GRID_POINTS);
    let resampled: Vec<Vec<f64>> = curves
        .iter()
        .map(|c| grid.iter().map(|x| interpolate(c, *x)).collect())
        .collect();

    let m = samples.len();
    let mut gaps = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let g = resampled[i]
                .iter()
                .zip(&resampled[j])
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            gaps[i][j] = g;
            gaps[j][i] = g;
        }
    }
    let collapsed = gaps.iter().flatten().all(|g| *g < epsilon);
    Ok(CollapseReport {
        labels: samples.iter().map(|s| String::from(s.label())).collect(),
        temperatures: temps.to_vec(),
        gaps,
        grid_range: (lo, hi),
        epsilon,
        collapsed,
    })
}

/// `count` log-spaced points from `lo` to `hi` inclusive. A zero `lo` starts
/// the grid at `hi · 1e-12`.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let lo = if lo > 0.0 { lo } else { hi * 1e-12 };
    let (a, b) = (ln(lo), ln(hi));
    let last = count.saturating_sub(1).max(1) as f64;
    let mut g: Vec<f64> = (0..count).map(|i| exp(a + (b - a) * i as f64 / last)).collect();
    // pin the ends so no grid point falls outside a curve
    if let Some(first) = g.first_mut() {
        *first = lo;
    }
    if count > 1 {
        g[count - 1] = hi;
    }
    g
}

/// Rows `(x_normalized, ccdf, label)` for plotting normalized ccdfs together.
pub fn normalized_overlay(samples: &[BinnedSample], temps: &[f64]) -> Result<Vec<(f64, f64, String)>> {
    if samples.len() != temps.len() {
        return Err(Error::LengthMismatch(samples.len(), temps.len()));
    }
    let mut rows = Vec::new();
    for (s, t) in samples.iter().zip(temps) {
        for (x, p) in s.normalize_by_temperature(*t)?.empirical_ccdf()? {
            rows.push((x, p, String::from(s.label())));
        }
    }
    Ok(rows)
}

/// Least-squares line through (x, ln ccdf).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearityProbe {
    /// Estimates −β for exponential data.
    pub slope: f64,
    pub intercept: f64,
    pub max_abs_residual: f64,
    pub points: usize,
}

/// Fit ln(ccdf) = intercept + slope·x through `points`.
pub fn linearity_probe(points: &[(f64, f64)]) -> Result<LinearityProbe> {
    if points.len() < 2 {
        return Err(Error::EmptyRange);
    }
    if let Some(p) = points.iter().find(|p| !(p.1 > 0.0)) {
        return Err(Error::InvalidParameter {
            name: "ccdf",
            value: p.1,
        });
    }
    let n = points.len() as f64;
    let ys: Vec<f64> = points.iter().map(|p| ln(p.1)).collect();
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for (p, y) in points.iter().zip(&ys) {
        let dx = p.0 - mx;
        sxx += dx * dx;
        sxy += dx * (y - my);
    }
    if !(sxx > 0.0) {
        return Err(Error::EmptyRange);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let max_abs_residual = points
        .iter()
        .zip(&ys)
        .map(|(p, y)| (y - (intercept + slope * p.0)).abs())
        .fold(0.0, f64::max);
    Ok(LinearityProbe {
        slope,
        intercept,
        max_abs_residual,
        points: points.len(),
    })
}

/// Linearity of the empirical ccdf at the lower edges inside `[lo, hi]`.
pub fn ccdf_linearity_probe(s: &BinnedSample, lo: f64, hi: f64) -> Result<LinearityProbe> {
    if !(hi > lo) {
        return Err(Error::EmptyRange);
    }
    let pts: Vec<(f64, f64)> = s
        .empirical_ccdf()?
        .into_iter()
        .filter(|(x, _)| *x >= lo && *x <= hi)
        .collect();
    linearity_probe(&pts)
}

/// Linearity of a model ccdf sampled at `count` evenly spaced points in `[lo, hi]`.
pub fn model_linearity_probe(model: &MixtureModel, lo: f64, hi: f64, count: usize) -> Result<LinearityProbe> {
    if !(hi > lo) || count < 2 {
        return Err(Error::EmptyRange);
    }
    let pts: Vec<(f64, f64)> = (0..count)
        .map(|i| {
            let x = lo + (hi - lo) * i as f64 / (count - 1) as f64;
            (x, model.ccdf(x))
        })
        .collect();
    linearity_probe(&pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binned::Bin;

    fn sample(counts: &[u64], label: &str) -> BinnedSample {
        let mut bins: Vec<Bin> = counts[..counts.len() - 1]
            .iter()
            .enumerate()
            .map(|(i, c)| Bin::bounded(10f64.powi(i as i32), 10f64.powi(i as i32 + 1), *c, None))
            .collect();
        bins.push(Bin::open(10f64.powi(counts.len() as i32 - 1), counts[counts.len() - 1], None));
        BinnedSample::new(bins, label).unwrap()
    }

    #[test]
    fn same_sample_twice_collapses() {
        let s = sample(&[10, 40, 30, 20], "a");
        let r = collapse_metric(&[s.clone(), s.with_label("b")], &[3.0, 3.0], DEFAULT_COLLAPSE_EPSILON).unwrap();
        assert_eq!(r.gaps, vec![vec![0.0, 0.0], vec![0.0, 0.0]]);
        assert!(r.collapsed);
        assert_eq!(r.labels, vec!["a", "b"]);
    }

    #[test]
    fn different_shapes_do_not_collapse() {
        let a = sample(&[10, 40, 30, 20], "a");
        let b = sample(&[60, 20, 10, 10], "b");
        let r = collapse_metric(&[a, b], &[1.0, 1.0], 0.02).unwrap();
        assert!(!r.collapsed);
        assert!(r.gaps[0][1] > 0.3);
        assert_eq!(r.gaps[0][1], r.gaps[1][0]);
    }

    #[test]
    fn collapse_needs_two_samples() {
        let a = sample(&[1, 1], "a");
        assert!(matches!(
            collapse_metric(&[a.clone()], &[1.0], 0.02),
            Err(Error::TooFewInputs { .. })
        ));
        assert!(collapse_metric(&[a.clone(), a], &[1.0], 0.02).is_err());
    }

    #[test]
    fn collapse_is_order_invariant() {
        let a = sample(&[10, 40, 30, 20], "a");
        let b = sample(&[12, 38, 31, 19], "b");
        let c = sample(&[9, 45, 26, 20], "c");
        let r1 = collapse_metric(&[a.clone(), b.clone(), c.clone()], &[1.0, 1.1, 0.9], 0.02).unwrap();
        let r2 = collapse_metric(&[c, a, b], &[0.9, 1.0, 1.1], 0.02).unwrap();
        assert_eq!(r1.gaps[0][1], r2.gaps[1][2]);
        assert_eq!(r1.gaps[0][2], r2.gaps[1][0]);
        assert_eq!(r1.gaps[1][2], r2.gaps[2][0]);
        assert_eq!(r1.collapsed, r2.collapsed);
    }

    #[test]
    fn exact_exponential_ccdf_is_linear() {
        let beta = 3.7e-5;
        let pts: Vec<(f64, f64)> = (0..20).map(|i| {
            let x = 5_000.0 * i as f64;
            (x, (-beta * x).exp())
        }).collect();
        let p = linearity_probe(&pts).unwrap();
        assert!(p.max_abs_residual < 1e-12);
        assert!(((p.slope + beta) / beta).abs() < 1e-10);
    }

    #[test]
    fn probe_input_validation() {
        assert_eq!(linearity_probe(&[(1.0, 0.5)]), Err(Error::EmptyRange));
        assert!(linearity_probe(&[(1.0, 0.5), (2.0, 0.0)]).is_err());
        assert!(linearity_probe(&[(1.0, 0.5), (1.0, 0.4)]).is_err());
        let s = sample(&[10, 40, 30, 20], "a");
        assert!(ccdf_linearity_probe(&s, 5.0, 1.0).is_err());
        let m = MixtureModel::exp_pwr(1.0, 1.0, 1e9, 1.0).unwrap();
        assert!(model_linearity_probe(&m, 0.0, 1.0, 1).is_err());
        let p = model_linearity_probe(&m, 0.0, 30.0, 50).unwrap();
        assert!((p.slope + 1.0).abs() < 1e-10);
    }

    #[test]
    fn interpolation_clamps_and_is_linear() {
        let pts = [(1.0, 1.0), (3.0, 0.5), (5.0, 0.1)];
        assert_eq!(interpolate(&pts, 0.5), 1.0);
        assert!((interpolate(&pts, 3f64.sqrt()) - 0.75).abs() < 1e-15);
        assert_eq!(interpolate(&[(0.0, 1.0), (2.0, 0.0)], 0.5), 0.75);
        assert_eq!(interpolate(&pts, 3.0), 0.5);
        assert_eq!(interpolate(&pts, 9.0), 0.1);
        let g = log_grid(1.0, 100.0, 3);
        assert_eq!(g[0], 1.0);
        assert!((g[1] - 10.0).abs() < 1e-12);
        assert_eq!(g[2], 100.0);
    }
}
