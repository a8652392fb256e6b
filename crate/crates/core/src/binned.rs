//! Binned income tabulations: bracket edges, return counts and AGI totals.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Rows whose lower edge is below this are dropped on ingestion.
pub const MIN_LOWER_EDGE: f64 = 1.0;

/// One income bracket `[lower, upper)`; `upper == None` marks the open top
/// bracket.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bin {
    pub lower: f64,
    pub upper: Option<f64>,
    pub count: u64,
    pub total_amount: Option<f64>,
}

impl Bin {
    pub fn bounded(lower: f64, upper: f64, count: u64, total_amount: Option<f64>) -> Self {
        Self {
            lower,
            upper: Some(upper),
            count,
            total_amount,
        }
    }

    pub fn open(lower: f64, count: u64, total_amount: Option<f64>) -> Self {
        Self {
            lower,
            upper: None,
            count,
            total_amount,
        }
    }

    /// Bracket width Δ; `None` for the open bracket.
    pub fn width(&self) -> Option<f64> {
        self.upper.map(|u| u - self.lower)
    }

    pub fn is_open(&self) -> bool {
        self.upper.is_none()
    }

    /// Average amount per return, if the bin has both a total and returns.
    pub fn mean_amount(&self) -> Option<f64> {
        match self.total_amount {
            Some(t) if self.count > 0 => Some(t / self.count as f64),
            _ => None,
        }
    }
}

/// One row of a tabulation before validation. `line` is used in messages.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableRow {
    pub line: usize,
    pub lower: f64,
    pub upper: Option<f64>,
    pub returns: i64,
    pub total: Option<f64>,
}

/// A row removed on ingestion because its lower edge is below $1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DroppedRow {
    pub line: usize,
    pub lower: f64,
    pub returns: i64,
}

/// Ordered, contiguous, non-overlapping bins with at most one open bracket (last).
#[derive(Debug, Clone, PartialEq)]
pub struct BinnedSample {
    bins: Vec<Bin>,
    n: u64,
    label: String,
}

impl BinnedSample {
    /// Validate `bins` and total their counts. Errors name the offending bin
    /// by zero-based index.
    pub fn new(bins: Vec<Bin>, label: impl Into<String>) -> Result<Self> {
        if bins.is_empty() {
            return Err(Error::EmptySample);
        }
        for (i, bin) in bins.iter().enumerate() {
            let fail = |reason: String| Err(Error::Schema { row: i, reason });
            if !(bin.lower.is_finite() && bin.lower >= 0.0) {
                return fail(format!("lower edge {} must be finite and nonnegative", bin.lower));
            }
            match bin.upper {
                Some(u) if !(u.is_finite() && u > bin.lower) => {
                    return fail(format!("upper edge {u} must exceed lower edge {}", bin.lower));
                }
                None if i + 1 != bins.len() => {
                    return fail("only the last bin may be open".into());
                }
                _ => {}
            }
            if let Some(t) = bin.total_amount {
                if !t.is_finite() {
                    return fail(format!("total amount {t} is not finite"));
                }
            }
            if i > 0 {
                let prev_upper = bins[i - 1].upper.unwrap_or(f64::INFINITY);
                if prev_upper != bin.lower {
                    let what = if bin.lower < prev_upper { "overlaps" } else { "leaves a gap after" };
                    return fail(format!(
                        "bin starting at {} {what} the previous bin ending at {prev_upper}",
                        bin.lower
                    ));
                }
            }
        }
        let n = bins.iter().map(|b| b.count).sum();
        Ok(Self {
            bins,
            n,
            label: label.into(),
        })
    }

    /// Build a sample from raw tabulation rows (in file order).
    ///
    /// Rows with a lower edge below $1 are dropped and returned alongside the
    /// sample. Negative counts, inverted brackets and broken contiguity are
    /// schema errors naming the row's `line`.
    pub fn from_rows(rows: &[TableRow], label: impl Into<String>) -> Result<(Self, Vec<DroppedRow>)> {
        let mut dropped = Vec::new();
        let mut bins: Vec<Bin> = Vec::with_capacity(rows.len());
        let mut lines: Vec<usize> = Vec::with_capacity(rows.len());
        for row in rows {
            let fail = |reason: String| Err(Error::Schema { row: row.line, reason });
            if row.returns < 0 {
                return fail(format!("negative return count {}", row.returns));
            }
            if !row.lower.is_finite() {
                return fail(format!("lower edge {} is not finite", row.lower));
            }
            if let Some(u) = row.upper {
                if !(u.is_finite() && u > row.lower) {
                    return fail(format!("upper edge {u} must exceed lower edge {}", row.lower));
                }
            }
            if row.lower < MIN_LOWER_EDGE {
                dropped.push(DroppedRow {
                    line: row.line,
                    lower: row.lower,
                    returns: row.returns,
                });
                continue;
            }
            let count = row.returns as u64;
            bins.push(match row.upper {
                Some(u) => Bin::bounded(row.lower, u, count, row.total),
                None => Bin::open(row.lower, count, row.total),
            });
            lines.push(row.line);
        }
        let sample = Self::new(bins, label).map_err(|e| match e {
            Error::Schema { row, reason } => Error::Schema {
                row: lines[row],
                reason,
            },
            other => other,
        })?;
        Ok((sample, dropped))
    }

    pub fn bins(&self) -> &[Bin] {
        &self.bins
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn counts(&self) -> impl Iterator<Item = u64> + '_ {
        self.bins.iter().map(|b| b.count)
    }

    pub fn has_open_bracket(&self) -> bool {
        self.bins.last().is_some_and(Bin::is_open)
    }

    /// All distinct edges: every lower edge plus the final upper edge when
    /// the top bracket is bounded.
    pub fn edges(&self) -> Vec<f64> {
        let mut edges: Vec<f64> = self.bins.iter().map(|b| b.lower).collect();
        if let Some(u) = self.bins.last().and_then(|b| b.upper) {
            edges.push(u);
        }
        edges
    }

    /// Indices of bounded bins whose mean amount falls outside the bracket.
    pub fn inconsistent_bin_means(&self) -> Vec<usize> {
        self.bins
            .iter()
            .enumerate()
            .filter_map(|(i, b)| {
                let mean = b.mean_amount()?;
                let upper = b.upper.unwrap_or(f64::INFINITY);
                (!(mean >= b.lower && mean < upper)).then_some(i)
            })
            .collect()
    }

    /// fᵢ / n, with the last entry taken as the remainder so the masses sum to 1.
    pub fn empirical_masses(&self) -> Result<Vec<f64>> {
        if self.n == 0 {
            return Err(Error::EmptySample);
        }
        let n = self.n as f64;
        let m = self.bins.len();
        let mut masses: Vec<f64> = self.bins[..m - 1].iter().map(|b| b.count as f64 / n).collect();
        let head: f64 = masses.iter().sum();
        masses.push((1.0 - head).max(0.0));
        Ok(masses)
    }

    /// Empirical ccdf at each lower edge: (Σ_{j≥k} f_j) / n.
    pub fn empirical_ccdf(&self) -> Result<Vec<(f64, f64)>> {
        if self.n == 0 {
            return Err(Error::EmptySample);
        }
        let n = self.n as f64;
        let mut above = self.n;
        Ok(self
            .bins
            .iter()
            .map(|b| {
                let point = (b.lower, above as f64 / n);
                above -= b.count;
                point
            })
            .collect())
    }

    /// Empirical cdf at every edge from [`edges`](Self::edges).
    pub fn empirical_cdf_at_edges(&self) -> Result<Vec<(f64, f64)>> {
        if self.n == 0 {
            return Err(Error::EmptySample);
        }
        let n = self.n as f64;
        let mut below = 0u64;
        let mut out = Vec::with_capacity(self.bins.len() + 1);
        for b in &self.bins {
            out.push((b.lower, below as f64 / n));
            below += b.count;
        }
        if let Some(u) = self.bins.last().and_then(|b| b.upper) {
            out.push((u, 1.0));
        }
        Ok(out)
    }

    /// Σ total_amount / n.
    pub fn mean_income(&self) -> Result<f64> {
        if self.n == 0 {
            return Err(Error::EmptySample);
        }
        let mut total = 0.0;
        for (i, b) in self.bins.iter().enumerate() {
            match b.total_amount {
                Some(t) => total += t,
                None if b.count == 0 => {}
                None => return Err(Error::MissingTotals { bin: i }),
            }
        }
        Ok(total / self.n as f64)
    }

    /// Income at which the empirical cdf reaches 1/2, interpolated linearly
    /// inside its bracket (the open bracket yields its lower edge).
    pub fn median_income(&self) -> Result<f64> {
        if self.n == 0 {
            return Err(Error::EmptySample);
        }
        let half = self.n as f64 / 2.0;
        let mut below = 0.0;
        for b in &self.bins {
            let c = b.count as f64;
            if below + c >= half && c > 0.0 {
                return Ok(match b.width() {
                    Some(w) => b.lower + w * (half - below) / c,
                    None => b.lower,
                });
            }
            below += c;
        }
        Ok(self.bins[self.bins.len() - 1].lower)
    }

    /// Divide every edge and total by the temperature `t`. Counts are unchanged.
    pub fn normalize_by_temperature(&self, t: f64) -> Result<Self> {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::InvalidTemperature(t));
        }
        let bins = self
            .bins
            .iter()
            .map(|b| Bin {
                lower: b.lower / t,
                upper: b.upper.map(|u| u / t),
                count: b.count,
                total_amount: b.total_amount.map(|a| a / t),
            })
            .collect();
        Ok(Self {
            bins,
            n: self.n,
            label: self.label.clone(),
        })
    }

    /// FNV-1a digest of edges and counts; fits carry it so comparisons can
    /// check they were computed on this sample.
    pub fn fingerprint(&self) -> u64 {
        const PRIME: u64 = 0x0100_0000_01b3;
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut feed = |bytes: [u8; 8]| {
            for byte in bytes {
                h ^= u64::from(byte);
                h = h.wrapping_mul(PRIME);
            }
        };
        for b in &self.bins {
            feed(b.lower.to_bits().to_le_bytes());
            feed(b.upper.unwrap_or(f64::INFINITY).to_bits().to_le_bytes());
            feed(b.count.to_le_bytes());
        }
        h
    }
}
