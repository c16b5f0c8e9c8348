use serde::{Deserialize, Serialize};

use super::MetricsError;

pub const MIN_HISTOGRAM_BINS: usize = 16;

/// Amplitude histogram with uniform bins.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HistogramData {
    /// `bins + 1` edges.
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    /// log10(count + 1) per bin.
    pub log_counts: Vec<f64>,
}

impl HistogramData {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn centers(&self) -> Vec<f64> {
        self.edges.windows(2).map(|e| 0.5 * (e[0] + e[1])).collect()
    }

    /// Fraction of the counts in bins whose center has magnitude above `level`.
    pub fn mass_beyond(&self, level: f64) -> f64 {
        let total = self.total();
        if total == 0 {
            return 0.0;
        }
        let outer: u64 = self
            .centers()
            .iter()
            .zip(&self.counts)
            .filter(|(c, _)| c.abs() > level)
            .map(|(_, n)| n)
            .sum();
        outer as f64 / total as f64
    }
}

/// Histogram over [min, max] of `symbols`.
pub fn log_histogram(symbols: &[f64], bins: usize) -> Result<HistogramData, MetricsError> {
    let (lo, hi) = symbols
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &x| (l.min(x), h.max(x)));
    let (lo, hi) = if lo.is_finite() { (lo, hi) } else { (0.0, 0.0) };
    log_histogram_range(symbols, bins, lo, hi)
}

/// Histogram over a fixed range; values outside are clamped into the end
/// bins so the total always equals the symbol count.
pub fn log_histogram_range(symbols: &[f64], bins: usize, lo: f64, hi: f64) -> Result<HistogramData, MetricsError> {
    if bins < MIN_HISTOGRAM_BINS {
        return Err(MetricsError::TooFewBins { got: bins, min: MIN_HISTOGRAM_BINS });
    }
    let width = hi - lo;
    let edges: Vec<f64> = (0..=bins).map(|i| lo + width * i as f64 / bins as f64).collect();
    let mut counts = vec![0u64; bins];
    for &x in symbols {
        let b = if width > 0.0 {
            ((x - lo) / width * bins as f64).floor().clamp(0.0, (bins - 1) as f64) as usize
        } else {
            0
        };
        counts[b] += 1;
    }
    let log_counts = counts.iter().map(|&c| (c as f64 + 1.0).log10()).collect();
    Ok(HistogramData { edges, counts, log_counts })
}
