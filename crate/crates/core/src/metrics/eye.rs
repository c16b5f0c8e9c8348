use serde::{Deserialize, Serialize};

use crate::dsp::DigitalWaveform;

/// Folded eye: `counts[t][a]` per time and amplitude bin, plus the mean
/// amplitude per time bin.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EyeData {
    pub amp_min: f64,
    pub amp_max: f64,
    pub counts: Vec<Vec<u64>>,
    pub mean: Vec<f64>,
}

impl EyeData {
    pub fn time_bins(&self) -> usize {
        self.counts.len()
    }

    pub fn amp_bins(&self) -> usize {
        self.counts.first().map_or(0, Vec::len)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }
}

/// Folds `waveform` modulo `span_ui` symbol periods of `sps` samples. The
/// time axis has `round(span_ui · sps)` bins, the amplitude axis spans
/// [min, max] of the waveform in `amp_bins` bins.
pub fn eye_accumulate(waveform: &DigitalWaveform, sps: f64, span_ui: usize, amp_bins: usize) -> EyeData {
    assert!(sps >= 2.0 && span_ui > 0 && amp_bins > 0, "eye needs sps >= 2 and nonzero bins");
    let period = span_ui as f64 * sps;
    let time_bins = period.round().max(1.0) as usize;
    let (lo, hi) = waveform
        .samples
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &x| (l.min(x), h.max(x)));
    let (lo, hi) = if lo.is_finite() { (lo, hi) } else { (0.0, 0.0) };
    let width = hi - lo;
    let mut counts = vec![vec![0u64; amp_bins]; time_bins];
    let mut sums = vec![0.0; time_bins];
    for (i, &x) in waveform.samples.iter().enumerate() {
        let phase = (i as f64).rem_euclid(period) / period;
        let t = ((phase * time_bins as f64) as usize).min(time_bins - 1);
        let a = if width > 0.0 {
            (((x - lo) / width * amp_bins as f64) as usize).min(amp_bins - 1)
        } else {
            0
        };
        counts[t][a] += 1;
        sums[t] += x;
    }
    let mean = sums
        .iter()
        .zip(&counts)
        .map(|(s, c)| {
            let n: u64 = c.iter().sum();
            if n > 0 { s / n as f64 } else { 0.0 }
        })
        .collect();
    EyeData { amp_min: lo, amp_max: hi, counts, mean }
}
