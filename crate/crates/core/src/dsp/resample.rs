//! Band-limited fractional resampling with a Kaiser-windowed sinc kernel.
//!
//! The kernel is tabulated at `TABLE_PHASES` points per input sample and
//! linearly interpolated between phases, so any output instant (rational or
//! not) can be evaluated. Signals are treated as cyclic.

use std::f64::consts::PI;

/// Kernel length in taps of the lower of the two sample rates.
pub const RESAMPLER_TAPS: usize = 32;
pub const RESAMPLER_KAISER_BETA: f64 = 10.0;
const TABLE_PHASES: usize = 512;

/// Zeroth-order modified Bessel function of the first kind.
fn bessel_i0(x: f64) -> f64 {
    let q = x * x / 4.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        term *= q / (k as f64 * k as f64);
        sum += term;
        if term < sum * 1e-17 {
            break;
        }
    }
    sum
}

/// Kaiser window at normalized position `u ∈ [-1, 1]`; zero outside.
pub fn kaiser(u: f64, beta: f64) -> f64 {
    if u.abs() > 1.0 {
        return 0.0;
    }
    bessel_i0(beta * (1.0 - u * u).sqrt()) / bessel_i0(beta)
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        1.0
    } else {
        (PI * x).sin() / (PI * x)
    }
}

#[derive(Clone, Debug)]
pub struct Resampler {
    in_rate: f64,
    out_rate: f64,
    /// Half kernel length, input samples.
    half_len: f64,
    /// One-sided kernel, `TABLE_PHASES` entries per input sample.
    table: Vec<f64>,
}

impl Resampler {
    /// Anti-aliasing resampler: cutoff at half the lower of the two rates.
    pub fn new(in_rate: f64, out_rate: f64) -> Self {
        Self::with_cutoff(in_rate, out_rate, 0.5 * in_rate.min(out_rate))
    }

    /// Resampler with an explicit cutoff frequency (same units as the rates).
    ///
    /// Use `cutoff = in_rate / 2` for pure band-limited interpolation when
    /// the input is known to carry nothing that would alias at `out_rate`.
    pub fn with_cutoff(in_rate: f64, out_rate: f64, cutoff: f64) -> Self {
        assert!(in_rate > 0.0 && out_rate > 0.0 && cutoff > 0.0);
        let fc = (cutoff / in_rate).min(0.5);
        let half_len = RESAMPLER_TAPS as f64 / 2.0 / (2.0 * fc);
        let n = (half_len * TABLE_PHASES as f64).ceil() as usize + 2;
        let table = (0..n)
            .map(|i| {
                let tau = i as f64 / TABLE_PHASES as f64;
                2.0 * fc * sinc(2.0 * fc * tau) * kaiser(tau / half_len, RESAMPLER_KAISER_BETA)
            })
            .collect();
        Resampler { in_rate, out_rate, half_len, table }
    }

    pub fn in_rate(&self) -> f64 {
        self.in_rate
    }

    pub fn out_rate(&self) -> f64 {
        self.out_rate
    }

    /// Input samples per output sample.
    pub fn ratio(&self) -> f64 {
        self.in_rate / self.out_rate
    }

    fn kernel(&self, tau: f64) -> f64 {
        let pos = tau.abs() * TABLE_PHASES as f64;
        let i = pos as usize;
        if i + 1 >= self.table.len() {
            return 0.0;
        }
        let frac = pos - i as f64;
        self.table[i] + frac * (self.table[i + 1] - self.table[i])
    }

    /// Value of the cyclic input at fractional input-sample position `t`.
    pub fn interpolate_at(&self, x: &[f64], t: f64) -> f64 {
        let n = x.len() as i64;
        if n == 0 {
            return 0.0;
        }
        let first = (t - self.half_len).ceil() as i64;
        let last = (t + self.half_len).floor() as i64;
        let mut acc = 0.0;
        for k in first..=last {
            let idx = k.rem_euclid(n) as usize;
            acc += x[idx] * self.kernel(t - k as f64);
        }
        acc
    }

    /// `out_len` output samples; output sample `m` sits at input position
    /// `offset + m · in_rate / out_rate`.
    pub fn process_cyclic(&self, x: &[f64], out_len: usize, offset: f64) -> Vec<f64> {
        let r = self.ratio();
        (0..out_len)
            .map(|m| self.interpolate_at(x, offset + m as f64 * r))
            .collect()
    }

    /// Output length covering the same duration as `in_len` input samples.
    pub fn output_len(&self, in_len: usize) -> usize {
        (in_len as f64 * self.out_rate / self.in_rate + 1e-9).floor() as usize
    }
}
