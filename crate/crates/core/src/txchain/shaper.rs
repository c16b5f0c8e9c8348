//! Pulse shaping and resampling to the DAC rate.

use serde::{Deserialize, Serialize};

use super::rrc::rrc_taps;
use super::TxError;
use crate::dsp::{DigitalWaveform, Resampler};

pub const DEFAULT_SPAN: usize = 64;
/// Samples per symbol of the intermediate integer-rate stage.
pub const DEFAULT_OVERSAMPLING: usize = 2;

/// Roll-off used for a given symbol rate in the reference experiments:
/// 0.4 below 90 GBd, 0.33 at 90 GBd and 0.12 above. Anything faster than
/// 90 GBd needs the narrow roll-off to fit a 120 GSa/s DAC.
pub fn default_rolloff(symbol_rate_gbd: f64) -> f64 {
    if symbol_rate_gbd > 90.0 {
        0.12
    } else if symbol_rate_gbd >= 90.0 {
        0.33
    } else {
        0.4
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PulseShaperConfig {
    pub symbol_rate_gbd: f64,
    pub rolloff: f64,
    /// Filter span in symbols.
    pub span: usize,
    pub oversampling: usize,
}

impl PulseShaperConfig {
    pub fn new(symbol_rate_gbd: f64, rolloff: f64) -> Self {
        PulseShaperConfig {
            symbol_rate_gbd,
            rolloff,
            span: DEFAULT_SPAN,
            oversampling: DEFAULT_OVERSAMPLING,
        }
    }

    /// One-sided occupied bandwidth, GHz.
    pub fn occupied_bandwidth(&self) -> f64 {
        self.symbol_rate_gbd * (1.0 + self.rolloff) / 2.0
    }

    pub fn validate(&self, sample_rate: f64) -> Result<(), TxError> {
        if !(self.symbol_rate_gbd > 0.0) {
            return Err(TxError::Config(format!(
                "symbol rate must be positive, got {}",
                self.symbol_rate_gbd
            )));
        }
        if self.occupied_bandwidth() > sample_rate / 2.0 + 1e-9 {
            return Err(TxError::BandwidthViolation {
                occupied: self.occupied_bandwidth(),
                nyquist: sample_rate / 2.0,
            });
        }
        Ok(())
    }
}

/// Number of output samples for `n_symbols` at `sample_rate`.
pub fn shaped_len(n_symbols: usize, symbol_rate_gbd: f64, sample_rate: f64) -> usize {
    (n_symbols as f64 * sample_rate / symbol_rate_gbd + 1e-9).floor() as usize
}

/// RRC-shapes `symbols` and resamples them to `dac_rate`.
///
/// The symbol sequence is treated as periodic, so the output is in steady
/// state from the first sample and symbol 0 sits exactly at sample 0. The
/// amplitude at the symbol instants follows the DC gain of the pulse
/// ([`pulse_dc_gain`]).
pub fn shape_and_resample(
    symbols: &[f64],
    shaper: &PulseShaperConfig,
    dac_rate: f64,
) -> Result<DigitalWaveform, TxError> {
    shaper.validate(dac_rate)?;
    let sps = shaper.oversampling;
    let taps = rrc_taps(shaper.rolloff, sps, shaper.span)?;
    let up = cyclic_upsample_filter(symbols, &taps, sps);

    let inter_rate = shaper.symbol_rate_gbd * sps as f64;
    let out_len = shaped_len(symbols.len(), shaper.symbol_rate_gbd, dac_rate);
    // band-limited interpolation of the intermediate stream; its content ends
    // at the occupied bandwidth, below both Nyquist frequencies
    let resampler = Resampler::with_cutoff(inter_rate, dac_rate, inter_rate / 2.0);
    let samples = resampler.process_cyclic(&up, out_len, 0.0);
    Ok(DigitalWaveform::new(samples, dac_rate))
}

/// DC gain of the shaped waveform per unit symbol amplitude.
pub fn pulse_dc_gain(shaper: &PulseShaperConfig) -> Result<f64, TxError> {
    let taps = rrc_taps(shaper.rolloff, shaper.oversampling, shaper.span)?;
    Ok(taps.iter().sum::<f64>() / shaper.oversampling as f64)
}

/// Zero-stuffs by `sps` and filters cyclically with centered taps.
fn cyclic_upsample_filter(symbols: &[f64], taps: &[f64], sps: usize) -> Vec<f64> {
    let n = symbols.len() * sps;
    let mut out = vec![0.0; n];
    if n == 0 {
        return out;
    }
    let center = taps.len() / 2;
    for (k, &a) in symbols.iter().enumerate() {
        if a == 0.0 {
            continue;
        }
        let base = (k * sps) as i64 - center as i64;
        for (i, &h) in taps.iter().enumerate() {
            let idx = (base + i as i64).rem_euclid(n as i64) as usize;
            out[idx] += a * h;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsp::real_spectrum;

    #[test]
    fn default_rolloffs() {
        assert_eq!(default_rolloff(80.0), 0.4);
        assert_eq!(default_rolloff(90.0), 0.33);
        assert_eq!(default_rolloff(107.0), 0.12);
        assert_eq!(default_rolloff(112.0), 0.12);
        for rs in [72.0, 75.0, 83.0, 85.0, 90.0, 107.0] {
            PulseShaperConfig::new(rs, default_rolloff(rs)).validate(120.0).unwrap();
        }
    }

    #[test]
    fn constant_stream_passes_dc() {
        let cfg = PulseShaperConfig::new(80.0, 0.4);
        let w = shape_and_resample(&vec![1.0; 512], &cfg, 120.0).unwrap();
        assert_eq!(w.len(), 768);
        let g = pulse_dc_gain(&cfg).unwrap();
        for v in &w.samples {
            assert!((v - g).abs() / g < 1e-3, "{v} vs {g}");
        }
    }

    #[test]
    fn impulse_reproduces_pulse_peak() {
        let cfg = PulseShaperConfig::new(80.0, 0.4);
        let mut s = vec![0.0; 256];
        s[0] = 1.0;
        let w = shape_and_resample(&s, &cfg, 120.0).unwrap();
        let taps = rrc_taps(0.4, cfg.oversampling, cfg.span).unwrap();
        let tap_peak = taps[taps.len() / 2];
        // symbol 0 aligns with sample 0, which is the peak
        let (imax, vmax) = w
            .samples
            .iter()
            .enumerate()
            .fold((0, f64::MIN), |a, (i, &v)| if v > a.1 { (i, v) } else { a });
        assert_eq!(imax, 0);
        assert!((vmax - tap_peak).abs() / tap_peak < 1e-3);
    }

    #[test]
    fn symbol_zero_alignment_with_fractional_ratio() {
        // 90 GBd into 120 GSa/s: 4/3 samples per symbol
        let cfg = PulseShaperConfig::new(90.0, 0.33);
        let mut s = vec![0.0; 300];
        s[150] = 1.0;
        let w = shape_and_resample(&s, &cfg, 120.0).unwrap();
        assert_eq!(w.len(), 400);
        // the pulse peak sits at sample 200 = 150 · 4/3; parabolic refinement
        let y0 = w.samples[199];
        let y1 = w.samples[200];
        let y2 = w.samples[201];
        let frac = 0.5 * (y0 - y2) / (y0 - 2.0 * y1 + y2);
        assert!(frac.abs() < 0.05, "{frac}");
    }

    #[test]
    fn out_of_band_power_is_suppressed() {
        let cfg = PulseShaperConfig::new(80.0, 0.4);
        let mut seed = 12345u64;
        let symbols: Vec<f64> = (0..4096)
            .map(|_| {
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((seed >> 61) as f64) * 2.0 - 7.0
            })
            .collect();
        let w = shape_and_resample(&symbols, &cfg, 120.0).unwrap();
        let spec = real_spectrum(&w.samples);
        let n = spec.len();
        let edge = cfg.occupied_bandwidth();
        let (mut inband, mut outband, mut n_in, mut n_out) = (0.0, 0.0, 0, 0);
        for (k, v) in spec.iter().enumerate().take(n / 2) {
            let f = k as f64 * 120.0 / n as f64;
            if f < cfg.symbol_rate_gbd * 0.3 {
                inband += v.norm_sqr();
                n_in += 1;
            } else if f > edge * 1.01 {
                outband += v.norm_sqr();
                n_out += 1;
            }
        }
        let rel_db = 10.0 * ((outband / n_out as f64) / (inband / n_in as f64)).log10();
        assert!(rel_db < -40.0, "{rel_db}");
    }

    #[test]
    fn bandwidth_violation_rejected() {
        let cfg = PulseShaperConfig::new(100.0, 0.4);
        assert!(matches!(
            shape_and_resample(&[1.0; 10], &cfg, 120.0),
            Err(TxError::BandwidthViolation { .. })
        ));
    }

    #[test]
    fn deterministic() {
        let cfg = PulseShaperConfig::new(75.0, 0.4);
        let s: Vec<f64> = (0..200).map(|i| ((i * 7) % 8) as f64 * 2.0 - 7.0).collect();
        assert_eq!(
            shape_and_resample(&s, &cfg, 120.0).unwrap(),
            shape_and_resample(&s, &cfg, 120.0).unwrap()
        );
    }
}
