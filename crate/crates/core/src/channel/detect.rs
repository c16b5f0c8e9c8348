//! Photodetection and oscilloscope capture.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use super::filters::lowpass;
use super::optical::OpticalField;
use crate::dsp::{DigitalWaveform, Resampler};

/// Square-law PIN detector: `i = R·|E|²` (mA for √mW fields and A/W
/// responsivity) plus white thermal noise of one-sided PSD `thermal_psd`
/// (A²/Hz), band-limited by a Gaussian response at `pd_bw`.
pub fn photodetect(
    field: &OpticalField,
    pd_resp: f64,
    pd_bw: f64,
    filter_order: u32,
    thermal_psd: f64,
    seed: u64,
) -> DigitalWaveform {
    let mut current: Vec<f64> = field.samples.iter().map(|e| pd_resp * e.norm_sqr()).collect();
    if thermal_psd > 0.0 {
        // one-sided PSD over fs/2, converted from A² to mA²
        let var = thermal_psd * 1e6 * field.sample_rate * 1e9 / 2.0;
        let normal = Normal::new(0.0, var.sqrt()).expect("finite sigma");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in current.iter_mut() {
            *i += normal.sample(&mut rng);
        }
    }
    lowpass(&DigitalWaveform::new(current, field.sample_rate), pd_bw, filter_order)
}

/// Uniform quantizer spanning the signal's own `[min, max]` range with
/// `2^bits` levels (oscilloscope auto-scale).
pub fn quantize_autorange(samples: &[f64], bits: u32) -> Vec<f64> {
    let (lo, hi) = samples
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
    if !(hi > lo) {
        return samples.to_vec();
    }
    let step = (hi - lo) / ((1u64 << bits) - 1) as f64;
    samples
        .iter()
        .map(|&x| lo + ((x - lo) / step).round() * step)
        .collect()
}

/// Anti-alias filter at `adc_bw`, resampling to `adc_rate` and quantization.
/// The sampling clock is locked to the transmitter.
pub fn adc_capture(
    waveform: &DigitalWaveform,
    adc_rate: f64,
    adc_bw: f64,
    adc_bits: u32,
    filter_order: u32,
) -> DigitalWaveform {
    let filtered = lowpass(waveform, adc_bw, filter_order);
    let resampler = Resampler::new(waveform.sample_rate, adc_rate);
    let out_len = resampler.output_len(waveform.len());
    let resampled = resampler.process_cyclic(&filtered.samples, out_len, 0.0);
    DigitalWaveform::new(quantize_autorange(&resampled, adc_bits), adc_rate)
}
