//! Data-aided synchronization and resampling to one sample per symbol.

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::RxError;
use crate::dsp::{apply_real_response, DigitalWaveform, Resampler};
use crate::txchain::{rrc_spectrum, shape_and_resample, PulseShaperConfig};

/// Minimum ratio between the correlation peak and the largest value outside
/// the main lobe.
pub const MIN_PEAK_RATIO: f64 = 1.5;

/// RRC matched filter applied in the frequency domain.
pub fn matched_filter(rx: &DigitalWaveform, symbol_rate: f64, rolloff: f64) -> DigitalWaveform {
    let mut samples = rx.samples.clone();
    apply_real_response(&mut samples, rx.sample_rate, |f| rrc_spectrum(f, symbol_rate, rolloff));
    DigitalWaveform::new(samples, rx.sample_rate)
}

/// Delay (in samples of `rx`) of the first reference symbol.
///
/// The reference symbols are pulse-shaped at the receiver rate and
/// cross-correlated cyclically against `rx`. The integer lag comes from the
/// magnitude peak (the link may invert polarity), the fractional part from a
/// parabola through the peak and its neighbours.
pub fn synchronize(
    rx: &DigitalWaveform,
    reference: &[f64],
    shaper: &PulseShaperConfig,
) -> Result<f64, RxError> {
    let sps = rx.sample_rate / shaper.symbol_rate_gbd;
    let n = rx.len();
    if reference.is_empty() || (n as f64) < 4.0 * reference.len() as f64 * sps {
        return Err(RxError::InsufficientSamples {
            needed: (4.0 * reference.len() as f64 * sps).ceil() as usize,
            available: n,
        });
    }
    // zero guard on both sides keeps the pulse tails from wrapping
    let guard = shaper.span / 2;
    let mut padded = vec![0.0; guard];
    padded.extend_from_slice(reference);
    padded.extend(std::iter::repeat_n(0.0, guard));
    let ref_wave = shape_and_resample(&padded, shaper, rx.sample_rate)
        .map_err(|e| RxError::Config(e.to_string()))?;
    let lead = guard as f64 * sps;

    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(n);
    let mut a: Vec<Complex64> = rx.samples.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let mut b = vec![Complex64::new(0.0, 0.0); n];
    for (dst, &v) in b.iter_mut().zip(ref_wave.samples.iter()) {
        *dst = Complex64::new(v, 0.0);
    }
    fwd.process(&mut a);
    fwd.process(&mut b);
    for (x, y) in a.iter_mut().zip(&b) {
        *x *= y.conj();
    }
    planner.plan_fft_inverse(n).process(&mut a);
    let corr: Vec<f64> = a.iter().map(|c| c.re.abs()).collect();

    let (peak_idx, peak) = corr
        .iter()
        .enumerate()
        .fold((0, f64::MIN), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
    let exclusion = (2.0 * sps).ceil() as i64;
    let secondary = corr
        .iter()
        .enumerate()
        .filter(|(i, _)| {
            let d = (*i as i64 - peak_idx as i64).rem_euclid(n as i64);
            d.min(n as i64 - d) > exclusion
        })
        .fold(0.0f64, |m, (_, &v)| m.max(v));
    let ratio = if secondary > 0.0 { peak / secondary } else { f64::INFINITY };
    if !(ratio >= MIN_PEAK_RATIO) {
        return Err(RxError::SyncFailure { ratio });
    }

    let ym = corr[(peak_idx + n - 1) % n];
    let yp = corr[(peak_idx + 1) % n];
    let denom = ym - 2.0 * peak + yp;
    let frac = if denom.abs() > 0.0 { 0.5 * (ym - yp) / denom } else { 0.0 };
    let mut delay = peak_idx as f64 + frac + lead;
    delay = delay.rem_euclid(n as f64);
    if delay > n as f64 / 2.0 {
        delay -= n as f64;
    }
    Ok(delay)
}

/// Band-limited interpolation of `rx` at `delay + k · fs/symbol_rate`,
/// `k = 0..n_symbols`.
pub fn resample_1sps(
    rx: &DigitalWaveform,
    delay: f64,
    symbol_rate: f64,
    n_symbols: usize,
) -> Result<Vec<f64>, RxError> {
    let sps = rx.sample_rate / symbol_rate;
    let needed = (n_symbols as f64 * sps - 1e-6).floor() as usize;
    if rx.len() < needed || rx.is_empty() {
        return Err(RxError::InsufficientSamples { needed, available: rx.len() });
    }
    let r = Resampler::with_cutoff(rx.sample_rate, symbol_rate, rx.sample_rate / 2.0);
    Ok(r.process_cyclic(&rx.samples, n_symbols, delay))
}
