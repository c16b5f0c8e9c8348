use num_complex::Complex64;
use rustfft::FftPlanner;

/// Signed frequency of FFT bin `k` for an `n`-point transform at `rate`.
pub fn bin_frequency(k: usize, n: usize, rate: f64) -> f64 {
    if k <= n / 2 {
        k as f64 * rate / n as f64
    } else {
        (k as f64 - n as f64) * rate / n as f64
    }
}

fn filter_in_place(buf: &mut [Complex64], rate: f64, response: impl Fn(f64) -> f64) {
    let n = buf.len();
    if n == 0 {
        return;
    }
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(n).process(buf);
    let scale = 1.0 / n as f64;
    for (k, v) in buf.iter_mut().enumerate() {
        *v *= response(bin_frequency(k, n, rate)) * scale;
    }
    planner.plan_fft_inverse(n).process(buf);
}

/// Multiplies the (cyclic) spectrum of a real signal by a zero-phase
/// response `H(f)`, `f` in the units of `rate`. `H` must be even in `f` for
/// the output to stay real.
pub fn apply_real_response(samples: &mut [f64], rate: f64, response: impl Fn(f64) -> f64) {
    let mut buf: Vec<Complex64> = samples.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    filter_in_place(&mut buf, rate, response);
    for (s, v) in samples.iter_mut().zip(buf) {
        *s = v.re;
    }
}

pub fn apply_complex_response(samples: &mut [Complex64], rate: f64, response: impl Fn(f64) -> f64) {
    filter_in_place(samples, rate, response);
}

/// Complex spectrum of a real signal, unnormalized.
pub fn real_spectrum(samples: &[f64]) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = samples.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(buf.len()).process(&mut buf);
    buf
}

/// Per-bin power `|X_k|² / n²` of a complex signal (sums to the mean power).
pub fn power_spectrum(samples: &[Complex64]) -> Vec<f64> {
    let n = samples.len();
    let mut buf = samples.to_vec();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let norm = 1.0 / (n as f64 * n as f64);
    buf.iter().map(|v| v.norm_sqr() * norm).collect()
}
