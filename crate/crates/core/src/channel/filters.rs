use num_complex::Complex64;

use crate::dsp::{apply_complex_response, apply_real_response, DigitalWaveform};

/// Zero-phase Gaussian magnitude response of order `n` with 3-dB point `f3db`.
pub fn gaussian_response(f: f64, f3db: f64, order: u32) -> f64 {
    let x = (f / f3db).powi(2 * order as i32);
    (-std::f64::consts::LN_2 / 2.0 * x).exp()
}

/// Gaussian low-pass applied in the frequency domain (cyclic).
pub fn lowpass(waveform: &DigitalWaveform, f3db: f64, order: u32) -> DigitalWaveform {
    assert!(f3db > 0.0, "3-dB bandwidth must be positive");
    let mut samples = waveform.samples.clone();
    apply_real_response(&mut samples, waveform.sample_rate, |f| {
        gaussian_response(f, f3db, order)
    });
    DigitalWaveform::new(samples, waveform.sample_rate)
}

pub fn lowpass_complex(samples: &mut [Complex64], rate: f64, f3db: f64, order: u32) {
    assert!(f3db > 0.0, "3-dB bandwidth must be positive");
    apply_complex_response(samples, rate, |f| gaussian_response(f, f3db, order));
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn tone_gain_db(f: f64, f3db: f64, order: u32) -> f64 {
        // 2048 samples at 256 GSa/s with the tone on an exact bin
        let n = 2048;
        let rate = 256.0;
        let x: Vec<f64> = (0..n).map(|i| (2.0 * PI * f * i as f64 / rate).sin()).collect();
        let y = lowpass(&DigitalWaveform::new(x.clone(), rate), f3db, order);
        let px: f64 = x.iter().map(|v| v * v).sum();
        let py: f64 = y.samples.iter().map(|v| v * v).sum();
        10.0 * (py / px).log10()
    }

    #[test]
    fn dc_unchanged() {
        let w = DigitalWaveform::new(vec![2.5; 100], 10.0);
        let y = lowpass(&w, 1.0, 1);
        for v in y.samples {
            assert!((v - 2.5).abs() < 1e-12);
        }
    }

    #[test]
    fn three_db_point() {
        // 25 GHz = 200 bins · 0.125 GHz
        let g = tone_gain_db(25.0, 25.0, 1);
        assert!((g + 3.0).abs() < 0.1, "{g}");
        let g2 = tone_gain_db(25.0, 25.0, 3);
        assert!((g2 + 3.0).abs() < 0.1, "{g2}");
    }

    #[test]
    fn first_order_at_twice_bandwidth() {
        // |H(2 f3)|² = 2^-4 → -12.04 dB
        let g = tone_gain_db(50.0, 25.0, 1);
        assert!((g + 12.0).abs() < 0.5, "{g}");
    }
}
