//! Root-raised-cosine pulse.

use std::f64::consts::PI;

use super::TxError;

/// RRC impulse response at time `t` in symbol periods (unnormalized).
pub fn rrc_pulse(t: f64, alpha: f64) -> f64 {
    if t.abs() < 1e-12 {
        return 1.0 - alpha + 4.0 * alpha / PI;
    }
    if alpha > 0.0 && (1.0 - (4.0 * alpha * t).powi(2)).abs() < 1e-10 {
        let a = PI / (4.0 * alpha);
        return alpha / 2f64.sqrt() * ((1.0 + 2.0 / PI) * a.sin() + (1.0 - 2.0 / PI) * a.cos());
    }
    let num = (PI * t * (1.0 - alpha)).sin() + 4.0 * alpha * t * (PI * t * (1.0 + alpha)).cos();
    let den = PI * t * (1.0 - (4.0 * alpha * t).powi(2));
    num / den
}

/// RRC amplitude spectrum at `f` for symbol rate `rs` (unit passband gain).
pub fn rrc_spectrum(f: f64, rs: f64, alpha: f64) -> f64 {
    let f = f.abs();
    let f1 = rs * (1.0 - alpha) / 2.0;
    let f2 = rs * (1.0 + alpha) / 2.0;
    if f <= f1 {
        1.0
    } else if f >= f2 {
        0.0
    } else {
        (0.5 * (1.0 + (PI / (alpha * rs) * (f - f1)).cos())).sqrt()
    }
}

/// `span · sps + 1` taps of the unit-energy RRC pulse, centered.
pub fn rrc_taps(alpha: f64, sps: usize, span: usize) -> Result<Vec<f64>, TxError> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(TxError::InvalidRolloff(alpha));
    }
    if sps < 2 || span == 0 || span % 2 != 0 {
        return Err(TxError::InvalidFilterShape { sps, span });
    }
    let n = span * sps + 1;
    let center = (n / 2) as f64;
    let mut taps: Vec<f64> = (0..n)
        .map(|i| rrc_pulse((i as f64 - center) / sps as f64, alpha))
        .collect();
    let energy: f64 = taps.iter().map(|h| h * h).sum();
    let norm = energy.sqrt();
    taps.iter_mut().for_each(|h| *h /= norm);
    Ok(taps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sinc_limit_has_integer_zero_crossings() {
        let taps = rrc_taps(0.0, 8, 16).unwrap();
        let c = taps.len() / 2;
        for k in 1..8 {
            assert!(taps[c + 8 * k].abs() < 1e-12);
            assert!(taps[c - 8 * k].abs() < 1e-12);
        }
    }

    #[test]
    fn even_symmetry_and_unit_energy() {
        for alpha in [0.0, 0.12, 0.25, 0.33, 0.4, 1.0] {
            let taps = rrc_taps(alpha, 4, 32).unwrap();
            let n = taps.len();
            for k in 0..n {
                assert_eq!(taps[k], taps[n - 1 - k]);
            }
            let e: f64 = taps.iter().map(|h| h * h).sum();
            assert!((e - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn singular_points_are_continuous() {
        // alpha = 0.25: t = ±1 is a singular point of the closed form
        let alpha = 0.25;
        let at = rrc_pulse(1.0, alpha);
        let near = rrc_pulse(1.0 + 1e-6, alpha);
        assert!((at - near).abs() < 1e-5);
    }

    #[test]
    fn raised_cosine_is_nyquist() {
        let sps = 8;
        let taps = rrc_taps(0.4, sps, 64).unwrap();
        let n = taps.len();
        let mut rc = vec![0.0; 2 * n - 1];
        for i in 0..n {
            for j in 0..n {
                rc[i + j] += taps[i] * taps[j];
            }
        }
        let c = n - 1;
        let peak = rc[c];
        let mut k = sps;
        while k <= c {
            assert!(rc[c + k].abs() / peak < 1e-4, "offset {}", k / sps);
            assert!(rc[c - k].abs() / peak < 1e-4);
            k += sps;
        }
    }

    #[test]
    fn domain_checks() {
        assert!(rrc_taps(1.2, 4, 8).is_err());
        assert!(rrc_taps(0.3, 1, 8).is_err());
        assert!(rrc_taps(0.3, 4, 7).is_err());
    }

    #[test]
    fn spectrum_is_power_complementary() {
        let rs = 80.0;
        let alpha = 0.4;
        for i in 0..50 {
            let f = i as f64 * 0.8;
            let a = rrc_spectrum(f, rs, alpha).powi(2);
            let b = rrc_spectrum(f - rs, rs, alpha).powi(2);
            assert!((a + b - 1.0).abs() < 1e-12 || f > rs);
        }
    }
}
