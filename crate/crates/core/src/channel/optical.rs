//! Optical segment: the field type, MZM, fiber/VOA, pre-amplifier and
//! optical band-pass.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use super::ChannelError;
use crate::dsp::{power_spectrum, DigitalWaveform};

const PLANCK: f64 = 6.626_070_15e-34;
const LIGHT_SPEED: f64 = 299_792_458.0;

/// Complex baseband field in √mW.
#[derive(Clone, Debug, PartialEq)]
pub struct OpticalField {
    pub samples: Vec<Complex64>,
    pub sample_rate: f64,
}

impl OpticalField {
    pub fn new(samples: Vec<Complex64>, sample_rate: f64) -> Self {
        assert!(sample_rate > 0.0, "sample rate must be positive");
        OpticalField { samples, sample_rate }
    }

    /// Mean power, mW.
    pub fn mean_power(&self) -> f64 {
        if self.samples.is_empty() {
            return 0.0;
        }
        self.samples.iter().map(|e| e.norm_sqr()).sum::<f64>() / self.samples.len() as f64
    }

    pub fn mean_power_dbm(&self) -> f64 {
        mw_to_dbm(self.mean_power())
    }

    pub fn intensity(&self) -> Vec<f64> {
        self.samples.iter().map(|e| e.norm_sqr()).collect()
    }

    fn scaled(&self, amplitude_gain: f64) -> Self {
        OpticalField::new(
            self.samples.iter().map(|e| e * amplitude_gain).collect(),
            self.sample_rate,
        )
    }
}

pub fn dbm_to_mw(dbm: f64) -> f64 {
    10f64.powf(dbm / 10.0)
}

pub fn mw_to_dbm(mw: f64) -> f64 {
    10.0 * mw.log10()
}

/// Quadrature-biased MZM in push-pull:
/// `E = √P · cos(π/4 + π·v / (2·v_pi))`.
///
/// Intensity is `P/2` at zero drive, `P` at `v = -v_pi/2` and zero at
/// `v = +v_pi/2`.
pub fn mzm_modulate(drive: &DigitalWaveform, v_pi: f64, p_laser_mw: f64) -> OpticalField {
    let amp = p_laser_mw.sqrt();
    let samples = drive
        .samples
        .iter()
        .map(|&v| {
            let phase = std::f64::consts::FRAC_PI_4 + std::f64::consts::PI * v / (2.0 * v_pi);
            Complex64::new(amp * phase.cos(), 0.0)
        })
        .collect();
    OpticalField::new(samples, drive.sample_rate)
}

/// Fiber attenuation followed by a VOA that sets the mean power to
/// `rop_dbm`. No dispersion.
pub fn fiber_and_rop(
    field: &OpticalField,
    fiber_km: f64,
    atten_db_per_km: f64,
    rop_dbm: f64,
) -> Result<OpticalField, ChannelError> {
    let loss_db = fiber_km * atten_db_per_km;
    let available_dbm = field.mean_power_dbm() - loss_db;
    // the VOA can only attenuate
    if rop_dbm > available_dbm + 1e-9 {
        return Err(ChannelError::RopUnavailable { requested: rop_dbm, available: available_dbm });
    }
    let target = dbm_to_mw(rop_dbm);
    let gain = (target / field.mean_power()).sqrt();
    Ok(field.scaled(gain))
}

/// Photon energy at `wavelength_nm`, J.
pub fn photon_energy(wavelength_nm: f64) -> f64 {
    PLANCK * LIGHT_SPEED / (wavelength_nm * 1e-9)
}

/// Single-polarization ASE PSD of an amplifier with linear gain `gain` and
/// noise figure `nf_db`, W/Hz: `(NF·G - 1)·hν/2`.
pub fn ase_psd(gain: f64, nf_db: f64, wavelength_nm: f64) -> f64 {
    let nf = 10f64.powf(nf_db / 10.0);
    ((nf * gain - 1.0).max(0.0)) * photon_energy(wavelength_nm) / 2.0
}

/// Constant-output-power pre-amplifier.
///
/// The gain brings the signal to `amp_out_dbm`; circular Gaussian ASE over
/// the whole simulation band is added on top. `amp_nf_db = -inf` disables
/// the noise.
pub fn preamp(
    field: &OpticalField,
    amp_out_dbm: f64,
    amp_nf_db: f64,
    wavelength_nm: f64,
    seed: u64,
) -> Result<OpticalField, ChannelError> {
    let p_in = field.mean_power();
    let gain = dbm_to_mw(amp_out_dbm) / p_in;
    if !(p_in > 0.0) || !(gain > 1.0) || !gain.is_finite() {
        return Err(ChannelError::NonPositiveGain {
            input_dbm: mw_to_dbm(p_in),
            output_dbm: amp_out_dbm,
        });
    }
    let mut out = field.scaled(gain.sqrt());
    if amp_nf_db == f64::NEG_INFINITY {
        return Ok(out);
    }
    // PSD in W/Hz over fs GHz → complex noise power in mW
    let noise_mw = ase_psd(gain, amp_nf_db, wavelength_nm) * field.sample_rate * 1e9 * 1e3;
    let sigma = (noise_mw / 2.0).sqrt();
    let normal = Normal::new(0.0, sigma).expect("finite sigma");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for e in out.samples.iter_mut() {
        let re = normal.sample(&mut rng);
        let im = normal.sample(&mut rng);
        *e += Complex64::new(re, im);
    }
    Ok(out)
}

/// OSNR in dB referenced to `ref_bw_ghz`, estimated from the noise floor in
/// the band `|f| > signal_edge_ghz` (assumed signal-free).
pub fn estimate_osnr_db(field: &OpticalField, signal_edge_ghz: f64, ref_bw_ghz: f64) -> f64 {
    let n = field.samples.len();
    let fs = field.sample_rate;
    let spec = power_spectrum(&field.samples);
    let (mut noise, mut count) = (0.0, 0usize);
    for (k, p) in spec.iter().enumerate() {
        let f = crate::dsp::bin_frequency(k, n, fs);
        if f.abs() > signal_edge_ghz {
            noise += p;
            count += 1;
        }
    }
    let total: f64 = spec.iter().sum();
    // noise power per GHz
    let noise_density = noise / count.max(1) as f64 * n as f64 / fs;
    let signal = (total - noise_density * fs).max(0.0);
    10.0 * (signal / (noise_density * ref_bw_ghz)).log10()
}
