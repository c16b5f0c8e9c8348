//! IM/DD channel: band-limited electrical front end, quadrature-biased MZM,
//! fiber attenuation and VOA, constant-output pre-amplifier with ASE,
//! optical filter, square-law detection and oscilloscope capture.
//!
//! Every bandwidth limitation is a zero-phase Gaussian low-pass. All
//! processing runs at one internal rate ([`ChannelConfig::sim_rate_gsps`])
//! and treats the waveform as periodic.

mod detect;
mod filters;
mod optical;

pub use detect::{adc_capture, photodetect, quantize_autorange};
pub use filters::{gaussian_response, lowpass, lowpass_complex};
pub use optical::{
    ase_psd, dbm_to_mw, estimate_osnr_db, fiber_and_rop, mw_to_dbm, mzm_modulate, photon_energy,
    preamp, OpticalField,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dsp::{DigitalWaveform, Resampler};
use crate::seeds;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChannelError {
    #[error("requested ROP {requested:.2} dBm exceeds the {available:.2} dBm available after the fiber")]
    RopUnavailable { requested: f64, available: f64 },
    #[error("pre-amplifier gain must be positive: input {input_dbm:.2} dBm, output {output_dbm:.2} dBm")]
    NonPositiveGain { input_dbm: f64, output_dbm: f64 },
    #[error("invalid channel configuration: {0}")]
    Config(String),
}

/// Physical parameters of the link. Bandwidths are 3-dB frequencies in GHz,
/// rates in GSa/s.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChannelConfig {
    pub sim_rate_gsps: f64,
    /// Order of every Gaussian low-pass.
    pub filter_order: u32,
    pub awg_bw_ghz: f64,
    pub ea_bw_ghz: f64,
    pub ea_gain_db: f64,
    /// Memoryless `sat·tanh(g·x/sat)` compression of the EA; `None` = linear.
    pub ea_saturation_v: Option<f64>,
    pub mzm_bw_ghz: f64,
    pub v_pi: f64,
    pub laser_power_mw: f64,
    pub wavelength_nm: f64,
    pub fiber_km: f64,
    pub atten_db_per_km: f64,
    pub amp_out_dbm: f64,
    /// `-inf` disables ASE.
    pub amp_nf_db: f64,
    /// Full (two-sided) 3-dB width of the optical filter.
    pub opt_filter_bw_ghz: f64,
    pub pd_resp: f64,
    pub pd_bw_ghz: f64,
    /// One-sided thermal noise PSD, A²/Hz.
    pub thermal_psd: f64,
    pub adc_rate_gsps: f64,
    pub adc_bw_ghz: f64,
    pub adc_bits: u32,
}

impl Default for ChannelConfig {
    fn default() -> Self {
        ChannelConfig {
            sim_rate_gsps: 480.0,
            filter_order: 1,
            awg_bw_ghz: 46.0,
            ea_bw_ghz: 60.0,
            ea_gain_db: 22.0,
            ea_saturation_v: None,
            mzm_bw_ghz: 33.0,
            v_pi: 4.0,
            laser_power_mw: 20.0,
            wavelength_nm: 1310.0,
            fiber_km: 0.0,
            atten_db_per_km: 0.33,
            amp_out_dbm: 7.0,
            amp_nf_db: 5.0,
            opt_filter_bw_ghz: 150.0,
            pd_resp: 0.7,
            pd_bw_ghz: 75.0,
            thermal_psd: 1e-22,
            adc_rate_gsps: 256.0,
            adc_bw_ghz: 110.0,
            adc_bits: 8,
        }
    }
}

impl ChannelConfig {
    /// Bandwidths opened far beyond the signal, no noise, no fiber and fine
    /// quantization: a transparent electro-optical path.
    pub fn transparent() -> Self {
        ChannelConfig {
            awg_bw_ghz: 1e6,
            ea_bw_ghz: 1e6,
            mzm_bw_ghz: 1e6,
            opt_filter_bw_ghz: 1e7,
            pd_bw_ghz: 1e6,
            adc_bw_ghz: 1e6,
            amp_nf_db: f64::NEG_INFINITY,
            thermal_psd: 0.0,
            adc_bits: 16,
            ..ChannelConfig::default()
        }
    }

    pub fn validate(&self) -> Result<(), ChannelError> {
        let positive = [
            ("sim_rate_gsps", self.sim_rate_gsps),
            ("awg_bw_ghz", self.awg_bw_ghz),
            ("ea_bw_ghz", self.ea_bw_ghz),
            ("mzm_bw_ghz", self.mzm_bw_ghz),
            ("v_pi", self.v_pi),
            ("laser_power_mw", self.laser_power_mw),
            ("wavelength_nm", self.wavelength_nm),
            ("opt_filter_bw_ghz", self.opt_filter_bw_ghz),
            ("pd_resp", self.pd_resp),
            ("pd_bw_ghz", self.pd_bw_ghz),
            ("adc_rate_gsps", self.adc_rate_gsps),
            ("adc_bw_ghz", self.adc_bw_ghz),
        ];
        for (name, v) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return Err(ChannelError::Config(format!("{name} must be positive, got {v}")));
            }
        }
        if self.filter_order == 0 {
            return Err(ChannelError::Config("filter_order must be >= 1".into()));
        }
        if self.fiber_km < 0.0 || self.atten_db_per_km < 0.0 {
            return Err(ChannelError::Config("fiber length and attenuation must be >= 0".into()));
        }
        if self.thermal_psd < 0.0 {
            return Err(ChannelError::Config("thermal_psd must be >= 0".into()));
        }
        if !(1..=24).contains(&self.adc_bits) {
            return Err(ChannelError::Config(format!("adc_bits {} outside [1, 24]", self.adc_bits)));
        }
        if let Some(sat) = self.ea_saturation_v {
            if !(sat > 0.0) {
                return Err(ChannelError::Config("ea_saturation_v must be positive".into()));
            }
        }
        Ok(())
    }

    /// Linear voltage gain of the electrical amplifier.
    pub fn ea_gain(&self) -> f64 {
        10f64.powf(self.ea_gain_db / 20.0)
    }

    /// Fiber loss in dB.
    pub fn fiber_loss_db(&self) -> f64 {
        self.fiber_km * self.atten_db_per_km
    }
}

/// Waveforms at the observable points of the link.
#[derive(Clone, Debug)]
pub struct ChannelOutput {
    /// Electrical drive at the MZM input, after all front-end filtering.
    pub drive: DigitalWaveform,
    /// Optical field at the photodiode input.
    pub field_at_pd: OpticalField,
    /// Captured oscilloscope samples.
    pub captured: DigitalWaveform,
}

/// Electrical front end: DAC reconstruction to the simulation rate, AWG
/// bandwidth, EA gain/compression, EA bandwidth and MZM electrode bandwidth.
pub fn electrical_front_end(dac: &DigitalWaveform, cfg: &ChannelConfig) -> DigitalWaveform {
    let fs = cfg.sim_rate_gsps;
    let resampler = Resampler::new(dac.sample_rate, fs);
    let out_len = resampler.output_len(dac.len());
    let up = DigitalWaveform::new(resampler.process_cyclic(&dac.samples, out_len, 0.0), fs);
    let n = cfg.filter_order;
    let awg = lowpass(&up, cfg.awg_bw_ghz, n);
    let g = cfg.ea_gain();
    let amplified = match cfg.ea_saturation_v {
        None => awg.map(|x| g * x),
        Some(sat) => awg.map(|x| sat * (g * x / sat).tanh()),
    };
    let ea = lowpass(&amplified, cfg.ea_bw_ghz, n);
    lowpass(&ea, cfg.mzm_bw_ghz, n)
}

/// Runs the DAC waveform through the whole link at the given ROP.
pub fn propagate(
    dac: &DigitalWaveform,
    cfg: &ChannelConfig,
    rop_dbm: f64,
    seed: u64,
) -> Result<ChannelOutput, ChannelError> {
    cfg.validate()?;
    if rop_dbm > cfg.amp_out_dbm {
        return Err(ChannelError::Config(format!(
            "ROP {rop_dbm} dBm above pre-amplifier output {} dBm",
            cfg.amp_out_dbm
        )));
    }
    let drive = electrical_front_end(dac, cfg);
    let modulated = mzm_modulate(&drive, cfg.v_pi, cfg.laser_power_mw);
    let received = fiber_and_rop(&modulated, cfg.fiber_km, cfg.atten_db_per_km, rop_dbm)?;
    let mut amplified = preamp(
        &received,
        cfg.amp_out_dbm,
        cfg.amp_nf_db,
        cfg.wavelength_nm,
        seeds::derive(seed, 1),
    )?;
    lowpass_complex(
        &mut amplified.samples,
        amplified.sample_rate,
        cfg.opt_filter_bw_ghz / 2.0,
        cfg.filter_order,
    );
    let current = photodetect(
        &amplified,
        cfg.pd_resp,
        cfg.pd_bw_ghz,
        cfg.filter_order,
        cfg.thermal_psd,
        seeds::derive(seed, 2),
    );
    let captured = adc_capture(
        &current,
        cfg.adc_rate_gsps,
        cfg.adc_bw_ghz,
        cfg.adc_bits,
        cfg.filter_order,
    );
    Ok(ChannelOutput { drive, field_at_pd: amplified, captured })
}
