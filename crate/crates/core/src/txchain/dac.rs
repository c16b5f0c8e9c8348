//! DAC scaling and quantization.

use serde::{Deserialize, Serialize};

use crate::dsp::DigitalWaveform;
use super::TxError;

pub const DEFAULT_DAC_BITS: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum ClipMode {
    /// Waveform peak maps to `vpp / 2`.
    Peak,
    /// RMS maps to `vpp/2 · 10^(-backoff/20)`, then hard clip at `±vpp/2`.
    RmsBackoff { backoff_db: f64 },
}

/// Quantized DAC output plus the scale that was applied.
#[derive(Clone, Debug, PartialEq)]
pub struct DacOutput {
    pub waveform: DigitalWaveform,
    /// Volts per unit of the input waveform.
    pub scale: f64,
}

/// Scales per `clip_mode` and quantizes to `2^bits` mid-tread levels with
/// step `vpp / 2^bits` (two's-complement codes, so zero is a level).
pub fn dac_quantize(
    waveform: &DigitalWaveform,
    bits: u32,
    vpp: f64,
    clip_mode: ClipMode,
) -> Result<DacOutput, TxError> {
    if !(4..=12).contains(&bits) {
        return Err(TxError::DacBits(bits));
    }
    if !(vpp > 0.0) {
        return Err(TxError::Config(format!("vpp must be positive, got {vpp}")));
    }
    let half = vpp / 2.0;
    let scale = match clip_mode {
        ClipMode::Peak => {
            let peak = waveform.peak();
            if peak > 0.0 { half / peak } else { 0.0 }
        }
        ClipMode::RmsBackoff { backoff_db } => {
            let rms = waveform.rms();
            if rms > 0.0 { half * 10f64.powf(-backoff_db / 20.0) / rms } else { 0.0 }
        }
    };
    let step = vpp / (1u64 << bits) as f64;
    let max_code = ((1i64 << (bits - 1)) - 1) as f64;
    let min_code = -((1i64 << (bits - 1)) as f64);
    let samples = waveform
        .samples
        .iter()
        .map(|&x| {
            let v = (x * scale).clamp(-half, half);
            (v / step).round().clamp(min_code, max_code) * step
        })
        .collect();
    Ok(DacOutput {
        waveform: DigitalWaveform::new(samples, waveform.sample_rate),
        scale,
    })
}
