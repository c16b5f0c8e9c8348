//! Transmit-side DSP: bit source, pulse shaping, resampling to the DAC rate
//! and DAC scaling/quantization.

mod dac;
mod prbs;
mod rrc;
mod shaper;

pub use dac::{dac_quantize, ClipMode, DacOutput, DEFAULT_DAC_BITS};
pub use prbs::{prbs_generate, Prbs};
pub use rrc::{rrc_pulse, rrc_spectrum, rrc_taps};
pub use shaper::{
    default_rolloff, pulse_dc_gain, shape_and_resample, shaped_len, PulseShaperConfig,
    DEFAULT_OVERSAMPLING, DEFAULT_SPAN,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TxError {
    #[error("unsupported PRBS degree {0} (expected 7, 9, 11, 13, 15, 23 or 31)")]
    UnsupportedPrbsDegree(u32),
    #[error("PRBS seed must be nonzero within the register width")]
    ZeroPrbsSeed,
    #[error("roll-off {0} outside [0, 1]")]
    InvalidRolloff(f64),
    #[error("invalid RRC shape: sps {sps} (need >= 2), span {span} (need even, > 0)")]
    InvalidFilterShape { sps: usize, span: usize },
    #[error("occupied bandwidth {occupied} GHz exceeds Nyquist {nyquist} GHz")]
    BandwidthViolation { occupied: f64, nyquist: f64 },
    #[error("DAC resolution {0} bits outside [4, 12]")]
    DacBits(u32),
    #[error("{0}")]
    Config(String),
}
