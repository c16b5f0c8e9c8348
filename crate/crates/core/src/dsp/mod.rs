//! Shared signal-processing plumbing: the waveform type, FFT-domain
//! filtering, band-limited resampling and the binary dump format.

pub mod dump;
mod resample;
mod spectrum;
mod waveform;

pub use resample::{kaiser, Resampler, RESAMPLER_KAISER_BETA, RESAMPLER_TAPS};
pub use spectrum::{
    apply_complex_response, apply_real_response, bin_frequency, power_spectrum, real_spectrum,
};
pub use waveform::DigitalWaveform;
