//! Deterministic simulator for IM/DD optical links carrying uniform and
//! probabilistically shaped PAM.
//!
//! The crate follows the signal path: [`shaping`] draws symbols, [`txchain`]
//! turns them into a DAC waveform, [`channel`] models the electro-optical
//! front end and direct detection, [`rxdsp`] equalizes and decides, and
//! [`metrics`] turns bit errors into waterfalls and sensitivities.
//! [`runner`] ties the stages together for configuration-driven experiments.

pub mod shaping;
pub mod dsp;
pub mod txchain;
pub mod channel;
pub mod seeds;
pub mod rxdsp;
pub mod metrics;
pub mod runner;
