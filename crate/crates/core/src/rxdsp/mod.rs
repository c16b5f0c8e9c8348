//! Receive-side DSP: synchronization, resampling to one sample per symbol,
//! Volterra equalization (MMSE-initialized, DD-LMS-tracked), decisions and
//! bit-error counting.

mod ber;
mod decision;
mod lms;
mod mmse;
mod pipeline;
mod sync;
mod volterra;

pub use ber::{demap_and_count, BitErrors};
pub use decision::{decide, DecisionRule};
pub use lms::{ddlms_step, AdaptMode, EqualizerState, DIVERGENCE_NORM};
pub use mmse::{mmse_train, mse, solve_normal_equations};
pub use pipeline::{receive, DecisionKind, ReceiverConfig, RxOutput};
pub use sync::{matched_filter, resample_1sps, synchronize, MIN_PEAK_RATIO};
pub use volterra::{volterra_feature_count, EqualizerConfig, VolterraLayout};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RxError {
    #[error("insufficient samples: need {needed}, have {available}")]
    InsufficientSamples { needed: usize, available: usize },
    #[error("synchronization failed: correlation peak ratio {ratio:.3} below threshold")]
    SyncFailure { ratio: f64 },
    #[error("normal equations singular or ill-conditioned (ridge {ridge}); use ridge > 0")]
    IllConditioned { ridge: f64 },
    #[error("DD-LMS diverged at symbol {index}")]
    Divergence { index: usize },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("{0}")]
    Config(String),
}
