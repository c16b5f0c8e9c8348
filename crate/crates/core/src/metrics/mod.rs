//! BER curves, receiver-sensitivity extraction and eye/histogram
//! diagnostics.

mod curve;
mod export;
mod eye;
mod histogram;
mod sensitivity;

pub use curve::{BerCurve, BerPoint, FormatDescriptor, MIN_RELIABLE_ERRORS};
pub use export::{write_ber_csv, write_eye_csv, write_histogram_csv, BerRecord};
pub use eye::{eye_accumulate, EyeData};
pub use histogram::{log_histogram, log_histogram_range, HistogramData, MIN_HISTOGRAM_BINS};
pub use sensitivity::{sensitivity, SensitivityResult, SensitivityStatus, HD_FEC_THRESHOLD};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("invalid BER curve: {0}")]
    InvalidCurve(String),
    #[error("ambiguous threshold crossing at {crossings:?} dBm")]
    Ambiguous { crossings: Vec<f64> },
    #[error("histogram needs at least {min} bins, got {got}")]
    TooFewBins { got: usize, min: usize },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
