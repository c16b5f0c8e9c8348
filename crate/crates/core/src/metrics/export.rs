//! CSV emission for curves, eyes and histograms.

use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{EyeData, HistogramData, MetricsError};

/// One CSV row of a BER sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BerRecord {
    pub format: String,
    pub symbol_rate_gbd: f64,
    pub entropy: f64,
    pub polarity: String,
    pub rop_dbm: f64,
    pub ber: f64,
    pub bits: u64,
    pub errors: u64,
    pub config_hash: String,
    pub seed: u64,
}

pub fn write_ber_csv<W: Write>(writer: W, records: &[BerRecord]) -> Result<(), MetricsError> {
    let mut w = csv::Writer::from_writer(writer);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// One row per amplitude bin (low to high), one column per time bin, after
/// an `amplitude` column of bin centers.
pub fn write_eye_csv<W: Write>(writer: W, eye: &EyeData) -> Result<(), MetricsError> {
    let mut w = csv::Writer::from_writer(writer);
    let mut header = vec!["amplitude".to_string()];
    header.extend((0..eye.time_bins()).map(|t| format!("t{t}")));
    w.write_record(&header)?;
    let bins = eye.amp_bins();
    let step = (eye.amp_max - eye.amp_min) / bins as f64;
    for a in 0..bins {
        let mut row = vec![(eye.amp_min + (a as f64 + 0.5) * step).to_string()];
        row.extend(eye.counts.iter().map(|col| col[a].to_string()));
        w.write_record(&row)?;
    }
    let mut mean = vec!["mean".to_string()];
    mean.extend(eye.mean.iter().map(|m| m.to_string()));
    w.write_record(&mean)?;
    w.flush()?;
    Ok(())
}

pub fn write_histogram_csv<W: Write>(writer: W, hist: &HistogramData) -> Result<(), MetricsError> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["lower", "upper", "count", "log10_count_plus_1"])?;
    for (i, c) in hist.counts.iter().enumerate() {
        w.write_record([
            hist.edges[i].to_string(),
            hist.edges[i + 1].to_string(),
            c.to_string(),
            hist.log_counts[i].to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
