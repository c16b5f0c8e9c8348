//! Threshold crossing on a BER waterfall, interpolated linearly in
//! (ROP dBm, log10 BER).

use serde::{Deserialize, Serialize};

use super::{BerCurve, BerPoint, MetricsError};

/// BER limit of 7 % hard-decision FEC.
pub const HD_FEC_THRESHOLD: f64 = 3.8e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SensitivityStatus {
    /// Crossing found; `rop_at_threshold` is interpolated or a measured point.
    Reached,
    /// Every nonzero point lies above the threshold.
    NotReached,
    /// The last point above threshold is followed by zero-BER points only;
    /// `rop_at_threshold` is the first zero-BER ROP, an upper bound.
    UpperBound,
    /// Every point already lies below the threshold; `rop_at_threshold` is
    /// the lowest ROP swept, an upper bound.
    BelowSweep,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SensitivityResult {
    pub threshold_ber: f64,
    pub status: SensitivityStatus,
    pub rop_at_threshold: Option<f64>,
    /// Measured points straddling the threshold, when reached by interpolation.
    pub bracket: Option<(BerPoint, BerPoint)>,
}

impl SensitivityResult {
    pub fn is_reached(&self) -> bool {
        self.status == SensitivityStatus::Reached
    }
}

pub fn sensitivity(curve: &BerCurve, threshold: f64) -> Result<SensitivityResult, MetricsError> {
    if curve.points.is_empty() {
        return Err(MetricsError::InvalidCurve("no points".into()));
    }
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(MetricsError::InvalidCurve(format!("threshold {threshold} outside (0, 1)")));
    }
    let result = |status, rop, bracket| SensitivityResult {
        threshold_ber: threshold,
        status,
        rop_at_threshold: rop,
        bracket,
    };
    let usable: Vec<BerPoint> = curve.points.iter().copied().filter(|p| p.ber > 0.0).collect();
    if usable.is_empty() {
        return Ok(result(SensitivityStatus::BelowSweep, Some(curve.points[0].rop_dbm), None));
    }

    let lt = threshold.log10();
    let mut crossings: Vec<(f64, Option<(BerPoint, BerPoint)>, bool)> = Vec::new();
    for p in &usable {
        if p.ber == threshold {
            crossings.push((p.rop_dbm, None, true));
        }
    }
    for w in usable.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (da, db) = (a.ber - threshold, b.ber - threshold);
        if da * db < 0.0 {
            let (la, lb) = (a.ber.log10(), b.ber.log10());
            let rop = a.rop_dbm + (lt - la) * (b.rop_dbm - a.rop_dbm) / (lb - la);
            crossings.push((rop, Some((a, b)), da > 0.0));
        }
    }
    crossings.sort_by(|x, y| x.0.total_cmp(&y.0));

    match crossings.as_slice() {
        [] => {
            if usable.iter().all(|p| p.ber > threshold) {
                let last_above = usable.last().expect("nonempty").rop_dbm;
                match curve.points.iter().find(|p| p.ber == 0.0 && p.rop_dbm > last_above) {
                    Some(z) => Ok(result(SensitivityStatus::UpperBound, Some(z.rop_dbm), None)),
                    None => Ok(result(SensitivityStatus::NotReached, None, None)),
                }
            } else {
                Ok(result(SensitivityStatus::BelowSweep, Some(curve.points[0].rop_dbm), None))
            }
        }
        [(rop, bracket, falling)] if *falling => Ok(result(SensitivityStatus::Reached, Some(*rop), *bracket)),
        _ => Err(MetricsError::Ambiguous { crossings: crossings.iter().map(|c| c.0).collect() }),
    }
}
