use serde::{Deserialize, Serialize};

use super::MetricsError;

/// Points with fewer counted errors are flagged as statistically unreliable.
pub const MIN_RELIABLE_ERRORS: f64 = 100.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BerPoint {
    pub rop_dbm: f64,
    pub ber: f64,
    pub bits: u64,
}

impl BerPoint {
    pub fn new(rop_dbm: f64, errors: u64, bits: u64) -> Self {
        let ber = if bits == 0 { 0.0 } else { errors as f64 / bits as f64 };
        BerPoint { rop_dbm, ber, bits }
    }

    pub fn errors(&self) -> f64 {
        self.ber * self.bits as f64
    }

    pub fn is_reliable(&self) -> bool {
        self.errors() >= MIN_RELIABLE_ERRORS
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormatDescriptor {
    pub modulation: String,
    pub symbol_rate_gbd: f64,
    pub shaping: String,
    pub entropy: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BerCurve {
    pub format: FormatDescriptor,
    pub points: Vec<BerPoint>,
}

impl BerCurve {
    pub fn new(format: FormatDescriptor, points: Vec<BerPoint>) -> Result<Self, MetricsError> {
        for w in points.windows(2) {
            if !(w[1].rop_dbm > w[0].rop_dbm) {
                return Err(MetricsError::InvalidCurve(format!(
                    "ROP values must be strictly increasing ({} then {})",
                    w[0].rop_dbm, w[1].rop_dbm
                )));
            }
        }
        for p in &points {
            if !(0.0..=0.5).contains(&p.ber) {
                return Err(MetricsError::InvalidCurve(format!("BER {} outside [0, 0.5]", p.ber)));
            }
            if p.bits == 0 {
                return Err(MetricsError::InvalidCurve(format!("no bits counted at {} dBm", p.rop_dbm)));
            }
        }
        Ok(BerCurve { format, points })
    }

    /// Builds a curve from (rop, ber) pairs with a nominal bit count.
    pub fn synthetic(points: &[(f64, f64)], bits: u64) -> Result<Self, MetricsError> {
        let format = FormatDescriptor {
            modulation: "synthetic".into(),
            symbol_rate_gbd: 0.0,
            shaping: "uniform".into(),
            entropy: 0.0,
        };
        BerCurve::new(format, points.iter().map(|&(rop_dbm, ber)| BerPoint { rop_dbm, ber, bits }).collect())
    }
}
