use serde::{Deserialize, Serialize};

use super::RxError;
use crate::shaping::Mapping;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BitErrors {
    pub errors: u64,
    pub bits: u64,
}

impl BitErrors {
    pub fn ber(&self) -> f64 {
        if self.bits == 0 {
            0.0
        } else {
            self.errors as f64 / self.bits as f64
        }
    }

    pub fn merge(self, other: BitErrors) -> BitErrors {
        BitErrors { errors: self.errors + other.errors, bits: self.bits + other.bits }
    }
}

/// Demaps decided level indices and counts bit errors against `tx_bits`.
pub fn demap_and_count(
    decided: &[usize],
    tx_bits: &[u8],
    mapping: Mapping,
) -> Result<BitErrors, RxError> {
    let rx_bits = mapping.demap(decided).map_err(|e| RxError::Config(e.to_string()))?;
    if rx_bits.len() != tx_bits.len() {
        return Err(RxError::LengthMismatch { left: rx_bits.len(), right: tx_bits.len() });
    }
    let errors = rx_bits.iter().zip(tx_bits).filter(|(a, b)| a != b).count() as u64;
    Ok(BitErrors { errors, bits: tx_bits.len() as u64 })
}
