//! Net-rate and overhead algebra for shaped and uniform PAM.

use serde::{Deserialize, Serialize};

use super::ShapingError;

/// Rate bookkeeping for one format at one symbol rate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatePlan {
    pub symbol_rate_gbd: f64,
    pub fec_overhead: f64,
    pub bits_per_symbol_max: f64,
    pub entropy_target: f64,
    pub net_rate_gbps: f64,
    pub ps_overhead: f64,
}

impl RatePlan {
    /// Plan for a target net rate; the entropy is derived.
    pub fn for_net_rate(
        net_rate_gbps: f64,
        symbol_rate_gbd: f64,
        fec_overhead: f64,
        m: f64,
    ) -> Result<Self, ShapingError> {
        let h = required_entropy(net_rate_gbps, symbol_rate_gbd, fec_overhead, m)?;
        Self::for_entropy(h, symbol_rate_gbd, fec_overhead, m)
    }

    /// Plan for a fixed entropy; the net rate is derived.
    pub fn for_entropy(
        entropy: f64,
        symbol_rate_gbd: f64,
        fec_overhead: f64,
        m: f64,
    ) -> Result<Self, ShapingError> {
        let net = achievable_net_rate(entropy, symbol_rate_gbd, fec_overhead, m)?;
        Ok(RatePlan {
            symbol_rate_gbd,
            fec_overhead,
            bits_per_symbol_max: m,
            entropy_target: entropy,
            net_rate_gbps: net,
            ps_overhead: m - entropy,
        })
    }
}

/// FEC parity bits per symbol for an `m`-bit label at overhead `oh`.
fn fec_bits(fec_overhead: f64, m: f64) -> f64 {
    m * fec_overhead / (1.0 + fec_overhead)
}

/// Entropy needed to carry `net_rate` at `symbol_rate` with FEC overhead
/// applied to all `m` label bits.
pub fn required_entropy(
    net_rate_gbps: f64,
    symbol_rate_gbd: f64,
    fec_overhead: f64,
    m: f64,
) -> Result<f64, ShapingError> {
    if !(net_rate_gbps > 0.0 && symbol_rate_gbd > 0.0 && fec_overhead >= 0.0 && m > 0.0) {
        return Err(ShapingError::InvalidRateArgument);
    }
    let h = net_rate_gbps / symbol_rate_gbd + fec_bits(fec_overhead, m);
    if !(h > 1.0 && h <= m + 1e-12) {
        return Err(ShapingError::InfeasiblePlan { entropy: h, m });
    }
    Ok(h.min(m))
}

pub fn achievable_net_rate(
    entropy: f64,
    symbol_rate_gbd: f64,
    fec_overhead: f64,
    m: f64,
) -> Result<f64, ShapingError> {
    if !(entropy > 0.0 && entropy <= m && symbol_rate_gbd > 0.0 && fec_overhead >= 0.0) {
        return Err(ShapingError::InvalidRateArgument);
    }
    Ok(symbol_rate_gbd * (entropy - fec_bits(fec_overhead, m)))
}
