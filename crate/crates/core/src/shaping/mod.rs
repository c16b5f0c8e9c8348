//! PAM constellations, cap/cup Maxwell-Boltzmann shaping, bit mappings and
//! rate algebra.
//!
//! Amplitudes stay on the odd-integer grid `{±1, ±3, …}` throughout; scaling
//! to a drive voltage happens in the DAC model.

mod distribution;
mod mapping;
mod rate;

pub use distribution::{
    distribution_for_entropy, entropy_bits, mb_distribution, sample_symbols, solve_nu,
    Polarity, ShapedDistribution, DEFAULT_ENTROPY_TOL, NU_BRACKET_MAX,
};
pub use mapping::{
    gray_demap, gray_index, gray_label, gray_map, pam6_codebook, pam6_decode, pam6_encode,
    pam6_nearest, Mapping,
};
pub use rate::{achievable_net_rate, required_entropy, RatePlan};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ShapingError {
    #[error("unsupported PAM order {0} (expected 4, 6 or 8)")]
    UnsupportedOrder(usize),
    #[error("shaping exponent must be a finite nonnegative number, got {0}")]
    NegativeNu(f64),
    #[error("entropy tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("target entropy {target} outside (1, {max}]")]
    EntropyOutOfRange { target: f64, max: f64 },
    #[error("bisection for entropy {target} did not converge after {iterations} steps")]
    NoConvergence { target: f64, iterations: usize },
    #[error("rate arguments must be positive")]
    InvalidRateArgument,
    #[error("infeasible rate plan: required entropy {entropy:.6} outside (1, {m}]")]
    InfeasiblePlan { entropy: f64, m: f64 },
    #[error("{len} bits is not a multiple of the {block}-bit mapping block")]
    BitLength { len: usize, block: usize },
    #[error("{len} symbols is not a multiple of the {block}-symbol mapping block")]
    SymbolLength { len: usize, block: usize },
    #[error("symbol index {index} out of range for PAM-{order}")]
    SymbolIndex { index: usize, order: usize },
}

/// Symmetric odd-integer PAM alphabet.
#[derive(Clone, Debug, PartialEq)]
pub struct PamConstellation {
    pub levels: Vec<f64>,
}

impl PamConstellation {
    pub fn new(order: usize) -> Result<Self, ShapingError> {
        if !matches!(order, 4 | 6 | 8) {
            return Err(ShapingError::UnsupportedOrder(order));
        }
        let levels = (0..order)
            .map(|k| 2.0 * k as f64 - (order as f64 - 1.0))
            .collect();
        Ok(PamConstellation { levels })
    }

    pub fn order(&self) -> usize {
        self.levels.len()
    }

    /// `log2(M)`, the entropy of the uniform distribution.
    pub fn max_entropy(&self) -> f64 {
        (self.order() as f64).log2()
    }

    pub fn max_amplitude(&self) -> f64 {
        self.levels.last().copied().unwrap_or(0.0)
    }

    /// Default bit mapping for this alphabet.
    pub fn mapping(&self) -> Mapping {
        Mapping::for_order(self.order()).expect("constructor validated the order")
    }

    pub fn level(&self, index: usize) -> f64 {
        self.levels[index]
    }

    /// Maps level indices to amplitudes.
    pub fn amplitudes(&self, indices: &[usize]) -> Vec<f64> {
        indices.iter().map(|&i| self.levels[i]).collect()
    }
}
