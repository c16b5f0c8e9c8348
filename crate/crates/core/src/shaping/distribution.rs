//! Cap and cup Maxwell-Boltzmann distributions over a PAM constellation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{PamConstellation, ShapingError};

/// Upper end of the bisection bracket for the shaping exponent.
pub const NU_BRACKET_MAX: f64 = 64.0;
/// Default entropy tolerance for [`solve_nu`], bits.
pub const DEFAULT_ENTROPY_TOL: f64 = 1e-9;
const MAX_BISECTION_STEPS: usize = 200;

/// Sign of the exponent in `p(x) ∝ exp(±ν x²)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    /// `exp(-ν x²)`: mass concentrated on the inner levels.
    Cap,
    /// `exp(+ν x²)`: mass concentrated on the outer levels.
    Cup,
}

impl Polarity {
    fn sign(self) -> f64 {
        match self {
            Polarity::Cap => -1.0,
            Polarity::Cup => 1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Polarity::Cap => "cap",
            Polarity::Cup => "cup",
        }
    }
}

impl std::fmt::Display for Polarity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A PAM constellation together with per-level probabilities.
#[derive(Clone, Debug, PartialEq)]
pub struct ShapedDistribution {
    pub constellation: PamConstellation,
    pub probs: Vec<f64>,
    pub nu: f64,
    pub polarity: Polarity,
    pub entropy_bits: f64,
}

impl ShapedDistribution {
    /// Equiprobable distribution (ν = 0).
    pub fn uniform(constellation: PamConstellation) -> Self {
        mb_distribution(constellation, 0.0, Polarity::Cap).expect("nu = 0 is always valid")
    }

    pub fn levels(&self) -> &[f64] {
        &self.constellation.levels
    }

    pub fn is_uniform(&self) -> bool {
        self.nu == 0.0
    }

    /// Cumulative distribution, last entry forced to exactly 1.
    pub fn cdf(&self) -> Vec<f64> {
        let mut acc = 0.0;
        let mut cdf: Vec<f64> = self
            .probs
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        if let Some(last) = cdf.last_mut() {
            *last = 1.0;
        }
        cdf
    }

    /// Mean of `x²` under the distribution.
    pub fn second_moment(&self) -> f64 {
        self.levels()
            .iter()
            .zip(&self.probs)
            .map(|(x, p)| p * x * x)
            .sum()
    }

    /// Plain-text `(level, probability)` listing, one pair per line.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "# pam{} {} nu={:.12} entropy={:.12}\n",
            self.constellation.order(),
            self.polarity,
            self.nu,
            self.entropy_bits
        );
        for (x, p) in self.levels().iter().zip(&self.probs) {
            out.push_str(&format!("{x} {p:.15e}\n"));
        }
        out
    }
}

/// Shannon entropy in bits; zero-probability entries contribute nothing.
pub fn entropy_bits(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum()
}

fn mb_probs(levels: &[f64], nu: f64, polarity: Polarity) -> Vec<f64> {
    let s = polarity.sign();
    let exps: Vec<f64> = levels.iter().map(|x| s * nu * x * x).collect();
    // shift by the max exponent so the cup family cannot overflow
    let max = exps.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let w: Vec<f64> = exps.iter().map(|e| (e - max).exp()).collect();
    let z: f64 = w.iter().sum();
    w.into_iter().map(|v| v / z).collect()
}

/// Maxwell-Boltzmann distribution `p(x) ∝ exp(s·ν·x²)`, `s = -1` for cap and
/// `+1` for cup.
pub fn mb_distribution(
    constellation: PamConstellation,
    nu: f64,
    polarity: Polarity,
) -> Result<ShapedDistribution, ShapingError> {
    if !(nu >= 0.0) || !nu.is_finite() {
        return Err(ShapingError::NegativeNu(nu));
    }
    let probs = mb_probs(&constellation.levels, nu, polarity);
    let entropy = entropy_bits(&probs);
    Ok(ShapedDistribution {
        constellation,
        probs,
        nu,
        polarity,
        entropy_bits: entropy,
    })
}

fn entropy_at(levels: &[f64], nu: f64, polarity: Polarity) -> f64 {
    entropy_bits(&mb_probs(levels, nu, polarity))
}

/// Finds the shaping exponent whose distribution has `target_entropy` bits.
///
/// Entropy decreases strictly in ν for both polarities, so a bisection over
/// `[0, 64]` converges. As ν grows the entropy approaches 1 bit (two levels
/// carry all the mass), which bounds the feasible targets from below.
pub fn solve_nu(
    constellation: &PamConstellation,
    polarity: Polarity,
    target_entropy: f64,
    tol: f64,
) -> Result<f64, ShapingError> {
    let max_entropy = constellation.max_entropy();
    if !(tol > 0.0) {
        return Err(ShapingError::InvalidTolerance(tol));
    }
    if !(target_entropy > 1.0 && target_entropy <= max_entropy + tol) {
        return Err(ShapingError::EntropyOutOfRange {
            target: target_entropy,
            max: max_entropy,
        });
    }
    let levels = &constellation.levels;
    if max_entropy - target_entropy <= tol {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (0.0_f64, NU_BRACKET_MAX);
    if entropy_at(levels, hi, polarity) > target_entropy + tol {
        return Err(ShapingError::NoConvergence {
            target: target_entropy,
            iterations: 0,
        });
    }
    for _ in 0..MAX_BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        let h = entropy_at(levels, mid, polarity);
        if (h - target_entropy).abs() <= tol {
            return Ok(mid);
        }
        if h > target_entropy {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi.max(1.0) {
            break;
        }
    }
    let mid = 0.5 * (lo + hi);
    if (entropy_at(levels, mid, polarity) - target_entropy).abs() <= tol {
        Ok(mid)
    } else {
        Err(ShapingError::NoConvergence {
            target: target_entropy,
            iterations: MAX_BISECTION_STEPS,
        })
    }
}

/// Convenience: distribution of the given polarity hitting `target_entropy`.
pub fn distribution_for_entropy(
    constellation: PamConstellation,
    polarity: Polarity,
    target_entropy: f64,
) -> Result<ShapedDistribution, ShapingError> {
    let nu = solve_nu(&constellation, polarity, target_entropy, DEFAULT_ENTROPY_TOL)?;
    mb_distribution(constellation, nu, polarity)
}

/// Draws `n` i.i.d. level indices by inverse-CDF sampling.
///
/// Output is a pure function of `(dist, n, seed)`.
pub fn sample_symbols(dist: &ShapedDistribution, n: usize, seed: u64) -> Vec<usize> {
    let cdf = dist.cdf();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let u: f64 = rng.random();
            cdf.partition_point(|&c| c <= u).min(cdf.len() - 1)
        })
        .collect()
}
