use serde::{Deserialize, Serialize};

use crate::shaping::ShapedDistribution;

/// Symbol decision rule.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum DecisionRule {
    /// Closest level; ties go to the lower level.
    Nearest,
    /// Maximum a posteriori with the distribution's priors and Gaussian
    /// noise of variance `noise_var`.
    Map { noise_var: f64 },
}

/// Index of the decided level.
pub fn decide(y: f64, dist: &ShapedDistribution, rule: DecisionRule) -> usize {
    let levels = dist.levels();
    match rule {
        DecisionRule::Nearest => {
            let mut best = 0;
            let mut best_d = f64::INFINITY;
            for (i, &x) in levels.iter().enumerate() {
                let d = (y - x).abs();
                if d < best_d {
                    best = i;
                    best_d = d;
                }
            }
            best
        }
        DecisionRule::Map { noise_var } => {
            let mut best = 0;
            let mut best_m = f64::NEG_INFINITY;
            for (i, (&x, &p)) in levels.iter().zip(&dist.probs).enumerate() {
                let m = p.ln() - (y - x).powi(2) / (2.0 * noise_var);
                if m > best_m {
                    best = i;
                    best_m = m;
                }
            }
            best
        }
    }
}
