//! Decision-directed LMS tracking.

use serde::{Deserialize, Serialize};

use super::RxError;

/// Weight norm above which adaptation is considered divergent.
pub const DIVERGENCE_NORM: f64 = 1e6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AdaptMode {
    /// Errors against known transmitted symbols.
    Train,
    /// Errors against the equalizer's own decisions.
    Dd,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EqualizerState {
    pub weights: Vec<f64>,
    pub symbol_index: usize,
    pub mode: AdaptMode,
}

impl EqualizerState {
    pub fn new(weights: Vec<f64>) -> Self {
        EqualizerState { weights, symbol_index: 0, mode: AdaptMode::Dd }
    }

    pub fn output(&self, features: &[f64]) -> f64 {
        self.weights.iter().zip(features).map(|(w, f)| w * f).sum()
    }
}

/// One LMS update. `reference` maps the equalizer output to the desired
/// value (a slicer in DD mode, the known symbol in training). Returns the
/// output computed before the update.
pub fn ddlms_step(
    state: &mut EqualizerState,
    features: &[f64],
    mu: f64,
    reference: impl FnOnce(f64) -> f64,
) -> Result<f64, RxError> {
    if features.len() != state.weights.len() {
        return Err(RxError::LengthMismatch { left: state.weights.len(), right: features.len() });
    }
    let y = state.output(features);
    let e = reference(y) - y;
    if mu != 0.0 {
        let g = mu * e;
        let mut norm2 = 0.0;
        for (w, f) in state.weights.iter_mut().zip(features) {
            *w += g * f;
            norm2 += *w * *w;
        }
        if !(norm2.sqrt() <= DIVERGENCE_NORM) {
            return Err(RxError::Divergence { index: state.symbol_index });
        }
    }
    state.symbol_index += 1;
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_step_leaves_weights() {
        let mut s = EqualizerState::new(vec![0.5, -1.0]);
        let y = ddlms_step(&mut s, &[2.0, 1.0], 0.0, |_| 3.0).unwrap();
        assert_eq!(y, 0.0);
        assert_eq!(s.weights, vec![0.5, -1.0]);
        assert_eq!(s.symbol_index, 1);
    }

    #[test]
    fn known_symbol_update_is_plain_lms() {
        let mut s = EqualizerState::new(vec![0.1, 0.2, 0.3]);
        s.mode = AdaptMode::Train;
        let f = [1.0, -2.0, 0.5];
        let d = 3.0;
        let y = ddlms_step(&mut s, &f, 0.01, |_| d).unwrap();
        let e = d - (0.1 - 0.4 + 0.15);
        assert!((y - (0.1 - 0.4 + 0.15)).abs() < 1e-15);
        for (w, (w0, fi)) in s.weights.iter().zip([0.1, 0.2, 0.3].iter().zip(f)) {
            assert!((w - (w0 + 0.01 * e * fi)).abs() < 1e-15);
        }
    }

    #[test]
    fn divergence_guard() {
        let mut s = EqualizerState::new(vec![1.0]);
        let mut err = None;
        for _ in 0..200 {
            if let Err(e) = ddlms_step(&mut s, &[10.0], 1.0, |y| -y) {
                err = Some(e);
                break;
            }
        }
        assert!(matches!(err, Some(RxError::Divergence { .. })));
    }
}
