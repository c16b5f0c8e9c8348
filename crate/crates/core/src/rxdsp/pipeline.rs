//! The full receiver chain from captured samples to decided levels.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::{
    ddlms_step, decide, matched_filter, mmse, resample_1sps, synchronize, DecisionRule,
    EqualizerConfig, EqualizerState, RxError, VolterraLayout,
};
use crate::dsp::DigitalWaveform;
use crate::shaping::ShapedDistribution;
use crate::txchain::PulseShaperConfig;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecisionKind {
    #[default]
    Nearest,
    /// MAP with the transmit priors; the noise variance comes from the
    /// training residual.
    Map,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReceiverConfig {
    pub equalizer: EqualizerConfig,
    pub decision: DecisionKind,
    /// Upper bound on the number of leading symbols used as the
    /// synchronization reference.
    pub sync_symbols: usize,
}

impl Default for ReceiverConfig {
    fn default() -> Self {
        ReceiverConfig {
            equalizer: EqualizerConfig::default(),
            decision: DecisionKind::Nearest,
            sync_symbols: 4096,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RxOutput {
    /// Delay of symbol 0 in capture samples.
    pub delay: f64,
    /// Symbol-rate samples before equalization, unit RMS.
    pub symbols_1sps: Vec<f64>,
    /// Equalizer outputs in level units.
    pub equalized: Vec<f64>,
    pub decided: Vec<usize>,
    /// Weights after the DD-LMS pass.
    pub weights: Vec<f64>,
    /// Residual MSE of the MMSE solution over the training block.
    pub train_mse: f64,
}

/// Runs the receiver on one capture.
///
/// `tx_levels` are the transmitted level indices; the leading ones serve as
/// synchronization reference and training sequence.
pub fn receive(
    captured: &DigitalWaveform,
    tx_levels: &[usize],
    dist: &ShapedDistribution,
    shaper: &PulseShaperConfig,
    cfg: &ReceiverConfig,
) -> Result<RxOutput, RxError> {
    let eq = &cfg.equalizer;
    let layout = VolterraLayout::new(eq)?;
    let n = tx_levels.len();
    let dim = layout.feature_count();
    let train = eq.train_symbols.min(n);
    if train < 4 * dim {
        return Err(RxError::Config(format!(
            "{train} training symbols for {dim} features; need at least {}",
            4 * dim
        )));
    }
    if captured.is_empty() {
        return Err(RxError::InsufficientSamples { needed: 1, available: 0 });
    }
    let targets: Vec<f64> = tx_levels.iter().map(|&i| dist.levels()[i]).collect();

    let mean = captured.mean();
    let centered = captured.map(|x| x - mean);
    let filtered = matched_filter(&centered, shaper.symbol_rate_gbd, shaper.rolloff);
    let sync_len = cfg.sync_symbols.min(n / 4).max(1);
    let delay = synchronize(&filtered, &targets[..sync_len], shaper)?;
    let mut x = resample_1sps(&filtered, delay, shaper.symbol_rate_gbd, n)?;
    let rms = (x.iter().map(|v| v * v).sum::<f64>() / n as f64).sqrt();
    if !(rms > 0.0) {
        return Err(RxError::SyncFailure { ratio: 0.0 });
    }
    x.iter_mut().for_each(|v| *v /= rms);

    let mut window = vec![0.0; layout.window()];
    let mut features = DMatrix::<f64>::zeros(train, dim);
    let mut row = vec![0.0; dim];
    for k in 0..train {
        layout.window_at(&x, k, &mut window);
        layout.fill(&window, &mut row);
        for (c, v) in row.iter().enumerate() {
            features[(k, c)] = *v;
        }
    }
    // ridge is relative to the mean diagonal of the Gram matrix
    let ridge = eq.ridge * features.norm_squared() / dim as f64;
    let weights = mmse::mmse_train(&features, &targets[..train], ridge)?;
    let train_mse = mmse::mse(&features, &targets[..train], &weights);
    drop(features);

    let rule = match cfg.decision {
        DecisionKind::Nearest => DecisionRule::Nearest,
        DecisionKind::Map => DecisionRule::Map { noise_var: train_mse.max(1e-12) },
    };
    let levels = dist.levels();
    let mut state = EqualizerState::new(weights);
    let mut equalized = Vec::with_capacity(n);
    let mut decided = Vec::with_capacity(n);
    for k in 0..n {
        layout.window_at(&x, k, &mut window);
        layout.fill(&window, &mut row);
        let y = ddlms_step(&mut state, &row, eq.mu_ddlms, |y| levels[decide(y, dist, rule)])?;
        equalized.push(y);
        decided.push(decide(y, dist, rule));
    }
    Ok(RxOutput { delay, symbols_1sps: x, equalized, decided, weights: state.weights, train_mse })
}
