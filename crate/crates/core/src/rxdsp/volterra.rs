//! Volterra feature construction.
//!
//! Feature order: the linear window, then every unordered pair `(i ≤ j)` of
//! the second-order window, then every unordered triple `(i ≤ j ≤ k)` of the
//! third-order window, each block in lexicographic index order. All windows
//! are centered on the current symbol.

use serde::{Deserialize, Serialize};

use super::RxError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EqualizerConfig {
    /// Linear memory (odd).
    pub mem1: usize,
    /// Second-order memory (odd).
    pub mem2: usize,
    /// Third-order memory (odd).
    pub mem3: usize,
    pub orders_enabled: Vec<u8>,
    /// Ridge weight relative to the mean diagonal of the Gram matrix.
    pub ridge: f64,
    pub mu_ddlms: f64,
    pub train_symbols: usize,
}

impl Default for EqualizerConfig {
    fn default() -> Self {
        EqualizerConfig {
            mem1: 311,
            mem2: 11,
            mem3: 11,
            orders_enabled: vec![1, 2, 3],
            ridge: 1e-6,
            mu_ddlms: 1e-5,
            train_symbols: 8192,
        }
    }
}

impl EqualizerConfig {
    pub fn linear(mem1: usize) -> Self {
        EqualizerConfig { mem1, orders_enabled: vec![1], ..EqualizerConfig::default() }
    }

    pub fn has_order(&self, order: u8) -> bool {
        self.orders_enabled.contains(&order)
    }

    pub fn validate(&self) -> Result<(), RxError> {
        if self.orders_enabled.is_empty() || self.orders_enabled.iter().any(|o| !(1..=3).contains(o)) {
            return Err(RxError::Config(format!(
                "orders_enabled must be a nonempty subset of {{1, 2, 3}}, got {:?}",
                self.orders_enabled
            )));
        }
        for (order, mem) in [(1, self.mem1), (2, self.mem2), (3, self.mem3)] {
            if self.has_order(order) && (mem == 0 || mem % 2 == 0) {
                return Err(RxError::Config(format!("memory of order {order} must be odd and positive, got {mem}")));
            }
        }
        if !(self.ridge >= 0.0) || !(self.mu_ddlms >= 0.0) {
            return Err(RxError::Config("ridge and mu_ddlms must be nonnegative".into()));
        }
        Ok(())
    }

    pub fn feature_count(&self) -> usize {
        let mut n = 0;
        if self.has_order(1) {
            n += self.mem1;
        }
        if self.has_order(2) {
            n += self.mem2 * (self.mem2 + 1) / 2;
        }
        if self.has_order(3) {
            n += self.mem3 * (self.mem3 + 1) * (self.mem3 + 2) / 6;
        }
        n
    }
}

/// Precomputed index tables for one equalizer configuration.
#[derive(Clone, Debug)]
pub struct VolterraLayout {
    /// Full window length (largest enabled memory).
    window: usize,
    linear: Vec<usize>,
    pairs: Vec<(usize, usize)>,
    triples: Vec<(usize, usize, usize)>,
}

fn centered(window: usize, mem: usize) -> std::ops::Range<usize> {
    let start = (window - mem) / 2;
    start..start + mem
}

impl VolterraLayout {
    pub fn new(cfg: &EqualizerConfig) -> Result<Self, RxError> {
        cfg.validate()?;
        let window = [(1, cfg.mem1), (2, cfg.mem2), (3, cfg.mem3)]
            .iter()
            .filter(|(o, _)| cfg.has_order(*o))
            .map(|(_, m)| *m)
            .max()
            .unwrap_or(1);
        let linear = if cfg.has_order(1) { centered(window, cfg.mem1).collect() } else { Vec::new() };
        let mut pairs = Vec::new();
        if cfg.has_order(2) {
            let r = centered(window, cfg.mem2);
            for i in r.clone() {
                for j in i..r.end {
                    pairs.push((i, j));
                }
            }
        }
        let mut triples = Vec::new();
        if cfg.has_order(3) {
            let r = centered(window, cfg.mem3);
            for i in r.clone() {
                for j in i..r.end {
                    for k in j..r.end {
                        triples.push((i, j, k));
                    }
                }
            }
        }
        Ok(VolterraLayout { window, linear, pairs, triples })
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn feature_count(&self) -> usize {
        self.linear.len() + self.pairs.len() + self.triples.len()
    }

    /// Features of a window of `self.window()` samples centered on the
    /// current symbol.
    pub fn features(&self, window: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.feature_count()];
        self.fill(window, &mut out);
        out
    }

    pub fn fill(&self, w: &[f64], out: &mut [f64]) {
        debug_assert_eq!(w.len(), self.window);
        let mut n = 0;
        for &i in &self.linear {
            out[n] = w[i];
            n += 1;
        }
        for &(i, j) in &self.pairs {
            out[n] = w[i] * w[j];
            n += 1;
        }
        for &(i, j, k) in &self.triples {
            out[n] = w[i] * w[j] * w[k];
            n += 1;
        }
    }

    /// Copies the cyclic window centered on symbol `k` of `x` into `buf`.
    pub fn window_at(&self, x: &[f64], k: usize, buf: &mut [f64]) {
        let n = x.len();
        let half = self.window / 2;
        for (m, b) in buf.iter_mut().enumerate() {
            *b = x[(k + n * (half / n + 1) + m - half) % n];
        }
    }
}

/// Feature count for the given memories with all orders enabled.
pub fn volterra_feature_count(mem1: usize, mem2: usize, mem3: usize) -> usize {
    EqualizerConfig { mem1, mem2, mem3, ..EqualizerConfig::default() }.feature_count()
}
