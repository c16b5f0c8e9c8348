use serde::{Deserialize, Serialize};

/// Uniformly sampled real signal. Rates are in GSa/s throughout the crate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DigitalWaveform {
    pub samples: Vec<f64>,
    pub sample_rate: f64,
}

impl DigitalWaveform {
    pub fn new(samples: Vec<f64>, sample_rate: f64) -> Self {
        assert!(sample_rate > 0.0, "sample rate must be positive");
        DigitalWaveform { samples, sample_rate }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Duration in ns.
    pub fn duration(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate
    }

    pub fn mean(&self) -> f64 {
        if self.samples.is_empty() {
            return 0.0;
        }
        self.samples.iter().sum::<f64>() / self.samples.len() as f64
    }

    pub fn rms(&self) -> f64 {
        if self.samples.is_empty() {
            return 0.0;
        }
        (self.samples.iter().map(|x| x * x).sum::<f64>() / self.samples.len() as f64).sqrt()
    }

    pub fn peak(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.samples.iter().all(|x| x.is_finite())
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        DigitalWaveform::new(self.samples.iter().map(|&x| f(x)).collect(), self.sample_rate)
    }
}
