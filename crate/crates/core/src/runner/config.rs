//! Run configuration, stored as TOML.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::RunError;
use crate::channel::ChannelConfig;
use crate::rxdsp::ReceiverConfig;
use crate::shaping::{Mapping, PamConstellation, Polarity};
use crate::txchain::{default_rolloff, ClipMode, DEFAULT_DAC_BITS};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Modulation {
    Pam4,
    Pam6,
    Pam8,
}

impl Modulation {
    pub fn order(self) -> usize {
        match self {
            Modulation::Pam4 => 4,
            Modulation::Pam6 => 6,
            Modulation::Pam8 => 8,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Modulation::Pam4 => "pam4",
            Modulation::Pam6 => "pam6",
            Modulation::Pam8 => "pam8",
        }
    }

    pub fn mapping(self) -> Mapping {
        PamConstellation::new(self.order()).expect("supported order").mapping()
    }

    /// Label bits per symbol carried by the uniform format.
    pub fn bits_per_symbol(self) -> f64 {
        self.mapping().bits_per_symbol()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shaping {
    #[default]
    Uniform,
    Cap,
    Cup,
}

impl Shaping {
    pub fn polarity(self) -> Option<Polarity> {
        match self {
            Shaping::Uniform => None,
            Shaping::Cap => Some(Polarity::Cap),
            Shaping::Cup => Some(Polarity::Cup),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Shaping::Uniform => "uniform",
            Shaping::Cap => "cap",
            Shaping::Cup => "cup",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DacConfig {
    pub rate_gsps: f64,
    pub bits: u32,
    pub vpp: f64,
    pub clip: ClipMode,
}

impl Default for DacConfig {
    fn default() -> Self {
        DacConfig { rate_gsps: 120.0, bits: DEFAULT_DAC_BITS, vpp: 0.45, clip: ClipMode::Peak }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    pub modulation: Modulation,
    #[serde(default)]
    pub shaping: Shaping,
    pub symbol_rate_gbd: f64,
    #[serde(default = "default_net_rate")]
    pub net_rate_gbps: f64,
    #[serde(default = "default_fec_overhead")]
    pub fec_overhead: f64,
    /// Defaults to the rate-dependent roll-off when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rolloff: Option<f64>,
    /// Overrides the entropy derived from the rate plan.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entropy: Option<f64>,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    #[serde(default = "default_n_symbols")]
    pub n_symbols: usize,
    /// PRBS degree for uniform formats; by default the shortest standard
    /// sequence that does not repeat within the frame.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prbs_degree: Option<u32>,
    /// Bypass the channel: the DAC output goes straight to the receiver.
    #[serde(default)]
    pub back_to_back: bool,
    #[serde(default)]
    pub rop_dbm: Vec<f64>,
    #[serde(default = "default_threshold")]
    pub threshold_ber: f64,
    #[serde(default = "default_out_dir")]
    pub out_dir: PathBuf,
    #[serde(default)]
    pub dac: DacConfig,
    #[serde(default)]
    pub channel: ChannelConfig,
    #[serde(default)]
    pub receiver: ReceiverConfig,
}

fn default_net_rate() -> f64 {
    200.0
}
fn default_fec_overhead() -> f64 {
    0.07
}
fn default_seeds() -> Vec<u64> {
    vec![1]
}
fn default_n_symbols() -> usize {
    1 << 16
}
fn default_threshold() -> f64 {
    crate::metrics::HD_FEC_THRESHOLD
}
fn default_out_dir() -> PathBuf {
    PathBuf::from("out")
}

impl RunConfig {
    /// Minimal valid configuration for a format; everything else defaults.
    pub fn new(modulation: Modulation, shaping: Shaping, symbol_rate_gbd: f64) -> Self {
        RunConfig {
            schema_version: SCHEMA_VERSION,
            modulation,
            shaping,
            symbol_rate_gbd,
            net_rate_gbps: default_net_rate(),
            fec_overhead: default_fec_overhead(),
            rolloff: None,
            entropy: None,
            seeds: default_seeds(),
            n_symbols: default_n_symbols(),
            prbs_degree: None,
            back_to_back: false,
            rop_dbm: Vec::new(),
            threshold_ber: default_threshold(),
            out_dir: default_out_dir(),
            dac: DacConfig::default(),
            channel: ChannelConfig::default(),
            receiver: ReceiverConfig::default(),
        }
    }

    pub fn from_toml(text: &str) -> Result<Self, RunError> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| RunError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, RunError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| RunError::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("run config serializes")
    }

    /// Hex SHA-256 prefix of the canonical TOML form.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.to_toml().as_bytes());
        hex::encode(&digest[..8])
    }

    pub fn rolloff(&self) -> f64 {
        self.rolloff.unwrap_or_else(|| default_rolloff(self.symbol_rate_gbd))
    }

    pub fn validate(&self) -> Result<(), RunError> {
        let bad = |m: String| Err(RunError::Config(m));
        if self.schema_version != SCHEMA_VERSION {
            return bad(format!(
                "schema_version {} unsupported (expected {SCHEMA_VERSION})",
                self.schema_version
            ));
        }
        if self.shaping != Shaping::Uniform && self.modulation != Modulation::Pam8 {
            return bad("probabilistic shaping is only defined for pam8".into());
        }
        if !(self.symbol_rate_gbd > 0.0) || !self.symbol_rate_gbd.is_finite() {
            return bad(format!("symbol_rate_gbd must be positive, got {}", self.symbol_rate_gbd));
        }
        if !(self.fec_overhead >= 0.0) || !(self.net_rate_gbps > 0.0) {
            return bad("net_rate_gbps must be positive and fec_overhead nonnegative".into());
        }
        if let Some(a) = self.rolloff {
            if !(0.0..=1.0).contains(&a) {
                return bad(format!("rolloff {a} outside [0, 1]"));
            }
        }
        if self.seeds.is_empty() {
            return bad("at least one seed is required".into());
        }
        if self.n_symbols < 1024 {
            return bad(format!("n_symbols {} below 1024", self.n_symbols));
        }
        if !(self.threshold_ber > 0.0 && self.threshold_ber < 0.5) {
            return bad(format!("threshold_ber {} outside (0, 0.5)", self.threshold_ber));
        }
        for w in self.rop_dbm.windows(2) {
            if !(w[1] > w[0]) {
                return bad("rop_dbm must be strictly increasing".into());
            }
        }
        if !(self.dac.rate_gsps > 0.0) {
            return bad("dac.rate_gsps must be positive".into());
        }
        self.channel.validate().map_err(|e| RunError::Config(e.to_string()))?;
        self.receiver.equalizer.validate().map_err(|e| RunError::Config(e.to_string()))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_toml_uses_defaults() {
        let cfg = RunConfig::from_toml(
            "schema_version = 1\nmodulation = \"pam8\"\nshaping = \"cap\"\nsymbol_rate_gbd = 90.0\n",
        )
        .unwrap();
        assert_eq!(cfg, RunConfig::new(Modulation::Pam8, Shaping::Cap, 90.0));
        assert!((cfg.rolloff() - 0.33).abs() < 1e-12);
    }

    #[test]
    fn round_trip_is_identity() {
        let mut cfg = RunConfig::new(Modulation::Pam6, Shaping::Uniform, 83.0);
        cfg.rop_dbm = vec![-14.0, -12.5, -11.0];
        cfg.entropy = Some(2.5);
        cfg.channel.ea_saturation_v = Some(2.0);
        cfg.dac.clip = ClipMode::RmsBackoff { backoff_db: 9.0 };
        let text = cfg.to_toml();
        assert_eq!(RunConfig::from_toml(&text).unwrap(), cfg);
        let noiseless = RunConfig { channel: ChannelConfig::transparent(), ..cfg };
        assert_eq!(RunConfig::from_toml(&noiseless.to_toml()).unwrap(), noiseless);
    }

    #[test]
    fn rejects_bad_configs() {
        let base = "schema_version = 1\nsymbol_rate_gbd = 80.0\n";
        assert!(RunConfig::from_toml(&format!("{base}modulation = \"pam4\"\nshaping = \"cup\"\n")).is_err());
        assert!(RunConfig::from_toml(&format!("{base}modulation = \"pam4\"\nbogus = 1\n")).is_err());
        assert!(RunConfig::from_toml("schema_version = 2\nmodulation = \"pam4\"\nsymbol_rate_gbd = 80.0\n").is_err());
        assert!(RunConfig::from_toml(&format!("{base}modulation = \"pam4\"\nrop_dbm = [-10.0, -12.0]\n")).is_err());
    }

    #[test]
    fn hash_tracks_content() {
        let a = RunConfig::new(Modulation::Pam4, Shaping::Uniform, 107.0);
        let mut b = a.clone();
        assert_eq!(a.hash(), b.hash());
        b.n_symbols += 1;
        assert_ne!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 16);
    }
}
