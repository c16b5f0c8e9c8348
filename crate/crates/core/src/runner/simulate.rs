//! One deterministic point: txchain → channel → rxdsp → bit errors.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{cmd_plan, PlanRow, RunConfig, RunError, Shaping};
use crate::channel::{propagate, ChannelOutput};
use crate::dsp::{dump, DigitalWaveform, Resampler};
use crate::rxdsp::{demap_and_count, receive, RxOutput};
use crate::seeds;
use crate::shaping::{
    gray_demap, mb_distribution, sample_symbols, Mapping, PamConstellation, ShapedDistribution,
};
use crate::txchain::{dac_quantize, prbs_generate, shape_and_resample, DacOutput, PulseShaperConfig};

/// Everything about a run that does not depend on seed or ROP.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub plan: PlanRow,
    pub dist: ShapedDistribution,
    pub mapping: Mapping,
    pub shaper: PulseShaperConfig,
    /// Symbol count after rounding to whole sample periods at every rate.
    pub n_symbols: usize,
    pub config_hash: String,
}

#[derive(Clone, Debug)]
pub struct TxFrame {
    pub levels: Vec<usize>,
    pub bits: Vec<u8>,
    pub dac: DacOutput,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointResult {
    pub rop_dbm: f64,
    pub seed: u64,
    pub errors: u64,
    pub bits: u64,
    pub ber: f64,
}

#[derive(Clone, Debug)]
pub struct Simulation {
    pub tx: TxFrame,
    /// `None` for back-to-back runs.
    pub channel: Option<ChannelOutput>,
    pub captured: DigitalWaveform,
    pub rx: RxOutput,
    pub point: PointResult,
}

/// Nonzero register state derived from a 64-bit seed.
fn prbs_free_seed(seed: u64, degree: u32) -> u32 {
    let period = (1u64 << degree.min(32)) - 1;
    (seed % period + 1) as u32
}

/// Shortest standard PRBS whose period covers `n_bits`. A sequence that
/// repeats inside the frame makes the synchronization peak ambiguous.
fn auto_prbs_degree(n_bits: usize) -> u32 {
    [7u32, 9, 11, 13, 15, 23]
        .into_iter()
        .find(|&d| (1usize << d) - 1 >= n_bits)
        .unwrap_or(31)
}

fn mhz(rate_g: f64) -> u64 {
    (rate_g * 1000.0).round() as u64
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Largest count ≤ `requested` for which every stage holds a whole number
/// of samples, so the cyclic processing chain stays exactly periodic.
fn round_symbols(requested: usize, symbol_rate: f64, rates: &[f64], block: usize) -> usize {
    let rs = mhz(symbol_rate);
    let mut period = block as u64;
    for &r in rates {
        let step = rs / gcd(rs, mhz(r));
        period = period / gcd(period, step) * step;
    }
    (requested as u64 / period * period) as usize
}

pub fn prepare(cfg: &RunConfig) -> Result<Prepared, RunError> {
    cfg.validate()?;
    let plan = cmd_plan(cfg)?;
    let constellation = PamConstellation::new(cfg.modulation.order()).expect("supported order");
    let dist = match cfg.shaping.polarity() {
        None => ShapedDistribution::uniform(constellation),
        Some(p) => {
            let nu = if p == crate::shaping::Polarity::Cap { plan.nu_cap } else { plan.nu_cup };
            mb_distribution(constellation, nu, p).map_err(|e| RunError::Infeasible(e.to_string()))?
        }
    };
    let shaper = PulseShaperConfig::new(cfg.symbol_rate_gbd, cfg.rolloff());
    for rate in [cfg.dac.rate_gsps, cfg.channel.adc_rate_gsps] {
        shaper.validate(rate).map_err(|e| RunError::Config(e.to_string()))?;
    }
    let mapping = cfg.modulation.mapping();
    let block = if cfg.shaping == Shaping::Uniform { mapping.block().1 } else { 1 };
    let rates = [cfg.dac.rate_gsps, cfg.channel.sim_rate_gsps, cfg.channel.adc_rate_gsps];
    let n_symbols = round_symbols(cfg.n_symbols, cfg.symbol_rate_gbd, &rates, block);
    if n_symbols == 0 {
        return Err(RunError::Config(format!(
            "n_symbols {} too small for a whole sample period at every rate",
            cfg.n_symbols
        )));
    }
    Ok(Prepared { plan, dist, mapping, shaper, n_symbols, config_hash: cfg.hash() })
}

/// Transmit frame for one seed. Uniform formats map PRBS bits; shaped
/// formats draw i.i.d. levels and carry their Gray labels.
pub fn build_tx(cfg: &RunConfig, prep: &Prepared, seed: u64) -> Result<TxFrame, RunError> {
    let n = prep.n_symbols;
    let tx_seed = seeds::derive(seed, 0);
    let (levels, bits) = if prep.dist.is_uniform() && cfg.shaping == Shaping::Uniform {
        let (b, s) = prep.mapping.block();
        let n_bits = n / s * b;
        let degree = cfg.prbs_degree.unwrap_or_else(|| auto_prbs_degree(n_bits));
        let bits = prbs_generate(degree, prbs_free_seed(tx_seed, degree), n_bits)
            .map_err(|e| RunError::Config(e.to_string()))?;
        let levels = prep.mapping.map(&bits).map_err(|e| RunError::stage("mapping", e))?;
        (levels, bits)
    } else {
        let levels = sample_symbols(&prep.dist, n, tx_seed);
        let bits = gray_demap(&levels, 8).map_err(|e| RunError::stage("mapping", e))?;
        (levels, bits)
    };
    let amplitudes: Vec<f64> = levels.iter().map(|&i| prep.dist.levels()[i]).collect();
    let shaped = shape_and_resample(&amplitudes, &prep.shaper, cfg.dac.rate_gsps)
        .map_err(|e| RunError::stage("pulse shaping", e))?;
    let dac = dac_quantize(&shaped, cfg.dac.bits, cfg.dac.vpp, cfg.dac.clip)
        .map_err(|e| RunError::stage("dac", e))?;
    Ok(TxFrame { levels, bits, dac })
}

/// Channel noise seed for one (seed, ROP) point; independent of the order
/// in which points run.
pub fn channel_seed(seed: u64, rop_dbm: f64) -> u64 {
    seeds::derive(seeds::derive(seed, 1), rop_dbm.to_bits())
}

pub fn simulate_point(cfg: &RunConfig, prep: &Prepared, rop_dbm: f64, seed: u64) -> Result<Simulation, RunError> {
    let tx = build_tx(cfg, prep, seed)?;
    let (channel, captured) = if cfg.back_to_back {
        let w = &tx.dac.waveform;
        let r = Resampler::new(w.sample_rate, cfg.channel.adc_rate_gsps);
        let samples = r.process_cyclic(&w.samples, r.output_len(w.len()), 0.0);
        (None, DigitalWaveform::new(samples, cfg.channel.adc_rate_gsps))
    } else {
        let out = propagate(&tx.dac.waveform, &cfg.channel, rop_dbm, channel_seed(seed, rop_dbm))
            .map_err(|e| RunError::stage("channel", e))?;
        let captured = out.captured.clone();
        (Some(out), captured)
    };
    let rx = receive(&captured, &tx.levels, &prep.dist, &prep.shaper, &cfg.receiver)
        .map_err(|e| RunError::stage("receiver", e))?;
    let counted = demap_and_count(&rx.decided, &tx.bits, prep.mapping)
        .map_err(|e| RunError::stage("demapping", e))?;
    let point = PointResult {
        rop_dbm,
        seed,
        errors: counted.errors,
        bits: counted.bits,
        ber: counted.ber(),
    };
    Ok(Simulation { tx, channel, captured, rx, point })
}

pub fn cmd_simulate(cfg: &RunConfig, rop_dbm: f64, seed: u64) -> Result<Simulation, RunError> {
    let prep = prepare(cfg)?;
    simulate_point(cfg, &prep, rop_dbm, seed)
}

/// Writes the DAC output, capture, equalizer weights and equalized symbols
/// in the binary dump format.
pub fn write_dumps(sim: &Simulation, prep: &Prepared, dir: &Path) -> Result<(), RunError> {
    std::fs::create_dir_all(dir)?;
    let meta = [
        ("config_hash", prep.config_hash.clone()),
        ("seed", sim.point.seed.to_string()),
        ("rop_dbm", sim.point.rop_dbm.to_string()),
    ];
    let rs = prep.shaper.symbol_rate_gbd;
    let dac = &sim.tx.dac.waveform;
    dump::write_real(&dir.join("dac.bin"), &dac.samples, dac.sample_rate, &meta)?;
    dump::write_real(&dir.join("captured.bin"), &sim.captured.samples, sim.captured.sample_rate, &meta)?;
    if let Some(ch) = &sim.channel {
        dump::write_complex(&dir.join("field_at_pd.bin"), &ch.field_at_pd.samples, ch.field_at_pd.sample_rate, &meta)?;
    }
    dump::write_real(&dir.join("weights.bin"), &sim.rx.weights, rs, &meta)?;
    dump::write_real(&dir.join("equalized.bin"), &sim.rx.equalized, rs, &meta)?;
    Ok(())
}
