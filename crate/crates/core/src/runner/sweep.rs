//! ROP sweeps over a bounded worker pool.

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{prepare, simulate_point, PlanRow, PointResult, RunConfig, RunError};
use crate::metrics::{
    sensitivity, write_ber_csv, BerCurve, BerPoint, BerRecord, FormatDescriptor, SensitivityResult,
};

/// Environment variable holding the worker count.
pub const WORKERS_ENV: &str = "PAMLINK_WORKERS";

/// Nominal bit count attached to injected BER points.
const INJECTED_BITS: u64 = 1_000_000;

pub fn worker_count() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

#[derive(Clone, Debug, Default)]
pub struct SweepOptions {
    /// Worker threads; `None` reads [`WORKERS_ENV`].
    pub workers: Option<usize>,
    /// Test hook: (ROP, BER) points used instead of simulating.
    pub injected: Option<Vec<(f64, f64)>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub config_hash: String,
    pub seeds: Vec<u64>,
    pub plan: PlanRow,
    pub n_symbols: usize,
    /// Pooled over seeds.
    pub curve: BerCurve,
    pub sensitivity: Option<SensitivityResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sensitivity_error: Option<String>,
    /// ROPs whose pooled point has fewer than 100 counted errors.
    pub unreliable_rops: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct SweepOutput {
    /// Per (seed, ROP), seed-major.
    pub points: Vec<PointResult>,
    pub records: Vec<BerRecord>,
    pub summary: SweepSummary,
    pub csv: String,
    pub json: String,
}

impl SweepOutput {
    /// Writes `sweep.csv` and `summary.json` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<(), RunError> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("sweep.csv"), &self.csv)?;
        std::fs::write(dir.join("summary.json"), &self.json)?;
        Ok(())
    }
}

fn run_points(cfg: &RunConfig, workers: usize) -> Result<(usize, Vec<PointResult>), RunError> {
    let prep = prepare(cfg)?;
    let jobs: Vec<(u64, f64)> = cfg
        .seeds
        .iter()
        .flat_map(|&s| cfg.rop_dbm.iter().map(move |&r| (s, r)))
        .collect();
    let run = |&(seed, rop): &(u64, f64)| simulate_point(cfg, &prep, rop, seed).map(|s| s.point);
    let results: Vec<Result<PointResult, RunError>> = if workers <= 1 {
        jobs.iter().map(run).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| RunError::Config(format!("worker pool: {e}")))?;
        pool.install(|| jobs.par_iter().map(run).collect())
    };
    Ok((prep.n_symbols, results.into_iter().collect::<Result<_, _>>()?))
}

pub fn cmd_sweep(cfg: &RunConfig, opts: &SweepOptions) -> Result<SweepOutput, RunError> {
    cfg.validate()?;
    let plan = super::cmd_plan(cfg)?;
    let (n_symbols, points) = match &opts.injected {
        Some(pts) => {
            let seed = cfg.seeds[0];
            let points = pts
                .iter()
                .map(|&(rop_dbm, ber)| {
                    let errors = (ber * INJECTED_BITS as f64).round() as u64;
                    PointResult { rop_dbm, seed, errors, bits: INJECTED_BITS, ber }
                })
                .collect();
            (0, points)
        }
        None => {
            if cfg.rop_dbm.is_empty() {
                return Err(RunError::Config("sweep needs at least one ROP in rop_dbm".into()));
            }
            run_points(cfg, opts.workers.unwrap_or_else(worker_count))?
        }
    };

    let hash = cfg.hash();
    let records: Vec<BerRecord> = points
        .iter()
        .map(|p| BerRecord {
            format: cfg.modulation.as_str().into(),
            symbol_rate_gbd: cfg.symbol_rate_gbd,
            entropy: plan.entropy,
            polarity: cfg.shaping.as_str().into(),
            rop_dbm: p.rop_dbm,
            ber: p.ber,
            bits: p.bits,
            errors: p.errors,
            config_hash: hash.clone(),
            seed: p.seed,
        })
        .collect();

    let mut rops: Vec<f64> = points.iter().map(|p| p.rop_dbm).collect();
    rops.sort_by(f64::total_cmp);
    rops.dedup();
    let pooled: Vec<BerPoint> = rops
        .iter()
        .map(|&r| {
            let (e, b) = points
                .iter()
                .filter(|p| p.rop_dbm == r)
                .fold((0u64, 0u64), |(e, b), p| (e + p.errors, b + p.bits));
            match &opts.injected {
                // keep injected BERs exact rather than re-deriving them from rounded counts
                Some(_) => BerPoint { rop_dbm: r, ber: points.iter().find(|p| p.rop_dbm == r).map_or(0.0, |p| p.ber), bits: b },
                None => BerPoint::new(r, e, b),
            }
        })
        .collect();
    let format = FormatDescriptor {
        modulation: cfg.modulation.as_str().into(),
        symbol_rate_gbd: cfg.symbol_rate_gbd,
        shaping: cfg.shaping.as_str().into(),
        entropy: plan.entropy,
    };
    let curve = BerCurve::new(format, pooled).map_err(|e| RunError::Config(e.to_string()))?;
    let (sens, sens_err) = match sensitivity(&curve, cfg.threshold_ber) {
        Ok(s) => (Some(s), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let unreliable_rops = curve.points.iter().filter(|p| !p.is_reliable()).map(|p| p.rop_dbm).collect();
    let summary = SweepSummary {
        config_hash: hash,
        seeds: cfg.seeds.clone(),
        plan,
        n_symbols,
        curve,
        sensitivity: sens,
        sensitivity_error: sens_err,
        unreliable_rops,
    };

    let mut csv = Vec::new();
    write_ber_csv(&mut csv, &records)?;
    let csv = String::from_utf8(csv).expect("csv output is UTF-8");
    let json = serde_json::to_string_pretty(&summary).expect("summary serializes") + "\n";
    Ok(SweepOutput { points, records, summary, csv, json })
}
