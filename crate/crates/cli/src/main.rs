//! `pamlink` command-line front end.

use std::fs::File;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pamlink::dsp::dump;
use pamlink::metrics::{eye_accumulate, log_histogram, write_eye_csv, write_histogram_csv};
use pamlink::runner::{
    cmd_simulate, cmd_sweep, plan_row, prepare, simulate_point, write_dumps, Modulation, PlanRow,
    RunConfig, RunError, Shaping, SweepOptions,
};
use pamlink::rxdsp::matched_filter;

#[derive(Parser)]
#[command(name = "pamlink", version, about = "IM/DD PAM link simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a default run configuration.
    Template {
        #[arg(long, default_value = "pam8")]
        modulation: String,
        #[arg(long, default_value = "uniform")]
        shaping: String,
        #[arg(long, default_value_t = 90.0)]
        symbol_rate: f64,
    },
    /// Rate table: entropy, PS overhead, net rate and shaping exponents.
    Plan(PlanArgs),
    /// One (ROP, seed) point through the whole link.
    Simulate(PointArgs),
    /// ROP sweep with sensitivity extraction.
    Sweep(RunArgs),
    /// Averaged eye of the matched-filtered capture.
    Eye {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, default_value_t = 128)]
        amp_bins: usize,
    },
    /// Log histogram of the equalized symbols.
    Hist {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, default_value_t = 128)]
        bins: usize,
    },
}

#[derive(Args)]
struct PlanArgs {
    /// Take the format from a run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value = "pam8")]
    modulation: String,
    #[arg(long, default_value = "cap")]
    shaping: String,
    /// Comma-separated symbol rates in GBd.
    #[arg(long, value_delimiter = ',', default_value = "75,80,85,90")]
    symbol_rates: Vec<f64>,
    #[arg(long, default_value_t = 200.0)]
    net_rate: f64,
    #[arg(long, default_value_t = 0.07)]
    fec_overhead: f64,
    /// Write the table as JSON to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    /// Replaces the configured seed list.
    #[arg(long)]
    seed: Option<u64>,
    /// Replaces the configured output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Replaces the configured symbol count.
    #[arg(long)]
    symbols: Option<usize>,
    /// Replaces the configured ROP list (comma-separated dBm).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    rops: Option<Vec<f64>>,
    /// Also write binary waveform dumps.
    #[arg(long)]
    dump: bool,
}

#[derive(Args)]
struct PointArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Received optical power in dBm.
    #[arg(long, allow_negative_numbers = true)]
    rop: f64,
}

fn parse_enum<T: serde::de::DeserializeOwned>(what: &str, value: &str) -> Result<T, RunError> {
    serde_json::from_value(serde_json::Value::String(value.to_string()))
        .map_err(|_| RunError::Config(format!("unknown {what} '{value}'")))
}

fn load(args: &RunArgs) -> Result<RunConfig, RunError> {
    let mut cfg = RunConfig::load(&args.config)?;
    if let Some(s) = args.seed {
        cfg.seeds = vec![s];
    }
    if let Some(o) = &args.out {
        cfg.out_dir = o.clone();
    }
    if let Some(n) = args.symbols {
        cfg.n_symbols = n;
    }
    if let Some(r) = &args.rops {
        cfg.rop_dbm = r.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn print_plan(rows: &[PlanRow]) {
    println!(
        "{:<6} {:<8} {:>8} {:>9} {:>8} {:>10} {:>9} {:>9}",
        "format", "shaping", "Rs[GBd]", "H[bit]", "PS OH", "net[Gb/s]", "nu_cap", "nu_cup"
    );
    for r in rows {
        println!(
            "{:<6} {:<8} {:>8.2} {:>9.4} {:>8.4} {:>10.3} {:>9.5} {:>9.5}{}",
            r.modulation,
            r.shaping,
            r.symbol_rate_gbd,
            r.entropy,
            r.ps_overhead,
            r.net_rate_gbps,
            r.nu_cap,
            r.nu_cup,
            r.note.as_ref().map(|n| format!("  ({n})")).unwrap_or_default()
        );
    }
}

fn provenance(cfg: &RunConfig, seed: u64, rop: f64) -> Vec<(&'static str, String)> {
    vec![("config_hash", cfg.hash()), ("seed", seed.to_string()), ("rop_dbm", rop.to_string())]
}

fn write_text(path: &Path, text: &str) -> Result<(), RunError> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    std::fs::write(path, text)?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), RunError> {
    match cli.command {
        Command::Template { modulation, shaping, symbol_rate } => {
            let cfg = RunConfig::new(
                parse_enum::<Modulation>("modulation", &modulation)?,
                parse_enum::<Shaping>("shaping", &shaping)?,
                symbol_rate,
            );
            cfg.validate()?;
            print!("{}", cfg.to_toml());
        }
        Command::Plan(args) => {
            let rows = match &args.config {
                Some(path) => vec![pamlink::runner::cmd_plan(&RunConfig::load(path)?)?],
                None => {
                    let m = parse_enum::<Modulation>("modulation", &args.modulation)?;
                    let s = parse_enum::<Shaping>("shaping", &args.shaping)?;
                    args.symbol_rates
                        .iter()
                        .map(|&rs| plan_row(m, s, rs, args.net_rate, args.fec_overhead, None))
                        .collect::<Result<Vec<_>, _>>()?
                }
            };
            print_plan(&rows);
            if let Some(out) = &args.out {
                write_text(out, &to_json(&rows))?;
            }
        }
        Command::Simulate(args) => {
            let cfg = load(&args.run)?;
            let seed = cfg.seeds[0];
            let prep = prepare(&cfg)?;
            let sim = simulate_point(&cfg, &prep, args.rop, seed)?;
            let record = serde_json::json!({
                "config_hash": prep.config_hash,
                "n_symbols": prep.n_symbols,
                "point": sim.point,
            });
            print!("{}", to_json(&record));
            write_text(&cfg.out_dir.join("point.json"), &to_json(&record))?;
            if args.run.dump {
                write_dumps(&sim, &prep, &cfg.out_dir)?;
            }
        }
        Command::Sweep(args) => {
            let cfg = load(&args)?;
            let out = cmd_sweep(&cfg, &SweepOptions::default())?;
            out.write(&cfg.out_dir)?;
            print!("{}", out.csv);
            match (&out.summary.sensitivity, &out.summary.sensitivity_error) {
                (Some(s), _) => println!(
                    "sensitivity at BER {}: {} ({:?})",
                    s.threshold_ber,
                    s.rop_at_threshold.map_or("none".into(), |r| format!("{r:.3} dBm")),
                    s.status
                ),
                (None, Some(e)) => println!("sensitivity: {e}"),
                (None, None) => {}
            }
        }
        Command::Eye { point, amp_bins } => {
            let cfg = load(&point.run)?;
            let seed = cfg.seeds[0];
            let sim = cmd_simulate(&cfg, point.rop, seed)?;
            let mf = matched_filter(&sim.captured, cfg.symbol_rate_gbd, cfg.rolloff());
            let sps = mf.sample_rate / cfg.symbol_rate_gbd;
            let eye = eye_accumulate(&mf, sps, 2, amp_bins.max(1));
            std::fs::create_dir_all(&cfg.out_dir)?;
            let path = cfg.out_dir.join("eye.csv");
            write_eye_csv(File::create(&path)?, &eye)?;
            dump::write_meta(&path, &provenance(&cfg, seed, point.rop))?;
            println!("{}", path.display());
        }
        Command::Hist { point, bins } => {
            let cfg = load(&point.run)?;
            let seed = cfg.seeds[0];
            let sim = cmd_simulate(&cfg, point.rop, seed)?;
            let hist = log_histogram(&sim.rx.equalized, bins)?;
            std::fs::create_dir_all(&cfg.out_dir)?;
            let path = cfg.out_dir.join("hist.csv");
            write_histogram_csv(File::create(&path)?, &hist)?;
            dump::write_meta(&path, &provenance(&cfg, seed, point.rop))?;
            println!("{}", path.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
