use proptest::prelude::*;

use pamlink::dsp::dump;
use pamlink::runner::{cmd_simulate, prepare, write_dumps, Modulation, RunConfig, Shaping};
use pamlink::rxdsp::EqualizerConfig;

fn format() -> impl Strategy<Value = (Modulation, Shaping)> {
    prop_oneof![
        Just((Modulation::Pam4, Shaping::Uniform)),
        Just((Modulation::Pam6, Shaping::Uniform)),
        Just((Modulation::Pam8, Shaping::Uniform)),
        Just((Modulation::Pam8, Shaping::Cap)),
        Just((Modulation::Pam8, Shaping::Cup)),
    ]
}

proptest! {
    #[test]
    fn config_round_trip(
        (m, s) in format(),
        rs in 60.0f64..90.0,
        seeds in proptest::collection::vec(any::<u64>(), 1..4),
        n in 1024usize..1_000_000,
        rops in proptest::collection::vec(0.1f64..3.0, 0..6),
        vpp in 0.01f64..1.0,
        mem1 in 0usize..100,
        entropy in proptest::option::of(1.5f64..2.9),
    ) {
        let mut cfg = RunConfig::new(m, s, rs);
        cfg.seeds = seeds;
        cfg.n_symbols = n;
        let mut acc = -25.0;
        cfg.rop_dbm = rops.iter().map(|d| { acc += d; acc }).collect();
        cfg.dac.vpp = vpp;
        cfg.receiver.equalizer.mem1 = 2 * mem1 + 1;
        cfg.entropy = entropy;
        let text = cfg.to_toml();
        let parsed = RunConfig::from_toml(&text).unwrap();
        prop_assert_eq!(&parsed, &cfg);
        prop_assert_eq!(parsed.to_toml(), text);
    }
}

fn small_config() -> RunConfig {
    let mut cfg = RunConfig::new(Modulation::Pam8, Shaping::Cap, 90.0);
    cfg.n_symbols = 1 << 14;
    cfg.receiver.equalizer = EqualizerConfig { train_symbols: 4096, ..EqualizerConfig::linear(41) };
    cfg
}

#[test]
fn simulate_is_deterministic_including_dumps() {
    let cfg = small_config();
    let prep = prepare(&cfg).unwrap();
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    let mut bers = Vec::new();
    for d in &dirs {
        let sim = cmd_simulate(&cfg, -14.0, 4).unwrap();
        write_dumps(&sim, &prep, d.path()).unwrap();
        bers.push(sim.point);
    }
    assert_eq!(bers[0], bers[1]);
    assert!(bers[0].errors > 0);
    for name in ["dac.bin", "captured.bin", "field_at_pd.bin", "weights.bin", "equalized.bin", "captured.bin.meta"] {
        let a = std::fs::read(dirs[0].path().join(name)).unwrap();
        let b = std::fs::read(dirs[1].path().join(name)).unwrap();
        assert_eq!(a, b, "{name}");
    }
    let eq = dump::read(&dirs[0].path().join("equalized.bin")).unwrap();
    assert_eq!(eq.real().unwrap().len(), prep.n_symbols);
    let meta = std::fs::read_to_string(dirs[0].path().join("weights.bin.meta")).unwrap();
    assert!(meta.contains(&format!("config_hash = {}", cfg.hash())));
    assert!(meta.contains("seed = 4"));
}

#[test]
fn different_seeds_give_different_noise() {
    let cfg = small_config();
    let a = cmd_simulate(&cfg, -14.0, 1).unwrap();
    let b = cmd_simulate(&cfg, -14.0, 2).unwrap();
    assert_ne!(a.tx.levels, b.tx.levels);
    assert_ne!(a.captured.samples, b.captured.samples);
}

#[test]
fn higher_rop_lowers_ber() {
    let cfg = small_config();
    let low = cmd_simulate(&cfg, -20.0, 3).unwrap().point.ber;
    let high = cmd_simulate(&cfg, -12.0, 3).unwrap().point.ber;
    assert!(high < low, "{high} vs {low}");
}
