use std::path::Path;
use std::process::{Command, Output};

fn pamlink(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pamlink")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// Writes a small, fast configuration into `dir`.
fn write_config(dir: &Path, extra: &str) -> String {
    let path = dir.join("run.toml");
    let text = format!(
        "schema_version = 1\n\
         modulation = \"pam4\"\n\
         symbol_rate_gbd = 80.0\n\
         n_symbols = 16384\n\
         seeds = [3, 4]\n\
         rop_dbm = [-18.0, -16.0, -14.0]\n\
         out_dir = \"{}\"\n\
         {extra}\n\
         [receiver.equalizer]\n\
         mem1 = 31\n\
         orders_enabled = [1]\n\
         train_symbols = 4096\n",
        dir.join("out").display()
    );
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn plan_prints_reference_entropies() {
    let o = pamlink(&["plan"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for h in ["2.8629", "2.6963", "2.5492", "2.4185", "0.5815"] {
        assert!(text.contains(h), "{h} missing from\n{text}");
    }
}

#[test]
fn plan_uniform_pam4() {
    let o = pamlink(&["plan", "--modulation", "pam4", "--shaping", "uniform", "--symbol-rates", "107"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("200.000"), "{}", stdout(&o));
}

#[test]
fn plan_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("plan.json");
    let o = pamlink(&["plan", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let rows: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 4);
}

#[test]
fn infeasible_plan_exits_3() {
    let o = pamlink(&["plan", "--symbol-rates", "60"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("infeasible"));
}

#[test]
fn bad_config_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(&path, "schema_version = 1\nmodulation = \"pam4\"\nshaping = \"cap\"\nsymbol_rate_gbd = 80.0\n").unwrap();
    let o = pamlink(&["simulate", "--config", path.to_str().unwrap(), "--rop", "-10"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_config_exits_5() {
    let o = pamlink(&["simulate", "--config", "/nonexistent/run.toml", "--rop", "-10"]);
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn template_parses_back() {
    let o = pamlink(&["template", "--shaping", "cup"]);
    assert!(o.status.success());
    let cfg = pamlink::runner::RunConfig::from_toml(&stdout(&o)).unwrap();
    assert_eq!(cfg.shaping, pamlink::runner::Shaping::Cup);
}

#[test]
fn back_to_back_simulation_is_error_free() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "back_to_back = true");
    let o = pamlink(&["simulate", "--config", &cfg, "--rop", "0", "--dump"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let record: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(record["point"]["errors"], 0);
    for f in ["point.json", "dac.bin", "captured.bin", "weights.bin", "equalized.bin", "equalized.bin.meta"] {
        assert!(dir.path().join("out").join(f).exists(), "{f}");
    }
}

#[test]
fn sweep_writes_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "");
    let o = pamlink(&["sweep", "--config", &cfg]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = dir.path().join("out");
    let csv = std::fs::read_to_string(out.join("sweep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 6);
    assert!(csv.starts_with("format,symbol_rate_gbd,entropy,polarity,rop_dbm,ber,bits,errors,config_hash,seed"));
    let summary: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    let hash = summary["config_hash"].as_str().unwrap();
    assert!(csv.lines().skip(1).all(|l| l.contains(hash)));
    assert_eq!(summary["curve"]["points"].as_array().unwrap().len(), 3);
}

#[test]
fn seed_flag_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "");
    let o = pamlink(&["sweep", "--config", &cfg, "--seed", "9", "--rops=-16"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(dir.path().join("out").join("sweep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 2);
    assert!(csv.lines().nth(1).unwrap().ends_with(",9"));
}

#[test]
fn eye_and_hist_exports() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "");
    let o = pamlink(&["eye", "--config", &cfg, "--rop", "-14", "--amp-bins", "32"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let eye = std::fs::read_to_string(dir.path().join("out/eye.csv")).unwrap();
    // header, 32 amplitude rows and the mean trace
    assert_eq!(eye.lines().count(), 34);
    let o = pamlink(&["hist", "--config", &cfg, "--rop", "-14", "--bins", "48"]);
    assert!(o.status.success());
    let hist = std::fs::read_to_string(dir.path().join("out/hist.csv")).unwrap();
    assert_eq!(hist.lines().count(), 49);
    let meta = std::fs::read_to_string(dir.path().join("out/hist.csv.meta")).unwrap();
    assert!(meta.contains("config_hash"));
}
