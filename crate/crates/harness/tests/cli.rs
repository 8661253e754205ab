use std::path::Path;
use std::process::{Command, Output};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modelchoice")).arg("--out").arg(dir).args(args).output().expect("binary runs")
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap()
}

#[test]
fn fig2_usage_error_for_few_draws() {
    let d = tempfile::tempdir().unwrap();
    let out = run(d.path(), &["--draws", "999", "fig2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("at least 1000"));
}

#[test]
fn malformed_and_empty_inputs_are_usage_errors() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(run(d.path(), &["lindley", "--tau", "1,abc"]).status.code(), Some(2));
    assert_eq!(run(d.path(), &["lindley", "--tau", "0"]).status.code(), Some(2));
    assert_eq!(run(d.path(), &["bogus"]).status.code(), Some(2));

    let cfg = d.path().join("empty_grid.toml");
    let text = modelchoice::config::shipped::CONSISTENCY.replacen("n_grid = [10, 50, 200, 500]", "n_grid = []", 1);
    std::fs::write(&cfg, text).unwrap();
    let out = run(d.path(), &["consistency", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));

    let missing = d.path().join("missing.toml");
    assert_eq!(run(d.path(), &["fig2", "--config", missing.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn predcheck_outputs() {
    let d = tempfile::tempdir().unwrap();
    let out = run(d.path(), &["predcheck"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS 0.447481"));
    let json = read(d.path(), "predcheck.json");
    assert!(json.contains("\"value_6dp\": \"0.447481\""));
    assert!(json.contains("\"version\""));

    let out = run(d.path(), &["predcheck", "--threshold", "20"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(read(d.path(), "predcheck.json").contains("\"value_6dp\": \"1.000000\""));

    run(d.path(), &["--format", "csv", "predcheck", "--prior-a", "2", "--prior-b", "2"]);
    let csv = read(d.path(), "predcheck.csv");
    assert!(csv.starts_with("# version: "));
    assert!(!csv.contains("PASS") && !csv.contains("FAIL"));
}

#[test]
fn lindley_sorted_csv_and_single_row() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(run(d.path(), &["--format", "csv", "lindley", "--tau", "100,10,1"]).status.code(), Some(0));
    let csv = read(d.path(), "lindley.csv");
    let rows: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "tau,bayes_factor_01");
    assert!(rows[1].starts_with("1,1.1013"));
    assert!(rows[2].starts_with("10,6.125"));
    assert!(rows[3].starts_with("100,60.659"));
    assert!(csv.contains("# verdict: PASS"));

    run(d.path(), &["lindley", "--tau", "3"]);
    let json = read(d.path(), "lindley.json");
    assert!(json.contains("\"verdict\": \"n/a\""));
}

#[test]
fn fig2_writes_outputs_then_reports_direction() {
    let d = tempfile::tempdir().unwrap();
    let out = run(d.path(), &["--draws", "20000", "--format", "csv", "fig2"]);
    let code = out.status.code().unwrap();
    let report = read(d.path(), "fig2_report.csv");
    let verdict = report.lines().find(|l| l.starts_with("direction_verdict,")).unwrap();
    assert_eq!(code == 0, verdict.ends_with("PASS"));
    assert!(report.contains("bayes_factor,2.66666666667"));
    assert!(report.contains("wall_time_seconds,\n"));
    for c in ["product", "joint"] {
        let h = read(d.path(), &format!("fig2_hist_{c}.csv"));
        let counts: u64 = h.lines().skip_while(|l| l.starts_with('#')).skip(1).map(|l| l.split(',').nth(1).unwrap().parse::<u64>().unwrap()).sum();
        assert_eq!(counts, 20000);
        assert!(h.contains("# total: 20000"));
    }
}

#[test]
fn timing_is_opt_in() {
    let d = tempfile::tempdir().unwrap();
    run(d.path(), &["--draws", "2000", "--timing", "fig2"]);
    assert!(!read(d.path(), "fig2.json").contains("\"wall_time_seconds\": null"));
}

#[test]
fn shipped_embedded_case_matches_p_value() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(run(d.path(), &["embedded"]).status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&read(d.path(), "embedded.json")).unwrap();
    let row = v["rows"].as_array().unwrap().iter().find(|r| r["case"] == "gaussian_mean_xbar_0.5").unwrap();
    assert!((row["lrt_pvalue"].as_f64().unwrap() - 0.1138).abs() < 1e-4);
    assert!((row["posterior_prob"].as_f64().unwrap() - 0.1138).abs() < 0.003);
    assert_eq!(row["verdict"], "PASS");
}

#[test]
fn config_files_round_trip() {
    use modelchoice::config::{load, to_toml, ComparisonConfig, ConsistencyConfig, EmbeddedConfig};
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    let d = tempfile::tempdir().unwrap();
    let fig2: ComparisonConfig = load(&dir.join("fig2.toml")).unwrap();
    let path = d.path().join("fig2.toml");
    std::fs::write(&path, to_toml(&fig2).unwrap()).unwrap();
    assert_eq!(load::<ComparisonConfig>(&path).unwrap(), fig2);
    let emb: EmbeddedConfig = load(&dir.join("embedded.toml")).unwrap();
    assert_eq!(to_toml(&emb).unwrap(), to_toml(&modelchoice::config::parse::<EmbeddedConfig>(&to_toml(&emb).unwrap(), "x").unwrap()).unwrap());
    let cons: ConsistencyConfig = load(&dir.join("consistency.toml")).unwrap();
    assert_eq!(cons.scenarios.len(), 2);
}
