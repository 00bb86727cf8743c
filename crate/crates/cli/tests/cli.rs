//! End-to-end checks of the `pagsim` binary: command output, file
//! artifacts, config-file layering, and exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pagsim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_toy_graph(dir: &Path) -> String {
    let path = dir.join("toy.txt");
    let text = "# toy directed graph\n\
                0 1\n2 3\n4 1\n0 2\n1 3\n4 2\n5 3\n1 4\n2 0\n";
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn analyze_reports_pattern_statistics() {
    let dir = tempfile::tempdir().unwrap();
    let toy = write_toy_graph(dir.path());
    let rank = dir.path().join("rank.csv");
    let records = dir.path().join("records.csv");
    let out = run(&[
        "analyze",
        "--dataset",
        &toy,
        "--xbar-size",
        "2",
        "--rank-csv",
        rank.to_str().unwrap(),
        "--records-csv",
        records.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("vertices: 6"));
    assert!(text.contains("edges: 9"));
    assert!(text.contains("windows: 7"));
    let rank_text = std::fs::read_to_string(rank).unwrap();
    assert!(rank_text.starts_with("rank,bits_hex,frequency,share,cumulative_share\n"));
    assert_eq!(rank_text.lines().count() - 1, 4);
    let records_text = std::fs::read_to_string(records).unwrap();
    assert_eq!(records_text.lines().count() - 1, 7);
}

#[test]
fn analyze_edgeless_input_is_not_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.txt");
    std::fs::write(&path, "# comments only\n").unwrap();
    let out = run(&["analyze", "--dataset", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("no non-empty subgraphs"));
}

#[test]
fn malformed_edge_line_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "0 1\nfoo bar\n").unwrap();
    let out = run(&["analyze", "--dataset", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_configuration_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let toy = write_toy_graph(dir.path());
    // simulate takes one N, not a sweep list
    let out = run(&["simulate", "--dataset", &toy, "--static", "0,4"]);
    assert_eq!(out.status.code(), Some(3));
    // N exceeding the engine count is rejected
    let out = run(&["simulate", "--dataset", &toy, "--engines", "4", "--static", "9"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unknown_dataset_exits_1() {
    let out = run(&["analyze", "--dataset", "no-such-dataset"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn identical_invocations_write_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let toy = write_toy_graph(dir.path());
    let mut reports = Vec::new();
    for name in ["a.json", "b.json"] {
        let path = dir.path().join(name);
        let out = run(&[
            "simulate",
            "--dataset",
            &toy,
            "--xbar-size",
            "2",
            "--engines",
            "3",
            "--static",
            "1",
            "--report",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        reports.push(std::fs::read(path).unwrap());
    }
    assert_eq!(reports[0], reports[1]);
}

#[test]
fn config_file_mirrors_flags_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let toy = write_toy_graph(dir.path());
    let config = dir.path().join("sim.json");
    std::fs::write(
        &config,
        format!(
            r#"{{"dataset": "{toy}", "xbar-size": 2, "engines": 3, "static": "1", "algo": "sssp"}}"#
        ),
    )
    .unwrap();

    let from_config = dir.path().join("from-config.json");
    let out = run(&[
        "simulate",
        "--config",
        config.to_str().unwrap(),
        "--report",
        from_config.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let from_flags = dir.path().join("from-flags.json");
    let out = run(&[
        "simulate",
        "--dataset",
        &toy,
        "--xbar-size",
        "2",
        "--engines",
        "3",
        "--static",
        "1",
        "--algo",
        "sssp",
        "--report",
        from_flags.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(
        std::fs::read(&from_config).unwrap(),
        std::fs::read(from_flags).unwrap()
    );

    // an explicit flag overrides the config file
    let overridden = dir.path().join("overridden.json");
    let out = run(&[
        "simulate",
        "--config",
        config.to_str().unwrap(),
        "--static",
        "2",
        "--report",
        overridden.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(overridden).unwrap()).unwrap();
    assert_eq!(report["arch"]["n_static"], 2);

    // unknown keys in the config file are configuration errors
    let typo = dir.path().join("typo.json");
    std::fs::write(&typo, r#"{"datsaet": "x"}"#).unwrap();
    let out = run(&["simulate", "--config", typo.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn sweep_writes_curve_csv() {
    let dir = tempfile::tempdir().unwrap();
    let toy = write_toy_graph(dir.path());
    let csv = dir.path().join("sweep.csv");
    let out = run(&[
        "sweep",
        "--dataset",
        &toy,
        "--xbar-size",
        "2",
        "--engines",
        "4",
        "--static",
        "0,1,2",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("best N:"));
    let text = std::fs::read_to_string(csv).unwrap();
    assert!(text.starts_with("N,speedup,energy_J,configures,max_cell_writes\n"));
    assert_eq!(text.lines().count() - 1, 3);
    let first = text.lines().nth(1).unwrap();
    assert!(first.starts_with("0,1,"), "N=0 speedup is 1: {first}");
}

#[test]
fn lifetime_from_report_applies_the_endurance_model() {
    let dir = tempfile::tempdir().unwrap();
    let toy = write_toy_graph(dir.path());
    let report_path = dir.path().join("report.json");
    let out = run(&[
        "simulate",
        "--dataset",
        &toy,
        "--xbar-size",
        "2",
        "--engines",
        "3",
        "--static",
        "0",
        "--report",
        report_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    // pin the wear figure so the expected lifetime is exact:
    // 1e8 endurance / 2000 writes per run * 3600 s = 1.8e8 s = 5.70 years
    let mut report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    report["max_cell_writes_dynamic"] = 2000.into();
    std::fs::write(&report_path, serde_json::to_string(&report).unwrap()).unwrap();
    let out = run(&[
        "lifetime",
        "--from-report",
        report_path.to_str().unwrap(),
        "--endurance",
        "1e8",
        "--interval",
        "3600",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("(5.70 years)"), "{}", stdout(&out));

    report["max_cell_writes_dynamic"] = 0.into();
    std::fs::write(&report_path, serde_json::to_string(&report).unwrap()).unwrap();
    let out = run(&["lifetime", "--from-report", report_path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("unbounded"));
}

#[test]
fn synth_is_deterministic_and_sized() {
    let outs: Vec<Output> = (0..2)
        .map(|_| run(&["synth", "--vertices", "200", "--edges", "800", "--seed", "7"]))
        .collect();
    assert!(outs[0].status.success());
    assert_eq!(outs[0].stdout, outs[1].stdout);
    assert_eq!(stdout(&outs[0]).lines().count(), 800);
}
