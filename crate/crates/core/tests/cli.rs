use std::path::Path;
use std::process::{Command, Output};

use qsn::cli::output::{ANALYTIC_HEADER, SWEEP_HEADER};

fn qsn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsn"))
        .args(args)
        .env_remove("QSN_THREADS")
        .output()
        .expect("spawn qsn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn sweep_csv_matches_golden() {
    let o = qsn(&[
        "sweep", "--case", "b", "--m", "100", "--n", "2:6:2", "--trials", "1000", "--seed", "42",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), golden("sweep_b_m100_seed42.csv"));
    assert!(stderr(&o).contains("rng: chacha8"));
}

#[test]
fn analytic_csv_matches_golden() {
    let o = qsn(&["analytic", "--case", "b", "--m", "10000", "--n", "2,10,100"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), golden("analytic_b_m10000.csv"));
}

#[test]
fn analytic_case_a_values() {
    let o = qsn(&["analytic", "--case", "a", "--n", "4,8"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(ANALYTIC_HEADER));
    let rows: Vec<Vec<String>> = lines
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    let value = |strategy: &str, n: &str| -> f64 {
        rows.iter()
            .find(|r| r[1] == strategy && r[2] == n)
            .map(|r| r[4].parse().unwrap())
            .unwrap()
    };
    assert_eq!(value("local", "4"), 0.25);
    assert_eq!(value("nonlocal", "4"), 0.125);
    assert_eq!(value("nonlocal", "8"), 0.0625);
    assert!(rows.iter().all(|r| r[3].is_empty() && r[5] == "exact"));
}

#[test]
fn sweep_schema_and_case_a_blank_m() {
    let o = qsn(&[
        "sweep",
        "--case",
        "a",
        "--strategy",
        "nonlocal",
        "--n",
        "3,5",
        "--trials",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(SWEEP_HEADER));
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 10);
        assert_eq!(cols[0], "a");
        assert_eq!(cols[1], "nonlocal");
        assert_eq!(cols[4], "");
        for c in &cols[7..] {
            let v: f64 = c.parse().unwrap();
            assert!(v.is_finite());
        }
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let args = [
        "sweep", "--case", "b", "--m", "1000", "--n", "2:8:2", "--trials", "3000", "--seed", "7",
    ];
    let reference = stdout(&qsn(&[&args[..], &["--threads", "1"]].concat()));
    for t in ["2", "4", "8"] {
        assert_eq!(
            stdout(&qsn(&[&args[..], &["--threads", t]].concat())),
            reference
        );
    }
    let via_env = Command::new(env!("CARGO_BIN_EXE_qsn"))
        .args(args)
        .env("QSN_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(via_env.stdout).unwrap(), reference);
}

#[test]
fn json_output_carries_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.json");
    let o = qsn(&[
        "sweep",
        "--case",
        "a",
        "--n",
        "2,4",
        "--trials",
        "100",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(doc["metadata"]["rng_algorithm"]
        .as_str()
        .unwrap()
        .starts_with("chacha8"));
    assert_eq!(doc["metadata"]["trials"], 100);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 4);
    assert_eq!(doc["rows"][0]["approx"], "exact");
}

#[test]
fn backends_agree_on_cli_output() {
    let base = [
        "sweep", "--case", "a", "--n", "2,4", "--trials", "200", "--seed", "1",
    ];
    let column = |backend: &str| -> Vec<f64> {
        let text = stdout(&qsn(&[&base[..], &["--backend", backend]].concat()));
        text.lines()
            .skip(1)
            .map(|l| l.split(',').nth(7).unwrap().parse().unwrap())
            .collect()
    };
    let closed = column("closed-form");
    for backend in ["sim-compact", "sim", "sim-dense"] {
        for (a, b) in closed.iter().zip(column(backend)) {
            assert!((a - b).abs() < 1e-12, "{backend}: {a} vs {b}");
        }
    }
}

#[test]
fn usage_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["sweep", "--case", "a", "--strategy", "local", "--n", "3"],
        &["sweep", "--case", "b", "--n", "4"],
        &["sweep", "--case", "a", "--n", "4", "--trials", "0"],
        &["sweep", "--case", "a", "--n", "4:2:1"],
        &["sweep", "--case", "c", "--n", "4"],
        &[
            "sweep",
            "--case",
            "a",
            "--n",
            "22",
            "--backend",
            "sim-dense",
        ],
        &["sweep", "--case", "a", "--n", "4", "--prior", "1.5"],
        &["analytic", "--case", "b", "--n", "4"],
        &["frobnicate"],
    ];
    for args in cases {
        let o = qsn(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!stderr(&o).is_empty(), "{args:?}");
    }
}

#[test]
fn unwritable_output_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("missing/sub/out.csv");
    let o = qsn(&[
        "sweep",
        "--case",
        "a",
        "--n",
        "4",
        "--trials",
        "10",
        "--out",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn nonlocal_non_power_of_two_warns_for_simulators() {
    let o = qsn(&[
        "sweep",
        "--case",
        "a",
        "--strategy",
        "nonlocal",
        "--n",
        "6",
        "--trials",
        "5",
        "--backend",
        "sim",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stderr(&o).to_lowercase().contains("warning"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn verify_passes_by_default() {
    let o = qsn(&["verify", "--draws", "50"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    for name in [
        "compact-beam-splitter",
        "three-path-agreement",
        "w-cascade-moduli",
    ] {
        assert!(stdout(&o).contains(name), "{name}");
    }
}

#[test]
fn verify_detects_injected_fault_and_replays_it() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("failure.json");
    let o = qsn(&[
        "verify",
        "--draws",
        "20",
        "--inject-fault",
        "beam-splitter-convention",
        "--dump",
        dump.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let all = format!("{}{}", stdout(&o), stderr(&o));
    assert!(all.contains("compact-beam-splitter"), "{all}");

    let record: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&dump).unwrap()).unwrap();
    assert_eq!(record["check"], "compact-beam-splitter");

    let replay = qsn(&["verify", "--replay", dump.to_str().unwrap()]);
    assert_eq!(replay.status.code(), Some(1));
}
