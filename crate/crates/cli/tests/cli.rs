//! End-to-end runs of the `aos` binary: artifact round trips, CSV
//! shapes, determinism, and the exit-status convention.

use std::fs;
use std::path::Path;
use std::process::Command;

use aos_cli::policy_file::{PolicyFile, FORMAT_VERSION};
use tempfile::tempdir;

fn aos() -> Command {
    Command::new(env!("CARGO_BIN_EXE_aos"))
}

fn run(cmd: &mut Command) -> (i32, String, String) {
    let out = cmd.output().expect("binary spawns");
    (
        out.status.code().expect("no signal"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

fn solve_small(path: &Path, method: &str, with_values: bool) {
    let mut cmd = aos();
    cmd.args([
        "solve", "--b", "2", "--p", "0.5", "--dmax", "5", "--alpha", "0.9", "--epsilon",
        "1e-9", "--method", method, "--out",
    ])
    .arg(path);
    if with_values {
        cmd.arg("--with-values");
    }
    let (code, stdout, stderr) = run(&mut cmd);
    assert_eq!(code, 0, "solve failed:\n{stdout}\n{stderr}");
    assert!(stdout.contains("iterations") && stdout.contains("wrote"));
}

#[test]
fn solve_writes_a_stable_deterministic_artifact() {
    let dir = tempdir().unwrap();
    let first = dir.path().join("pol.json");
    let second = dir.path().join("again.json");
    solve_small(&first, "plain", true);
    solve_small(&second, "plain", true);

    let bytes = fs::read(&first).unwrap();
    assert_eq!(bytes, fs::read(&second).unwrap(), "solve is not deterministic");

    let file = PolicyFile::load(&first).expect("artifact loads");
    assert_eq!(file.version, FORMAT_VERSION);
    assert_eq!(file.params.b, 2);
    assert!(file.values.is_some());
    assert_eq!(
        file.to_json().into_bytes(),
        bytes,
        "read-write cycle changed the artifact"
    );
}

#[test]
fn default_artifact_path_honors_the_env_dir() {
    let dir = tempdir().unwrap();
    let (code, _, stderr) = run(aos()
        .args(["solve", "--b", "2", "--p", "0.5", "--dmax", "5", "--alpha", "0.9"])
        .env("AOS_OUT_DIR", dir.path()));
    assert_eq!(code, 0, "{stderr}");
    assert!(dir.path().join("policy_b2_dmax5_p0.5.json").exists());
}

#[test]
fn plain_and_structured_emit_identical_threshold_rows() {
    let dir = tempdir().unwrap();
    let mut csvs = Vec::new();
    for method in ["plain", "structured"] {
        let path = dir.path().join(format!("{method}.json"));
        let (code, _, _) = run(aos().args([
            "solve", "--b", "3", "--p", "0.5", "--dmax", "9", "--alpha", "0.95",
            "--epsilon", "1e-9", "--method", method, "--out",
        ]).arg(&path));
        assert_eq!(code, 0);
        let (code, stdout, _) = run(aos().arg("thresholds").arg("--input").arg(&path));
        assert_eq!(code, 0);
        csvs.push(stdout);
    }
    assert_eq!(csvs[0], csvs[1], "solver routes disagree on the policy");
}

#[test]
fn threshold_rows_are_in_range_and_monotone_in_d() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("pol.json");
    let (code, _, _) = run(aos().args([
        "solve", "--b", "3", "--p", "0.5", "--dmax", "9", "--alpha", "0.95", "--epsilon",
        "1e-9", "--out",
    ]).arg(&path));
    assert_eq!(code, 0);
    let (code, stdout, _) = run(aos().arg("thresholds").arg("--input").arg(&path));
    assert_eq!(code, 0);

    let mut lines = stdout.lines();
    assert_eq!(lines.next(), Some("p,d,l,tau"));
    let rows: Vec<(f64, u32, u32, u32)> = lines
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            assert_eq!(f.len(), 4, "bad row {line}");
            (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap(),
             f[3].parse().unwrap())
        })
        .collect();
    // b = 3, d_max = 9: levels 1 and 2 cover d in 2..=9 and 1..=9.
    assert_eq!(rows.len(), 8 + 9);
    for &(p, _, l, tau) in &rows {
        assert_eq!(p, 0.5);
        assert!((1..=2).contains(&l));
        assert!(tau <= 3);
    }
    for pair in rows.windows(2) {
        if pair[0].2 == pair[1].2 {
            assert_eq!(pair[0].1 + 1, pair[1].1, "d not ascending within a level");
            assert!(pair[0].3 <= pair[1].3, "tau fell in d: {pair:?}");
        }
    }
}

#[test]
fn usage_problems_exit_2() {
    // Flag validation beyond clap's parse.
    let (code, _, stderr) = run(aos().args([
        "solve", "--p", "0", "--b", "2", "--dmax", "5", "--alpha", "0.9",
    ]));
    assert_eq!(code, 2);
    assert!(stderr.contains("p must lie"));

    let (code, _, stderr) = run(aos().args(["solve", "--b", "2"]));
    assert_eq!(code, 2);
    assert!(stderr.contains("--p is required"));

    // Clap-level parse failures.
    assert_eq!(run(aos().args(["solve", "--no-such-flag"])).0, 2);
    assert_eq!(run(aos().args(["simulate", "--p", "0.5", "--policy", "nope"])).0, 2);

    // Contradictory sources.
    let (code, _, _) = run(aos().args([
        "simulate", "--policy-file", "whatever.json", "--p", "0.3",
    ]));
    assert_eq!(code, 2);
}

#[test]
fn verify_fresh_solve_passes_everything() {
    let (code, stdout, stderr) = run(aos().args([
        "verify", "--b", "2", "--p", "0.5", "--dmax", "5", "--alpha", "0.9", "--method",
        "plain", "--epsilon", "1e-9",
    ]));
    assert_eq!(code, 0, "{stdout}\n{stderr}");
    assert!(stdout.contains("ok    value_monotone_in_d_busy"));
    assert!(stdout.contains("ok    thresholds_match_values"));
    assert!(stdout.contains("ok    epoch_decomposition_exact"));
    assert!(stdout.contains("all 19 checks passed"));
    assert!(!stdout.contains("FAIL"));
}

#[test]
fn verify_flags_corrupted_artifacts() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("pol.json");
    solve_small(&path, "plain", true);
    let text = fs::read_to_string(&path).unwrap();

    // A bumped value breaks monotonicity and the greedy cross-check.
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    let slot = &mut doc["values"]["values"][5];
    *slot = serde_json::json!(slot.as_f64().unwrap() + 40.0);
    let tampered = dir.path().join("tampered.json");
    fs::write(&tampered, serde_json::to_string(&doc).unwrap()).unwrap();
    let (code, stdout, _) = run(aos().arg("verify").arg("--input").arg(&tampered));
    assert_eq!(code, 1);
    assert!(stdout.contains("FAIL"));

    // Header disagreeing with the embedded tables is refused outright.
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    doc["params"]["d_max"] = serde_json::json!(9);
    let mismatched = dir.path().join("mismatched.json");
    fs::write(&mismatched, serde_json::to_string(&doc).unwrap()).unwrap();
    let (code, _, stderr) = run(aos().arg("verify").arg("--input").arg(&mismatched));
    assert_eq!(code, 1);
    assert!(stderr.contains("different parameters"));

    // Unknown format versions are corrupt, not parse errors.
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    doc["version"] = serde_json::json!(99);
    let n999 = dir.path().join("version.json");
    fs::write(&n999, serde_json::to_string(&doc).unwrap()).unwrap();
    let (code, _, stderr) = run(aos().arg("verify").arg("--input").arg(&n999));
    assert_eq!(code, 1);
    assert!(stderr.contains("version"));
}

#[test]
fn unparseable_input_exits_2() {
    let dir = tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    fs::write(&empty, "").unwrap();
    assert_eq!(run(aos().arg("verify").arg("--input").arg(&empty)).0, 2);
    assert_eq!(run(aos().arg("thresholds").arg("--input").arg(&empty)).0, 2);

    let truncated = dir.path().join("cut.json");
    fs::write(&truncated, "{\"version\": 1,").unwrap();
    assert_eq!(run(aos().arg("verify").arg("--input").arg(&truncated)).0, 2);

    let missing = dir.path().join("nowhere.json");
    assert_eq!(run(aos().arg("verify").arg("--input").arg(&missing)).0, 2);
}

#[test]
fn simulate_rows_are_deterministic_and_aligned() {
    let args = [
        "simulate", "--b", "2", "--p", "0.7", "--dmax", "6", "--alpha", "0.95",
        "--policy", "always-skip", "--horizon", "5000", "--replications", "2",
        "--warmup", "100", "--seed", "9",
    ];
    let (code, first, _) = run(aos().args(args));
    assert_eq!(code, 0);
    let (_, second, _) = run(aos().args(args));
    assert_eq!(first, second, "seeded run is not reproducible");

    let mut lines = first.lines();
    assert_eq!(
        lines.next(),
        Some("p,policy,avg_aos,se_aos,avg_aoi,se_aoi,horizon,replications,error")
    );
    let row = lines.next().unwrap();
    assert!(row.starts_with("0.7,always_skip,"));
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(fields.len(), 9);
    assert_eq!(fields[6], "5000");
    assert_eq!(fields[7], "2");
    assert_eq!(fields[8], "", "error column is empty on success");
    assert!(lines.next().is_none());
}

#[test]
fn simulate_accepts_a_policy_artifact() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("pol.json");
    solve_small(&path, "structured", false);
    let (code, stdout, _) = run(aos()
        .arg("simulate")
        .arg("--policy-file")
        .arg(&path)
        .args(["--horizon", "2000", "--replications", "1", "--warmup", "0", "--seed", "4"]));
    assert_eq!(code, 0);
    assert!(stdout.lines().nth(1).unwrap().starts_with("0.5,threshold,"));
}

#[test]
fn sweep_emits_cells_in_grid_order() {
    let args = [
        "sweep", "--b", "2", "--dmax", "6", "--alpha", "0.95", "--p-min", "0.2",
        "--p-max", "0.6", "--p-step", "0.2", "--horizon", "2000", "--replications", "2",
        "--warmup", "100", "--seed", "3",
    ];
    let (code, first, stderr) = run(aos().args(args));
    assert_eq!(code, 0, "{stderr}");
    let (_, second, _) = run(aos().args(args));
    assert_eq!(first, second, "sweep is not reproducible");

    let lines: Vec<&str> = first.lines().collect();
    assert_eq!(lines.len(), 1 + 3 * 4);
    let expected_order = ["optimal", "always_skip", "always_switch", "aoi_baseline"];
    for (i, row) in lines[1..].iter().enumerate() {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 9, "bad row {row}");
        let p = ["0.2", "0.4", "0.6"][i / 4];
        assert_eq!(fields[0], p);
        assert_eq!(fields[1], expected_order[i % 4]);
        assert_eq!(fields[8], "", "no cell should have failed: {row}");
    }
}
