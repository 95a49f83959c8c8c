use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fsnet_core::{Graph, RngStream};

fn fsnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fsnet")).args(args).env_remove("FSNET_OUT_DIR").output().unwrap()
}

fn ok(args: &[&str]) -> Output {
    let out = fsnet(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Data rows of a CSV artifact, without the config line and header.
fn rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path).unwrap().lines().skip(2).map(|l| l.split(',').map(String::from).collect()).collect()
}

fn files(dir: &Path) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    v.sort();
    v
}

#[test]
fn zero_horizon_histogram_is_initial_graph() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("e");
    ok(&["evolve", "--n", "60", "--m", "90", "--horizon", "0", "--seeds", "5,", "--out", path_str(&out)]);
    let g = Graph::gnm_random(60, 90, &mut RngStream::new(5)).unwrap();
    let counts = g.degree_counts();
    let table = rows(&out.join("histogram_seed_5.csv"));
    assert_eq!(table.len(), 60);
    for (k, row) in table.iter().enumerate() {
        assert_eq!(row[0], k.to_string());
        assert_eq!(row[1].parse::<u64>().unwrap(), counts.get(k), "degree {k}");
    }
}

#[test]
fn reruns_are_byte_identical_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let base = ["--n", "80", "--horizon", "300", "--interval", "50", "--seeds", "3", "--out", path_str(&out)];
    let snapshot = |threads: &str, cmd: &str| {
        let mut args = vec![cmd, "--threads", threads];
        args.extend_from_slice(&base);
        if cmd == "continuous" {
            args[0] = "evolve";
            args.extend_from_slice(&["--mode", "continuous"]);
        }
        ok(&args);
        files(&out).iter().map(|p| (p.clone(), fs::read(p).unwrap())).collect::<Vec<_>>()
    };
    for cmd in ["evolve", "continuous", "attack", "recover"] {
        fs::remove_dir_all(&out).ok();
        let first = snapshot("1", cmd);
        let second = snapshot("1", cmd);
        let third = snapshot("3", cmd);
        assert!(!first.is_empty());
        assert_eq!(first, second, "{cmd}");
        assert_eq!(first, third, "{cmd}");
    }
}

#[test]
fn env_var_replaces_output_dir() {
    let dir = tempfile::tempdir().unwrap();
    let flag = dir.path().join("flag");
    let env = dir.path().join("env");
    let out = Command::new(env!("CARGO_BIN_EXE_fsnet"))
        .args(["evolve", "--n", "30", "--horizon", "5", "--seeds", "1", "--out", path_str(&flag)])
        .env("FSNET_OUT_DIR", &env)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(env.join("divergence.json").exists());
    assert!(!flag.exists());
    let listed = String::from_utf8(out.stdout).unwrap();
    assert!(listed.lines().all(|l| l.starts_with(path_str(&env))));
}

#[test]
fn usage_errors_name_field_and_write_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("never");
    let cases: [(&[&str], &str); 6] = [
        (&["evolve", "--c", "-3", "--seeds", "1"], "`c`"),
        (&["evolve", "--n", "10", "--m", "46", "--seeds", "1"], "`m`"),
        (&["evolve", "--n", "10"], "`seeds`"),
        (&["evolve", "--seeds", "1,1"], "`seeds`"),
        (&["attack", "--seeds", "1", "--ratios", "0.5,1.2"], "`ratios`"),
        (&["evolve", "--seeds", "1", "--threads", "0"], "`threads`"),
    ];
    for (args, field) in cases {
        let mut args = args.to_vec();
        args.extend_from_slice(&["--out", path_str(&out)]);
        let res = fsnet(&args);
        assert_eq!(res.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8_lossy(&res.stderr);
        assert!(err.contains(field), "{args:?}: {err}");
        assert!(!out.join("divergence.json").exists() && !out.join("attack.json").exists());
    }
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    fs::write(&cfg, r#"{"n": 40, "a": 2.0, "seeds": [4, 9], "horizon": 3}"#).unwrap();
    let out = dir.path().join("o");
    ok(&["evolve", "--config", path_str(&cfg), "--a", "0.5", "--out", path_str(&out)]);
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("divergence.json")).unwrap()).unwrap();
    assert_eq!(doc["config"]["n"], 40);
    assert_eq!(doc["config"]["a"], 0.5);
    assert_eq!(doc["config"]["seeds"], serde_json::json!([4, 9]));

    fs::write(&cfg, r#"{"n": 40, "sweeps": 3}"#).unwrap();
    let res = fsnet(&["evolve", "--config", path_str(&cfg), "--seeds", "1"]);
    assert_eq!(res.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&res.stderr).contains("sweeps"));
}

#[test]
fn zero_ratio_attack_is_flat() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a");
    ok(&["attack", "--n", "80", "--horizon", "40", "--seeds", "2", "--ratios", "0", "--out", path_str(&out)]);
    for row in rows(&out.join("attack.csv")) {
        assert_eq!(row[2], "0");
        assert_eq!(row[4].parse::<f64>().unwrap(), 1.0);
    }
    let out = dir.path().join("r");
    ok(&["recover", "--n", "80", "--horizon", "40", "--seeds", "1", "--ratio", "0", "--recover-for", "10", "--out", path_str(&out)]);
    let trace = rows(&out.join("recovery_seed_0.csv"));
    assert_eq!(trace[0][3].parse::<f64>().unwrap(), 1.0);
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("recover.json")).unwrap()).unwrap();
    assert_eq!(doc["runs"][0]["removed"], 0);
}

#[test]
fn every_artifact_embeds_config_and_seeds() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("g.txt");
    let g = Graph::gnm_random(40, 80, &mut RngStream::new(2)).unwrap();
    let text: String = g.edges().map(|(u, v)| format!("{u} {v}\n")).collect();
    fs::write(&data, &text).unwrap();
    let temporal = dir.path().join("t.txt");
    let stamped: String = text.lines().enumerate().map(|(t, l)| format!("{l} {t}\n")).collect();
    fs::write(&temporal, stamped).unwrap();
    let runs: Vec<(&str, Vec<&str>)> = vec![
        ("evolve", vec!["evolve", "--n", "30", "--horizon", "4", "--seeds", "2"]),
        ("attack", vec!["attack", "--n", "30", "--horizon", "4", "--seeds", "2"]),
        ("recover", vec!["recover", "--n", "30", "--horizon", "4", "--seeds", "2"]),
        ("fit", vec!["fit", path_str(&data)]),
        ("compare", vec!["compare", path_str(&data), "--mode", "continuous", "--seeds", "2", "--burn-in", "200"]),
        ("replay", vec!["replay", path_str(&temporal), "--lifetime", "3"]),
    ];
    for (name, mut args) in runs {
        let out = dir.path().join(name);
        args.extend_from_slice(&["--out", path_str(&out)]);
        ok(&args);
        let written = files(&out);
        assert!(written.len() >= 2, "{name}");
        for f in written {
            let body = fs::read_to_string(&f).unwrap();
            let config = if f.extension().unwrap() == "csv" {
                let first = body.lines().next().unwrap();
                assert!(body.lines().nth(1).is_some_and(|h| !h.is_empty()), "{f:?} lacks a header");
                serde_json::from_str::<serde_json::Value>(first.strip_prefix("# config=").unwrap()).unwrap()
            } else {
                assert!(body.trim_start().starts_with("{\n  \"config\""), "{f:?}");
                serde_json::from_str::<serde_json::Value>(&body).unwrap()["config"].clone()
            };
            if ["fit", "replay"].contains(&name) {
                assert!(config["path"].is_string(), "{f:?}");
            } else {
                assert_eq!(config["seeds"], serde_json::json!([0, 1]), "{f:?}");
            }
        }
    }
}

#[test]
fn unwritable_output_dir_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let res = fsnet(&["evolve", "--n", "20", "--horizon", "1", "--seeds", "1", "--out", path_str(&blocker.join("sub"))]);
    assert_eq!(res.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&res.stderr).contains("output directory"));
}

#[test]
fn parse_errors_carry_location() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("t.txt");
    fs::write(&data, "0 1 5\n1 2 x\n").unwrap();
    let res = fsnet(&["replay", path_str(&data), "--out", path_str(&dir.path().join("o"))]);
    assert_eq!(res.status.code(), Some(1));
    let err = String::from_utf8_lossy(&res.stderr);
    assert!(err.contains("t.txt:2:"), "{err}");
    let missing = dir.path().join("missing.txt");
    let res = fsnet(&["fit", path_str(&missing)]);
    assert_eq!(res.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&res.stderr).contains("missing.txt"));
}

#[test]
fn fit_recovers_planted_law() {
    // Degree sequence drawn exactly from the model law, realised by a
    // configuration-style pairing that keeps every degree.
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("g.txt");
    let params = fsnet_core::ModelParams::discrete(400, 1.5, 2.0).unwrap();
    let law = fsnet_core::theory::stationary_closed_form(&params);
    let mut stubs = Vec::new();
    let mut node = 0u32;
    for k in 1..40usize {
        let count = (law.get(k) * 400.0).round() as u32;
        for _ in 0..count {
            stubs.extend(std::iter::repeat_n(node, k));
            node += 1;
        }
    }
    let mut rng = RngStream::new(9);
    rng.shuffle(&mut stubs);
    let text: String = stubs.chunks(2).filter(|p| p.len() == 2).map(|p| format!("{} {}\n", p[0], p[1])).collect();
    fs::write(&data, text).unwrap();
    let out = dir.path().join("f");
    ok(&["fit", path_str(&data), "--out", path_str(&out)]);
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("fit.json")).unwrap()).unwrap();
    let a = doc["a"].as_f64().unwrap();
    assert!(a > 0.8 && a < 3.0, "a = {a}");
    assert_eq!(doc["degenerate"], false);
    let table = rows(&out.join("fit.csv"));
    let mass: f64 = table.iter().map(|r| r[1].parse::<f64>().unwrap()).sum();
    assert!((mass - 1.0).abs() < 1e-9);
}
