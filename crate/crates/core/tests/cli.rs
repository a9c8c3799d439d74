//! End-to-end tests of the `cohomkern` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cohomkern"))
        .args(args)
        .env_remove("COHOMKERN_MAX_D")
        .output()
        .expect("binary runs")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_semidirect_writes_report_with_prism_claims() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let o = run(&[
        "verify",
        "--group",
        "metacyclic:5,4,2",
        "--samples",
        "5",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = read_json(&path);
    assert_eq!(v["tool"], "cohomkern");
    assert!(v["version"].is_string());
    assert_eq!(v["config"]["samples"], 5);
    let claims = v["instances"][0]["claims"].as_array().unwrap();
    assert!(claims.iter().any(|c| c["id"] == "prism.M3"));
    let ids: Vec<&str> = claims.iter().map(|c| c["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    let tally = |s: &str| claims.iter().filter(|c| c["status"] == s).count() as u64;
    let summary = &v["summary"];
    assert_eq!(summary["pass"].as_u64().unwrap(), tally("pass"));
    assert_eq!(summary["fail"].as_u64().unwrap(), tally("fail"));
    assert_eq!(summary["info"].as_u64().unwrap(), tally("info"));
    assert_eq!(summary["claims"].as_u64().unwrap(), claims.len() as u64);
    assert!(claims.iter().all(|c| c.get("timing_ms").is_none()));
}

#[test]
fn verify_dihedral_passes() {
    let o = run(&[
        "verify",
        "--group",
        "metacyclic:3,2,2",
        "--family",
        "dihedral",
        "--degrees",
        "0..1",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 fail"));
}

#[test]
fn invalid_order_is_a_config_error() {
    let o = run(&["verify", "--group", "metacyclic:7,2,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("invalid order"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        run(&["verify", "--group", "metacyclic:5,4"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["verify", "--degrees", "x"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--jobs", "0"]).status.code(), Some(2));
    assert_eq!(
        run(&[
            "verify",
            "--group",
            "metacyclic:5,4,2",
            "--family",
            "dihedral"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn max_d_environment_cap() {
    let o = Command::new(env!("CARGO_BIN_EXE_cohomkern"))
        .args(["verify", "--group", "metacyclic:5,4,2"])
        .env("COHOMKERN_MAX_D", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds"));
}

#[test]
fn config_file_is_read_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    let out = dir.path().join("out.json");
    std::fs::write(
        &cfg,
        "group = \"metacyclic:7,2,2\"\nsamples = 4\nseed = 3\ndegrees = \"0\"\n",
    )
    .unwrap();
    assert_eq!(
        run(&["verify", "--config", cfg.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    let o = run(&[
        "verify",
        "--config",
        cfg.to_str().unwrap(),
        "--group",
        "metacyclic:3,1,1",
        "--seed",
        "9",
        "--json",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = read_json(&out);
    assert_eq!(v["config"]["seed"], 9);
    assert_eq!(v["config"]["samples"], 4);
    assert_eq!(v["config"]["degrees"], serde_json::json!([0]));
    assert_eq!(v["config"]["instances"][0]["d"], 3);
    std::fs::write(&cfg, "bogus = 1\n").unwrap();
    assert_eq!(
        run(&["verify", "--config", cfg.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn identical_runs_give_identical_json_regardless_of_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for (k, jobs) in ["1", "3"].iter().enumerate() {
        let path = dir.path().join(format!("{k}.json"));
        let o = run(&[
            "verify",
            "--group",
            "metacyclic:3,2,2",
            "--group",
            "metacyclic:5,1,1",
            "--group",
            "metacyclic:5,2,4",
            "--samples",
            "5",
            "--seed",
            "42",
            "--jobs",
            jobs,
            "--json",
            path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        files.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(files[0], files[1]);
    let v: Value = serde_json::from_slice(&files[0]).unwrap();
    let ds: Vec<u64> = v["instances"]
        .as_array()
        .unwrap()
        .iter()
        .map(|i| i["instance"]["d"].as_u64().unwrap())
        .collect();
    assert_eq!(ds, vec![3, 5, 5]);
}

#[test]
fn timings_are_opt_in() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let o = run(&[
        "verify",
        "--group",
        "metacyclic:3,1,1",
        "--degrees",
        "0",
        "--timings",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = read_json(&path);
    assert!(v["instances"][0]["claims"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["timing_ms"].is_number()));
}

#[test]
fn cohomology_subcommand_examples() {
    let o = run(&[
        "cohomology",
        "--group",
        "metacyclic:5,4,2",
        "--module",
        "M4",
        "--degrees",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("H^0(M4) = trivial"));
    let o = run(&[
        "cohomology",
        "--group",
        "metacyclic:3,1,1",
        "--module",
        "trivial",
        "--degrees",
        "1",
    ]);
    assert!(stdout(&o).contains("H^1(trivial) = [3]"));
    let o = run(&[
        "cohomology",
        "--group",
        "metacyclic:5,2,4",
        "--module",
        "M1",
        "--degrees",
        "0",
    ]);
    assert!(stdout(&o).contains("H^0(M1) = [5]"));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.json");
    let o = run(&[
        "cohomology",
        "--group",
        "metacyclic:3,2,2",
        "--module",
        "ring",
        "--degrees",
        "0..1",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = read_json(&path);
    assert_eq!(v["results"][0]["invariant_factors"], serde_json::json!([3]));
    assert_eq!(v["results"][1]["invariant_factors"], serde_json::json!([]));
}

#[test]
fn cohomology_degree_too_large_and_unknown_module() {
    assert_eq!(
        run(&[
            "cohomology",
            "--group",
            "metacyclic:5,4,2",
            "--module",
            "M1",
            "--degrees",
            "6"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "cohomology",
            "--group",
            "metacyclic:5,4,2",
            "--module",
            "M9"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn eta_sampled_and_file_inputs() {
    let o = run(&[
        "eta",
        "--group",
        "metacyclic:3,2,2",
        "--degree",
        "1",
        "--samples",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out
        .lines()
        .filter(|l| l.contains("verdict"))
        .all(|l| l.ends_with("equal") || l.ends_with("cohomologous")));

    let dir = tempfile::tempdir().unwrap();
    let zero = dir.path().join("zero.json");
    std::fs::write(
        &zero,
        r#"{"degree":1,"module":"M4","modulus":3,"entries":[]}"#,
    )
    .unwrap();
    let json = dir.path().join("eta.json");
    let o = run(&[
        "eta",
        "--group",
        "metacyclic:3,2,2",
        "--cocycle",
        zero.to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict equal"));
    let v = read_json(&json);
    assert_eq!(v["results"][0]["generic"]["entries"], serde_json::json!([]));

    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"degree":1,"module":"M4","modulus":3,"entries":[{"tuple":[[1,0]],"value":[1]}]}"#,
    )
    .unwrap();
    let o = run(&[
        "eta",
        "--group",
        "metacyclic:3,2,2",
        "--cocycle",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cocycle"));
}

#[test]
fn eta_round_trips_a_sampled_cocycle_file() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("eta.json");
    let o = run(&[
        "eta",
        "--group",
        "metacyclic:5,4,2",
        "--samples",
        "1",
        "--seed",
        "5",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = read_json(&json);
    let input = dir.path().join("input.json");
    std::fs::write(&input, v["results"][0]["input"].to_string()).unwrap();
    let o = run(&[
        "eta",
        "--group",
        "metacyclic:5,4,2",
        "--cocycle",
        input.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
