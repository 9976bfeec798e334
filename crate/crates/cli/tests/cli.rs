use std::path::Path;
use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn hvcheck(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_hvcheck"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(args: &[&str]) -> (i32, Value) {
    let r = hvcheck(args);
    assert!(r.stderr.is_empty(), "{}", r.stderr);
    (r.code, serde_json::from_str(&r.stdout).expect("stdout is JSON"))
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| panic!("not a number: {v}"))
}

/// Recomputes every verdict from the printed numbers.
fn verdicts_recompute(report: &Value) -> bool {
    let checks = report["checks"].as_array().expect("checks array");
    let mut all = true;
    for c in checks {
        let (v, b) = (num(&c["value"]), num(&c["bound"]));
        let pass = match c["relation"].as_str().unwrap() {
            "<=" => v <= b,
            ">=" => v >= b,
            ">" => v > b,
            other => panic!("relation {other}"),
        };
        assert_eq!(pass, c["pass"].as_bool().unwrap(), "{c}");
        all &= pass;
    }
    let verdict = report["verdict"].as_str().unwrap();
    assert_eq!(verdict, if all { "PASS" } else { "FAIL" });
    all
}

const COMMANDS: &[&[&str]] = &[
    &["vn-reconstruct", "--dim", "3"],
    &["dispersion", "--dim", "4"],
    &["jauch-piron", "--a", "0.6,0,0.8", "--b", "0,1,0"],
    &["bell-hv", "--samples", "200000"],
    &["ks-color", "--peres"],
    &["mermin"],
    &["bell"],
    &["chsh"],
    &["chsh", "--optimize", "--state", "product", "--restarts", "4"],
    &["wigner", "--samples", "2000"],
    &["ghz"],
    &["hardy", "--p1", "0.3", "--p2", "0.7"],
    &["hardy", "--optimize"],
    &["nosignal", "--samples", "100"],
    &["simulate", "--samples", "20000"],
    &["simulate", "--samples", "20000", "--source", "lhv:sign"],
];

#[test]
fn every_command_passes_and_round_trips() {
    for args in COMMANDS {
        let (code, report) = json(args);
        assert_eq!(code, 0, "{args:?}: {report}");
        assert_eq!(report["command"], args[0]);
        assert!(verdicts_recompute(&report), "{args:?}");
        let keys: Vec<&str> = report.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(
            keys,
            [
                "command",
                "inputs",
                "outputs",
                "checks",
                "tolerances",
                "seed",
                "verdict",
                "wall_time"
            ]
        );
    }
}

#[test]
fn chsh_optimum_on_singlet() {
    let (code, r) = json(&["chsh", "--optimize", "--state", "singlet"]);
    assert_eq!(code, 0);
    assert!((num(&r["outputs"]["s_max"]) - 2.8284271).abs() < 1e-7);
}

#[test]
fn peres_set_is_uncolorable() {
    let (code, r) = json(&["ks-color", "--peres"]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["verdict"], "UNSAT");
    assert_eq!(r["outputs"]["ray_count"], 33);
}

#[test]
fn peres_minus_one_ray_is_colorable() {
    let (code, r) = json(&["ks-color", "--peres", "--drop", "0"]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["verdict"], "SAT");
    assert_eq!(r["outputs"]["coloring"].as_str().unwrap().len(), 32);
}

#[test]
fn hardy_optimum() {
    let (code, r) = json(&["hardy", "--optimize"]);
    assert_eq!(code, 0);
    let o = &r["outputs"];
    assert!((num(&o["p_max"]) - 0.0901699).abs() < 1e-7);
    assert!((num(&o["p1"]) - 0.6180340).abs() < 1e-6);
    assert!((num(&o["p2"]) - 0.6180340).abs() < 1e-6);
}

fn without_wall_time(s: &str) -> String {
    s.lines()
        .filter(|l| !l.contains("\"wall_time\""))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn identical_argv_gives_identical_output() {
    for args in [
        &["simulate", "--samples", "50000", "--seed", "9", "--workers", "3"][..],
        &["chsh", "--optimize", "--seed", "4", "--restarts", "3"],
        &["bell-hv", "--samples", "10000", "--seed", "2", "--workers", "2"],
        &["wigner", "--samples", "500", "--seed", "1"],
        &["nosignal", "--samples", "20", "--seed", "5"],
    ] {
        let (a, b) = (hvcheck(args), hvcheck(args));
        assert_eq!(without_wall_time(&a.stdout), without_wall_time(&b.stdout), "{args:?}");
        assert_ne!(a.stdout.len(), 0);
    }
}

#[test]
fn seed_changes_stochastic_output() {
    let a = hvcheck(&["simulate", "--samples", "10000", "--seed", "1"]);
    let b = hvcheck(&["simulate", "--samples", "10000", "--seed", "2"]);
    assert_ne!(without_wall_time(&a.stdout), without_wall_time(&b.stdout));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["bogus"][..],
        &["mermin", "--no-such-flag"],
        &[],
        &["ks-color"],
        &["chsh", "--state", "w"],
    ] {
        let r = hvcheck(args);
        assert_eq!(r.code, 2, "{args:?}");
        assert!(r.stdout.is_empty());
        assert!(r.stderr.contains("Usage"), "{args:?}: {}", r.stderr);
    }
}

#[test]
fn input_errors_exit_two() {
    for args in [
        &["hardy", "--p1", "1.5"][..],
        &["hardy", "--optimize", "--grid", "5"],
        &["jauch-piron", "--a", "0,0,1", "--b", "0,0,-3"],
        &["ks-color", "--rays", "/nonexistent/rays.txt"],
        &["ks-color", "--peres", "--drop", "33"],
        &["wigner", "--weights", "0.5,0.5"],
        &["simulate", "--visibility", "1.2"],
        &["simulate", "--source", "lhv:nope"],
        &["mermin", "--tol", "-1"],
        &["bell", "--eta", "1,0,1"],
    ] {
        let r = hvcheck(args);
        assert_eq!(r.code, 2, "{args:?}: {}", r.stdout);
        assert!(r.stderr.starts_with("error:"), "{args:?}: {}", r.stderr);
    }
}

#[test]
fn failed_claim_exits_one() {
    let (code, r) = json(&["nosignal", "--samples", "200", "--tol", "0"]);
    assert_eq!(code, 1);
    assert_eq!(r["verdict"], "FAIL");
    assert!(!verdicts_recompute(&r));
}

#[test]
fn quiet_prints_nothing() {
    let r = hvcheck(&["ghz", "--quiet"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.is_empty() && r.stderr.is_empty());
}

#[test]
fn csv_projection() {
    let r = hvcheck(&["ghz", "--format", "csv"]);
    assert_eq!(r.code, 0);
    let mut lines = r.stdout.lines();
    assert_eq!(lines.next(), Some("key,value"));
    let rows: Vec<(&str, &str)> = lines.map(|l| l.split_once(',').unwrap()).collect();
    let get = |k: &str| rows.iter().find(|r| r.0 == k).map(|r| r.1);
    assert_eq!(get("command"), Some("ghz"));
    assert_eq!(get("verdict"), Some("PASS"));
    assert_eq!(get("outputs.assignments_checked"), Some("64"));
    assert_eq!(get("checks.assignments_satisfying.pass"), Some("true"));
    assert_eq!(get("outputs.identity_deviations.3"), Some("0.0"));
}

#[test]
fn ray_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("peres.txt");
    let p = path.to_str().unwrap();
    let (code, _) = json(&["ks-color", "--peres", "--write-rays", p]);
    assert_eq!(code, 0);
    let (code, r) = json(&["ks-color", "--rays", p]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["ray_count"], 33);
    assert_eq!(r["outputs"]["triads"], 16);
    assert_eq!(r["outputs"]["verdict"], "UNSAT");
}

#[test]
fn colorable_ray_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("frame.txt");
    std::fs::write(&path, "# one orthogonal frame\n1 0 0\n0 1 0\n0 0 -2\n").unwrap();
    let (code, r) = json(&["ks-color", "--rays", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["outputs"]["verdict"], "SAT");
    assert_eq!(r["checks"][0]["name"], "coloring_verified");
    std::fs::write(&path, "1 0\n").unwrap();
    let bad = hvcheck(&["ks-color", "--rays", path.to_str().unwrap()]);
    assert_eq!(bad.code, 2);
    assert!(bad.stderr.contains("line 1"), "{}", bad.stderr);
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn simulate_from_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "exp.cfg",
        "source = singlet\nn_pairs = 40000\nvisibility = 0.9546\nseed = 3\n",
    );
    let (code, r) = json(&["simulate", "--config", &cfg]);
    assert_eq!(code, 0);
    assert_eq!(r["seed"], 3);
    assert_eq!(r["inputs"]["n_pairs"], 40000);
    assert!((num(&r["outputs"]["expected_s"]) - 0.9546 * 2.0 * 2f64.sqrt()).abs() < 1e-8);
    assert!(r["outputs"]["visibility_model"].is_string());
    // flags override the file
    let (_, r) = json(&["simulate", "--config", &cfg, "--seed", "8", "--samples", "1000"]);
    assert_eq!(r["seed"], 8);
    assert_eq!(r["inputs"]["n_pairs"], 1000);

    let lhv = write(dir.path(), "lhv.cfg", "source = lhv:constant\nn_pairs = 100\n");
    let (code, r) = json(&["simulate", "--config", &lhv]);
    assert_eq!(code, 0);
    assert_eq!(num(&r["outputs"]["s"]), 2.0);
    let bad = write(dir.path(), "bad.cfg", "n_pairs = 10\ncolour = red\n");
    let run = hvcheck(&["simulate", "--config", &bad]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("line 2"), "{}", run.stderr);
}
