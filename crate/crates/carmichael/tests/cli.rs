//! End-to-end tests of the binary: exit-code partition, output formats, and
//! byte-identical stdout for identical invocations.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_carmichael"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn exit_codes_partition_outcomes() {
    // 0: verified true
    assert_eq!(run(&["check", "561", "1"]).status.code(), Some(0));
    // 1: verified false
    assert_eq!(run(&["check", "9", "1"]).status.code(), Some(1));
    assert_eq!(run(&["check", "7", "1"]).status.code(), Some(1));
    // 2: malformed input
    assert_eq!(run(&["check", "x", "1"]).status.code(), Some(2));
    assert_eq!(run(&["check", "561", "1", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    // 3: budget exhausted (no prime = 1 mod 9 below 15)
    assert_eq!(
        run(&["--cap", "15", "hb-scan", "9", "9"]).status.code(),
        Some(3)
    );
}

#[test]
fn check_json_certificate() {
    let out = run(&["--format", "json", "check", "561", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], true);
    assert_eq!(v["certificate"]["n"], "561");
    assert_eq!(v["certificate"]["factors"][0]["p"], "3");
    assert_eq!(v["certificate"]["squarefree"], true);

    let out = run(&["--format", "json", "check", "9", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], false);
    assert!(v["reason"].as_str().unwrap().contains("squarefree"));
}

#[test]
fn check_relax_squarefree_flag() {
    // 561 * 49: every p - 1 | n - 1 but 7^2 | n.
    let n = (561u64 * 49).to_string();
    assert_eq!(run(&["check", &n, "1"]).status.code(), Some(1));
    let code = run(&["check", &n, "1", "--relax-squarefree"]).status.code();
    // relaxed reading: composite, p - 1 | n - 1 for p in {3, 7, 11, 17}
    let expected = {
        let m = 561u64 * 49 - 1;
        [3u64, 7, 11, 17].iter().all(|p| m % (p - 1) == 0)
    };
    assert_eq!(code, Some(if expected { 0 } else { 1 }));
}

#[test]
fn enumerate_matches_spec_examples() {
    let out = run(&["enumerate", "-1", "1000"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "399 935\n");

    let out = run(&["enumerate", "1", "2000"]);
    assert_eq!(stdout(&out), "561 1105 1729\n");

    let out = run(&["--format", "json", "enumerate", "0", "15"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v, serde_json::json!([6, 10, 14, 15]));
}

#[test]
fn hb_scan_csv_shape() {
    let out = run(&["hb-scan", "3", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 9); // header + m = 3..=10
    assert_eq!(lines[0], "m,worst_c,worst_p,ratio2,ratioA");
    assert!(lines[1].starts_with("3,1,7,"));
}

#[test]
fn construct_from_params_file() {
    let dir = std::env::temp_dir();
    let path = dir.join("carmichael_cli_params.toml");
    std::fs::write(&path, "a = 1\nblocks = [8, 3, 5, 7]\nk_cap = 60\nkprime_cap = 300\n")
        .unwrap();
    let path = path.to_str().unwrap();

    let out = run(&["--format", "json", "construct", path]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["n"], "10276596961");
    assert_eq!(v["P"], "3361");
    assert_eq!(v["k"], 2);
    assert_eq!(v["kprime"], 2);
    assert_eq!(v["L"], "840");
    assert!(v["certificate"]["factors"].is_array());
    assert!(v.get("timings").is_none(), "timings must be opt-in");
    assert!(v["params"]["blocks"].is_array());

    // Identical invocation, byte-identical stdout.
    let again = run(&["--format", "json", "construct", path]);
    assert_eq!(out.stdout, again.stdout);

    // Trace file is written when asked.
    let trace_path = dir.join("carmichael_cli_trace.log");
    let trace = trace_path.to_str().unwrap();
    let out = run(&["construct", path, "--trace", trace]);
    assert_eq!(out.status.code(), Some(0));
    let logged = std::fs::read_to_string(trace).unwrap();
    assert!(logged.contains("best slice"));
    assert!(logged.lines().count() >= 5);

    // Timings appear only with the flag.
    let out = run(&["--format", "json", "construct", path, "--timings"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["timings"].is_array());
}

#[test]
fn construct_error_exit_codes() {
    let dir = std::env::temp_dir();
    // Usage: unreadable file.
    assert_eq!(
        run(&["construct", "/nonexistent/params.toml"]).status.code(),
        Some(2)
    );
    // Usage: invalid parameters.
    let bad = dir.join("carmichael_cli_bad.toml");
    std::fs::write(&bad, "a = 0\n").unwrap();
    assert_eq!(
        run(&["construct", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );
    // Budget: strict mode at tiny scale fails closed with exit 3.
    let strict = dir.join("carmichael_cli_strict.toml");
    std::fs::write(
        &strict,
        "a = 1\ny = 5\ntheta = 1.9\nmode = \"strict\"\n",
    )
    .unwrap();
    assert_eq!(
        run(&["construct", strict.to_str().unwrap()]).status.code(),
        Some(3)
    );
}

#[test]
fn hb_scan_deterministic_across_threads() {
    let a = run(&["--threads", "1", "hb-scan", "3", "200"]);
    let b = run(&["--threads", "4", "hb-scan", "3", "200"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn group_bound_output() {
    let out = run(&["--format", "json", "group-bound", "8", "--exact-cap", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["L"], "8");
    assert_eq!(v["lambda"], "2");
    assert_eq!(v["n_exact"], 3);
    assert!((v["eq1_bound"].as_f64().unwrap() - 4.7725887).abs() < 1e-6);

    // Unit group far beyond the cap: budget exit.
    assert_eq!(
        run(&["group-bound", "1009", "--exact-cap", "20"]).status.code(),
        Some(3)
    );
}

#[test]
fn bounds_output() {
    let out = run(&[
        "--format", "json", "bounds", "--y", "100", "--theta", "1.5", "--hb-exponent", "2",
        "--omega", "300",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["applicable"], false);
    assert!((v["log_n_bound"].as_f64().unwrap() - 450.0).abs() < 1e-9);
    assert!(v["chain"].is_array());

    // theta outside (1, 2) is a usage error.
    let out = run(&[
        "bounds", "--y", "100", "--theta", "2.5", "--omega", "300",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
