//! The `verify` binary and the library entry points behind it.

use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};
use verify_cli::{
    load_instance, run_suite, run_suites, ConfigError, Report, RunOptions, Suite, BUILTIN,
};

fn verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verify"))
        .args(args)
        .output()
        .expect("verify runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("outer-f4-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn without_timing(mut v: Value) -> Value {
    fn strip(v: &mut Value) {
        match v {
            Value::Object(m) => {
                m.remove("wall_time_s");
                m.values_mut().for_each(strip);
            }
            Value::Array(a) => a.iter_mut().for_each(strip),
            _ => {}
        }
    }
    strip(&mut v);
    v
}

fn report_json(path: &PathBuf) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn passing_run_exits_zero_and_writes_a_report() {
    let path = scratch("examples.json");
    let out = verify(&["examples", "--report", path.to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let v = report_json(&path);
    assert_eq!(v["ok"], Value::Bool(true));
    assert_eq!(v["suites"][0]["suite"], "examples");
    assert!(v["suites"][0]["failures"].as_array().unwrap().is_empty());
}

#[test]
fn mutated_product_exits_one_with_a_counterexample() {
    let path = scratch("mutated.json");
    let out = verify(&[
        "axioms",
        "--mutate",
        "--trials",
        "3",
        "--max-deg",
        "1",
        "--report",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = report_json(&path);
    let failures = v["suites"][0]["failures"].as_array().unwrap();
    assert!(!failures.is_empty());
    let cx = &failures[0]["counterexample"];
    assert!(cx["detail"].as_str().unwrap().contains("lhs"));
    assert!(!cx["inputs"].as_array().unwrap().is_empty());
}

#[test]
fn unwritable_report_path_exits_two() {
    let out = verify(&[
        "examples",
        "--trials",
        "0",
        "--report",
        "/nonexistent-dir/report.json",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot write"));
}

#[test]
fn config_errors_exit_two() {
    let bad_witness = scratch("bad_witness.cfg");
    std::fs::write(&bad_witness, "delta = a + b^2\nlambda = b\nbeta = b\n").unwrap();
    let out = verify(&["axioms", "--instance", bad_witness.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("witness mismatch"));

    let garbled = scratch("garbled.cfg");
    std::fs::write(&garbled, "delta = a + (b\nlambda = a\nbeta = b\n").unwrap();
    let out = verify(&["axioms", "--instance", garbled.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));

    assert_eq!(
        verify(&["axioms", "--instance", "/no/such/file"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(verify(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn instance_errors_are_typed() {
    assert!(matches!(
        load_instance("/no/such/file"),
        Err(ConfigError::Io { .. })
    ));
    let zero = scratch("zero_beta.cfg");
    std::fs::write(&zero, "delta = a + b^2\nlambda = a\nbeta = 0\n").unwrap();
    assert!(matches!(
        load_instance(zero.to_str().unwrap()),
        Err(ConfigError::ZeroBeta)
    ));
}

#[test]
fn spelled_out_builtin_matches_the_named_builtin() {
    let path = scratch("builtin.cfg");
    std::fs::write(
        &path,
        "delta = a + b^2\nlambda = a\nbeta = b\ntheta_images = b^2, a\ntheta_choice = 1\n",
    )
    .unwrap();
    let file = load_instance(path.to_str().unwrap()).unwrap();
    let builtin = load_instance(BUILTIN).unwrap();
    let opts = RunOptions {
        trials: Some(4),
        max_deg: Some(1),
        ..RunOptions::new(9)
    };
    let a = run_suite(&file, Suite::Identities, &opts);
    let b = run_suite(&builtin, Suite::Identities, &opts);
    assert_eq!(a.checks, b.checks);
}

#[test]
fn report_keys_are_in_a_stable_order() {
    let inst = load_instance(BUILTIN).unwrap();
    let r = run_suite(&inst, Suite::Examples, &RunOptions::new(42));
    let json = Report::new(BUILTIN, 42, vec![r]).to_json();
    let order = [
        "\"instance\"",
        "\"seed\"",
        "\"ok\"",
        "\"suites\"",
        "\"suite\"",
        "\"max_deg\"",
        "\"trials\"",
        "\"passed\"",
        "\"failed\"",
        "\"checks\"",
        "\"failures\"",
        "\"wall_time_s\"",
    ];
    let positions: Vec<usize> = order
        .iter()
        .map(|k| json.find(k).unwrap_or_else(|| panic!("{k} missing")))
        .collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{positions:?}");
}

#[test]
fn reports_are_reproducible_and_independent_of_jobs() {
    let (p1, p2, p3) = (
        scratch("rep1.json"),
        scratch("rep2.json"),
        scratch("rep3.json"),
    );
    let args = ["quadrangle", "--trials", "3", "--seed", "7", "--report"];
    for (p, extra) in [(&p1, vec![]), (&p2, vec![]), (&p3, vec!["--jobs", "3"])] {
        let mut a: Vec<&str> = args.to_vec();
        a.push(p.to_str().unwrap());
        a.extend(extra);
        assert_eq!(verify(&a).status.code(), Some(0));
    }
    let first = without_timing(report_json(&p1));
    assert_eq!(first, without_timing(report_json(&p2)));
    assert_eq!(first, without_timing(report_json(&p3)));
}

#[test]
fn all_with_zero_trials_is_an_empty_pass() {
    let out = verify(&["all", "--trials", "0", "--seed", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let inst = load_instance(BUILTIN).unwrap();
    let reports = run_suites(
        &inst,
        Suite::All,
        &RunOptions {
            trials: Some(0),
            ..RunOptions::new(0)
        },
    );
    assert_eq!(reports.len(), 7);
    assert!(reports.iter().all(|r| r.ok() && r.trials == 0));
}

#[test]
fn examples_suite_reports_the_trace_facts() {
    let inst = load_instance(BUILTIN).unwrap();
    let r = run_suite(&inst, Suite::Examples, &RunOptions::new(42));
    assert!(r.ok());
    let names: Vec<&str> = r.checks.iter().map(|c| c.name.as_str()).collect();
    assert!(names.contains(&"β has no trace witness up to degree 4"));
    assert!(names.contains(&"1 + t^√2·u² is not a trace for finite-support u"));
    assert!(names.contains(&"polarity criterion holds at u = 0"));
}

/// 200 trials of every τ check. Degree 1 keeps this a fast test; the extra
/// degree-2 comparison is exercised by the acceptance run.
#[test]
fn tau_suite_with_200_trials_agrees_200_times() {
    let inst = load_instance(BUILTIN).unwrap();
    let opts = RunOptions {
        trials: Some(200),
        max_deg: Some(1),
        ..RunOptions::new(42)
    };
    let r = run_suite(&inst, Suite::Tau, &opts);
    assert!(r.ok(), "{:?}", r.failures);
    let keystone = r
        .checks
        .iter()
        .find(|c| c.name == "tau closed form matches the vertex model")
        .unwrap();
    assert_eq!(keystone.passed, 200);
}
