//! End-to-end checks of the batch front door: config files in, reports and
//! exit codes out.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_forcinglab"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("forcinglab-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_config(dir: &Path, name: &str, json: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, json).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

/// Strip the only nondeterministic field so outputs can be compared.
fn normalize(stdout: &[u8]) -> serde_json::Value {
    let mut value: serde_json::Value = serde_json::from_slice(stdout).unwrap();
    let reports = match &mut value {
        serde_json::Value::Array(reports) => reports.iter_mut().collect::<Vec<_>>(),
        one => vec![one],
    };
    for report in reports {
        report["timing_ms"] = serde_json::json!(0);
    }
    value
}

#[test]
fn cli_antichain_subcommand_passes_with_exit_zero() {
    let out = run(&["antichain", "--xsize", "4", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let report = normalize(&out.stdout);
    assert_eq!(report["experiment"], "antichain-bound");
    assert_eq!(report["outcome"], "pass");
    assert_eq!(report["verdicts"][0]["witness"]["max"], 4);
}

#[test]
fn cli_run_accepts_a_single_config_object() {
    let dir = scratch("single");
    let cfg = write_config(
        &dir,
        "one.json",
        r#"{"experiment":"antichain-bound","parameters":{"xsize":4,"k":2}}"#,
    );
    let out = run(&["run", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(normalize(&out.stdout)["outcome"], "pass");
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn cli_suite_runs_sorted_and_writes_out_files() {
    let dir = scratch("suite");
    let cfg = write_config(
        &dir,
        "suite.json",
        r#"[
          {"experiment":"socks-generic","parameters":{"pairs":4},"seed":9},
          {"experiment":"antichain-bound","parameters":{"xsize":3,"k":1}},
          {"experiment":"collapse","parameters":{"target":5,"slots":6}}
        ]"#,
    );
    let out_dir = dir.join("reports");
    let out = run(&["run", cfg.to_str().unwrap(), "--out", out_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let reports = normalize(&out.stdout);
    let names: Vec<&str> =
        reports.as_array().unwrap().iter().map(|r| r["experiment"].as_str().unwrap()).collect();
    assert_eq!(names, ["antichain-bound", "collapse", "socks-generic"], "sorted by key");
    let mut files: Vec<String> = std::fs::read_dir(&out_dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    files.sort();
    assert_eq!(files, ["00-antichain-bound.json", "01-collapse.json", "02-socks-generic.json"]);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn cli_reports_are_deterministic_modulo_timing() {
    let dir = scratch("determinism");
    let cfg = write_config(
        &dir,
        "suite.json",
        r#"[
          {"experiment":"socks-generic","parameters":{"pairs":6},"seed":1234},
          {"experiment":"cohen-bits","parameters":{"bits":8},"seed":77},
          {"experiment":"name-pyramid","parameters":{"points":4,"depth":4}}
        ]"#,
    );
    let a = run(&["run", cfg.to_str().unwrap()]);
    let b = run(&["run", cfg.to_str().unwrap()]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(normalize(&a.stdout), normalize(&b.stdout));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn cli_expected_empty_search_exits_zero() {
    let dir = scratch("expect");
    let cfg = write_config(
        &dir,
        "cfg.json",
        r#"{"experiment":"pyramid-capstone","parameters":{"family":"cohen","depth":6},"expect":"none-within-budget"}"#,
    );
    let out = run(&["run", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(normalize(&out.stdout)["outcome"], "pass");
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn cli_unexpected_empty_search_exits_three() {
    let out = run(&["pyramid", "--family", "cohen", "--depth", "6"]);
    assert_eq!(out.status.code(), Some(3), "budget outcome without a declared expectation");
    assert_eq!(normalize(&out.stdout)["outcome"], "budget");
}

#[test]
fn cli_violation_exits_two() {
    let dir = scratch("violation");
    // A fresh-bit name below the empty root is undecided, so evaluation
    // reports clashing witnesses; without an expectation that's a violation.
    let name = forcinglab::experiment::fresh_bit_name(
        forcinglab::poset::PosetFamily::fin2_naturals(3),
        3,
    );
    let params = serde_json::json!({
        "name": name,
        "depth": 3,
        "condition": { "family": { "fin2": { "naturals": { "bound": 3 } } }, "entries": [] },
    });
    let cfg = write_config(&dir, "eval.json", &params.to_string());
    let out = run(&["evaluate", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(normalize(&out.stdout)["outcome"], "violation");

    let with_expect = serde_json::json!({
        "experiment": "evaluate-name",
        "parameters": params,
        "expect": "violation",
    });
    let cfg = write_config(&dir, "expected.json", &with_expect.to_string());
    let out = run(&["run", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "declared violations grade as pass");
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn cli_bad_configs_exit_one() {
    let dir = scratch("bad");
    for bad in [
        r#"{"experiment":"zeppelin","parameters":{}}"#,
        r#"{"experiment":"antichain-bound","parameters":{"xsize":4,"k":2,"extra":1}}"#,
        r#"{"experiment":"antichain-bound","parameters":{"xsize":4,"k":2},"zzz":true}"#,
    ] {
        let cfg = write_config(&dir, "bad.json", bad);
        let out = run(&["run", cfg.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(1), "config: {bad}");
        assert!(!out.stderr.is_empty(), "error goes to stderr");
    }
    let out = run(&["run", dir.join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn cli_text_format_tabulates_verdicts() {
    let out = run(&["socks", "--pairs", "3", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("experiment: socks-generic"));
    assert!(text.contains("outcome: pass"));
    assert!(text.contains("[pass] total-order"));
}

#[test]
fn cli_sigma_subcommand_reads_a_chain_file() {
    let dir = scratch("sigma");
    let chain = serde_json::json!({
        "rule": {
            "seed": { "family": { "fin2": { "naturals": { "bound": 8 } } }, "entries": [] },
            "rule": { "append_bits": { "bits": [1, 0, 1] } },
            "length": 8,
        }
    });
    let cfg = write_config(&dir, "chain.json", &chain.to_string());
    let out = run(&["sigma", cfg.to_str().unwrap(), "--max-steps", "16"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let report = normalize(&out.stdout);
    assert_eq!(report["outcome"], "pass");
    std::fs::remove_dir_all(dir).ok();
}
