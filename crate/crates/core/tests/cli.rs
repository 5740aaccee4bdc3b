use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use workbench::filter::TraceStep;
use workbench::nat::WindowSet;
use workbench::ramsey::FolkmanNumber;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_workbench"))
        .args(args)
        .current_dir(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../.."))
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

#[test]
fn envelope_fields() {
    let v = json(&["semigroup", "idempotents", "--table", "data/z6.json"]);
    assert_eq!(v["command"], "semigroup idempotents");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert!(v["elapsed_ms"].is_u64());
    assert_eq!(v["idempotents"], serde_json::json!([0]));
    assert_eq!(
        json(&[
            "--reproducible",
            "fal",
            "--set",
            "@data/fs_binary.json",
            "--k",
            "2"
        ])["elapsed_ms"],
        0
    );
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&["hindman", "extract", "--k", "3"]), 2);
    assert_eq!(code(&["no-such-command"]), 2);
    assert_eq!(code(&["semigroup", "idempotents"]), 2);
    assert_eq!(
        code(&[
            "semigroup",
            "idempotents",
            "--table",
            "data/z4.json",
            "--filter",
            "data/z4_even.json"
        ]),
        2
    );
    assert_eq!(
        code(&["semigroup", "check-additive", "--table", "data/z4.json"]),
        2
    );
    assert_eq!(code(&["hindman", "extract", "--gens", "4,2"]), 2);
    assert_eq!(
        code(&["semigroup", "idempotents", "--table", "data/missing.json"]),
        2
    );
    assert_eq!(
        code(&["fal", "--set", "{\"horizon\": 3, \"members\": [5]}"]),
        2
    );
}

#[test]
fn precondition_failures_exit_3() {
    assert_eq!(
        code(&[
            "semigroup",
            "extend",
            "--table",
            "data/z4.json",
            "--support",
            "1,3"
        ]),
        3
    );
    let outside = "{\"horizon\": 15, \"members\": [2, 3]}";
    assert_eq!(
        code(&["hindman", "extract", "--gens", "1,2,4,8", "--set", outside]),
        3
    );
    assert_eq!(
        code(&[
            "probe",
            "--set",
            "{\"horizon\": 20, \"members\": [1, 3, 5]}"
        ]),
        3
    );
}

#[test]
fn budget_exhaustion_exits_4() {
    assert_eq!(
        code(&["folkman", "--n", "2", "--r", "2", "--budget", "5"]),
        4
    );
}

#[test]
fn extension_trace_round_trips() {
    let v = json(&[
        "semigroup",
        "extend",
        "--table",
        "data/z6.json",
        "--support",
        "0,2,4",
    ]);
    let trace: Vec<TraceStep> = serde_json::from_value(v["trace"].clone()).unwrap();
    assert_eq!(serde_json::to_value(&trace).unwrap(), v["trace"]);
    assert_eq!(v["idempotent"], 0);
    let max = json(&[
        "semigroup",
        "extend",
        "--filter",
        "data/z4_even.json",
        "--chooser",
        "max",
    ]);
    assert_eq!(max["idempotent"], 0);
}

#[test]
fn window_round_trips() {
    let v = json(&["example33", "build"]);
    let w: WindowSet = serde_json::from_value(v["window"].clone()).unwrap();
    assert_eq!(w.to_vec(), vec![17, 4097, 4113]);
    assert_eq!(serde_json::to_value(&w).unwrap(), v["window"]);
    assert_eq!(v["size"], 3);
}

#[test]
fn folkman_certificate_round_trips() {
    let v = json(&["folkman", "--n", "2", "--r", "2"]);
    let f: FolkmanNumber = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(serde_json::to_value(&f).unwrap()["bound"], v["bound"]);
    assert!(f.bound.verify());
    assert!(f.below.unwrap().verify());
    let none = json(&["folkman", "--n", "2", "--r", "2", "--max", "3"]);
    assert!(none["N"].is_null());
}

#[test]
fn extraction_outputs() {
    let g = json(&["hindman", "extract", "--gens", "1,2,4,8,16,32", "--k", "4"]);
    assert_eq!(g["witness"]["elements"], serde_json::json!([1, 2, 3, 4]));
    assert_eq!(g["witness"]["sums_checked"], 15);
    assert_eq!(g["method"], "galvin");
    let p = json(&[
        "hindman",
        "extract",
        "--gens",
        "1",
        "--principal",
        "3",
        "--method",
        "weak",
        "--set",
        "{\"horizon\": 30, \"members\": [3, 6, 9, 12, 15, 18]}",
    ]);
    assert_eq!(p["witness"]["elements"], serde_json::json!([3, 6, 9]));
    assert_eq!(p["principal"], 3);
}

#[test]
fn text_format_lists_keys() {
    let out = run(&[
        "--format",
        "text",
        "--reproducible",
        "fal",
        "--set",
        "@data/fs_binary.json",
        "--k",
        "2",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "elapsed_ms: 0"), "{text}");
    assert!(text.lines().any(|l| l.starts_with("witness: ")), "{text}");
}
