use std::process::Command;

use msls::cli::run;
use msls::report::from_csv;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv: Vec<&str> = std::iter::once("msls").chain(args.iter().copied()).collect();
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn classify_records() {
    let (code, out, _) = call(&["classify", "--p", "3", "--e", "1", "--alpha", "g^5", "--beta", "g^7"]);
    assert_eq!(code, 0);
    let v = json(&out);
    let cl = &v["classification"];
    for k in ["tag", "n_alpha", "n_beta", "lambda"] {
        assert!(cl.get(k).is_some(), "missing {k}");
    }
    let h = &v["header"]["fields"][0];
    for k in ["p", "e", "q", "modulus", "generator", "gamma"] {
        assert!(h.get(k).is_some(), "missing {k}");
    }
    assert_eq!(v["header"]["tool"], "msls");

    let (code, out, _) = call(&["classify", "--p", "2", "--e", "1", "--alpha", "0", "--beta", "0"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["classification"]["tag"], "Pseudoregulus");
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        vec!["classify", "--p", "2", "--alpha", "g^", "--beta", "0"],
        vec!["classify", "--p", "2", "--alpha", "32", "--beta", "0"],
        vec!["classify", "--p", "2", "--alpha", "-1", "--beta", "0"],
        vec!["classify", "--p", "4", "--alpha", "0", "--beta", "0"],
        vec!["classify", "--p", "2", "--alpha", "0"],
        vec!["verify", "nonsense"],
        vec!["search", "sideways", "--p", "2"],
        vec!["search", "full", "--p", "2", "--format", "xml"],
        vec!["frobnicate"],
    ] {
        let (code, _, err) = call(&args);
        assert_eq!(code, 64, "{args:?}: {err}");
        assert!(!err.is_empty());
    }
}

#[test]
fn help_and_version_exit_0() {
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("classify") && out.contains("search"));
    assert!(!out.contains("stop-after-shards"));
    let (code, out, _) = call(&["--version"]);
    assert_eq!(code, 0);
    assert!(out.contains(env!("CARGO_PKG_VERSION")));
}

#[test]
fn budget_exit_65() {
    let (code, _, err) = call(&["search", "full", "--p", "5"]);
    assert_eq!(code, 65);
    assert!(err.contains("--long-run") && err.contains("1953125"));
    let (code, _, _) = call(&["search", "restricted", "--p", "13"]);
    assert_eq!(code, 65);
}

#[test]
fn verify_slavov_and_resultants() {
    let (code, out, _) = call(&["verify", "slavov"]);
    assert_eq!(code, 0);
    assert!(out.contains("216") && out.contains("223"));
    let (code, out, _) = call(&["verify", "resultants", "--seed", "7"]);
    assert_eq!(code, 0);
    let lines: Vec<Value> = out.lines().map(json).collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[..3].iter().all(|l| l["pass"] == true));
    assert_eq!(lines[3]["summary"]["pass"], true);
    assert_eq!(lines[3]["summary"]["header"]["seed"], 7);
}

#[test]
fn csv_matches_json() {
    let args = ["search", "restricted", "--p", "3"];
    let (code, j, _) = call(&args);
    assert_eq!(code, 0);
    let (_, c, _) = call(&[&args[..], &["--format", "csv"]].concat());
    let mut a = json(&j);
    let mut b = from_csv(&c).unwrap();
    a.as_object_mut().unwrap().remove("run");
    b.as_object_mut().unwrap().remove("run");
    assert_eq!(a, b);

    let cargs = ["classify", "--p", "3", "--alpha", "g^5", "--beta", "g^7"];
    let (_, j, _) = call(&cargs);
    let (_, c, _) = call(&[&cargs[..], &["--format", "csv"]].concat());
    assert_eq!(json(&j), from_csv(&c).unwrap());
    let (_, h, _) = call(&[&cargs[..], &["--format", "human"]].concat());
    assert!(h.contains("tag: NotScattered"));
}

#[test]
fn interrupted_then_resumed_via_cli() {
    let dir = tempfile::tempdir().unwrap();
    let cp = dir.path().join("cp.jsonl");
    let cp = cp.to_str().unwrap();
    let base = ["search", "full", "--p", "3", "--shards", "10", "--seed", "4"];
    let (code, whole, _) = call(&base);
    assert_eq!(code, 0);
    let (code, _, err) = call(&[&base[..], &["--checkpoint", cp, "--stop-after-shards", "3"]].concat());
    assert_eq!(code, 1, "{err}");
    assert_eq!(std::fs::read_to_string(cp).unwrap().lines().count(), 4);
    let out = dir.path().join("r.json");
    let (code, _, _) = call(
        &[&base[..], &["--checkpoint", cp, "--resume", "--workers", "3", "--out", out.to_str().unwrap()]].concat(),
    );
    assert_eq!(code, 0);
    let mut a = json(&whole);
    let mut b = json(&std::fs::read_to_string(&out).unwrap());
    assert_eq!(b["run"]["resumed"], true);
    assert_eq!(b["run"]["lineage"].as_array().unwrap().len(), 2);
    a.as_object_mut().unwrap().remove("run");
    b.as_object_mut().unwrap().remove("run");
    assert_eq!(a, b);

    // a checkpoint from another run is refused
    let (code, _, err) = call(&["search", "full", "--p", "3", "--seed", "5", "--checkpoint", cp, "--resume"]);
    assert_eq!(code, 1);
    assert!(err.contains("header"), "{err}");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_msls");
    let st = Command::new(bin).args(["verify", "slavov"]).output().unwrap();
    assert_eq!(st.status.code(), Some(0));
    let st = Command::new(bin).args(["classify", "--p", "2", "--alpha", "x", "--beta", "0"]).output().unwrap();
    assert_eq!(st.status.code(), Some(64));
    let st = Command::new(bin).args(["search", "probe", "--p", "13"]).output().unwrap();
    assert_eq!(st.status.code(), Some(65));
}
