use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(file: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/corpus").join(file)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sheafchain")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let out = run(&a);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn classify_a_basis_element_on_s5() {
    let s = corpus("s_5.session");
    let v = json(&["classify", s.to_str().unwrap(), "--space", "S5", "--form", "w3", "--resolution", "R"]);
    assert_eq!(v["verdict"], "L");
    assert_eq!(v["space"], "S5");
    for key in ["tool_version", "query", "form", "certificates", "flags", "timings_ms"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    let inline = json(&["classify", s.to_str().unwrap(), "--space", "S5", "--form", "x*dy/z^2"]);
    assert_eq!(inline["verdict"], "Alpha");
}

#[test]
fn quadric_relation_verifies() {
    let s = corpus("quadric3fold.session");
    let v = json(&["verify-dependence", s.to_str().unwrap(), "--relation", "rel_quadric"]);
    assert_eq!(v["verdict"], true);
}

#[test]
fn traces_over_the_derivative() {
    let s = corpus("traces.session");
    let s = s.to_str().unwrap();
    assert_eq!(json(&["trace", s, "--graph", "P", "--h", "z", "--over-pprime"])["verdict"], "0");
    assert_eq!(json(&["trace", s, "--graph", "P", "--h", "z^2", "--over-pprime"])["verdict"], "1");
    assert_eq!(json(&["trace", s, "--graph", "P", "--h", "1"])["verdict"], "3");
    assert_eq!(json(&["omega-basis", s, "--graph", "P"])["verdict"].as_array().unwrap().len(), 3);
}

#[test]
fn span_and_annihilators_on_s7() {
    let s = corpus("s_7.session");
    let s = s.to_str().unwrap();
    let v = json(&["span-dim", s, "--space", "S7", "--form", "x*dy/z^4, x*dy/z^5, x*dy/z^6", "--level", "alpha"]);
    assert_eq!(v["verdict"], 3);
    let v = json(&["annihilate", s, "--form", "w6", "--probes", "x,y,z^6,z^5"]);
    assert_eq!(v["verdict"], serde_json::json!([true, true, true, false]));
}

#[test]
fn blowup_and_nash_charts() {
    let s = corpus("s_2.session");
    let s = s.to_str().unwrap();
    let v = json(&["nash", s, "--space", "S2"]);
    let charts = v["verdict"].as_array().unwrap();
    assert_eq!(charts.len(), 3);
    assert!(charts.iter().all(|c| c["smooth"] == "smooth"));
    let v = json(&["blowup", s, "--space", "S2"]);
    assert!(v["verdict"].as_array().unwrap().iter().all(|c| c["smooth"] == "smooth"));
}

#[test]
fn every_corpus_session_completes() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/corpus");
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert!(files.len() >= 10);
    for f in &files {
        let f = f.to_str().unwrap();
        for cmd in ["classify", "verify-dependence", "check-resolution"] {
            let out = run(&[cmd, f, "--json"]);
            assert_eq!(out.status.code(), Some(0), "{cmd} {f}: {}", String::from_utf8_lossy(&out.stderr));
            let v: Value = serde_json::from_slice(&out.stdout).unwrap();
            if cmd != "classify" {
                assert!(v["verdict"].as_object().unwrap().values().all(|b| b == true), "{cmd} {f}");
            }
        }
    }
}

#[test]
fn output_is_deterministic() {
    let s = corpus("fermat_cubic.session");
    let args = ["classify", s.to_str().unwrap(), "--json"];
    let strip = |o: Output| {
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v.as_object_mut().unwrap().remove("timings_ms");
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(strip(run(&args)), strip(run(&args)));
}

#[test]
fn input_errors_exit_with_one() {
    let s = corpus("s_5.session");
    let s = s.to_str().unwrap();
    for args in [
        vec!["classify", s, "--form", "nope"],
        vec!["classify", s, "--space", "S5", "--form", "dq"],
        vec!["classify", "/nonexistent.session"],
        vec!["frobnicate", s],
        vec!["trace", s],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty());
    }
    let out = run(&["classify", s, "--form", "nope"]);
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error[unknown_name]"));
}

#[test]
fn undecided_exits_with_two() {
    let dir = std::env::temp_dir().join(format!("sheafchain-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("curve.session");
    std::fs::write(
        &f,
        "space C { vars x y z; eq z - x^2, y - x^3; }\n\
         chart Ct from C { vars t; map x = t, y = t^3, z = t^2; }\n\
         resolution R of C { charts Ct; }\n\
         form w on C = dx/x;\n",
    )
    .unwrap();
    let out = run(&["classify", f.to_str().unwrap(), "--form", "w", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["flags"]["undecided_above_l"], true);
    std::fs::remove_dir_all(&dir).unwrap();
}
