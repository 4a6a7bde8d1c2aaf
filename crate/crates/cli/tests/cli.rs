use std::process::{Command, Output};

use serde_json::Value;

fn lanke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lanke"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = lanke(&all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn dimensions() {
    assert_eq!(stdout(&lanke(&["dim", "4", "2"])).trim(), "14");
    assert_eq!(stdout(&lanke(&["dim", "5", "1"])).trim(), "1");
    let v = json(&["dim", "3", "4", "--mode", "multimodular"]);
    assert_eq!(v["payload"]["dim"], 1077);
    assert_eq!(v["arithmetic_mode"], "multimodular-verified");
    assert_eq!(v["command"], "dim");
}

#[test]
fn decompositions() {
    assert_eq!(stdout(&lanke(&["decompose", "2", "1"])).lines().next(), Some("1^2"));
    assert_eq!(
        stdout(&lanke(&["decompose", "3", "3"])).lines().next(),
        Some("3^21 + 321^2")
    );
    let v = json(&["decompose", "2", "4"]);
    let terms = v["payload"]["decomposition"].as_array().unwrap();
    assert_eq!(terms.len(), 5);
    assert_eq!(v["payload"]["dim"], 24);
    assert_eq!(terms[0]["lambda"], serde_json::json!([4, 1]));
}

#[test]
fn payloads_are_deterministic() {
    let a = json(&["decompose", "3", "3"]);
    let b = json(&["decompose", "3", "3", "--threads", "1"]);
    assert_eq!(a["payload"], b["payload"]);
    assert_eq!(a["parameters"], b["parameters"]);
}

#[test]
fn lie_tables() {
    assert_eq!(stdout(&lanke(&["kw", "3"])).trim(), "(2,1)\t1");
    assert_eq!(stdout(&lanke(&["kw", "2"])).trim(), "(1,1)\t1");
    let a = json(&["kw", "5"]);
    let b = json(&["kw", "5", "--i", "3"]);
    assert_eq!(a["payload"], b["payload"]);
    assert_eq!(a["payload"]["decomposition"].as_array().unwrap().len(), 5);
    assert_eq!(lanke(&["kw", "4", "--i", "2"]).status.code(), Some(2));
}

#[test]
fn column_scan() {
    assert_eq!(stdout(&lanke(&["conjecture-scan", "2", "3"])).trim(), "{2}");
    assert_eq!(stdout(&lanke(&["conjecture-scan", "3", "3"])).trim(), "{}");
    let v = json(&["conjecture-scan", "3", "4", "--mode", "multimodular"]);
    assert_eq!(v["payload"]["column_counts"], serde_json::json!([3]));
}

#[test]
fn exit_codes() {
    assert_eq!(lanke(&["dim", "5", "4"]).status.code(), Some(3));
    assert_eq!(lanke(&["dim", "3", "3", "--max-degree", "6"]).status.code(), Some(3));
    assert_eq!(lanke(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(lanke(&["dim", "x", "2"]).status.code(), Some(2));
    assert_eq!(lanke(&["verify", "nothing"]).status.code(), Some(2));
    assert_eq!(lanke(&["tree-specht", "(3 (2))"]).status.code(), Some(2));
}

#[test]
fn verify_suites_pass() {
    for args in [
        vec!["verify", "kw"],
        vec!["verify", "presentation", "--max-size", "4"],
        vec!["verify", "phi-kernel", "--max-size", "4"],
        vec!["verify", "tree-specht", "--max-nodes", "3", "--max-size", "5"],
        vec!["verify", "stabilization", "--mode", "multimodular"],
        vec!["verify", "decompositions", "--max-degree", "7"],
    ] {
        let o = lanke(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}\n{}", stdout(&o));
        assert!(stdout(&o).lines().all(|l| !l.starts_with("FAIL")));
    }
    let v = json(&["verify", "kw"]);
    assert_eq!(v["payload"]["passed"], true);
    assert!(v["payload"]["cases"].as_array().unwrap().len() >= 12);
}

#[test]
fn tree_specht_command() {
    let o = lanke(&["tree-specht", "(1 (2))", "--kind", "first"]);
    assert_eq!(stdout(&o).lines().next(), Some("21"));
}
