use std::process::Command;

use serde_json::Value;

fn speh(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_speh"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, text) = speh(args);
    (code, serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}")))
}

#[test]
fn enum_counts() {
    for (args, count) in [
        (&["enum", "involutions", "--n", "4"][..], 10),
        (&["enum", "clans", "--p", "2", "--q", "1"][..], 6),
        (&["enum", "perms", "--n", "1"][..], 1),
        (&["enum", "perms", "--n", "4"][..], 24),
    ] {
        let (code, v) = json(args);
        assert_eq!(code, 0);
        assert_eq!(v["status"], "ok");
        assert_eq!(v["payload"]["count"], count);
        assert_eq!(v["payload"]["items"].as_array().unwrap().len(), count);
        assert!(v["diagnostics"].as_array().unwrap().is_empty());
    }
}

#[test]
fn enum_is_ordered_by_length() {
    let (_, v) = json(&["enum", "involutions", "--n", "5"]);
    let lengths: Vec<u64> = v["payload"]["items"]
        .as_array()
        .unwrap()
        .iter()
        .map(|i| i["length"].as_u64().unwrap())
        .collect();
    assert!(lengths.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn bad_input_exits_two() {
    for args in [
        &["enum", "perms", "--n", "0"][..],
        &["enum", "perms"][..],
        &["enum", "clans", "--p", "9", "--q", "1"][..],
        &["solve", "--poset", "inv", "--n", "9"][..],
        &["export", "labels", "--p", "1", "--n", "3", "--perm", "321"][..],
        &["export", "labels", "--p", "3", "--n", "3", "--perm", "3x1"][..],
        &["export", "chain", "--p", "3", "--q", "1"][..],
        &["verify", "fixture", "--file", "/nonexistent/x.json"][..],
    ] {
        let (code, v) = json(args);
        assert_eq!(code, 2, "{args:?}");
        assert_eq!(v["status"], "error");
        assert!(v["diagnostics"][0].as_str().unwrap().starts_with("error:"));
    }
    let (code, _) = speh(&["no-such-command"]);
    assert_eq!(code, 2);
}

#[test]
fn verify_targets_pass() {
    for args in [
        &["verify", "diamonds", "--poset", "inv", "--n", "5"][..],
        &["verify", "diamonds", "--poset", "sym", "--n", "4"][..],
        &["verify", "el", "--poset", "sym", "--n", "4"][..],
        &["verify", "grading", "--poset", "clans", "--p", "3", "--q", "3"][..],
        &["verify", "order-agreement", "--p", "2", "--q", "2"][..],
        &["verify", "euler", "--n", "4"][..],
        &["verify", "euler", "--n", "3", "--convention", "direct"][..],
        &["verify", "fixture", "--file", "gl8.json"][..],
        &["verify", "fixture", "--file", "gl6.json"][..],
        &["verify", "fixture", "--file", "u21.json"][..],
    ] {
        let (code, v) = json(args);
        assert_eq!(code, 0, "{args:?}: {v}");
        assert_eq!(v["status"], "ok");
    }
}

#[test]
fn verify_violations_exit_one() {
    let (code, v) = json(&["verify", "euler", "--n", "4", "--convention", "direct"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "violation");
    assert!(!v["diagnostics"].as_array().unwrap().is_empty());

    let (code, v) = json(&["verify", "order-agreement", "--p", "2", "--q", "2", "--local"]);
    assert_eq!(code, 1);
    assert_eq!(v["payload"]["missing"], 3);

    let (code, v) = json(&["verify", "diamonds", "--poset", "clans", "--p", "2", "--q", "1"]);
    assert_eq!(code, 1);
    assert!(v["payload"]["first_counterexample"].is_object());
}

#[test]
fn flipped_fixture_is_a_violation() {
    let dir = tempfile::tempdir().unwrap();
    let mut f: Value = serde_json::from_str(speh_core::fixture::GL6_JSON).unwrap();
    let sign = f["edges"][0]["sign"].as_i64().unwrap();
    f["edges"][0]["sign"] = Value::from(-sign);
    let path = dir.path().join("flipped.json");
    std::fs::write(&path, f.to_string()).unwrap();
    let (code, v) = json(&["verify", "fixture", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["payload"]["parity_violations"].as_array().unwrap().len(), 1);
}

#[test]
fn solve_shapes() {
    let (code, v) = json(&["solve", "--poset", "inv", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["degrees"], serde_json::json!([1, 2, 1]));
    assert_eq!(v["payload"]["d_squared_zero"], true);
    let (_, v) = json(&["solve", "--poset", "inv", "--n", "4"]);
    assert_eq!(v["payload"]["degrees"], serde_json::json!([1, 2, 3, 3, 1]));
    let (code, v) = json(&["solve", "--poset", "inv", "--n", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["degrees"], serde_json::json!([1]));
    let (code, _) = json(&["solve", "--poset", "sym", "--n", "4"]);
    assert_eq!(code, 0);
}

#[test]
fn solve_output_is_a_valid_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("i5.json");
    let (code, _) = json(&["solve", "--poset", "inv", "--n", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (code, v) = json(&["verify", "fixture", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["payload"]["signed"], true);
}

#[test]
fn exports() {
    let (code, v) = json(&["export", "labels", "--p", "3", "--n", "3", "--perm", "321"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["label"], "(3/2,1/2),(1/2,-1/2),(-1/2,-3/2)");
    assert_eq!(v["payload"]["theta_fixed"], true);

    let (_, v) = json(&["export", "chain", "--p", "3", "--q", "3"]);
    assert_eq!(
        v["payload"]["chain"],
        serde_json::json!(["123321", "123312", "123132", "123123", "121323", "121233", "112233"])
    );
    let (_, v) = json(&["export", "chain", "--p", "3", "--q", "3", "--full"]);
    assert_eq!(v["payload"]["length"], 10);

    let (code, dot) = speh(&["export", "hasse-dot", "--clans", "2", "1", "--dot"]);
    assert_eq!(code, 0);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches(" -> ").count(), 6);
    assert!(dot.contains("\"1+1\" -> \"11+\";"));

    let (_, v) = json(&["export", "hasse-dot", "--poset", "inv", "--n", "4", "--signs"]);
    assert!(v["payload"]["dot"].as_str().unwrap().contains("style=dotted"));

    let (code, v) = json(&["export", "kl", "--n", "4"]);
    assert_eq!(code, 0);
    let entries = v["payload"]["entries"].as_array().unwrap();
    assert!(entries
        .iter()
        .any(|e| e["x"] == "1324" && e["w"] == "3412" && e["coeffs"] == serde_json::json!([1, 1])));
}

#[test]
fn export_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("i3.dot");
    let (code, v) = json(&["export", "hasse-dot", "--n", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["name"], "I3");
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("digraph \"I3\""));

    let (code, v) = json(&["export", "kl", "--n", "3", "--out", "/nonexistent/dir/kl.json"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "error");
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["solve", "--poset", "inv", "--n", "5"][..],
        &["export", "hasse-dot", "--poset", "inv", "--n", "5", "--signs"][..],
        &["enum", "clans", "--p", "3", "--q", "3"][..],
        &["export", "kl", "--n", "5"][..],
    ] {
        assert_eq!(speh(args), speh(args), "{args:?}");
    }
}
