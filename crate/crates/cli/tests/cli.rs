use std::process::{Command, Output};

fn sl2share(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sl2share")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn one_chord_is_c() {
    let out = sl2share(&["eval-cd", "1 1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), r#"{"var":"c","coeffs":["0/1","1/1"]}"#);
}

#[test]
fn complete_graph_from_residues() {
    let out = sl2share(&["kcomplete", "3"]);
    assert_eq!(stdout(&out).trim(), r#"{"var":"c","coeffs":["0/1","2/1","-3/1","1/1"]}"#);
}

#[test]
fn bull_duality_report() {
    let out = sl2share(&["verify-duality", "5: 1-2,1-3,2-3,2-4,3-5"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pass"], true);
    for row in v["rows"].as_array().unwrap() {
        let k = row["k"].as_u64().unwrap();
        let zero = row["r"]["coeffs"].as_array().unwrap().is_empty();
        assert_eq!(zero, k % 2 == 0, "k = {k}");
    }
}

#[test]
fn basis_conversion_and_matrices() {
    let out = sl2share(&["basis-convert", "--from", "y", "--to", "x", "--format", "text", "y^2"]);
    assert_eq!(stdout(&out).trim(), "x^2 + x");
    let out = sl2share(&["op-matrix", "U", "e", "3", "--format", "text"]);
    assert_eq!(stdout(&out), "[ c      0      0 ]\n[ 0  c - 1      0 ]\n[ 0      0  c - 3 ]\n");
}

#[test]
fn reconstruct_inline_series() {
    let series = r#"{"terms":[{"k":1,"r":{"var":"c","coeffs":["0/1","1/1"]}}]}"#;
    let out = sl2share(&["reconstruct", "--format", "text", series]);
    assert_eq!(stdout(&out).trim(), "y");
    let bad = r#"{"terms":[{"k":1,"r":{"var":"c","coeffs":["1/1"]}}]}"#;
    assert_eq!(sl2share(&["reconstruct", bad]).status.code(), Some(1));
}

#[test]
fn exit_codes() {
    assert_eq!(sl2share(&["eval-cd", "1 2 1"]).status.code(), Some(2));
    assert_eq!(sl2share(&["graph-r", "5: 1-2,2-3,3-4,4-5,5-1"]).status.code(), Some(2));
    assert_eq!(sl2share(&["enumerate", "9"]).status.code(), Some(3));
    assert_eq!(sl2share(&["oracle-check", "1 2 3 4 5 6 1 2 3 4 5 6"]).status.code(), Some(3));
    assert_eq!(sl2share(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [&["kbipartite", "4"][..], &["rseries", "1 2 3 | 3 1 2"], &["bouchet", "6: 1-2,2-3,3-4,4-5,5-1,1-6,2-6,3-6,4-6,5-6"]] {
        assert_eq!(sl2share(args).stdout, sl2share(args).stdout, "{args:?}");
    }
}

#[test]
fn config_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("nf.jsonl");
    let cfg = dir.path().join("config.json");
    std::fs::write(&cfg, serde_json::json!({"cache_path": cache, "output": "text"}).to_string()).unwrap();
    let cfg = cfg.to_str().unwrap();
    let first = sl2share(&["--config", cfg, "eval-share", "1 2 3 | 3 2 1"]);
    assert!(first.status.success());
    let text = std::fs::read_to_string(&cache).unwrap();
    assert!(text.starts_with(r#"{"format":"sl2share-nf-v1"}"#));
    assert!(text.lines().count() > 1);
    let second = sl2share(&["--config", cfg, "eval-share", "1 2 3 | 3 2 1"]);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(stdout(&second).trim(), "x^3 + 4x^2 + 2x + (-c^2)");

    std::fs::write(&cache, "{\"format\":\"old\"}\n").unwrap();
    assert_eq!(sl2share(&["--config", cfg, "eval-cd", "1 1"]).status.code(), Some(2));
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"max_vertices": 0}"#).unwrap();
    assert_eq!(sl2share(&["--config", bad.to_str().unwrap(), "eval-cd", "1 1"]).status.code(), Some(2));
}

#[test]
fn sweep_passes() {
    let out = sl2share(&["sweep", "--format", "text"]);
    let text = stdout(&out);
    assert!(out.status.success(), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 13);
}
