use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn naimark(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_naimark"))
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
    let o = naimark(&all);
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

fn graph_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".json").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn exported(fixture: &str) -> tempfile::NamedTempFile {
    let o = naimark(&["export-json", "--fixture", fixture]);
    assert!(o.status.success());
    graph_file(&stdout(&o))
}

#[test]
fn naimark_on_files() {
    let line = exported("LINE3");
    let o = naimark(&["naimark", line.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("naimark: holds"));
    assert!(stdout(&o).contains("|Λ| = 3"));

    let fork = exported("FORK");
    let o = naimark(&["naimark", fork.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("naimark: fails"));
    assert!(stdout(&o).contains("census size: 2"));
}

#[test]
fn naimark_json_fields() {
    let v = json(&["naimark", "--fixture", "LINE3"]);
    assert_eq!(v["holds"], true);
    assert_eq!(v["lambda_size"], 3);
    assert_eq!(v["dimension"], 9);
    assert_eq!(v["line_point"], "u");
}

#[test]
fn compseries_refuses_cycles() {
    let f = exported("LOOP1");
    let o = naimark(&["compseries", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("unsupported: graph has a cycle"), "{err}");
}

#[test]
fn analyze_reports() {
    let v = json(&["analyze", "--fixture", "LINE3"]);
    assert_eq!(v["sinks"], serde_json::json!(["w"]));
    assert_eq!(v["line_points"], serde_json::json!(["u", "v", "w"]));
    let v = json(&["analyze", "--fixture", "ROSE2"]);
    assert_eq!(v["simple_cycles"].as_array().unwrap().len(), 2);
}

#[test]
fn schema_errors_exit_with_two() {
    let f = graph_file(r#"{"vertices": [], "edges": []}"#);
    let o = naimark(&["analyze", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr)
        .unwrap()
        .contains("at least one vertex"));

    let f = graph_file("{\n  \"vertices\": [\"u\"\n");
    let o = naimark(&["analyze", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("line "));

    let o = naimark(&["analyze", "--fixture", "NOPE"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_output_is_stable() {
    for cmd in ["analyze", "naimark", "classes", "ideals"] {
        for fixture in ["OMEGA2", "ENTRY4", "ROSE2"] {
            let a = naimark(&["--json", cmd, "--fixture", fixture]);
            let b = naimark(&["--json", cmd, "--fixture", fixture]);
            assert_eq!(a.stdout, b.stdout, "{cmd} {fixture}");
        }
    }
}

#[test]
fn export_round_trips() {
    for fixture in [
        "PT", "LINE3", "ENTRY4", "FORK", "LOOP1", "ROSE2", "OMEGA", "OMEGA2",
    ] {
        let first = exported(fixture);
        let again = naimark(&["export-json", first.path().to_str().unwrap()]);
        assert_eq!(
            stdout(&again),
            std::fs::read_to_string(first.path()).unwrap(),
            "{fixture}"
        );
    }
}

#[test]
fn dot_labels() {
    let o = naimark(&["export-dot", "--fixture", "OMEGA2"]);
    let text = stdout(&o);
    assert!(text.contains("label=\"e×ω\""));
    assert!(text.contains("label=\"g×1\""));
}

#[test]
fn other_commands() {
    let v = json(&["classes", "--fixture", "LOOP1"]);
    assert_eq!(v["cardinality"], "1");
    assert_eq!(v["case"], "CaseIII");
    let v = json(&["compseries", "--fixture", "FORK"]);
    assert_eq!(v["factors"].as_array().unwrap().len(), 2);
    let v = json(&["rep", "--fixture", "LINE3"]);
    assert_eq!(v["basis"], serde_json::json!(["w", "f", "e,f"]));
    assert_eq!(v["hom_dimensions"], serde_json::json!([[1]]));
    let v = json(&["sweep", "--seed", "7", "--samples", "200"]);
    assert_eq!(v["graphs"], 200);
    assert_eq!(v["discrepancies"].as_array().unwrap().len(), 0);
}
