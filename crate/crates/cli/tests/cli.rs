//! End-to-end tests of the `cubic-lines` binary.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubic-lines")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn emit(dir: &Path, name: &str) -> String {
    let path = dir.join(format!("{name}.json")).display().to_string();
    let o = run(&["example", name, "--emit", &path]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

fn rows(v: &serde_json::Value) -> Vec<(u64, u64, u64)> {
    v["result"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["n2"].as_u64().unwrap(), r["n3"].as_u64().unwrap(), r["t5"].as_u64().unwrap()))
        .collect()
}

#[test]
fn enumerate_tables() {
    let v = json(&["enumerate", "--cubics", "1", "--lines", "2", "--json"]);
    assert_eq!(rows(&v).len(), 6);
    let v = json(&["enumerate", "--cubics", "2", "--lines", "3", "--free-only", "--json"]);
    let mut r = rows(&v);
    r.sort();
    assert_eq!(r, vec![(0, 2, 8), (3, 0, 9)]);
    let v = json(&["enumerate", "--cubics", "1", "--lines", "6", "--free-only", "--hirzebruch-filter", "--json"]);
    let mut r = rows(&v);
    r.sort();
    assert_eq!(r, vec![(0, 7, 4), (3, 5, 5)]);
    assert!(stdout(&run(&["enumerate", "--cubics", "1", "--lines", "2"])).contains("6 row(s)"));
}

#[test]
fn degree_windows() {
    let o = run(&["window", "--degree", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("cannot be free"));
    let admissible = |m: &str| json(&["window", "--degree", m, "--json"])["result"]["window"]["admissible"].clone();
    assert_eq!(admissible("8"), serde_json::json!([]));
    assert_eq!(admissible("9"), serde_json::json!([4]));
    assert_eq!(admissible("6"), serde_json::json!([2]));
}

#[test]
fn examples_print_and_round_trip() {
    let o = run(&["example", "CPPP"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("10 component(s)") && stdout(&o).contains("product degree 12"), "{}", stdout(&o));
    assert!(stdout(&run(&["example", "fermat"])).contains("x^3 + y^3 + z^3"));

    let dir = tempfile::tempdir().unwrap();
    for name in ["EL6", "EL7", "CPPP", "FERMAT"] {
        let path = emit(dir.path(), name);
        let text = std::fs::read_to_string(&path).unwrap();
        let file = cubic_lines_cli::ArrangementFile::from_json(&text).unwrap();
        let arr = file.parse().unwrap().arrangement.unwrap();
        assert_eq!(cubic_lines_cli::ArrangementFile::from_arrangement(&arr).to_json(), text, "{name}");
        // Emitting twice gives the same bytes.
        let again = emit(dir.path(), name);
        assert_eq!(std::fs::read_to_string(again).unwrap(), text);
    }
}

#[test]
fn analyze_emitted_examples() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&["analyze", &emit(dir.path(), "EL7"), "--json"]);
    let f = &v["result"]["freeness"];
    assert_eq!(f["verdict"], "Free");
    assert_eq!(f["exponents"], serde_json::json!([3, 3]));
    assert_eq!(f["tau_algebraic"], 27);
    assert_eq!(v["result"]["census"]["tau_combinatorial"], 27);
    assert_eq!(v["provenance"]["seed"], 0);

    let v = json(&["analyze", &emit(dir.path(), "EL6"), "--json"]);
    assert_eq!(v["result"]["freeness"]["verdict"], "Free");
    assert_eq!(v["result"]["freeness"]["exponents"], serde_json::json!([2, 3]));
    assert_eq!(v["result"]["freeness"]["tau_algebraic"], 19);

    let o = run(&["analyze", &emit(dir.path(), "FERMAT")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("smooth curve"), "{}", stdout(&o));
}

#[test]
fn analyze_cppp_degree_window() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&["analyze", &emit(dir.path(), "CPPP"), "--json"]);
    assert_eq!(v["result"]["freeness"]["verdict"], "NotFreeByDegreeWindow");
    assert_eq!(v["result"]["freeness"]["m"], 12);
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = emit(dir.path(), "EL6");
    for args in [
        vec!["analyze", path.as_str(), "--json", "--seed", "7", "--tol", "1e-8"],
        vec!["enumerate", "--cubics", "1", "--lines", "6", "--json"],
        vec!["reproduce-paper", "--only", "window", "--json"],
    ] {
        let (a, b) = (run(&args), run(&args));
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let v = json(&["analyze", &path, "--json", "--seed", "7", "--tol", "1e-8"]);
    assert_eq!(v["provenance"]["seed"], 7);
    assert_eq!(v["provenance"]["tol"], 1e-8);
}

#[test]
fn reproduce_only_one_group() {
    let v = json(&["reproduce-paper", "--only", "degree9", "--json"]);
    let groups = v["result"]["groups"].as_array().unwrap();
    assert_eq!(groups.len(), 1);
    assert_eq!(groups[0]["group"], "degree9");
    assert_eq!(v["result"]["passed"], true);
    let o = run(&["reproduce-paper", "--only", "window"]);
    assert!(stdout(&o).starts_with("PASS window"), "{}", stdout(&o));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.display().to_string()
    };
    let code = |args: &[&str]| run(args).status.code();

    // Parse errors: bad JSON, missing file, invalid terms, bad arguments.
    assert_eq!(code(&["analyze", &write("bad.json", "{ not json")]), Some(2));
    assert_eq!(code(&["analyze", &dir.path().join("missing.json").display().to_string()]), Some(2));
    assert_eq!(code(&["analyze", &write("deg.json", r#"{"components": [{"kind": "line", "exact": [[1, 1, 2, 0, 0]]}]}"#)]), Some(2));
    assert_eq!(code(&["example", "NOPE"]), Some(2));
    assert_eq!(code(&["enumerate", "--cubics", "0", "--lines", "2"]), Some(2));
    assert_eq!(code(&["window", "--degree", "2"]), Some(2));
    assert_eq!(code(&["reproduce-paper", "--only", "nowhere"]), Some(2));
    assert_eq!(code(&["analyze", "a.json", "--tol", "-1"]), Some(2));

    // x = 0 is tangent to the smooth cubic y^2 z = x^3 - x z^2 at the
    // non-flex point (0 : 0 : 1): contact order 2, an A3 point outside the
    // supported types.
    let a3 = r#"{"metadata": "tangent",
        "components": [
          {"kind": "cubic", "exact": [[1, 1, 0, 2, 1], [-1, 1, 3, 0, 0], [1, 1, 1, 0, 2]]},
          {"kind": "line", "exact": [[1, 1, 1, 0, 0]]}
        ]}"#;
    assert_eq!(code(&["analyze", &write("a3.json", a3)]), Some(3));

    // A cuspidal cubic component: the analysis does not apply.
    let singular = r#"{"components": [{"kind": "cubic", "exact": [[1, 1, 0, 2, 1], [-1, 1, 3, 0, 0]]}]}"#;
    assert_eq!(code(&["analyze", &write("cusp.json", singular)]), Some(5));

    assert_eq!(code(&["window", "--degree", "8"]), Some(0));
}
