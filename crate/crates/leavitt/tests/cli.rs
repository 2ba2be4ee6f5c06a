use std::path::PathBuf;
use std::process::Command;

use leavitt::cli::run;
use leavitt::format::parse_graph;
use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.display().to_string()
}

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("leavitt").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn invoke_json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out, err) = invoke(&full);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn twisted_group_of_the_rose() {
    let v = invoke_json(&["bf-twisted", &data("r2.graph")]);
    assert_eq!(v["factors"], serde_json::json!(["3"]));
    assert_eq!(v["rank"], 0);
    let v = invoke_json(&["bf-twisted", &data("r2minus.graph")]);
    assert_eq!(v["factors"], serde_json::json!(["7"]));
}

#[test]
fn obstruction_both_ways() {
    let v = invoke_json(&["obstruct", &data("r2.graph"), &data("r2minus.graph")]);
    assert_eq!(v["possible"], false);
    let v = invoke_json(&["obstruct", &data("r2minus.graph"), &data("r2.graph")]);
    assert_eq!(v["possible"], false);
    let v = invoke_json(&["obstruct", &data("r2.graph"), &data("r2.graph")]);
    assert_eq!(v["possible"], true);
}

#[test]
fn dual_of_the_rose_is_itself() {
    let (code, out, _) = invoke(&["moves", "--op", "dual", &data("r2.graph")]);
    assert_eq!(code, 0);
    let original = std::fs::read_to_string(data("r2.graph")).unwrap();
    assert_eq!(format!("{}\n", out.trim_end()), original);
}

#[test]
fn moves_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let input = data("upsilon.graph");
    for (op, json) in [("splice", false), ("outsplit", true), ("cover", false), ("square", true)] {
        let path = dir.path().join(format!("{op}.out"));
        let p = path.display().to_string();
        let mut args = vec!["moves", "--op", op, "--vertex", "v1", "-o", &p, &input];
        if json {
            args.insert(0, "--json");
        }
        let (code, _, err) = invoke(&args);
        assert_eq!(code, 0, "{op}: {err}");
        let written = std::fs::read_to_string(&path).unwrap();
        let g = parse_graph(&written).unwrap();
        let again = if json { leavitt::format::write_graph_json(&g) } else { leavitt::format::write_graph_text(&g) };
        assert_eq!(again, written, "{op}");
    }
}

#[test]
fn invariant_report_is_stable() {
    let a = invoke(&["--json", "info", &data("remark.graph")]).1;
    let b = invoke(&["--json", "info", &data("remark.graph")]).1;
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["graph_id"], "remark");
    assert_eq!(v["dets"]["det_i_plus_a"], "1");
    assert_eq!(v["dets"]["det_i_minus_a"], "-3");
    assert_eq!(v["dets"]["criterion_holds"], true);
    let v = invoke_json(&["info", &data("upsilon.graph")]);
    assert_eq!(v["dets"]["det_bf_twisted"]["text"], "-s");
    assert_eq!(v["flags"]["jh_vanishes"]["zsigma"]["twisted"], true);
}

#[test]
fn lifting_certificates_are_verified() {
    let v = invoke_json(&["lift", &data("r4.graph"), &data("remark.graph")]);
    assert_eq!(v["exists"], true);
    assert_eq!(v["certificate"]["verified"], true);
    assert_eq!(v["certificate"]["f0"]["row_labels"], serde_json::json!(["v1", "v2"]));
    let v = invoke_json(&["lift", &data("r2.graph"), &data("r3.graph")]);
    assert_eq!(v["exists"], false);
    let v = invoke_json(&["lift", "--twisted", &data("r2.graph"), &data("r2minus.graph")]);
    assert_eq!(v["exists"], false);
}

#[test]
fn classification_report() {
    let v = invoke_json(&["classify", &data("r4.graph"), &data("remark.graph"), "--regular-supercoherent", "--two-invertible"]);
    assert_eq!(v["pis_e"]["purely_infinite_simple"], true);
    assert_eq!(v["unital_iso"]["status"], "found");
    assert_eq!(v["certificate"]["verified"], true);
    let applies: Vec<bool> =
        v["applicable_theorems"].as_array().unwrap().iter().map(|t| t["holds_under_flags"].as_bool().unwrap()).collect();
    assert_eq!(applies, vec![true, false, true]);
    let v = invoke_json(&["classify", &data("r2.graph"), &data("r3.graph")]);
    assert!(v["bf_iso"].is_null());
}

#[test]
fn sequences() {
    let v = invoke_json(&["kh", &data("r4.graph"), "--degree", "0"]);
    assert_eq!(v["middle"]["factors"], serde_json::json!(["3", "3"]));
    let v = invoke_json(&["kh", "--twisted", &data("upsilon.graph"), "--degree", "0"]);
    assert_eq!(v["middle"]["rank"], 0);
    assert_eq!(v["middle"]["factors"], serde_json::json!([]));
    // The field preset has no degree 1.
    let (code, _, err) = invoke(&["uct", &data("r2.graph")]);
    assert_eq!(code, 2, "{err}");

    let dir = tempfile::tempdir().unwrap();
    let coeff = dir.path().join("z.json");
    std::fs::write(&coeff, r#"{"0": {"generators": 1, "sigma": [[1]]}, "1": {"generators": 1, "sigma": [[1]]}}"#).unwrap();
    let v = invoke_json(&["uct", &data("r4.graph"), "--coeff-file", coeff.to_str().unwrap()]);
    assert_eq!(v["middle"]["factors"], serde_json::json!(["3"]));
}

#[test]
fn terms() {
    let (code, out, _) = invoke(&["term", &data("r2.graph"), "e1 e1* + e2 e2*"]);
    assert_eq!((code, out.trim()), (0, "v"));
    let (_, out, _) = invoke(&["term", "--cohn", &data("r2.graph"), "e1* e2"]);
    assert_eq!(out.trim(), "0");
    let v = invoke_json(&["term", "--op", "bar", &data("r2.graph"), "e1"]);
    assert_eq!(v["term"], "-e1*");
    assert_eq!(v["grade"], -1);
    let v = invoke_json(&["term", &data("r2.graph"), "e1 + e1*"]);
    assert!(v["grade"].is_null());
    assert_eq!(v["parity"], 1);
    let v = invoke_json(&["term", "--minus-one", &data("r2.graph")]);
    assert_eq!(v["minus_one_identity"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(invoke(&["term", "--minus-one", &data("sink.graph")]).0, 2);
    assert_eq!(invoke(&["moves", "--op", "elim", "--vertex", "v", &data("r2.graph")]).0, 2);
    assert_eq!(invoke(&["moves", "--op", "splice", "--vertex", "nope", &data("r2.graph")]).0, 2);
    assert_eq!(invoke(&["term", &data("r2.graph"), "e1 +"]).0, 1);
    assert_eq!(invoke(&["term", &data("r2.graph"), "x"]).0, 1);
    assert_eq!(invoke(&["frobnicate"]).0, 1);
    assert_eq!(invoke(&["bf", "/nonexistent/file.graph"]).0, 2);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.graph");
    std::fs::write(&bad, "vertex v\nedge e v w\n").unwrap();
    let (code, _, err) = invoke(&["bf", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("unknown"), "{err}");
}

#[test]
fn selftest_is_seeded() {
    let a = invoke(&["selftest", "--seed", "11", "--count", "5"]);
    let b = invoke(&["selftest", "--seed", "11", "--count", "5"]);
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_leavitt");
    let ok = Command::new(bin).args(["bf", &data("r4.graph")]).output().unwrap();
    assert!(ok.status.success());
    assert!(String::from_utf8_lossy(&ok.stdout).contains("Z/3"));
    let pre = Command::new(bin).args(["term", "--minus-one", &data("sink.graph")]).output().unwrap();
    assert_eq!(pre.status.code(), Some(2));
}
