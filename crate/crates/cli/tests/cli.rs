use std::path::Path;

use b3rep_cli::{run, Outcome, EXIT_ERROR, EXIT_NEGATIVE, EXIT_OK};
use serde_json::Value;

fn b3rep(args: &[&str]) -> Outcome {
    run(std::iter::once("b3rep").chain(args.iter().copied()))
}

fn report(o: &Outcome) -> Value {
    serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("{e}: {o:?}"))
}

fn error_code(o: &Outcome) -> String {
    let v: Value = serde_json::from_str(&o.stderr).unwrap_or_else(|e| panic!("{e}: {o:?}"));
    v["error"]["code"].as_str().unwrap().to_string()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn construct_then_classify_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let doc = dir.path().join("d21.json");
    let o = b3rep(&["construct", "--family", "D2_1", "--lambda1", "1", "--output", path_str(&doc)]);
    assert_eq!(o.status, EXIT_OK, "{o:?}");
    let o = b3rep(&["classify", path_str(&doc)]);
    assert_eq!(o.status, EXIT_OK, "{o:?}");
    let r = report(&o);
    assert_eq!(r["classification"], "strictly_indecomposable");
    assert_eq!(r["family"]["id"], "D2_1");
}

#[test]
fn construct_to_stdout_is_a_document() {
    let o = b3rep(&["construct", "--family", "W1_4_1", "--lambda2", "3", "--beta", "-3"]);
    assert_eq!(o.status, EXIT_OK, "{o:?}");
    let doc = b3rep::document::parse_document(&o.stdout).unwrap();
    assert_eq!(doc.matrix("A").unwrap().rows(), 3);
    assert_eq!(doc.metadata["family"], "W1_4_1");
}

#[test]
fn derive_relations_case_1_1() {
    let o = b3rep(&["derive-relations", "--case", "1.1"]);
    assert_eq!(o.status, EXIT_OK, "{o:?}");
    let r = report(&o);
    assert_eq!(r["members"], "4/4");
    assert_eq!(r["stages"][0]["buchberger_criterion"], true);
}

#[test]
fn derive_relations_reports_printed_typo_as_negative() {
    let o = b3rep(&["derive-relations", "--case", "3.3"]);
    assert_eq!(o.status, EXIT_NEGATIVE, "{o:?}");
    let r = report(&o);
    assert_eq!(r["all_listed_members"], false);
    assert_eq!(r["all_resolved"], true);
}

#[test]
fn verify_rejects_non_braid_pair_with_defect() {
    let dir = tempfile::tempdir().unwrap();
    let doc = dir.path().join("bad.json");
    std::fs::write(&doc, r#"{"conductor": 24, "matrices": {"A": [["1","1"],["0","1"]], "B": [["1","0"],["1","1"]]}}"#)
        .unwrap();
    let o = b3rep(&["verify", path_str(&doc)]);
    assert_eq!(o.status, EXIT_NEGATIVE, "{o:?}");
    let r = report(&o);
    assert_eq!(r["braid"]["braid_relation"], false);
    assert!(r["braid"]["braid_defect"].is_array());

    let o = b3rep(&["classify", path_str(&doc)]);
    assert_eq!(o.status, EXIT_NEGATIVE);
}

#[test]
fn verify_accepts_braid_pair() {
    let dir = tempfile::tempdir().unwrap();
    let doc = dir.path().join("good.json");
    std::fs::write(&doc, r#"{"matrices": {"A": [["1","1"],["0","1"]], "B": [["1","0"],["-1","1"]]}}"#).unwrap();
    let o = b3rep(&["verify", path_str(&doc), "--format", "text"]);
    assert_eq!(o.status, EXIT_OK, "{o:?}");
    assert!(o.stdout.contains("braid_relation: true"));
}

#[test]
fn equiv_finds_witness_and_inequivalence() {
    let dir = tempfile::tempdir().unwrap();
    let p = |n: &str| dir.path().join(n);
    let run_construct = |args: &[&str], out: &Path| {
        let mut v = vec!["construct"];
        v.extend_from_slice(args);
        v.extend_from_slice(&["--output", path_str(out)]);
        assert_eq!(b3rep(&v).status, EXIT_OK);
    };
    run_construct(&["--family", "W2_1", "--lambda2", "1", "--lambda3", "2"], &p("w21.json"));
    run_construct(&["--family", "W2_1", "--lambda2", "1", "--lambda3", "2", "--alternate"], &p("w21alt.json"));
    run_construct(&["--family", "W1_4_1", "--lambda2", "3", "--beta", "0"], &p("b0.json"));
    run_construct(&["--family", "W1_4_1", "--lambda2", "3", "--beta", "1"], &p("b1.json"));

    let o = b3rep(&["equiv", path_str(&p("w21.json")), path_str(&p("w21alt.json"))]);
    assert_eq!(o.status, EXIT_OK, "{o:?}");
    assert_eq!(report(&o)["equivalent"], true);

    let o = b3rep(&["equiv", path_str(&p("b0.json")), path_str(&p("b1.json"))]);
    assert_eq!(o.status, EXIT_NEGATIVE, "{o:?}");
    assert_eq!(report(&o)["result"], "inequivalent");
}

#[test]
fn decompose_direct_sum() {
    let dir = tempfile::tempdir().unwrap();
    let doc = dir.path().join("sum.json");
    std::fs::write(&doc, r#"{"matrices": {"A": [["1","0"],["0","2"]], "B": [["1","0"],["0","2"]]}}"#).unwrap();
    let o = b3rep(&["decompose", path_str(&doc)]);
    assert_eq!(o.status, EXIT_OK, "{o:?}");
    let r = report(&o);
    assert_eq!(r["dims"], serde_json::json!([1, 1]));
    assert_eq!(r["verified"], true);
}

#[test]
fn yangbaxter_demo_generic() {
    let o = b3rep(&["yangbaxter-demo", "--kind", "R2", "--a", "1", "--b", "2"]);
    assert_eq!(o.status, EXIT_OK, "{o:?}");
    let r = report(&o);
    assert_eq!(r["regime"], "generic");
    assert_eq!(r["summand_dims"], serde_json::json!([1, 1, 1, 1, 2, 2]));
    assert_eq!(r["ybe_defect_zero"], true);
}

#[test]
fn errors_have_stable_codes() {
    let o = b3rep(&["construct", "--family", "W9", "--lambda1", "1"]);
    assert_eq!(o.status, EXIT_ERROR);
    assert_eq!(error_code(&o), "unknown_family");

    let o = b3rep(&["derive-relations", "--case", "4.1"]);
    assert_eq!(error_code(&o), "unknown_case");

    let dir = tempfile::tempdir().unwrap();
    let doc = dir.path().join("bad.json");
    std::fs::write(&doc, "{\"matrices\": {\"A\": [[\"1/0\"]]}}").unwrap();
    let o = b3rep(&["classify", path_str(&doc)]);
    assert_eq!(o.status, EXIT_ERROR);
    assert_eq!(error_code(&o), "parse_error");

    let o = b3rep(&["derive-relations", "--case", "1.1", "--step-budget", "10"]);
    assert_eq!(error_code(&o), "step_budget_exceeded");

    let o = b3rep(&["frobnicate"]);
    assert_eq!(o.status, EXIT_ERROR);
}

#[test]
fn conductor_flag_embeds_documents() {
    let dir = tempfile::tempdir().unwrap();
    let doc = dir.path().join("d.json");
    let o = b3rep(&["construct", "--conductor", "6", "--family", "D2_1", "--lambda1", "1", "--output", path_str(&doc)]);
    assert_eq!(o.status, EXIT_OK, "{o:?}");
    let o = b3rep(&["classify", "--conductor", "12", path_str(&doc)]);
    assert_eq!(o.status, EXIT_OK, "{o:?}");
    assert_eq!(report(&o)["family"]["params"]["lambda1"]["conductor"], 12);
    let o = b3rep(&["classify", "--conductor", "8", path_str(&doc)]);
    assert_eq!(o.status, EXIT_ERROR);
}
