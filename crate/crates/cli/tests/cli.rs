//! Golden tests for the command-line interface: exit codes, JSON shapes,
//! and byte determinism.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hkcover"))
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn hkcover")
}

fn json_of(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).expect("stdout is one JSON document")
}

#[test]
fn validate_good_arrangement() {
    let out = run(&["validate", &fixture("f2_k5.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["report"]["passed"], true);
}

#[test]
fn validate_bad_r1_names_the_rule_and_exits_1() {
    let out = run(&["validate", &fixture("bad_r1.json")]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json_of(&out);
    assert_eq!(doc["passed"], false);
    let r1 = doc["report"]["findings"]
        .as_array()
        .unwrap()
        .iter()
        .find(|f| f["rule"] == "R1")
        .expect("R1 finding present");
    assert_eq!(r1["passed"], false);
}

#[test]
fn invariants_f2_k5_values() {
    let out = run(&["invariants", &fixture("f2_k5.json"), "--exponent", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["invariants"]["scaled_c2"], 36);
    assert_eq!(doc["invariants"]["scaled_c1sq"], 12);
    assert_eq!(doc["invariants"]["total_c2"], 144);
    assert_eq!(doc["invariants"]["total_c1sq"], 48);
    assert_eq!(doc["invariants"]["bmy_gap_scaled"], 96);
    assert_eq!(doc["bmy_applicability"]["applicable"], true);
}

#[test]
fn invariants_on_bad_input_exits_1_with_report() {
    let out = run(&["invariants", &fixture("bad_r1.json"), "--exponent", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json_of(&out);
    assert!(doc["report"]["findings"].is_array());
}

#[test]
fn hpoly_f2_k5_coefficients() {
    let out = run(&["hpoly", &fixture("f2_k5.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["hpoly"]["c2"], 54);
    assert_eq!(doc["hpoly"]["c1"], -70);
    assert_eq!(doc["hpoly"]["c0"], 20);
}

#[test]
fn filter_plane_fixture() {
    let out = run(&["filter", &fixture("plane_d3_k11.json"), "--exponent", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["pass"], true);

    let out = run(&["filter", &fixture("plane_d3_k11.json"), "--exponent", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["pass"], false);
    assert_eq!(doc["offending_multiplicities"], serde_json::json!([6]));
}

#[test]
fn certify_symbolic_hirzebruch_n2() {
    let out = run(&["certify", "--family", "hirzebruch", "--exponent", "2", "--symbolic"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["valid"], true);
    assert_eq!(doc["conclusion"]["relation"], "-8 = (e+1)k");
    assert_eq!(doc["id"], "hirzebruch-n2");
}

#[test]
fn certify_fixed_instance_and_bad_exponent() {
    let out = run(&["certify", "--family", "plane", "--exponent", "5", "--d", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["id"], "plane-d4-n5");

    let out = run(&["certify", "--family", "plane", "--exponent", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn nccover_abelian_fixture() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/abelian_l1.json");
    let out = run(&["nccover", path.to_str().unwrap(), "--exponent", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["e"], 39);
    assert_eq!(doc["c1sq"], 117);
    assert_eq!(doc["bmy_gap"], 0);
    assert_eq!(doc["ball_quotient_necessary"], true);
}

#[test]
fn search_scan_valid_and_deterministic_across_workers() {
    let spec = fixture("scan_hirzebruch.json");
    let a = run(&["search", &spec, "--workers", "1"]);
    let b = run(&["search", &spec, "--workers", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "reports must be byte-identical across worker counts");
    let doc = json_of(&a);
    assert_eq!(doc["valid"], true);
    assert_eq!(doc["hits"], serde_json::json!([]));
    assert!(doc["certificates"].as_array().unwrap().iter().all(|c| c["valid"] == true));
}

#[test]
fn search_csv_one_row_per_cell() {
    let out = run(&["search", &fixture("scan_hirzebruch.json"), "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "family,params,k,n,candidates,hits,complete");
    // 2 surfaces x 6 values of k x 3 exponents.
    assert_eq!(lines.len(), 1 + 2 * 6 * 3);
}

#[test]
fn search_gap_minimum_f2_k5() {
    let out = run(&["search", &fixture("gap_f2_k5.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["rows"][0]["min_h"], 96);
    assert_eq!(doc["rows"][0]["witness"]["t"]["2"], 40);
}

#[test]
fn search_cap_env_override() {
    let out = bin()
        .args(["search", &fixture("scan_hirzebruch.json")])
        .env("HK_CAP_SUM", "10")
        .output()
        .unwrap();
    // Every cell's target exceeds the tiny cap, so nothing completes and
    // the scan cannot claim validity.
    assert_eq!(out.status.code(), Some(1));
    let doc = json_of(&out);
    assert_eq!(doc["complete"], false);
    assert_eq!(doc["valid"], false);
}

#[test]
fn lemma_f0_grid() {
    let out = run(&["lemma-f0", "--e-max", "4", "--k-max", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["valid"], true);
    assert_eq!(doc["gian_side_condition"], true);
    assert_eq!(doc["cells"].as_array().unwrap().len(), 15);
}

#[test]
fn permissive_strictness_downgrades_minimum_k() {
    // k = 4 on the plane family fails the k >= 5 rule in strict mode only.
    let dir = std::env::temp_dir().join("hkcover-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("plane_k4.json");
    std::fs::write(
        &path,
        r#"{"surface": {"type": "nef_canonical", "euler": 4, "ksq": 2, "a": 1, "b": 0}, "k": 4, "t": {"2": 6}}"#,
    )
    .unwrap();
    let strict = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(strict.status.code(), Some(1));
    let permissive = run(&["validate", path.to_str().unwrap(), "--strictness", "permissive"]);
    assert_eq!(permissive.status.code(), Some(0));
}

#[test]
fn usage_and_io_errors_exit_2() {
    let out = run(&["validate"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["validate", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty(), "diagnostics must not pollute stdout");
    assert!(!out.stderr.is_empty());

    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec!["invariants", &fixture("plane_d3_k11.json"), "--exponent", "2"],
        vec!["certify", "--family", "nef", "--exponent", "3", "--symbolic"],
        vec!["lemma-f0", "--e-max", "3", "--k-max", "7"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}
