use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn strata(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strata"))
        .args(args)
        .env_remove("STRATA_NMAX")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = vec!["--json"];
    a.extend_from_slice(args);
    let out = strata(&a);
    let v =
        serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../strata/corpus")
}

#[test]
fn describe_sl2_block() {
    let (code, v) = json(&["describe", "sl2_block"]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["dim"], 5);
    // P1 = <e1, α, βα>, P2 = <e2, β>
    assert_eq!(r["cartan"], serde_json::json!([[2, 1], [1, 1]]));
    assert_eq!(r["projective_dims"], serde_json::json!([3, 2]));
}

#[test]
fn describe_semisimple_and_diamond() {
    let (_, v) = json(&["describe", "semisimple_pair"]);
    assert_eq!(v["result"]["cartan"], serde_json::json!([[1, 0], [0, 1]]));
    let (_, v) = json(&["describe", "diamond"]);
    assert_eq!(v["result"]["dim"], 9);
}

#[test]
fn report_carries_settings() {
    let (_, v) = json(&["describe", "sl2_block"]);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["settings"]["n_max"], 5);
    assert!(v["settings"]["iso_seed"].is_u64());
    assert_eq!(v["command"][1], "--json");
    let out = Command::new(env!("CARGO_BIN_EXE_strata"))
        .args(["--json", "describe", "sl2_block"])
        .env("STRATA_NMAX", "3")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["settings"]["n_max"], 3);
}

#[test]
fn output_is_deterministic() {
    let a = strata(&["--json", "idempotent", "two_sources", "--e", "1"]);
    let b = strata(&["--json", "idempotent", "two_sources", "--e", "1"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn check_verdicts() {
    let (code, v) = json(&["check", "sl2_block"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["quasi_hereditary"], "yes");

    let (code, v) = json(&["check", "rad_square_zero", "--all-orders"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["stratifying_orders"], 0);
    assert_eq!(v["result"]["all_orders"].as_array().unwrap().len(), 3);
}

#[test]
fn idempotent_conditions() {
    let (code, v) = json(&["idempotent", "two_sources", "--e", "1"]);
    assert_eq!(code, 0);
    let c = &v["result"]["conditions"];
    assert_eq!(c["4_quotient_delta_filtered"], "yes");
    assert_eq!(c["5_dual_quotient_proper_costandard_filtered"], "no");

    let (_, v) = json(&["idempotent", "sl2_block", "--e", "1"]);
    let c = &v["result"]["conditions"];
    assert_eq!(c["6_quotient_and_corner_stratified"], "yes");
    assert_eq!(c["4_quotient_delta_filtered"], "no");
    assert_eq!(c["5_dual_quotient_proper_costandard_filtered"], "no");

    let (code, v) = json(&["idempotent", "diamond", "--e", "1,2,3,4"]);
    assert_eq!(code, 0);
    for (_, x) in v["result"]["conditions"].as_object().unwrap() {
        assert_eq!(x, "yes");
    }
}

#[test]
fn corner_and_quotient_export_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corner.json");
    let (code, v) = json(&["corner", "auslander", "--e", "1,2", "--export", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["dim"], 9);
    assert_eq!(v["result"]["quasi_hereditary"], "no");
    let (code, w) = json(&["describe", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(w["result"]["dim"], 9);

    let (_, v) = json(&["quotient", "auslander", "--e", "1,2"]);
    assert_eq!(v["result"]["dim"], 1);
    assert_eq!(v["result"]["labels"], serde_json::json!(["3"]));
}

#[test]
fn borel_commands() {
    let (code, v) = json(&[
        "borel",
        "dual_extension",
        "--subalgebra",
        "borel",
        "--idempotent",
        "2,3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["dim"], 7);
    assert_eq!(v["result"]["inherited"]["passes"], true);

    let (code, v) = json(&["borel", "morita_pattern", "--subalgebra", "borel", "--idempotent", "1"]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("coideal"));

    let (code, v) = json(&[
        "borel",
        "morita_pattern",
        "--subalgebra",
        "borel",
        "--idempotent",
        "1",
        "--diagnostic",
    ]);
    assert_eq!(code, 1);
    let inh = &v["result"]["inherited"];
    assert_eq!(inh["quotient_dims"]["subalgebra"], 4);
    assert_eq!(inh["quotient_dims"]["ambient"], 2);
    assert_eq!(inh["quotient_map_injective"], false);
}

#[test]
fn vmatrix_and_ell() {
    let (code, v) = json(&["vmatrix", "--type", "A1xA1"]);
    assert_eq!(code, 0);
    assert_eq!(
        v["result"]["v"]["rows"],
        serde_json::json!([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [2, 0, 0, 1]])
    );
    let (_, v) = json(&["ell", "sl2_tensor_square"]);
    let ell: Vec<i64> = v["result"]["ell"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["value"].as_i64().unwrap())
        .collect();
    assert_eq!(ell, vec![1, 1, 1, 3]);
    let (code, v) = json(&["ell", "--type", "A2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["max_height"], 3);
    assert_eq!(v["result"]["reference_formula"]["max"], 9);
    let (code, _) = json(&["vmatrix", "--type", "G2"]);
    assert_eq!(code, 2);
}

#[test]
fn user_tables_for_rank_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a1.json");
    std::fs::write(
        &path,
        r#"{"labels": ["e", "s"], "poset": [["e", "s"]], "costd_comp": [[1, 0], [1, 1]], "hom_std": [[1, 1], [0, 1]], "std_comp": [[1, 0], [1, 1]]}"#,
    )
    .unwrap();
    let (code, v) = json(&["vmatrix", "--tables", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["v"]["rows"], serde_json::json!([[1, 0], [0, 1]]));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"field\": \"Q\",\n  oops\n}").unwrap();
    let out = strata(&["describe", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let unknown = dir.path().join("unknown.json");
    let mut v: Value =
        serde_json::from_str(&std::fs::read_to_string(corpus_dir().join("sl2_block.json")).unwrap()).unwrap();
    v["colour"] = Value::from("red");
    std::fs::write(&unknown, v.to_string()).unwrap();
    assert_eq!(strata(&["describe", unknown.to_str().unwrap()]).status.code(), Some(2));

    assert_eq!(strata(&["describe", "no_such_algebra"]).status.code(), Some(2));
    assert_eq!(strata(&["idempotent", "sl2_block", "--e", "7"]).status.code(), Some(2));
}

#[test]
fn verify_filter_by_claim_id() {
    let (code, v) = json(&["verify-paper", "--filter", "two_sources"]);
    assert_eq!(code, 0);
    let claims = v["result"]["claims"].as_array().unwrap();
    assert_eq!(claims.len(), 1);
    assert_eq!(claims[0]["id"], "two_sources_one_sided");
    assert_eq!(strata(&["verify-paper", "--filter", "zzz"]).status.code(), Some(2));
}

#[test]
fn verify_conflicts_exit_code() {
    let (code, v) = json(&["verify-paper", "--filter", "auslander_corner"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["counts"]["conflict"], 1);
    let (code, _) = json(&["verify-paper", "--filter", "auslander_corner", "--allow-conflicts"]);
    assert_eq!(code, 0);
}

#[test]
fn tampered_corpus_names_the_claim() {
    let dir = tempfile::tempdir().unwrap();
    for entry in std::fs::read_dir(corpus_dir()).unwrap() {
        let p = entry.unwrap().path();
        std::fs::copy(&p, dir.path().join(p.file_name().unwrap())).unwrap();
    }
    let sl2 = dir.path().join("sl2_block.json");
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&sl2).unwrap()).unwrap();
    v["presentation"]["relations"] = serde_json::json!([[[1, ["α", "β"]]], [[1, ["β", "α"]]]]);
    std::fs::write(&sl2, v.to_string()).unwrap();
    let out = strata(&[
        "verify-paper",
        "--corpus-dir",
        dir.path().to_str().unwrap(),
        "--filter",
        "sl2_corner",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("FAIL sl2_corner_quotient"), "{text}");
}
