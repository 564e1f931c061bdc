use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parityc")).args(args).env_remove("PARITYC_BUDGET").output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}\n{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let path = dir.join(name);
    fs::write(&path, serde_json::to_string_pretty(v).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn census_of_c2_over_c2() {
    let out = run(&["census", "--G", "cyclic:2", "--N", "cyclic:2", "--p", "2", "--L", "trivial"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    let text = v.to_string();
    assert!(text.contains("\"Z2\":2"), "{text}");
    assert!(text.contains("\"H2\":2"), "{text}");
}

#[test]
fn split_s3_over_z3() {
    let out = run(&["split", "--E", "sym:3", "--N", "cyclic:3"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["splittings"], 3);
    assert_eq!(v["classes"], 1);
    assert_eq!(v["H1"], 1);
}

#[test]
fn split_klein_lists_all_three_subgroups() {
    let out = run(&["split", "--E", "klein", "--N", "cyclic:2"]);
    assert_eq!(code(&out), 0);
    let subs = json_of(&out)["subgroups"].as_array().unwrap().clone();
    assert_eq!(subs.len(), 3);
    for s in subs {
        assert_eq!((s["splittings"].as_u64(), s["classes"].as_u64(), s["H1"].as_u64()), (Some(2), Some(2), Some(2)));
    }
}

#[test]
fn z4_over_z2_does_not_split() {
    assert_eq!(code(&run(&["split", "--E", "cyclic:4", "--N", "0,2"])), 4);
}

#[test]
fn semidirect_product_splits() {
    let out = run(&["split", "--G", "cyclic:2", "--N", "cyclic:3", "--L", "0,1"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json_of(&out)["splittings"], 3);
}

#[test]
fn extend_writes_a_reloadable_extension() {
    let dir = tempfile::tempdir().unwrap();
    let cochain = write(
        dir.path(),
        "f.json",
        &json!({"p": 2, "G": "cyclic:2", "N": "cyclic:2", "f": [[0, 0], [0, 1]]}),
    );
    let ext = dir.path().join("e.json");
    let out = run(&["extend", &cochain, "--fiber", "full", "--write", ext.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["associative"], true);
    assert_eq!(v["order"], 4);
    assert_eq!(v["iso_profile"], json!([1, 1, 2]));
    assert_eq!(v["direct_product"], false);

    assert_eq!(code(&run(&["validate", ext.to_str().unwrap()])), 0);
    assert_eq!(code(&run(&["split", "--ext", ext.to_str().unwrap()])), 4);
}

#[test]
fn trivial_cochain_gives_the_direct_product() {
    let dir = tempfile::tempdir().unwrap();
    let cochain = write(dir.path(), "f.json", &json!({"p": 2, "G": "cyclic:2", "N": "cyclic:3", "f": [[0, 0], [0, 0]]}));
    let out = run(&["extend", &cochain, "--fiber", "full"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json_of(&out)["direct_product"], true);
}

#[test]
fn non_action_full_fiber_is_not_associative() {
    let dir = tempfile::tempdir().unwrap();
    let cochain = write(
        dir.path(),
        "f.json",
        &json!({
            "p": 2, "G": "cyclic:3", "N": "cyclic:3",
            "L": [[0, 1, 2], [0, 2, 1], [0, 2, 1]],
            "f": [[0, 0, 0], [0, 0, 0], [0, 0, 0]],
        }),
    );
    let out = run(&["extend", &cochain, "--fiber", "full"]);
    assert_eq!(code(&out), 3);
    assert!(!out.stdout.is_empty() || !out.stderr.is_empty());
}

#[test]
fn unnormalized_cochain_is_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let cochain = write(dir.path(), "f.json", &json!({"p": 2, "G": "cyclic:2", "N": "cyclic:2", "f": [[1, 0], [0, 1]]}));
    assert_eq!(code(&run(&["extend", &cochain])), 65);
    assert_eq!(code(&run(&["validate", &cochain])), 65);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&run(&["verify", "--suite", "nonsense"])), 64);
    assert_eq!(code(&run(&["frobnicate"])), 64);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn budget_is_enforced() {
    let out = run(&["--budget", "10", "census", "--G", "klein", "--N", "cyclic:3", "--p", "2", "--L", "trivial"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_and_replay() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("dds.json");
    let out = run(&["verify", "--suite", "dds", "--G", "cyclic:2", "--N", "cyclic:3", "-o", report.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["instances"], 6);

    let instance = write(
        dir.path(),
        "i.json",
        &json!({"suite": "boundary", "G": "cyclic:2", "N": "cyclic:2", "L": [[0, 1], [0, 1]], "p": 1, "f": [0, 1]}),
    );
    assert_eq!(code(&run(&["verify", "--replay", &instance])), 0);
}

#[test]
fn failing_replay_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let instance = write(
        dir.path(),
        "i.json",
        &json!({
            "suite": "roundtrip", "G": "cyclic:3", "N": "cyclic:2",
            "L": [[0, 1], [0, 1], [0, 1]],
            "f": [0, 0, 0, 0, 1, 0, 0, 0, 0],
        }),
    );
    let out = run(&["verify", "--replay", &instance]);
    assert_eq!(code(&out), 1, "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn report_is_identical_across_shards() {
    let a = run(&["--shards", "1", "verify", "--suite", "oracle"]);
    let b = run(&["--shards", "4", "verify", "--suite", "oracle"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn tsv_output() {
    let out = run(&["--format", "tsv", "verify", "--suite", "functor"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("suite\tinstances"), "{text}");
}

#[test]
fn census_over_trivial_group_is_a_singleton() {
    let out = run(&["census", "--G", "trivial", "--N", "cyclic:5", "--p", "2"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!((v["Z2"].as_u64(), v["H2"].as_u64()), (Some(1), Some(1)));
}

#[test]
fn census_lists_h1_per_quasiaction() {
    let out = run(&["census", "--G", "cyclic:2", "--N", "cyclic:3", "--p", "1", "--L", "all"]);
    assert_eq!(code(&out), 0);
    let fibers = json_of(&out)["fibers"].as_array().unwrap().clone();
    let h1: Vec<u64> = fibers.iter().map(|f| f["classes"].as_u64().unwrap()).collect();
    assert_eq!(h1, [1, 1]);
}

#[test]
fn scoped_suites_pass() {
    for args in [
        &["verify", "--suite", "untwist", "--G", "sym:3"][..],
        &["verify", "--suite", "dds", "--G", "cyclic:2", "--N", "sym:3", "--exhaustive"],
        &["verify", "--suite", "oracle", "--G", "cyclic:3", "--N", "cyclic:3", "--p", "2"],
        &["verify", "--suite", "pentagon", "--G", "cyclic:2", "--N", "cyclic:3", "--samples", "500", "--seed", "3"],
    ] {
        let out = run(args);
        assert_eq!(code(&out), 0, "{args:?}");
        assert_eq!(json_of(&out)["passed"], true);
    }
}

#[test]
fn direct_product_classes_match_h1() {
    let out = run(&["split", "--G", "cyclic:2", "--N", "cyclic:3", "--L", "trivial"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["classes"], v["H1"]);
    assert_eq!(v["consistent"], true);
}
