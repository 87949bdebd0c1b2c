use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn mhcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mhcheck"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn export_a_g(dir: &Path) -> std::path::PathBuf {
    let file = dir.join("a_g.json");
    let out = mhcheck(&["gallery", "A_G", "--group", "Z4", "--subgroup", "0,2", "--out", path_str(&file)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    file
}

fn edit(file: &Path, to: &Path, f: impl FnOnce(&mut Value)) {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(file).unwrap()).unwrap();
    f(&mut v);
    std::fs::write(to, serde_json::to_string_pretty(&v).unwrap()).unwrap();
}

#[test]
fn partial_suite_on_exported_a_g_passes() {
    let dir = tempfile::tempdir().unwrap();
    let file = export_a_g(dir.path());
    let out = mhcheck(&["verify", path_str(&file), "--suite", "partial"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("[pass] partial"));
}

#[test]
fn non_subgroup_h_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let file = export_a_g(dir.path());
    let bad = dir.path().join("bad_h.json");
    edit(&file, &bad, |v| v["multipliers"]["h"]["terms"] = json!([[0, "1"], [1, "1"]]));
    let out = mhcheck(&["verify", path_str(&bad), "--suite", "partial", "--report", "json"]);
    assert_eq!(code(&out), 1);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let clauses = report["reports"][0]["clauses"].as_array().unwrap();
    let failing: Vec<_> = clauses.iter().filter(|c| c["status"] == "fail").collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|c| !c["witnesses"].as_array().unwrap().is_empty()));
}

#[test]
fn malformed_files_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let not_json = dir.path().join("broken.json");
    std::fs::write(&not_json, "{ not json").unwrap();
    assert_eq!(code(&mhcheck(&["verify", path_str(&not_json)])), 2);

    let float = dir.path().join("float.json");
    let file = export_a_g(dir.path());
    edit(&file, &float, |v| v["multipliers"]["h"]["terms"] = json!([[0, 1.5]]));
    let out = mhcheck(&["verify", path_str(&float)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("$.multipliers.h"));

    let dangling = dir.path().join("dangling.json");
    edit(&file, &dangling, |v| v["coactions"]["rho"]["h"] = json!("missing"));
    assert_eq!(code(&mhcheck(&["verify", path_str(&dangling)])), 2);

    assert_eq!(code(&mhcheck(&["verify", path_str(&file), "--suite", "no_such_suite"])), 2);
}

#[test]
fn smash_output_is_four_dimensional_and_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let file = export_a_g(dir.path());
    let smash = dir.path().join("smash.json");
    let out = mhcheck(&["smash", path_str(&file), "--out", path_str(&smash)]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&smash).unwrap()).unwrap();
    assert_eq!(doc["mhas"]["smash"]["keys"].as_array().unwrap().len(), 4);
    let out = mhcheck(&["verify", path_str(&smash), "--suite", "bialgebra"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
}

#[test]
fn global_smash_has_full_dimension() {
    let dir = tempfile::tempdir().unwrap();
    let file = export_a_g(dir.path());
    let global = dir.path().join("global.json");
    edit(&file, &global, |v| v["multipliers"]["h"] = json!({"kind": "identity", "carrier": "A"}));
    let smash = dir.path().join("smash.json");
    assert_eq!(code(&mhcheck(&["smash", path_str(&global), "--out", path_str(&smash)])), 0);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&smash).unwrap()).unwrap();
    assert_eq!(doc["mhas"]["smash"]["keys"].as_array().unwrap().len(), 8);
    assert_eq!(code(&mhcheck(&["verify", path_str(&smash)])), 0);
}

#[test]
fn smash_over_noncommutative_a_is_a_precondition_failure() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("sweedler.json");
    assert_eq!(code(&mhcheck(&["gallery", "sweedler", "--out", path_str(&file)])), 0);
    let out = mhcheck(&["smash", path_str(&file), "--out", path_str(&dir.path().join("x.json"))]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("precondition_failed"));
}

#[test]
fn gallery_parameters_are_validated() {
    let dir = tempfile::tempdir().unwrap();
    let taft = dir.path().join("taft.json");
    let out = mhcheck(&["gallery", "taft", "--p", "7", "--q", "2", "--alpha", "1", "--out", path_str(&taft)]);
    assert_eq!(code(&out), 0);
    assert!(taft.exists());
    assert_eq!(code(&mhcheck(&["gallery", "no_such_bundle"])), 2);
    assert_eq!(code(&mhcheck(&["gallery", "A_G", "--subgroup", "0,1"])), 2);
    assert_eq!(code(&mhcheck(&["gallery", "taft", "--p", "8"])), 2);
    assert_eq!(code(&mhcheck(&["gallery", "taft", "--radius", "2"])), 2);
}

#[test]
fn reports_are_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let file = export_a_g(dir.path());
    let run = || stdout(&mhcheck(&["verify", path_str(&file), "--report", "json", "--seed", "11"]));
    assert_eq!(run(), run());
}
