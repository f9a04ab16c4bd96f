use std::process::{Command, Output};

use serde_json::Value;

fn corner(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_corner"))
        .args(args)
        .current_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/../.."))
        .env_remove("CORNER_MAX_DIM")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn bettis(doc: &Value) -> Vec<u64> {
    doc["groups"].as_array().unwrap().iter().map(|g| g["betti"].as_u64().unwrap()).collect()
}

#[test]
fn homology_of_the_two_branches() {
    let args = ["homology", "fixtures/fig1.json", "--theory", "branching", "--max-dim", "2", "--format", "json"];
    let first = corner(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, corner(&args).stdout);
    assert_eq!(bettis(&json(&first)), [2, 1]);
    let merging = corner(&["homology", "fixtures/fig1.json", "--theory", "merging", "--max-dim", "2", "--format", "json"]);
    assert_eq!(bettis(&json(&merging)), [1, 0]);
}

#[test]
fn exit_codes() {
    assert_eq!(corner(&["validate", "fixtures/square.json"]).status.code(), Some(0));
    assert_eq!(corner(&["validate", "fixtures/missing.json"]).status.code(), Some(1));
    assert_eq!(corner(&["homology", "builtin:G_1", "--max-dim", "9"]).status.code(), Some(2));
    assert_eq!(corner(&["homology"]).status.code(), Some(64));
}

#[test]
fn environment_sets_the_default_dimension() {
    let out = Command::new(env!("CARGO_BIN_EXE_corner"))
        .args(["--format", "json", "homology", "builtin:G_2"])
        .env("CORNER_MAX_DIM", "3")
        .output()
        .unwrap();
    assert_eq!(bettis(&json(&out)), [1, 0, 1]);
}

#[test]
fn nerve_and_crosscheck_reports() {
    let nerve = json(&corner(&["--format", "json", "nerve", "builtin:G_1", "--dim", "1"]));
    let cubes = nerve["cubes"].as_array().unwrap();
    assert_eq!(cubes.len(), 4);
    assert_eq!(cubes.iter().filter(|c| c["branching"] == true).count(), 2);
    let out = corner(&["--format", "json", "--max-dim", "3", "crosscheck-calcul", "builtin:G_2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["ok"], true);
}

#[test]
fn fold_traces_reach_the_folded_cube() {
    for k in ["0", "3", "7"] {
        let out = corner(&["--format", "json", "fold", "builtin:I_2", "--cube", k, "--trace"]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json(&out)["equals_phi"], true);
    }
}
