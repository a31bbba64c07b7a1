use std::fs;
use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Workspace {
        Workspace { dir: TempDir::new().unwrap() }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        fs::write(&path, contents).unwrap();
        path
    }
}

fn gpin(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gpin")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn gpin_json(args: &[&str]) -> Value {
    let (code, stdout) = gpin(args);
    assert_eq!(code, 0, "{args:?}: {stdout}");
    serde_json::from_str(&stdout).unwrap()
}

const ONES_F3: &str = r#"{"field":"Fp:3","gram":[[1,0,0],[0,1,0],[0,0,1]]}"#;
const HYPERBOLIC_F3: &str = r#"{"field":"Fp:3","gram":[[0,1],[1,0]]}"#;

#[test]
fn member_accepts_a_product_of_vectors() {
    let ws = Workspace::new();
    let space = ws.file("space.json", ONES_F3);
    let element = ws.file("g.json", r#"{"vectors":[[1,0,0],[0,1,0]]}"#);
    let v = gpin_json(&["member", "--space", space.to_str().unwrap(), "--element", element.to_str().unwrap()]);
    assert_eq!(v["member"], true);
    assert_eq!(v["parity"], "even");
    assert_eq!(v["sign"], 1);
}

#[test]
fn member_rejects_mixed_parity() {
    let ws = Workspace::new();
    let space = ws.file("space.json", ONES_F3);
    let element = ws.file("g.json", r#"{"0":"1","1":"1"}"#);
    let v = gpin_json(&["member", "--space", space.to_str().unwrap(), "--element", element.to_str().unwrap()]);
    assert_eq!(v["member"], false);
    assert_eq!(v["reason"], "MixedParity");
}

#[test]
fn project_a_vector_is_a_reflection() {
    let ws = Workspace::new();
    let space = ws.file("space.json", ONES_F3);
    let element = ws.file("g.json", r#"{"vectors":[[1,0,0]]}"#);
    let v = gpin_json(&["project", "--space", space.to_str().unwrap(), "--element", element.to_str().unwrap()]);
    assert_eq!(v["det"], -1);
    assert_eq!(v["matrix"].as_array().unwrap().len(), 3);
}

#[test]
fn lift_then_project_recovers_the_matrix() {
    let ws = Workspace::new();
    let space = ws.file("space.json", ONES_F3);
    let rot = r#"[["0","1","0"],["2","0","0"],["0","0","1"]]"#;
    let matrix = ws.file("m.json", rot);
    let lifted = gpin_json(&["lift", "--space", space.to_str().unwrap(), "--matrix", matrix.to_str().unwrap()]);
    assert_eq!(lifted["parity"], "even");
    let expected: Value = serde_json::from_str(rot).unwrap();
    assert_eq!(lifted["projection"], expected);
}

#[test]
fn center_of_gpin() {
    let ws = Workspace::new();
    let space = ws.file("space.json", ONES_F3);
    let v = gpin_json(&["center", "--space", space.to_str().unwrap(), "--group", "gpin"]);
    assert_eq!(v["center"]["scalars"], true);
    assert_eq!(v["center"]["zeta_coset"], true);
    let plane = ws.file("plane.json", HYPERBOLIC_F3);
    let v = gpin_json(&["center", "--space", plane.to_str().unwrap(), "--group", "gspin"]);
    assert_eq!(v["center"]["whole_group"], true);
}

#[test]
fn enumerate_orders() {
    let ws = Workspace::new();
    let hyperbolic = ws.file("h.json", HYPERBOLIC_F3);
    let ones = ws.file("s3.json", ONES_F3);
    let o = gpin_json(&["enumerate", "--space", hyperbolic.to_str().unwrap(), "--group", "o"]);
    assert_eq!(o["order"], 4);
    assert_eq!(o["elements"].as_array().unwrap().len(), 4);
    // |O_3(F_3)| = 48 times the two nonzero scalars.
    let g = gpin_json(&["enumerate", "--space", ones.to_str().unwrap(), "--group", "gpin", "--count"]);
    assert_eq!(g["order"], 96);
    assert!(g.get("elements").is_none());
}

#[test]
fn centralizer_of_a_rotation() {
    let ws = Workspace::new();
    let space = ws.file("space.json", ONES_F3);
    let matrix = ws.file("m.json", r#"[["0","1","0"],["2","0","0"],["0","0","1"]]"#);
    let v = gpin_json(&["centralizer", "--space", space.to_str().unwrap(), "--matrix", matrix.to_str().unwrap()]);
    assert_eq!(v["predicted_order"], "8");
}

#[test]
fn conjugator_certificate() {
    let ws = Workspace::new();
    let space = ws.file("space.json", ONES_F3);
    let element = ws.file("g.json", r#"{"vectors":[[1,0,0],[0,1,0]]}"#);
    let args = ["conjugator", "--space", space.to_str().unwrap(), "--element", element.to_str().unwrap()];
    let plain = gpin_json(&args);
    assert_eq!(plain["conjugates"], true);
    assert_eq!(plain["det_constraint"], true);
    let mut gspin = args.to_vec();
    gspin.push("--gspin");
    assert!(gpin_json(&gspin).is_object());
}

#[test]
fn conjugator_rejects_a_unipotent_element() {
    let ws = Workspace::new();
    let space = ws.file("space.json", ONES_F3);
    // Two reflections whose product has order 3 in characteristic 3.
    let element = ws.file("g.json", r#"{"vectors":[[1,1,0],[0,1,1]]}"#);
    let (code, _) = gpin(&["conjugator", "--space", space.to_str().unwrap(), "--element", element.to_str().unwrap()]);
    assert_eq!(code, 3);
}

#[test]
fn suite_exit_codes() {
    let (code, stdout) = gpin(&["suite", "zeta", "--field", "Fp:5", "--dim", "2"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["status"], "pass");
    let (code, stdout) = gpin(&["suite", "zeta", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("suite zeta: pass"));
    assert_eq!(gpin(&["suite", "nope"]).0, 3);
    assert_eq!(gpin(&["suite", "zeta", "--field", "Fp:2"]).0, 3);
    assert_eq!(gpin(&["suite", "zeta", "--format", "xml"]).0, 3);
}

#[test]
fn input_errors_exit_with_three() {
    let ws = Workspace::new();
    let degenerate = ws.file("d.json", r#"{"field":"Q","gram":[[1,0],[0,0]]}"#);
    assert_eq!(gpin(&["center", "--space", degenerate.to_str().unwrap()]).0, 3);
    assert_eq!(gpin(&["center", "--space", "/nonexistent/space.json"]).0, 3);
    assert_eq!(gpin(&["frobnicate"]).0, 3);
    assert_eq!(gpin(&["--help"]).0, 0);
}
