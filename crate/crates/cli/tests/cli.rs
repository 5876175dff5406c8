use std::io::Write;
use std::process::{Command, Output, Stdio};

use loopgrass::json::Json;
use loopgrass::lattice::filtration_level;
use loopgrass::Lattice;
use serde_json::Value;

const LAMBDA_1: &str = r#"{"n":2,"entries":[[[[1,"1","0"]],[]],[[],[[-1,"1","0"]]]]}"#;
const ROTATION: &str = r#"{"n":2,"entries":[[[[0,"3/5","0"]],[[0,"4/5","0"]]],[[[0,"-4/5","0"]],[[0,"3/5","0"]]]]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loopgrass")).args(args).output().unwrap()
}

fn run_env(args: &[&str], key: &str, val: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loopgrass")).args(args).env(key, val).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn lattice(v: &Value) -> Lattice {
    Lattice::from_json(v).unwrap()
}

fn json_of(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn check_loop_accepts_lambda() {
    let o = run(&["check-loop", LAMBDA_1]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "valid Ω_poly,1 SU(2)");
}

#[test]
fn check_loop_reports_violations() {
    let bad = r#"{"n":2,"entries":[[[[1,"2","0"]],[]],[[],[[-1,"1","0"]]]]}"#;
    let o = run(&["check-loop", bad]);
    assert_eq!(o.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "invalid_loop");
    let kinds: Vec<&str> = err["violations"].as_array().unwrap().iter().map(|v| v["kind"].as_str().unwrap()).collect();
    assert!(kinds.contains(&"determinant"), "{kinds:?}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["rank", "/no/such/file.json"]).status.code(), Some(2));
    assert_eq!(run(&["rank", "{not json"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["ktheory", "--ring", "RX", "--level", "1"]).status.code(), Some(2));
}

#[test]
fn file_and_stdin_inputs() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(LAMBDA_1.as_bytes()).unwrap();
    let from_file = run(&["index", "--format", "json", f.path().to_str().unwrap()]);
    let mut child = Command::new(env!("CARGO_BIN_EXE_loopgrass"))
        .args(["index", "--format", "json", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(LAMBDA_1.as_bytes()).unwrap();
    let from_stdin = child.wait_with_output().unwrap();
    assert_eq!(json_of(&from_file), json_of(&from_stdin));
    assert_eq!(json_of(&from_file)["index"], 0);
}

#[test]
fn alpha_beta_pipeline() {
    let w = json_of(&run(&["alpha", "--format", "json", LAMBDA_1]));
    let text = w.to_string();
    assert_eq!(json_of(&run(&["rank", "--format", "json", &text]))["rank"], 1);
    assert_eq!(json_of(&run(&["level", "--format", "json", &text]))["level"], 1);
    let b = json_of(&run(&["beta", "--format", "json", "--eval", "z=i", &text]));
    assert_eq!(b["norms_sq"], serde_json::json!(["1/1", "1/1"]));
    let s = &b["samples"][0];
    assert_eq!(s["unitary"], true);
    // λ₁(i) = diag(i, −i)
    assert_eq!(s["entries"][0][0], serde_json::json!(["0/1", "1/1"]));
    assert_eq!(s["entries"][1][1], serde_json::json!(["0/1", "-1/1"]));
    assert_eq!(stdout(&run(&["roundtrip", LAMBDA_1])).trim(), "beta(alpha(f)) == f: true");
}

#[test]
fn act_is_equivariant_through_the_cli() {
    let gf = json_of(&run(&["act", "--format", "json", "--group", ROTATION, LAMBDA_1])).to_string();
    let w = json_of(&run(&["alpha", "--format", "json", LAMBDA_1])).to_string();
    let gw = json_of(&run(&["act", "--format", "json", "--group", ROTATION, &w]));
    assert_eq!(json_of(&run(&["alpha", "--format", "json", &gf])), gw);
}

#[test]
fn winding_of_shifted_polynomial() {
    // z⁻¹(z − 1/2) winds 0 times
    let p = r#"[[0,"1","0"],[-1,"-1/2","0"]]"#;
    assert_eq!(json_of(&run(&["winding", "--format", "json", p]))["winding"], 0);
    let on_circle = r#"[[1,"1","0"],[0,"-1","0"]]"#;
    assert_eq!(run(&["winding", on_circle]).status.code(), Some(1));
}

#[test]
fn ktheory_ranks_and_flag() {
    let v = json_of(&run(&["ktheory", "--ring", "RG", "--level", "2", "--format", "json"]));
    assert_eq!(v["even_rank"], 5);
    assert_eq!(v["odd_rank"], 0);
    assert_eq!(v["closed_form_rank"], 3);
    assert!(v["discrepancy"].is_string());
    assert_eq!(v["labels"].as_array().unwrap().len(), 5);
}

#[test]
fn strata_pipeline_round_trips() {
    let corpus = json_of(&run(&["gen-corpus", "--max-r", "2", "--seed", "5", "--format", "json"]));
    for s in corpus["strata"].as_array().unwrap().iter().take(6) {
        let w = json_of(&run(&["phi", "--format", "json", &s.to_string()])).to_string();
        let lam = s["lambda"].to_string();
        let back = json_of(&run(&["phi-inv", "--format", "json", "--lambda", &lam, &w]));
        assert_eq!(json_of(&run(&["phi", "--format", "json", &back.to_string()])).to_string(), w);
        // H lives on the zero section, and H_1 is the identity there
        let mut s0 = s.clone();
        for c in s0["fiber"].as_array_mut().unwrap() {
            *c = serde_json::json!(["0", "0"]);
        }
        let w0 = lattice(&json_of(&run(&["phi", "--format", "json", &s0.to_string()])));
        let h1 = lattice(&json_of(&run(&["homotopy", "--format", "json", "--t", "1", &s.to_string()])));
        assert!(h1.same_subspace(&w0));
        let h0 = lattice(&json_of(&run(&["homotopy", "--format", "json", "--t", "0", &s.to_string()])));
        assert_eq!(filtration_level(&h0), s["lambda"]["r"].as_u64().unwrap() as usize);
    }
}

#[test]
fn homotopy_rejects_t_outside_unit_interval() {
    let corpus = json_of(&run(&["gen-corpus", "--max-r", "1", "--format", "json"]));
    let s = corpus["strata"][0].to_string();
    assert_eq!(run(&["homotopy", "--t", "3/2", &s]).status.code(), Some(1));
}

#[test]
fn gen_corpus_is_deterministic() {
    let a = run(&["gen-corpus", "--max-r", "2", "--seed", "9", "--format", "json"]);
    let b = run(&["gen-corpus", "--max-r", "2", "--seed", "9", "--format", "json"]);
    assert_eq!(stdout(&a), stdout(&b));
    let c = run(&["gen-corpus", "--max-r", "2", "--seed", "10", "--format", "json"]);
    assert_ne!(stdout(&a), stdout(&c));
}

#[test]
fn batch_preserves_order_across_jobs() {
    let corpus = json_of(&run(&["gen-corpus", "--max-r", "2", "--format", "json"]));
    let loops: Vec<Value> = corpus["loops"].as_array().unwrap().iter().map(|l| l["loop"].clone()).collect();
    let input = Value::Array(loops.clone()).to_string();
    let one = json_of(&run(&["index", "--batch", "--jobs", "1", "--format", "json", &input]));
    let four = json_of(&run(&["index", "--batch", "--jobs", "4", "--format", "json", &input]));
    assert_eq!(one, four);
    assert_eq!(one.as_array().unwrap().len(), loops.len());
}

#[test]
fn batch_marks_failed_items() {
    let input = format!(r#"[{LAMBDA_1}, {{"n":2,"entries":[[[],[]],[[],[]]]}}]"#);
    let o = run(&["check-loop", "--batch", "--format", "json", &input]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["valid"], true);
    assert!(v[1]["error"].is_string());
}

#[test]
fn window_cap_is_enforced() {
    let o = run_env(&["section", "--r", "3", r#"[["1","0"],["0","0"]]"#], "LOOPGRASS_MAX_WINDOW", "8");
    assert_eq!(o.status.code(), Some(1));
    let o = run_env(&["section", "--r", "2", r#"[["1","0"],["0","0"]]"#], "LOOPGRASS_MAX_WINDOW", "8");
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn thom_round_trip() {
    let corpus = json_of(&run(&["gen-corpus", "--max-r", "2", "--format", "json"]));
    for entry in corpus["lattices"].as_array().unwrap().iter().take(10) {
        let w = entry["lattice"].to_string();
        let level = json_of(&run(&["level", "--format", "json", &w]))["level"].as_u64().unwrap();
        if level == 0 {
            continue;
        }
        let r = level.to_string();
        let t = json_of(&run(&["thom", "--format", "json", "--r", &r, &w])).to_string();
        let back = json_of(&run(&["thom-inverse", "--format", "json", "--r", &r, &t]));
        let level_back = json_of(&run(&["level", "--format", "json", &back.to_string()]))["level"].clone();
        assert_eq!(level_back.as_u64(), Some(level));
    }
}

#[test]
fn oracle_index_agrees_with_index() {
    let w = json_of(&run(&["alpha", "--format", "json", LAMBDA_1])).to_string();
    let v = json_of(&run(&["oracle-index", "--format", "json", "--r", "1", &w]));
    assert_eq!(v["index"], 0);
}
