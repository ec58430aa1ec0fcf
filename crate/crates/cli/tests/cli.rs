use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn system(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("systems").join(name)
}

fn ritt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ritt")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

fn path(name: &str) -> String {
    system(name).to_string_lossy().into_owned()
}

fn temp_file(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("ritt-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn jacobi_of_the_increasing_example() {
    let o = ritt(&["jacobi", &path("j_increasing.sys")]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("J(weak)=101 J(strong)=101"));
    let j = json(&ritt(&["jacobi", &path("j_increasing.sys"), "--json"]));
    assert_eq!(j["strong"]["J"], 101);
    assert_eq!(j["weak"]["J"], 101);
}

#[test]
fn weak_and_strong_bounds_differ() {
    let j = json(&ritt(&["jacobi", &path("weak_strong.sys"), "--json"]));
    assert_eq!((j["weak"]["J"].clone(), j["strong"]["J"].clone()), (18.into(), 2.into()));
    let m = json(&ritt(&["matrix", &path("weak_strong.sys"), "--json"]));
    assert_eq!(m["matrix"], serde_json::json!([[1, 18], ["-inf", 1]]));
    let w = json(&ritt(&["matrix", &path("weak_strong.sys"), "--convention", "weak", "--json"]));
    assert_eq!(w["matrix"], serde_json::json!([[1, 18], [0, 1]]));
}

#[test]
fn scripted_trace() {
    let o = ritt(&["trace", &path("j_increasing.sys"), "--script", "0/2@x;1/2@x", "--json"]);
    assert!(o.status.success());
    let j = json(&o);
    assert_eq!(j["J_sequence_weak"], serde_json::json!([101, 150, 101]));
    assert_eq!(j["J_sequence"], serde_json::json!([101, 101, 101]));
    assert_eq!(j["steps"].as_array().unwrap().len(), 2);
    assert_eq!(j["steps"][0]["kind"], "scripted");

    let script = temp_file("script.txt", "# divisions\n0/2@x\n1/2@x\n");
    let j2 = json(&ritt(&["trace", &path("j_increasing.sys"), "--script-file", &script, "--json"]));
    assert_eq!(j2["J_sequence_weak"], j["J_sequence_weak"]);
}

#[test]
fn second_form_counterexample_raises_j() {
    let j = json(&ritt(&["trace", &path("j_increasing_second_form.sys"), "--script", "2/0@x", "--json"]));
    assert_eq!(j["J_sequence"], serde_json::json!([6, 7]));
    assert_eq!(j["steps"][0]["matrix_after"], serde_json::json!([[1, 2, 3], [1, 1, 1], [1, 3, 4]]));
}

#[test]
fn bad_script_entry_is_a_user_error() {
    let o = ritt(&["trace", &path("j_increasing.sys"), "--script", "2/0@x", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let j = json(&o);
    assert_eq!(j["error"]["kind"], "user");
    assert!(j["error"]["message"].as_str().unwrap().contains("entry 1"));
}

#[test]
fn examples_match_their_goldens() {
    let o = ritt(&["examples"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("MISMATCH"));
    assert_eq!(json(&ritt(&["examples", "--json"]))["all_match"], true);
}

#[test]
fn empty_file_and_missing_arguments_fail() {
    let empty = temp_file("empty.sys", "# nothing here\n");
    let o = ritt(&["jacobi", &empty]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no equations"));
    assert_eq!(ritt(&["jacobi"]).status.code(), Some(1));
    assert_eq!(ritt(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(ritt(&["jacobi", "/nonexistent/file.sys"]).status.code(), Some(1));
}

#[test]
fn parse_errors_carry_positions() {
    let bad = temp_file("bad.sys", "vars x\nx' + * 2\n");
    let o = ritt(&["jacobi", &bad, "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let msg = json(&o)["error"]["message"].as_str().unwrap().to_string();
    assert!(msg.contains("line 2"), "{msg}");
    let undeclared = temp_file("undeclared.sys", "vars x\nx' + y\n");
    let o = ritt(&["matrix", &undeclared]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains('y'));
}

#[test]
fn vars_flag_reorders_columns() {
    let j = json(&ritt(&["matrix", &path("weak_strong.sys"), "--vars", "y,x", "--json"]));
    assert_eq!(j["matrix"], serde_json::json!([[18, 1], [1, "-inf"]]));
}

#[test]
fn reduce_linear_reports_dimensions() {
    let j = json(&ritt(&["reduce-linear", &path("linear.sys"), "--json"]));
    assert_eq!(j["dims"], serde_json::json!({ "diffDim": 0, "absDimBound": 2 }));
    assert_eq!(j["J_sequence"], serde_json::json!([2]));
    let o = ritt(&["reduce-linear", &path("pencil.sys")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn dims_and_autoreduce() {
    let j = json(&ritt(&["dims", &path("linear.sys"), "--json"]));
    assert_eq!(j["absDimBound"], 2);
    let a = json(&ritt(&["autoreduce", &path("linear.sys"), "--ranking", "elim:y;x", "--json"]));
    assert_eq!(a["converged"], true);
    assert_eq!(a["ranking"], "elim:y;x");
    assert_eq!(a["charset"].as_array().unwrap().len(), 2);
    assert_eq!(ritt(&["dims", &path("linear.sys"), "--ranking", "elim:q"]).status.code(), Some(1));
}

#[test]
fn divide_prints_a_certificate() {
    let j = json(&ritt(&[
        "divide",
        &path("j_increasing.sys"),
        "--dividend",
        "0",
        "--divisor",
        "2",
        "--var",
        "x",
        "--json",
    ]));
    assert_eq!(j["mode"], "proper");
    assert_eq!(j["remainder"], "-y^(100) + z' + y'");
    assert_eq!(j["s"], "1");
}

#[test]
fn forms_on_matrix_literals() {
    let j = json(&ritt(&["forms", "--matrix", "2,1;2,1", "--json"]));
    assert_eq!(j["certificates"]["to_second_form"]["form"], "second form");
    let j = json(&ritt(&["forms", "--matrix", "1,2,3;1,1,1;2,1,1", "--json"]));
    assert_eq!(j["detected"]["second"], false);
    assert!(j["certificates"]["to_first_form"]["error"].is_string());
    assert_eq!(ritt(&["forms", "--matrix", "1,x"]).status.code(), Some(1));
}

#[test]
fn pencil_and_fibers() {
    let j = json(&ritt(&["pencil", &path("pencil.sys"), "--at", "3", "--json"]));
    assert_eq!(j["generators"][0], "2*x'*w - 2*x");
    assert_eq!(j["fibers"][0]["system"][0], "6*x' - 2*x");
    assert_eq!(ritt(&["pencil", &path("pencil.sys"), "--var", "y", "--pivot", "0"]).status.code(), Some(1));
}
