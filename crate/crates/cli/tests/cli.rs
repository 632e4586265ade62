use std::process::{Command, Output};

use plancherel_lab::plancherel::level_measure;
use plancherel_lab::Limits;
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_plancherel-lab"));
    c.env_remove("PLANCHEREL_LAB_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn measure_matches_library() {
    let out = run(&["measure", "--n", "3", "--format", "json"]);
    let want = serde_json::to_value(level_measure(3, &Limits::default()).unwrap()).unwrap();
    assert_eq!(json(&out), want);
    assert_eq!(want["[2,1]"], "2/3");
}

#[test]
fn tp_check_on_exp() {
    let out = run(&["tp-check", "--coeffs", "exp", "--order", "3", "--window", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "totally_positive_up_to_order");
}

#[test]
fn tp_check_reads_a_coefficient_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    std::fs::write(&path, r#"["1","1","2"]"#).unwrap();
    let out = run(&["tp-check", "--coeffs", path.to_str().unwrap(), "--order", "2", "--window", "4"]);
    let v = json(&out);
    assert_eq!(v["verdict"], "counterexample");
    assert_eq!(v["witness"]["value"], "-1/1");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["sample", "--n", "0"]).status.code(), Some(1));
    let unknown = run(&["no-such-command"]);
    assert_eq!(unknown.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("Usage"));
    assert_eq!(run(&["measure", "--n", "70"]).status.code(), Some(2));
    assert_eq!(run(&["coherence", "--n", "3", "--format", "csv"]).status.code(), Some(1));
    assert_eq!(run(&["measure", "--n", "3", "--cap-sampling", "0"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn caps_are_adjustable() {
    let out = run(&["numberings", "--n", "11"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["numberings", "--n", "4", "--cap-numberings", "4"]);
    assert_eq!(json(&out)["count"], 10);
}

#[test]
fn selftest_json() {
    let out = run(&["selftest", "--json"]);
    let v = json(&out);
    let list = v.as_array().unwrap();
    let names: Vec<&str> = list.iter().map(|r| r["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["burnside", "coherence", "stochasticity", "plancherel_graph"]);
    assert!(list.iter().all(|r| r["pass"] == true));
}

#[test]
fn out_is_written_atomically_and_reproducibly() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = run(&["sample", "--n", "60", "--seed", "42", "--out", p.to_str().unwrap()]);
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let names: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(names.len(), 2, "stray files: {names:?}");
    let other = run(&["sample", "--n", "60", "--seed", "43"]);
    assert_ne!(other.stdout, std::fs::read(&a).unwrap());
}

#[test]
fn thread_count_does_not_change_results() {
    let args = ["first-row", "--n", "200", "--trials", "12", "--format", "csv"];
    let one = bin().args(args).env("PLANCHEREL_LAB_THREADS", "1").output().unwrap();
    let four = bin().args(args).env("PLANCHEREL_LAB_THREADS", "4").output().unwrap();
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    let text = String::from_utf8(one.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("trial,lambda1,lambda1_prime,ratio"));
    assert_eq!(text.lines().count(), 13);
    let bad = bin().args(args).env("PLANCHEREL_LAB_THREADS", "many").output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn emit_csv_alongside_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.csv");
    let out = run(&["first-row", "--n", "50", "--trials", "10", "--emit-csv", path.to_str().unwrap()]);
    assert_eq!(json(&out)["trials"], 10);
    let csv = std::fs::read_to_string(&path).unwrap();
    assert_eq!(csv.lines().count(), 11);
}

#[test]
fn small_commands() {
    let v = json(&run(&["transfer", "--tableau-json", "[[1,2],[3]]"]));
    assert_eq!(v["output"], serde_json::json!([[1], [2]]));

    let v = json(&run(&["prefix-dist", "--lambda", "[2,1]", "--k", "2"]));
    assert_eq!(v["distance"], "0/1");

    let v = json(&run(&["numberings", "--poset", "z2", "--n", "3"]));
    assert_eq!(v["count"], 4);

    let v = json(&run(&["plgraph", "--graph", "young", "--levels", "6"]));
    assert_eq!(v["holds"], true);
    let v = json(&run(&["plgraph", "--graph", "young", "--levels", "3", "--delete-edge", "[2,1]->[2,2]"]));
    assert_eq!(v["holds"], false);

    let v = json(&run(&["thoma", "--beta", "1", "--order", "4"]));
    assert_eq!(v, serde_json::json!(["1/1", "1/1", "1/1", "1/1", "1/1"]));
    let bad = run(&["thoma", "--alpha", "1/2", "--order", "4"]);
    assert_eq!(bad.status.code(), Some(1));

    let v = json(&run(&["chargf", "--chi-values", "1", "--order", "3"]));
    assert_eq!(v, serde_json::json!(["1/1", "1/1", "1/2", "1/6"]));

    let v = json(&run(&["density", "--n", "300", "--trials", "4"]));
    assert!(v["mean"].as_f64().unwrap() < 0.2);

    let v = json(&run(&["coherence", "--n", "5"]));
    assert_eq!(v["holds"], true);

    let v = json(&run(&["sublinearity", "--n-list", "50,500", "--trials", "10"]));
    assert_eq!(v["points"].as_array().unwrap().len(), 2);
}

#[test]
fn qs_test_report() {
    let v = json(&run(&["qs-test", "--k", "2", "--n", "60", "--trials", "1000"]));
    assert_eq!(v["k"], 2);
    assert_eq!(v["degrees_of_freedom"], 1);
    assert!(v["statistic"].as_f64().unwrap() >= 0.0);
    assert_eq!(run(&["qs-test", "--k", "2", "--n", "40", "--trials", "1000"]).status.code(), Some(1));
}
