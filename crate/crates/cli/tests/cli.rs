use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_meixner")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn eval_constant_term() {
    let out = run(&["eval", "--point", "0,0,0,0", "--route", "gf"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn eval_routes_agree() {
    let values: Vec<String> = ["raising", "gf", "hyp", "dompe3"]
        .iter()
        .map(|r| stdout(&run(&["eval", "--point", "2,1,3,2", "--route", r])).trim().to_string())
        .collect();
    assert!(values.iter().all(|v| v == &values[0]), "{values:?}");
    let tratnik = ["--params", "boost:2:2,boost:1:3", "--point", "1,2,3,1"];
    let a = stdout(&run(&[&["eval", "--route", "tratnik"][..], &tratnik].concat()));
    let b = stdout(&run(&[&["eval", "--route", "gf"][..], &tratnik].concat()));
    assert_eq!(a, b);
}

#[test]
fn eval_non_generic_is_precondition_failure() {
    let out = run(&["eval", "--params", "boost:1:2", "--point", "1,0,0,0", "--route", "gf"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn eval_in_three_variables() {
    let args = ["eval", "--d", "3", "--seed", "11", "--factors", "4", "--degree", "1,1,0", "--at", "2,0,1"];
    let a = stdout(&run(&[&args[..], &["--route", "raising"]].concat()));
    let b = stdout(&run(&[&args[..], &["--route", "gf"]].concat()));
    assert_eq!(a, b);
}

#[test]
fn verify_exit_codes() {
    let ok = run(&["verify", "--suite", "recurrence", "--box", "3,3,3,3", "--degree-total", "3"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).starts_with("PASS recurrence"));
    let float = run(&["verify", "--suite", "orthogonality", "--box", "2,2,0,0", "--mode", "float", "--tol", "1e-8", "--json"]);
    assert_eq!(float.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&float)).unwrap();
    for key in ["suite", "box", "mode", "max_discrepancy", "counterexample", "pass"] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
    assert_eq!(run(&["verify", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "recurrence", "--mode", "float"]).status.code(), Some(2));
}

#[test]
fn corrupted_matrix_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    let gen = run(&["gen-matrix", "--seed", "4"]);
    assert_eq!(gen.status.code(), Some(0));
    let mut file: serde_json::Value = serde_json::from_str(&stdout(&gen)).unwrap();
    std::fs::write(&path, file.to_string()).unwrap();
    let good = run(&["verify", "--suite", "duality", "--matrix", path.to_str().unwrap()]);
    assert_eq!(good.status.code(), Some(0));
    file["entries"][0][0] = serde_json::Value::String("1/7".into());
    std::fs::write(&path, file.to_string()).unwrap();
    let bad = run(&["verify", "--suite", "duality", "--matrix", path.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("does not preserve"));
}

#[test]
fn gen_matrix_is_deterministic() {
    assert_eq!(stdout(&run(&["gen-matrix", "--seed", "8", "--d", "3"])), stdout(&run(&["gen-matrix", "--seed", "8", "--d", "3"])));
}

#[test]
fn csv_table_has_box_volume_rows() {
    let out = run(&["table", "--box", "2,1,3,2", "--format", "csv"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("m,n,i,k,value"));
    assert_eq!(lines.count(), 3 * 2 * 4 * 3);
    let zero = stdout(&run(&["table", "--box", "0,0,0,0"]));
    assert_eq!(zero.lines().nth(1), Some("0,0,0,0,1"));
}

#[test]
fn json_table_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let p = path.to_str().unwrap();
    let out = run(&["table", "--seed", "2", "--box", "3,3,3,3", "--degree-total", "3", "--format", "json", "--output", p]);
    assert_eq!(out.status.code(), Some(0));
    let again = run(&["verify", "--suite", "recurrence", "--table", p]);
    assert_eq!(again.status.code(), Some(0), "{}", stdout(&again));
    let mut table: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    table["rows"][5]["value"] = serde_json::Value::String("123/4".into());
    std::fs::write(&path, table.to_string()).unwrap();
    let broken = run(&["verify", "--suite", "recurrence", "--table", p]);
    assert_eq!(broken.status.code(), Some(1));
    assert!(stdout(&broken).contains("counterexample"));
}
