use std::process::{Command, Output};

use serde_json::Value;

fn cdes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cdes"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .trim_end()
        .to_string()
}

fn ok(args: &[&str]) -> String {
    let out = cdes(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    serde_json::from_str(&ok(&full)).unwrap()
}

#[test]
fn count_examples() {
    assert_eq!(
        ok(&["count", "--n", "5", "--set", "3,5", "--method", "formula"]),
        "17"
    );
    assert_eq!(
        ok(&["count", "--n", "6", "--set", "6", "--method", "tree"]),
        "31"
    );
    assert_eq!(ok(&["count", "--n", "4", "--set", "1,3"]), "0");
    assert_eq!(ok(&["count", "--n", "4"]), "1");
    assert_eq!(
        ok(&["count", "--n", "5", "--set", "{3,5}", "--method", "brute"]),
        "17"
    );
}

#[test]
fn count_all_methods_agree() {
    let v = json(&["count", "--n", "7", "--set", "3,5,7", "--all-methods"]);
    let rows = v["result"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    let first = &rows[0]["count"];
    assert!(rows.iter().all(|r| &r["count"] == first));
}

#[test]
fn poly_example() {
    assert_eq!(
        ok(&["poly", "--n", "3"]),
        "1 + 1*x1*y + 3*x2*y + 1*x1*x2*y^2"
    );
}

#[test]
fn tableaux_example() {
    assert_eq!(
        ok(&["tableaux", "--shape", "2,2", "--method", "brute"]),
        "7"
    );
    assert_eq!(ok(&["tableaux", "--shape", "2,2", "--method", "type"]), "7");
    assert_eq!(ok(&["tableaux", "--shape", "2,2"]), "7");
}

#[test]
fn tree_weights_and_dump() {
    assert_eq!(ok(&["tree", "--gaps", "4"]), "15");
    assert_eq!(
        ok(&["tree", "--gaps", "1,1,2", "--method", "traversal"]),
        "15"
    );
    assert_eq!(ok(&["tree", "--gaps", "0"]), "0");
    assert_eq!(ok(&["tree", "--set", "3,5"]), "17");
    assert_eq!(
        ok(&["tree", "--gaps", "2", "--show"]),
        "3\n0 1 +\n  1 1 -\n  1 2 +"
    );
}

#[test]
fn genocchi_values() {
    assert_eq!(ok(&["genocchi", "--k", "2", "--n", "5"]), "155");
    let v = json(&["genocchi", "--k", "2", "--n", "4", "--brute"]);
    assert_eq!(v["result"][0]["value"], "17");
    assert_eq!(v["result"][1]["value"], "17");
}

#[test]
fn table_rows_sum_to_factorial() {
    for method in ["formula", "insertion", "brute"] {
        let v = json(&["table", "--n", "6", "--method", method]);
        let rows = v["result"].as_array().unwrap();
        assert_eq!(rows.len(), 32);
        let total: u64 = rows
            .iter()
            .map(|r| r["count"].as_str().unwrap().parse::<u64>().unwrap())
            .sum();
        assert_eq!(total, 720, "{method}");
    }
}

#[test]
fn verify_passes() {
    let out = cdes(&["verify", "--max-n", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().all(|l| l.starts_with("PASS")), "{text}");
}

#[test]
fn json_and_text_agree() {
    let cases: [&[&str]; 4] = [
        &["count", "--n", "9", "--set", "2,5,9"],
        &["poly", "--n", "4"],
        &["tableaux", "--shape", "3,3,1"],
        &["genocchi", "--k", "3", "--n", "3"],
    ];
    for args in cases {
        let v = json(args);
        assert_eq!(v["result"].as_str().unwrap(), ok(args), "{args:?}");
        assert!(v["query"].is_object());
    }
    let text = ok(&["table", "--n", "4"]);
    let v = json(&["table", "--n", "4"]);
    for (line, row) in text.lines().zip(v["result"].as_array().unwrap()) {
        assert_eq!(
            line.split('\t').nth(1).unwrap(),
            row["count"].as_str().unwrap()
        );
    }
}

#[test]
fn csv_output() {
    let out = ok(&["--format", "csv", "table", "--n", "3"]);
    assert_eq!(out, "set,count\n,1\n2,1\n3,3\n2 3,1");
}

#[test]
fn large_counts_stay_exact() {
    // cdes_64({64}) = 2^63 - 1 does not fit an i64-safe JSON number
    let v = json(&["count", "--n", "64", "--set", "64"]);
    assert_eq!(v["result"], "9223372036854775807");
}

#[test]
fn validation_errors_exit_one() {
    let bad: [&[&str]; 9] = [
        &["count", "--n", "3", "--set", "5"],
        &["count", "--n", "5", "--set", "5,3"],
        &["count", "--n", "5", "--set", "3,3"],
        &["count", "--n", "5", "--set", "a"],
        &["count", "--n", "12", "--set", "3", "--method", "brute"],
        &["--brute-cap", "99", "count", "--n", "3"],
        &["tableaux", "--shape", "1,2"],
        &["genocchi", "--k", "0", "--n", "2"],
        &["frobnicate"],
    ];
    for args in bad {
        let out = cdes(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn help_exits_zero() {
    assert_eq!(cdes(&["--help"]).status.code(), Some(0));
    assert_eq!(cdes(&["count", "--help"]).status.code(), Some(0));
}

#[test]
fn thread_count_does_not_change_results() {
    let one = ok(&["--threads", "1", "table", "--n", "7", "--method", "brute"]);
    let four = ok(&["--threads", "4", "table", "--n", "7", "--method", "brute"]);
    assert_eq!(one, four);
}
