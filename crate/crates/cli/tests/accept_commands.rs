use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_lienil");

fn lienil(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("run lienil")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = lienil(&[&["--format", "json"], args].concat());
    let doc: Value = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&out.stderr)));
    (doc, code(&out))
}

fn text(args: &[&str]) -> (String, i32) {
    let out = lienil(args);
    let c = code(&out);
    (String::from_utf8(out.stdout).unwrap(), c)
}

fn nums(v: &Value) -> Vec<u64> {
    v.as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect()
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap()
}

#[test]
fn indices_d4() {
    let (doc, c) = json(&["indices", "--group", "d4"]);
    assert_eq!(c, 0);
    assert_eq!(doc["command"], "indices");
    let r = &doc["report"];
    assert_eq!(r["t_lower"], 3);
    assert_eq!(r["t_upper_bruteforce"], 3);
    assert_eq!(r["t_upper_closed_form"], 3);
    assert_eq!(r["group"]["derived_order"], 2);

    let (t, c) = text(&["indices", "--group", "d4"]);
    assert_eq!(c, 0);
    assert!(t.contains("t_L = 3"), "{t}");
    assert!(t.contains("t^L = 3 (brute force), 3 (closed form)"), "{t}");
}

#[test]
fn indices_heisenberg27() {
    let (doc, c) = json(&["indices", "--group", "heisenberg27"]);
    assert_eq!(c, 0);
    assert_eq!(doc["report"]["t_lower"], 4);
    assert_eq!(doc["report"]["t_upper_bruteforce"], 4);
}

#[test]
fn indices_c9_is_commutative() {
    let (doc, c) = json(&["indices", "--group", "c9"]);
    assert_eq!(c, 0);
    let r = &doc["report"];
    assert_eq!(r["t_lower"], 2);
    assert_eq!(r["t_upper_bruteforce"], 2);
    assert_eq!(r["t_aug"], 9);
    assert_eq!(r["group"]["abelian"], true);
}

#[test]
fn formula_only_marks_oracle_unchecked() {
    let (doc, c) = json(&["indices", "--group", "maxclass243", "--formula-only"]);
    assert_eq!(c, 0);
    let r = &doc["report"];
    assert!(r["t_lower"].is_null());
    assert_eq!(r["t_upper_closed_form"], 14);
    let oracle = r["verdicts"].as_array().unwrap().iter().find(|v| v["name"] == "oracle_agreement").unwrap();
    assert_eq!(oracle["status"], "not_checked");
}

#[test]
fn series_examples() {
    let (doc, _) = json(&["series", "--group", "d4"]);
    let r = &doc["report"];
    assert_eq!(nums(&r["gamma_orders"]), [8, 2, 1]);
    assert_eq!(nums(&r["dimension_orders"]), [8, 2, 1]);
    assert_eq!(nums(&r["d_profile"]), [1]);

    let (doc, _) = json(&["series", "--group", "c3wrc3"]);
    assert_eq!(nums(&doc["report"]["gamma_orders"]), [81, 9, 3, 1]);

    let (doc, _) = json(&["series", "--group", "c27"]);
    assert_eq!(nums(&doc["report"]["gamma_orders"]), [27, 1]);
    assert!(nums(&doc["report"]["d_profile"]).is_empty());

    let (t, c) = text(&["series", "--group", "d4"]);
    assert_eq!(c, 0);
    assert!(t.contains("gamma: (8, 2, 1)"), "{t}");
    assert!(t.contains("d profile: d_(2)=1"), "{t}");
}

#[test]
fn lemmas_d4_gates_on_p() {
    let (doc, c) = json(&["lemmas", "--group", "d4"]);
    assert_eq!(c, 0);
    let r = &doc["report"];
    assert_eq!(r["samples"], 64);
    assert_eq!(r["seed"], 0);
    let quad = check(r, "quadruple_commutator_square");
    assert_eq!(quad["status"], "skipped");
    assert!(quad["note"].as_str().unwrap().contains("p != 2"));
    let rank = r["bounds"].as_array().unwrap().iter().find(|b| b["name"] == "rank_profile_bound").unwrap();
    assert_eq!(rank["applicable"], false);
}

#[test]
fn lemmas_c9_passes() {
    let (doc, c) = json(&["lemmas", "--group", "c9"]);
    assert_eq!(c, 0);
    for ch in doc["report"]["checks"].as_array().unwrap() {
        assert_eq!(ch["status"], "pass", "{ch}");
    }
}

#[test]
fn lemmas_exit_code_follows_verdicts() {
    let (doc, c) = json(&["lemmas", "--group", "heisenberg27", "--samples", "32", "--seed", "7"]);
    let r = &doc["report"];
    assert_eq!(r["samples"], 32);
    assert_eq!(r["seed"], 7);
    for ch in r["checks"].as_array().unwrap() {
        assert_eq!(ch["status"], "pass", "{ch}");
    }
    let all_hold = r["bounds"].as_array().unwrap().iter().all(|b| b["holds"] != false);
    assert_eq!(c, if all_hold { 0 } else { 1 });
}

#[test]
fn scan_index_sets() {
    let (doc, c) = json(&["scan", "--p", "2"]);
    assert_eq!(c, 0);
    let scan = &doc["report"]["scans"][0];
    assert_eq!(nums(&scan["k_values"]), [3, 4, 5, 6, 7, 8]);

    let (doc, _) = json(&["scan", "--p", "3", "--formula-only"]);
    assert_eq!(nums(&doc["report"]["scans"][0]["k_values"]), [4, 6, 8, 10, 12, 14]);

    let (doc, c) = json(&["scan", "--p", "5"]);
    assert_eq!(c, 0);
    for row in doc["report"]["scans"][0]["rows"].as_array().unwrap() {
        assert_eq!(row["t_lower"], row["t_upper"], "{row}");
    }
}

#[test]
fn scan_rows_sorted_and_filtered() {
    let (doc, _) = json(&["scan", "--p", "3", "--max-order", "27", "--formula-only"]);
    let rows = doc["report"]["scans"][0]["rows"].as_array().unwrap();
    let names: Vec<&str> = rows.iter().map(|r| r["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert!(rows.iter().all(|r| r["order"].as_u64().unwrap() <= 27));
    assert!(names.contains(&"heisenberg27"));
}

#[test]
fn input_errors_exit_2() {
    for args in [
        &["indices", "--group", "no-such-group"][..],
        &["indices", "--group", "d4", "--p", "3"],
        &["indices", "--group", "maxclass243", "--max-order", "81"],
        &["scan", "--p", "4"],
        &["indices"],
        &["frobnicate"],
    ] {
        let out = lienil(args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn presentation_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let d4 = write(dir.path(), "d4.pc", "# dihedral of order 8\np 2\ngens 3\npow 2 : x3^1\ncomm 2 1 : x3^1\n");
    let (doc, c) = json(&["indices", "--group", &d4]);
    assert_eq!(c, 0);
    let r = &doc["report"];
    assert_eq!(r["group"]["source"], "pc_file");
    assert_eq!(r["t_lower"], 3);
    assert_eq!(r["t_upper_bruteforce"], 3);

    let bad = write(dir.path(), "bad.pc", "p 2\ngens 3\ncomm 2 1 : x1^1\n");
    let out = lienil(&["indices", "--group", &bad]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("3:12"), "{err}");
}

#[test]
fn cayley_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let klein = write(dir.path(), "klein.txt", "order 4\n0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 0\n");
    let (doc, c) = json(&["indices", "--group", &klein, "--p", "2"]);
    assert_eq!(c, 0);
    let r = &doc["report"];
    assert_eq!(r["group"]["source"], "cayley_file");
    assert_eq!(r["t_lower"], 2);
    assert_eq!(r["t_aug"], 3);

    assert_eq!(code(&lienil(&["indices", "--group", &klein])), 2);

    let loop5 = write(
        dir.path(),
        "loop.txt",
        "order 5\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n",
    );
    assert_eq!(code(&lienil(&["series", "--group", &loop5, "--p", "5"])), 2);
}

#[test]
fn json_matches_shipped_schema() {
    let schema_path = concat!(env!("CARGO_MANIFEST_DIR"), "/schema/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(schema_path).unwrap()).unwrap();
    let compiled = jsonschema::JSONSchema::options()
        .with_draft(jsonschema::Draft::Draft7)
        .compile(&schema)
        .expect("schema compiles");
    for args in [
        &["indices", "--group", "d4"][..],
        &["indices", "--group", "c9xc3"],
        &["indices", "--group", "class3_243", "--formula-only"],
        &["series", "--group", "c3wrc3"],
        &["lemmas", "--group", "q8"],
        &["lemmas", "--group", "heisenberg27", "--samples", "8"],
        &["scan", "--p", "3"],
        &["scan", "--formula-only"],
    ] {
        let (doc, _) = json(args);
        if let Err(errors) = compiled.validate(&doc) {
            let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
            panic!("{args:?}: {}", msgs.join("; "));
        };
    }
}

#[test]
fn text_is_a_projection_of_json() {
    let (doc, _) = json(&["scan", "--p", "2"]);
    let (t, _) = text(&["scan", "--p", "2"]);
    for row in doc["report"]["scans"][0]["rows"].as_array().unwrap() {
        let name = row["name"].as_str().unwrap();
        let line = t.lines().find(|l| l.split_whitespace().next() == Some(name)).unwrap();
        let cols: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(cols[3], row["t_lower"].to_string(), "{line}");
        assert_eq!(cols[4], row["t_upper"].to_string(), "{line}");
    }
}
