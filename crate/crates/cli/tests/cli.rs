use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rootblocks"))
        .args(args)
        .env_remove("ROOTBLOCKS_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn longest_pair_in_a2_is_semisimple_with_25_blocks() {
    let o = run(&[
        "info", "A2", "--ell", "5", "--w1", "w0", "--w2", "w0", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let inv = &v["invariants"];
    assert_eq!(inv["simple_count"]["exp"], 2);
    assert_eq!(inv["simple_dim"]["exp"], 3);
    assert_eq!(inv["block_count"]["exp"], 2);
    assert_eq!(inv["is_semisimple"], true);
    assert_eq!(inv["rep_type"], "finite");
}

#[test]
fn identity_pair_in_a2_is_one_wild_block() {
    let o = run(&["info", "A2", "--ell", "5", "--w1", "", "--w2", ""]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("simple modules: 25 (5^2), each of dimension 1 (5^0)"));
    assert!(text.contains("blocks: 1 (5^0)"));
    assert!(text.contains("representation type: wild"));
}

#[test]
fn stated_lengths_are_audited() {
    let o = run(&[
        "info",
        "A3",
        "--ell",
        "5",
        "--w1",
        "w0*1,2,1",
        "--w2",
        "w0*1",
        "--stated-lengths",
        "7,9",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let audit = &v["length_audit"];
    assert_eq!(audit["recomputed"], serde_json::json!([3, 5]));
    assert_eq!(audit["stated_exceeds_longest"], true);
    assert_eq!(v["invariants"]["frak_s"], serde_json::json!([3]));
    assert_eq!(v["invariants"]["s_twist"], 2);
}

#[test]
fn borel_distinct_letters_give_one_block() {
    let o = run(&[
        "borel", "G2", "--ell", "5", "--w", "1,2", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let b = &json(&o)["invariants"]["blocks"];
    assert_eq!(b["count"]["exp"], 0);
}

#[test]
fn a2_table_has_36_rows_and_is_deterministic() {
    let a = run(&["table", "A2", "--ell", "5"]);
    let b = run(&["table", "A2", "--ell", "5"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let mut reader = csv::Reader::from_reader(a.stdout.as_slice());
    let headers = reader.headers().unwrap().clone();
    assert_eq!(headers.get(0), Some("type"));
    assert_eq!(headers.get(13), Some("frakS"));
    let rows: Vec<_> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 36);
    let semisimple = rows
        .iter()
        .filter(|r| r.get(7) == Some("true") && r.get(4) == Some("3") && r.get(5) == Some("3"))
        .count();
    assert_eq!(semisimple, 1);
}

#[test]
fn json_table_matches_csv_row_count() {
    let o = run(&["table", "B2", "--ell", "5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o).as_array().unwrap().len(), 64);
}

#[test]
fn words_round_trip_through_the_table() {
    // every reduced word printed in the table parses back to a row with the same length
    let o = run(&["table", "B2", "--ell", "5"]);
    let mut reader = csv::Reader::from_reader(o.stdout.as_slice());
    for r in reader.records().map(Result::unwrap).step_by(9) {
        let w1 = if &r[2] == "e" { "" } else { &r[2] };
        let again = run(&[
            "info", "B2", "--ell", "5", "--w1", w1, "--w2", "", "--format", "json",
        ]);
        let v = json(&again);
        assert_eq!(v["invariants"]["len1"].to_string(), r[4].to_string());
        let word: Vec<String> = v["invariants"]["w1_word"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.to_string())
            .collect();
        assert_eq!(
            if word.is_empty() {
                "e".to_string()
            } else {
                word.join(",")
            },
            r[2]
        );
    }
}

#[test]
fn cayley_quiver_on_z5_squared() {
    let o = run(&["quiver", "--group", "Z5^2", "--gens", "1,0:1;0,1:1"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph {"));
    assert_eq!(dot.matches("->").count(), 50);
    assert_eq!(dot.matches("[label=\"(").count() - 50, 25);
}

#[test]
fn poset_of_a1_has_four_nodes() {
    let o = run(&["poset", "A1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["nodes"].as_array().unwrap().len(), 4);
    assert_eq!(v["covers"].as_array().unwrap().len(), 4);
}

#[test]
fn verify_oracle_passes_on_a2() {
    let o = run(&["verify", "--suite", "oracle", "--type", "A2", "--ell", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("PASS [oracle]"));
}

#[test]
fn bad_input_exits_with_two() {
    for args in [
        &["info", "A2", "--ell", "4", "--w1", "", "--w2", ""][..],
        &["info", "Q9", "--ell", "5", "--w1", "", "--w2", ""],
        &["info", "A2", "--ell", "5", "--w1", "1,x", "--w2", ""],
        &["borel", "A2", "--ell", "5", "--w", "7"],
        &["table", "A2", "--ell", "5", "--format", "dot"],
        &["quiver", "--group", "Z5^2"],
        &["frobnicate"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn json_errors_go_to_stderr_as_json() {
    let o = run(&[
        "info", "A2", "--ell", "4", "--w1", "", "--w2", "", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(v["error"]["kind"], "bad_ell");
}

#[test]
fn cap_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_rootblocks"))
        .args(["table", "B2", "--ell", "5"])
        .env("ROOTBLOCKS_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap of 4"));
}
