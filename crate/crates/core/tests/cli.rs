use forge::cli::{run, EXIT_CHECK, EXIT_INPUT, EXIT_OK};

fn forge(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut full = vec!["forge"];
    full.extend_from_slice(args);
    let code = run(full, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn script(name: &str) -> String {
    format!("{}/scripts/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn verify_full_chain_reports_power_one() {
    let (code, out) = forge(&["verify", "full-chain", "--g", "3"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("full-twist power: 1"));
    assert!(out.contains("e=48 sig=-32"));
}

#[test]
fn verify_empty_passes_trivially() {
    let (code, out) = forge(&["verify", "empty", "--g", "1", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["full_twist_power"], 0);
    assert_eq!(v["passed"], true);
}

#[test]
fn corrupted_json_is_an_input_error() {
    let dir = std::env::temp_dir().join(format!("forge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"genus\": 1, \"twists\": [").unwrap();
    assert_eq!(forge(&["verify", bad.to_str().unwrap()]).0, EXIT_INPUT);
    assert_eq!(forge(&["verify", "no-such-thing"]).0, EXIT_INPUT);
}

#[test]
fn non_relator_json_fails_the_check() {
    let (code, json) = forge(&["catalog", "build", "elliptic", "--g", "1"]);
    assert_eq!(code, EXIT_OK);
    let mut v: serde_json::Value = serde_json::from_str(&json).unwrap();
    v["twists"].as_array_mut().unwrap().pop();
    let dir = std::env::temp_dir().join(format!("forge-cli-nr-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("short.json");
    std::fs::write(&path, v.to_string()).unwrap();
    let (code, out) = forge(&["verify", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_CHECK, "{out}");
    assert!(out.contains("relator: FAIL"));
}

#[test]
fn catalog_build_round_trips() {
    let (code, json) = forge(&["catalog", "build", "x-pencil", "--g", "4"]);
    assert_eq!(code, EXIT_OK);
    let f = forge::mcg::Factorization::from_json(&json).unwrap();
    assert_eq!(f.mu(), 62);
    assert!(forge::invariants::spin_test(&f).unwrap());
    assert_eq!(forge(&["catalog", "build", "nonsense"]).0, EXIT_INPUT);
    assert_eq!(forge(&["catalog", "build", "x", "--g", "4", "--i", "2"]).0, EXIT_CHECK);
    let (code, list) = forge(&["catalog", "list"]);
    assert_eq!(code, EXIT_OK);
    assert!(list.lines().count() >= 9);
}

#[test]
fn report_gmax_three() {
    let (code, out) = forge(&["report", "--gmax", "3", "--format", "csv"]);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows[0], forge::cli::REPORT_CSV_HEADER);
    assert_eq!(rows.len(), 4);
    assert!(rows[1].starts_with("3,0,factorization,46,36,-24,0,false,pencil,36,-24,false,36,-24,0,false,1,pass"));
    assert!(rows[2].ends_with(",pass"));
    // H1 of X'_3(2) has no explicit word behind it
    assert!(rows[3].contains("undetermined") && rows[3].ends_with(",fail"));
    assert_eq!(code, EXIT_CHECK);
    assert_eq!(forge(&["report", "--gmax", "9"]).0, EXIT_INPUT);
}

#[test]
fn report_row_five_three_is_spin() {
    let (_, out) = forge(&["report", "--gmax", "6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 18);
    let row = rows.iter().find(|r| r["genus"] == 5 && r["index"] == 3).unwrap();
    assert_eq!(row["computed"]["spin"], true);
    assert_eq!(row["kodaira"], "0");
}

#[test]
fn replay_odd_endgame() {
    let (code, out) = forge(&["replay", "--script", &script("odd_g5_i1.forge")]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.trim_end().ends_with("final closing framing -4"));
}

#[test]
fn replay_even_endgames() {
    let (code, out) = forge(&["replay", "--script", &script("even_g6_i1.forge")]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.trim_end().ends_with("final closing framing -4"));
    let (code, out) = forge(&["replay", "--script", &script("even_g4_i2.forge"), "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().last().unwrap()["ribbon"]["closing_framing"], -1);
}

#[test]
fn replay_errors() {
    let dir = std::env::temp_dir().join(format!("forge-cli-rp-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let empty = dir.join("empty.forge");
    std::fs::write(&empty, "# nothing\n").unwrap();
    let (code, out) = forge(&["replay", "--script", empty.to_str().unwrap(), "--g", "5", "--i", "1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().filter(|l| l.starts_with("line")).count(), 1);
    assert_eq!(forge(&["replay", "--script", empty.to_str().unwrap()]).0, EXIT_INPUT);
    let bad = dir.join("bad.forge");
    std::fs::write(&bad, "INIT chain g=4 i=0\nSLIDE 3 over 1-\nBLOWDOWN 2\nLEMMA41\nLEMMA41\n").unwrap();
    let (code, out) = forge(&["replay", "--script", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_CHECK);
    assert!(out.contains("line 5"), "{out}");
}

#[test]
fn props_default_seed() {
    let (code, out) = forge(&["props", "--count", "20"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("0 failures"));
}
