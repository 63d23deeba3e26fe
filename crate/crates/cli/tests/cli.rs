use std::path::PathBuf;
use std::process::{Command, Output};

fn sextic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sextic")).args(args).output().expect("spawn sextic")
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn classify_json_lists_eleven_sets() {
    let o = sextic(&["--format", "json", "classify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 11);
}

#[test]
fn json_output_is_deterministic() {
    let a = sextic(&["--format", "json", "classify"]);
    let b = sextic(&["--format", "json", "classify"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn non_e7_point_is_an_input_error() {
    let o = sextic(&["classify", "--point", "E6"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn row_one_facts() {
    let o = sextic(&["group", "--row", "1", "--verify-facts"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    for needle in ["41040", "6840", "perfect=true", "ord(g1)=114"] {
        assert!(out.contains(needle), "missing {needle} in\n{out}");
    }
}

#[test]
fn unknown_row_and_flag_exit_two() {
    assert_eq!(sextic(&["group", "--row", "12"]).status.code(), Some(2));
    assert_eq!(sextic(&["classify", "--no-such-flag"]).status.code(), Some(2));
}

#[test]
fn presentation_file() {
    let p = fixture("s3.txt");
    let o = sextic(&["group", "--presentation", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("order 6"));
}

#[test]
fn malformed_presentation_reports_position() {
    let dir = tempdir();
    let p = dir.join("bad.txt");
    std::fs::write(&p, "gens 2\nrel a1 ?\n").unwrap();
    let o = sextic(&["group", "--presentation", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("line 2") && err.contains("col 7"), "{err}");
}

#[test]
fn coset_limit_is_inconclusive() {
    let o = Command::new(env!("CARGO_BIN_EXE_sextic"))
        .args(["group", "--row", "1"])
        .env("SEXTIC_MAX_COSETS", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("inconclusive:"));
}

#[test]
fn verify_against_golden_table() {
    let golden = fixture("table_e7.json");
    let o = sextic(&["verify", "--table-e7", golden.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));

    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&golden).unwrap()).unwrap();
    v["rows"][1]["complex_pairs"] = serde_json::json!(99);
    let dir = tempdir();
    let p = dir.join("tampered.json");
    std::fs::write(&p, v.to_string()).unwrap();
    let o = sextic(&["verify", "--table-e7", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let all = stdout(&o) + &stderr(&o);
    assert!(all.contains("rows[1].complex_pairs"), "{all}");
}

#[test]
fn skeleton_file_and_output_flag() {
    let dir = tempdir();
    let out = dir.join("models.json");
    let sk = fixture("skeleton_e7.txt");
    let o = sextic(&["--format", "json", "-o", out.to_str().unwrap(), "enumerate", "--skeleton", sk.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["count"], 2);
    assert_eq!(v["models"].as_array().unwrap().len(), 2);
    assert!(stdout(&o).is_empty());
}

#[test]
fn braid_identity_check() {
    let o = sextic(&["verify", "--braid-identities", "500", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

fn tempdir() -> PathBuf {
    let d = std::env::temp_dir().join(format!("sextic-cli-{}-{:?}", std::process::id(), std::thread::current().id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}
