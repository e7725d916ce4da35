use std::process::{Command, Output};

fn grc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grc")).args(args).env_remove("GRC_WORKERS").output().expect("run grc")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = grc(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn dihedral_code_is_self_dual() {
    let args = ["construct", "--group", "d8@swap", "--element", "1+b*a+b*a^2+b*a^3"];
    let o = grc(&args);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("[8, 4, 4]"), "{text}");
    let v = json(&args);
    assert_eq!(v["log2_size"], 4);
    assert_eq!(v["self_dual"], true);
    assert_eq!(v["min_distance_hamming"]["exact"], 4);
}

#[test]
fn modular_group_code() {
    let v = json(&["construct", "--group", "m16", "--element", "(1+s+s^2+s^3)*(1+t)"]);
    assert_eq!(v["length"], 16);
    assert_eq!(v["log2_size"], 5);
    assert_eq!(v["min_distance_hamming"]["exact"], 4);
}

#[test]
fn zero_element_gives_zero_code() {
    let v = json(&["construct", "--group", "c6", "--element", "0"]);
    assert_eq!(v["log2_size"], 0);
    let d = json(&["dual", "--group", "c6", "--element", "0"]);
    assert_eq!(d["log2_size"], 6);
}

#[test]
fn gray_image_of_r1_code() {
    let v = json(&["gray", "--ring", "r1", "--group", "c10@evenodd", "--element", "1+u1*h+h^5+u1*h^9"]);
    assert_eq!(v["length"], 20);
    assert_eq!(v["log2_size"], 10);
    assert_eq!(v["min_distance_hamming"]["exact"], 4);
    assert_eq!(v["self_dual"], true);
}

#[test]
fn gray_over_f2_is_an_error() {
    let o = grc(&["gray", "--group", "c6", "--element", "1+h"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn min_distance_threshold_sets_exit_status() {
    let base = ["construct", "--group", "d8@swap", "--element", "1+b*a+b*a^2+b*a^3", "--min-distance"];
    let mut ok = base.to_vec();
    ok.push("4");
    assert_eq!(grc(&ok).status.code(), Some(0));
    let mut bad = base.to_vec();
    bad.push("5");
    assert_eq!(grc(&bad).status.code(), Some(1));
}

#[test]
fn parse_errors_exit_with_two() {
    let o = grc(&["construct", "--group", "d8", "--element", "1+q"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position"));
    assert_eq!(grc(&["construct", "--group", "d7", "--element", "1"]).status.code(), Some(2));
    assert_eq!(grc(&["construct", "--ring", "r9", "--group", "c2", "--element", "1"]).status.code(), Some(2));
}

#[test]
fn enumerators_agree_with_construct() {
    let args = ["--ring", "r1", "--group", "c6", "--element", "1+u1*h^2"];
    let mut e = vec!["enum"];
    e.extend(args);
    let mut c = vec!["construct"];
    c.extend(args);
    let en = json(&e);
    let co = json(&c);
    assert_eq!(en["hamming"], co["weight_enumerator"]);
    let total: u64 = en["lee"].as_array().unwrap().iter().map(|p| p[1].as_u64().unwrap()).sum();
    assert_eq!(total, 1 << co["log2_size"].as_u64().unwrap());
}

#[test]
fn search_with_no_survivors() {
    let o = grc(&["search", "--name", "golay_sl23"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("final: 0"));
}

#[test]
fn census_breakdown() {
    let v = json(&["search", "--name", "census_c3d8", "--workers", "2"]);
    assert_eq!(v["final_count"], 256);
    assert_eq!(v["classes"]["self_dual"]["count"], 64);
    assert_eq!(v["classes"]["fsd_not_sd"]["count"], 192);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["ok"] == true));
}

#[test]
fn pattern_file_with_failing_expectation() {
    let dir = std::env::temp_dir().join(format!("grc-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pattern.json");
    let pattern = r#"{
        "name": "tiny",
        "ring": "f2",
        "group": "d8@swap",
        "base": "1",
        "free": ["b", "b*a", "b*a^2", "b*a^3"],
        "filters": ["self_dual"],
        "expected": {"total": 16, "final": 999}
    }"#;
    std::fs::write(&path, pattern).unwrap();
    let o = grc(&["search", "--pattern", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("candidates: 16"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn unknown_search_name() {
    assert_eq!(grc(&["search", "--name", "nope"]).status.code(), Some(2));
}

#[test]
fn verify_selected_suites() {
    let o = grc(&["verify", "--suite", "homomorphism", "--suite", "macwilliams", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("PASS homomorphism"));
    assert!(text.contains("PASS macwilliams"));
    assert!(!text.contains("displayed"));
}

#[test]
fn verify_all() {
    let v = json(&["verify", "--all"]);
    assert_eq!(v["ok"], true);
    assert_eq!(v["matrices"].as_array().unwrap().len(), 3);
    assert_eq!(v["suites"].as_array().unwrap().len(), 6);
}
