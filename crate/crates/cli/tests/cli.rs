use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_relaxgap"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("report is json")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

#[test]
fn valley_gap_degree_relaxation() {
    let r = json(&["valley-gap", "--valleys", "10", "--cities-per-valley", "2", "--relaxation", "degree"]);
    assert_eq!(r["schema"], "relaxgap.report/1");
    assert_eq!(r["command"], "valley-gap");
    assert_eq!(r["result"]["lp_value"], "0");
    assert_eq!(r["result"]["ilp_value"], "10");
    assert_eq!(r["result"]["gap_ratio"], "undefined");
    let answer = &r["result"]["decision_answers"][0];
    assert_eq!((answer["threshold"].as_str(), answer["lp"].as_str(), answer["ilp"].as_str()), (Some("9"), Some("YES"), Some("NO")));
    assert_eq!(r["result"]["disagreements"], 1);
}

#[test]
fn explicit_thresholds_replace_the_default() {
    let r = json(&["valley-gap", "--valleys", "3", "--cities-per-valley", "2", "--x", "1/2,3"]);
    let answers = r["result"]["decision_answers"].as_array().unwrap();
    let xs: Vec<&str> = answers.iter().map(|a| a["threshold"].as_str().unwrap()).collect();
    assert_eq!(xs, ["1/2", "3"]);
    assert_eq!(answers[1]["agree"], true);
}

#[test]
fn hull_adversary_small_arc() {
    let r = json(&["hull-adversary", "--vertices", "4", "--omit", "1"]);
    assert_eq!(r["result"]["gap"], "1");
    assert_eq!(r["result"]["witness"]["x"], "3/2");
    assert_eq!(r["result"]["witness"]["y"], "21/2");
    assert_eq!(r["config"]["command"]["vertices"], 4);
}

#[test]
fn space_bounds_examples() {
    let bits = |args: &[&str]| json(args)["result"]["min_bits"].as_u64().unwrap();
    assert_eq!(bits(&["space-bounds", "--mode", "single", "--count", "1"]), 0);
    assert_eq!(bits(&["space-bounds", "--mode", "single", "--count", "2^20"]), 20);
    assert_eq!(bits(&["space-bounds", "--mode", "single", "--count", "10!"]), 22);
    assert_eq!(bits(&["space-bounds", "--mode", "subset", "--universe", "16", "--subset", "8"]), 14);
}

#[test]
fn growth_table_as_csv() {
    let out = run(&["space-bounds", "--mode", "growth", "--from", "4", "--to", "5", "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "n,universe,subset_size,min_bits\n4,16,4,11\n5,32,8,24\n");
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for format in ["json", "csv"] {
        let args = ["hull-scan", "--vertices", "40", "--budget", "20", "--samples", "10", "--seed", "3", "--format", format];
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{format}");
    }
}

#[test]
fn seed_selects_the_sample() {
    let scan = |seed: &str| json(&["hull-scan", "--vertices", "40", "--budget", "20", "--samples", "5", "--seed", seed]);
    let (a, b) = (scan("1"), scan("2"));
    assert_eq!(a["config"]["seed"], 1);
    assert_ne!(a["result"]["subsets"], b["result"]["subsets"]);
    assert_eq!(a["result"]["with_gap"], 5);
}

#[test]
fn output_flag_writes_the_same_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let args = ["model-demo", "--step", "1/2"];
    let stdout = run(&args).stdout;
    let out = bin().args(args).arg("--output").arg(&path).output().unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written: Value = serde_json::from_slice(&fs::read(&path).unwrap()).unwrap();
    let printed: Value = serde_json::from_slice(&stdout).unwrap();
    assert_eq!(written["result"], printed["result"]);
    assert_eq!(written["result"]["grid_monotone"], false);
    assert_eq!(written["result"]["witness"][1], "1/2");
}

#[test]
fn integer_grid_is_monotone() {
    let r = json(&["model-demo", "--start", "0", "--end", "8", "--step", "1"]);
    assert_eq!(r["result"]["grid_monotone"], true);
    assert_eq!(r["result"]["witness"], Value::Null);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["no-such-command"]), 2);
    assert_eq!(code(&["hull-adversary", "--vertices", "4"]), 2);
    assert_eq!(code(&["hull-adversary", "--vertices", "4", "--omit", "9"]), 3);
    assert_eq!(code(&["model-demo", "--step", "0"]), 3);
    assert_eq!(code(&["space-bounds", "--mode", "single", "--count", "0"]), 3);
    assert_eq!(code(&["valley-gap", "--valleys", "11", "--cities-per-valley", "2"]), 4);
    assert_eq!(code(&["check-flow", "--valleys", "2", "--cities-per-valley", "2", "--flow", "/nonexistent/flow.json"]), 5);
}

#[test]
fn instance_file_matches_generated_instance() {
    let path = data("valleys_k4_c2.json");
    let from_file = json(&["cutting-plane", "--instance", path.to_str().unwrap()]);
    let generated = json(&["cutting-plane", "--valleys", "4", "--cities-per-valley", "2"]);
    assert_eq!(from_file["result"], generated["result"]);
    assert_eq!(from_file["result"]["final_value"], "4");
    assert_eq!(from_file["result"]["complete"], true);
}

#[test]
fn cutting_plane_table_is_nondecreasing() {
    let out = run(&["cutting-plane", "--valleys", "4", "--cities-per-valley", "2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("round,lp_value,constraints,cut_added,cut_value"));
    let values: Vec<i64> = lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert!(values.windows(2).all(|w| w[0] <= w[1]));
    assert_eq!(values.last(), Some(&4));
}

#[test]
fn malformed_instance_files_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let original: Value = serde_json::from_str(&fs::read_to_string(data("valleys_k4_c2.json")).unwrap()).unwrap();
    let cases = [
        ("syntax", "{ not json".to_string()),
        ("version", {
            let mut v = original.clone();
            v["version"] = 2.into();
            v.to_string()
        }),
        ("params", {
            let mut v = original.clone();
            v["cost"][0][1] = "1".into();
            v.to_string()
        }),
        ("rational", {
            let mut v = original.clone();
            v["cost"][0][1] = "1/0".into();
            v.to_string()
        }),
    ];
    for (name, text) in cases {
        let path = dir.path().join(format!("{name}.json"));
        fs::write(&path, text).unwrap();
        assert_eq!(code(&["valley-gap", "--instance", path.to_str().unwrap()]), 3, "{name}");
    }
}

#[test]
fn three_circulation_flow() {
    let flow = data("three_circulations_k10_c2.json");
    let r = json(&[
        "check-flow", "--valleys", "10", "--cities-per-valley", "2",
        "--flow", flow.to_str().unwrap(), "--valley-cuts", "--cut", "0,1,2,3",
    ]);
    let res = &r["result"];
    assert_eq!(res["degree_ok"], true);
    assert_eq!(res["crossing_cost"], "9");
    assert_eq!(res["cost"], "9");
    assert_eq!(res["cuts"].as_array().unwrap().len(), 11);
    assert_eq!(res["violated_cuts"], 3);
}

#[test]
fn decide_through_lp_and_exactly() {
    let ask = |via: &str| {
        json(&["decide", "--valleys", "10", "--cities-per-valley", "2", "--x", "9", "--via", via])["result"]["answer"].clone()
    };
    assert_eq!(ask("lp"), "YES");
    assert_eq!(ask("ilp"), "NO");
}

#[test]
fn solve_lp_file() {
    let path = data("small_lp.json");
    let p = path.to_str().unwrap();
    let lp = json(&["solve-lp", "--program", p]);
    assert_eq!(lp["result"]["value"], "21");
    assert_eq!(lp["result"]["point"][1], "3/2");
    let ilp = json(&["solve-lp", "--program", p, "--integer-all"]);
    assert_eq!(ilp["result"]["value"], "20");
    assert_eq!(code(&["solve-lp", "--program", p, "--integer-all", "--max-nodes", "1"]), 4);
}
