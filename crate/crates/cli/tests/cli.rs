use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn ffcube(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ffcube"));
    cmd.args(args).env_remove("FFCUBE_THREADS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("spawn ffcube")
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap_or(-1)
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ffcube-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn field_lists_small_cube_sets() {
    let o = ffcube(&["field", "--p", "13"], &[]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["field"]["cubes"], serde_json::json!([1, 5, 8, 12]));
    assert_eq!(v["field"]["generator"], 2);
    assert_eq!(
        v["field"]["jacobi"]["chi_chi2"],
        serde_json::json!({"a": -1, "b": 0})
    );
    assert_eq!(v["field"]["jacobi"]["norm_chi_chi"], 13);
}

#[test]
fn field_elides_large_cube_sets() {
    let v = json(&ffcube(&["field", "--p", "199"], &[]));
    assert_eq!(v["field"]["cube_count"], 66);
    assert_eq!(v["field"]["cubes_elided"], true);
    assert!(v["field"]["cubes"].is_null());
    let v = json(&ffcube(&["field", "--p", "193"], &[]));
    assert_eq!(v["field"]["cube_count"], 64);
    assert_eq!(v["field"]["cubes"].as_array().unwrap().len(), 64);
}

#[test]
fn field_warns_outside_residue_class() {
    let o = ffcube(&["field", "--p", "5"], &[]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not 1 mod 3"));
    let v = json(&o);
    assert_eq!(v["field"]["cubes"], serde_json::json!([1, 2, 3, 4]));
    assert!(v["field"]["jacobi"].is_null());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&ffcube(&["field", "--p", "12"], &[])), 2);
    assert_eq!(code(&ffcube(&["search", "pair", "--p", "11"], &[])), 2);
    assert_eq!(
        code(&ffcube(
            &["scan", "--task", "pair2", "--pmin", "50", "--pmax", "10"],
            &[]
        )),
        2
    );
    assert_eq!(
        code(&ffcube(&["scan", "--task", "bogus", "--pmax", "10"], &[])),
        2
    );
    assert_eq!(code(&ffcube(&["verify", "--suite", "bogus"], &[])), 2);
    assert_eq!(
        code(&ffcube(&["field", "--p", "13", "--format", "csv"], &[])),
        2
    );
    assert_eq!(code(&ffcube(&["nonsense"], &[])), 2);
}

#[test]
fn capacity_errors_exit_3() {
    assert_eq!(code(&ffcube(&["search", "selfsum", "--p", "1009"], &[])), 3);
    assert_eq!(
        code(&ffcube(&["search", "pair", "--p", "13", "--k", "9"], &[])),
        3
    );
    assert_eq!(
        code(&ffcube(
            &["search", "triple", "--p", "13", "--max-part", "4"],
            &[]
        )),
        3
    );
    assert_eq!(
        code(&ffcube(
            &[
                "scan",
                "--task",
                "diffcover",
                "--pmin",
                "990",
                "--pmax",
                "1100"
            ],
            &[]
        )),
        3
    );
}

#[test]
fn threads_flag_wins_over_environment() {
    let args = ["scan", "--task", "pair2", "--pmax", "40"];
    assert_eq!(code(&ffcube(&args, &[("FFCUBE_THREADS", "0")])), 2);
    let mut with_flag = args.to_vec();
    with_flag.extend(["--threads", "2"]);
    assert_eq!(code(&ffcube(&with_flag, &[("FFCUBE_THREADS", "0")])), 0);
    assert_eq!(code(&ffcube(&args, &[("FFCUBE_THREADS", "3")])), 0);
}

#[test]
fn scan_csv_has_fixed_columns() {
    let o = ffcube(
        &[
            "scan", "--task", "pair2", "--pmin", "2", "--pmax", "13", "--format", "csv",
        ],
        &[],
    );
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "p,task,status,exhaustive,witnesses,part_sizes,reports,failed_reports"
    );
    assert_eq!(lines[1], "7,pair2,none,true,0,,0,0");
    assert_eq!(lines[2], "13,pair2,witness,true,1,2+2,0,0");
    assert_eq!(lines.len(), 3);
}

#[test]
fn scan_examples() {
    let v = json(&ffcube(
        &[
            "scan",
            "--task",
            "diffcover",
            "--pmin",
            "2",
            "--pmax",
            "100",
        ],
        &[],
    ));
    let row7 = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["p"] == 7)
        .unwrap()
        .clone();
    assert_eq!(row7["status"], "witness");
    let v = json(&ffcube(
        &[
            "scan",
            "--task",
            "identities",
            "--pmin",
            "7",
            "--pmax",
            "60",
        ],
        &[],
    ));
    assert!(v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["status"] == "pass"));
}

#[test]
fn saved_report_revalidates() {
    let path = tmp("pair13.json");
    let p = path.to_str().unwrap();
    let o = ffcube(&["search", "pair", "--p", "13", "--out", p], &[]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let o = ffcube(&["bounds", p], &[]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["records"].as_array().unwrap().len(), 1);

    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    v["records"][0]["parts"][0] = serde_json::json!([1, 6]);
    let bad = tmp("pair13-bad.json");
    std::fs::write(&bad, serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(code(&ffcube(&["bounds", bad.to_str().unwrap()], &[])), 1);

    let junk = tmp("junk.json");
    std::fs::write(&junk, "{ not json").unwrap();
    assert_eq!(code(&ffcube(&["bounds", junk.to_str().unwrap()], &[])), 2);
    assert_eq!(
        code(&ffcube(&["bounds", "/nonexistent/ffcube.json"], &[])),
        2
    );
}

#[test]
fn verify_exit_status_tracks_failures() {
    let ok = ffcube(
        &[
            "verify", "--suite", "lemma24", "--p", "13", "--k", "2", "--trials", "20", "--seed",
            "42",
        ],
        &[],
    );
    assert_eq!(code(&ok), 0);
    let v = json(&ok);
    assert_eq!(v["reports"].as_array().unwrap().len(), 20);
    assert!(v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["exact_equal"] == true));
    let c4 = ffcube(&["verify", "--suite", "c4", "--p", "13"], &[]);
    assert_eq!(code(&c4), 1);
    assert!(String::from_utf8_lossy(&c4.stderr).contains("stated-degenerate-formula"));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--suite", "weil", "--trials", "30", "--seed", "7"];
    let strip = |o: Output| {
        let mut v = json(&o);
        v.as_object_mut().unwrap().remove("wall_time");
        v.to_string()
    };
    let a = strip(ffcube(&args, &[]));
    let b = strip(ffcube(&args, &[("FFCUBE_THREADS", "1")]));
    assert_eq!(a, b);
}
