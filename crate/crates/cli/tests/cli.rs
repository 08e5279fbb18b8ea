use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_mmm-calc"));
    c.env_remove("MMM_TRUNC");
    c
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn passing_suite_exits_zero() {
    let out = run(&["verify", "lclass"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("6/6 checks pass"));
}

#[test]
fn full_domain_kernel_suite_reports_failure() {
    let out = run(&["--format", "json", "verify", "thm18"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["suite"], "thm18");
    assert_eq!(v["passed"], false);
    let failing: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(
        failing,
        [
            "thm18.full.dim.d2",
            "thm18.full.dim.d3",
            "thm18.full.dim.d4"
        ]
    );
}

#[test]
fn unknown_suite_is_usage_error() {
    let out = run(&["verify", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown suite"));
}

#[test]
fn missing_file_is_usage_error() {
    let out = run(&[
        "kappa",
        "--bundle",
        "/definitely/not/here.json",
        "--class",
        "L_8",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn malformed_degree_names_the_field() {
    let dir = std::env::temp_dir().join(format!("mmm-calc-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(
        &path,
        r#"{"base": {"generators": [{"name": "u", "degree": "four"}]}, "rank": 2, "chern": ["0", "u"]}"#,
    )
    .unwrap();
    let out = run(&[
        "kappa-kernel",
        "--bundle",
        path.to_str().unwrap(),
        "--degree",
        "8",
    ]);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("base.generators[0].degree"));
}

#[test]
fn fixtures_load() {
    for name in [
        "bsu2.json",
        "bsu3.json",
        "bsu2_plus_trivial.json",
        "cp1xcpr.json",
    ] {
        let f = fixture(name);
        let out = run(&[
            "kappa-kernel",
            "--bundle",
            f.to_str().unwrap(),
            "--degree",
            "8",
        ]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{name}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let alg = fixture("su3_algebra.json");
    let out = run(&[
        "trg",
        "--algebra",
        alg.to_str().unwrap(),
        "--expr",
        "c_4*c_6",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn l_class_is_in_the_bsu3_kernel() {
    let f = fixture("bsu3.json");
    let out = run(&[
        "--format",
        "json",
        "kappa",
        "--bundle",
        f.to_str().unwrap(),
        "--class",
        "L_8",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["kappa"], "0");
}

#[test]
fn json_is_byte_identical_across_runs() {
    let f = fixture("bsu3.json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["--format", "json", "verify", "all"],
        vec![
            "--format",
            "json",
            "kappa-kernel",
            "--bundle",
            f.to_str().unwrap(),
            "--degree",
            "16",
            "--full",
        ],
        vec![
            "--format",
            "json",
            "weyl-kernel",
            "--d",
            "3",
            "--compare-gysin",
        ],
    ];
    for args in cases {
        let a = run(&args);
        let b = run(&args);
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn trunc_env_is_honored() {
    let out = bin()
        .env("MMM_TRUNC", "3")
        .args(["--format", "json", "ch-pushforward", "--m", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["truncation"], 3);
    assert_eq!(v["a"].as_array().unwrap().len(), 4);
    assert_eq!(v["a"][0], "3/2");
}

#[test]
fn weyl_and_gysin_agree_from_the_cli() {
    for d in 1..=4 {
        let d = d.to_string();
        let out = run(&[
            "--format",
            "json",
            "weyl-kernel",
            "--d",
            &d,
            "--compare-gysin",
        ]);
        assert_eq!(out.status.code(), Some(0));
        let v = json(&out);
        assert_eq!(v["dim"], v["gysin"]["dim"]);
        assert_eq!(v["pont_dim"], 1);
    }
}

#[test]
fn bad_expression_is_usage_error() {
    let alg = fixture("su3_algebra.json");
    let out = run(&[
        "trg",
        "--algebra",
        alg.to_str().unwrap(),
        "--expr",
        "c_4 +* q",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--expr"));
}
