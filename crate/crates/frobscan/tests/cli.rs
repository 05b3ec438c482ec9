use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn frobscan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frobscan"))
        .args(args)
        .env_remove("FROBSCAN_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = vec!["--format", "json"];
    a.extend_from_slice(args);
    let o = frobscan(&a);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}{}",
        stdout(&o),
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn count_threefold_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let x1 = write(dir.path(), "x1.var", include_str!("../fixtures/x1.var"));
    for method in ["brute-force", "char-sum", "auto"] {
        let v = json(&["count", "--variety", &x1, "--p", "7", "--method", method]);
        assert_eq!(v["records"][0]["n_affine"], 584, "{method}");
        assert_eq!(v["records"][0]["good_reduction"], true);
    }
}

#[test]
fn count_empty_variety() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.var", "vars: x y\neq: 1\n");
    let v = json(&["count", "--variety", &empty, "--p", "5"]);
    assert_eq!(v["records"][0]["n_affine"], 0);
}

#[test]
fn text_and_csv_output() {
    let o = frobscan(&["sieve-bound", "gamma", "--g", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "g: 2\ngamma: 24\n");
    let o = frobscan(&[
        "--format",
        "csv",
        "count",
        "--variety",
        "builtin:cm_curve.var",
        "--primes-up-to",
        "7",
    ]);
    assert_eq!(
        stdout(&o),
        "p,n_affine,n_mod_p,trace,good_reduction\n2,2,0,,false\n3,3,0,0,true\n5,3,3,2,true\n7,7,0,0,true\n"
    );
}

#[test]
fn exit_codes_and_json_errors() {
    let o = frobscan(&[
        "--format",
        "json",
        "count",
        "--variety",
        "/nonexistent.var",
        "--p",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["error"]["code"], "io");

    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.var", "vars: x\neq: x +\n");
    let o = frobscan(&["--format", "json", "count", "--variety", &bad, "--p", "5"]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["error"]["code"], "parse");
    assert!(v["error"]["message"].as_str().unwrap().contains("line 2"));

    let o = frobscan(&["--format", "json", "frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["error"]["code"], "usage");

    let o = frobscan(&["count", "--variety", "builtin:x1.var", "--p", "7", "--frob"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());

    let o = frobscan(&["verify", "cq", "--q", "15"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn truncated_scan_reports_partial() {
    let dir = tempfile::tempdir().unwrap();
    let v = write(dir.path(), "hyp.var", "vars: x y\neq: x*y - 1\n");
    let o = frobscan(&[
        "--format",
        "json",
        "--work-cap",
        "50",
        "density",
        "--variety",
        &v,
        "--not-dividing",
        "1",
        "--x-max",
        "100",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let e: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(e["error"]["code"], "truncated");
    assert_eq!(e["error"]["partial"]["x_max"], 10);
}

#[test]
fn density_resume_matches_single_pass() {
    let dir = tempfile::tempdir().unwrap();
    let base = [
        "density",
        "--variety",
        "builtin:cm_curve.var",
        "--not-dividing",
        "0",
    ];
    let run = |x: &str, resume: Option<&str>| {
        let mut a = vec!["--format", "json"];
        a.extend_from_slice(&base);
        a.extend_from_slice(&["--x-max", x]);
        if let Some(r) = resume {
            a.extend_from_slice(&["--resume", r]);
        }
        let o = frobscan(&a);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&o.stderr)
        );
        stdout(&o)
    };
    let first = write(dir.path(), "part.json", &run("777", None));
    let resumed = run("5000", Some(&first));
    assert_eq!(resumed, run("5000", None));
    let v: Value = serde_json::from_str(&resumed).unwrap();
    assert_eq!(v["checkpoints"][0][0], 100);
    assert_eq!(v["checkpoints"][1][0], 1000);

    let o = frobscan(&[
        "density",
        "--variety",
        "builtin:c17.var",
        "--not-dividing",
        "0",
        "--x-max",
        "9000",
        "--resume",
        &first,
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_independent_of_thread_count() {
    let cases: [&[&str]; 4] = [
        &[
            "density",
            "--variety",
            "builtin:cm_curve.var",
            "--residue",
            "1",
            "--modulus",
            "4",
            "--x-max",
            "20000",
        ],
        &[
            "family-scan",
            "--f",
            "t^4 + 1",
            "--alpha",
            "0",
            "sieve",
            "--t",
            "1000",
            "--q-cap",
            "300",
        ],
        &["verify", "nonex", "--pmax", "60"],
        &[
            "construct",
            "genus2",
            "--primes-below",
            "40",
            "--seed",
            "11",
        ],
    ];
    for args in cases {
        let outs: Vec<String> = ["1", "2", "7"]
            .iter()
            .map(|t| {
                let mut a = vec!["--format", "json", "--threads", t];
                a.extend_from_slice(args);
                let o = frobscan(&a);
                assert_eq!(
                    o.status.code(),
                    Some(0),
                    "{args:?}: {}",
                    String::from_utf8_lossy(&o.stderr)
                );
                stdout(&o)
            })
            .collect();
        assert!(outs.windows(2).all(|w| w[0] == w[1]), "{args:?}");
    }
}

#[test]
fn threads_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_frobscan"))
        .args(["sieve-bound", "gamma", "--g", "1"])
        .env("FROBSCAN_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_frobscan"))
        .args(["sieve-bound", "gamma", "--g", "1"])
        .env("FROBSCAN_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn least_prime_subcommands() {
    assert_eq!(
        json(&["least-prime", "ap", "--q", "457", "--a", "1"])["p"],
        13711
    );
    assert_eq!(
        json(&["least-prime", "ap", "--q", "10", "--a", "-1"])["p"],
        19
    );
    let v = json(&[
        "least-prime",
        "variety",
        "--variety",
        "builtin:c17.var",
        "--bound",
        "1000",
    ]);
    assert_eq!(v["p"], 103);
    let v = json(&[
        "least-prime",
        "variety",
        "--variety",
        "builtin:c17.var",
        "--bound",
        "100",
    ]);
    assert_eq!(v["p"], Value::Null);
}

#[test]
fn constructions_and_verifiers() {
    let v = json(&["construct", "cq", "--q", "17"]);
    assert_eq!(v["report"]["p0"], 103);
    assert_eq!(v["report"]["n_at_p0"], 87);
    assert_eq!(v["report"]["holds"], true);
    let v = json(&["verify", "genus2-pair"]);
    assert_eq!(v["holds"], true);
    let v = json(&[
        "verify",
        "nonex",
        "--surface",
        "builtin:nonex.srf",
        "--pmax",
        "101",
    ]);
    assert_eq!(v["holds"], true);
    let v = json(&["construct", "genus2", "--primes-below", "30"]);
    assert_eq!(v["holds"], true);
}

#[test]
fn verify_paper_passes_and_detects_injected_error() {
    let o = frobscan(&["verify-paper", "--skip", "c457"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let dir = tempfile::tempdir().unwrap();
    let x1 = include_str!("../fixtures/x1.var").replace("20*y^5", "21*y^5");
    write(dir.path(), "x1.var", &x1);
    let fx = dir.path().to_str().unwrap();
    let o = frobscan(&[
        "--format",
        "json",
        "--fixture-dir",
        fx,
        "verify-paper",
        "--skip",
        "c457,c17,genus2",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let failed: Vec<&str> = v["items"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|i| i["pass"] == false)
        .map(|i| i["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["x1.bruteforce", "x1.charsum"]);
    assert_eq!(v["items"][0]["expected"], 584);

    let dir = tempfile::tempdir().unwrap();
    let values =
        include_str!("../fixtures/reference_values.txt").replace("gamma.g2: 24", "gamma.g2: 25");
    write(dir.path(), "reference_values.txt", &values);
    let o = frobscan(&[
        "--fixture-dir",
        dir.path().to_str().unwrap(),
        "verify-paper",
        "--skip",
        "c457,c17,genus2,x1",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("gamma.g2"));
}
