use std::io::Write;
use std::process::{Command, Output};

fn confh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_confh")).args(args).env_remove("CONFH_SEED").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn betti_rows() {
    let o = confh(&["betti", "--manifold", "s2", "--n", "2..3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("n,degree,betti,method\n"));
    assert!(out.contains("2,0,1,") && out.contains("3,3,1,"));

    let out = stdout(&confh(&["betti", "--manifold", "r2", "--n", "4"]));
    assert!(out.contains("4,0,1,") && out.contains("4,1,1,"));
}

#[test]
fn betti_dual_and_full_agree() {
    let full = stdout(&confh(&["betti", "--manifold", "t2", "--n", "2..4", "--reduced", "off", "--rank-mode", "exact"]));
    let dual = stdout(&confh(&[
        "betti", "--manifold", "t2", "--n", "2..4", "--reduced", "off", "--rank-mode", "exact", "--complex", "dual",
    ]));
    assert_eq!(full, dual);
}

#[test]
fn betti_json_parses() {
    let o = confh(&["betti", "--manifold", "t2", "--n", "1", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    let betti: Vec<u64> = rows.iter().map(|r| r["betti"].as_u64().unwrap()).collect();
    assert_eq!(betti, [1, 2, 1]);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(confh(&["betti", "--manifold", "nosuch", "--n", "2"]).status.code(), Some(2));
    assert_eq!(confh(&["betti", "--manifold", "s2", "--n", "5..2"]).status.code(), Some(2));
    assert_eq!(confh(&["betti", "--manifold", "r2", "--n", "2", "--reduced", "on"]).status.code(), Some(2));
    assert_eq!(confh(&["betti", "--manifold", "s2", "--n", "2", "--window", "0"]).status.code(), Some(2));
    assert_eq!(confh(&["betti", "--manifold", "s2", "--manifold-file", "x.json", "--n", "2"]).status.code(), Some(2));
    assert_eq!(confh(&["extremal", "--manifold", "t2", "--offset", "2", "--window", "1"]).status.code(), Some(2));
    assert_eq!(confh(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn presets_listing() {
    let out = stdout(&confh(&["presets"]));
    assert!(out.contains("t2 d=2 closed hc=[1,2,1] k=2"));
    assert!(out.contains("cp(m)"));
    assert!(out.lines().any(|l| l.starts_with("r(2m)") && l.contains("open")));
}

#[test]
fn extremal_verdicts() {
    let o = confh(&["extremal", "--manifold", "t2", "--offset", "0", "--n-max", "16"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["expected_degree"], 1);
    assert_eq!(v["fitted_degree"], 1);
    assert_eq!(v["verdict"], "PASS");
    for key in ["manifold", "offset", "k", "expected_degree", "fitted_degree", "onset", "verdict"] {
        assert!(v.get(key).is_some(), "{key}");
    }

    let o = confh(&["extremal", "--manifold", "sigma_open:1", "--offset", "1", "--n-max", "16"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["expected_degree"], 1);

    let o = confh(&["extremal", "--manifold", "s2", "--offset", "0", "--n-max", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"verdict\":\"PASS\""));
}

#[test]
fn several_offsets_one_line_each() {
    let o = confh(&["extremal", "--manifold", "t2", "--offset", "0", "--offset", "1", "--n-max", "14"]);
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn selftest_exit_codes() {
    let o = confh(&["selftest", "--nmax", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(confh(&["selftest", "--nmax", "4", "--inject-sign-fault"]).status.code(), Some(3));
}

#[test]
fn default_selftest_passes() {
    let o = confh(&["selftest"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(" 0 failed"));
}

#[test]
fn manifold_files() {
    let mut good = tempfile::NamedTempFile::new().unwrap();
    write!(
        good,
        r#"{{"name":"sphere","dim":2,"closed":true,"orientable":true,"hc_dims":[1,0,1],
            "cup":[{{"deg_a":0,"idx_a":0,"deg_b":2,"idx_b":0,"result":[{{"deg":2,"idx":0,"coeff":"1"}}]}}]}}"#
    )
    .unwrap();
    let path = good.path().to_str().unwrap();
    let o = confh(&["betti", "--manifold-file", path, "--n", "3", "--reduced", "off"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("3,3,1,"));

    for body in ["not json", "{}", r#"{"name":"x","dim":2,"closed":true,"orientable":true,"hc_dims":[1,1],"cup":[]}"#] {
        let mut bad = tempfile::NamedTempFile::new().unwrap();
        bad.write_all(body.as_bytes()).unwrap();
        let o = confh(&["betti", "--manifold-file", bad.path().to_str().unwrap(), "--n", "2"]);
        assert_eq!(o.status.code(), Some(2), "{body}");
        assert!(o.stderr.starts_with(b"confh: "));
    }
    assert_eq!(confh(&["betti", "--manifold-file", "/nonexistent/m.json", "--n", "2"]).status.code(), Some(2));
}

#[test]
fn deterministic_output_and_seed_override() {
    let args = ["betti", "--manifold", "sigma:2", "--n", "2..6", "--seed", "9"];
    let a = confh(&args);
    let b = confh(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = Command::new(env!("CARGO_BIN_EXE_confh")).args(args).env("CONFH_SEED", "123").output().unwrap();
    assert_eq!(c.status.code(), Some(0));
    assert_eq!(a.stdout, c.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_confh")).args(args).env("CONFH_SEED", "abc").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
