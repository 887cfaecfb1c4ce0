use std::io::Write;
use std::process::{Command, Output};

use regulab::report::Report;
use serde_json::Value;

fn regulab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regulab")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = regulab(&all);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    });
    (v, out.status.code().unwrap())
}

#[test]
fn mahler_value_and_schema() {
    let (v, code) = json(&["mahler", "--family", "P", "--alpha", "3"]);
    assert_eq!(code, 0);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    assert_eq!(keys, ["command", "params", "pass", "records", "seconds", "version"]);
    let rec = &v["records"][0];
    let rkeys: Vec<&str> = rec.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    assert_eq!(rkeys, ["lhs", "name", "pass", "residual", "rhs", "tol"]);
    assert!((rec["lhs"].as_f64().unwrap() - 0.6168709387895519).abs() < 1e-9);
    assert_eq!(v["command"], "regulab mahler --family P --alpha 3 --json");
}

#[test]
fn mahler_method_is_reported() {
    let (v, _) = json(&["mahler", "--family", "S", "--alpha", "2"]);
    assert_eq!(v["params"]["method"], "jensen");
    assert!((v["records"][0]["lhs"].as_f64().unwrap() - 0.8571890749299177).abs() < 1e-9);
    let (t, code) = json(&["mahler", "--family", "P", "--alpha", "-4", "--method", "torus"]);
    assert_eq!(code, 0, "{t}");
    assert!((t["records"][0]["lhs"].as_f64().unwrap() - 1.714378149859835).abs() < 1e-6);
}

#[test]
fn out_of_regime_mahler_warns_but_succeeds() {
    let out = regulab(&["mahler", "--family", "Q", "--alpha", "3.9"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("outside the identity regime"));
}

#[test]
fn bz1_grid_passes_in_order() {
    let (v, code) = json(&["verify", "bz1", "--grid", "0.5:3.5:0.5"]);
    assert_eq!(code, 0);
    let names: Vec<String> = v["records"].as_array().unwrap().iter().map(|r| r["name"].as_str().unwrap().to_string()).collect();
    assert_eq!(names.len(), 7);
    assert!(names[0].starts_with("m(S_0.5)") && names[6].starts_with("m(S_3.5)"));
    let (v, code) = json(&["verify", "bz1", "--grid", "-10:-2:4"]);
    assert_eq!(code, 0, "{v}");
}

#[test]
fn every_target_passes_with_defaults() {
    for t in ["bz2", "lemma32", "sec42", "table1", "diamonds", "steinberg"] {
        let (v, code) = json(&["verify", t]);
        assert_eq!(code, 0, "{t}: {v}");
        assert_eq!(v["pass"], true);
    }
    let (v, _) = json(&["verify", "table1"]);
    assert_eq!(v["records"].as_array().unwrap().len(), 7);
}

#[test]
fn regulator_ratio_is_constant() {
    let (v, code) = json(&["regulator", "--grid", "1:3:2"]);
    assert_eq!(code, 0);
    let samples = v["params"]["samples"].as_array().unwrap();
    let r1 = samples[0]["ratio"].as_f64().unwrap();
    let r3 = samples[1]["ratio"].as_f64().unwrap();
    assert!((r1 - r3).abs() < 1e-4);
    let (v, code) = json(&["regulator", "--alpha", "-4"]);
    assert_eq!(code, 0);
    assert!(v["params"]["constant"].as_f64().unwrap() > 0.0);
}

#[test]
fn invalid_input_exits_with_2() {
    for args in [
        &["mahler", "--family", "X", "--alpha", "1"][..],
        &["verify", "bz1", "--grid", "4:6:1"],
        &["verify", "bz2", "--grid", "1:2:1"],
        &["verify", "bz1", "--grid", "3:1:1"],
        &["mahler", "--family", "P"],
        &["verify", "table1", "--alpha", "5"],
        &["verify", "table1", "--ap-overrides", "/nonexistent/overrides.txt"],
        &["mahler", "--family", "P", "--alpha", "1", "--tol", "-1"],
    ] {
        let out = regulab(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn failing_records_exit_with_1() {
    let out = regulab(&["verify", "bz1", "--grid", "3:3.5:0.5", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("first failing record"));
    assert!(String::from_utf8_lossy(&out.stdout).contains("first failure"));
}

#[test]
fn overrides_reach_the_l_series() {
    // E_1 has multiplicative reduction at 7: exactly one sign of a_7 satisfies the functional equation.
    let codes: Vec<Option<i32>> = [1, -1]
        .iter()
        .map(|a7| {
            let mut f = tempfile::NamedTempFile::new().unwrap();
            writeln!(f, "# forced sign\n7 {a7}").unwrap();
            regulab(&["verify", "table1", "--alpha", "1", "--ap-overrides", f.path().to_str().unwrap()]).status.code()
        })
        .collect();
    let mut sorted = codes.clone();
    sorted.sort();
    assert_eq!(sorted, [Some(0), Some(1)], "{codes:?}");
}

#[test]
fn reports_round_trip_and_are_deterministic() {
    let run = || {
        let out = regulab(&["--threads", "1", "--json", "verify", "bz2", "--grid", "4:6:1"]);
        let mut r: Report = serde_json::from_slice(&out.stdout).unwrap();
        let emitted = serde_json::to_value(&r).unwrap();
        let parsed: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(emitted, parsed);
        r.seconds = 0.0;
        r
    };
    assert_eq!(run(), run());
}

#[test]
fn csv_output() {
    let out = regulab(&["verify", "bz2", "--grid", "4:5:1", "--csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("name,lhs,rhs,residual,tol,pass"));
    assert_eq!(lines.count(), 2);
}
