use std::process::{Command, Output};

fn qmark(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmark")).args(args).output().expect("binary runs")
}

fn first_line(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).lines().next().unwrap_or_default().to_string()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn eval_examples() {
    for (args, want) in [
        (vec!["eval", "--partition", "dyadic", "(-1+sqrt(5))/2"], "2/3"),
        (vec!["eval", "--partition", "harmonic", "1/3"], "1/3"),
        (vec!["eval", "--partition", "dyadic", "0"], "0"),
        (vec!["eval", "(−1+sqrt(5))/2"], "2/3"),
        (vec!["eval", "-1+sqrt(2)"], "2/5"),
    ] {
        let out = qmark(&args);
        assert_eq!(code(&out), 0, "{args:?}");
        assert_eq!(first_line(&out), want, "{args:?}");
    }
    let out = qmark(&["eval", "1/3"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("partition: dyadic"));
}

#[test]
fn decimal_input_is_approximate() {
    let out = qmark(&["eval", "--digits", "15", "0.618033988749894848204586834365638117720309179805762862135448"]);
    assert_eq!(code(&out), 0);
    assert_eq!(first_line(&out), "0.666666666666666");
    assert!(String::from_utf8_lossy(&out.stderr).contains("approximate"));
}

#[test]
fn inverse_examples() {
    for (args, want) in [
        (vec!["inverse", "--partition", "dyadic", "2/5"], "(-1+sqrt(2))/1"),
        (vec!["inverse", "--partition", "harmonic", "2/3"], "(-1+sqrt(5))/2"),
        (vec!["inverse", "1"], "1"),
        (vec!["inverse", "1/4"], "1/3"),
    ] {
        let out = qmark(&args);
        assert_eq!(code(&out), 0, "{args:?}");
        assert_eq!(first_line(&out), want, "{args:?}");
    }
}

#[test]
fn expand_examples() {
    for (args, want) in [
        (vec!["expand", "cf", "2/3"], "[1,2]"),
        (vec!["expand", "cf", "(-1+sqrt(2))/1"], "[;2]"),
        (vec!["expand", "luroth", "--partition", "harmonic", "2/3"], "[;1]"),
    ] {
        let out = qmark(&args);
        assert_eq!(code(&out), 0, "{args:?}");
        assert_eq!(first_line(&out), want, "{args:?}");
    }
}

#[test]
fn sample_rows() {
    let out = qmark(&["sample", "3"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[0].starts_with("x,q_alpha"));
    assert!(lines.iter().any(|l| l.starts_with("1/3,1/4,")));
    let out = qmark(&["sample", "1", "--partition", "power:2"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 3);
}

#[test]
fn json_shape() {
    let out = qmark(&["sample", "2", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["meta"]["partition"], "dyadic");
    assert!(doc["meta"]["version"].is_string());
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[1]["x"], "1/2");
    assert_eq!(rows[1]["q_alpha"], "1/2");
}

#[test]
fn experiments() {
    let out = qmark(&["experiment", "conjugation", "--n", "1000", "--seed", "7"]);
    assert_eq!(code(&out), 0);
    assert_eq!(first_line(&out), "failures: 0");

    let out = qmark(&["experiment", "measure", "--grid", "100", "--partition", "harmonic", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["rows"].as_array().unwrap().len(), 101);
    assert!(doc["meta"]["max_abs_gap"].as_f64().unwrap() > 0.01);

    let out = qmark(&["experiment", "singularity", "--n", "100", "--partition", "dyadic"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert_eq!(text.lines().next().unwrap(), "h,median_quotient,fraction_below_0.1");
}

#[test]
fn deterministic_output_files() {
    let dir = std::env::temp_dir().join(format!("qmark-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (a, b) = (dir.join("a.csv"), dir.join("b.csv"));
    for path in [&a, &b] {
        let out = qmark(&["experiment", "singularity", "--n", "50", "--seed", "3", "--output", path.to_str().unwrap()]);
        assert_eq!(code(&out), 0);
        assert!(out.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(code(&qmark(&["eval", "abc"])), 2);
    assert_eq!(code(&qmark(&["eval", "(1+sqrt(5)/2"])), 2);
    assert_eq!(code(&qmark(&["--precision", "32", "eval", "1/2"])), 2);
    assert_eq!(code(&qmark(&["--depth", "0", "eval", "1/2"])), 2);
    assert_eq!(code(&qmark(&["--partition", "cubic", "eval", "1/2"])), 2);
    assert_eq!(code(&qmark(&["sample", "0"])), 2);
    assert_eq!(code(&qmark(&["eval", "3/2"])), 3);
    assert_eq!(code(&qmark(&["expand", "luroth", "(-1+sqrt(2))/1"])), 3);
    let out = qmark(&["inverse", "--partition", "geometric:1/3", "1/7"]);
    assert_eq!(code(&out), 4);
    assert!(String::from_utf8_lossy(&out.stderr).contains("depth"));
    assert_eq!(code(&qmark(&["--precision", "64", "--digits", "40", "eval", "0.6180339887498948482"])), 4);
}
