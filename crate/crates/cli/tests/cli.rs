use std::path::PathBuf;
use std::process::{Command, Output};

use hpm_taylor::verify::{EquivalenceReport, ResidualReport};
use hpm_taylor_cli::output::{ExpandOutput, HpmOutput, SolveOutput};
use serde::de::DeserializeOwned;
use serde::Serialize;

fn example(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hpm-taylor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn sec3() -> String {
    example("paper_sec3.prob").display().to_string()
}

fn assert_round_trip<T: Serialize + DeserializeOwned>(json: &str) {
    let value: T = serde_json::from_str(json).unwrap();
    assert_eq!(serde_json::to_string_pretty(&value).unwrap() + "\n", json);
}

#[test]
fn solve_golden_output() {
    let out = run(&["solve", &sec3(), "--order", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let expected = "\
u[0] = 0
u[1] = sin(x1)^2*cos(x2)
u[2] = 0
u[3] = 0
u[4] = 0
u[5] = 0
u[6] = 0
verdict: exact (linear-exact)
";
    assert_eq!(stdout(&out), expected);
}

#[test]
fn solve_wave_is_not_exact() {
    let out = run(&["solve", example("wave.prob").to_str().unwrap(), "--order", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("u[2] = -1/2*sin(x1)\n"), "{text}");
    assert!(text.contains("u[4] = 1/24*sin(x1)\n"), "{text}");
    assert!(text.ends_with("verdict: not exact\n"));
}

#[test]
fn systems_print_bracketed_vectors() {
    let out = run(&["solve", example("coupled.prob").to_str().unwrap(), "--order", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "u[0] = [x1^2*x2, sin(x2)]\nu[1] = [0, x1 + x2]\nverdict: not exact\n"
    );
}

#[test]
fn compare_reports_agreement() {
    let out = run(&["compare", &sec3(), "--corrections", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).take(6).collect();
    for (d, row) in rows.iter().enumerate() {
        let cells: Vec<&str> = row.split_whitespace().collect();
        assert_eq!(cells[..2], [d.to_string().as_str(), "ok"], "{row}");
    }
    assert!(text.ends_with("equivalent with 2 corrections: yes\n"));
}

#[test]
fn compare_coupled_system() {
    let out = run(&[
        "compare",
        example("coupled.prob").to_str().unwrap(),
        "--corrections",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn residual_passes() {
    for name in ["paper_sec3.prob", "wave.prob", "coupled.prob"] {
        let out = run(&["residual", example(name).to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert!(stdout(&out).contains(": pass\n"));
    }
}

#[test]
fn hpm_lists_corrections() {
    let out = run(&["hpm", example("wave.prob").to_str().unwrap(), "--corrections", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("u^(0)[0] = sin(x1)\n"), "{text}");
    assert!(text.contains("u^(1)[2] = -1/2*sin(x1)\n"), "{text}");
    assert!(text.contains("u^(2)[4] = 1/24*sin(x1)\n"), "{text}");
    assert!(text.contains("partial sum through degree 5:\n"), "{text}");
}

#[test]
fn expand_output() {
    let out = run(&["expand", "--expr", "x1^2*exp(t)", "--order", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "[x1^2, x1^2, 1/2*x1^2, 1/6*x1^2]\n");
    let out = run(&["expand", "--expr", "5", "--order", "2"]);
    assert_eq!(stdout(&out), "[5, 0, 0]\n");
}

#[test]
fn output_is_deterministic() {
    let (sec3, coupled) = (sec3(), example("coupled.prob").display().to_string());
    let args: [&[&str]; 3] = [
        &["--format", "json", "compare", &sec3, "--corrections", "3"],
        &["solve", &coupled, "--seed", "7"],
        &["--format", "json", "residual", &coupled],
    ];
    for a in args {
        let first = run(a);
        let second = run(a);
        assert_eq!(first.stdout, second.stdout);
        assert_eq!(first.status.code(), second.status.code());
    }
}

#[test]
fn json_reports_round_trip() {
    let wave = example("wave.prob").display().to_string();
    let json = |args: &[&str]| {
        let mut full = vec!["--format", "json"];
        full.extend_from_slice(args);
        let out = run(&full);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        stdout(&out)
    };
    assert_round_trip::<SolveOutput>(&json(&["solve", &sec3()]));
    assert_round_trip::<HpmOutput>(&json(&["hpm", &wave, "--corrections", "3"]));
    assert_round_trip::<EquivalenceReport>(&json(&["compare", &wave, "--corrections", "3"]));
    assert_round_trip::<ResidualReport>(&json(&["residual", &wave]));
    assert_round_trip::<ExpandOutput>(&json(&["expand", "--expr", "sin(t)*x1", "--order", "5"]));

    let solved: SolveOutput = serde_json::from_str(&json(&["solve", &sec3()])).unwrap();
    assert_eq!(solved.coefficients[1], ["sin(x1)^2*cos(x2)"]);
    assert!(solved.exact);
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad_expr = dir.path().join("bad_expr.prob");
    std::fs::write(
        &bad_expr,
        std::fs::read_to_string(example("paper_sec3.prob"))
            .unwrap()
            .replace("\"0\"", "\"x1 + * 2\""),
    )
    .unwrap();
    let singular = dir.path().join("singular.prob");
    std::fs::write(
        &singular,
        std::fs::read_to_string(example("paper_sec3.prob"))
            .unwrap()
            .replace("[[\"1\"]]", "[[\"0\"]]"),
    )
    .unwrap();
    let missing = dir.path().join("missing.prob");

    let cases: Vec<Vec<String>> = vec![
        vec!["solve".into(), bad_expr.display().to_string()],
        vec!["solve".into(), singular.display().to_string()],
        vec!["solve".into(), missing.display().to_string()],
        vec![
            "expand".into(),
            "--expr".into(),
            "x1 +".into(),
            "--order".into(),
            "2".into(),
        ],
        vec![
            "expand".into(),
            "--expr".into(),
            "ln(t)".into(),
            "--order".into(),
            "2".into(),
        ],
        vec![
            "expand".into(),
            "--expr".into(),
            "x3".into(),
            "--order".into(),
            "2".into(),
            "--dims".into(),
            "2".into(),
        ],
        vec!["--tolerance".into(), "-1".into(), "solve".into(), sec3()],
        vec!["compare".into(), sec3(), "--corrections".into(), "0".into()],
        vec!["frobnicate".into()],
    ];
    for case in cases {
        let args: Vec<&str> = case.iter().map(String::as_str).collect();
        let out = run(&args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn parse_errors_name_the_offset() {
    let out = run(&["expand", "--expr", "x1 + * 2", "--order", "1"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains('5'), "{err}");
}
