use std::process::{Command, Output};

use polydescent_cli::trace::TraceLine;

fn polydescent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polydescent"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn trace_lines(text: &str) -> Vec<TraceLine> {
    text.lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn solve_descent_from_critical_point() {
    let o = polydescent(&["solve", "--poly", "-1 0, 0 0, 1 0", "--seed", "0 0"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let lines = trace_lines(&stdout(&o));
    assert_eq!(lines.len(), 2);
    assert_eq!((lines[0].k, lines[0].theta), (Some(2), Some(0.0)));
    assert_eq!((lines[0].f, lines[1].f), (1.0, 0.0));
    assert_eq!((lines[1].re, lines[1].im), (-1.0, 0.0));
    assert!(stderr(&o).contains("status: converged"));
}

#[test]
fn solve_newton_from_critical_point_exits_2() {
    let o = polydescent(&["solve", "--poly", "-1 0, 0 0, 1 0", "--method", "newton"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("critical"), "{}", stderr(&o));
}

#[test]
fn trace_json_field_names() {
    let o = polydescent(&["solve", "--poly", "-1 0, 0 0, 0 0, 1 0", "--seed", "2 1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    let mut keys: Vec<_> = first.as_object().unwrap().keys().cloned().collect();
    keys.sort();
    assert_eq!(
        keys,
        [
            "F",
            "abs_p",
            "alpha",
            "backtracks",
            "im",
            "iter",
            "k",
            "re",
            "theta"
        ]
    );
    let last: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert!(last["k"].is_null() && last["alpha"].is_null());
    let fs: Vec<f64> = trace_lines(&text).iter().map(|l| l.f).collect();
    assert!(fs.windows(2).all(|w| w[1] < w[0]), "{fs:?}");
}

#[test]
fn coefficient_file_input_and_trace_file_output() {
    let dir = tempfile::tempdir().unwrap();
    let poly = dir.path().join("p.txt");
    std::fs::write(&poly, "# z^2 + 1\n1 0\n\n0 0\n1 0\n").unwrap();
    let out = dir.path().join("trace.jsonl");
    let o = polydescent(&[
        "solve",
        "--file",
        poly.to_str().unwrap(),
        "--seed",
        "0.5 0.5",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let lines = trace_lines(&std::fs::read_to_string(&out).unwrap());
    let last = lines.last().unwrap();
    assert!((last.im - 1.0).abs() < 1e-12 && last.re.abs() < 1e-12);
}

#[test]
fn malformed_input_exits_1() {
    assert_eq!(polydescent(&["solve", "--bogus"]).status.code(), Some(1));
    assert_eq!(polydescent(&["solve"]).status.code(), Some(1));
    assert_eq!(
        polydescent(&["solve", "--poly", "1 0, x"]).status.code(),
        Some(1)
    );
    assert_eq!(
        polydescent(&["solve", "--poly", "3 0"]).status.code(),
        Some(1)
    );
    assert_eq!(
        polydescent(&["--tol", "-1", "roots", "--poly", "1 0, 1 0"])
            .status
            .code(),
        Some(1)
    );

    let dir = tempfile::tempdir().unwrap();
    let poly = dir.path().join("bad.txt");
    std::fs::write(&poly, "1 0\n2\n").unwrap();
    let o = polydescent(&["roots", "--file", poly.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("bad.txt:2"), "{}", stderr(&o));
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(polydescent(&["--help"]).status.code(), Some(0));
    assert_eq!(polydescent(&["--version"]).status.code(), Some(0));
}

#[test]
fn roots_of_unity() {
    let o = polydescent(&["roots", "--poly", "-1 0, 0 0, 0 0, 1 0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("degree: 3\n"));
    assert_eq!(text.matches("status: converged").count(), 3);
}

#[test]
fn basin_writes_ppm() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("b.ppm");
    let o = polydescent(&[
        "basin",
        "--poly",
        "-1 0, 0 0, 0 0, 1 0",
        "--px-w",
        "16",
        "--px-h",
        "9",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let bytes = std::fs::read(&out).unwrap();
    let header = b"P6\n16 9\n255\n";
    assert_eq!(&bytes[..header.len()], header);
    assert_eq!(bytes.len(), header.len() + 3 * 16 * 9);
}

#[test]
fn bench_is_deterministic_and_descent_is_no_worse() {
    let args = [
        "--seed-rng",
        "3",
        "bench",
        "--family",
        "random",
        "--degree",
        "5",
        "--grid",
        "15",
    ];
    let a = polydescent(&args);
    let b = polydescent(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    let rate = |text: &str, method: &str| -> f64 {
        let line = text.lines().find(|l| l.starts_with(method)).unwrap();
        let field = line.split_whitespace().nth(1).unwrap();
        field.trim_end_matches('%').parse().unwrap()
    };
    let text = stdout(&a);
    assert!(rate(&text, "descent") >= rate(&text, "newton"), "{text}");
}

#[test]
fn verify_is_deterministic() {
    let args = ["--seed-rng", "42", "verify", "--trials", "1"];
    let a = polydescent(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, polydescent(&args).stdout);
    assert_eq!(
        stdout(&a).lines().filter(|l| l.starts_with("PASS")).count(),
        7
    );
}
