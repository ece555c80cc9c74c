use std::path::PathBuf;
use std::process::Command;

use tempfile::TempDir;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("entropic").chain(args.iter().copied());
    let code = entropic_cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn scenario(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn field(output: &str, key: &str) -> String {
    output
        .lines()
        .find_map(|l| l.strip_prefix(key).map(|r| r.trim().to_string()))
        .unwrap_or_else(|| panic!("no `{key}` in\n{output}"))
}

const DICE: &str = "[variables]\nface = 1 2 3 4 5 6\n[constraints]\nexpect value(face) = 4.5\n";
const COPIED: &str = "[variables]\nx = 0 1\ny = 0 1\n[weights]\n0.5 0 0 0.5\n";

/// Posterior `q_k ∝ exp(λk)` with mean 4.5, found by bisection on `λ`.
fn dice_oracle() -> Vec<f64> {
    let mean = |l: f64| {
        let w: Vec<f64> = (1..=6).map(|k| (l * k as f64).exp()).collect();
        let z: f64 = w.iter().sum();
        (w.iter().enumerate().map(|(i, w)| (i + 1) as f64 * w).sum::<f64>() / z, z)
    };
    let (mut lo, mut hi) = (-5.0, 5.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mean(mid).0 < 4.5 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let l = 0.5 * (lo + hi);
    let z = mean(l).1;
    (1..=6).map(|k| (l * k as f64).exp() / z).collect()
}

#[test]
fn truth_table_of_implication() {
    let (code, out, err) = run(&["tt", "a -> b"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out, "a  b  a -> b\nT  T  T\nT  F  F\nF  T  T\nF  F  T\n");
}

#[test]
fn dice_update_matches_bisection() {
    let dir = TempDir::new().unwrap();
    let path = scenario(&dir, "dice.scn", DICE);
    let (code, out, err) = run(&["update", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let oracle = dice_oracle();
    for (k, q) in oracle.iter().enumerate() {
        let row = field(&out, &format!("face={}", k + 1));
        let posterior: f64 = row.split_whitespace().nth(1).unwrap().parse().unwrap();
        assert!((posterior - q).abs() <= 1e-6, "face {}: {posterior} vs {q}", k + 1);
    }
}

#[test]
fn copied_bits_share_one_nat() {
    let dir = TempDir::new().unwrap();
    let path = scenario(&dir, "copied.scn", COPIED);
    let (code, out, _) = run(&["correlations", path.to_str().unwrap(), "--split", "x|y"]);
    assert_eq!(code, 0);
    assert_eq!(field(&out, "mutual information"), "0.693147180560");
    let (_, out, _) = run(&["correlations", path.to_str().unwrap(), "--split", "x|y", "--bits"]);
    assert_eq!(field(&out, "mutual information"), "1.00000000000");
}

#[test]
fn conditional_probability_and_bayes() {
    let dir = TempDir::new().unwrap();
    let path = scenario(&dir, "dice.scn", DICE);
    let p = path.to_str().unwrap();
    let (code, out, _) = run(&["prob", p, "face=1 | face=2", "given", "!face=6"]);
    assert_eq!(code, 0);
    assert_eq!(out, "P(face=1 | face=2 given !face=6) = 0.400000000000\n");
    let (code, _, err) = run(&["prob", p, "face=1", "if", "face=2"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:usage:"));

    let copied = scenario(&dir, "copied.scn", COPIED);
    let (code, out, _) = run(&["bayes", copied.to_str().unwrap(), "--observe", "x=1"]);
    assert_eq!(code, 0);
    assert_eq!(field(&out, "evidence"), "0.500000000000");
    assert_eq!(field(&out, "y=1"), "0.500000000000  1.00000000000");
}

#[test]
fn identity_and_equivalence_checks() {
    let (code, out, _) = run(&["check", "de-morgan-and", "--atoms", "2", "--depth", "1"]);
    assert_eq!(code, 0);
    assert_eq!(field(&out, "failures"), "0");
    let (_, out, _) = run(&["check", "a -> b == !a | b"]);
    assert!(out.ends_with("\nequivalent\n"));
    let (_, out, _) = run(&["check", "a -> b ≡ b -> a"]);
    assert!(out.contains("not equivalent\ncounterexample a=T b=F: F vs T\n"));
    let (code, out, _) = run(&["check", "--list"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "import-export"));
}

#[test]
fn hasse_cube_summary_and_dot_file() {
    let dir = TempDir::new().unwrap();
    let scn = scenario(&dir, "three.scn", "[variables]\nx = 1 2 3\n");
    let dot = dir.path().join("cube.dot");
    let (code, out, err) = run(&[
        "hasse",
        "x=1",
        "x=2",
        "x=3",
        "x=1 | x=2",
        "x=1 | x=3",
        "x=2 | x=3",
        "--bounds",
        "--scenario",
        scn.to_str().unwrap(),
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(field(&out, "nodes"), "8");
    assert_eq!(field(&out, "cover edges"), "12");
    assert_eq!(field(&out, "levels"), "4");
    let text = std::fs::read_to_string(dot).unwrap();
    assert!(text.starts_with("digraph hasse {\n"));
    assert_eq!(text.lines().filter(|l| l.contains(" -> ")).count(), 12);
}

#[test]
fn verification_commands() {
    let (code, out, _) = run(&["verify", "aczel", "--op", "sum", "--lo", "0", "--hi", "1", "--n", "21"]);
    assert_eq!(code, 0);
    let residual: f64 = field(&out, "regraduation residual").parse().unwrap();
    assert!(residual <= 1e-15);
    let (_, out, _) = run(&["verify", "pexider", "--coefficients", "2,-3", "--a", "0.5", "--b", "-0.25"]);
    assert_eq!(field(&out, "linear"), "true");
    assert_eq!(field(&out, "c2"), "-3.00000000000");
    let (_, out, _) = run(&["verify", "cauchy", "--op", "sine"]);
    assert_eq!(field(&out, "additive"), "false");
    let (code, _, err) = run(&["verify", "aczel", "--op", "power:x"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:usage:"));
}

#[test]
fn double_slit_demo_disagrees() {
    let (code, out, _) = run(&["demo", "double-slit", "0.5", "0.5", "0.2", "0.4"]);
    assert_eq!(code, 0);
    assert_eq!(field(&out, "consistent"), "0.300000000000");
    assert_eq!(field(&out, "naive"), "0.600000000000");
    assert_eq!(field(&out, "disagree"), "true");
}

#[test]
fn errors_carry_category_prefixes_and_exit_codes() {
    let dir = TempDir::new().unwrap();
    let cases: Vec<(Vec<String>, i32, &str)> = vec![
        (vec!["tt".into(), "a &".into()], 1, "error:parse:"),
        (vec!["frobnicate".into()], 2, "error:usage:"),
        (vec!["update".into(), "/nonexistent/x.scn".into()], 1, "error:io:"),
        (
            vec![
                "update".into(),
                scenario(&dir, "bad.scn", "[variables]\nx = 1 2\n[constraints]\nexpect value(x) = 7\n")
                    .display()
                    .to_string(),
            ],
            1,
            "error:infeasible:",
        ),
        (
            vec![
                "prob".into(),
                scenario(&dir, "broken.scn", "[variables]\nx 1 2\n").display().to_string(),
                "x=1".into(),
            ],
            1,
            "error:scenario:",
        ),
    ];
    for (args, code, prefix) in cases {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let (c, out, err) = run(&argv);
        assert_eq!(c, code, "{args:?}: {err}");
        assert!(out.is_empty(), "{args:?}");
        assert!(err.starts_with(prefix), "{args:?}: {err}");
    }
}

#[test]
fn help_goes_to_stdout() {
    let (code, out, err) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Usage: entropic"));
    assert!(err.is_empty());
}

#[test]
fn binary_output_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let path = scenario(&dir, "dice.scn", DICE);
    let exe = env!("CARGO_BIN_EXE_entropic");
    let once = || {
        Command::new(exe)
            .args(["update", path.to_str().unwrap(), "--report-lambdas"])
            .output()
            .unwrap()
    };
    let (a, b) = (once(), once());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stderr, b.stderr);
    let bad = Command::new(exe).arg("--nope").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
