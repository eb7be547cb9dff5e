use std::io::Write;
use std::process::{Command, Output, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_macaulay");

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn basis_degrevlex_matches_groebner_example() {
    let o = run(&["basis", &fixture("grobsym.txt"), "--grading", "order degrevlex", "--reduced", "--certify"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("  [(2,0)] x1^2 + x2^2 - 1\n  [(0,4)] x2^4 - x2^2 + 1\n"), "{out}");
    assert!(out.contains("criterion: pass"));
}

#[test]
fn verify_reports_pass_and_witness() {
    let o = run(&["verify", &fixture("grobsym.txt")]);
    assert!(stdout(&o).contains("criterion: pass"));
    let o = run(&["verify", &fixture("grobsym_drl.txt"), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["certificate"]["criterion"], "fail");
    assert_eq!(v["certificate"]["witness"]["leading_form"], "x2^4");
}

#[test]
fn reduce_prints_normal_form_and_trace() {
    let o = run(&["reduce", &fixture("grobsym.txt"), "--element", "x1^4", "--trace", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["elements"][0]["element"], "1/2*x1^2 - 1/2*x2^2 - 1/2");
    let degrees: Vec<i64> = v["trace"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["degree"].as_str().unwrap().parse().unwrap())
        .collect();
    assert!(degrees.windows(2).all(|w| w[0] > w[1]), "{degrees:?}");

    let o = run(&["reduce", &fixture("grobsym.txt"), "--element", "x1^4", "--remainder", "span"]);
    // x1^4 - (x1^2 f1 - f2) = x1^2 - 1, and x1^2 is not in W_2 = span{x1^2 + x2^2}
    assert!(stdout(&o).contains("remainder:\n  [2] x1^2 - 1\n"), "{}", stdout(&o));
}

#[test]
fn output_is_byte_identical() {
    for args in [
        vec!["basis", "c4.txt", "--reduced", "--format", "json"],
        vec!["syzygy", "twisted_cubic.txt"],
        vec!["hilbert", "twisted_cubic.txt", "--degrees", "0..6"],
        vec!["check-invariant", "c4.txt", "--reduced"],
    ] {
        let mut a: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        a[1] = fixture(args[1]);
        let a: Vec<&str> = a.iter().map(String::as_str).collect();
        let first = run(&a);
        let second = run(&a);
        assert!(first.status.success(), "{args:?}: {}", String::from_utf8_lossy(&first.stderr));
        assert_eq!(first.stdout, second.stdout);
    }
}

#[test]
fn json_coefficients_are_strings() {
    let o = run(&["eliminate", &fixture("elim.txt"), "--keep", "x2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["elements"][0]["element"], "x2^2 - 1/2");
    assert!(v["input_hash"].as_str().unwrap().len() == 64);
}

#[test]
fn reads_stdin() {
    let mut child = Command::new(BIN)
        .args(["dehomogenize", "-", "--var", "t"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"vars x1 t\ngenerators\nx1^3*t - t^4\n")
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(stdout(&o).contains("[3] x1^3 - 1"));
}

#[test]
fn exit_codes() {
    let dir = std::env::temp_dir();
    let bad = dir.join("macaulay-cli-bad-syntax.txt");
    std::fs::write(&bad, "vars x1 x2\ngenerators\nx3 + 1\n").unwrap();
    let o = run(&["basis", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3") && err.contains("unknown variable x3"), "{err}");

    let o = run(&["basis", &fixture("grobsym.txt"), "--coeff", "fp:7", "--complement", "orthogonal"]);
    assert_eq!(o.status.code(), Some(3));

    let cyclic = dir.join("macaulay-cli-cyclic3.txt");
    std::fs::write(&cyclic, "vars x1 x2 x3\ngenerators\nx1+x2+x3\nx1*x2+x2*x3+x1*x3\nx1*x2*x3-1\n").unwrap();
    let o = run(&["basis", cyclic.to_str().unwrap(), "--grading", "lex", "--max-iterations", "1"]);
    assert_eq!(o.status.code(), Some(4), "{}", String::from_utf8_lossy(&o.stderr));

    let o = run(&["basis", &fixture("grobsym.txt"), "--grading", "degrevlex", "--degree-cap", "3"]);
    assert_eq!(o.status.code(), Some(4));

    let o = run(&["reduce", &fixture("grobsym.txt")]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn group_file_and_char_p() {
    let o = run(&["check-invariant", &fixture("grobsym_drl.txt"), "--group", &fixture("s2.group"), "--reduced"]);
    assert!(stdout(&o).contains("span invariant: false"));
    let o = run(&["check-invariant", &fixture("c4.txt"), "--group", &fixture("c4.group"), "--reduced"]);
    assert!(stdout(&o).contains("span invariant: true"));
    let o = run(&["basis", &fixture("grobsym.txt"), "--coeff", "fp:32003", "--grading", "degrevlex", "--reduced"]);
    assert!(stdout(&o).contains("x2^4 + 32002*x2^2 + 1"), "{}", stdout(&o));
}
