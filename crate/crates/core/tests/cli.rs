use std::io::Write;
use std::process::{Command, Output, Stdio};

use eigenpencil::canonical::QuadraticForm;
use eigenpencil::io::{parse_pencil, parse_points, write_pencil, write_quadrics, QuadricSystem};
use eigenpencil::random::{self, case_rng};
use eigenpencil::Field;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_eigenpencil"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn conic_text() -> String {
    let f = Field::Prime(5);
    let q = QuadraticForm::from_i64(3, f, &[0, 0, -1, 1, 0, 0]).unwrap();
    write_quadrics(&QuadricSystem { n: 3, field: f, quadrics: vec![q] })
}

#[test]
fn canonical_header() {
    let o = run(&["--no-meta", "canonical", "--n", "2", "--field", "gf3"], "");
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("pencil 2 3 2 gf3"));
    let p = parse_pencil(&text).unwrap();
    assert_eq!((p.a(), p.b()), (3, 2));
}

#[test]
fn realized_conic_has_six_eigenvalues() {
    let o = run(&["--no-meta", "realize", "--quadrics", "-"], &conic_text());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let report = String::from_utf8_lossy(&o.stderr).into_owned();
    assert!(report.contains("eigenvalues=6 zero_set=6 max_eigenspace_dim=1 result=pass"), "{report}");
    let pencil = stdout(&o);

    let values = run(&["--no-meta", "eigen", "--pencil", "-", "--values"], &pencil);
    assert!(values.status.success());
    let set = parse_points(&stdout(&values)).unwrap();
    assert_eq!(set.points.len(), 6);

    let vectors = run(&["--no-meta", "eigen", "--pencil", "-"], &pencil);
    assert_eq!(parse_points(&stdout(&vectors)).unwrap().points.len(), 6);
}

#[test]
fn verify_random_pencils() {
    for case in 0..5 {
        let p = random::reduced_pencil(&mut case_rng(11, case), 2, 3, 3, Field::Prime(3));
        let o = run(&["--no-meta", "verify", "--pencil", "-"], &write_pencil(&p));
        assert!(o.status.success());
        assert!(stdout(&o).contains("result=match"), "{}", stdout(&o));
    }
}

#[test]
fn eigenspace_of_canonical_is_a_line() {
    let c = run(&["--no-meta", "canonical", "--n", "3", "--field", "gf5"], "");
    let o = run(&["--no-meta", "eigenspace", "--pencil", "-", "--lambda", "1,2,3"], &stdout(&c));
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).lines().next(), Some("subspace 6 1 gf5"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["canonical", "--n"], "").status.code(), Some(1));
    assert_eq!(run(&["no-such-command"], "").status.code(), Some(1));
    assert_eq!(run(&["check", "--suite", "nope"], "").status.code(), Some(1));
    assert_eq!(run(&["eigen", "--pencil", "-"], "pencil 2 x 1 gf3\n").status.code(), Some(2));
    let o = run(&["eigen", "--pencil", "-"], "pencil 1 1 1 gf3\nmatrix 1\n1 2\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"), "{}", String::from_utf8_lossy(&o.stderr));
    // Not reduced: the single column is killed by the only matrix.
    let o = run(&["eigen", "--pencil", "-"], "pencil 1 1 1 gf3\nmatrix 1\n0\n");
    assert_eq!(o.status.code(), Some(3));
    let q = run(&["canonical", "--n", "2", "--field", "rational"], "");
    assert_eq!(run(&["verify", "--pencil", "-"], &stdout(&q)).status.code(), Some(3));
    assert_eq!(run(&["--help"], "").status.code(), Some(0));
}

#[test]
fn reflect_report_format() {
    let bristle = "pencil 3 1 0 gf5\nmatrix 1\n\nmatrix 2\n\nmatrix 3\n\n";
    let o = run(
        &["--no-meta", "reflect", "--pencil", "-", "--t", "3", "--e0-track", "--report", "-"],
        bristle,
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let report: Vec<&str> = text.lines().filter(|l| l.starts_with("t=") || l.starts_with("first_")).collect();
    assert_eq!(report.len(), 5, "{text}");
    assert!(report[0].starts_with("t=0 dim=(1,0) e0="), "{text}");
    assert!(report[3].starts_with("t=3 dim=(21,8) e0="), "{text}");
    assert!(report[4].starts_with("first_sufficient_t="), "{text}");
}

#[test]
fn reflect_then_inverse_returns_dimensions() {
    let c = run(&["--no-meta", "canonical", "--n", "3", "--field", "gf3"], "");
    let fwd = run(&["--no-meta", "reflect", "--pencil", "-", "--t", "1"], &stdout(&c));
    assert!(fwd.status.success());
    let back = run(&["--no-meta", "reflect", "--pencil", "-", "--t", "1", "--inverse"], &stdout(&fwd));
    assert!(back.status.success());
    let p = parse_pencil(&stdout(&back)).unwrap();
    assert_eq!((p.a(), p.b()), (6, 3));
}

#[test]
fn preprojective_table_passes() {
    let o = run(&["--no-meta", "preprojective", "--n", "3", "--count", "4", "--field", "gf2"], "");
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("k=0 dim=(0,1) form=1"), "{text}");
    assert!(text.ends_with("check=pass\n"), "{text}");
}

#[test]
fn identical_invocations_give_identical_output() {
    let args = ["--no-meta", "check", "--suite", "canonical", "--seed", "9", "--count", "20"];
    let a = run(&args, "");
    let b = run(&args, "");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let with_meta = stdout(&run(&["check", "--suite", "canonical", "--count", "2"], ""));
    assert!(with_meta.starts_with("# eigenpencil "), "{with_meta}");
}
