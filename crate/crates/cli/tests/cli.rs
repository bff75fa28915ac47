use std::path::PathBuf;
use std::process::{Command, Output};

fn ktg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ktg")).args(args).output().expect("run ktg")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("ktg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d.join(name)
}

#[test]
fn dim_table() {
    let o = ktg(&["dim", "--skeleton", "circle", "--degree", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "degree 0 dim 1\ndegree 1 dim 1\n");
    let o = ktg(&["dim", "--skeleton", "circle", "--degree", "1", "--one-term"]);
    assert_eq!(stdout(&o), "degree 0 dim 1\ndegree 1 dim 0\n");
}

#[test]
fn eval_degree_zero() {
    let o = ktg(&["eval", "--word", "fixtures/hump", "--degree", "0"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "1 · (empty)\n");
}

#[test]
fn crossing_starts_with_half_chord() {
    let o = ktg(&["eval", "--word", "crossing_pos", "--degree", "1", "--invariant", "z2"]);
    assert_eq!(stdout(&o), "1 · (empty)\n1/2 · (e1,1)-(e2,1)\n");
}

#[test]
fn moves_check_passes() {
    let o = ktg(&["check", "--suite", "moves", "--degree", "3", "--x", "1/2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 8);
    assert!(out.lines().all(|l| l.starts_with("SUITE moves PASS ")));
}

#[test]
fn reports_are_deterministic() {
    let args = ["check", "--suite", "reidemeister,framing,identities", "--degree", "2"];
    let a = ktg(&args);
    let b = ktg(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn associator_file_round_trips_through_ops() {
    let phi = tmp("phi.txt");
    let p = phi.to_str().unwrap();
    assert!(ktg(&["solve-associator", "--degree", "2", "--out", p]).status.success());
    let text = std::fs::read_to_string(&phi).unwrap();
    assert!(text.starts_with("series skeleton=strands3 N=2\n"));
    let nf = ktg(&["normal-form", "--series", p]);
    assert!(nf.status.success());
    let sw = tmp("sw.txt");
    let s = sw.to_str().unwrap();
    assert!(ktg(&["op", "--series", p, "--apply", "switch:e2", "--out", s]).status.success());
    let back = ktg(&["op", "--series", s, "--apply", "switch:e2"]);
    let terms = |t: &str| t.lines().filter(|l| l.starts_with("deg ")).map(String::from).collect::<Vec<_>>();
    assert_eq!(terms(&stdout(&back)), terms(&text));
    assert_ne!(terms(&std::fs::read_to_string(&sw).unwrap()), terms(&text));
}

#[test]
fn bad_requests_exit_with_two() {
    assert_eq!(ktg(&["check", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(ktg(&["eval", "--word", "no_such_word"]).status.code(), Some(2));
    let f = tmp("bad.txt");
    std::fs::write(&f, "series skeleton=circle N=1\ndeg 1 1 : (e1,1)-(e1,2) [2]\n").unwrap();
    let r = ktg(&["op", "--series", f.to_str().unwrap(), "--apply", "twist:e1"]);
    assert_eq!(r.status.code(), Some(2));
}
