mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use common::*;
use sprout_core::generate::Generator;
use sprout_core::io::{emit_hoa, emit_sample};
use sprout_core::AccType;

fn sprout(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sprout"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn setup() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("s3.txt"), emit_sample(&fix_s3())).unwrap();
    fs::write(dir.path().join("fixA.hoa"), emit_hoa(&fix_a())).unwrap();
    dir
}

#[test]
fn learn_then_compare_with_figure() {
    let dir = setup();
    let o = sprout(dir.path(), &["learn", "--type", "parity", "--sample", "s3.txt", "--hoa", "out.hoa", "--dot", "out.dot"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "learned 3-state parity automaton\n");
    assert!(fs::read_to_string(dir.path().join("out.dot")).unwrap().starts_with("digraph"));
    let o = sprout(dir.path(), &["equiv", "--hoa", "out.hoa", "--hoa2", "fixA.hoa"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "EQUIVALENT\n");
    let o = sprout(dir.path(), &["equiv", "--hoa", "out.hoa", "--hoa2", "fixA.hoa", "--fast-parity"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn learn_is_byte_identical_across_runs() {
    let dir = setup();
    let args = ["learn", "--type", "rabin", "--sample", "s3.txt"];
    let a = sprout(dir.path(), &args);
    let b = sprout(dir.path(), &args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("HOA: v1\n"));
}

#[test]
fn trace_writes_one_file_per_iteration() {
    let dir = setup();
    let o = sprout(dir.path(), &["--json", "learn", "--type", "parity", "--sample", "s3.txt", "--trace", "tr"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "v1");
    assert_eq!(v["states"], 3);
    let iterations = v["iterations"].as_u64().unwrap() as usize;
    let steps = fs::read_dir(dir.path().join("tr"))
        .unwrap()
        .filter(|e| e.as_ref().unwrap().file_name().to_string_lossy().starts_with("step-"))
        .count();
    assert_eq!(steps, iterations);
    let first = fs::read_to_string(dir.path().join("tr/step-001.dot")).unwrap();
    assert_eq!(first.matches("style=dashed").count(), 1);
}

#[test]
fn membership_verdicts() {
    let dir = setup();
    let o = sprout(dir.path(), &["member", "--hoa", "fixA.hoa", "--word", "(bba)"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "reject\n");
    let o = sprout(dir.path(), &["member", "--hoa", "fixA.hoa", "--word", "a(bbba)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "accept\n");
}

#[test]
fn inequivalence_prints_counterexample() {
    let dir = setup();
    fs::write(dir.path().join("l2.hoa"), emit_hoa(&reference_dpa(2))).unwrap();
    let o = sprout(dir.path(), &["--json", "equiv", "--hoa", "fixA.hoa", "--hoa2", "l2.hoa"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["equivalent"], false);
    let x = w(v["counterexample"].as_str().unwrap());
    assert_ne!(fix_a().accepts(&x).unwrap(), reference_dpa(2).accepts(&x).unwrap());
}

#[test]
fn check_reports_solution_or_conflict() {
    let dir = setup();
    let o = sprout(dir.path(), &["check", "--type", "parity", "--hoa", "fixA.hoa", "--sample", "s3.txt"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("CONSISTENT\nHOA: v1\n"));
    let o = sprout(dir.path(), &["check", "--type", "buchi", "--hoa", "fixA.hoa", "--sample", "s3.txt", "--size", "1"]);
    assert_eq!(o.status.code(), Some(0));
    fs::write(dir.path().join("bad.txt"), "positive:\n(bbba)\nnegative:\n(bbbbbba)\n").unwrap();
    let o = sprout(dir.path(), &["check", "--type", "rabin", "--hoa", "fixA.hoa", "--sample", "bad.txt"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("NOT CONSISTENT\n"));
}

#[test]
fn gensample_on_irc_automaton() {
    let dir = setup();
    let target = Generator::new(5).irc_automaton(&ab(), 4, AccType::Rabin).unwrap();
    fs::write(dir.path().join("irc.hoa"), emit_hoa(&target)).unwrap();
    let o = sprout(dir.path(), &["gensample", "--hoa", "irc.hoa", "--kind", "full"]);
    assert_eq!(o.status.code(), Some(0));
    fs::write(dir.path().join("irc.txt"), stdout(&o)).unwrap();
    let s = sprout_core::io::parse_sample(&stdout(&o)).unwrap();
    for (x, label) in s.labeled() {
        assert_eq!(target.accepts(x).unwrap(), label);
    }
    let o = sprout(dir.path(), &["learn", "--type", "rabin", "--sample", "irc.txt", "--hoa", "back.hoa"]);
    assert_eq!(o.status.code(), Some(0));
    let o = sprout(dir.path(), &["equiv", "--hoa", "back.hoa", "--hoa2", "irc.hoa"]);
    assert_eq!(stdout(&o), "EQUIVALENT\n");
    // A prefix-independent language has a one-class right congruence.
    let o = sprout(dir.path(), &["gensample", "--hoa", "fixA.hoa"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reduce_k4_is_not_three_colorable() {
    let dir = setup();
    fs::write(dir.path().join("k4.txt"), "n 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n").unwrap();
    let o = sprout(dir.path(), &["reduce", "--graph", "k4.txt", "--target", "genbuchi", "--out", "k4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("k4/ts.hoa").exists());
    let o = sprout(
        dir.path(),
        &["check", "--type", "genbuchi", "--hoa", "k4/ts.hoa", "--sample", "k4/sample.txt", "--size", "3"],
    );
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "NOT CONSISTENT\n");
    let o = sprout(dir.path(), &["reduce", "--graph", "k4.txt", "--target", "rabin", "--out", "k4r", "--check", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("CONSISTENT at k=4"));
}

#[test]
fn errors_exit_with_two() {
    let dir = setup();
    let o = sprout(dir.path(), &["--json", "learn", "--type", "parity", "--sample", "missing.txt"]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "precondition_violated");
    fs::write(dir.path().join("broken.txt"), "alphabet: a b\npositive:\na(c)\n").unwrap();
    let o = sprout(dir.path(), &["--json", "learn", "--type", "parity", "--sample", "broken.txt"]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "parse_error");
    let o = sprout(dir.path(), &["learn", "--type", "muller", "--sample", "s3.txt"]);
    assert_eq!(o.status.code(), Some(2));
    let o = sprout(dir.path(), &["reduce", "--graph", "k4.txt", "--target", "parity"]);
    assert_eq!(o.status.code(), Some(2));
}
