use std::path::Path;
use std::process::{Command, Output};

fn pqn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pqn")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn build(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_string_lossy().into_owned();
    let mut all = vec!["build"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", &path]);
    let o = pqn(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn numeration_commands() {
    let o = pqn(&["rep", "--base", "3/2", "2"]);
    assert_eq!((stdout(&o).as_str(), o.status.code()), ("21\n", Some(0)));
    let o = pqn(&["eval", "--base", "3/2", ""]);
    assert_eq!(stdout(&o), "0\n");
    let o = pqn(&["eval", "--base", "3/2", "212"]);
    assert_eq!(stdout(&o), "4\n");
    let o = pqn(&["member", "--base", "3/2", "1/4"]);
    assert_eq!((stdout(&o).as_str(), o.status.code()), ("no\n", Some(1)));
    let o = pqn(&["member", "--base", "3/2", "3/4"]);
    assert_eq!((stdout(&o).as_str(), o.status.code()), ("yes\n", Some(0)));
}

#[test]
fn errors_exit_with_two() {
    let o = pqn(&["rep", "--base", "2/4", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    let o = pqn(&["compile", "--base", "3/2", "--formula", "x = ", "--vars", "x"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn automata_files() {
    let dir = tempfile::tempdir().unwrap();
    let add = build(dir.path(), "add.json", &["add"]);
    let o = pqn(&["equiv", &add, &add]);
    assert_eq!((stdout(&o).as_str(), o.status.code()), ("equivalent\n", Some(0)));
    let o = pqn(&["run", &add, "21,21,212"]);
    assert_eq!(o.status.code(), Some(0));
    let o = pqn(&["run", &add, "21,21,210"]);
    assert_eq!(o.status.code(), Some(1));

    let double = build(dir.path(), "double.json", &["mulrat", "2/1"]);
    let compiled = dir.path().join("compiled.json").to_string_lossy().into_owned();
    let o = pqn(&["compile", "--base", "3/2", "--formula", "x + x = y", "--vars", "x,y", "--out", &compiled]);
    assert!(o.status.success());
    let o = pqn(&["equiv", &double, &compiled]);
    assert_eq!(stdout(&o), "equivalent\n");
    let le = build(dir.path(), "le.json", &["lelen"]);
    let o = pqn(&["equiv", &double, &le]);
    assert_eq!(o.status.code(), Some(1));

    let two = build(dir.path(), "two.json", &["const", "2"]);
    let o = pqn(&["enum", &two, "--max-len", "4"]);
    // padded automata accept every zero-padded form
    assert_eq!(stdout(&o), "21\n021\n0021\n");
}

#[test]
fn experiments() {
    let o = pqn(&["experiment", "modulo-oracle", "--n", "5", "--max-len", "6"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("0 mismatches"));
    let o = pqn(&["experiment", "nerode-order", "--csv"]);
    let out = stdout(&o);
    assert!(out.starts_with("language,base,suffix_len_max,prefix_len,prefixes,classes\n"), "{out}");
}
