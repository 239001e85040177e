use std::io::Write;
use std::process::{Command, Output, Stdio};

const C4: &str = "4\n1 3\n2 0\n3 1\n0 2\n";
const K4_GRAPH6: &str = "C~\n";

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_dplab"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn chromatic_numbers_of_c4() {
    let o = run(&["dp-chromatic", "-", "--max", "4"], C4);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains('3'), "{}", stdout(&o));
    let o = run(&["list-chromatic", "-", "--max", "4"], C4);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains('2'));
}

#[test]
fn solve_reports_a_bad_cover_with_exit_one() {
    let o = run(&["solve", "-", "--k", "2"], C4);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["solve", "-", "--k", "3"], C4);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn solve_with_an_explicit_cover() {
    let dir = std::env::temp_dir().join(format!("dplab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    // the twisted 2-cover of C4 has no transversal
    let twisted = dir.join("twisted.txt");
    std::fs::write(&twisted, "0 1: 1>1 2>2\n1 2: 1>1 2>2\n2 3: 1>1 2>2\n0 3: 1>2 2>1\n").unwrap();
    let o = run(&["solve", "-", "--k", "2", "--cover", twisted.to_str().unwrap()], C4);
    assert_eq!(o.status.code(), Some(1));
    let straight = dir.join("straight.txt");
    std::fs::write(&straight, "0 1: 1>1 2>2\n1 2: 1>1 2>2\n2 3: 1>1 2>2\n0 3: 1>1 2>2\n").unwrap();
    let o = run(&["solve", "-", "--k", "2", "--cover", straight.to_str().unwrap()], C4);
    assert_eq!(o.status.code(), Some(0));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn graph6_input_is_embedded() {
    let o = run(&["faces", "-", "--format", "graph6"], K4_GRAPH6);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.contains("face")).count(), 4, "{}", stdout(&o));
}

#[test]
fn non_planar_input_is_an_input_error() {
    let o = run(&["faces", "-", "--format", "graph6"], "D~{\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("dplab:"));
}

#[test]
fn malformed_input_is_an_input_error() {
    let o = run(&["faces", "-"], "3\n1 2\nx\n");
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["faces"], "");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn extension_of_a_precolored_cycle() {
    let o = run(&["extend", "-", "--cycle", "0,1,2,3", "--colors", "1,2,1,2", "--k", "3"], C4);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("extends: yes"));
    let o = run(&["extend", "-", "--cycle", "0,1,2", "--colors", "1,2,1", "--k", "3"], C4);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn discharge_prints_checks() {
    let o = run(&["discharge", "-", "--rules", "g1"], C4);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("# check sum/final holds"));
    assert!(out.contains("# rules"));
}

#[test]
fn corpus_output_parses_back() {
    let o = run(&["corpus", "--n", "1..4"], "");
    assert_eq!(o.status.code(), Some(0));
    let docs = stdout(&o);
    let parsed = dplab::formats::parse_rotation_text_stream(&docs).unwrap();
    assert_eq!(parsed.len(), 1 + 1 + 2 + 6);
}
