//! End-to-end runs of the `locgame` binary.

use std::fs;
use std::io::Write;
use std::process::{Command, Output, Stdio};

const BIBD_7_3_A: &str = "#cols\n000000000111111222222\n111333555333444333444\n222444666555666666555\n";

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_locgame"))
        .args(args)
        .env_remove("LOCGAME_THREADS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn gen(args: &[&str]) -> String {
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    let o = run(&full, "");
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn plane_strategy_verifies_from_a_pipe() {
    let o = run(&["verify", "--theorem", "symmetric", "--cops", "3"], &gen(&["pp", "2"]));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PROVEN Thm3.2 cops 3 rounds "));
}

#[test]
fn sts13_bounds_contain_the_half_strategy() {
    let o = run(&["bounds"], &gen(&["sts", "13"]));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\nUPPER 7 Thm4.2 PROVEN"), "{}", stdout(&o));
}

#[test]
fn column_file_validates() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("columns.txt");
    fs::write(&path, BIBD_7_3_A).unwrap();
    let o = run(&["validate", path.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "BIBD(7,21,9,3,3)\n");
    let f = run(&["f-value", path.to_str().unwrap()], "");
    assert!(stdout(&f).ends_with("f(G) 3\n"));
}

#[test]
fn generated_designs_revalidate() {
    let cases: [(&[&str], &str); 7] = [
        (&["pp", "3"], "BIBD(13,13,4,4,1)"),
        (&["ag", "4"], "BIBD(16,20,5,4,1)"),
        (&["sts", "15"], "BIBD(15,35,7,3,1)"),
        (&["sqs", "8"], "BIBD(8,14,7,4,3)"),
        (&["td", "4", "5"], "TD(4,5)"),
        (&["td-from-pp", "3"], "TD(4,3)"),
        (&["td-from-ag", "4"], "TD(4,4)"),
    ];
    for (args, expected) in cases {
        let design = gen(args);
        let o = run(&["validate"], &design);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert_eq!(stdout(&o).lines().next(), Some(expected), "{args:?}");
        let again = run(&["export-graph"], &design);
        assert!(again.status.success());
    }
    let sqs = run(&["validate"], &gen(&["sqs", "8"]));
    assert!(stdout(&sqs).contains("S(3,4,8)"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"], "").status.code(), Some(2));
    assert_eq!(run(&["gen", "sts", "8"], "").status.code(), Some(2));
    assert_eq!(run(&["validate"], "3 2\n0 1\n").status.code(), Some(2));
    let broken = run(&["validate"], "4 2\n0 1\n1 2\n");
    assert_eq!(broken.status.code(), Some(1));
    assert!(!broken.stderr.is_empty());
    let o = run(&["verify", "--theorem", "symmetric", "--cops", "2"], &gen(&["pp", "2"]));
    assert_eq!(o.status.code(), Some(2));
    let tight = run(
        &["verify", "--theorem", "symmetric", "--budget-states", "1"],
        &gen(&["pp", "3"]),
    );
    assert_eq!(tight.status.code(), Some(3));
    let solve = run(&["solve", "--k", "2", "--budget-states", "5"], &gen(&["pp", "2"]));
    assert_eq!(solve.status.code(), Some(3));
    assert!(stdout(&solve).contains("UNKNOWN"));
}

#[test]
fn solve_then_replay() {
    let dir = tempfile::tempdir().unwrap();
    let design = dir.path().join("pp2.txt");
    fs::write(&design, gen(&["pp", "2"])).unwrap();
    let design = design.to_str().unwrap();
    for (k, status) in [("2", "ROBBER_WINS"), ("3", "COPS_WIN")] {
        let cert = dir.path().join(format!("k{k}.cert"));
        let cert = cert.to_str().unwrap();
        let o = run(&["solve", design, "--k", k, "--certificate", cert], "");
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains(status));
        let r = run(&["replay", cert, design], "");
        assert_eq!(stdout(&r), "PASS\n");
        let graph = dir.path().join("g.txt");
        fs::write(&graph, stdout(&run(&["export-graph", design], ""))).unwrap();
        let r = run(&["replay", cert, graph.to_str().unwrap()], "");
        assert_eq!(stdout(&r), "PASS\n");
    }
    let full = run(&["solve", design], "");
    assert!(stdout(&full).ends_with("zeta 3\n"));

    // A certificate for the wrong graph fails.
    let cert = dir.path().join("k2.cert");
    let other = gen(&["sts", "7"]);
    let mut lines: Vec<String> = other.lines().map(String::from).collect();
    lines[2] = "0 1 3".into();
    let r = run(&["replay", cert.to_str().unwrap()], &(lines.join("\n") + "\n"));
    assert_eq!(r.status.code(), Some(1));
    assert!(stdout(&r).starts_with("FAIL"));
}

#[test]
fn outputs_do_not_depend_on_threads() {
    let ag3 = gen(&["ag", "3"]);
    let pp2 = gen(&["pp", "2"]);
    let with = |threads: &str, args: &[&str], design: &str| {
        let mut full = vec!["--threads", threads];
        full.extend_from_slice(args);
        stdout(&run(&full, design))
    };
    let cases: [(&[&str], &str); 3] = [
        (&["bounds"], &ag3),
        (&["bounds", "--format", "json"], &ag3),
        (&["solve", "--k-max", "3"], &pp2),
    ];
    for (args, design) in cases {
        let one = with("1", args, design);
        assert_eq!(one, with("4", args, design), "{args:?}");
        assert_eq!(one, with("1", args, design), "{args:?}");
    }
    let env = Command::new(env!("CARGO_BIN_EXE_locgame"))
        .args(["gen", "pp", "2"])
        .env("LOCGAME_THREADS", "2")
        .output()
        .unwrap();
    assert!(env.status.success());
}

#[test]
fn ag3_is_exact() {
    let o = run(&["bounds", "--format", "json"], &gen(&["ag", "3"]));
    let text = stdout(&o);
    assert!(text.contains("\"kind\": \"EXACT\""));
    assert!(text.contains("\"theorem\": \"Thm2.6+Thm3.6\""), "{text}");
}
