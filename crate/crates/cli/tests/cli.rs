use std::path::Path;
use std::process::{Command, Output};

fn setsat(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_setsat")).current_dir(dir).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn q4_is_a_polymorphism() {
    let dir = tempfile::tempdir().unwrap();
    let o = setsat(dir.path(), &["build", "qm", "--m", "4", "--params", "3,2,1,3,5", "--out", "q4.fun"]);
    assert_eq!(code(&o), 0);
    let o = setsat(dir.path(), &["poly", "check", "--fun", "q4.fun", "--params", "3,2,1,3,5"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "POLYMORPHISM\n"));
    let o = setsat(dir.path(), &["--format", "kv", "poly", "check", "--in", "q4.fun", "--params", "3,2,1,3,5"]);
    assert_eq!(stdout(&o), "verdict=POLYMORPHISM\nmethod=smug\n");
}

#[test]
fn negative_verdict_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    setsat(dir.path(), &["build", "olsak", "--params", "3,2,1,3,5", "--out", "o.fun"]);
    let o = setsat(dir.path(), &["poly", "check", "--fun", "o.fun", "--params", "3,2,1,2,4"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("NOT_POLYMORPHISM\nrow "));
}

#[test]
fn qm8_robustness() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&setsat(dir.path(), &["mc", "qm", "--m", "8", "--out", "qm8.bmc"])), 0);
    let o = setsat(dir.path(), &["mc", "robustness", "--in", "qm8.bmc"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "max=3 frac=3/8\n"));
}

#[test]
fn solve_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let o = setsat(dir.path(), &["gen", "--params", "3,2,1,2,3", "--n", "30", "--m", "120", "--seed", "5", "--out", "p.setsat"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("seed=5"));
    let run = || setsat(dir.path(), &["solve", "--in", "p.setsat", "--g", "2", "--seed", "7"]);
    let (a, b) = (run(), run());
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("SAT ") && text.contains("seed=7\n"), "{text}");
    let values = text.lines().next().unwrap()["SAT ".len()..].to_string();
    let o = setsat(dir.path(), &["check", "--in", "p.setsat", "--assign", &values]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn check_reports_the_failing_clause() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("i.setsat"), "p setsat 3 2 2 1 3\n1:1,2 2:2,3 2:1,3\n").unwrap();
    let o = setsat(dir.path(), &["check", "--in", "i.setsat", "--assign", "3 2", "--g", "3"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (1, "FALSIFIED g=3 clause=1 count=1\n"));
    let o = setsat(dir.path(), &["check", "--in", "i.setsat", "--assign", "1,3", "--a", "3"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "SATISFIED g=3 min=3\n"));
}

#[test]
fn parse_errors_exit_two_with_line() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.setsat"), "p setsat 3 2 2 1 3\n1:1 2:2,3 2:1,3\n").unwrap();
    let o = setsat(dir.path(), &["solve", "--in", "bad.setsat"]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.starts_with("error: ") && err.contains("line 2"), "{err}");
    assert_eq!(code(&setsat(dir.path(), &["solve", "--in", "missing.setsat"])), 2);
    assert_eq!(code(&setsat(dir.path(), &["frobnicate"])), 2);
    assert_eq!(code(&setsat(dir.path(), &["poly", "check", "--params", "3,2,1,3,5"])), 2);
}

#[test]
fn coloring_k3_and_k4() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("k3.graph"), "p graph 3 3\n1 2\n1 3\n2 3\n").unwrap();
    std::fs::write(dir.path().join("k4.graph"), "p graph 4 6\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n").unwrap();
    for (g, best) in [("k3", "BEST_G 1"), ("k4", "BEST_G 0")] {
        let o = setsat(dir.path(), &["reduce", "from-graph-coloring", "--in", &format!("{g}.graph"), "--colors", "3"]);
        assert_eq!(code(&o), 0);
        let text = stdout(&o);
        assert!(text.starts_with("c params 3,2,1,1,2\np setsat 3 2"), "{text}");
        std::fs::write(dir.path().join(format!("{g}.setsat")), text).unwrap();
        let o = setsat(dir.path(), &["best-g", "--in", &format!("{g}.setsat")]);
        assert!(stdout(&o).starts_with(best), "{g}: {}", stdout(&o));
    }
}

#[test]
fn reduction_verification() {
    let dir = tempfile::tempdir().unwrap();
    let o = setsat(dir.path(), &["reduce", "shift-up", "--verify", "--samples", "6", "--seed", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("VERIFIED shift-up samples=6"));
    assert_eq!(code(&setsat(dir.path(), &["reduce", "pad-to-2g", "--verify"])), 2);
}

#[test]
fn layering_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("a.blc"), "p blc 2 2 2\ne 1 1 1 2\ne 1 2 2 1\ne 2 1 1 1\ne 2 2 2 2\n").unwrap();
    let o = setsat(dir.path(), &["lc", "layer", "--in", "a.blc", "--ell", "2", "--out", "a.llc"]);
    assert_eq!(stdout(&o), "LAYERED ell=2 vars=12 constraints=32\n");
    let o = setsat(dir.path(), &["lc", "chains", "--in", "a.llc"]);
    assert!(stdout(&o).starts_with("CHAINS 16\n"));
    let assign = "1 1 1 1 / 1 1 1 1 / 1 1 1 2";
    let o = setsat(dir.path(), &["lc", "eval", "--in", "a.llc", "--assign", assign]);
    assert_eq!(stdout(&o), "FRACTION 1\n");
    let o = setsat(dir.path(), &["lc", "decode", "--in", "a.blc", "--ell", "2", "--assign", assign]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("achieved=1 weak=1 threshold=1/3"));
    let o = setsat(dir.path(), &["mc", "from-lc", "--in", "a.blc"]);
    assert!(stdout(&o).starts_with("s "), "{}", stdout(&o));
}

#[test]
fn dictator_tables_decode_fully() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("a.blc"), "p blc 2 2 2\ne 1 1 1 2\ne 1 2 2 1\ne 2 1 1 1\ne 2 2 2 2\n").unwrap();
    setsat(dir.path(), &["lc", "layer", "--in", "a.blc", "--ell", "2", "--out", "a.llc"]);
    let o = setsat(dir.path(), &["lc", "solve", "--in", "a.llc"]);
    let line = stdout(&o).lines().nth(1).unwrap().trim_start_matches("ASSIGNMENT ").to_string();
    // one dictator table per variable, on the coordinate of its optimal label
    let mut tables = String::new();
    for v in line.split_whitespace().filter(|t| *t != "/") {
        let j = 3 - (v.parse::<u32>().unwrap() - 1);
        let vals: Vec<String> = (0..81usize).map(|x| (x / 3usize.pow(j) % 3 + 1).to_string()).collect();
        tables += &format!("p fun 3 4\nv {}\n", vals.join(" "));
    }
    std::fs::write(dir.path().join("t.fun"), tables).unwrap();
    let o = setsat(dir.path(), &["mc", "decode", "--in", "a.llc", "--tables", "t.fun", "--params", "3,2,1,1,3"]);
    assert_eq!(code(&o), 0, "{}{}", stdout(&o), String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("fraction=1 "), "{}", stdout(&o));
}
