use std::process::Command;

const SUBCOMMANDS: &[&[&str]] = &[
    &[],
    &["solve"],
    &["best-g"],
    &["check"],
    &["gen"],
    &["poly"],
    &["poly", "check"],
    &["poly", "enumerate"],
    &["poly", "smug"],
    &["poly", "find-smug"],
    &["poly", "minor"],
    &["poly", "identities"],
    &["build"],
    &["build", "qm"],
    &["build", "olsak"],
    &["build", "siggers"],
    &["build", "plurality"],
    &["build", "family"],
    &["reduce"],
    &["lc"],
    &["lc", "layer"],
    &["lc", "chains"],
    &["lc", "eval"],
    &["lc", "decode"],
    &["lc", "solve"],
    &["mc"],
    &["mc", "from-lc"],
    &["mc", "qm"],
    &["mc", "robustness"],
    &["mc", "decode"],
];

fn all_help() -> String {
    let mut out = String::new();
    for path in SUBCOMMANDS {
        let o = Command::new(env!("CARGO_BIN_EXE_setsat")).args(*path).arg("--help").output().unwrap();
        assert!(o.status.success(), "{path:?}");
        out += &format!("=== setsat {}\n", path.join(" "));
        out += &String::from_utf8(o.stdout).unwrap();
    }
    out
}

#[test]
fn help_matches_golden() {
    let golden = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/help.txt");
    let got = all_help();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(golden, &got).unwrap();
    }
    let want = std::fs::read_to_string(golden).expect("golden file; regenerate with UPDATE_GOLDEN=1");
    assert_eq!(got, want, "help output changed; regenerate with UPDATE_GOLDEN=1 if intended");
}

#[test]
fn every_flag_is_documented() {
    let help = all_help();
    for flag in [
        "--in", "--out", "--params", "--g", "--seed", "--steps-cap", "--rounds", "--budget", "--format", "--assign",
        "--map", "--arity", "--set", "--spec", "--ell", "--tables", "--colors", "--verify", "--samples", "--all",
    ] {
        assert!(help.contains(flag), "{flag} missing from help");
    }
}
