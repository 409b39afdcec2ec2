//! End-to-end runs of the binary: golden outputs, exit codes, byte stability.

use std::process::{Command, Output};

fn lynaut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lynaut"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = lynaut(args);
    assert!(
        out.status.success(),
        "lynaut {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

#[test]
fn seq_show() {
    assert_eq!(stdout_of(&["seq", "show", "t", "--length", "8"]), "01101001\n");
    assert_eq!(stdout_of(&["seq", "show", "p", "--length", "7"]), "0010011\n");
    assert_eq!(stdout_of(&["seq", "show", "t", "--length", "0"]), "\n");
}

#[test]
fn unknown_sequence_exits_2() {
    let out = lynaut(&["seq", "show", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn factorize_golden_lines() {
    assert_eq!(
        stdout_of(&["factorize", "encoding", "t", "--length", "18"]),
        "100101000100000001\n"
    );
    assert_eq!(
        stdout_of(&["factorize", "prefix", "t", "8"]),
        "[0..2][3..4][5..7]\n"
    );
    assert_eq!(
        stdout_of(&["factorize", "finite", "tbar"]),
        "finite: [0..0],[1..inf)\n"
    );
    assert_eq!(stdout_of(&["factorize", "finite", "d"]), "infinite\n");
}

#[test]
fn count_golden_lines() {
    assert_eq!(
        stdout_of(&["count", "t", "--kind", "lyndon", "--range", "1..10"]),
        "2,1,2,1,2,2,0,1,0,1\n"
    );
    assert_eq!(
        stdout_of(&["count", "t", "--kind", "primitive", "--n", "4"]),
        "8\n"
    );
    assert_eq!(stdout_of(&["count", "t", "--kind", "terms", "--n", "3"]), "2\n");
}

#[test]
fn count_oracle_check_passes() {
    let out = lynaut(&[
        "count", "t", "--kind", "lyndon", "--range", "1..12", "--check-oracle",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("oracle check passed"));
}

#[test]
fn synthesize_bounded_and_unbounded() {
    let out = lynaut(&["synthesize", "t", "--kind", "lyndon"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(text.starts_with("bounded\n"));
    assert!(text.contains("max-output: 2\n"));

    let out = lynaut(&["synthesize", "t", "--kind", "primitive", "--cap", "10000"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("unbounded"));

    let out = lynaut(&["synthesize", "r", "--kind", "lyndon", "--cap", "100"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("cap-exceeded"));
}

#[test]
fn oracle_commands() {
    assert_eq!(stdout_of(&["oracle", "is-primitive", "murder"]), "true\n");
    assert_eq!(stdout_of(&["oracle", "is-primitive", "murmur"]), "false\n");
    assert_eq!(stdout_of(&["oracle", "is-lyndon", "academy"]), "true\n");
    assert_eq!(stdout_of(&["oracle", "is-lyndon", "googol"]), "false\n");
    assert_eq!(stdout_of(&["oracle", "duval", "murmur"]), "mur mur\n");
    assert_eq!(stdout_of(&["oracle", "least-suffix", "0110"]), "3\n");
    assert_eq!(
        stdout_of(&[
            "oracle",
            "count-factors",
            "t",
            "3",
            "--kind",
            "lyndon",
            "--prefix-len",
            "4096"
        ]),
        "2\n"
    );
    assert_eq!(
        stdout_of(&["oracle", "return-words", "t", "0", "--prefix-len", "64"]),
        "0 01 011\n"
    );
}

#[test]
fn compile_emits_loadable_automaton() {
    let text = stdout_of(&["compile", "i + 1 = j & t[i] = t[j]"]);
    assert!(text.starts_with("# free variables: i j\n"));
    let automaton = lyndon_automata::Automaton::from_text(&text).unwrap();
    assert_eq!(automaton.alphabet().tracks(), 2);
    // t[3] = 0 and t[4] = 1 differ; t[5] = t[6] = 0 agree
    assert!(!automaton.accepts_values(&[3, 4]).unwrap());
    assert!(automaton.accepts_values(&[5, 6]).unwrap());
}

#[test]
fn compile_rejects_unknown_names_with_exit_2() {
    let out = lynaut(&["compile", "q[i] = 0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exported_sequences_load_back() {
    let dir = std::env::temp_dir().join("lynaut-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t.seq");
    let path_str = path.to_str().unwrap();
    let out = lynaut(&["seq", "export", "t", "--output", path_str]);
    assert!(out.status.success());
    assert_eq!(
        stdout_of(&["seq", "show", path_str, "--length", "8"]),
        "01101001\n"
    );
    assert_eq!(
        stdout_of(&["count", path_str, "--kind", "lyndon", "--n", "3"]),
        "2\n"
    );
}

#[test]
fn count_exports_linear_representation() {
    let dir = std::env::temp_dir().join("lynaut-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t-lyndon.rep");
    let out = lynaut(&[
        "count",
        "t",
        "--kind",
        "lyndon",
        "--n",
        "5",
        "--export",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let rep = lyndon_automata::enumeration::LinearRepresentation::from_text(&text).unwrap();
    assert_eq!(u64::try_from(&rep.evaluate(5)).unwrap(), 2);
}

#[test]
fn outputs_are_byte_stable() {
    for args in [
        vec!["factorize", "encoding", "p", "--length", "40"],
        vec!["count", "d", "--kind", "lyndon", "--range", "1..32"],
        vec!["compile", "E u (u + u = n & t[u] = 1)"],
    ] {
        let a = stdout_of(&args);
        let b = stdout_of(&args);
        assert_eq!(a, b, "{args:?}");
    }
}
