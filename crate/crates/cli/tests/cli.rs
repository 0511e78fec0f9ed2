use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn qlogic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qlogic")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn fixture(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn eval_top_prints_the_identity_basis() {
    let dir = tempfile::tempdir().unwrap();
    let f = fixture(&dir, "a.fix", "3\np = { 1 0 0 }\n");
    let o = qlogic(&["eval", "1", "--fixture", &f]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "dim 3 of C^3\n1 0 0\n0 1 0\n0 0 1\n");
}

#[test]
fn eval_alpha_at_the_beta_witness() {
    let dir = tempfile::tempdir().unwrap();
    let w = qlogic(&["witness", "beta"]);
    assert_eq!(w.status.code(), Some(0));
    let f = fixture(&dir, "beta.fix", &stdout(&w));
    let o = qlogic(&["eval", "--named", "alpha", "--fixture", &f]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "dim 1 of C^4\n0 0 1 0\n");
    let o = qlogic(&["eval", "--named", "beta", "--fixture", &f]);
    assert_eq!(stdout(&o), "dim 1 of C^4\n0 0 0 1\n");
}

#[test]
fn error_classes_have_distinct_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let f = fixture(&dir, "a.fix", "2\np = { 1 0 }\n");
    assert_eq!(qlogic(&["eval", "p ^ q", "--fixture", &f]).status.code(), Some(4));
    let o = qlogic(&["eval", "p ^ ", "--fixture", &f]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("parse error at 1:"));
    let bad = fixture(&dir, "bad.fix", "2\np = { 1 0 0 }\n");
    assert_eq!(qlogic(&["eval", "p", "--fixture", &bad]).status.code(), Some(3));
    assert_eq!(qlogic(&["eval", "p"]).status.code(), Some(2));
    assert_eq!(qlogic(&[]).status.code(), Some(2));
    assert_eq!(qlogic(&["emit", "nonsense"]).status.code(), Some(2));
}

#[test]
fn check_reports_counterexamples_and_sampled_evidence() {
    let o = qlogic(&["check", "--named", "distributive", "-n", "2", "--samples", "50"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("counterexample found"));
    let o = qlogic(&["check", "--named", "oml", "-n", "3", "--samples", "200", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("sampled evidence only"));
    let o = qlogic(&["check", "p ^ ~p", "-n", "2", "--samples", "20"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn emitted_formulas_parse_back() {
    for name in ["alpha", "beta", "gamma:4", "separation:1", "oml"] {
        let o = qlogic(&["emit", name]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        let text = stdout(&o);
        let ok = qlogic::Term::parse(text.trim()).is_ok() || qlogic::Equation::parse(text.trim()).is_ok();
        assert!(ok, "{name}: {text}");
    }
    assert_eq!(qlogic(&["witness", "modular"]).status.code(), Some(2));
}

#[test]
fn suites_pass_and_report() {
    let o = qlogic(&["suite", "separation", "--max-i", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("seed 1 samples 10000 max-i 2\n"));
    let o = qlogic(&["suite", "lemma3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS alpha-lines/"));
    let o = qlogic(&["suite", "laws", "--json", "--samples", "500"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 24);
    assert!(lines
        .iter()
        .all(|l| l.starts_with('{') && l.contains("\"status\":\"pass\"")));
    assert_eq!(qlogic(&["suite", "lemma9"]).status.code(), Some(2));
}

#[test]
fn compile_writes_the_golden_text() {
    let dir = tempfile::tempdir().unwrap();
    let src = fixture(&dir, "worked.fol", "forall x y z. ~(x ^ y) v z = y ^ (~z v x)\n");
    let out = dir.path().join("worked.smt2");
    let o = qlogic(&["compile", &src, "--n", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("matrix-reals=72"));
    let golden = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/golden/worked_example_n2_validity.smt2");
    assert_eq!(fs::read_to_string(out).unwrap(), fs::read_to_string(golden).unwrap());
}

#[test]
fn compile_validates_its_input() {
    assert_eq!(
        qlogic(&["compile", "-e", "forall x. x = x", "--n", "0"]).status.code(),
        Some(2)
    );
    let o = qlogic(&["compile", "-e", "forall x. x = y", "--n", "1"]);
    assert_eq!(o.status.code(), Some(4));
    let o = qlogic(&["compile", "-e", "forall x. x = ", "--n", "1"]);
    assert_eq!(o.status.code(), Some(3));
    let o = qlogic(&["compile", "--named", "distributive", "--n", "1", "--form", "refutation"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(get-model)"));
    assert!(stderr(&o).contains("lattice-vars=3"));
}
