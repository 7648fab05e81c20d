use std::path::PathBuf;
use std::process::{Command, Output};

fn iffkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iffkit")).args(args).env_remove("IFFKIT_CORPUS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn check_reports_compliance() {
    let o = iffkit(&["check", "tables1.iff"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("tables1.iff: 7 sentences, 3 compliant (42.9%)\n"), "{}", stdout(&o));
    let o = iffkit(&["check", "table2.iff"]);
    assert!(stdout(&o).contains("20 sentences, 20 compliant (100.0%)"));
}

#[test]
fn strict_check_fails_on_non_compliance() {
    assert_eq!(iffkit(&["check", "table7.iff"]).status.code(), Some(0));
    assert_eq!(iffkit(&["check", "--strict", "table7.iff"]).status.code(), Some(1));
}

#[test]
fn open_sentences_are_domain_failures() {
    let f = scratch("open.iff");
    std::fs::write(&f, "(rel ?x)\n(forall (?y (p ?z)) (q ?y))\n").unwrap();
    let o = iffkit(&["check", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("?x is free") && err.contains("does not mention it"), "{err}");
}

#[test]
fn parse_errors_exit_two() {
    let f = scratch("broken.iff");
    std::fs::write(&f, "(and (p a)\n").unwrap();
    let o = iffkit(&["check", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().starts_with("error: "));
    assert_eq!(iffkit(&["check", "no-such-file.iff"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two_with_synopsis() {
    for args in [&["check", "--bogus", "x"][..], &["frobnicate"], &[], &["verify", "nosuch"], &["lattice"]] {
        let o = iffkit(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8(o.stderr).unwrap().contains("Usage: iffkit"), "{args:?}");
    }
    assert_eq!(iffkit(&["--help"]).status.code(), Some(0));
}

#[test]
fn lattice_of_the_diamond() {
    let o = iffkit(&["lattice", "diamond.ctx"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("(lattice diamond (concepts 4))\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("(concept ")).count(), 4);
}

#[test]
fn resolution_and_lookup() {
    let o = iffkit(&["resolve", "CAT", "3.set.lim.pbk", "cat:category"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "(resolution CAT lrg.cat)\n(resolution 3.set.lim.pbk vlrg.set.lim.pbk)\n(term cat:category lrg.cat:category set)\n"
    );
    assert_eq!(iffkit(&["resolve", "nope"]).status.code(), Some(1));
}

#[test]
fn report_counts_ur() {
    let o = iffkit(&["report", "--vocab", "ur.vocab"]);
    assert_eq!(stdout(&o), "(namespace ur.ur (sets 6) (functions 16) (relations 8) (total 30))\n");
}

#[test]
fn merge_writes_the_fused_theory() {
    let out = scratch("span.thy");
    let o = iffkit(&["merge", "span.align", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let theory = std::fs::read_to_string(&out).unwrap();
    assert_eq!(theory, "(theory span\n  (institution prop)\n  (signature p q r)\n  (axioms\n    p\n    (implies q r)))\n");
    assert_eq!(stdout(&o), "(provenance\n  (p (T1 p))\n  (q (T0 q) (T1 q) (T2 q))\n  (r (T2 r)))\n(status consistent)\n");
    let again = iffkit(&["check", out.to_str().unwrap()]);
    assert_eq!(stdout(&again), format!("{}: theory span (prop), 2 axioms, consistent\n", out.display()));
}

#[test]
fn merge_resolves_nodes_next_to_the_alignment() {
    let dir = scratch("clash");
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("A.thy"), "(theory A (signature p) (axioms p))").unwrap();
    std::fs::write(dir.join("B.thy"), "(theory B (signature p) (axioms (not p)))").unwrap();
    std::fs::write(dir.join("clash.align"), "(alignment (node A A.thy) (node B B.thy) (node C T0.thy))").unwrap();
    let align = dir.join("clash.align");
    let o = iffkit(&["merge", align.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("(signature A:p B:p q)") && text.ends_with("(status consistent)\n"), "{text}");
    std::fs::write(&align, "(alignment (node A A.thy) (node B B.thy) (edge A B (sig-map (p p))))").unwrap();
    let o = iffkit(&["merge", "--strict", align.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("(status inconsistent)\n"));
}

#[test]
fn corpus_directory_override() {
    let dir = scratch("corpus");
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("diamond.ctx"), "(classification one (tokens a) (types t) (incidence (a t)))").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_iffkit")).args(["lattice", "diamond.ctx"]).env("IFFKIT_CORPUS", &dir).output().unwrap();
    assert!(stdout(&o).starts_with("(lattice one (concepts 1))"), "{}", stdout(&o));
}

#[test]
fn lawvere_and_truth_lattice() {
    let o = iffkit(&["lawvere", "monoid.lang", "--depth", "1"]);
    assert!(stdout(&o).starts_with("(lawvere monoid (depth 1) (objects 4) (morphisms "));
    let o = iffkit(&["truth-lattice", "two.thy", "--depth", "1"]);
    assert!(stdout(&o).starts_with("(truth-lattice two (models 4) "), "{}", stdout(&o));
}

#[test]
fn verify_a_suite() {
    let o = iffkit(&["verify", "registry", "metalang"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("PASS metalang\n") && text.ends_with("2 suites, 0 failed\n"), "{text}");
}
