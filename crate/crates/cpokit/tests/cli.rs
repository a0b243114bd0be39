use std::path::PathBuf;

use cpokit::{run, Outcome};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn cpokit(args: &[&str]) -> Outcome {
    run(std::iter::once("cpokit").chain(args.iter().copied()))
}

#[test]
fn classify_reports_epi_mono_not_iso() {
    let out = cpokit(&["classify", "--map", &fixture("id.map")]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.starts_with("mono=true epi=true iso=false"), "{}", out.stdout);

    let explicit =
        cpokit(&["classify", "--map", &fixture("id.map"), "--posets", &fixture("A.poset"), &fixture("3.poset")]);
    assert_eq!(explicit, out);
}

#[test]
fn planted_faults_exit_one() {
    let out = cpokit(&["check", &fixture("bad_bottom.poset")]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("line 4"), "{}", out.stderr);

    let out = cpokit(&["classify", "--map", &fixture("nonmonotone.map")]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("not a cpo map"), "{}", out.stderr);
}

#[test]
fn syntax_and_usage_errors_exit_two() {
    let out = cpokit(&["check", &fixture("syntax.poset")]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 4"));

    assert_eq!(cpokit(&["check", &fixture("missing.poset")]).code, 2);
    assert_eq!(cpokit(&["frobnicate"]).code, 2);
    assert_eq!(cpokit(&["demo", "nope"]).code, 2);
    assert_eq!(cpokit(&["coequalize", "--maps", &fixture("c1.map")]).code, 2);
    assert_eq!(cpokit(&["closure", "--poset", &fixture("V4.poset"), "--subset", "zz"]).code, 2);
    assert_eq!(cpokit(&["--help"]).code, 0);
}

#[test]
fn check_and_dot() {
    let out = cpokit(&["check", &fixture("V4.poset")]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("cpo=true\n"));
    assert!(out.stdout.contains("cpo.by_chains=true\n"));

    let dot = cpokit(&["dot", &fixture("V4.poset")]);
    assert_eq!(dot.stdout.matches("->").count(), 4);
    assert_eq!(cpokit(&["--format", "dot", "check", &fixture("V4.poset")]).stdout, dot.stdout);
}

#[test]
fn closure_stages() {
    let out = cpokit(&["closure", "--poset", &fixture("3.poset"), "--subset", "0,2"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("closure={0,2}\n"), "{}", out.stdout);
    assert!(out.stdout.contains("steps=0\n"));
}

#[test]
fn coequalize_collapses_the_top() {
    let out = cpokit(&["coequalize", "--maps", &fixture("c1.map"), &fixture("c2.map")]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("elements: 0 1|2\n"), "{}", out.stdout);
}

#[test]
fn factor_through_image() {
    let out = cpokit(&["factor", "--map", &fixture("gap.map")]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("map e : 3 -> "));
    assert!(out.stdout.contains("map m : "));
}

#[test]
fn coproduct_shares_the_bottom() {
    let out = cpokit(&["coproduct", &fixture("2.poset"), &fixture("A.poset")]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("elements: 0 0.1 1.a 1.b\n"), "{}", out.stdout);
    assert_eq!(out.stdout.matches("map inj").count(), 2);
}

#[test]
fn normalize_is_bounded_and_deterministic() {
    let out = cpokit(&["normalize", "--kappa", "2", "--seed", "7"]);
    assert_eq!(out.code, 0);
    let sizes = out.stdout.lines().find_map(|l| l.strip_prefix("sizes: ")).unwrap();
    assert!(sizes.split_whitespace().all(|s| s.parse::<usize>().unwrap() <= 5));
    assert_eq!(cpokit(&["normalize", "--kappa", "2", "--seed", "7"]), out);
    assert_eq!(cpokit(&["--seed", "7", "normalize", "--kappa", "2"]), out);
}

#[test]
fn census_and_demos() {
    let out = cpokit(&["census", "--kappa", "2"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("# kappa=2 "));

    let out = cpokit(&["demo", "two-step-closure"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("closure_stage=2\n"));
    assert!(out.stdout.ends_with("status=pass\n"));
    for name in ["generator-2-vs-3", "ad-family", "epi-mono-not-iso"] {
        assert_eq!(cpokit(&["demo", name]).code, 0, "{name}");
    }
    assert_eq!(cpokit(&["demo", "two-step-closure", "--fuel", "256"]).code, 0);
}
