use std::fs;
use std::path::Path;
use std::process::Command;
use tricat::Error;
use tricat_cli::commands::{self, Theorem};
use tricat_cli::figures::{reproduce, Figure};
use tricat_cli::scenario::{self, Run};
use tricat_cli::{Context, Outcome};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tricat"))
}

fn strs(v: &serde_json::Value) -> Vec<String> {
    let mut out: Vec<String> = v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect();
    out.sort();
    out
}

#[test]
fn cluster_tilting_example_encircles_fourteen_of_eighteen() {
    let out = reproduce(Figure::One, 0).unwrap();
    assert!(out.passed, "{:?}", out.failures);
    let r = &out.report;
    assert_eq!(r["vertices"].as_array().unwrap().len(), 18);
    assert_eq!(r["cbar"].as_array().unwrap().len(), 14);
    assert_eq!(strs(&r["non_members"]), ["f", "k", "p", "s"]);
    assert_eq!(r["t_prime"], "a+b+s");
    assert_eq!(r["loop_at_r"], true);
    let dot = &out.dots["ar"];
    assert_eq!(dot.matches("shape=circle").count(), 14);
    assert_eq!(dot.lines().filter(|l| l.contains("pos=")).count(), 18);
}

#[test]
fn deletion_examples_certify_isomorphisms() {
    let two = reproduce(Figure::Two, 0).unwrap();
    assert!(two.passed);
    assert_eq!(two.report["without_sigma_t_prime"].as_array().unwrap().len(), 11);
    assert_eq!(two.report["without_t"].as_array().unwrap().len(), 11);
    assert_eq!(two.report["deletion_iso"].as_array().unwrap().len(), 11);
    let four = reproduce(Figure::Four, 0).unwrap();
    assert!(four.passed);
    assert_eq!(strs(&four.report["without_sigma_t_prime"]), ["a", "c", "d", "h"]);
    assert_eq!(strs(&four.report["without_t"]), ["d", "h", "i", "q"]);
    assert_eq!(four.dots.len(), 2);
}

#[test]
fn encircled_sets_of_non_maximal_and_a5_examples() {
    let three = reproduce(Figure::Three, 0).unwrap();
    assert!(three.passed);
    assert_eq!(strs(&three.report["cbar"]), ["a", "c", "d", "h", "i", "q"]);
    assert_eq!(strs(&three.report["sigma_t_prime"]), ["i", "q"]);
    assert_eq!(three.report["t_prime"], "a+n");
    let five = reproduce(Figure::Five, 0).unwrap();
    assert!(five.passed, "{:?}", five.failures);
    let cbar = strs(&five.report["cbar"]);
    for l in ["a", "b", "c", "d", "e", "f", "g", "h"] {
        assert!(cbar.contains(&l.to_string()), "{l}");
    }
    assert_eq!(strs(&five.report["t_prime"].as_str().unwrap().split('+').map(String::from).collect::<serde_json::Value>()), ["a", "b", "c'", "d'"]);
}

#[test]
fn module_category_examples() {
    let a3 = reproduce(Figure::IntroA3, 0).unwrap();
    assert!(a3.passed);
    assert_eq!(a3.report["mod"].as_array().unwrap().len(), 6);
    assert_eq!(a3.report["quotient"].as_array().unwrap().len(), 5);
    assert_eq!(a3.report["mod_quivers_isomorphic"], false);
    let a4 = reproduce(Figure::IntroA4, 3).unwrap();
    assert!(a4.passed, "{:?}", a4.failures);
    assert_eq!(a4.report["mod_quivers_isomorphic"], false);
    assert!(a4.report["verification"]["fbar"].is_object());
}

#[test]
fn reports_are_deterministic() {
    for f in [Figure::One, Figure::Four, Figure::IntroA3] {
        let a = reproduce(f, 0).unwrap();
        let b = reproduce(f, 0).unwrap();
        assert_eq!(serde_json::to_string(&a.to_json()).unwrap(), serde_json::to_string(&b.to_json()).unwrap());
        assert_eq!(a.dots, b.dots);
    }
}

#[test]
fn seed_changes_samples_not_verdicts() {
    let ctx = Context::preset("A4_tm1s1").unwrap();
    let t = ctx.object("T1,T2,T3").unwrap();
    let r = ctx.object("T2").unwrap();
    for seed in [0, 1, 99] {
        assert!(commands::verify(&ctx, &t, &r, Theorem::Localisations, seed, false).unwrap().passed);
    }
}

#[test]
fn labels_and_coordinates_resolve_alike() {
    let ctx = Context::preset("A9_t3s1").unwrap();
    let a = ctx.resolve("a").unwrap();
    let (p, i) = ctx.cat.cover[a].unwrap();
    assert_eq!(ctx.resolve(&format!("{p}:{i}")).unwrap(), a);
    assert!(matches!(ctx.resolve("nope"), Err(Error::UnknownLabel(_))));
    assert!(matches!(ctx.resolve("0:99"), Err(Error::UnknownLabel(_))));
}

#[test]
fn subcat_without_r_lists_c_t() {
    let ctx = Context::preset("A3_tm1s1").unwrap();
    let t = ctx.object("T1,T2,T3").unwrap();
    let out = commands::subcat(&ctx, &t, None, false).unwrap();
    assert_eq!(out.report["c_t"].as_array().unwrap().len(), 9);
    assert!(matches!(commands::subcat(&ctx, &t, None, true), Err(Error::InvalidInput(_))));
}

#[test]
fn indecomposable_only_mutation() {
    let ctx = Context::preset("A5_tm2s1").unwrap();
    let t = ctx.object("a,b,c,d").unwrap();
    let r = ctx.object("c,d").unwrap();
    assert!(commands::mutate(&ctx, &t, &r, false).unwrap().passed);
    assert!(matches!(commands::mutate(&ctx, &t, &r, true), Err(Error::UnsupportedShape(_))));
}

#[test]
fn empty_scenario_has_no_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let run = scenario::run_text("", dir.path(), Some(&dir.path().join("out"))).unwrap();
    assert_eq!(run.exit_code(), 0);
    assert!(!dir.path().join("out").exists());
    let run = scenario::run_text(r#"{"commands": []}"#, dir.path(), None).unwrap();
    assert!(run.outcomes.is_empty());
}

#[test]
fn scenario_errors_carry_positions() {
    let dir = Path::new(".");
    match scenario::run_text("{\n  \"preset\": \"A3_tm1s1\",\n  \"commands\": [ }", dir, None) {
        Err(Error::ParseError { line, .. }) => assert_eq!(line, 3),
        other => panic!("{other:?}"),
    }
    let text = "{\n  \"preset\": \"A3_tm1s1\",\n  \"objects\": {\"T\": [\"T1\", \"Tx\"]},\n  \"commands\": [{\"command\": \"enumerate-rigid\"}]\n}";
    match scenario::run_text(text, dir, None) {
        Err(Error::UnknownLabel(m)) => assert!(m.contains("line 3"), "{m}"),
        other => panic!("{other:?}"),
    }
    let text = r#"{"preset": "B7", "commands": [{"command": "enumerate-rigid"}]}"#;
    assert!(matches!(scenario::run_text(text, dir, None), Err(Error::UnknownPreset(_))));
    let text = r#"{"preset": "A3_tm1s1", "commands": [{"command": "mutate", "T": "T", "R": "R"}]}"#;
    assert!(matches!(scenario::run_text(text, dir, None), Err(Error::UnknownLabel(_))));
}

#[test]
fn shipped_scenario_writes_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let file = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios/cluster_a3.json");
    let run = scenario::run_file(&file, Some(dir.path())).unwrap();
    assert_eq!(run.exit_code(), 0);
    let report = fs::read_to_string(dir.path().join("report.md")).unwrap();
    assert!(report.contains("Overall: pass"));
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("01_enumerate-rigid.json")).unwrap()).unwrap();
    assert_eq!(json["report"]["count"]["basic_rigid"], 45);
    assert_eq!(json["report"]["count"]["cluster_tilting"], 14);
    assert!(dir.path().join("02_verify_left.dot").exists());
}

#[test]
fn failing_outcome_sets_exit_code_one() {
    let mut out = Outcome::new(serde_json::json!({}));
    out.check("witness", false);
    let run = Run { outcomes: vec![("x".into(), out)], output: None };
    assert_eq!(run.exit_code(), 1);
}

#[test]
fn binary_exit_codes() {
    let ok = bin().args(["mutate", "--preset", "A9_t3s1", "--T", "a,b,c", "--R", "c"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(json["report"]["r_star"], "s");
    assert_eq!(json["report"]["exchange_triangle"][1], "b+b");
    let bad = bin().args(["mutate", "--preset", "A9_t3s1", "--T", "a,b,zz", "--R", "c"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let bad = bin().args(["preset", "validate", "A2"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let not_summand = bin().args(["verify", "--preset", "A9_t3s1", "--T", "a,c", "--R", "b", "--theorem", "fbar"]).output().unwrap();
    assert_eq!(not_summand.status.code(), Some(2));
}

#[test]
fn binary_writes_to_env_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin().args(["reproduce", "--figure", "4"]).env(tricat_cli::OUT_ENV, dir.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("figure_4.json").exists());
    assert!(dir.path().join("figure_4_without_t.dot").exists());
    assert!(dir.path().join("figure_4.md").exists());
}
