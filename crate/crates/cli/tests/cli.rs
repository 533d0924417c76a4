use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_steinforge"))
        .args(args)
        .env_remove("STEINFORGE_GUARD_OVERRIDE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let o = run(&full);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn matching_on_four_nodes_is_two_points() {
    let o = run(&["matching", "--s", "1", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("H~0 = Z^2"), "{text}");
    assert!(text.contains("verdict: n/a"));
    let v = json(&["matching", "--s", "1", "--n", "4"]);
    assert_eq!(v["verdict"], Value::Null);
    assert_eq!(v["counts"], serde_json::json!([6, 3]));
}

#[test]
fn matching_on_five_nodes_is_connected() {
    let v = json(&["matching", "--s", "1", "--n", "5"]);
    assert_eq!(v["k"], 0);
    assert_eq!(v["verdict"]["pass"], true);
    let o = run(&["matching", "--s", "2", "--n", "5", "--oriented", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("dim,betti,torsion\n"));
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(run(&["matching", "--s", "0", "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "nosuch"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "en", "--s", "3", "--n", "7"]).status.code(), Some(2));
    assert_eq!(run(&["group", "canon", "no/such/file.json"]).status.code(), Some(2));
    assert_eq!(run(&["matching", "--s", "1"]).status.code(), Some(2));
    // CSV is reserved for homology tables
    assert_eq!(run(&["verify", "core", "--format", "csv"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "ve", "--s", "2", "--n", "2", "--format", "csv"]).status.code(), Some(2));
}

#[test]
fn guard_override_lifts_bounds() {
    let o = Command::new(env!("CARGO_BIN_EXE_steinforge"))
        .args(["enumerate", "ve", "--s", "3", "--n", "2"])
        .env("STEINFORGE_GUARD_OVERRIDE", "max_n_s3=2")
        .output()
        .unwrap();
    assert!(o.status.success());
    let o = Command::new(env!("CARGO_BIN_EXE_steinforge"))
        .args(["enumerate", "ve", "--s", "3", "--n", "3"])
        .env("STEINFORGE_GUARD_OVERRIDE", "max_n_s3=2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_steinforge"))
        .args(["enumerate", "ve", "--s", "2", "--n", "2"])
        .env("STEINFORGE_GUARD_OVERRIDE", "bogus=1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn ve_iso_suite_passes() {
    let v = json(&["verify", "ve-iso", "--s", "2", "--n", "5"]);
    assert_eq!(v["pass"], true);
    assert_eq!(v["total"], 1);
}

#[test]
fn core_suite_reports_every_trial() {
    let o = run(&["verify", "core", "--seed", "7", "--trials", "200", "--s", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let summary = text.lines().next().unwrap();
    // three figure panels plus the random trials
    assert_eq!(summary, "core: pass 203/203 (seed 7)");
    let trials = text.lines().filter(|l| l.contains("\"core-properties\"")).count();
    assert_eq!(trials, 200);
}

#[test]
fn output_does_not_depend_on_jobs() {
    let a = run(&["verify", "cube-lemma", "--seed", "4", "--trials", "12", "--jobs", "1"]);
    let b = run(&["verify", "cube-lemma", "--seed", "4", "--trials", "12", "--jobs", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["verify", "cube-lemma", "--seed", "5", "--trials", "12"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn suites_are_listed() {
    let text = stdout(&run(&["verify", "--list"]));
    for name in ["lattice-laws", "core", "ve-iso", "two-bricks", "morse-pair", "group-axioms"] {
        assert!(text.lines().any(|l| l.starts_with(name)), "{name}");
    }
}

#[test]
fn composing_with_the_inverse_gives_identity() {
    let v = json(&["group", "compose", &fixture("f1.json"), &fixture("f1inv.json")]);
    assert_eq!(v["identity"], true);
    let v = json(&["group", "compose", &fixture("f1.json"), &fixture("f1.json")]);
    assert_eq!(v["identity"], false);
    let inv = run(&["group", "invert", &fixture("f1.json"), "--format", "json"]);
    let inv: Value = serde_json::from_slice(&inv.stdout).unwrap();
    let path = std::env::temp_dir().join("steinforge-cli-inverse.json");
    std::fs::write(&path, inv["map"].to_string()).unwrap();
    let v = json(&["group", "equal", path.to_str().unwrap(), &fixture("f1inv.json")]);
    assert_eq!(v["equal"], true);
    let v = json(&["group", "equal", &fixture("f1.json"), &fixture("f1inv.json")]);
    assert_eq!(v["equal"], false);
}

#[test]
fn canonical_form_ignores_block_swap() {
    let a = run(&["group", "canon", &fixture("f2.json")]);
    let b = run(&["group", "canon", &fixture("f2-swapped.json")]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["group", "canon", &fixture("f1.json")]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn stabilizer_of_two_halves() {
    let v = json(&["group", "stab", &fixture("halves.json")]);
    assert_eq!(v["count"], 2);
    assert_eq!(v["t"], 2);
    let v = json(&["group", "stab", &fixture("quarters.json")]);
    assert_eq!(v["count"], 24);
}

#[test]
fn transporter_needs_level_one() {
    let v = json(&["group", "transporter", &fixture("f1.json"), &fixture("f1inv.json")]);
    assert!(v["map"]["pairs"].is_array());
    let o = run(&["group", "transporter", &fixture("halves.json"), &fixture("f1.json")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn enumerations_count() {
    assert_eq!(json(&["enumerate", "elementary", "--s", "2"])["count"], 8);
    assert_eq!(json(&["enumerate", "elementary", "--s", "2", "--n", "3", "--labeled"])["count"], 24);
    assert_eq!(json(&["enumerate", "ve", "--s", "2", "--n", "2"])["count"], 4);
    assert_eq!(json(&["enumerate", "en", "--s", "2", "--n", "4"])["count"], 192);
    let middle = json(&["enumerate", "coarsenings", &fixture("fig2-middle.json")]);
    assert_eq!(middle["count"], 5);
    let text = stdout(&run(&["enumerate", "ve", "--s", "2", "--n", "2"]));
    assert_eq!(text.lines().next(), Some("ve: 4"));
}

#[test]
fn figure_fixtures_parse() {
    for name in ["fig2-left.json", "fig2-middle.json", "fig2-right.json"] {
        let o = run(&["enumerate", "coarsenings", &fixture(name), "--format", "json"]);
        assert!(o.status.success(), "{name}");
    }
    let fig3: Value = serde_json::from_str(&std::fs::read_to_string(fixture("fig3.json")).unwrap()).unwrap();
    assert_eq!(fig3["n"], 5);
    let fig4: Value = serde_json::from_str(&std::fs::read_to_string(fixture("fig4.json")).unwrap()).unwrap();
    assert_eq!(fig4["n"], 6);
}
