//! End-to-end checks of the `mspace` binary: exit codes, deterministic
//! output, and the documented JSON shapes.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mspace"))
}

fn write_space(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, content).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

const THREE_POINTS_ONE_GEN: &str =
    r#"{"points": ["a", "b", "c"], "generators": [["a"]]}"#;
const POWER3: &str = r#"{"points": ["a", "b", "c"], "generators": [["a"], ["b"]]}"#;
const POWER2: &str = r#"{"points": ["a", "b"], "generators": [["a"]]}"#;

#[test]
fn gen_prints_canonical_space() {
    let dir = tempfile::tempdir().unwrap();
    let space = write_space(dir.path(), "space.json", THREE_POINTS_ONE_GEN);
    let out = run(&["gen", space.to_str().unwrap()]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(value["members"].as_array().unwrap().len(), 4);
    assert_eq!(value["atoms"].as_array().unwrap().len(), 2);
    assert_eq!(value["separating"], false);
    // byte-identical on a second run
    let again = run(&["gen", space.to_str().unwrap()]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn gen_with_empty_generators_gives_trivial_algebra() {
    let dir = tempfile::tempdir().unwrap();
    let space = write_space(
        dir.path(),
        "space.json",
        r#"{"points": ["a"], "generators": []}"#,
    );
    let out = run(&["gen", space.to_str().unwrap()]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(value["members"].as_array().unwrap().len(), 2);
    assert_eq!(value["separating"], true);
}

#[test]
fn gen_rejects_duplicate_labels_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let space = write_space(
        dir.path(),
        "space.json",
        r#"{"points": ["a", "a"], "generators": []}"#,
    );
    let out = run(&["gen", space.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gen_rejects_unknown_generator_labels() {
    let dir = tempfile::tempdir().unwrap();
    let space = write_space(
        dir.path(),
        "space.json",
        r#"{"points": ["a"], "generators": [["z"]]}"#,
    );
    let out = run(&["gen", space.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn max_points_guard_refuses_large_spaces() {
    let dir = tempfile::tempdir().unwrap();
    let space = write_space(
        dir.path(),
        "space.json",
        r#"{"points": ["a","b","c","d","e","f"], "generators": []}"#,
    );
    let out = run(&["gen", space.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let ok = bin()
        .args(["gen", space.to_str().unwrap(), "--max-points", "6"])
        .output()
        .unwrap();
    assert!(ok.status.success());
}

#[test]
fn enumerate_counts_match() {
    let dir = tempfile::tempdir().unwrap();
    let space = write_space(dir.path(), "space.json", POWER3);
    let ideals = run(&["enumerate", space.to_str().unwrap(), "--what", "ideals"]);
    assert_eq!(stdout_of(&ideals).lines().count(), 8);
    let maxcong = run(&["enumerate", space.to_str().unwrap(), "--what", "maxcong"]);
    assert_eq!(stdout_of(&maxcong).lines().count(), 3);

    let one = write_space(
        dir.path(),
        "one.json",
        r#"{"points": ["a"], "generators": []}"#,
    );
    let filters = run(&["enumerate", one.to_str().unwrap(), "--what", "filters"]);
    assert_eq!(stdout_of(&filters).lines().count(), 2);

    let zc = run(&["enumerate", space.to_str().unwrap(), "--what", "zcongruences"]);
    let lines = stdout_of(&zc);
    assert_eq!(lines.lines().count(), 8);
    assert!(lines.contains(r#"{"kind":"universal"}"#));
    assert!(lines.contains(r#"{"kind":"diagonal"}"#));
    assert!(lines.contains(r#"{"core":["a"],"kind":"fromFilter"}"#));
}

#[test]
fn enumerate_unknown_what_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let space = write_space(dir.path(), "space.json", POWER3);
    let out = run(&["enumerate", space.to_str().unwrap(), "--what", "widgets"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_all_passes_on_power3() {
    let dir = tempfile::tempdir().unwrap();
    let space = write_space(dir.path(), "space.json", POWER3);
    let out = run(&["verify", space.to_str().unwrap(), "--suite", "all"]);
    assert!(out.status.success(), "{}", stdout_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("suite ideal-lattice:"));
    assert!(text.contains("suite quotient:"));
    assert!(!text.contains("FAIL"));
    // per-congruence quotient reports are streamed
    assert!(text.contains(r#""totallyOrdered":true"#));
}

#[test]
fn verify_duality_passes_on_non_separating_space() {
    let dir = tempfile::tempdir().unwrap();
    let space = write_space(dir.path(), "space.json", THREE_POINTS_ONE_GEN);
    let out = run(&["verify", space.to_str().unwrap(), "--suite", "duality"]);
    assert!(out.status.success(), "{}", stdout_of(&out));
}

#[test]
fn verify_mutation_self_test_fails_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let space = write_space(dir.path(), "space.json", POWER3);
    let out = run(&[
        "verify",
        space.to_str().unwrap(),
        "--suite",
        "ideal-lattice",
        "--mutate",
        "swap-join-meet",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout_of(&out);
    assert!(text.contains("counterexample"));
    assert!(text.contains("FAIL"));
}

#[test]
fn verify_accepts_custom_grid_by_flag_and_env() {
    let dir = tempfile::tempdir().unwrap();
    let space = write_space(dir.path(), "space.json", POWER2);
    let out = run(&[
        "verify",
        space.to_str().unwrap(),
        "--suite",
        "quotient",
        "--grid",
        "0,1,3",
    ]);
    assert!(out.status.success(), "{}", stdout_of(&out));

    let out = bin()
        .args(["verify", space.to_str().unwrap(), "--suite", "duality"])
        .env("MSPACE_GRID", "0,1")
        .output()
        .unwrap();
    assert!(out.status.success());

    let bad = run(&[
        "verify",
        space.to_str().unwrap(),
        "--suite",
        "duality",
        "--grid",
        "2,3",
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn export_ideal_lattice_diamond_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let space = write_space(dir.path(), "space.json", r#"{"points": ["a", "b"], "generators": [["a"], ["b"]]}"#);
    let out = run(&["export", space.to_str().unwrap(), "--target", "ideal-lattice-dot"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert_eq!(text.matches(" -> ").count(), 4);
    assert!(text.contains("\"{a,b}\" -> \"{a}\""));
    let again = run(&["export", space.to_str().unwrap(), "--target", "ideal-lattice-dot"]);
    assert_eq!(out.stdout, again.stdout);

    // write to a file
    let out_path = dir.path().join("lattice.dot");
    let file_run = run(&[
        "export",
        space.to_str().unwrap(),
        "--target",
        "filter-lattice-dot",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(file_run.status.success());
    assert!(fs::read_to_string(&out_path).unwrap().contains("filter_lattice"));
}

#[test]
fn gen_emit_canonical_round_trips_bit_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let space = write_space(dir.path(), "space.json", THREE_POINTS_ONE_GEN);
    let canonical = dir.path().join("canonical.json");
    let out = bin()
        .args([
            "gen",
            space.to_str().unwrap(),
            "--emit-canonical",
            canonical.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let first = fs::read_to_string(&canonical).unwrap();
    // regenerating from the canonical file reproduces it byte for byte
    let canonical2 = dir.path().join("canonical2.json");
    let out = bin()
        .args([
            "gen",
            canonical.to_str().unwrap(),
            "--emit-canonical",
            canonical2.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(first, fs::read_to_string(&canonical2).unwrap());
    // keys appear in the documented order with two-space indent
    assert!(first.starts_with("{\n  \"points\": ["));
    assert!(first.contains("\n  \"generators\": ["));
}

#[test]
fn export_structure_dot_hyperedges() {
    let dir = tempfile::tempdir().unwrap();
    let space = write_space(dir.path(), "space.json", THREE_POINTS_ONE_GEN);
    let out = run(&["export", space.to_str().unwrap(), "--target", "structure-dot"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("\"rho0\""));
    assert!(text.contains("shape=box"));
    // the full-member closed set points at both structure points
    assert!(text.contains("\"m{a,b,c}\" -> \"rho0\""));
    assert!(text.contains("\"m{a,b,c}\" -> \"rho1\""));
}

#[test]
fn export_structure_json_points() {
    let dir = tempfile::tempdir().unwrap();
    let space = write_space(dir.path(), "space.json", THREE_POINTS_ONE_GEN);
    let out = run(&["export", space.to_str().unwrap(), "--target", "structure-json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(value["points"], 2);
    assert_eq!(value["etaTable"].as_array().unwrap().len(), 2);
}

#[test]
fn isocheck_identity_and_permutation_pass() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_space(dir.path(), "a.json", POWER3);
    let b = write_space(dir.path(), "b.json", POWER3);
    let ident = write_space(
        dir.path(),
        "ident.json",
        r#"{"pointMap": {"a": "a", "b": "b", "c": "c"}}"#,
    );
    let out = run(&[
        "isocheck",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
        ident.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stdout_of(&out));
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(value["pass"], true);
    assert_eq!(value["certificate"]["atomMap"], serde_json::json!([0, 1, 2]));

    let swap = write_space(
        dir.path(),
        "swap.json",
        r#"{"pointMap": {"a": "b", "b": "a", "c": "c"}}"#,
    );
    let out = run(&[
        "isocheck",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
        swap.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(value["certificate"]["atomMap"], serde_json::json!([1, 0, 2]));

    // atom-level descriptor route
    let atoms = write_space(dir.path(), "atoms.json", r#"{"atomMap": [2, 1, 0]}"#);
    let out = run(&[
        "isocheck",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
        atoms.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(value["certificate"]["pointMap"]["a"], "c");
}

#[test]
fn isocheck_different_sizes_fail_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_space(dir.path(), "a.json", POWER2);
    let b = write_space(dir.path(), "b.json", POWER3);
    let map = write_space(
        dir.path(),
        "map.json",
        r#"{"pointMap": {"a": "a", "b": "b"}}"#,
    );
    let out = run(&[
        "isocheck",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
        map.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(value["pass"], false);
    assert!(value["failure"].as_str().unwrap().contains("point counts differ"));
}

#[test]
fn isocheck_map_without_shapes_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_space(dir.path(), "a.json", POWER2);
    let map = write_space(dir.path(), "map.json", r#"{}"#);
    let out = run(&[
        "isocheck",
        a.to_str().unwrap(),
        a.to_str().unwrap(),
        map.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}
