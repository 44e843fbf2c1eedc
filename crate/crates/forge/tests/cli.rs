use std::path::{Path, PathBuf};
use std::process::Command;

use fraction_forge::cli::run;
use fraction_forge::io;
use serde_json::Value;

fn corpus(rel: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(rel).display().to_string()
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {}", self.stdout))
    }
}

fn cli(args: &[&str]) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("fraction-forge").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

#[test]
fn marked_arrow_passes() {
    let r = cli(&["fractions", "check", "--input", &corpus("categories/walking_marked_arrow.json")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let j = r.json();
    assert_eq!(j["ok"], true);
    assert_eq!(j["mode"], "proper");
    assert_eq!(j["command"], "fractions check");
    assert_eq!(j["input_sha256"][0].as_str().unwrap().len(), 64);
}

#[test]
fn one_marked_parallel_pair_fails_with_a_span() {
    let r = cli(&["fractions", "check", "--input", &corpus("categories/parallel_pair_one_marked.json")]);
    assert_eq!(r.code, 1);
    let j = r.json();
    assert_eq!(j["ok"], false);
    assert_eq!(j["witnesses"][0]["kind"], "span");
    assert_eq!(j["witnesses"][0]["w"], "f");
}

#[test]
fn infinity_mode_reports_shapes() {
    let path = corpus("categories/parallel_pair_one_marked.json");
    let r = cli(&["fractions", "check", "--mode", "infty", "--side", "R", "--input", &path]);
    assert_eq!(r.code, 1);
    let j = r.json();
    assert_eq!(j["side"], "R");
    assert_eq!(j["shapes_checked"].as_array().unwrap().len(), 5);
    assert_eq!(j["witnesses"][0]["kind"], "lift");
    // lowercase sides are accepted too
    let lower = cli(&["fractions", "check", "--mode", "infty", "--side", "r", "--input", &path]);
    assert_eq!(lower.stdout, r.stdout);
}

#[test]
fn lifting_one_shape() {
    let path = corpus("categories/walking_marked_arrow.json");
    let r = cli(&["fractions", "lift", "--input", &path, "--n", "2", "--k", "1"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["shape"], "L-J^2_1 -> L-I^2_1");
    assert_eq!(cli(&["fractions", "lift", "--input", &path, "--n", "2", "--k", "3"]).code, 2);
}

#[test]
fn identity_marking_compares_isomorphic() {
    let r = cli(&["localize", "compare", "--input", &corpus("categories/arrow_identities.json")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let j = r.json();
    assert_eq!(j["iso"], true);
    for row in j["hom_table"].as_array().unwrap() {
        assert_eq!(row["gz"], row["colimit"]);
        assert_eq!(row["gz"], row["ho"]);
        assert_eq!(row["gz"], row["pi0"]);
    }
}

#[test]
fn compare_needs_fractions() {
    let r = cli(&["localize", "compare", "--input", &corpus("categories/parallel_pair_one_marked.json")]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.starts_with("error:"));
}

#[test]
fn usage_errors_exit_two() {
    let path = corpus("categories/walking_marked_arrow.json");
    assert_eq!(cli(&["fractions", "check", "--input", &path, "--bogus"]).code, 2);
    assert_eq!(cli(&["fractions", "check"]).code, 2);
    assert_eq!(cli(&["fractions", "check", "--input", &path, "--mode", "fuzzy"]).code, 2);
    assert_eq!(cli(&["nonsense"]).code, 2);
    assert_eq!(cli(&["fractions", "check", "--input", "/no/such/file.json"]).code, 2);
    let r = cli(&["localize", "ex", "--input", &path, "--levels", "99"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("ceiling"));
    // classical mode needs a category
    assert_eq!(cli(&["fractions", "check", "--mode", "classical", "--input", &corpus("ssets/horn21.json")]).code, 2);
}

#[test]
fn help_and_version_exit_zero() {
    let r = cli(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("fractions"));
    assert_eq!(cli(&["--version"]).code, 0);
}

#[test]
fn json_can_be_turned_off() {
    let path = corpus("categories/walking_marked_arrow.json");
    let r = cli(&["fractions", "check", "--input", &path, "--json", "false"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.is_empty());
    assert!(r.stderr.starts_with("ok in"));
}

#[test]
fn syntax_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{\n  \"objects\": [\"a\",\n  \"morphisms\": []\n}\n").unwrap();
    let r = cli(&["fractions", "check", "--input", p.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("bad.json:3:"), "{}", r.stderr);
}

#[test]
fn empty_corpus_is_green_with_a_warning() {
    let dir = tempfile::tempdir().unwrap();
    let r = cli(&["corpus", "run", "--input", dir.path().to_str().unwrap()]);
    assert_eq!(r.code, 0);
    let j = r.json();
    assert_eq!(j["ok"], true);
    assert_eq!(j["warnings"][0], "empty corpus");
    assert!(r.stderr.contains("warning: empty corpus"));
}

#[test]
fn corrupted_corpus_file_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(corpus("categories/chain2_all.json"), dir.path().join("a.json")).unwrap();
    std::fs::write(dir.path().join("b.json"), "{\"objects\": [\"a\"], ").unwrap();
    let r = cli(&["corpus", "run", "--input", dir.path().to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("b.json"), "{}", r.stderr);
}

#[test]
fn unmet_expectation_fails_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(corpus("categories/walking_marked_arrow.json")).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["expect"]["clf"] = Value::Bool(false);
    std::fs::write(dir.path().join("a.json"), serde_json::to_string(&v).unwrap()).unwrap();
    let r = cli(&["corpus", "run", "--input", dir.path().to_str().unwrap()]);
    assert_eq!(r.code, 1);
    let j = r.json();
    assert_eq!(j["files"][0]["expectation_mismatches"][0]["check"], "clf");
    assert_eq!(j["files"][0]["expectation_mismatches"][0]["got"], true);
}

#[test]
fn gz_emits_the_golden_dot() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("crafted.dot");
    let r = cli(&[
        "localize",
        "gz",
        "--input",
        &corpus("categories/crafted.json"),
        "--emit-dot",
        out.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let want = std::fs::read_to_string(golden("crafted_gz.dot")).unwrap();
    assert_eq!(std::fs::read_to_string(out).unwrap(), want);
    // f and g are identified once w is inverted
    let j = r.json();
    assert_eq!(j["functor"]["f"], j["functor"]["g"]);
    let ab = j["hom_sizes"].as_array().unwrap().iter().find(|h| h["source"] == "a" && h["target"] == "b").cloned();
    assert_eq!(ab.unwrap()["size"], 1);
}

#[test]
fn export_dot_matches_golden() {
    let r = cli(&["export", "dot", "--input", &corpus("categories/crafted.json")]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, std::fs::read_to_string(golden("crafted.dot")).unwrap());
    let loc = cli(&["export", "dot", "--localized", "--input", &corpus("categories/crafted.json")]);
    assert_eq!(loc.stdout, std::fs::read_to_string(golden("crafted_gz.dot")).unwrap());
}

#[test]
fn ex_emits_a_loadable_sset() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ex.json");
    let r = cli(&[
        "localize",
        "ex",
        "--input",
        &corpus("categories/walking_marked_arrow.json"),
        "--levels",
        "1",
        "--emit-sset",
        out.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let j = r.json();
    // one cospan over the source and four over the target
    assert_eq!(j["levels"][1]["count"], 5);
    let back = io::load_sset(&out).unwrap();
    assert_eq!(serde_json::to_value(back.marked.base().counts()).unwrap(), j["nondegenerate"]);
}

#[test]
fn mapspace_of_the_marked_arrow() {
    let path = corpus("categories/walking_marked_arrow.json");
    let r = cli(&["mapspace", "--input", &path, "--from", "0", "--to", "1"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.json()["components"], 1);
    assert_eq!(cli(&["mapspace", "--input", &path, "--from", "0", "--to", "z"]).code, 2);
}

#[test]
fn graph_commands() {
    let r = cli(&["graph", "a1", "--input", &corpus("graphs/c5.json"), "--base", "0"]);
    assert_eq!(r.code, 0);
    let j = r.json();
    assert_eq!(j["rank"], 1);
    assert_eq!(j["oracle"]["agrees"], true);
    assert_eq!(cli(&["graph", "a1", "--input", &corpus("graphs/c4.json"), "--base", "0"]).json()["rank"], 0);
    assert_eq!(cli(&["graph", "a1", "--input", &corpus("graphs/c5.json"), "--base", "q"]).code, 2);
    let r = cli(&[
        "graph",
        "nerve-box",
        "--input",
        &corpus("graphs/c4.json"),
        "--box",
        &corpus("boxes/box02_c4.json"),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.json()["filler"].is_object());
}

#[test]
fn pullback_probe_of_identities() {
    let dir = tempfile::tempdir().unwrap();
    let map = r#"{"source": {"vertices": ["0", "1", "2"], "edges": [["0", "1"], ["1", "2"]]},
  "target": {"vertices": ["0", "1", "2"], "edges": [["0", "1"], ["1", "2"]]},
  "map": {"0": "0", "1": "1", "2": "2"}}"#;
    let f = dir.path().join("f.json");
    std::fs::write(&f, map).unwrap();
    let v = dir.path().join("v.json");
    std::fs::write(
        &v,
        r#"{"x": "1", "y": "1", "p1": {"offset": 0, "walk": ["1"]}, "p2": {"offset": 0, "walk": ["1"]}}"#,
    )
    .unwrap();
    let (fs, vs) = (f.to_str().unwrap(), v.to_str().unwrap());
    let r = cli(&["graph", "pullback-probe", "--f", fs, "--g", fs, "--vertex", vs, "--radius", "1"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.json()["input_sha256"].as_array().unwrap().len(), 3);
}

#[test]
fn reports_are_reproducible() {
    let bin = env!("CARGO_BIN_EXE_fraction-forge");
    let args = ["localize", "gz", "--input", &corpus("categories/crafted.json")];
    let a = Command::new(bin).args(args).output().unwrap();
    let b = Command::new(bin).args(args).output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    // timings stay on standard error
    assert!(!String::from_utf8_lossy(&a.stdout).contains(" in "));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_fraction-forge");
    let code = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(code(&["fractions", "check", "--input", &corpus("categories/walking_marked_arrow.json")]), Some(0));
    assert_eq!(code(&["fractions", "check", "--input", &corpus("categories/parallel_pair_one_marked.json")]), Some(1));
    assert_eq!(code(&["fractions", "check", "--unknown"]), Some(2));
}
