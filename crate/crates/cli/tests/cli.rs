//! Exit codes, error channels and file outputs.

mod common;

use common::data;

fn run(args: &[&str]) -> (i32, String, String) {
    let (code, out, err) = common::run(args);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn scratch_dir(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("octaspine-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn validate_reports_size_and_manifoldness() {
    let (code, out, err) = run(&["validate", &data("two_identity.tri")]);
    assert_eq!((code, out.as_str(), err.as_str()), (0, "valid, n=2, manifold=true\n", ""));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["frobnicate"],
        vec!["validate"],
        vec!["census", "x"],
        vec!["census", "1", "--bogus"],
        vec!["info", "a.tri", "--format", "yaml"],
        vec!["census", "0"],
    ] {
        let (code, out, err) = run(&args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty());
        assert!(!err.is_empty());
    }
}

#[test]
fn domain_errors_exit_with_one() {
    let dir = scratch_dir("domain");
    let bad = dir.join("bad.tri");
    std::fs::write(&bad, "tri 1\n0 0 : 0 1 : 1 0 2 3\n").unwrap();
    let (code, out, err) = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.starts_with("error (invalid-triangulation)"), "{err}");

    let (code, _, err) = run(&["validate", bad.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code, 1);
    let doc: serde_json::Value = serde_json::from_str(&err).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["error"]["kind"], "invalid-triangulation");

    let table = dir.join("bad.group");
    std::fs::write(&table, "group 2\n0 1\n1 1\n").unwrap();
    let (code, _, err) = run(&["group-build", table.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("invalid-group"), "{err}");

    assert_eq!(run(&["group-build", "nonsense"]).0, 1);
    assert_eq!(run(&["census", "9"]).0, 1);
    let (code, _, err) = run(&["group-build", "sym:3"]);
    assert_eq!(code, 1);
    assert!(err.contains("exceeds the limit"), "{err}");
}

#[test]
fn help_and_version_go_to_stdout() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("group-build"));
    let (code, out, _) = run(&["--version"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("octaspine"));
}

#[test]
fn every_json_document_has_a_schema() {
    let two = data("two_identity.tri");
    for verb in ["validate", "info", "homology", "certify", "aut"] {
        let (code, out, _) = run(&[verb, &two, "--format", "json"]);
        assert_eq!(code, 0);
        let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["schema"], 1, "{verb}");
    }
}

#[test]
fn geometry_report_fields() {
    let (_, out, _) = run(&["certify", &data("two_identity.tri"), "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    let mut keys: Vec<&str> = doc.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(
        keys,
        ["certificate", "cusps", "genus", "n", "pm_complexity", "schema", "vol_D", "vol_N"]
    );
    assert_eq!(doc["certificate"]["kind"], "NONE_BELOW_6");
    for cusp in doc["cusps"].as_array().unwrap() {
        let mut k: Vec<&str> = cusp.as_object().unwrap().keys().map(String::as_str).collect();
        k.sort_unstable();
        assert_eq!(k, ["area", "orientable", "shape", "valence"]);
    }
    // Twelve significant digits.
    assert_eq!(doc["vol_N"].as_f64().unwrap().to_string(), "7.32772475342");
}

#[test]
fn file_outputs() {
    let dir = scratch_dir("files");
    let listing = dir.join("census.txt");
    let (code, out, _) = run(&["census", "1", "--out", listing.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, ""));
    assert_eq!(std::fs::read_to_string(&listing).unwrap().lines().count(), 11);

    let (code, out, _) = run(&["census", "2", "--manifold", "--count-only"]);
    assert_eq!(code, 0);
    let manifolds: usize = out.trim().parse().unwrap();
    assert!(manifolds > 0 && manifolds < 173);
    let (_, out, _) = run(&["census", "2", "--min-valence", "13", "--count-only"]);
    assert_eq!(out, "0\n");

    let tri = dir.join("tg.tri");
    let report = dir.join("report.json");
    let (code, _, err) = run(&[
        "group-build",
        "cyclic:2",
        "--out",
        tri.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let (code, out, _) = run(&["aut", tri.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.starts_with("aut_order = 2\n"), "{out}");
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["report"]["aut_order"], 2);
    assert_eq!(doc["report"]["stages"]["p_g"], 960);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn group_tables_from_files() {
    let dir = scratch_dir("table");
    let path = dir.join("z2.group");
    std::fs::write(&path, "group 2\n% Z/2\n0 1\n1 0\n").unwrap();
    let (code, out, err) = run(&["group-build", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("aut_order 2"), "{out}");
    std::fs::remove_dir_all(dir).unwrap();
}
