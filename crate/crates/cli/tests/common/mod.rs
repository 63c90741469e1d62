//! Helpers shared by the CLI test targets.

#![allow(dead_code)]

use std::path::{Path, PathBuf};

pub fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

pub fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Runs the CLI in-process: exit code, stdout, stderr.
pub fn run(args: &[&str]) -> (i32, Vec<u8>, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("octaspine").chain(args.iter().copied());
    let code = octaspine_cli::run(argv, &mut out, &mut err);
    (code, out, err)
}

/// Every golden file with the arguments that produce it.
pub fn golden_cases() -> Vec<(String, Vec<String>)> {
    let mut cases = Vec::new();
    let mut add = |name: String, args: &[&str]| {
        cases.push((name, args.iter().map(|s| s.to_string()).collect()));
    };
    let two = data("two_identity.tri");
    add("two_identity.validate.txt".into(), &["validate", &two]);
    add("two_identity.validate.json".into(), &["validate", &two, "--format", "json"]);
    add("two_identity.info.txt".into(), &["info", &two]);
    add("two_identity.info.json".into(), &["info", &two, "--format", "json"]);
    add("two_identity.certify.json".into(), &["certify", &two, "--format", "json"]);
    add("two_identity.homology.json".into(), &["homology", &two, "--format", "json"]);
    add("two_identity.aut.json".into(), &["aut", &two, "--format", "json"]);
    for i in 1..=11 {
        let input = data(&format!("n1_{i:02}.tri"));
        add(format!("n1_{i:02}.info.json"), &["info", &input, "--format", "json"]);
        add(format!("n1_{i:02}.certify.txt"), &["certify", &input]);
    }
    add("census1.txt".into(), &["census", "1"]);
    add("census1.json".into(), &["census", "1", "--format", "json"]);
    add("census2.count.txt".into(), &["census", "2", "--count-only"]);
    add("trivial.group.txt".into(), &["group-build", "trivial"]);
    add("cyclic2.group.json".into(), &["group-build", "cyclic:2", "--format", "json"]);
    cases
}

/// Runs one golden case twice and compares both runs with the stored bytes.
pub fn check_golden(name: &str, args: &[String]) -> Result<(), String> {
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    let (code, first, err) = run(&args);
    if code != 0 || !err.is_empty() {
        return Err(format!("{args:?} exited with {code}: {}", String::from_utf8_lossy(&err)));
    }
    if run(&args).1 != first {
        return Err(format!("output of {args:?} is not deterministic"));
    }
    let path = golden_path(name);
    if std::env::var_os("OCTASPINE_BLESS").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).map_err(|e| e.to_string())?;
        return std::fs::write(&path, &first).map_err(|e| e.to_string());
    }
    let expected = std::fs::read(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected != first {
        return Err(format!("{name} differs from golden output"));
    }
    Ok(())
}
