//! Byte-for-byte comparison of CLI output against files stored in the
//! repository. Set `OCTASPINE_BLESS=1` to regenerate them.

mod common;

use common::{check_golden, data, golden_cases, run};

#[test]
fn golden_outputs() {
    let cases = golden_cases();
    let failures: Vec<String> = cases
        .iter()
        .filter_map(|(name, args)| check_golden(name, args).err())
        .collect();
    assert!(failures.is_empty(), "{failures:#?}");
    // No stray files in the golden directory.
    let stored = std::fs::read_dir(common::golden_path("")).unwrap().count();
    assert_eq!(stored, cases.len());
}

#[test]
fn census_workers_do_not_change_the_stream() {
    assert_eq!(run(&["census", "2", "--jobs", "1"]), run(&["census", "2", "--jobs", "4"]));
}

#[test]
fn census_members_match_the_stored_gluings() {
    let (_, listing, _) = run(&["census", "1"]);
    let listing = String::from_utf8(listing).unwrap();
    assert_eq!(listing.lines().count(), 11);
    for (i, line) in listing.lines().enumerate() {
        let stored = std::fs::read_to_string(data(&format!("n1_{:02}.tri", i + 1))).unwrap();
        assert_eq!(line.replace("; ", "\n") + "\n", stored);
    }
}

#[test]
fn seeded_homology_is_stable() {
    let two = data("two_identity.tri");
    let (_, canonical, _) = run(&["homology", &two, "--format", "json"]);
    for seed in ["0", "7", "123456789"] {
        assert_eq!(run(&["homology", &two, "--format", "json", "--seed", seed]).1, canonical);
    }
}
