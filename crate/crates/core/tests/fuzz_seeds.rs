//! Replays the checked-in fuzz seeds through the parsers they target.

use std::path::PathBuf;

use depthlab_core::permgroup::parse_group_spec;
use depthlab_core::relcyclic::parse_algebra;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<(String, String)> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| {
            let path = e.unwrap().path();
            (
                path.display().to_string(),
                std::fs::read_to_string(&path).unwrap(),
            )
        })
        .collect();
    out.sort();
    out
}

#[test]
fn group_spec_seeds_parse() {
    let all = seeds("group_spec");
    assert!(!all.is_empty());
    for (path, text) in all {
        assert!(parse_group_spec(&text).is_ok(), "{path}");
    }
}

#[test]
fn algebra_seeds_parse() {
    let all = seeds("algebra");
    assert!(!all.is_empty());
    for (path, text) in all {
        assert!(parse_algebra(&text, &path).is_ok(), "{path}");
    }
}
