use std::path::Path;
use std::process::{Command, Output};

fn depthlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_depthlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

#[test]
fn depth_examples() {
    let out = depthlab(&["depth", "--group", "S4", "--subgroup", "S3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!((r["d_min"].as_u64(), r["d_h"].as_u64()), (Some(5), Some(7)));
    assert_eq!(
        (r["ell_QR"].as_u64(), r["ell_QH"].as_u64()),
        (Some(2), Some(3))
    );
    assert_eq!(r["verification"]["morita_invariance"], true);
    assert!(r["prime"].as_u64().is_some() && r["caps"]["points"].as_u64().is_some());
    assert_eq!(r["version"], env!("CARGO_PKG_VERSION"));

    let r = json(&depthlab(&["depth", "--group", "C6", "--subgroup", "C6"]));
    assert_eq!(r["d_min"], 1);
    let r = json(&depthlab(&["depth", "--group", "S4", "--subgroup", "A4"]));
    assert_eq!(r["d_min"], 2);
    assert_eq!(r["subgroup_normal"], true);
}

#[test]
fn dot_output_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s4.dot");
    let out = depthlab(&[
        "depth",
        "--group",
        "S4",
        "--subgroup",
        "S3",
        "--format",
        "dot",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("graph \"S3 < S4\""));
    // Seven nonzero entries, each one edge with a multiplicity label.
    assert_eq!(dot.matches(" -- ").count(), 7);
}

#[test]
fn tower_levels() {
    let r = json(&depthlab(&[
        "tower",
        "--group",
        "S4",
        "--subgroup",
        "S3",
        "--steps",
        "4",
    ]));
    let levels = r["tower"].as_array().unwrap();
    let dmins: Vec<u64> = levels
        .iter()
        .map(|l| l["d_min"].as_u64().unwrap())
        .collect();
    assert_eq!(dmins, vec![5, 6, 5, 6]);
    assert_eq!(levels[0]["matrix"], levels[2]["matrix"]);

    let r = json(&depthlab(&[
        "tower",
        "--group",
        "S3",
        "--subgroup",
        "S3",
        "--steps",
        "3",
    ]));
    assert!(r["tower"]
        .as_array()
        .unwrap()
        .iter()
        .all(|l| l["d_min"] == 1));
}

#[test]
fn hc_examples() {
    let r = json(&depthlab(&[
        "hc",
        "--algebra",
        &data("field.alg"),
        "--degree",
        "2",
    ]));
    assert_eq!(r["base"]["hc"]["dims"], serde_json::json!([1, 0, 1]));
    assert_eq!(r["matrix"]["hc"]["dims"], serde_json::json!([1, 0, 1]));

    let out = depthlab(&[
        "hc",
        "--algebra",
        &data("dual.alg"),
        "--degree",
        "0",
        "--m",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["base"]["hc"]["dims"], r["matrix"]["hc"]["dims"]);
    assert_eq!(r["dennis"][0]["rank"], 2);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.alg");
    std::fs::write(&bad, "dim 2\nconst 0 0 0 x\n").unwrap();
    let out = depthlab(&["hc", "--algebra", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn exit_codes() {
    assert_eq!(
        depthlab(&["depth", "--group", "S4", "--subgroup", "Q8"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        depthlab(&["depth", "--group", "S4", "--subgroup", "C5"])
            .status
            .code(),
        Some(1)
    );
    let out = depthlab(&[
        "depth",
        "--group",
        "S7",
        "--subgroup",
        "S6",
        "--cap-order",
        "1000",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let out = depthlab(&["hc", "--algebra", "builtin:m2", "--degree", "2", "--m", "2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn corpus_harness() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.txt");
    std::fs::write(&empty, "# nothing here\n").unwrap();
    assert_eq!(
        depthlab(&["corpus", "--corpus", empty.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );

    let wrong = dir.path().join("wrong.txt");
    std::fs::write(&wrong, "S3<S4 S4 S3 d_min=4 | injected\nC6<C6 C6 C6\n").unwrap();
    let out = depthlab(&["corpus", "--corpus", wrong.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("d_min: expected 4"));

    let out = depthlab(&["corpus"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 14);
}

#[test]
fn corpus_json_is_byte_identical_across_runs() {
    let a = depthlab(&["corpus", "--format", "json", "--seed", "11"]);
    let b = depthlab(&["corpus", "--format", "json", "--seed", "11"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let r: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(r["seed"], 11);
    assert_eq!(r["entries"][0]["report"]["seed"], 11);
}

#[test]
fn character_table_dump() {
    let out = depthlab(&["table", "--group", "S3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 4);
}

#[test]
fn corpus_file_seeds() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus/corpus_file");
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let parsed = depthlab::corpus::parse_corpus(&text);
        // The comment-only seed exercises the empty-corpus error.
        assert_eq!(
            parsed.is_ok(),
            !path.ends_with("empty"),
            "{}",
            path.display()
        );
    }
}
