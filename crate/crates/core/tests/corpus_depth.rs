use std::sync::Arc;

use depthlab_core::depthcore::{analyze_pair, AnalysisOptions, DepthReport};
use depthlab_core::permgroup::{build_group, parse_group_spec, SubgroupEmbedding};

fn report(parent: &str, sub: &str) -> DepthReport {
    let g = Arc::new(build_group(parent, 10_000).unwrap());
    let e = SubgroupEmbedding::from_spec(g, &parse_group_spec(sub).unwrap()).unwrap();
    analyze_pair(&e, parent, sub, &AnalysisOptions::default()).unwrap()
}

const PAIRS: &[(&str, &str)] = &[
    ("S3", "S2"),
    ("S4", "S3"),
    ("S5", "S4"),
    ("S3", "A3"),
    ("S4", "A4"),
    ("S5", "A5"),
    ("S3", "C2"),
    ("S4", "D8"),
    ("C11:C5@3", "C11"),
    ("C11:C5@3", "C5"),
    ("S3", "C1"),
    ("S3", "S3"),
    ("C6", "C6"),
];

#[test]
fn every_check_passes_on_the_corpus() {
    for &(g, u) in PAIRS {
        let r = report(g, u);
        eprintln!(
            "{:>14} d_min={:?} d_odd={:?} d_even={:?} d_h={:?} lQR={:?} lQH={:?} core={} ord={:?} dd={:?}",
            r.pair, r.d_min, r.d_odd, r.d_even, r.d_h, r.ell_qr, r.ell_qh, r.core_order, r.ord_q, r.drinfeld
        );
        assert!(r.all_passed(), "{}: {:?}", r.pair, r.failures());
    }
}

#[test]
fn h_depth_of_symmetric_pairs() {
    for n in 2..=4u32 {
        let r = report(&format!("S{}", n + 1), &format!("S{n}"));
        assert_eq!(r.d_h, Some(2 * n + 1));
    }
}
