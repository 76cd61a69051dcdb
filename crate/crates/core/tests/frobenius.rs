use std::sync::Arc;

use depthlab_core::moritatower::{e_multiplication_ring, frobenius_system, DEFAULT_RING_CAP};
use depthlab_core::permgroup::{build_group, parse_group_spec, SubgroupEmbedding};

fn embedding(parent: &str, sub: &str) -> SubgroupEmbedding {
    let g = Arc::new(build_group(parent, 10_000).unwrap());
    SubgroupEmbedding::from_spec(g, &parse_group_spec(sub).unwrap()).unwrap()
}

#[test]
fn e_ring_is_exhaustively_associative() {
    for (parent, sub, dim, center) in [("S3", "C2", 18, 2), ("S4", "S3", 96, 3)] {
        let e = embedding(parent, sub);
        let sys = frobenius_system(&e).unwrap();
        let ring = e_multiplication_ring(&sys, DEFAULT_RING_CAP, 0).unwrap();
        assert!(ring.exhaustive);
        assert_eq!(ring.dim, dim);
        assert_eq!(ring.triples_checked, (dim as u64).pow(3));
        assert_eq!(ring.center_dim, Some(center));
    }
}
