//! Frobenius coordinates for ℂU ⊆ ℂG, the E-multiplication ring on
//! ℂG ⊗_ℂU ℂG, the reflected tower of inclusion matrices, and invariance of
//! depth under relabelling of simples.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::depthcore::{depth_flavors, DepthFlavors, InclusionMatrix, TowerLevel};
use crate::error::{Error, Result};
use crate::permgroup::SubgroupEmbedding;
use crate::qlinalg::{rational, Echelon, SparseVec};

/// Elements of ℂG with integer coefficients.
type GroupVec = BTreeMap<usize, i64>;

fn add_term(v: &mut GroupVec, g: usize, c: i64) {
    let e = v.entry(g).or_insert(0);
    *e += c;
    if *e == 0 {
        v.remove(&g);
    }
}

/// E: ℂG → ℂU together with dual bases x_i = r_i⁻¹, y_i = r_i built from
/// the right coset representatives r_i.
#[derive(Debug, Clone)]
pub struct FrobeniusSystem<'a> {
    emb: &'a SubgroupEmbedding,
    /// Parent indices (x_i, y_i).
    pub dual_bases: Vec<(usize, usize)>,
}

impl<'a> FrobeniusSystem<'a> {
    pub fn embedding(&self) -> &SubgroupEmbedding {
        self.emb
    }

    /// E on a group element: itself if in U, else zero.
    pub fn e(&self, g: usize) -> Option<usize> {
        self.emb.contains(g).then_some(g)
    }

    pub fn index(&self) -> usize {
        self.dual_bases.len()
    }
}

/// Builds the coordinate system and verifies, on every group element a,
/// Σ E(a x_i) y_i = a = Σ x_i E(y_i a), the bimodule property of E on
/// subgroup generators, and that E fixes U.
pub fn frobenius_system(emb: &SubgroupEmbedding) -> Result<FrobeniusSystem<'_>> {
    let g = emb.parent();
    let dual_bases: Vec<(usize, usize)> =
        emb.right_cosets().iter().map(|&r| (g.inv(r), r)).collect();
    let sys = FrobeniusSystem { emb, dual_bases };
    for a in 0..g.order() {
        let mut left = GroupVec::new();
        let mut right = GroupVec::new();
        for &(x, y) in &sys.dual_bases {
            if let Some(e) = sys.e(g.mul(a, x)) {
                add_term(&mut left, g.mul(e, y), 1);
            }
            if let Some(e) = sys.e(g.mul(y, a)) {
                add_term(&mut right, g.mul(x, e), 1);
            }
        }
        let expected = GroupVec::from([(a, 1)]);
        if left != expected || right != expected {
            return Err(Error::integrity(format!(
                "dual basis identity fails at element {a}"
            )));
        }
    }
    let gens: Vec<usize> = emb
        .subgroup()
        .generators()
        .iter()
        .map(|p| g.index_of(p).expect("subgroup generator in parent"))
        .collect();
    for a in 0..g.order() {
        for &u in &gens {
            let lhs_l = sys.e(g.mul(u, a));
            let rhs_l = sys.e(a).map(|e| g.mul(u, e));
            let lhs_r = sys.e(g.mul(a, u));
            let rhs_r = sys.e(a).map(|e| g.mul(e, u));
            if lhs_l != rhs_l || lhs_r != rhs_r {
                return Err(Error::integrity(
                    "E is not a bimodule map over the subgroup",
                ));
            }
        }
    }
    if !emb.parent_indices().iter().all(|&u| sys.e(u) == Some(u)) {
        return Err(Error::integrity(
            "E does not restrict to the identity on the subgroup",
        ));
    }
    Ok(sys)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ERingSummary {
    pub dim: usize,
    /// Triples checked for associativity.
    pub triples_checked: u64,
    pub exhaustive: bool,
    pub unit_terms: usize,
    /// Dimension of the centre, when computed.
    pub center_dim: Option<usize>,
}

/// ℂG ⊗_ℂU ℂG with basis t_i ⊗ h, t_i = x_i the left coset representatives.
pub struct ERing<'a> {
    sys: &'a FrobeniusSystem<'a>,
    /// Parent element -> (coset i, t_i⁻¹ g ∈ U).
    split: Vec<(usize, usize)>,
}

impl<'a> ERing<'a> {
    pub fn new(sys: &'a FrobeniusSystem<'a>) -> Self {
        let emb = sys.embedding();
        let g = emb.parent();
        let split = (0..g.order())
            .map(|h| {
                let c = emb.coset_of(g.inv(h));
                (c, g.mul(sys.dual_bases[c].1, h))
            })
            .collect();
        ERing { sys, split }
    }

    pub fn dim(&self) -> usize {
        self.sys.index() * self.sys.embedding().parent().order()
    }

    fn order(&self) -> usize {
        self.sys.embedding().parent().order()
    }

    /// Basis index of a ⊗ c for group elements a, c.
    pub fn basis_of(&self, a: usize, c: usize) -> usize {
        let g = self.sys.embedding().parent();
        let (i, u) = self.split[a];
        i * self.order() + g.mul(u, c)
    }

    /// (a ⊗ c)(d ⊗ e) = a E(cd) ⊗ e on basis vectors.
    pub fn mul_basis(&self, x: usize, y: usize) -> Option<usize> {
        let g = self.sys.embedding().parent();
        let n = self.order();
        let (i, h) = (x / n, x % n);
        let (j, h2) = (y / n, y % n);
        let t_i = self.sys.dual_bases[i].0;
        let t_j = self.sys.dual_bases[j].0;
        self.sys
            .e(g.mul(h, t_j))
            .map(|e| self.basis_of(g.mul(t_i, e), h2))
    }

    /// 1 = Σ x_i ⊗ y_i.
    pub fn unit(&self) -> Vec<usize> {
        self.sys
            .dual_bases
            .iter()
            .map(|&(x, y)| self.basis_of(x, y))
            .collect()
    }

    fn mul_sparse(
        &self,
        a: &BTreeMap<usize, i64>,
        b: &BTreeMap<usize, i64>,
    ) -> BTreeMap<usize, i64> {
        let mut out = BTreeMap::new();
        for (&x, &cx) in a {
            for (&y, &cy) in b {
                if let Some(z) = self.mul_basis(x, y) {
                    add_term(&mut out, z, cx * cy);
                }
            }
        }
        out
    }

    /// Dimension of the centre, by exact rank of the commutator equations.
    pub fn center_dim(&self) -> usize {
        let d = self.dim();
        let mut eqs = Echelon::new();
        // Column b of the system: the commutators [b, b'] for all b'.
        let mut cols: Vec<SparseVec> = vec![SparseVec::new(); d];
        for (b, col) in cols.iter_mut().enumerate() {
            for b2 in 0..d {
                let mut entry = BTreeMap::<usize, i64>::new();
                if let Some(z) = self.mul_basis(b, b2) {
                    add_term(&mut entry, z, 1);
                }
                if let Some(z) = self.mul_basis(b2, b) {
                    add_term(&mut entry, z, -1);
                }
                for (z, c) in entry {
                    col.insert(b2 * d + z, rational(c));
                }
            }
        }
        for c in cols {
            eqs.insert(c);
        }
        d - eqs.rank()
    }
}

/// Largest ring dimension handled by default.
pub const DEFAULT_RING_CAP: usize = 5_000;
const EXHAUSTIVE_TRIPLES: u64 = 1_000_000;
const SAMPLED_TRIPLES: u64 = 1_000_000;
const CENTER_DIM_LIMIT: usize = 128;

/// Verifies associativity, the two-sided unit and the dimension of the
/// E-multiplication ring.
pub fn e_multiplication_ring(
    sys: &FrobeniusSystem<'_>,
    cap: usize,
    seed: u64,
) -> Result<ERingSummary> {
    let ring = ERing::new(sys);
    let dim = ring.dim();
    let g = sys.embedding().parent();
    if dim > cap {
        return Err(Error::resource(format!(
            "ring dimension {dim} exceeds the cap {cap}"
        )));
    }
    if dim != g.order() * sys.index() {
        return Err(Error::integrity("ring dimension differs from |G|·[G:U]"));
    }
    let assoc = |x: usize, y: usize, z: usize| {
        let left = ring.mul_basis(x, y).and_then(|xy| ring.mul_basis(xy, z));
        let right = ring.mul_basis(y, z).and_then(|yz| ring.mul_basis(x, yz));
        left == right
    };
    let total = (dim as u64).pow(3);
    let exhaustive = total <= EXHAUSTIVE_TRIPLES;
    let triples_checked = if exhaustive {
        for x in 0..dim {
            for y in 0..dim {
                for z in 0..dim {
                    if !assoc(x, y, z) {
                        return Err(Error::integrity(format!(
                            "E-multiplication not associative at ({x}, {y}, {z})"
                        )));
                    }
                }
            }
        }
        total
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..SAMPLED_TRIPLES {
            let (x, y, z) = (
                rng.gen_range(0..dim),
                rng.gen_range(0..dim),
                rng.gen_range(0..dim),
            );
            if !assoc(x, y, z) {
                return Err(Error::integrity(format!(
                    "E-multiplication not associative at ({x}, {y}, {z})"
                )));
            }
        }
        SAMPLED_TRIPLES
    };
    let unit: BTreeMap<usize, i64> = ring.unit().into_iter().map(|b| (b, 1)).collect();
    for b in 0..dim {
        let e = BTreeMap::from([(b, 1)]);
        if ring.mul_sparse(&unit, &e) != e || ring.mul_sparse(&e, &unit) != e {
            return Err(Error::integrity(format!("unit fails on basis element {b}")));
        }
    }
    if ring.mul_sparse(&unit, &unit) != unit {
        return Err(Error::integrity("unit is not idempotent"));
    }
    Ok(ERingSummary {
        dim,
        triples_checked,
        exhaustive,
        unit_terms: unit.len(),
        center_dim: (dim <= CENTER_DIM_LIMIT).then(|| ring.center_dim()),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerStep {
    pub level: u32,
    pub matrix: InclusionMatrix,
    pub flavors: DepthFlavors,
}

impl TowerStep {
    pub fn to_level(&self) -> TowerLevel {
        TowerLevel {
            level: self.level,
            matrix: self.matrix.clone(),
            d_min: self.flavors.d_min,
            d_h: self.flavors.d_h,
            d_odd: self.flavors.d_odd,
            d_even: self.flavors.d_even_left,
        }
    }
}

pub const MAX_TOWER_STEPS: u32 = 16;

/// Levels 0 .. steps of A_0 ⊆ A_1 ⊆ A_2 ⊆ ...: level n carries the
/// transpose of level n−1, so the matrices have period two.
pub fn tower_sequence(m: &InclusionMatrix, steps: u32) -> Result<Vec<TowerStep>> {
    if steps == 0 || steps > MAX_TOWER_STEPS {
        return Err(Error::precondition(format!(
            "tower steps must be in 1..={MAX_TOWER_STEPS}"
        )));
    }
    let mut out: Vec<TowerStep> = Vec::with_capacity(steps as usize);
    let mut current = m.clone();
    for level in 0..steps {
        let flavors = depth_flavors(&current)?;
        out.push(TowerStep {
            level,
            matrix: current.clone(),
            flavors,
        });
        current = current.transpose();
    }
    for n in 2..out.len() {
        if out[n].matrix != out[n - 2].matrix || out[n].flavors != out[n - 2].flavors {
            return Err(Error::integrity(format!(
                "tower level {n} differs from level {}",
                n - 2
            )));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoritaCheck {
    pub samples: usize,
    pub passed: bool,
}

/// Relabels rows and columns by random permutations (plus the identity)
/// and compares every depth flavour.
pub fn morita_invariance_check(
    m: &InclusionMatrix,
    samples: usize,
    seed: u64,
) -> Result<MoritaCheck> {
    let base = depth_flavors(m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut passed = true;
    for k in 0..=samples {
        let mut rp: Vec<usize> = (0..m.rows).collect();
        let mut cp: Vec<usize> = (0..m.cols).collect();
        if k > 0 {
            rp.shuffle(&mut rng);
            cp.shuffle(&mut rng);
        }
        let entries = rp
            .iter()
            .map(|&i| cp.iter().map(|&j| m.entries[i][j]).collect())
            .collect();
        let relabelled = InclusionMatrix::from_entries(
            entries,
            rp.iter().map(|&i| m.row_labels[i].clone()).collect(),
            cp.iter().map(|&j| m.col_labels[j].clone()).collect(),
        )?;
        passed &= depth_flavors(&relabelled)? == base;
    }
    Ok(MoritaCheck {
        samples: samples + 1,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::{build_group, parse_group_spec};
    use std::sync::Arc;

    fn embed(parent: &str, sub: &str) -> SubgroupEmbedding {
        let g = Arc::new(build_group(parent, 10_000).unwrap());
        SubgroupEmbedding::from_spec(g, &parse_group_spec(sub).unwrap()).unwrap()
    }

    #[test]
    fn full_subgroup_has_trivial_coordinates() {
        let e = embed("S3", "S3");
        let sys = frobenius_system(&e).unwrap();
        assert_eq!(sys.dual_bases, vec![(0, 0)]);
        let ring = e_multiplication_ring(&sys, DEFAULT_RING_CAP, 0).unwrap();
        assert_eq!(ring.dim, 6);
        assert_eq!(ring.center_dim, Some(3));
    }

    #[test]
    fn c2_in_s3_ring() {
        let e = embed("S3", "C2");
        let sys = frobenius_system(&e).unwrap();
        assert_eq!(sys.index(), 3);
        let ring = e_multiplication_ring(&sys, DEFAULT_RING_CAP, 0).unwrap();
        assert_eq!(
            (ring.dim, ring.triples_checked, ring.exhaustive),
            (18, 18 * 18 * 18, true)
        );
        // End of ℂS3 over ℂC2 is a sum of two matrix blocks.
        assert_eq!(ring.center_dim, Some(2));
    }

    #[test]
    fn trivial_in_c2_is_a_matrix_algebra() {
        let e = embed("C2", "C1");
        let ring =
            e_multiplication_ring(&frobenius_system(&e).unwrap(), DEFAULT_RING_CAP, 0).unwrap();
        assert_eq!((ring.dim, ring.center_dim), (4, Some(1)));
    }

    #[test]
    fn ring_cap() {
        let e = embed("S4", "S3");
        let sys = frobenius_system(&e).unwrap();
        assert!(matches!(
            e_multiplication_ring(&sys, 50, 0),
            Err(Error::Resource(_))
        ));
    }

    fn s3_s4() -> InclusionMatrix {
        InclusionMatrix::unlabelled(vec![
            vec![1, 0, 0, 1, 0],
            vec![0, 1, 0, 0, 1],
            vec![0, 0, 1, 1, 1],
        ])
        .unwrap()
    }

    #[test]
    fn tower_alternates() {
        let t = tower_sequence(&s3_s4(), 4).unwrap();
        let mins: Vec<_> = t.iter().map(|s| s.flavors.d_min).collect();
        assert_eq!(mins, vec![Some(5), Some(6), Some(5), Some(6)]);
        assert!(tower_sequence(&s3_s4(), 17).is_err());
    }

    #[test]
    fn relabelling_keeps_depth() {
        for m in [s3_s4(), s3_s4().transpose()] {
            assert!(morita_invariance_check(&m, 10, 7).unwrap().passed);
        }
    }
}
