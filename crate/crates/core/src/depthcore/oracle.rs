//! Direct enumeration of the relative tensor powers A ⊗_B ... ⊗_B A of
//! A = ℂG over B = ℂU, independent of the inclusion matrix.
//!
//! A basis of the n-fold power is the set of tuples (g_1, ..., g_n) modulo
//! g_i u ⊗ g_{i+1} = g_i ⊗ u g_{i+1}. Every class has a unique normal form
//! with g_1 .. g_{n-1} taken from a fixed set of left coset representatives.
//! The bimodule is a permutation module for L × R acting by
//! (x, y)·(g_1, ..., g_n) = (x g_1, ..., g_n y⁻¹), and its decomposition over
//! the product table gives the multiplicity matrix.

use serde::{Deserialize, Serialize};

use super::InclusionMatrix;
use crate::boolpat::BoolPattern;
use crate::charring::CharacterTable;
use crate::error::{Error, Result};
use crate::permgroup::{PermGroup, SubgroupEmbedding};

/// Which algebra acts on each side: B = ℂU, A = ℂG.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BimoduleSide {
    BB,
    BA,
    AB,
    AA,
}

impl BimoduleSide {
    pub const ALL: [BimoduleSide; 4] = [
        BimoduleSide::BB,
        BimoduleSide::BA,
        BimoduleSide::AB,
        BimoduleSide::AA,
    ];
}

/// Number of normal-form tuples, |G|ⁿ / |U|ⁿ⁻¹, or `None` on overflow.
pub fn fiber_points(emb: &SubgroupEmbedding, n: u32) -> Option<u64> {
    let index = emb.index() as u64;
    index
        .checked_pow(n.checked_sub(1)?)?
        .checked_mul(emb.parent().order() as u64)
}

/// Multiplicity pattern predicted by the matrix rule.
pub fn expected_pattern(m: &InclusionMatrix, n: u32, side: BimoduleSide) -> BoolPattern {
    assert!(n >= 1);
    let pat = m.pattern();
    let mt = pat.transpose();
    let p = pat.mul(&mt);
    let q = mt.mul(&pat);
    let power = |base: &BoolPattern, k: u32| {
        let mut acc = BoolPattern::identity(base.rows());
        for _ in 0..k {
            acc = acc.mul(base);
        }
        acc
    };
    match side {
        BimoduleSide::BB => power(&p, n),
        BimoduleSide::BA => power(&p, n - 1).mul(&pat),
        BimoduleSide::AB => mt.mul(&power(&p, n - 1)),
        BimoduleSide::AA => power(&q, n - 1),
    }
}

struct LeftCosets {
    /// Representative t of each left coset tU.
    reps: Vec<usize>,
    /// Parent element -> (coset number, t⁻¹g ∈ U).
    split: Vec<(usize, usize)>,
}

impl LeftCosets {
    fn new(emb: &SubgroupEmbedding) -> Self {
        let g = emb.parent();
        // tU is the inverse of the right coset U t⁻¹.
        let reps: Vec<usize> = emb.right_cosets().iter().map(|&x| g.inv(x)).collect();
        let split = (0..g.order())
            .map(|h| {
                let c = emb.coset_of(g.inv(h));
                (c, g.mul(g.inv(reps[c]), h))
            })
            .collect();
        LeftCosets { reps, split }
    }
}

/// Multiplicity matrix of the n-fold relative tensor power as an L-R
/// bimodule. Entry (i, k) counts ψ_i ⊗ ψ'_k*, rows indexed by the
/// irreducibles of the left group and columns by those of the right.
pub fn brute_force_bimodule_oracle(
    emb: &SubgroupEmbedding,
    table_u: &CharacterTable,
    table_g: &CharacterTable,
    n: u32,
    side: BimoduleSide,
    point_cap: u64,
) -> Result<Vec<Vec<u64>>> {
    if !(1..=3).contains(&n) {
        return Err(Error::precondition("oracle supports tensor powers 1 to 3"));
    }
    let points = fiber_points(emb, n)
        .filter(|&p| p <= point_cap)
        .ok_or_else(|| {
            Error::resource(format!(
                "fiber product of degree {n} exceeds {point_cap} points"
            ))
        })?;
    if table_u.prime() != table_g.prime() {
        return Err(Error::precondition(
            "subgroup and parent tables use different primes",
        ));
    }
    let prime = table_g.prime();
    if points >= prime {
        return Err(Error::resource(format!(
            "{points} points do not fit below the prime {prime}"
        )));
    }
    let g = emb.parent();
    let u = emb.subgroup();
    let cosets = LeftCosets::new(emb);
    let index = emb.index();
    let order = g.order();

    // Class representatives of each acting group, as parent elements.
    let reps = |acting: &PermGroup, sub: bool| -> Vec<usize> {
        acting
            .classes()
            .iter()
            .map(|c| {
                if sub {
                    emb.to_parent(c.representative)
                } else {
                    c.representative
                }
            })
            .collect()
    };
    let (left_sub, right_sub) = match side {
        BimoduleSide::BB => (true, true),
        BimoduleSide::BA => (true, false),
        BimoduleSide::AB => (false, true),
        BimoduleSide::AA => (false, false),
    };
    let (lt, lg) = if left_sub { (table_u, u) } else { (table_g, g) };
    let (rt, rg) = if right_sub {
        (table_u, u)
    } else {
        (table_g, g)
    };
    let left_reps = reps(lg, left_sub);
    let right_reps = reps(rg, right_sub);

    let decode = |mut code: u64, buf: &mut Vec<usize>| {
        buf.clear();
        buf.push((code % order as u64) as usize);
        code /= order as u64;
        for _ in 1..n {
            buf.push(cosets.reps[(code % index as u64) as usize]);
            code /= index as u64;
        }
        buf.reverse();
    };
    // Normal form: push the U-part of each entry into the next one.
    let normalise = |tuple: &mut [usize]| -> Vec<usize> {
        let mut codes = Vec::with_capacity(tuple.len());
        for i in 0..tuple.len() - 1 {
            let (c, w) = cosets.split[tuple[i]];
            codes.push(c);
            tuple[i + 1] = g.mul(w, tuple[i + 1]);
        }
        codes
    };

    let f = table_g.field();
    let mut fixed = vec![vec![0u64; right_reps.len()]; left_reps.len()];
    let mut buf = Vec::with_capacity(n as usize);
    for (a, &x) in left_reps.iter().enumerate() {
        for (b, &y) in right_reps.iter().enumerate() {
            let y_inv = g.inv(y);
            let mut count = 0u64;
            for code in 0..points {
                decode(code, &mut buf);
                let mut image = buf.clone();
                image[0] = g.mul(x, image[0]);
                let last = image.len() - 1;
                image[last] = g.mul(image[last], y_inv);
                let codes = normalise(&mut image);
                if codes
                    .iter()
                    .zip(&buf)
                    .all(|(&c, &orig)| cosets.reps[c] == orig)
                    && image[last] == buf[last]
                {
                    count += 1;
                }
            }
            fixed[a][b] = count;
        }
    }

    let lgeo = lt.geometry();
    let rgeo = rt.geometry();
    let norm = f.inv(f.mul(f.from_u64(lgeo.order), f.from_u64(rgeo.order)));
    let left_irr: Vec<Vec<u64>> = lt
        .irreducibles()
        .map(|c| c.residues(prime).unwrap())
        .collect();
    let right_irr: Vec<Vec<u64>> = rt
        .irreducibles()
        .map(|c| c.residues(prime).unwrap())
        .collect();
    let mut out = vec![vec![0u64; right_irr.len()]; left_irr.len()];
    for (i, psi) in left_irr.iter().enumerate() {
        for (k, phi) in right_irr.iter().enumerate() {
            let mut s = 0;
            for a in 0..left_reps.len() {
                let wa = f.mul(f.from_u64(lgeo.sizes[a]), psi[lgeo.inverse[a]]);
                for b in 0..right_reps.len() {
                    let term = f.mul(f.mul(wa, f.from_u64(rgeo.sizes[b] * fixed[a][b])), phi[b]);
                    s = f.add(s, term);
                }
            }
            let m = f.mul(s, norm);
            if m > points {
                return Err(Error::integrity(format!(
                    "bimodule multiplicity lift {m} exceeds {points}"
                )));
            }
            out[i][k] = m;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charring::{prime_for_pair, CharacterTable};
    use crate::depthcore::inclusion_matrix;
    use crate::permgroup::{build_group, parse_group_spec};
    use std::sync::Arc;

    fn setup(parent: &str, sub: &str) -> (SubgroupEmbedding, CharacterTable, CharacterTable) {
        let g = Arc::new(build_group(parent, 10_000).unwrap());
        let e = SubgroupEmbedding::from_spec(g, &parse_group_spec(sub).unwrap()).unwrap();
        let p = prime_for_pair(&e).unwrap();
        let tu = CharacterTable::new(e.subgroup(), p).unwrap();
        let tg = CharacterTable::new(e.parent(), p).unwrap();
        (e, tu, tg)
    }

    fn int_mmt(m: &[Vec<u64>]) -> Vec<Vec<u64>> {
        m.iter()
            .map(|a| {
                m.iter()
                    .map(|b| a.iter().zip(b).map(|(x, y)| x * y).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn degree_one_is_m_m_transpose_exactly() {
        for (g, u) in [("S3", "C2"), ("S4", "S3"), ("S4", "D8")] {
            let (e, tu, tg) = setup(g, u);
            let m = inclusion_matrix(&e, &tu, &tg).unwrap();
            let bb =
                brute_force_bimodule_oracle(&e, &tu, &tg, 1, BimoduleSide::BB, 1_000_000).unwrap();
            assert_eq!(bb, int_mmt(&m.entries), "{g} {u}");
            let ba =
                brute_force_bimodule_oracle(&e, &tu, &tg, 1, BimoduleSide::BA, 1_000_000).unwrap();
            assert_eq!(ba, m.entries);
        }
    }

    #[test]
    fn regular_bimodule_is_diagonal() {
        let (e, tu, tg) = setup("S4", "S3");
        let aa = brute_force_bimodule_oracle(&e, &tu, &tg, 1, BimoduleSide::AA, 1_000_000).unwrap();
        for (i, row) in aa.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(x, u64::from(i == j));
            }
        }
    }

    #[test]
    fn sym2_in_sym3_second_power() {
        let (e, tu, tg) = setup("S3", "S2");
        assert_eq!(fiber_points(&e, 2), Some(18));
        let m = inclusion_matrix(&e, &tu, &tg).unwrap();
        for side in BimoduleSide::ALL {
            let o = brute_force_bimodule_oracle(&e, &tu, &tg, 2, side, 1_000_000).unwrap();
            assert_eq!(
                BoolPattern::of_matrix(&o),
                expected_pattern(&m, 2, side),
                "{side:?}"
            );
        }
    }

    #[test]
    fn cap_is_a_resource_error() {
        let (e, tu, tg) = setup("S4", "S3");
        let err = brute_force_bimodule_oracle(&e, &tu, &tg, 3, BimoduleSide::BB, 100).unwrap_err();
        assert!(matches!(err, Error::Resource(_)));
    }
}
