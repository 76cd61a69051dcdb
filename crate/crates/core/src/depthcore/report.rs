use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::checks::{
    burnside_brauer_check, core_ideal_check, drinfeld_double_depth, ord_of, verify_precise_theorem,
    BurnsideBrauer, DrinfeldDepth,
};
use super::oracle::{brute_force_bimodule_oracle, expected_pattern, fiber_points, BimoduleSide};
use super::{depth_flavors, inclusion_matrix, quotient_chain, InclusionMatrix, QuotientSide};
use crate::boolpat::BoolPattern;
use crate::charring::{
    prime_for_pair, restrict, tensor, CharacterTable, ClassFunction, PowerSupports,
};
use crate::error::{Error, Result};
use crate::modp::select_prime;
use crate::permgroup::{
    action_kernel_indices, core_indices, coset_permutation_character, SubgroupEmbedding,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Depth values serialise as integers, or the string "infinity" when a
/// search ran past its bound.
pub mod depth_value {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Finite(u32),
        Marker(String),
    }

    pub fn serialize<S: Serializer>(v: &Option<u32>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => Repr::Finite(*x),
            None => Repr::Marker("infinity".into()),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<u32>, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Finite(x) => Ok(Some(x)),
            Repr::Marker(m) if m == "infinity" => Ok(None),
            Repr::Marker(m) => Err(serde::de::Error::custom(format!(
                "unexpected depth marker {m:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisOptions {
    /// Largest fiber product enumerated by the bimodule oracle.
    pub point_cap: u64,
    /// Oracle runs for tensor powers 1 ..= oracle_degree.
    pub oracle_degree: u32,
    pub order_cap: usize,
    pub seed: u64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            point_cap: 1_000_000,
            oracle_degree: 2,
            order_cap: crate::permgroup::DEFAULT_ORDER_CAP,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleStatus {
    Agree,
    Disagree,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleRecord {
    pub n: u32,
    pub side: BimoduleSide,
    pub points: Option<u64>,
    pub status: OracleStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub order: usize,
    pub points: u64,
}

/// One level of the reflected tower.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerLevel {
    pub level: u32,
    pub matrix: InclusionMatrix,
    #[serde(with = "depth_value")]
    pub d_min: Option<u32>,
    #[serde(with = "depth_value")]
    pub d_h: Option<u32>,
    #[serde(with = "depth_value")]
    pub d_odd: Option<u32>,
    #[serde(with = "depth_value")]
    pub d_even: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthReport {
    pub pair: String,
    pub parent: String,
    pub subgroup: String,
    pub parent_order: u64,
    pub subgroup_order: u64,
    pub index: u64,
    pub prime: u64,
    pub inclusion_matrix: InclusionMatrix,
    #[serde(with = "depth_value")]
    pub d_min: Option<u32>,
    #[serde(with = "depth_value")]
    pub d_odd: Option<u32>,
    #[serde(with = "depth_value")]
    pub d_even: Option<u32>,
    #[serde(with = "depth_value")]
    pub d_even_left: Option<u32>,
    #[serde(with = "depth_value")]
    pub d_even_right: Option<u32>,
    #[serde(with = "depth_value")]
    pub d_h: Option<u32>,
    #[serde(rename = "ell_QR", with = "depth_value")]
    pub ell_qr: Option<u32>,
    #[serde(rename = "ell_QH", with = "depth_value")]
    pub ell_qh: Option<u32>,
    /// Constituents of Q^{⊗n} restricted to U, n = 0 ..= ell_QR + 1.
    #[serde(rename = "chain_QR")]
    pub chain_qr: Vec<Vec<usize>>,
    /// Constituents of Q^{⊗n} over G, n = 0 ..= ell_QH + 1.
    #[serde(rename = "chain_QH")]
    pub chain_qh: Vec<Vec<usize>>,
    pub core_order: u64,
    pub subgroup_normal: bool,
    #[serde(rename = "chi_Q")]
    pub chi_q: Vec<i128>,
    #[serde(rename = "chi_Q_decomposition")]
    pub chi_q_decomposition: Vec<u64>,
    #[serde(rename = "chi_Q_faithful")]
    pub chi_q_faithful: bool,
    #[serde(rename = "ord_Q", with = "depth_value")]
    pub ord_q: Option<u32>,
    pub burnside_brauer: Option<BurnsideBrauer>,
    pub drinfeld: DrinfeldDepth,
    pub oracle: Vec<OracleRecord>,
    pub verification: BTreeMap<String, bool>,
    pub caps: Caps,
    pub seed: u64,
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tower: Option<Vec<TowerLevel>>,
}

impl DepthReport {
    pub fn all_passed(&self) -> bool {
        self.verification.values().all(|&v| v)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.verification
            .iter()
            .filter(|(_, &v)| !v)
            .map(|(k, _)| k.as_str())
            .collect()
    }
}

/// Character tables of both groups over one prime.
pub struct PairTables {
    pub table_u: CharacterTable,
    pub table_g: CharacterTable,
}

impl PairTables {
    /// The pair prime, raised if needed so every oracle fiber product up to
    /// `oracle_degree` and `point_cap` lifts exactly.
    pub fn new(emb: &SubgroupEmbedding, oracle_degree: u32, point_cap: u64) -> Result<Self> {
        let mut prime = prime_for_pair(emb)?;
        let largest = (1..=oracle_degree)
            .filter_map(|n| fiber_points(emb, n))
            .filter(|&p| p <= point_cap)
            .max()
            .unwrap_or(0);
        if largest >= prime {
            prime = select_prime(emb.parent().exponent(), largest)?;
        }
        Ok(PairTables {
            table_u: CharacterTable::new(emb.subgroup(), prime)?,
            table_g: CharacterTable::new(emb.parent(), prime)?,
        })
    }

    pub fn prime(&self) -> u64 {
        self.table_g.prime()
    }
}

fn mask_to_indices(mask: &[bool]) -> Vec<usize> {
    (0..mask.len()).filter(|&i| mask[i]).collect()
}

/// Constituents of χ_Q^n for n = 0 ..= top, over G and restricted to U, by
/// a path that never touches the inclusion matrix: support propagation
/// through irreducible products, cross-checked by direct decomposition of
/// the integer powers while their degree stays below the prime.
fn character_chains(
    emb: &SubgroupEmbedding,
    tables: &PairTables,
    chi_q: &ClassFunction,
    top_g: usize,
    top_u: usize,
) -> Result<(Vec<Vec<usize>>, Vec<Vec<usize>>, bool)> {
    let tg = &tables.table_g;
    let tu = &tables.table_u;
    let base = tg.decompose(chi_q)?.support_mask();
    let top = top_g.max(top_u);
    let g_chain = PowerSupports::new(tg, &base).chain(top);
    let mut consistent = true;
    let mut u_chain = Vec::new();
    let mut power = Some(ClassFunction::trivial(chi_q.len()));
    for (n, support) in g_chain.iter().enumerate() {
        // Restriction of the support: union of the restricted constituents.
        let mut res = vec![false; tu.len()];
        for j in mask_to_indices(support) {
            let part = tu
                .decompose(&restrict(&tg.irreducible(j), emb))?
                .support_mask();
            for (r, p) in res.iter_mut().zip(part) {
                *r |= p;
            }
        }
        if let Some(p) = power
            .as_ref()
            .filter(|p| p.degree().is_some_and(|d| d < tg.prime() as u128))
        {
            consistent &= tg.decompose(p)?.support_mask() == *support;
            consistent &= tu.decompose(&restrict(p, emb))?.support_mask() == res;
        }
        u_chain.push(mask_to_indices(&res));
        if n < top {
            // Integer overflow just ends the direct cross-check.
            power = power.and_then(|p| tensor(&p, chi_q).ok());
        }
    }
    let g_chain = g_chain
        .iter()
        .take(top_g + 1)
        .map(|m| mask_to_indices(m))
        .collect();
    u_chain.truncate(top_u + 1);
    Ok((g_chain, u_chain, consistent))
}

/// Runs every depth computation and check for one pair.
pub fn analyze_pair(
    emb: &SubgroupEmbedding,
    parent_name: &str,
    subgroup_name: &str,
    options: &AnalysisOptions,
) -> Result<DepthReport> {
    let tables = PairTables::new(emb, options.oracle_degree, options.point_cap)?;
    analyze_with_tables(emb, &tables, parent_name, subgroup_name, options)
}

pub fn analyze_with_tables(
    emb: &SubgroupEmbedding,
    tables: &PairTables,
    parent_name: &str,
    subgroup_name: &str,
    options: &AnalysisOptions,
) -> Result<DepthReport> {
    let (tu, tg) = (&tables.table_u, &tables.table_g);
    let g = emb.parent();
    let m = inclusion_matrix(emb, tu, tg)?;
    let flavors = depth_flavors(&m)?;
    let (triv_u, triv_g) = (tu.trivial_index(), tg.trivial_index());
    let chain_r = quotient_chain(&m, QuotientSide::Subalgebra, triv_u, triv_g)?;
    let chain_h = quotient_chain(&m, QuotientSide::Parent, triv_u, triv_g)?;
    let d_even = flavors.d_even_left;

    let mut verification = BTreeMap::new();
    let mut flag = |name: &str, ok: bool| {
        verification.insert(name.to_string(), ok);
    };
    flag("inclusion_matrix_identities", true);
    flag(
        "even_sides_agree",
        flavors.d_even_left == flavors.d_even_right,
    );
    flag(
        "depths_finite",
        flavors.d_min.is_some() && flavors.d_h.is_some(),
    );
    flag(
        "parity",
        flavors.d_odd.map_or(false, |d| d % 2 == 1)
            && flavors.d_h.map_or(false, |d| d % 2 == 1)
            && d_even.map_or(false, |d| d % 2 == 0),
    );
    flag(
        "d_min_is_least_flavor",
        flavors.d_min == flavors.d_odd.min(d_even),
    );
    flag(
        "dh_within_two_of_dmin",
        matches!((flavors.d_h, flavors.d_min), (Some(h), Some(d)) if h.abs_diff(d) <= 2),
    );
    let theorem = verify_precise_theorem(d_even, flavors.d_h, chain_r.ell, chain_h.ell);
    flag("theorem_even", theorem.even_equality);
    flag("theorem_h", theorem.h_equality);
    flag("ineq1", theorem.ineq1);
    flag("ineq2", theorem.ineq2);

    let chi_q = coset_permutation_character(emb);
    let decomposition = tg.decompose(&chi_q)?;
    flag(
        "maschke_trivial_constituent",
        decomposition.coefficients[triv_g] == 1,
    );

    let (g_chain, u_chain, direct_ok) = character_chains(
        emb,
        tables,
        &chi_q,
        chain_h.supports.len() - 1,
        chain_r.supports.len() - 1,
    )?;
    flag(
        "chain_matrix_vs_character",
        direct_ok && g_chain == chain_h.supports && u_chain == chain_r.supports,
    );

    let core = core_ideal_check(emb, &chi_q, chain_h.ell.unwrap_or(0))?;
    flag("core_ideal", core.kernel_equals_core);
    flag("faithful_iff_corefree", core.faithful_iff_corefree);
    flag(
        "action_kernel_is_core",
        action_kernel_indices(emb) == core_indices(emb),
    );

    let normal = emb.is_normal();
    flag(
        "normal_iff_depth_at_most_two",
        normal == flavors.d_min.is_some_and(|d| d <= 2),
    );
    flag(
        "depth_one_iff_centralizer_product",
        emb.is_centralizer_product() == (flavors.d_min == Some(1)),
    );

    let burnside_brauer = if core.chi_q_faithful {
        let bb = burnside_brauer_check(tg, &chi_q)?;
        flag("burnside_brauer", bb.covered);
        Some(bb)
    } else {
        None
    };
    let ord_q = ord_of(tg, &chi_q)?;
    let drinfeld = drinfeld_double_depth(g, tg)?;

    let mut oracle = Vec::new();
    let mut oracle_ok = true;
    for n in 1..=options.oracle_degree {
        for side in BimoduleSide::ALL {
            let points = fiber_points(emb, n);
            let status = match brute_force_bimodule_oracle(emb, tu, tg, n, side, options.point_cap)
            {
                Ok(mult) => {
                    if BoolPattern::of_matrix(&mult) == expected_pattern(&m, n, side) {
                        OracleStatus::Agree
                    } else {
                        oracle_ok = false;
                        OracleStatus::Disagree
                    }
                }
                Err(Error::Resource(_)) => OracleStatus::Skipped,
                Err(e) => return Err(e),
            };
            oracle.push(OracleRecord {
                n,
                side,
                points,
                status,
            });
        }
    }
    flag("oracle_agreement", oracle_ok);

    Ok(DepthReport {
        pair: format!("{subgroup_name} < {parent_name}"),
        parent: parent_name.to_string(),
        subgroup: subgroup_name.to_string(),
        parent_order: g.order() as u64,
        subgroup_order: emb.subgroup().order() as u64,
        index: emb.index() as u64,
        prime: tables.prime(),
        inclusion_matrix: m,
        d_min: flavors.d_min,
        d_odd: flavors.d_odd,
        d_even,
        d_even_left: flavors.d_even_left,
        d_even_right: flavors.d_even_right,
        d_h: flavors.d_h,
        ell_qr: chain_r.ell,
        ell_qh: chain_h.ell,
        chain_qr: chain_r.supports,
        chain_qh: chain_h.supports,
        core_order: core.core_order as u64,
        subgroup_normal: normal,
        chi_q: chi_q.as_integers().expect("permutation character").to_vec(),
        chi_q_decomposition: decomposition.coefficients,
        chi_q_faithful: core.chi_q_faithful,
        ord_q,
        burnside_brauer,
        drinfeld,
        oracle,
        verification,
        caps: Caps {
            order: options.order_cap,
            points: options.point_cap,
        },
        seed: options.seed,
        version: VERSION.to_string(),
        tower: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::{build_group, parse_group_spec};
    use std::sync::Arc;

    fn report(parent: &str, sub: &str) -> DepthReport {
        let g = Arc::new(build_group(parent, 10_000).unwrap());
        let e = SubgroupEmbedding::from_spec(g, &parse_group_spec(sub).unwrap()).unwrap();
        analyze_pair(&e, parent, sub, &AnalysisOptions::default()).unwrap()
    }

    #[test]
    fn s3_in_s4() {
        let r = report("S4", "S3");
        assert_eq!((r.d_min, r.d_even, r.d_h), (Some(5), Some(6), Some(7)));
        assert_eq!((r.ell_qr, r.ell_qh), (Some(2), Some(3)));
        assert_eq!(
            r.inclusion_matrix.entries,
            vec![
                vec![1, 0, 0, 1, 0],
                vec![0, 1, 0, 0, 1],
                vec![0, 0, 1, 1, 1]
            ]
        );
        assert_eq!(r.chi_q, vec![4, 2, 1, 0, 0]);
        assert_eq!(r.chi_q_decomposition, vec![1, 0, 0, 1, 0]);
        assert!(r.all_passed(), "{:?}", r.failures());
        assert!(r.oracle.iter().all(|o| o.status == OracleStatus::Agree));
    }

    #[test]
    fn degenerate_pairs() {
        let r = report("C6", "C6");
        assert_eq!(
            (r.d_min, r.d_h, r.ell_qr, r.ell_qh),
            (Some(1), Some(1), Some(0), Some(0))
        );
        assert!(r.all_passed(), "{:?}", r.failures());
        let r = report("S4", "A4");
        assert_eq!(r.d_min, Some(2));
        assert!(r.all_passed(), "{:?}", r.failures());
    }

    #[test]
    fn json_round_trip() {
        let r = report("S3", "C2");
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains("\"ell_QH\":"));
        let back: DepthReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}
