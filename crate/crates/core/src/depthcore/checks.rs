use serde::{Deserialize, Serialize};

use crate::charring::{constituents, CharacterTable, ClassFunction, PowerSupports};
use crate::error::{Error, Result};
use crate::permgroup::{adjoint_character, core_indices, PermGroup, SubgroupEmbedding};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremCheck {
    /// d_even = 2ℓ_{Q_R} + 2
    pub even_equality: bool,
    /// d_h = 2ℓ_{Q_H} + 1
    pub h_equality: bool,
    /// 2ℓ_{Q_R} + 1 < d_even
    pub ineq1: bool,
    /// 2ℓ_{Q_H} + 1 <= d_h
    pub ineq2: bool,
}

impl TheoremCheck {
    pub fn passed(&self) -> bool {
        self.even_equality && self.h_equality && self.ineq1 && self.ineq2
    }
}

/// Compares the depths with the quotient chain lengths. Missing values
/// count as failures.
pub fn verify_precise_theorem(
    d_even: Option<u32>,
    d_h: Option<u32>,
    ell_qr: Option<u32>,
    ell_qh: Option<u32>,
) -> TheoremCheck {
    let test = |d: Option<u32>, l: Option<u32>, f: fn(u32, u32) -> bool| match (d, l) {
        (Some(d), Some(l)) => f(d, l),
        _ => false,
    };
    TheoremCheck {
        even_equality: test(d_even, ell_qr, |d, l| d == 2 * l + 2),
        h_equality: test(d_h, ell_qh, |d, l| d == 2 * l + 1),
        ineq1: test(d_even, ell_qr, |d, l| 2 * l + 1 < d),
        ineq2: test(d_h, ell_qh, |d, l| 2 * l + 1 <= d),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreIdealCheck {
    pub core_order: usize,
    /// Parent element indices in the kernel of χ_Q^ℓ.
    pub kernel: Vec<usize>,
    pub kernel_equals_core: bool,
    pub chi_q_faithful: bool,
    pub faithful_iff_corefree: bool,
}

impl CoreIdealCheck {
    pub fn passed(&self) -> bool {
        self.kernel_equals_core && self.faithful_iff_corefree
    }
}

/// Kernel of the stabilised tensor power χ_Q^ℓ against the core of U.
pub fn core_ideal_check(
    emb: &SubgroupEmbedding,
    chi_q: &ClassFunction,
    ell: u32,
) -> Result<CoreIdealCheck> {
    let g = emb.parent();
    let power = chi_q.power(ell)?;
    let kernel_classes = power.kernel_classes()?;
    let mut kernel: Vec<usize> = kernel_classes
        .iter()
        .flat_map(|&c| g.classes()[c].member_indices.iter().copied())
        .collect();
    kernel.sort_unstable();
    let core = core_indices(emb);
    let chi_q_faithful = chi_q.kernel_classes()? == [0];
    Ok(CoreIdealCheck {
        core_order: core.len(),
        kernel_equals_core: kernel == core,
        chi_q_faithful,
        faithful_iff_corefree: chi_q_faithful == (core.len() == 1),
        kernel,
    })
}

/// Least n >= 1 with ⟨χⁿ, 1⟩ ≠ 0, or `None` past 2r + 3.
pub fn ord_of(table: &CharacterTable, chi: &ClassFunction) -> Result<Option<u32>> {
    let base = constituents(table, chi)?;
    let triv = table.trivial_index();
    let bound = 2 * table.len() + 3;
    let mut supports = PowerSupports::new(table, &base);
    let mut cur = base.clone();
    for n in 1..=bound {
        if cur[triv] {
            return Ok(Some(n as u32));
        }
        cur = supports.step(&cur);
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BurnsideBrauer {
    pub distinct_values: usize,
    pub covered: bool,
}

/// For a faithful integer character with v distinct values, every
/// irreducible occurs in some χⁿ with 0 <= n < v.
pub fn burnside_brauer_check(
    table: &CharacterTable,
    chi: &ClassFunction,
) -> Result<BurnsideBrauer> {
    let values = chi
        .as_integers()
        .ok_or_else(|| Error::precondition("Burnside-Brauer check needs an integer character"))?;
    if chi.kernel_classes()? != [0] {
        return Err(Error::precondition("character is not faithful"));
    }
    let mut distinct = values.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let v = distinct.len();
    let base = constituents(table, chi)?;
    let mut supports = PowerSupports::new(table, &base);
    let seen = supports
        .chain(v - 1)
        .into_iter()
        .fold(vec![false; table.len()], |acc, s| {
            acc.iter().zip(&s).map(|(&a, &b)| a || b).collect()
        });
    Ok(BurnsideBrauer {
        distinct_values: v,
        covered: seen.iter().all(|&b| b),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrinfeldDepth {
    pub ell_ad: u32,
    pub module_depth: u32,
}

/// Depth 2ℓ+1 of the adjoint module, ℓ the stabilisation length of
/// Const(χ_adⁿ) counted from n = 0.
pub fn drinfeld_double_depth(g: &PermGroup, table: &CharacterTable) -> Result<DrinfeldDepth> {
    let base = constituents(table, &adjoint_character(g))?;
    let mut supports = PowerSupports::new(table, &base);
    let bound = 2 * table.len() + 3;
    let mut cur = vec![false; table.len()];
    cur[table.trivial_index()] = true;
    for ell in 0..bound {
        let next = supports.step(&cur);
        if next == cur {
            return Ok(DrinfeldDepth {
                ell_ad: ell as u32,
                module_depth: 2 * ell as u32 + 1,
            });
        }
        cur = next;
    }
    Err(Error::integrity(
        "adjoint constituent chain did not stabilise",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charring::{character_table, prime_for_pair};
    use crate::permgroup::{build_group, coset_permutation_character, parse_group_spec};
    use std::sync::Arc;

    fn embed(parent: &str, sub: &str) -> SubgroupEmbedding {
        let g = Arc::new(build_group(parent, 10_000).unwrap());
        SubgroupEmbedding::from_spec(g, &parse_group_spec(sub).unwrap()).unwrap()
    }

    #[test]
    fn theorem_on_s3_s4_values() {
        let t = verify_precise_theorem(Some(6), Some(7), Some(2), Some(3));
        assert!(t.passed());
        let t = verify_precise_theorem(Some(4), Some(7), Some(2), Some(3));
        assert!(!t.even_equality && !t.ineq1);
    }

    #[test]
    fn core_ideal_cases() {
        for (g, u, ell, core) in [
            ("S4", "S3", 3, 1),
            ("C11:C5@3", "C11", 1, 11),
            ("S3", "S3", 0, 6),
        ] {
            let e = embed(g, u);
            let c = core_ideal_check(&e, &coset_permutation_character(&e), ell).unwrap();
            assert!(c.passed(), "{g} {u}");
            assert_eq!(c.core_order, core);
        }
    }

    #[test]
    fn orders_of_characters() {
        let s3 = build_group("S3", 100).unwrap();
        let t = character_table(&s3).unwrap();
        assert_eq!(ord_of(&t, &t.irreducible(1)).unwrap(), Some(2));
        let c5 = build_group("C5", 100).unwrap();
        let t = character_table(&c5).unwrap();
        for i in 1..5 {
            assert_eq!(ord_of(&t, &t.irreducible(i)).unwrap(), Some(5));
        }
        let e = embed("S4", "S3");
        let t =
            crate::charring::CharacterTable::new(e.parent(), prime_for_pair(&e).unwrap()).unwrap();
        assert_eq!(
            ord_of(&t, &coset_permutation_character(&e)).unwrap(),
            Some(1)
        );
    }

    #[test]
    fn burnside_brauer_on_coset_character() {
        let e = embed("S4", "S3");
        let t =
            crate::charring::CharacterTable::new(e.parent(), prime_for_pair(&e).unwrap()).unwrap();
        let bb = burnside_brauer_check(&t, &coset_permutation_character(&e)).unwrap();
        assert_eq!(bb.distinct_values, 4);
        assert!(bb.covered);
        let e = embed("S4", "A4");
        let chi = coset_permutation_character(&e);
        assert!(matches!(
            burnside_brauer_check(&t, &chi),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn burnside_brauer_on_regular_character() {
        let g = build_group("D8", 100).unwrap();
        let t = character_table(&g).unwrap();
        let mut reg = vec![0i128; g.num_classes()];
        reg[0] = 8;
        let bb = burnside_brauer_check(&t, &ClassFunction::Integer(reg)).unwrap();
        assert_eq!(bb.distinct_values, 2);
        assert!(bb.covered);
    }

    #[test]
    fn drinfeld_depths() {
        let s3 = build_group("S3", 100).unwrap();
        let d = drinfeld_double_depth(&s3, &character_table(&s3).unwrap()).unwrap();
        assert_eq!((d.ell_ad, d.module_depth), (1, 3));
        let c6 = build_group("C6", 100).unwrap();
        let d = drinfeld_double_depth(&c6, &character_table(&c6).unwrap()).unwrap();
        assert_eq!(d.module_depth, 1);
        let d8 = build_group("D8", 100).unwrap();
        let t = character_table(&d8).unwrap();
        let d = drinfeld_double_depth(&d8, &t).unwrap();
        assert!(d.module_depth <= 2 * t.len() as u32 + 1);
    }
}
