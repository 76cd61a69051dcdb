//! Depth of a subgroup pair from its inclusion matrix.
//!
//! With M the s×r inclusion matrix, P = MMᵀ and Q̂ = MᵀM, the relative
//! tensor powers of ℂG over ℂU have multiplicity matrices
//!
//! ```text
//! U-U: Pⁿ    U-G: Pⁿ⁻¹M    G-U: MᵀPⁿ⁻¹    G-G: Q̂ⁿ⁻¹
//! ```
//!
//! and every depth condition compares the zero patterns of two consecutive
//! powers. All of this runs over the boolean semiring.

mod checks;
mod oracle;
mod report;

use serde::{Deserialize, Serialize};

pub use checks::{
    burnside_brauer_check, core_ideal_check, drinfeld_double_depth, ord_of, verify_precise_theorem,
    BurnsideBrauer, CoreIdealCheck, DrinfeldDepth, TheoremCheck,
};
pub use oracle::{brute_force_bimodule_oracle, expected_pattern, fiber_points, BimoduleSide};
pub use report::{
    analyze_pair, analyze_with_tables, depth_value, AnalysisOptions, Caps, DepthReport,
    OracleRecord, OracleStatus, PairTables, TowerLevel, VERSION,
};

use crate::boolpat::BoolPattern;
use crate::charring::{induce, restrict, CharacterTable};
use crate::error::{Error, Result};
use crate::permgroup::SubgroupEmbedding;

/// Restriction multiplicities M_ij = ⟨χ_i^U, Res χ_j^G⟩.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InclusionMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<u64>>,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
}

impl InclusionMatrix {
    /// Wraps raw entries, checking shape and that no row or column vanishes.
    pub fn from_entries(
        entries: Vec<Vec<u64>>,
        row_labels: Vec<String>,
        col_labels: Vec<String>,
    ) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        if rows == 0 || cols == 0 {
            return Err(Error::input("inclusion matrix must be nonempty"));
        }
        if entries.iter().any(|r| r.len() != cols) {
            return Err(Error::input("inclusion matrix rows have different lengths"));
        }
        if row_labels.len() != rows || col_labels.len() != cols {
            return Err(Error::input("label count does not match the matrix shape"));
        }
        if let Some(i) = (0..rows).find(|&i| entries[i].iter().all(|&x| x == 0)) {
            return Err(Error::integrity(format!(
                "row {i} of the inclusion matrix is zero"
            )));
        }
        if let Some(j) = (0..cols).find(|&j| entries.iter().all(|r| r[j] == 0)) {
            return Err(Error::integrity(format!(
                "column {j} of the inclusion matrix is zero"
            )));
        }
        Ok(InclusionMatrix {
            rows,
            cols,
            entries,
            row_labels,
            col_labels,
        })
    }

    /// Unlabelled matrix; rows are named `b1..`, columns `a1..`.
    pub fn unlabelled(entries: Vec<Vec<u64>>) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        Self::from_entries(
            entries,
            (1..=rows).map(|i| format!("b{i}")).collect(),
            (1..=cols).map(|j| format!("a{j}")).collect(),
        )
    }

    pub fn transpose(&self) -> InclusionMatrix {
        InclusionMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: (0..self.cols)
                .map(|j| (0..self.rows).map(|i| self.entries[i][j]).collect())
                .collect(),
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
        }
    }

    pub fn pattern(&self) -> BoolPattern {
        BoolPattern::of_matrix(&self.entries)
    }

    /// Bicoloured graph in DOT: subgroup irreducibles black, parent
    /// irreducibles white, edges labelled with multiplicities.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph \"{}\" {{\n", name.replace('"', "'"));
        out.push_str("  rankdir=TB;\n");
        for (i, l) in self.row_labels.iter().enumerate() {
            out.push_str(&format!(
                "  b{i} [label=\"{l}\", style=filled, fillcolor=black, fontcolor=white];\n"
            ));
        }
        for (j, l) in self.col_labels.iter().enumerate() {
            out.push_str(&format!(
                "  a{j} [label=\"{l}\", style=filled, fillcolor=white];\n"
            ));
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let m = self.entries[i][j];
                if m > 0 {
                    out.push_str(&format!("  b{i} -- a{j} [label=\"{m}\"];\n"));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Builds M by restriction and checks it against induction and against the
/// dimension count Σ_j M_ij deg χ_j = [G:U] deg χ_i.
pub fn inclusion_matrix(
    emb: &SubgroupEmbedding,
    table_u: &CharacterTable,
    table_g: &CharacterTable,
) -> Result<InclusionMatrix> {
    if table_u.prime() != table_g.prime() {
        return Err(Error::precondition(
            "subgroup and parent tables use different primes",
        ));
    }
    let irr_u: Vec<_> = table_u.irreducibles().collect();
    let irr_g: Vec<_> = table_g.irreducibles().collect();
    let restricted: Vec<_> = irr_g.iter().map(|chi| restrict(chi, emb)).collect();
    let mut entries = vec![vec![0u64; irr_g.len()]; irr_u.len()];
    for (i, psi) in irr_u.iter().enumerate() {
        let induced = induce(psi, emb)?;
        for (j, chi) in irr_g.iter().enumerate() {
            let m = table_u.inner_product(psi, &restricted[j])?;
            if table_g.inner_product(&induced, chi)? != m {
                return Err(Error::integrity(format!(
                    "Frobenius reciprocity fails at ({i}, {j})"
                )));
            }
            entries[i][j] = m;
        }
    }
    let index = emb.index() as u64;
    for (i, row) in entries.iter().enumerate() {
        let lhs: u64 = row
            .iter()
            .zip(table_g.degrees())
            .map(|(&m, &d)| m * d)
            .sum();
        if lhs != index * table_u.degrees()[i] {
            return Err(Error::integrity(format!(
                "dimension count fails on row {i}"
            )));
        }
    }
    let label = |side: &str, degs: &[u64]| -> Vec<String> {
        degs.iter()
            .enumerate()
            .map(|(i, d)| format!("{side}{}[{d}]", i + 1))
            .collect()
    };
    InclusionMatrix::from_entries(
        entries,
        label("U", table_u.degrees()),
        label("G", table_g.degrees()),
    )
}

/// Minimum depth of each flavour; `None` past the search bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthFlavors {
    pub d_odd: Option<u32>,
    pub d_even_left: Option<u32>,
    pub d_even_right: Option<u32>,
    pub d_h: Option<u32>,
    pub d_min: Option<u32>,
}

/// Which depth conditions hold, indexed by the depth value k.
#[derive(Debug, Clone)]
pub struct DepthConditions {
    /// holds[k] for 0 < k <= bound; odd k use the U-U chain, even k the
    /// U-G chain.
    pub holds: Vec<bool>,
    pub even_right: Vec<bool>,
    /// h_holds[k] for odd k.
    pub h_holds: Vec<bool>,
    pub bound: u32,
}

/// 2·max(r, s) + 3.
pub fn search_bound(m: &BoolPattern) -> u32 {
    2 * m.rows().max(m.cols()) as u32 + 3
}

impl DepthConditions {
    pub fn new(m: &BoolPattern) -> Self {
        let bound = search_bound(m);
        let mt = m.transpose();
        let p = m.mul(&mt);
        let qhat = mt.mul(m);
        // powers[n] = Pⁿ, qpowers[n] = Q̂ⁿ for n up to bound/2 + 1.
        let top = (bound / 2 + 1) as usize;
        let mut powers = vec![BoolPattern::identity(m.rows())];
        let mut qpowers = vec![BoolPattern::identity(m.cols())];
        for n in 0..top {
            powers.push(powers[n].mul(&p));
            qpowers.push(qpowers[n].mul(&qhat));
        }
        let k_len = bound as usize + 1;
        let mut holds = vec![false; k_len];
        let mut even_right = vec![false; k_len];
        let mut h_holds = vec![false; k_len];
        for k in 1..=bound as usize {
            if k % 2 == 1 {
                let n = (k - 1) / 2;
                holds[k] = powers[n] == powers[n + 1];
                let n = (k + 1) / 2;
                h_holds[k] = qpowers[n - 1] == qpowers[n];
            } else {
                let n = k / 2;
                holds[k] = powers[n - 1].mul(m) == powers[n].mul(m);
                even_right[k] = mt.mul(&powers[n - 1]) == mt.mul(&powers[n]);
            }
        }
        DepthConditions {
            holds,
            even_right,
            h_holds,
            bound,
        }
    }

    fn first(v: &[bool], parity: usize) -> Option<u32> {
        (1..v.len())
            .find(|&k| k % 2 == parity && v[k])
            .map(|k| k as u32)
    }

    pub fn flavors(&self) -> DepthFlavors {
        DepthFlavors {
            d_odd: Self::first(&self.holds, 1),
            d_even_left: Self::first(&self.holds, 0),
            d_even_right: Self::first(&self.even_right, 0),
            d_h: Self::first(&self.h_holds, 1),
            d_min: (1..self.holds.len())
                .find(|&k| self.holds[k])
                .map(|k| k as u32),
        }
    }

    /// Once a depth condition holds, every larger one holds too; same for
    /// h-depth.
    pub fn is_monotone(&self) -> bool {
        let mono = |v: &[bool], step: usize| {
            let start = (1..v.len()).find(|&k| v[k]);
            match start {
                Some(s) => (s..v.len()).step_by(step).all(|k| v[k]),
                None => true,
            }
        };
        mono(&self.holds, 1) && mono(&self.h_holds, 2)
    }

    pub fn sides_agree(&self) -> bool {
        (2..self.holds.len())
            .step_by(2)
            .all(|k| self.holds[k] == self.even_right[k])
    }
}

/// Depth flavours of an inclusion matrix.
///
/// Errors if the left and right even conditions disagree, if a condition
/// is not monotone in k, or if a flavour is not found within the bound.
/// None of these can happen for a genuine inclusion matrix.
pub fn depth_flavors(m: &InclusionMatrix) -> Result<DepthFlavors> {
    let conds = DepthConditions::new(&m.pattern());
    if !conds.sides_agree() {
        return Err(Error::integrity(
            "left and right even depth conditions disagree",
        ));
    }
    if !conds.is_monotone() {
        return Err(Error::integrity("depth conditions are not monotone"));
    }
    let f = conds.flavors();
    if f.d_odd.is_none() || f.d_even_left.is_none() || f.d_h.is_none() {
        return Err(Error::integrity(format!(
            "depth search did not terminate within {}",
            conds.bound
        )));
    }
    Ok(f)
}

/// Side of the pair on which the tensor powers of Q are decomposed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuotientSide {
    /// Q^{⊗n} restricted to U: supports of e₀·Pⁿ.
    Subalgebra,
    /// Q^{⊗n} as a G-module: {trivial} at n = 0, then e₀·M·Q̂ⁿ⁻¹.
    Parent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientChain {
    /// Least n >= 0 with supp v_n = supp v_{n+1}.
    pub ell: Option<u32>,
    /// Supports of v_0 ..= v_{ell+1}, as sorted irreducible indices.
    pub supports: Vec<Vec<usize>>,
}

/// Constituent chain of the tensor powers of Q = ℂ[U\G].
///
/// `trivial_row` and `trivial_col` locate the trivial characters of U and G.
/// The chain starts at Q^{⊗0}, the trivial module, so ℓ = 0 exactly when
/// Q itself is trivial.
pub fn quotient_chain(
    m: &InclusionMatrix,
    side: QuotientSide,
    trivial_row: usize,
    trivial_col: usize,
) -> Result<QuotientChain> {
    let pat = m.pattern();
    let bound = search_bound(&pat) as usize;
    let mt = pat.transpose();
    let mut e0 = vec![false; pat.rows()];
    e0[trivial_row] = true;
    let (mut v, step) = match side {
        QuotientSide::Subalgebra => (e0, pat.mul(&mt)),
        QuotientSide::Parent => {
            let mut t = vec![false; pat.cols()];
            t[trivial_col] = true;
            (t, mt.mul(&pat))
        }
    };
    let mut vs = vec![v.clone()];
    for n in 0..=bound {
        let next = match (side, n) {
            (QuotientSide::Parent, 0) => {
                let mut e0 = vec![false; pat.rows()];
                e0[trivial_row] = true;
                BoolPattern::vec_mul(&e0, &pat)
            }
            _ => BoolPattern::vec_mul(&v, &step),
        };
        if v.iter().zip(&next).any(|(&a, &b)| a && !b) {
            return Err(Error::integrity("quotient chain is not increasing"));
        }
        vs.push(next.clone());
        if next == v {
            break;
        }
        v = next;
    }
    let to_idx = |v: &Vec<bool>| (0..v.len()).filter(|&i| v[i]).collect::<Vec<_>>();
    let stable = vs.len() >= 2 && vs[vs.len() - 1] == vs[vs.len() - 2];
    Ok(QuotientChain {
        ell: stable.then(|| (vs.len() - 2) as u32),
        supports: vs.iter().map(to_idx).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3_s4() -> InclusionMatrix {
        InclusionMatrix::unlabelled(vec![
            vec![1, 0, 0, 1, 0],
            vec![0, 1, 0, 0, 1],
            vec![0, 0, 1, 1, 1],
        ])
        .unwrap()
    }

    #[test]
    fn s3_in_s4_flavours() {
        let f = depth_flavors(&s3_s4()).unwrap();
        assert_eq!(f.d_min, Some(5));
        assert_eq!(f.d_odd, Some(5));
        assert_eq!(f.d_even_left, Some(6));
        assert_eq!(f.d_even_right, Some(6));
        assert_eq!(f.d_h, Some(7));
    }

    #[test]
    fn reflected_graph() {
        let f = depth_flavors(&s3_s4().transpose()).unwrap();
        assert_eq!(f.d_min, Some(6));
        assert_eq!(f.d_odd, Some(7));
        assert_eq!(f.d_even_left, Some(6));
    }

    #[test]
    fn permutation_matrix_has_depth_one() {
        let m = InclusionMatrix::unlabelled(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let f = depth_flavors(&m).unwrap();
        assert_eq!((f.d_min, f.d_h, f.d_even_left), (Some(1), Some(1), Some(2)));
    }

    #[test]
    fn chains_of_s3_in_s4() {
        let m = s3_s4();
        let h = quotient_chain(&m, QuotientSide::Parent, 0, 0).unwrap();
        assert_eq!(h.ell, Some(3));
        assert_eq!(
            h.supports,
            vec![
                vec![0],
                vec![0, 3],
                vec![0, 2, 3, 4],
                vec![0, 1, 2, 3, 4],
                vec![0, 1, 2, 3, 4]
            ]
        );
        let r = quotient_chain(&m, QuotientSide::Subalgebra, 0, 0).unwrap();
        assert_eq!(r.ell, Some(2));
        assert_eq!(r.supports[1], vec![0, 2]);
    }

    #[test]
    fn trivial_quotient_has_length_zero() {
        let m = InclusionMatrix::unlabelled(vec![vec![1, 0], vec![0, 1]]).unwrap();
        for side in [QuotientSide::Parent, QuotientSide::Subalgebra] {
            assert_eq!(quotient_chain(&m, side, 0, 0).unwrap().ell, Some(0));
        }
    }

    #[test]
    fn zero_row_rejected() {
        assert!(InclusionMatrix::unlabelled(vec![vec![1, 0], vec![0, 0]]).is_err());
    }

    #[test]
    fn dot_has_weighted_edges() {
        let dot = s3_s4().to_dot("S3 in S4");
        assert!(dot.contains("b2 -- a4 [label=\"1\"]"));
        assert_eq!(dot.matches(" -- ").count(), 7);
    }
}
