//! Relative cyclic homology of small algebra extensions R ⊇ S over ℚ.
//!
//! Algebras are given by structure constants on a basis e_0 .. e_{d−1}.
//! The cyclic module Z_n(R, S) is R^{⊗(n+1)} modulo the relations that move
//! an element of S across each of the n+1 cyclic gaps.

mod cyclic;
mod format;

pub use cyclic::{
    cyclic_identities_check, cyclic_module, dennis_trace, dennis_trace_on, relative_hc,
    CyclicComplex, CyclicModule, DennisSummary, HCResult, IdentityCheck, DEFAULT_AMBIENT_CAP,
    MAX_CYCLIC_DEGREE,
};
pub use format::{builtin_algebra, load_algebra, parse_algebra, AlgebraFile};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qlinalg::{axpy, unit_vec, Echelon, Rational, SparseVec};

pub const MAX_ALGEBRA_DIM: usize = 16;
pub const MAX_EXTENSION_DIM: usize = 64;

/// A finite-dimensional associative unital algebra over ℚ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SCAlgebra {
    labels: Vec<String>,
    /// products[i][j] = e_i e_j
    products: Vec<Vec<SparseVec>>,
    unit: SparseVec,
}

impl SCAlgebra {
    /// Validates associativity and the unit on all basis elements.
    pub fn new(
        labels: Vec<String>,
        products: Vec<Vec<SparseVec>>,
        unit: SparseVec,
    ) -> Result<Self> {
        Self::with_limit(labels, products, unit, MAX_ALGEBRA_DIM)
    }

    fn with_limit(
        labels: Vec<String>,
        products: Vec<Vec<SparseVec>>,
        unit: SparseVec,
        limit: usize,
    ) -> Result<Self> {
        let d = labels.len();
        if d == 0 || d > limit {
            return Err(Error::input(format!(
                "algebra dimension must be in 1..={limit}"
            )));
        }
        if products.len() != d || products.iter().any(|r| r.len() != d) {
            return Err(Error::input("structure constant table has the wrong shape"));
        }
        let in_range = |v: &SparseVec| v.keys().all(|&k| k < d);
        if !in_range(&unit) || products.iter().flatten().any(|v| !in_range(v)) {
            return Err(Error::input("basis index out of range"));
        }
        let alg = SCAlgebra {
            labels,
            products,
            unit,
        };
        for i in 0..d {
            let ei = unit_vec(i);
            if alg.mul(&alg.unit, &ei) != ei || alg.mul(&ei, &alg.unit) != ei {
                return Err(Error::input(format!(
                    "unit is not two-sided on {}",
                    alg.labels[i]
                )));
            }
            for j in 0..d {
                for k in 0..d {
                    let left = alg.mul(&alg.products[i][j], &unit_vec(k));
                    let right = alg.mul(&ei, &alg.products[j][k]);
                    if left != right {
                        return Err(Error::input(format!(
                            "not associative on ({}, {}, {})",
                            alg.labels[i], alg.labels[j], alg.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.products[i][j]
    }

    pub fn mul(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, x) in a {
            for (&j, y) in b {
                axpy(&mut out, &(x * y), &self.products[i][j]);
            }
        }
        out
    }

    /// The ground field ℚ.
    pub fn field() -> Self {
        SCAlgebra::new(vec!["1".into()], vec![vec![unit_vec(0)]], unit_vec(0)).expect("field")
    }

    /// ℚ[x]/(x²).
    pub fn dual_numbers() -> Self {
        let products = vec![
            vec![unit_vec(0), unit_vec(1)],
            vec![unit_vec(1), SparseVec::new()],
        ];
        SCAlgebra::new(vec!["1".into(), "x".into()], products, unit_vec(0)).expect("dual numbers")
    }

    /// M_m(ℚ) on matrix units e_ij, index i·m + j.
    pub fn matrix_units(m: usize) -> Result<Self> {
        if m == 0 || m * m > MAX_ALGEBRA_DIM {
            return Err(Error::input("matrix size out of range"));
        }
        let idx = |i: usize, j: usize| i * m + j;
        let mut products = vec![vec![SparseVec::new(); m * m]; m * m];
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    products[idx(i, j)][idx(j, k)] = unit_vec(idx(i, k));
                }
            }
        }
        let unit = (0..m).map(|i| (idx(i, i), Rational::one())).collect();
        let labels = (0..m)
            .flat_map(|i| (0..m).map(move |j| format!("e{}{}", i + 1, j + 1)))
            .collect();
        SCAlgebra::new(labels, products, unit)
    }
}

/// A unital subalgebra, given by a spanning set of vectors in the parent.
#[derive(Debug, Clone)]
pub struct SubalgebraSpec {
    basis: Vec<SparseVec>,
}

impl SubalgebraSpec {
    /// Checks that the span contains the unit and is closed under products;
    /// redundant vectors are dropped.
    pub fn new(parent: &SCAlgebra, vectors: Vec<SparseVec>) -> Result<Self> {
        let mut span = Echelon::new();
        let mut basis = Vec::new();
        for v in vectors {
            if v.keys().any(|&k| k >= parent.dim()) {
                return Err(Error::input("subalgebra vector has an index out of range"));
            }
            if span.insert(v.clone()) {
                basis.push(v);
            }
        }
        if !span.contains(parent.unit()) {
            return Err(Error::input("subalgebra does not contain the unit"));
        }
        for a in &basis {
            for b in &basis {
                if !span.contains(&parent.mul(a, b)) {
                    return Err(Error::input(
                        "subalgebra is not closed under multiplication",
                    ));
                }
            }
        }
        Ok(SubalgebraSpec { basis })
    }

    /// ℚ·1.
    pub fn scalars(parent: &SCAlgebra) -> Self {
        SubalgebraSpec {
            basis: vec![parent.unit().clone()],
        }
    }

    /// The whole algebra.
    pub fn whole(parent: &SCAlgebra) -> Self {
        SubalgebraSpec {
            basis: (0..parent.dim()).map(unit_vec).collect(),
        }
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// M_m(R) ⊇ M_m(S).
#[derive(Debug, Clone)]
pub struct MatrixExtension {
    pub m: usize,
    pub algebra: SCAlgebra,
    pub subalgebra: SubalgebraSpec,
    pub base: SCAlgebra,
    pub base_subalgebra: SubalgebraSpec,
    /// Dimension of R.
    pub base_dim: usize,
}

impl MatrixExtension {
    /// Basis index of e_ij ⊗ r_k.
    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.m + j) * self.base_dim + k
    }

    /// (i, j, k) of a basis index.
    pub fn split(&self, b: usize) -> (usize, usize, usize) {
        let k = b % self.base_dim;
        let ij = b / self.base_dim;
        (ij / self.m, ij % self.m, k)
    }
}

pub fn matrix_extension(r: &SCAlgebra, s: &SubalgebraSpec, m: usize) -> Result<MatrixExtension> {
    let d = r.dim();
    if m == 0 || m * m * d > MAX_EXTENSION_DIM {
        return Err(Error::resource(format!(
            "M_{m} of a {d}-dimensional algebra exceeds {MAX_EXTENSION_DIM} dimensions"
        )));
    }
    let idx = |i: usize, j: usize, k: usize| (i * m + j) * d + k;
    let dim = m * m * d;
    let mut products = vec![vec![SparseVec::new(); dim]; dim];
    for i in 0..m {
        for j in 0..m {
            for k in 0..d {
                for l in 0..m {
                    for q in 0..d {
                        let prod = r.basis_product(k, q);
                        products[idx(i, j, k)][idx(j, l, q)] = prod
                            .iter()
                            .map(|(&t, c)| (idx(i, l, t), c.clone()))
                            .collect();
                    }
                }
            }
        }
    }
    let mut unit = SparseVec::new();
    for i in 0..m {
        for (&t, c) in r.unit() {
            unit.insert(idx(i, i, t), c.clone());
        }
    }
    let labels = (0..m)
        .flat_map(|i| (0..m).flat_map(move |j| (0..d).map(move |k| (i, j, k))))
        .map(|(i, j, k)| {
            if m == 1 {
                r.labels()[k].clone()
            } else {
                format!("e{}{}*{}", i + 1, j + 1, r.labels()[k])
            }
        })
        .collect();
    let algebra = SCAlgebra::with_limit(labels, products, unit, MAX_EXTENSION_DIM)?;
    let mut sub = Vec::new();
    for i in 0..m {
        for j in 0..m {
            for v in s.basis() {
                sub.push(v.iter().map(|(&t, c)| (idx(i, j, t), c.clone())).collect());
            }
        }
    }
    let subalgebra = SubalgebraSpec::new(&algebra, sub)?;
    Ok(MatrixExtension {
        m,
        algebra,
        subalgebra,
        base: r.clone(),
        base_subalgebra: s.clone(),
        base_dim: d,
    })
}

/// Parses a rational such as `3`, `-1/2`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    if text.is_empty() || text.len() > 64 {
        return None;
    }
    let r: Rational = text.parse().ok()?;
    if r.denom().is_zero() {
        return None;
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate() {
        assert_eq!(SCAlgebra::field().dim(), 1);
        let d = SCAlgebra::dual_numbers();
        assert!(d.basis_product(1, 1).is_empty());
        let m2 = SCAlgebra::matrix_units(2).unwrap();
        assert_eq!(m2.unit().len(), 2);
    }

    #[test]
    fn non_associative_table_rejected() {
        // x² = 1 with x·1 = 0 breaks the unit axiom.
        let products = vec![
            vec![unit_vec(0), SparseVec::new()],
            vec![unit_vec(1), unit_vec(0)],
        ];
        assert!(SCAlgebra::new(vec!["1".into(), "x".into()], products, unit_vec(0)).is_err());
    }

    #[test]
    fn subalgebra_checks() {
        let d = SCAlgebra::dual_numbers();
        assert!(SubalgebraSpec::new(&d, vec![unit_vec(1)]).is_err());
        assert_eq!(
            SubalgebraSpec::new(&d, vec![unit_vec(0), unit_vec(0)])
                .unwrap()
                .dim(),
            1
        );
    }

    #[test]
    fn matrix_extensions() {
        let k = SCAlgebra::field();
        let ext = matrix_extension(&k, &SubalgebraSpec::whole(&k), 2).unwrap();
        let m2 = SCAlgebra::matrix_units(2).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(ext.algebra.basis_product(i, j), m2.basis_product(i, j));
            }
        }
        let d = SCAlgebra::dual_numbers();
        let ext = matrix_extension(&d, &SubalgebraSpec::scalars(&d), 2).unwrap();
        assert_eq!((ext.algebra.dim(), ext.subalgebra.dim()), (8, 4));
        assert_eq!(ext.split(ext.index(1, 0, 1)), (1, 0, 1));
        let one = matrix_extension(&d, &SubalgebraSpec::scalars(&d), 1).unwrap();
        assert_eq!(one.algebra, d);
        assert!(matches!(
            matrix_extension(
                &SCAlgebra::matrix_units(4).unwrap(),
                &SubalgebraSpec::scalars(&d),
                3
            ),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn rationals() {
        assert_eq!(
            parse_rational("-1/2"),
            Some(Rational::new((-1).into(), 2.into()))
        );
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
