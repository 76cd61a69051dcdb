//! The cyclic object Z_•(R, S) and its λ-complex.
//!
//! Degree n is R^{⊗(n+1)} on basis tuples (i_0, …, i_n), encoded with i_0
//! as the most significant base-d digit, modulo the span of
//! (…, r_g s, r_{g+1}, …) − (…, r_g, s r_{g+1}, …) for every gap g
//! (the gap after position n wraps around to position 0) and s ∈ S.

use num_traits::One;
use serde::Serialize;

use super::{MatrixExtension, SCAlgebra, SubalgebraSpec};
use crate::error::{Error, Result};
use crate::qlinalg::{
    axpy, rational, unit_vec, Echelon, Quotient, Rational, SparseMatrix, SparseVec,
};

pub const DEFAULT_AMBIENT_CAP: usize = 5000;
/// Highest degree a complex may be built to.
pub const MAX_CYCLIC_DEGREE: usize = 5;

struct Tensors<'a> {
    r: &'a SCAlgebra,
    d: usize,
}

impl Tensors<'_> {
    fn digits(&self, mut idx: usize, n: usize) -> Vec<usize> {
        let mut out = vec![0; n + 1];
        for slot in out.iter_mut().rev() {
            *slot = idx % self.d;
            idx /= self.d;
        }
        out
    }

    /// Expands a pure tensor of (possibly non-basis) slots.
    fn encode(&self, slots: &[SparseVec]) -> SparseVec {
        let mut acc = SparseVec::from([(0usize, Rational::one())]);
        for slot in slots {
            let mut next = SparseVec::new();
            for (&idx, c) in &acc {
                for (&k, x) in slot {
                    axpy(&mut next, &(c * x), &unit_vec(idx * self.d + k));
                }
            }
            acc = next;
        }
        acc
    }

    fn basis_slots(&self, digits: &[usize]) -> Vec<SparseVec> {
        digits.iter().map(|&k| unit_vec(k)).collect()
    }

    fn relations(&self, s: &SubalgebraSpec, n: usize) -> Echelon {
        let mut rel = Echelon::new();
        for idx in 0..self.d.pow(n as u32 + 1) {
            let digits = self.digits(idx, n);
            for sv in s.basis() {
                for g in 0..=n {
                    let next = if g == n { 0 } else { g + 1 };
                    let mut left = self.basis_slots(&digits);
                    left[g] = self.r.mul(&unit_vec(digits[g]), sv);
                    let mut right = self.basis_slots(&digits);
                    right[next] = self.r.mul(sv, &unit_vec(digits[next]));
                    let mut v = self.encode(&left);
                    axpy(&mut v, &-Rational::one(), &self.encode(&right));
                    if !v.is_empty() {
                        rel.insert(v);
                    }
                }
            }
        }
        rel
    }

    fn face(&self, idx: usize, n: usize, i: usize) -> SparseVec {
        let digits = self.digits(idx, n);
        let mut slots = self.basis_slots(&digits);
        if i < n {
            let prod = self.r.basis_product(digits[i], digits[i + 1]).clone();
            slots.splice(i..i + 2, [prod]);
        } else {
            let prod = self.r.basis_product(digits[n], digits[0]).clone();
            slots.pop();
            slots[0] = prod;
        }
        self.encode(&slots)
    }

    fn degeneracy(&self, idx: usize, n: usize, j: usize) -> SparseVec {
        let mut slots = self.basis_slots(&self.digits(idx, n));
        slots.insert(j + 1, self.r.unit().clone());
        self.encode(&slots)
    }

    fn cycle(&self, idx: usize, n: usize) -> SparseVec {
        let mut slots = self.basis_slots(&self.digits(idx, n));
        slots.rotate_right(1);
        self.encode(&slots)
    }
}

/// Z_n(R, S) with its operators as exact matrices on the quotient basis.
#[derive(Debug, Clone)]
pub struct CyclicModule {
    pub n: usize,
    pub ambient: usize,
    pub quotient: Quotient,
    /// d_0 .. d_n into degree n − 1; empty in degree 0.
    pub faces: Vec<SparseMatrix>,
    /// s_0 .. s_n into degree n + 1; empty at the top of a complex.
    pub degeneracies: Vec<SparseMatrix>,
    pub cycle: SparseMatrix,
}

impl CyclicModule {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// b = Σ (−1)^i d_i.
    pub fn boundary(&self) -> Option<SparseMatrix> {
        let first = self.faces.first()?;
        let mut b = SparseMatrix::zero(first.nrows, self.dim());
        for (i, d) in self.faces.iter().enumerate() {
            b = b.add(&d.scaled(&rational(if i % 2 == 0 { 1 } else { -1 })));
        }
        Some(b)
    }

    /// λ = (−1)^n t.
    pub fn lambda(&self) -> SparseMatrix {
        self.cycle
            .scaled(&rational(if self.n % 2 == 0 { 1 } else { -1 }))
    }

    /// Span of the columns of 1 − λ.
    fn one_minus_lambda(&self) -> Echelon {
        let m = SparseMatrix::identity(self.dim()).sub(&self.lambda());
        let mut e = Echelon::new();
        for c in m.cols {
            e.insert(c);
        }
        e
    }
}

/// Degrees 0..=top of Z_•(R, S).
#[derive(Debug, Clone)]
pub struct CyclicComplex {
    pub modules: Vec<CyclicModule>,
}

impl CyclicComplex {
    pub fn new(r: &SCAlgebra, s: &SubalgebraSpec, top: usize, ambient_cap: usize) -> Result<Self> {
        if top > MAX_CYCLIC_DEGREE {
            return Err(Error::resource(format!(
                "cyclic degree {top} exceeds {MAX_CYCLIC_DEGREE}"
            )));
        }
        let d = r.dim();
        let ambient = |n: usize| d.checked_pow(n as u32 + 1).filter(|&a| a <= ambient_cap);
        if ambient(top).is_none() {
            return Err(Error::resource(format!(
                "Z_{top} of a {d}-dimensional algebra exceeds the ambient cap {ambient_cap}"
            )));
        }
        let t = Tensors { r, d };
        let quotients: Vec<Quotient> = (0..=top)
            .map(|n| Quotient::new(d.pow(n as u32 + 1), t.relations(s, n)))
            .collect();
        let broken =
            |what: String| Error::integrity(format!("{what} does not preserve the relations"));
        let mut modules = Vec::with_capacity(top + 1);
        for (n, q) in quotients.iter().enumerate() {
            let mut faces = Vec::new();
            if n > 0 {
                for i in 0..=n {
                    let f = q.induced(&quotients[n - 1], |x| t.face(x, n, i));
                    faces.push(f.ok_or_else(|| broken(format!("d_{i} in degree {n}")))?);
                }
            }
            let mut degeneracies = Vec::new();
            if n < top {
                for j in 0..=n {
                    let f = q.induced(&quotients[n + 1], |x| t.degeneracy(x, n, j));
                    degeneracies.push(f.ok_or_else(|| broken(format!("s_{j} in degree {n}")))?);
                }
            }
            let cycle = q
                .induced(q, |x| t.cycle(x, n))
                .ok_or_else(|| broken(format!("t in degree {n}")))?;
            modules.push(CyclicModule {
                n,
                ambient: q.ambient,
                quotient: q.clone(),
                faces,
                degeneracies,
                cycle,
            });
        }
        Ok(CyclicComplex { modules })
    }

    pub fn top(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn dims(&self) -> Vec<usize> {
        self.modules.iter().map(CyclicModule::dim).collect()
    }

    /// HC_0 .. HC_N through the λ-complex; needs degree N + 1.
    pub fn hc(&self, top: usize) -> Result<HCResult> {
        if top + 1 > self.top() {
            return Err(Error::precondition(format!(
                "HC_{top} needs the complex up to degree {}",
                top + 1
            )));
        }
        let chains: Vec<Quotient> = self.modules[..=top + 1]
            .iter()
            .map(|z| Quotient::new(z.dim(), z.one_minus_lambda()))
            .collect();
        // rank of b̄ out of each degree; degree 0 maps to zero
        let mut ranks = vec![0usize; top + 2];
        for n in 1..=top + 1 {
            let b = self.modules[n]
                .boundary()
                .expect("faces exist above degree 0");
            let bar = chains[n]
                .induced(&chains[n - 1], |k| b.cols[k].clone())
                .ok_or_else(|| {
                    Error::integrity(format!("b does not preserve im(1 − λ) in degree {n}"))
                })?;
            ranks[n] = bar.rank();
        }
        let chain_dims: Vec<usize> = chains.iter().map(Quotient::dim).collect();
        let dims = (0..=top)
            .map(|n| chain_dims[n] - ranks[n] - ranks[n + 1])
            .collect();
        Ok(HCResult {
            top,
            dims,
            cyclic_dims: self.dims()[..=top].to_vec(),
            chain_dims: chain_dims[..=top].to_vec(),
        })
    }
}

/// Z_n(R, S) with its faces and degeneracies; builds degrees n − 1 ..= n + 1.
pub fn cyclic_module(r: &SCAlgebra, s: &SubalgebraSpec, n: usize) -> Result<CyclicModule> {
    let mut c = CyclicComplex::new(r, s, n + 1, DEFAULT_AMBIENT_CAP)?;
    Ok(c.modules.swap_remove(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HCResult {
    pub top: usize,
    pub dims: Vec<usize>,
    /// dim Z_n.
    pub cyclic_dims: Vec<usize>,
    /// dim Z_n / im(1 − λ).
    pub chain_dims: Vec<usize>,
}

pub fn relative_hc(
    r: &SCAlgebra,
    s: &SubalgebraSpec,
    top: usize,
    ambient_cap: usize,
) -> Result<HCResult> {
    CyclicComplex::new(r, s, top + 1, ambient_cap)?.hc(top)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

/// Every cyclic-object identity whose operators exist in the complex, plus
/// b² = 0 and b(im(1 − λ)) ⊆ im(1 − λ).
pub fn cyclic_identities_check(c: &CyclicComplex) -> IdentityCheck {
    let mut out = IdentityCheck::default();
    let z = &c.modules;
    for n in 0..=c.top() {
        let m = &z[n];
        let id = SparseMatrix::identity(m.dim());
        out.expect(m.cycle.power(n as u32 + 1) == id, || {
            format!("t^{} ≠ id in degree {n}", n + 1)
        });
        if n >= 1 {
            let below = &z[n - 1];
            out.expect(m.faces[0].compose(&m.cycle) == m.faces[n], || {
                format!("d_0 t ≠ d_n in degree {n}")
            });
            for i in 1..=n {
                out.expect(
                    m.faces[i].compose(&m.cycle) == below.cycle.compose(&m.faces[i - 1]),
                    || format!("d_{i} t ≠ t d_{} in degree {n}", i - 1),
                );
            }
            let lam = below.one_minus_lambda();
            let b = m.boundary().expect("faces exist");
            let image = b.compose(&SparseMatrix::identity(m.dim()).sub(&m.lambda()));
            out.expect(image.cols.iter().all(|v| lam.contains(v)), || {
                format!("b does not preserve im(1 − λ) in degree {n}")
            });
        }
        if n >= 2 {
            let (mid, low) = (&z[n - 1], &z[n]);
            for j in 1..=n {
                for i in 0..j {
                    out.expect(
                        mid.faces[i].compose(&low.faces[j])
                            == mid.faces[j - 1].compose(&low.faces[i]),
                        || format!("d_{i} d_{j} ≠ d_{} d_{i} in degree {n}", j - 1),
                    );
                }
            }
            let bb = mid
                .boundary()
                .expect("faces exist")
                .compose(&low.boundary().expect("faces exist"));
            out.expect(bb.is_zero(), || format!("b² ≠ 0 in degree {n}"));
        }
        if n < c.top() {
            let up = &z[n + 1];
            for i in 1..=n {
                out.expect(
                    m.degeneracies[i].compose(&m.cycle) == up.cycle.compose(&m.degeneracies[i - 1]),
                    || format!("s_{i} t ≠ t s_{} in degree {n}", i - 1),
                );
            }
            out.expect(
                m.degeneracies[0].compose(&m.cycle)
                    == up.cycle.power(2).compose(&m.degeneracies[n]),
                || format!("s_0 t ≠ t² s_n in degree {n}"),
            );
            for i in 0..=n + 1 {
                for j in 0..=n {
                    let lhs = up.faces[i].compose(&m.degeneracies[j]);
                    let rhs = if i < j {
                        z[n - 1].degeneracies[j - 1].compose(&m.faces[i])
                    } else if i == j || i == j + 1 {
                        id.clone()
                    } else {
                        z[n - 1].degeneracies[j].compose(&m.faces[i - 1])
                    };
                    out.expect(lhs == rhs, || {
                        format!("d_{i} s_{j} identity fails in degree {n}")
                    });
                }
            }
            if n + 1 < c.top() {
                for j in 0..=n {
                    for i in 0..=j {
                        out.expect(
                            up.degeneracies[i].compose(&m.degeneracies[j])
                                == up.degeneracies[j + 1].compose(&m.degeneracies[i]),
                            || format!("s_{i} s_{j} ≠ s_{} s_{i} in degree {n}", j + 1),
                        );
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DennisSummary {
    pub m: usize,
    pub n: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub operators_checked: usize,
}

/// The matrix-entry contraction on basis tuples of M_m(R)^{⊗(n+1)}.
fn contraction(ext: &MatrixExtension, idx: usize, n: usize) -> SparseVec {
    let big = ext.algebra.dim();
    let mut entries = vec![(0, 0, 0); n + 1];
    let mut rest = idx;
    for e in entries.iter_mut().rev() {
        *e = ext.split(rest % big);
        rest /= big;
    }
    let chained = (0..=n).all(|t| entries[t].1 == entries[(t + 1) % (n + 1)].0);
    if !chained {
        return SparseVec::new();
    }
    let code = entries
        .iter()
        .fold(0, |acc, &(_, _, k)| acc * ext.base_dim + k);
    unit_vec(code)
}

/// Verifies the Dennis trace Z_n(M_m(R), M_m(S)) → Z_n(R, S) on prebuilt
/// complexes: well defined in degrees n − 1 ..= n + 1, commuting with every
/// face, degeneracy and the cycle in degree n, and bijective in degree n.
pub fn dennis_trace_on(
    ext: &MatrixExtension,
    source: &CyclicComplex,
    target: &CyclicComplex,
    n: usize,
) -> Result<DennisSummary> {
    let top = n + 1;
    if source.top() < top || target.top() < top {
        return Err(Error::precondition(format!(
            "the Dennis trace in degree {n} needs degree {top}"
        )));
    }
    let low = n.saturating_sub(1);
    let mut traces = Vec::new();
    for k in low..=top {
        let tr = source.modules[k]
            .quotient
            .induced(&target.modules[k].quotient, |x| contraction(ext, x, k))
            .ok_or_else(|| {
                Error::integrity(format!("Dennis trace is not well defined in degree {k}"))
            })?;
        traces.push(tr);
    }
    let tr = |k: usize| &traces[k - low];
    let (a, r) = (&source.modules[n], &target.modules[n]);
    let mut checked = 0;
    let mut fail = |ok: bool, what: String| -> Result<()> {
        checked += 1;
        if ok {
            Ok(())
        } else {
            Err(Error::integrity(format!(
                "Dennis trace does not commute with {what} in degree {n}"
            )))
        }
    };
    if n >= 1 {
        for i in 0..=n {
            fail(
                tr(n - 1).compose(&a.faces[i]) == r.faces[i].compose(tr(n)),
                format!("d_{i}"),
            )?;
        }
    }
    for j in 0..=n {
        fail(
            tr(n + 1).compose(&a.degeneracies[j]) == r.degeneracies[j].compose(tr(n)),
            format!("s_{j}"),
        )?;
    }
    fail(
        tr(n).compose(&a.cycle) == r.cycle.compose(tr(n)),
        "t".into(),
    )?;
    let rank = tr(n).rank();
    if rank != a.dim() || rank != r.dim() {
        return Err(Error::integrity(format!(
            "Dennis trace in degree {n} has rank {rank} between dimensions {} and {}",
            a.dim(),
            r.dim()
        )));
    }
    Ok(DennisSummary {
        m: ext.m,
        n,
        source_dim: a.dim(),
        target_dim: r.dim(),
        rank,
        operators_checked: checked,
    })
}

pub fn dennis_trace(ext: &MatrixExtension, n: usize, ambient_cap: usize) -> Result<DennisSummary> {
    let source = CyclicComplex::new(&ext.algebra, &ext.subalgebra, n + 1, ambient_cap)?;
    let target = CyclicComplex::new(&ext.base, &ext.base_subalgebra, n + 1, ambient_cap)?;
    dennis_trace_on(ext, &source, &target, n)
}

#[cfg(test)]
mod tests {
    use super::super::matrix_extension;
    use super::*;

    fn complex(r: &SCAlgebra, s: &SubalgebraSpec, top: usize) -> CyclicComplex {
        CyclicComplex::new(r, s, top, DEFAULT_AMBIENT_CAP).unwrap()
    }

    #[test]
    fn ground_field_is_one_dimensional_with_identity_operators() {
        let k = SCAlgebra::field();
        let c = complex(&k, &SubalgebraSpec::scalars(&k), 3);
        assert_eq!(c.dims(), vec![1, 1, 1, 1]);
        for z in &c.modules {
            assert_eq!(z.cycle, SparseMatrix::identity(1));
            assert!(z
                .faces
                .iter()
                .chain(&z.degeneracies)
                .all(|f| *f == SparseMatrix::identity(1)));
        }
        assert!(cyclic_identities_check(&c).passed());
        assert_eq!(c.hc(2).unwrap().dims, vec![1, 0, 1]);
    }

    #[test]
    fn degree_zero_dimensions() {
        let d = SCAlgebra::dual_numbers();
        assert_eq!(
            cyclic_module(&d, &SubalgebraSpec::scalars(&d), 0)
                .unwrap()
                .dim(),
            2
        );
        let m2 = SCAlgebra::matrix_units(2).unwrap();
        assert_eq!(
            cyclic_module(&m2, &SubalgebraSpec::whole(&m2), 0)
                .unwrap()
                .dim(),
            1
        );
        // M₂ over the scalars: M₂ / [k, M₂] = M₂.
        assert_eq!(
            cyclic_module(&m2, &SubalgebraSpec::scalars(&m2), 0)
                .unwrap()
                .dim(),
            4
        );
    }

    #[test]
    fn hc_zero_values() {
        let d = SCAlgebra::dual_numbers();
        assert_eq!(
            relative_hc(&d, &SubalgebraSpec::scalars(&d), 0, DEFAULT_AMBIENT_CAP)
                .unwrap()
                .dims,
            vec![2]
        );
        let m2 = SCAlgebra::matrix_units(2).unwrap();
        let whole = SubalgebraSpec::whole(&m2);
        assert_eq!(
            relative_hc(&m2, &whole, 0, DEFAULT_AMBIENT_CAP)
                .unwrap()
                .dims,
            vec![1]
        );
        // Over the scalars HC_0(M₂) = M₂/[M₂, M₂] is one-dimensional too.
        let sc = SubalgebraSpec::scalars(&m2);
        assert_eq!(
            relative_hc(&m2, &sc, 0, DEFAULT_AMBIENT_CAP).unwrap().dims,
            vec![1]
        );
    }

    #[test]
    fn identities_on_dual_numbers_and_matrices() {
        let d = SCAlgebra::dual_numbers();
        let check = cyclic_identities_check(&complex(&d, &SubalgebraSpec::scalars(&d), 3));
        assert!(check.passed(), "{:?}", check.failures);
        let m2 = SCAlgebra::matrix_units(2).unwrap();
        let check = cyclic_identities_check(&complex(&m2, &SubalgebraSpec::whole(&m2), 2));
        assert!(check.passed(), "{:?}", check.failures);
    }

    #[test]
    fn broken_operator_is_caught() {
        let d = SCAlgebra::dual_numbers();
        let mut c = complex(&d, &SubalgebraSpec::scalars(&d), 2);
        c.modules[1].cycle = SparseMatrix::identity(c.modules[1].dim());
        assert!(!cyclic_identities_check(&c).passed());
    }

    #[test]
    fn dennis_trace_is_the_matrix_trace_in_degree_zero() {
        let k = SCAlgebra::field();
        let ext = matrix_extension(&k, &SubalgebraSpec::whole(&k), 2).unwrap();
        let s = dennis_trace(&ext, 0, DEFAULT_AMBIENT_CAP).unwrap();
        assert_eq!((s.source_dim, s.target_dim, s.rank), (1, 1, 1));
    }

    #[test]
    fn dennis_trace_for_m_equal_one_is_the_identity() {
        let d = SCAlgebra::dual_numbers();
        let ext = matrix_extension(&d, &SubalgebraSpec::scalars(&d), 1).unwrap();
        let source = complex(&ext.algebra, &ext.subalgebra, 2);
        let target = complex(&d, &SubalgebraSpec::scalars(&d), 2);
        let s = dennis_trace_on(&ext, &source, &target, 1).unwrap();
        assert_eq!(s.rank, 4);
        let tr = source.modules[1]
            .quotient
            .induced(&target.modules[1].quotient, |x| contraction(&ext, x, 1));
        assert_eq!(tr.unwrap(), SparseMatrix::identity(4));
    }

    #[test]
    fn ambient_cap_is_a_resource_error() {
        let d = SCAlgebra::dual_numbers();
        let ext = matrix_extension(&d, &SubalgebraSpec::scalars(&d), 2).unwrap();
        let err =
            CyclicComplex::new(&ext.algebra, &ext.subalgebra, 4, DEFAULT_AMBIENT_CAP).unwrap_err();
        assert!(matches!(err, Error::Resource(_)));
        let err = CyclicComplex::new(&d, &SubalgebraSpec::scalars(&d), 6, DEFAULT_AMBIENT_CAP)
            .unwrap_err();
        assert!(matches!(err, Error::Resource(_)));
    }
}
