//! Sparse exact linear algebra over ℚ.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;
pub type SparseVec = BTreeMap<usize, Rational>;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// y += a·x, dropping entries that cancel.
pub fn axpy(y: &mut SparseVec, a: &Rational, x: &SparseVec) {
    if a.is_zero() {
        return;
    }
    for (&i, v) in x {
        let entry = y.entry(i).or_insert_with(Rational::zero);
        *entry += a * v;
        if entry.is_zero() {
            y.remove(&i);
        }
    }
}

pub fn unit_vec(i: usize) -> SparseVec {
    SparseVec::from([(i, Rational::one())])
}

/// Matrix stored by columns: column j is the image of basis vector j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            cols: vec![SparseVec::new(); ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            nrows: n,
            cols: (0..n).map(unit_vec).collect(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&j, a) in v {
            axpy(&mut out, a, &self.cols[j]);
        }
        out
    }

    /// self ∘ other.
    pub fn compose(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols(), other.nrows, "matrix shapes do not compose");
        SparseMatrix {
            nrows: self.nrows,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn scaled(&self, a: &Rational) -> SparseMatrix {
        let mut out = SparseMatrix::zero(self.nrows, self.ncols());
        for (o, c) in out.cols.iter_mut().zip(&self.cols) {
            axpy(o, a, c);
        }
        out
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.nrows, self.ncols()), (other.nrows, other.ncols()));
        let mut out = self.clone();
        for (o, c) in out.cols.iter_mut().zip(&other.cols) {
            axpy(o, &Rational::one(), c);
        }
        out
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.add(&other.scaled(&-Rational::one()))
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new();
        for c in &self.cols {
            e.insert(c.clone());
        }
        e.rank()
    }

    pub fn power(&self, k: u32) -> SparseMatrix {
        let mut acc = SparseMatrix::identity(self.ncols());
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }
}

/// A subspace held in reduced row echelon form: each stored vector has
/// coefficient 1 at its pivot and 0 at every other pivot.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    /// pivot column -> row
    pivots: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Canonical representative of v modulo the subspace: zero on every
    /// pivot column.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        let hits: Vec<usize> = v
            .keys()
            .filter(|c| self.pivots.contains_key(c))
            .copied()
            .collect();
        for c in hits {
            if let Some(a) = v.get(&c).cloned() {
                axpy(&mut v, &-a, &self.rows[self.pivots[&c]]);
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds v to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut v = self.reduce(&v);
        let Some((&p, lead)) = v.iter().next() else {
            return false;
        };
        let inv = lead.recip();
        for x in v.values_mut() {
            *x *= &inv;
        }
        for row in &mut self.rows {
            if let Some(a) = row.get(&p).cloned() {
                axpy(row, &-a, &v);
            }
        }
        self.pivots.insert(p, self.rows.len());
        self.rows.push(v);
        true
    }
}

/// V / W for V = ℚ^ambient and W a subspace, with coordinates on the
/// non-pivot standard basis vectors.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub ambient: usize,
    pub relations: Echelon,
    /// Quotient basis: ambient indices that are not pivots.
    pub basis: Vec<usize>,
    position: BTreeMap<usize, usize>,
}

impl Quotient {
    pub fn new(ambient: usize, relations: Echelon) -> Self {
        let basis: Vec<usize> = (0..ambient).filter(|&i| !relations.is_pivot(i)).collect();
        let position = basis.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        Quotient {
            ambient,
            relations,
            basis,
            position,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Quotient coordinates of an ambient vector.
    pub fn project(&self, v: &SparseVec) -> SparseVec {
        self.relations
            .reduce(v)
            .into_iter()
            .map(|(i, a)| (self.position[&i], a))
            .collect()
    }

    /// Ambient lift of quotient basis vector k.
    pub fn lift(&self, k: usize) -> usize {
        self.basis[k]
    }

    /// Matrix on the quotient induced by an ambient map given on basis
    /// vectors, or `None` if the map does not preserve the relations.
    pub fn induced(
        &self,
        target: &Quotient,
        image: impl Fn(usize) -> SparseVec,
    ) -> Option<SparseMatrix> {
        for row in &self.relations.rows {
            let mut im = SparseVec::new();
            for (&i, a) in row {
                axpy(&mut im, a, &image(i));
            }
            if !target.relations.contains(&im) {
                return None;
            }
        }
        Some(SparseMatrix {
            nrows: target.dim(),
            cols: self
                .basis
                .iter()
                .map(|&i| target.project(&image(i)))
                .collect(),
        })
    }
}
