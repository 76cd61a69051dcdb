//! Zero patterns of nonnegative integer matrices under boolean arithmetic.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolPattern {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl BoolPattern {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BoolPattern {
            rows,
            cols,
            bits: vec![false; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut p = BoolPattern::zeros(n, n);
        for i in 0..n {
            p.set(i, i, true);
        }
        p
    }

    /// Support of an integer matrix given as rows.
    pub fn of_matrix(m: &[Vec<u64>]) -> Self {
        let rows = m.len();
        let cols = m.first().map_or(0, |r| r.len());
        let mut p = BoolPattern::zeros(rows, cols);
        for (i, row) in m.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                p.set(i, j, x != 0);
            }
        }
        p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.bits[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[bool] {
        &self.bits[i * self.cols..(i + 1) * self.cols]
    }

    /// Product over the boolean semiring (or = +, and = ×).
    pub fn mul(&self, other: &BoolPattern) -> BoolPattern {
        assert_eq!(self.cols, other.rows, "pattern shapes do not compose");
        let mut out = BoolPattern::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    for j in 0..other.cols {
                        if other.get(k, j) {
                            out.set(i, j, true);
                        }
                    }
                }
            }
        }
        out
    }

    /// Row vector times pattern.
    pub fn vec_mul(v: &[bool], m: &BoolPattern) -> Vec<bool> {
        assert_eq!(v.len(), m.rows);
        let mut out = vec![false; m.cols];
        for (k, &b) in v.iter().enumerate() {
            if b {
                for (o, &x) in out.iter_mut().zip(m.row(k)) {
                    *o |= x;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> BoolPattern {
        let mut out = BoolPattern::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == (i == j)))
    }

    pub fn has_positive_diagonal(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| self.get(i, i))
    }

    /// Entrywise implication: every true entry of `self` is true in `other`.
    pub fn le(&self, other: &BoolPattern) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    /// Permutes rows and columns: out[i][j] = self[row_perm[i]][col_perm[j]].
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> BoolPattern {
        let mut out = BoolPattern::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(row_perm[i], col_perm[j]));
            }
        }
        out
    }
}

impl fmt::Debug for BoolPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: String = self
                .row(i)
                .iter()
                .map(|&b| if b { '1' } else { '.' })
                .collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int_mul(a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let n = b.first().map_or(0, |r| r.len());
        a.iter()
            .map(|row| {
                (0..n)
                    .map(|j| row.iter().zip(b).map(|(&x, brow)| x * brow[j]).sum())
                    .collect()
            })
            .collect()
    }

    fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<u64>>> {
        proptest::collection::vec(proptest::collection::vec(0u64..3, cols), rows)
    }

    proptest! {
        #[test]
        fn boolean_product_is_pattern_of_integer_product(
            (a, b) in (1usize..6, 1usize..6, 1usize..6)
                .prop_flat_map(|(r, k, c)| (matrix(r, k), matrix(k, c)))
        ) {
            let lhs = BoolPattern::of_matrix(&a).mul(&BoolPattern::of_matrix(&b));
            prop_assert_eq!(lhs, BoolPattern::of_matrix(&int_mul(&a, &b)));
        }
    }

    #[test]
    fn identity_and_transpose() {
        let m = BoolPattern::of_matrix(&[vec![1, 0, 2], vec![0, 1, 0]]);
        assert_eq!(m.transpose().transpose(), m);
        assert!(BoolPattern::identity(3).is_identity());
        assert!(!m.is_identity());
    }
}
