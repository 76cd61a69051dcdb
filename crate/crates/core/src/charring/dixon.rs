//! Burnside-Dixon character table computation over F_p.
//!
//! The class sums C_j span the centre of the group algebra, with
//! C_j C_k = Σ_l a_{jkl} C_l. Every irreducible χ gives a simultaneous
//! eigenvector ω_l = |C_l| χ(g_l) / χ(1) of the matrices (A_j)_{kl} = a_{jkl}
//! with eigenvalue ω_j. Splitting F_p^r into joint eigenlines recovers the
//! ω vectors; degrees follow from the first orthogonality relation.

use crate::error::{Error, Result};
use crate::modp::{charpoly, distinct_roots, kernel, rref, ModMatrix, PrimeField};
use crate::permgroup::PermGroup;

/// a[j][k][l] = #{x in C_j : x^-1 z_l in C_k} for the representative z_l.
pub fn class_structure_constants(g: &PermGroup) -> Vec<Vec<Vec<u64>>> {
    let r = g.num_classes();
    let mut a = vec![vec![vec![0u64; r]; r]; r];
    for (l, cl) in g.classes().iter().enumerate() {
        let z = cl.representative;
        for (j, cj) in g.classes().iter().enumerate() {
            for &x in &cj.member_indices {
                let y = g.mul(g.inv(x), z);
                a[j][g.class_of(y)][l] += 1;
            }
        }
    }
    a
}

/// A subspace of F_p^r held as RREF rows.
struct Subspace {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    fn from_vectors(f: &PrimeField, vecs: Vec<Vec<u64>>, dim: usize) -> Subspace {
        let mut m = ModMatrix::zeros(vecs.len(), dim);
        for (i, v) in vecs.iter().enumerate() {
            m.data[i * dim..(i + 1) * dim].copy_from_slice(v);
        }
        let pivots = rref(f, &mut m);
        let rows = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
        Subspace { rows, pivots }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// Returns (degree, values) per irreducible, unordered.
pub fn irreducible_characters(g: &PermGroup, f: &PrimeField) -> Result<Vec<(u64, Vec<u64>)>> {
    let r = g.num_classes();
    let order = g.order() as u64;
    if order % f.prime() == 0 {
        return Err(Error::integrity("prime divides the group order"));
    }
    let consts = class_structure_constants(g);
    let mats: Vec<ModMatrix> = consts
        .iter()
        .map(|aj| {
            let mut m = ModMatrix::zeros(r, r);
            for k in 0..r {
                for l in 0..r {
                    m.set(k, l, f.from_u64(aj[k][l]));
                }
            }
            m
        })
        .collect();

    let identity: Vec<Vec<u64>> = (0..r)
        .map(|i| {
            let mut v = vec![0; r];
            v[i] = 1;
            v
        })
        .collect();
    let mut pending = vec![Subspace::from_vectors(f, identity, r)];
    let mut lines: Vec<Vec<u64>> = Vec::new();
    while let Some(space) = pending.pop() {
        if space.dim() == 1 {
            lines.push(space.rows[0].clone());
            continue;
        }
        let mut split = false;
        for mat in mats.iter().skip(1) {
            let parts = split_by(f, mat, &space, r);
            if parts.len() > 1 {
                pending.extend(parts);
                split = true;
                break;
            }
        }
        if !split {
            return Err(Error::integrity(format!(
                "class algebra eigenspace of dimension {} did not split mod {}",
                space.dim(),
                f.prime()
            )));
        }
    }
    if lines.len() != r {
        return Err(Error::integrity("wrong number of irreducible characters"));
    }

    let sizes = g.class_sizes();
    let inv_class: Vec<usize> = (0..r).map(|c| g.inverse_class(c)).collect();
    let max_degree = (order as f64).sqrt().floor() as u64 + 1;
    let mut out = Vec::with_capacity(r);
    for line in lines {
        // Normalise so that ω at the identity class is 1.
        let s = f.inv(line[0]);
        let omega: Vec<u64> = line.iter().map(|&x| f.mul(x, s)).collect();
        // χ(1)^2 Σ_j ω_j ω_{j*} / |C_j| = |G|
        let mut denom = 0;
        for j in 0..r {
            let term = f.mul(
                f.mul(omega[j], omega[inv_class[j]]),
                f.inv(f.from_u64(sizes[j])),
            );
            denom = f.add(denom, term);
        }
        let d_sq = f.mul(f.from_u64(order), f.inv(denom));
        let degree = (1..=max_degree)
            .find(|&d| f.mul(d, d) == d_sq && order % d == 0)
            .ok_or_else(|| Error::integrity("no integral degree for an eigenline"))?;
        let values = (0..r)
            .map(|j| {
                f.mul(
                    f.mul(f.from_u64(degree), omega[j]),
                    f.inv(f.from_u64(sizes[j])),
                )
            })
            .collect();
        out.push((degree, values));
    }
    Ok(out)
}

/// Splits an invariant subspace into the eigenspaces of `mat` restricted to it.
fn split_by(f: &PrimeField, mat: &ModMatrix, space: &Subspace, r: usize) -> Vec<Subspace> {
    let k = space.dim();
    // Column i of x holds the coordinates of mat * b_i in the basis b.
    let mut x = ModMatrix::zeros(k, k);
    for (i, b) in space.rows.iter().enumerate() {
        let image = mat.mul_vec(f, b);
        for (row, &pc) in space.pivots.iter().enumerate() {
            x.set(row, i, image[pc]);
        }
    }
    let roots = distinct_roots(f, &charpoly(f, &x));
    if roots.len() <= 1 {
        return vec![];
    }
    roots
        .into_iter()
        .map(|lambda| {
            let mut shifted = x.clone();
            for i in 0..k {
                let v = f.sub(shifted.get(i, i), lambda);
                shifted.set(i, i, v);
            }
            let vecs = kernel(f, &shifted)
                .into_iter()
                .map(|coords| {
                    let mut v = vec![0; r];
                    for (c, b) in coords.iter().zip(&space.rows) {
                        if *c != 0 {
                            for (vi, &bi) in v.iter_mut().zip(b) {
                                *vi = f.add(*vi, f.mul(*c, bi));
                            }
                        }
                    }
                    v
                })
                .collect();
            Subspace::from_vectors(f, vecs, r)
        })
        .collect()
}
