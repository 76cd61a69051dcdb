//! Exact character theory through a prime field: character tables, inner
//! products, induction, restriction, tensor products and constituent sets.

mod dixon;

use std::fmt::Write as _;

pub use dixon::class_structure_constants;

use crate::error::{Error, Result};
use crate::modp::{select_prime, PrimeField, PRIME_CEILING};
use crate::permgroup::{PermGroup, SubgroupEmbedding};

/// Values of a class function, one per conjugacy class.
///
/// Permutation-derived characters stay exact integers; characters from a
/// table are residues modulo the table's prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassFunction {
    Integer(Vec<i128>),
    Modular { prime: u64, values: Vec<u64> },
}

impl ClassFunction {
    pub fn len(&self) -> usize {
        match self {
            ClassFunction::Integer(v) => v.len(),
            ClassFunction::Modular { values, .. } => values.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn trivial(classes: usize) -> Self {
        ClassFunction::Integer(vec![1; classes])
    }

    pub fn as_integers(&self) -> Option<&[i128]> {
        match self {
            ClassFunction::Integer(v) => Some(v),
            ClassFunction::Modular { .. } => None,
        }
    }

    /// Residues modulo `prime`.
    pub fn residues(&self, prime: u64) -> Result<Vec<u64>> {
        match self {
            ClassFunction::Integer(v) => {
                let f = PrimeField::new(prime);
                Ok(v.iter().map(|&x| f.from_i128(x)).collect())
            }
            ClassFunction::Modular { prime: p, values } if *p == prime => Ok(values.clone()),
            ClassFunction::Modular { prime: p, .. } => Err(Error::integrity(format!(
                "class function reduced mod {p} used with prime {prime}"
            ))),
        }
    }

    /// Integer degree χ(1), when it can be read off exactly.
    pub fn degree(&self) -> Option<u128> {
        match self {
            ClassFunction::Integer(v) => v.first().and_then(|&x| u128::try_from(x).ok()),
            ClassFunction::Modular { values, .. } => values.first().map(|&x| x as u128),
        }
    }

    /// Kernel {classes c : χ(c) = χ(1)}; exact integers only.
    pub fn kernel_classes(&self) -> Result<Vec<usize>> {
        let v = self
            .as_integers()
            .ok_or_else(|| Error::precondition("kernel tests need exact integer values"))?;
        Ok((0..v.len()).filter(|&c| v[c] == v[0]).collect())
    }

    pub fn power(&self, n: u32) -> Result<ClassFunction> {
        let mut acc = ClassFunction::trivial(self.len());
        for _ in 0..n {
            acc = tensor(&acc, self)?;
        }
        Ok(acc)
    }
}

/// Pointwise product.
pub fn tensor(a: &ClassFunction, b: &ClassFunction) -> Result<ClassFunction> {
    if a.len() != b.len() {
        return Err(Error::precondition("class functions on different groups"));
    }
    match (a, b) {
        (ClassFunction::Integer(x), ClassFunction::Integer(y)) => x
            .iter()
            .zip(y)
            .map(|(&p, &q)| p.checked_mul(q))
            .collect::<Option<Vec<_>>>()
            .map(ClassFunction::Integer)
            .ok_or_else(|| Error::resource("integer character value overflow")),
        (ClassFunction::Modular { prime, .. }, _) | (_, ClassFunction::Modular { prime, .. }) => {
            let f = PrimeField::new(*prime);
            let x = a.residues(*prime)?;
            let y = b.residues(*prime)?;
            Ok(ClassFunction::Modular {
                prime: *prime,
                values: x.iter().zip(&y).map(|(&p, &q)| f.mul(p, q)).collect(),
            })
        }
    }
}

/// Restriction along the class fusion of an embedding.
pub fn restrict(chi: &ClassFunction, emb: &SubgroupEmbedding) -> ClassFunction {
    let fusion = emb.fusion();
    match chi {
        ClassFunction::Integer(v) => ClassFunction::Integer(fusion.iter().map(|&c| v[c]).collect()),
        ClassFunction::Modular { prime, values } => ClassFunction::Modular {
            prime: *prime,
            values: fusion.iter().map(|&c| values[c]).collect(),
        },
    }
}

/// Induced class function:
/// (Ind χ)(g_c) = |C_G(g_c)| / |U| · Σ_{U-classes d ⊆ c} |d| χ(d).
pub fn induce(chi: &ClassFunction, emb: &SubgroupEmbedding) -> Result<ClassFunction> {
    let g = emb.parent();
    let u = emb.subgroup();
    if chi.len() != u.num_classes() {
        return Err(Error::precondition("class function is not on the subgroup"));
    }
    let fusion = emb.fusion();
    let sub_order = u.order() as i128;
    match chi {
        ClassFunction::Integer(v) => {
            let mut sums = vec![0i128; g.num_classes()];
            for (d, cls) in u.classes().iter().enumerate() {
                sums[fusion[d]] += cls.size as i128 * v[d];
            }
            let values = sums
                .iter()
                .enumerate()
                .map(|(c, &s)| {
                    let num = g.centralizer_order(c) as i128 * s;
                    debug_assert_eq!(num % sub_order, 0);
                    num / sub_order
                })
                .collect();
            Ok(ClassFunction::Integer(values))
        }
        ClassFunction::Modular { prime, values: v } => {
            let f = PrimeField::new(*prime);
            let mut sums = vec![0u64; g.num_classes()];
            for (d, cls) in u.classes().iter().enumerate() {
                sums[fusion[d]] = f.add(sums[fusion[d]], f.mul(f.from_u64(cls.size as u64), v[d]));
            }
            let inv_u = f.inv(f.from_u64(u.order() as u64));
            let values = sums
                .iter()
                .enumerate()
                .map(|(c, &s)| f.mul(f.mul(f.from_u64(g.centralizer_order(c) as u64), s), inv_u))
                .collect();
            Ok(ClassFunction::Modular {
                prime: *prime,
                values,
            })
        }
    }
}

/// Multiplicities of the irreducibles in a character, in table order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiplicityVector {
    pub coefficients: Vec<u64>,
}

impl MultiplicityVector {
    /// Indices with nonzero multiplicity.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coefficients.len())
            .filter(|&i| self.coefficients[i] != 0)
            .collect()
    }

    pub fn support_mask(&self) -> Vec<bool> {
        self.coefficients.iter().map(|&m| m != 0).collect()
    }
}

/// Class sizes, inverse-class map and order: everything an inner product
/// needs to know about the group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassGeometry {
    pub order: u64,
    pub sizes: Vec<u64>,
    pub inverse: Vec<usize>,
}

impl ClassGeometry {
    pub fn of(g: &PermGroup) -> Self {
        ClassGeometry {
            order: g.order() as u64,
            sizes: g.class_sizes(),
            inverse: (0..g.num_classes()).map(|c| g.inverse_class(c)).collect(),
        }
    }
}

/// Irreducible characters of a group as residues modulo `prime`.
///
/// Rows are sorted by degree, then lexicographically by residue vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    geometry: ClassGeometry,
    prime: u64,
    degrees: Vec<u64>,
    irreducibles: Vec<Vec<u64>>,
}

/// Smallest admissible prime for a group on its own: p = 1 mod exponent,
/// p > 2|G|.
pub fn prime_for_group(g: &PermGroup) -> Result<u64> {
    select_prime(g.exponent(), 2 * g.order() as u64)
}

/// Prime for a subgroup pair: p = 1 mod exp(G), p > max(2|G|, index^(r+1))
/// with r the number of irreducibles of G. The power is capped at 2^61.
pub fn prime_for_pair(emb: &SubgroupEmbedding) -> Result<u64> {
    let g = emb.parent();
    let index = emb.index() as u64;
    let r = g.num_classes() as u32;
    let cap = PRIME_CEILING / 2;
    let power = (index.max(1) as u128)
        .checked_pow(r + 1)
        .map(|v| v.min(cap as u128) as u64)
        .unwrap_or(cap);
    let bound = (2 * g.order() as u64).max(if index > 1 { power } else { 0 });
    select_prime(g.exponent(), bound)
}

/// Character table with the group's own prime.
pub fn character_table(g: &PermGroup) -> Result<CharacterTable> {
    CharacterTable::new(g, prime_for_group(g)?)
}

impl CharacterTable {
    pub fn new(g: &PermGroup, prime: u64) -> Result<Self> {
        if (prime - 1) % g.exponent() != 0 {
            return Err(Error::precondition(format!(
                "prime {prime} is not 1 mod the exponent {}",
                g.exponent()
            )));
        }
        if prime <= 2 * g.order() as u64 {
            return Err(Error::precondition(
                "prime must exceed twice the group order",
            ));
        }
        let f = PrimeField::new(prime);
        let mut rows = dixon::irreducible_characters(g, &f)?;
        rows.sort();
        let table = CharacterTable {
            geometry: ClassGeometry::of(g),
            prime,
            degrees: rows.iter().map(|r| r.0).collect(),
            irreducibles: rows.into_iter().map(|r| r.1).collect(),
        };
        table.verify()?;
        Ok(table)
    }

    /// Row orthogonality, column orthogonality and the degree identities.
    pub fn verify(&self) -> Result<()> {
        let r = self.irreducibles.len();
        if r != self.geometry.sizes.len() {
            return Err(Error::integrity("table is not square"));
        }
        let sum_sq: u64 = self.degrees.iter().map(|d| d * d).sum();
        if sum_sq != self.geometry.order {
            return Err(Error::integrity(
                "sum of squared degrees differs from the group order",
            ));
        }
        if self.degrees.iter().any(|d| self.geometry.order % d != 0) {
            return Err(Error::integrity("a degree does not divide the group order"));
        }
        let f = self.field();
        for i in 0..r {
            for j in 0..r {
                let ip = self.raw_inner(&self.irreducibles[i], &self.irreducibles[j]);
                if ip != u64::from(i == j) {
                    return Err(Error::integrity(format!(
                        "rows {i} and {j} are not orthonormal"
                    )));
                }
            }
        }
        // Σ_i χ_i(a) conj χ_i(b) = δ_ab |C_G(a)|
        for a in 0..r {
            for b in 0..r {
                let bb = self.geometry.inverse[b];
                let s = (0..r).fold(0, |acc, i| {
                    f.add(
                        acc,
                        f.mul(self.irreducibles[i][a], self.irreducibles[i][bb]),
                    )
                });
                let expected = if a == b {
                    f.from_u64(self.geometry.order / self.geometry.sizes[a])
                } else {
                    0
                };
                if s != expected {
                    return Err(Error::integrity(format!(
                        "columns {a} and {b} fail orthogonality"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.prime)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn geometry(&self) -> &ClassGeometry {
        &self.geometry
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn irreducible(&self, i: usize) -> ClassFunction {
        ClassFunction::Modular {
            prime: self.prime,
            values: self.irreducibles[i].clone(),
        }
    }

    pub fn irreducibles(&self) -> impl Iterator<Item = ClassFunction> + '_ {
        (0..self.len()).map(|i| self.irreducible(i))
    }

    /// Row index of the trivial character (always 0 under the ordering).
    pub fn trivial_index(&self) -> usize {
        self.irreducibles
            .iter()
            .position(|row| row.iter().all(|&x| x == 1))
            .expect("trivial character present")
    }

    fn raw_inner(&self, a: &[u64], b: &[u64]) -> u64 {
        let f = self.field();
        let mut s = 0;
        for c in 0..a.len() {
            let term = f.mul(
                f.from_u64(self.geometry.sizes[c]),
                f.mul(a[c], b[self.geometry.inverse[c]]),
            );
            s = f.add(s, term);
        }
        f.mul(s, f.inv(f.from_u64(self.geometry.order)))
    }

    /// ⟨a, b⟩ lifted to a nonnegative integer.
    ///
    /// Both arguments should be genuine characters; the lift is checked
    /// against a(1)·b(1), which bounds the inner product of characters.
    pub fn inner_product(&self, a: &ClassFunction, b: &ClassFunction) -> Result<u64> {
        let x = a.residues(self.prime)?;
        let y = b.residues(self.prime)?;
        if x.len() != self.len() || y.len() != self.len() {
            return Err(Error::precondition(
                "class function length differs from the class count",
            ));
        }
        let v = self.raw_inner(&x, &y);
        let bound = match (a.degree(), b.degree()) {
            (Some(da), Some(db)) => da.saturating_mul(db),
            _ => self.prime as u128,
        };
        if v as u128 > bound {
            return Err(Error::integrity(format!(
                "inner product lift {v} exceeds the bound {bound} (prime {} too small)",
                self.prime
            )));
        }
        Ok(v)
    }

    /// Multiplicities of every irreducible in a genuine character.
    pub fn decompose(&self, chi: &ClassFunction) -> Result<MultiplicityVector> {
        if let ClassFunction::Integer(v) = chi {
            if v.first()
                .map_or(true, |&d| d < 0 || d as u128 >= self.prime as u128)
            {
                return Err(Error::resource(format!(
                    "character degree {:?} is not below the prime {}",
                    v.first(),
                    self.prime
                )));
            }
        }
        let coefficients = self
            .irreducibles()
            .map(|irr| self.inner_product(chi, &irr))
            .collect::<Result<Vec<_>>>()?;
        let f = self.field();
        let target = chi.residues(self.prime)?;
        for c in 0..self.len() {
            let s = (0..self.len()).fold(0, |acc, i| {
                f.add(
                    acc,
                    f.mul(f.from_u64(coefficients[i]), self.irreducibles[i][c]),
                )
            });
            if s != target[c] {
                return Err(Error::integrity(
                    "decomposition does not reconstruct the character",
                ));
            }
        }
        Ok(MultiplicityVector { coefficients })
    }

    /// Σ m_i χ_i.
    pub fn compose(&self, m: &MultiplicityVector) -> ClassFunction {
        let f = self.field();
        let values = (0..self.len())
            .map(|c| {
                (0..self.len()).fold(0, |acc, i| {
                    f.add(
                        acc,
                        f.mul(f.from_u64(m.coefficients[i]), self.irreducibles[i][c]),
                    )
                })
            })
            .collect();
        ClassFunction::Modular {
            prime: self.prime,
            values,
        }
    }

    /// Constituent set of χ_i ⊗ χ_j. Multiplicities are at most
    /// χ_i(1)χ_j(1) ≤ |G| < p, so the lift is exact.
    pub fn product_support(&self, i: usize, j: usize) -> Vec<bool> {
        let f = self.field();
        let prod: Vec<u64> = self.irreducibles[i]
            .iter()
            .zip(&self.irreducibles[j])
            .map(|(&a, &b)| f.mul(a, b))
            .collect();
        (0..self.len())
            .map(|k| self.raw_inner(&prod, &self.irreducibles[k]) != 0)
            .collect()
    }

    /// Tab-separated dump: a header with the prime, then one line per
    /// irreducible with its degree followed by its residues.
    pub fn dump(&self) -> String {
        let mut out = format!("# prime\t{}\n", self.prime);
        for (d, row) in self.degrees.iter().zip(&self.irreducibles) {
            let _ = write!(out, "{d}");
            for v in row {
                let _ = write!(out, "\t{v}");
            }
            out.push('\n');
        }
        out
    }
}

/// Successive constituent sets of χ^0, χ^1, ... computed by propagating
/// supports through the irreducible tensor products. Needs only
/// Const(χ), so it stays exact for any prime above 2|G|.
pub struct PowerSupports<'a> {
    table: &'a CharacterTable,
    base: Vec<usize>,
    products: Vec<Option<Vec<bool>>>,
}

impl<'a> PowerSupports<'a> {
    pub fn new(table: &'a CharacterTable, base_support: &[bool]) -> Self {
        let r = table.len();
        PowerSupports {
            table,
            base: (0..r).filter(|&i| base_support[i]).collect(),
            products: vec![None; r * r],
        }
    }

    /// Const(χ^{n+1}) from Const(χ^n).
    pub fn step(&mut self, current: &[bool]) -> Vec<bool> {
        let r = self.table.len();
        let mut next = vec![false; r];
        for i in (0..r).filter(|&i| current[i]) {
            for &j in &self.base {
                let key = i * r + j;
                if self.products[key].is_none() {
                    self.products[key] = Some(self.table.product_support(i, j));
                }
                for (n, &b) in next.iter_mut().zip(self.products[key].as_ref().unwrap()) {
                    *n |= b;
                }
            }
        }
        next
    }

    /// Constituent sets of χ^0 .. χ^max.
    pub fn chain(&mut self, max: usize) -> Vec<Vec<bool>> {
        let r = self.table.len();
        let mut cur = vec![false; r];
        cur[self.table.trivial_index()] = true;
        let mut out = vec![cur.clone()];
        for _ in 0..max {
            cur = self.step(&cur);
            out.push(cur.clone());
        }
        out
    }
}

/// Constituent set of a genuine character.
pub fn constituents(table: &CharacterTable, chi: &ClassFunction) -> Result<Vec<bool>> {
    Ok(table.decompose(chi)?.support_mask())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::{
        adjoint_character, build_group, coset_permutation_character, parse_group_spec,
    };
    use std::sync::Arc;

    fn lifted(table: &CharacterTable) -> Vec<Vec<i128>> {
        let f = table.field();
        table
            .irreducibles()
            .map(|c| {
                c.residues(table.prime())
                    .unwrap()
                    .iter()
                    .map(|&x| f.lift_signed(x))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn cyclic2_table() {
        let g = build_group("C2", 100).unwrap();
        let t = character_table(&g).unwrap();
        assert_eq!(lifted(&t), vec![vec![1, 1], vec![1, -1]]);
    }

    #[test]
    fn sym3_table() {
        let g = build_group("S3", 100).unwrap();
        let t = character_table(&g).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 2]);
        assert_eq!(
            lifted(&t),
            vec![vec![1, 1, 1], vec![1, -1, 1], vec![2, 0, -1]]
        );
    }

    #[test]
    fn sym4_table() {
        let g = build_group("S4", 100).unwrap();
        let t = character_table(&g).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 2, 3, 3]);
        assert_eq!(
            lifted(&t),
            vec![
                vec![1, 1, 1, 1, 1],
                vec![1, -1, 1, 1, -1],
                vec![2, 0, -1, 2, 0],
                vec![3, 1, 0, -1, -1],
                vec![3, -1, 0, -1, 1],
            ]
        );
    }

    #[test]
    fn tables_of_assorted_groups_verify() {
        for spec in [
            "C1", "C12", "D8", "A4", "A5", "C11:C5@3", "S5", "D10", "C7:C3@2",
        ] {
            let g = build_group(spec, 1000).unwrap();
            let t = character_table(&g).unwrap();
            assert_eq!(t.len(), g.num_classes(), "{spec}");
            assert_eq!(t.trivial_index(), 0);
        }
    }

    #[test]
    fn inner_products() {
        let g = build_group("S3", 100).unwrap();
        let t = character_table(&g).unwrap();
        let one = ClassFunction::trivial(3);
        assert_eq!(t.inner_product(&one, &one).unwrap(), 1);
        let ad = adjoint_character(&g);
        let std = ClassFunction::Integer(vec![2, 0, -1]);
        assert_eq!(t.inner_product(&ad, &std).unwrap(), 1);
        assert_eq!(t.decompose(&ad).unwrap().coefficients, vec![3, 1, 1]);
    }

    #[test]
    fn regular_character_decomposes_into_degrees() {
        let g = build_group("S4", 100).unwrap();
        let t = character_table(&g).unwrap();
        let mut reg = vec![0i128; g.num_classes()];
        reg[0] = 24;
        let m = t.decompose(&ClassFunction::Integer(reg)).unwrap();
        assert_eq!(m.coefficients, vec![1, 1, 2, 3, 3]);
    }

    #[test]
    fn restrict_and_induce_sym3_in_sym4() {
        let g = Arc::new(build_group("S4", 100).unwrap());
        let e = SubgroupEmbedding::from_spec(g.clone(), &parse_group_spec("S3").unwrap()).unwrap();
        let std4 = ClassFunction::Integer(vec![3, 1, 0, -1, -1]);
        let res = restrict(&std4, &e);
        assert_eq!(res, ClassFunction::Integer(vec![3, 1, 0]));
        let tu = CharacterTable::new(e.subgroup(), prime_for_pair(&e).unwrap()).unwrap();
        assert_eq!(tu.decompose(&res).unwrap().coefficients, vec![1, 0, 1]);
        let ind = induce(&ClassFunction::trivial(3), &e).unwrap();
        assert_eq!(ind, ClassFunction::Integer(vec![4, 2, 1, 0, 0]));
        assert_eq!(ind, coset_permutation_character(&e));
        let tg = CharacterTable::new(&g, tu.prime()).unwrap();
        assert_eq!(
            tg.decompose(&ind).unwrap().coefficients,
            vec![1, 0, 0, 1, 0]
        );
    }

    #[test]
    fn frobenius_reciprocity_on_table_rows() {
        for (p, s) in [("S4", "S3"), ("A5", "A4"), ("C11:C5@3", "C5"), ("S4", "D8")] {
            let g = Arc::new(build_group(p, 1000).unwrap());
            let e = SubgroupEmbedding::from_spec(g.clone(), &parse_group_spec(s).unwrap()).unwrap();
            let prime = prime_for_pair(&e).unwrap();
            let tg = CharacterTable::new(&g, prime).unwrap();
            let tu = CharacterTable::new(e.subgroup(), prime).unwrap();
            for chi in tu.irreducibles() {
                let ind = induce(&chi, &e).unwrap();
                for psi in tg.irreducibles() {
                    assert_eq!(
                        tg.inner_product(&ind, &psi).unwrap(),
                        tu.inner_product(&chi, &restrict(&psi, &e)).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn tensor_of_coset_character() {
        let g = Arc::new(build_group("S4", 100).unwrap());
        let e = SubgroupEmbedding::from_spec(g, &parse_group_spec("S3").unwrap()).unwrap();
        let q = coset_permutation_character(&e);
        assert_eq!(
            tensor(&q, &q).unwrap(),
            ClassFunction::Integer(vec![16, 4, 1, 0, 0])
        );
        assert_eq!(tensor(&ClassFunction::trivial(5), &q).unwrap(), q);
    }

    #[test]
    fn power_supports_match_direct_decomposition() {
        let g = build_group("S4", 100).unwrap();
        let t = CharacterTable::new(&g, select_prime(g.exponent(), 1000).unwrap()).unwrap();
        let q = ClassFunction::Integer(vec![4, 2, 1, 0, 0]);
        let base = constituents(&t, &q).unwrap();
        let chain = PowerSupports::new(&t, &base).chain(3);
        for (n, s) in chain.iter().enumerate() {
            assert_eq!(*s, constituents(&t, &q.power(n as u32).unwrap()).unwrap());
        }
    }

    #[test]
    fn lift_bound_is_checked() {
        let g = build_group("S3", 100).unwrap();
        let t = character_table(&g).unwrap();
        // Not a character: the "inner product" with the trivial one is 1/2 mod p.
        let bogus = ClassFunction::Integer(vec![1, 0, 0]);
        assert!(matches!(
            t.inner_product(&bogus, &ClassFunction::trivial(3)),
            Err(Error::Integrity(_))
        ));
    }

    #[test]
    fn table_dump_format() {
        let g = build_group("C2", 100).unwrap();
        let t = character_table(&g).unwrap();
        let p = t.prime();
        assert_eq!(
            t.dump(),
            format!("# prime\t{p}\n1\t1\t1\n1\t1\t{}\n", p - 1)
        );
    }
}
