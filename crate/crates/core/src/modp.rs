//! Arithmetic in the prime field F_p: scalars, prime selection, dense
//! linear algebra and root finding for split polynomials.
//!
//! Character values live in Z[zeta_e]; for a prime p = 1 (mod e) the ring
//! maps onto F_p and every character value has an image there. Integers of
//! absolute value below p/2 are recovered exactly from their residues.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Largest modulus we are willing to use; products are formed in `u128`.
pub const PRIME_CEILING: u64 = 1 << 62;

/// A residue paired with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModularScalar {
    pub residue: u64,
    pub prime: u64,
}

impl ModularScalar {
    pub fn new(value: i128, prime: u64) -> Self {
        ModularScalar {
            residue: PrimeField::new(prime).from_i128(value),
            prime,
        }
    }

    /// Symmetric lift into (-p/2, p/2].
    pub fn lift_signed(&self) -> i128 {
        PrimeField::new(self.prime).lift_signed(self.residue)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        debug_assert!(p >= 2);
        PrimeField { p }
    }

    #[inline]
    pub fn prime(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a as u128 + b as u128;
        (s % self.p as u128) as u64
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u128) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero residue (Fermat).
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, (self.p - 2) as u128)
    }

    pub fn from_i128(&self, v: i128) -> u64 {
        v.rem_euclid(self.p as i128) as u64
    }

    pub fn from_u64(&self, v: u64) -> u64 {
        v % self.p
    }

    pub fn lift_signed(&self, r: u64) -> i128 {
        if r > self.p / 2 {
            r as i128 - self.p as i128
        } else {
            r as i128
        }
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let f = PrimeField::new(n);
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = f.pow(a, d as u128);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = f.mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime p with p = 1 (mod `modulus`) and p > `bound`.
pub fn select_prime(modulus: u64, bound: u64) -> Result<u64> {
    let modulus = modulus.max(1);
    let mut k = bound / modulus;
    loop {
        let candidate = k
            .checked_mul(modulus)
            .and_then(|v| v.checked_add(1))
            .filter(|&v| v < PRIME_CEILING)
            .ok_or_else(|| {
                Error::resource(format!(
                    "no prime = 1 mod {modulus} above {bound} below 2^62"
                ))
            })?;
        if candidate > bound && candidate > 2 && is_prime(candidate) {
            return Ok(candidate);
        }
        k += 1;
    }
}

/// Dense matrix over F_p, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ModMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, f: &PrimeField, v: &[u64]) -> Vec<u64> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(f: &PrimeField, m: &mut ModMatrix) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
            continue;
        };
        if pr != r {
            for j in 0..m.cols {
                m.data.swap(pr * m.cols + j, r * m.cols + j);
            }
        }
        let inv = f.inv(m.get(r, c));
        for j in 0..m.cols {
            let v = f.mul(m.get(r, j), inv);
            m.set(r, j, v);
        }
        for i in 0..m.rows {
            if i != r {
                let factor = m.get(i, c);
                if factor != 0 {
                    for j in 0..m.cols {
                        let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                        m.set(i, j, v);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right null space {x : m x = 0}.
pub fn kernel(f: &PrimeField, m: &ModMatrix) -> Vec<Vec<u64>> {
    let mut a = m.clone();
    let pivots = rref(f, &mut a);
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0; a.cols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(a.get(r, fc));
            }
            v
        })
        .collect()
}

/// Characteristic polynomial det(xI - m), coefficients low degree first.
/// Hessenberg reduction followed by the standard recurrence.
pub fn charpoly(f: &PrimeField, m: &ModMatrix) -> Vec<u64> {
    let n = m.rows;
    assert_eq!(n, m.cols);
    let mut h = m.clone();
    for col in 0..n.saturating_sub(2) {
        let Some(piv) = (col + 1..n).find(|&i| h.get(i, col) != 0) else {
            continue;
        };
        if piv != col + 1 {
            let r = col + 1;
            for j in 0..n {
                h.data.swap(piv * n + j, r * n + j);
            }
            for i in 0..n {
                h.data.swap(i * n + piv, i * n + r);
            }
        }
        let inv = f.inv(h.get(col + 1, col));
        for i in col + 2..n {
            let u = f.mul(h.get(i, col), inv);
            if u == 0 {
                continue;
            }
            for j in 0..n {
                let v = f.sub(h.get(i, j), f.mul(u, h.get(col + 1, j)));
                h.set(i, j, v);
            }
            for j in 0..n {
                let v = f.add(h.get(j, col + 1), f.mul(u, h.get(j, i)));
                h.set(j, col + 1, v);
            }
        }
    }
    // p_k = characteristic polynomial of the leading k x k block.
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        let mut pk = poly_mul(f, &[f.neg(h.get(k - 1, k - 1)), 1], &polys[k - 1]);
        let mut t = 1u64;
        for i in 1..k {
            t = f.mul(t, h.get(k - i, k - i - 1));
            let coeff = f.mul(t, h.get(k - i - 1, k - 1));
            let term = poly_scale(f, &polys[k - i - 1], coeff);
            pk = poly_sub(f, &pk, &term);
        }
        polys.push(pk);
    }
    polys.pop().unwrap()
}

fn poly_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

fn poly_mul(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    poly_trim(out)
}

fn poly_scale(f: &PrimeField, a: &[u64], c: u64) -> Vec<u64> {
    poly_trim(a.iter().map(|&x| f.mul(x, c)).collect())
}

fn poly_sub(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| f.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    poly_trim(out)
}

fn poly_divrem(f: &PrimeField, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let b = poly_trim(b.to_vec());
    let db = b.len() - 1;
    let lead_inv = f.inv(b[db]);
    let mut r = poly_trim(a.to_vec());
    if r.len() <= db {
        return (vec![0], r);
    }
    let mut q = vec![0; r.len() - db];
    while r.len() > db && !poly_is_zero(&r) {
        let dr = r.len() - 1;
        let c = f.mul(r[dr], lead_inv);
        q[dr - db] = c;
        for i in 0..=db {
            let idx = dr - db + i;
            r[idx] = f.sub(r[idx], f.mul(c, b[i]));
        }
        r.pop();
        if r.is_empty() {
            r.push(0);
        }
        r = poly_trim(r);
    }
    (poly_trim(q), r)
}

fn poly_rem(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    poly_divrem(f, a, b).1
}

fn poly_is_zero(a: &[u64]) -> bool {
    a.iter().all(|&x| x == 0)
}

fn poly_monic(f: &PrimeField, a: &[u64]) -> Vec<u64> {
    let a = poly_trim(a.to_vec());
    let inv = f.inv(*a.last().unwrap());
    poly_scale(f, &a, inv)
}

fn poly_gcd(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut x = poly_trim(a.to_vec());
    let mut y = poly_trim(b.to_vec());
    while !poly_is_zero(&y) {
        let r = poly_rem(f, &x, &y);
        x = y;
        y = r;
    }
    poly_monic(f, &x)
}

fn poly_powmod(f: &PrimeField, base: &[u64], mut exp: u128, modulus: &[u64]) -> Vec<u64> {
    let mut acc = vec![1];
    let mut b = poly_rem(f, base, modulus);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_rem(f, &poly_mul(f, &acc, &b), modulus);
        }
        b = poly_rem(f, &poly_mul(f, &b, &b), modulus);
        exp >>= 1;
    }
    acc
}

/// Distinct roots in F_p of a polynomial (low degree first), sorted.
/// Uses gcd with x^p - x followed by Cantor-Zassenhaus splitting with a
/// fixed-seed generator, so results are deterministic.
pub fn distinct_roots(f: &PrimeField, poly: &[u64]) -> Vec<u64> {
    let p = f.prime();
    let poly = poly_monic(f, poly);
    if poly.len() == 1 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    if poly[0] == 0 {
        roots.push(0);
    }
    // Split off the product of linear factors x - a, a != 0.
    let xp = poly_powmod(f, &[0, 1], (p - 1) as u128, &poly);
    let g = poly_gcd(f, &poly, &poly_sub(f, &xp, &[1]));
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    let mut stack = vec![g];
    while let Some(h) = stack.pop() {
        match h.len() {
            0 | 1 => continue,
            2 => {
                roots.push(f.neg(h[0]));
                continue;
            }
            _ => {}
        }
        loop {
            let a = rng.gen_range(0..p);
            let w = poly_powmod(f, &[a, 1], ((p - 1) / 2) as u128, &h);
            let d = poly_gcd(f, &h, &poly_sub(f, &w, &[1]));
            if d.len() > 1 && d.len() < h.len() {
                let other = poly_div_exact(f, &h, &d);
                stack.push(d);
                stack.push(other);
                break;
            }
        }
    }
    roots.sort_unstable();
    roots.dedup();
    roots
}

fn poly_div_exact(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    poly_divrem(f, a, b).0
}
