//! Finite permutation groups: enumeration, conjugacy classes, subgroups,
//! cosets, cores and permutation characters.

mod embed;
mod perm;
mod spec;

use std::collections::{HashMap, VecDeque};

pub use embed::{
    action_kernel, action_kernel_indices, adjoint_character, core, core_indices,
    coset_permutation_character, SubgroupEmbedding,
};
pub use perm::Perm;
pub use spec::{parse_group_spec, GroupSpec};

use crate::error::{Error, Result};
use crate::modp::lcm;

/// Default bound on enumerated group orders.
pub const DEFAULT_ORDER_CAP: usize = 10_000;

/// Groups up to this order keep a full multiplication table.
const CAYLEY_TABLE_LIMIT: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjClass {
    /// Least element index in the class.
    pub representative: usize,
    pub size: usize,
    pub member_indices: Vec<usize>,
    pub rep_order: u64,
}

/// A fully enumerated permutation group.
///
/// Element 0 is the identity. Elements are listed breadth-first over the
/// generators, each layer sorted lexicographically by image array. Classes
/// are ordered by the index of their least element.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    lookup: HashMap<Perm, usize>,
    inverses: Vec<usize>,
    cayley: Option<Vec<u32>>,
    classes: Vec<ConjClass>,
    class_of: Vec<usize>,
    inverse_class: Vec<usize>,
    exponent: u64,
}

impl PermGroup {
    /// Enumerates the group generated by `generators` on `degree` points.
    pub fn from_generators(degree: usize, generators: Vec<Perm>, cap: usize) -> Result<Self> {
        let degree = degree.max(1);
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::input(format!(
                    "generator {g} has degree {} but the group acts on {degree} points",
                    g.degree()
                )));
            }
        }
        let identity = Perm::identity(degree);
        let mut elements = vec![identity.clone()];
        let mut lookup = HashMap::new();
        lookup.insert(identity, 0usize);
        let mut layer_start = 0;
        while layer_start < elements.len() {
            let layer_end = elements.len();
            let mut next: Vec<Perm> = Vec::new();
            for i in layer_start..layer_end {
                for s in &generators {
                    let y = elements[i].then(s);
                    if !lookup.contains_key(&y) {
                        next.push(y);
                    }
                }
            }
            next.sort_unstable();
            next.dedup();
            for y in next {
                if elements.len() >= cap {
                    return Err(Error::resource(format!(
                        "group order exceeds the cap of {cap}"
                    )));
                }
                lookup.insert(y.clone(), elements.len());
                elements.push(y);
            }
            layer_start = layer_end;
        }
        let inverses = elements
            .iter()
            .map(|g| lookup[&g.inverse()])
            .collect::<Vec<_>>();
        let n = elements.len();
        let cayley = (n <= CAYLEY_TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(lookup[&a.then(b)] as u32);
                }
            }
            t
        });
        let mut group = PermGroup {
            degree,
            generators,
            elements,
            lookup,
            inverses,
            cayley,
            classes: Vec::new(),
            class_of: Vec::new(),
            inverse_class: Vec::new(),
            exponent: 1,
        };
        group.compute_classes();
        Ok(group)
    }

    /// Builds a group from a parsed spec on at least `min_degree` points.
    pub fn from_spec(spec: &GroupSpec, min_degree: usize, cap: usize) -> Result<Self> {
        let (degree, gens) = spec.realize(min_degree)?;
        PermGroup::from_generators(degree, gens, cap)
    }

    fn compute_classes(&mut self) {
        let n = self.elements.len();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        let gen_idx: Vec<(usize, usize)> = self
            .generators
            .iter()
            .map(|s| {
                let i = self.lookup[s];
                (i, self.inverses[i])
            })
            .collect();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let cid = classes.len();
            let mut members = vec![start];
            class_of[start] = cid;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &(s, s_inv) in &gen_idx {
                    let y = self.mul(self.mul(s_inv, x), s);
                    if class_of[y] == usize::MAX {
                        class_of[y] = cid;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(ConjClass {
                representative: start,
                size: members.len(),
                member_indices: members,
                rep_order: self.elements[start].order(),
            });
        }
        self.inverse_class = classes
            .iter()
            .map(|c| class_of[self.inverses[c.representative]])
            .collect();
        self.exponent = classes.iter().fold(1, |acc, c| lcm(acc, c.rep_order));
        self.classes = classes;
        self.class_of = class_of;
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.lookup.get(p).copied()
    }

    /// Index of the product `a` then `b`.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.cayley {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => self.lookup[&self.elements[a].then(&self.elements[b])],
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `x^-1 g x`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(self.inverses[x], g), x)
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.class_of[element]
    }

    /// Class of the inverses of the elements of class `c`.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse_class[c]
    }

    pub fn class_sizes(&self) -> Vec<u64> {
        self.classes.iter().map(|c| c.size as u64).collect()
    }

    pub fn centralizer_order(&self, c: usize) -> usize {
        self.order() / self.classes[c].size
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() == self.order()
    }

    /// Cycle type of each class representative, for labelling.
    pub fn class_labels(&self) -> Vec<String> {
        self.classes
            .iter()
            .map(|c| cycle_type_label(&self.elements[c.representative].cycle_type()))
            .collect()
    }
}

/// Exponent notation for a cycle type, e.g. `2^2` or `3.1`.
pub fn cycle_type_label(ct: &[usize]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < ct.len() {
        let mut j = i;
        while j < ct.len() && ct[j] == ct[i] {
            j += 1;
        }
        let mult = j - i;
        parts.push(if mult == 1 {
            ct[i].to_string()
        } else {
            format!("{}^{}", ct[i], mult)
        });
        i = j;
    }
    parts.join(".")
}

/// Convenience: build from a textual group spec.
pub fn build_group(text: &str, cap: usize) -> Result<PermGroup> {
    let spec = parse_group_spec(text)?;
    PermGroup::from_spec(&spec, 1, cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cayley_table_matches_composition() {
        let g = build_group("S4", 100).unwrap();
        assert!(g.cayley.is_some());
        for a in 0..g.order() {
            for b in 0..g.order() {
                let direct = g.element(a).then(g.element(b));
                assert_eq!(g.index_of(&direct), Some(g.mul(a, b)));
            }
        }
    }

    /// Conjugation orbits of an explicit element list, computed by brute
    /// force over all conjugators.
    fn brute_classes(elements: &[Perm]) -> Vec<usize> {
        let mut sizes = Vec::new();
        let mut done = vec![false; elements.len()];
        for i in 0..elements.len() {
            if done[i] {
                continue;
            }
            let mut orbit = std::collections::BTreeSet::new();
            for x in elements {
                orbit.insert(x.inverse().then(&elements[i]).then(x));
            }
            for (j, e) in elements.iter().enumerate() {
                if orbit.contains(e) {
                    done[j] = true;
                }
            }
            sizes.push(orbit.len());
        }
        sizes
    }

    #[test]
    fn trivial_group() {
        let g = build_group("C1", 100).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.num_classes(), 1);
        assert_eq!(g.exponent(), 1);
    }

    #[test]
    fn sym3_classes() {
        let g = build_group("S3", 100).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.class_sizes(), vec![1, 3, 2]);
        assert_eq!(brute_classes(g.elements()), vec![1, 3, 2]);
    }

    #[test]
    fn sym4_class_order() {
        let g = build_group("S4", 100).unwrap();
        assert_eq!(g.class_labels(), vec!["1^4", "2.1^2", "3.1", "2^2", "4"]);
        assert_eq!(g.class_sizes(), vec![1, 6, 8, 3, 6]);
    }

    #[test]
    fn frobenius_55() {
        let g = build_group("C11:C5@3", 1000).unwrap();
        assert_eq!(g.order(), 55);
        assert_eq!(g.num_classes(), 7);
        let mut oracle = brute_classes(g.elements());
        oracle.sort_unstable();
        let mut got: Vec<usize> = g.class_sizes().iter().map(|&s| s as usize).collect();
        got.sort_unstable();
        assert_eq!(got, oracle);
    }

    #[test]
    fn order_cap_is_enforced() {
        let err = build_group("S8", 10_000).unwrap_err();
        assert!(matches!(err, Error::Resource(_)));
    }

    #[test]
    fn mismatched_generator_degree() {
        let a = Perm::identity(3);
        let b = Perm::identity(4);
        assert!(matches!(
            PermGroup::from_generators(3, vec![a, b], 100),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn enumeration_is_deterministic() {
        let a = build_group("perm:(1 2 3 4),(1 2)", 100).unwrap();
        let b = build_group("perm:(1 2 3 4),(1 2)", 100).unwrap();
        assert_eq!(a.elements(), b.elements());
        assert!(a.element(0).is_identity());
    }

    #[test]
    fn classes_partition_and_inverse_class() {
        for spec in ["S4", "A5", "D8", "C11:C5@3", "C12"] {
            let g = build_group(spec, 1000).unwrap();
            let total: usize = g.classes().iter().map(|c| c.size).sum();
            assert_eq!(total, g.order());
            assert_eq!(g.order() as u64 % g.exponent(), 0);
            for (ci, c) in g.classes().iter().enumerate() {
                for &m in &c.member_indices {
                    assert_eq!(g.class_of(m), ci);
                }
                let inv = g.inverse_class(ci);
                assert_eq!(g.classes()[inv].size, c.size);
            }
        }
    }
}
