use std::sync::Arc;

use super::{GroupSpec, Perm, PermGroup};
use crate::charring::ClassFunction;
use crate::error::{Error, Result};

/// A subgroup U of a parent G, with the data needed to move characters
/// between them.
#[derive(Debug, Clone)]
pub struct SubgroupEmbedding {
    parent: Arc<PermGroup>,
    subgroup: PermGroup,
    /// Parent index of each subgroup element.
    sub_to_parent: Vec<usize>,
    /// Membership bitmap over parent elements.
    in_subgroup: Vec<bool>,
    /// Subgroup class -> parent class.
    fusion: Vec<usize>,
    /// Least parent index in each right coset Ux.
    right_cosets: Vec<usize>,
    /// Parent element -> right coset number.
    coset_of: Vec<usize>,
}

impl SubgroupEmbedding {
    /// Embeds the subgroup generated by `subgens` (already on the parent's
    /// points) into `parent`.
    pub fn new(parent: Arc<PermGroup>, subgens: Vec<Perm>) -> Result<Self> {
        for g in &subgens {
            if g.degree() != parent.degree() || parent.index_of(g).is_none() {
                return Err(Error::input(format!(
                    "generator {g} is not an element of the parent group"
                )));
            }
        }
        let subgroup = PermGroup::from_generators(parent.degree(), subgens, parent.order() + 1)?;
        let sub_to_parent: Vec<usize> = subgroup
            .elements()
            .iter()
            .map(|p| parent.index_of(p).expect("closed under products"))
            .collect();
        let mut in_subgroup = vec![false; parent.order()];
        for &i in &sub_to_parent {
            in_subgroup[i] = true;
        }
        let fusion = subgroup
            .classes()
            .iter()
            .map(|c| parent.class_of(sub_to_parent[c.representative]))
            .collect();
        let mut coset_of = vec![usize::MAX; parent.order()];
        let mut right_cosets = Vec::new();
        for x in 0..parent.order() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let id = right_cosets.len();
            right_cosets.push(x);
            for &u in &sub_to_parent {
                coset_of[parent.mul(u, x)] = id;
            }
        }
        Ok(SubgroupEmbedding {
            parent,
            subgroup,
            sub_to_parent,
            in_subgroup,
            fusion,
            right_cosets,
            coset_of,
        })
    }

    /// Resolves a subgroup spec against a parent: the spec's standard
    /// generators padded to the parent's degree; for a cyclic spec whose
    /// standard cycle is not in the parent, the element of that order with
    /// least index is used instead.
    pub fn from_spec(parent: Arc<PermGroup>, spec: &GroupSpec) -> Result<Self> {
        if spec.natural_degree() > parent.degree() {
            return Err(Error::input(format!(
                "subgroup acts on {} points but the parent only on {}",
                spec.natural_degree(),
                parent.degree()
            )));
        }
        let (_, gens) = spec.realize(parent.degree())?;
        if gens.iter().all(|g| parent.index_of(g).is_some()) {
            return SubgroupEmbedding::new(parent, gens);
        }
        if let GroupSpec::Cyclic(n) = spec {
            if let Some(i) = (0..parent.order()).find(|&i| parent.element(i).order() == *n as u64) {
                let g = parent.element(i).clone();
                return SubgroupEmbedding::new(parent, vec![g]);
            }
        }
        Err(Error::input(
            "subgroup generators are not elements of the parent group",
        ))
    }

    pub fn parent(&self) -> &PermGroup {
        &self.parent
    }

    pub fn parent_arc(&self) -> &Arc<PermGroup> {
        &self.parent
    }

    pub fn subgroup(&self) -> &PermGroup {
        &self.subgroup
    }

    pub fn fusion(&self) -> &[usize] {
        &self.fusion
    }

    pub fn right_cosets(&self) -> &[usize] {
        &self.right_cosets
    }

    pub fn coset_of(&self, parent_element: usize) -> usize {
        self.coset_of[parent_element]
    }

    pub fn index(&self) -> usize {
        self.right_cosets.len()
    }

    pub fn contains(&self, parent_element: usize) -> bool {
        self.in_subgroup[parent_element]
    }

    pub fn to_parent(&self, sub_element: usize) -> usize {
        self.sub_to_parent[sub_element]
    }

    /// Sorted parent indices of the subgroup's elements.
    pub fn parent_indices(&self) -> Vec<usize> {
        let mut v = self.sub_to_parent.clone();
        v.sort_unstable();
        v
    }

    pub fn is_full(&self) -> bool {
        self.index() == 1
    }

    pub fn is_normal(&self) -> bool {
        let g = &*self.parent;
        g.generators().iter().all(|s| {
            let s = g.index_of(s).unwrap();
            self.sub_to_parent
                .iter()
                .all(|&u| self.in_subgroup[g.conjugate(u, s)])
        })
    }

    /// |U ∩ c| for each parent class c.
    pub fn class_intersections(&self) -> Vec<usize> {
        let mut counts = vec![0; self.parent.num_classes()];
        for (sc, c) in self.subgroup.classes().iter().enumerate() {
            counts[self.fusion[sc]] += c.size;
        }
        counts
    }

    /// Whether G = U·C_G(U), the group-theoretic condition for depth one.
    pub fn is_centralizer_product(&self) -> bool {
        let g = &*self.parent;
        let centralizes = |x: usize| {
            self.subgroup.generators().iter().all(|s| {
                let s = g.index_of(s).unwrap();
                g.mul(s, x) == g.mul(x, s)
            })
        };
        // U·C_G(U) = G iff C_G(U) meets every right coset of U.
        let mut hit = vec![false; self.index()];
        for x in 0..g.order() {
            if !hit[self.coset_of[x]] && centralizes(x) {
                hit[self.coset_of[x]] = true;
            }
        }
        hit.into_iter().all(|h| h)
    }
}

fn is_normal_set(g: &PermGroup, members: &[bool]) -> bool {
    g.generators().iter().all(|s| {
        let s = g.index_of(s).unwrap();
        (0..g.order())
            .filter(|&x| members[x])
            .all(|x| members[g.conjugate(x, s)])
    })
}

fn subgroup_from_indices(g: &PermGroup, indices: &[usize]) -> PermGroup {
    // Greedy generating set in index order.
    let mut gens: Vec<Perm> = Vec::new();
    let mut span = PermGroup::from_generators(g.degree(), Vec::new(), 2).unwrap();
    for &i in indices {
        if span.index_of(g.element(i)).is_none() {
            gens.push(g.element(i).clone());
            span = PermGroup::from_generators(g.degree(), gens.clone(), g.order() + 1)
                .expect("subgroup of an enumerated group");
        }
    }
    span
}

/// Sorted parent indices of the core, the intersection of all conjugates
/// x^-1 U x over right coset representatives x.
pub fn core_indices(emb: &SubgroupEmbedding) -> Vec<usize> {
    let g = emb.parent();
    let mut members = emb.in_subgroup.clone();
    for &x in emb.right_cosets() {
        if is_normal_set(g, &members) {
            break;
        }
        let mut conj = vec![false; g.order()];
        for &u in &emb.sub_to_parent {
            conj[g.conjugate(u, x)] = true;
        }
        for (m, c) in members.iter_mut().zip(conj) {
            *m &= c;
        }
    }
    (0..g.order()).filter(|&i| members[i]).collect()
}

/// The largest normal subgroup of the parent contained in the subgroup.
pub fn core(emb: &SubgroupEmbedding) -> PermGroup {
    subgroup_from_indices(emb.parent(), &core_indices(emb))
}

/// Sorted parent indices of the kernel of the action on right cosets.
pub fn action_kernel_indices(emb: &SubgroupEmbedding) -> Vec<usize> {
    let g = emb.parent();
    (0..g.order())
        .filter(|&h| {
            emb.right_cosets()
                .iter()
                .all(|&x| emb.coset_of(g.mul(x, h)) == emb.coset_of(x))
        })
        .collect()
}

/// Kernel of the permutation action of the parent on U\G.
pub fn action_kernel(emb: &SubgroupEmbedding) -> PermGroup {
    subgroup_from_indices(emb.parent(), &action_kernel_indices(emb))
}

/// χ_Q(g) = number of right cosets Ux with Uxg = Ux.
pub fn coset_permutation_character(emb: &SubgroupEmbedding) -> ClassFunction {
    let g = emb.parent();
    let values = g
        .classes()
        .iter()
        .map(|c| {
            emb.right_cosets()
                .iter()
                .filter(|&&x| emb.contains(g.conjugate(c.representative, g.inv(x))))
                .count() as i128
        })
        .collect();
    ClassFunction::Integer(values)
}

/// Character of the conjugation module: χ_ad(g) = |C_G(g)|.
pub fn adjoint_character(g: &PermGroup) -> ClassFunction {
    ClassFunction::Integer(
        (0..g.num_classes())
            .map(|c| g.centralizer_order(c) as i128)
            .collect(),
    )
}
