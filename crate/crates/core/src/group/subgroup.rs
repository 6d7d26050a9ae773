use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::{Elem, FiniteGroup};
use crate::error::{Error, Result};

/// A subgroup of a parent [`FiniteGroup`], stored as a membership bit-vector.
///
/// The parent is not borrowed; operations take it explicitly. Two subgroups
/// are equal iff their bit-vectors are. The total order is by
/// `(order, bit-vector)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "SubgroupRepr", try_from = "SubgroupRepr")]
pub struct Subgroup {
    order: usize,
    members: FixedBitSet,
}

#[derive(Serialize, Deserialize)]
struct SubgroupRepr {
    parent_order: usize,
    members: Vec<Elem>,
}

impl From<Subgroup> for SubgroupRepr {
    fn from(h: Subgroup) -> Self {
        SubgroupRepr {
            parent_order: h.members.len(),
            members: h.elements().collect(),
        }
    }
}

impl TryFrom<SubgroupRepr> for Subgroup {
    type Error = String;

    fn try_from(repr: SubgroupRepr) -> Result<Self, String> {
        let mut members = FixedBitSet::with_capacity(repr.parent_order);
        for x in repr.members {
            if x >= repr.parent_order {
                return Err(format!("member {x} out of range"));
            }
            members.insert(x);
        }
        Ok(Subgroup {
            order: members.count_ones(..),
            members,
        })
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.members.cmp(&other.members))
    }
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.elements()).finish()
    }
}

impl Subgroup {
    pub fn trivial(g: &FiniteGroup) -> Self {
        let mut members = FixedBitSet::with_capacity(g.order());
        members.insert(g.identity());
        Subgroup { order: 1, members }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        let mut members = FixedBitSet::with_capacity(g.order());
        members.insert_range(..);
        Subgroup {
            order: g.order(),
            members,
        }
    }

    /// Checks that `elements` is a subgroup of `g`.
    pub fn from_elements(g: &FiniteGroup, elements: &[Elem]) -> Result<Self> {
        let mut members = FixedBitSet::with_capacity(g.order());
        for &x in elements {
            if x >= g.order() {
                return Err(Error::BadParams(format!("element {x} out of range")));
            }
            members.insert(x);
        }
        let h = Subgroup {
            order: members.count_ones(..),
            members,
        };
        if !h.contains(g.identity()) {
            return Err(Error::BadParams("set does not contain the identity".into()));
        }
        for a in h.elements() {
            if !h.contains(g.inv(a)) {
                return Err(Error::BadParams(format!("not closed under inverse at {a}")));
            }
            for b in h.elements() {
                if !h.contains(g.mul(a, b)) {
                    return Err(Error::BadParams(format!(
                        "not closed under product at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(h)
    }

    pub(crate) fn from_bits(members: FixedBitSet) -> Self {
        Subgroup {
            order: members.count_ones(..),
            members,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn parent_order(&self) -> usize {
        self.members.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order == self.members.len()
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.ones()
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let mut members = self.members.clone();
        members.intersect_with(&other.members);
        Subgroup::from_bits(members)
    }

    pub fn intersection_order(&self, other: &Subgroup) -> usize {
        self.members.intersection_count(&other.members)
    }

    /// Smallest element of `self ∩ other` other than the identity.
    pub fn first_common_nontrivial(&self, other: &Subgroup, g: &FiniteGroup) -> Option<Elem> {
        self.members
            .intersection(&other.members)
            .find(|&x| x != g.identity())
    }

    /// The conjugate `H^x = x⁻¹ H x`.
    pub fn conjugate(&self, g: &FiniteGroup, x: Elem) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(g.order());
        for h in self.elements() {
            members.insert(g.conj(h, x));
        }
        Subgroup::from_bits(members)
    }

    pub fn join(&self, g: &FiniteGroup, other: &Subgroup) -> Subgroup {
        let mut gens = self.generators(g);
        gens.extend(other.generators(g));
        subgroup_generate(g, &gens)
    }

    /// A small generating set: members in index order, each kept only when it
    /// is not already in the span of the earlier ones.
    pub fn generators(&self, g: &FiniteGroup) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut span = Subgroup::trivial(g);
        for x in self.elements() {
            if !span.contains(x) {
                gens.push(x);
                span = subgroup_generate(g, &gens);
                if span.order == self.order {
                    break;
                }
            }
        }
        gens
    }

    /// Whether `self` is normal in `ambient`, where `ambient_gens` generates it.
    pub fn is_normal_under(&self, g: &FiniteGroup, ambient_gens: &[Elem]) -> bool {
        ambient_gens
            .iter()
            .all(|&x| self.elements().all(|h| self.contains(g.conj(h, x))))
    }

    pub fn is_normal(&self, g: &FiniteGroup) -> bool {
        g.elements()
            .all(|x| self.elements().all(|h| self.contains(g.conj(h, x))))
    }
}

/// `⟨gens⟩`, by breadth-first search of the Cayley graph. In a finite group
/// closure under products already gives inverses.
pub fn subgroup_generate(g: &FiniteGroup, gens: &[Elem]) -> Subgroup {
    let mut members = FixedBitSet::with_capacity(g.order());
    members.insert(g.identity());
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let y = g.mul(x, s);
            if !members.put(y) {
                queue.push_back(y);
            }
        }
    }
    Subgroup::from_bits(members)
}

/// `⟨S^G⟩`, the smallest normal subgroup of `g` containing `s`.
pub fn normal_closure(g: &FiniteGroup, s: &[Elem]) -> Subgroup {
    let all: Vec<Elem> = g.elements().collect();
    normal_closure_in(g, &all, s).0
}

/// Normal closure of `s` inside the subgroup generated by `ambient_gens`.
/// Returns the subgroup and a generating set for it.
///
/// A subgroup is normalized by the ambient group as soon as the conjugates of
/// its generators by the ambient generators stay inside it, so the loop only
/// conjugates by `ambient_gens`.
pub fn normal_closure_in(g: &FiniteGroup, ambient_gens: &[Elem], s: &[Elem]) -> (Subgroup, Vec<Elem>) {
    let mut gens: Vec<Elem> = Vec::new();
    for &x in s {
        if !g.is_identity(x) && !gens.contains(&x) {
            gens.push(x);
        }
    }
    let mut closure = subgroup_generate(g, &gens);
    let mut i = 0;
    while i < gens.len() {
        let n = gens[i];
        for &a in ambient_gens {
            let c = g.conj(n, a);
            if !closure.contains(c) {
                gens.push(c);
                closure = subgroup_generate(g, &gens);
            }
        }
        i += 1;
    }
    (closure, gens)
}
