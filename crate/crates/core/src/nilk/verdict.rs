use serde::{Deserialize, Serialize};

use super::q::q_predicate;
use crate::group::{class_at_most, left_normed_commutator, Elem, FiniteGroup, Subgroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WitnessKind {
    SubgpFail,
    NilFail,
    MalFail,
    IntersectionFail,
    MalnormalFail,
    DichotomyWitness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedElement {
    pub name: String,
    pub index: Elem,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedSubgroup {
    pub name: String,
    pub subgroup: Subgroup,
}

/// A counterexample tuple (or, for [`WitnessKind::DichotomyWitness`], an
/// existence witness) that can be re-checked with [`Witness::replays`].
///
/// Element names per kind:
///
/// * `SubgpFail`: `x, y1, y2`
/// * `NilFail`: `x, y1, …, y(k+1)`
/// * `MalFail`: `x, y, z`
/// * `IntersectionFail`: subgroups `H1, H2`, element `c` in both
/// * `MalnormalFail`: subgroup `H`, elements `x ∉ H` and `c ∈ H ∩ H^x`
/// * `DichotomyWitness`: subgroups `G0` and `A`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub elements: Vec<NamedElement>,
    pub subgroups: Vec<NamedSubgroup>,
    pub note: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    /// `Q(x, y)` lookups, commutator tuples, or subgroup tests, depending on
    /// the method.
    pub evaluations: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
    pub method: String,
    pub stats: Stats,
}

impl Verdict {
    pub fn holds(method: impl Into<String>, evaluations: u64) -> Self {
        Verdict {
            holds: true,
            witness: None,
            method: method.into(),
            stats: Stats { evaluations },
        }
    }

    pub fn fails(method: impl Into<String>, witness: Witness, evaluations: u64) -> Self {
        Verdict {
            holds: false,
            witness: Some(witness),
            method: method.into(),
            stats: Stats { evaluations },
        }
    }

    /// `holds` agrees with the witness, and a witness replays.
    pub fn is_consistent(&self, g: &FiniteGroup, k: usize) -> bool {
        match (&self.witness, self.holds) {
            (None, true) => true,
            (Some(w), false) => w.replays(g, k),
            _ => false,
        }
    }
}

impl Witness {
    pub fn new(kind: WitnessKind) -> Self {
        Witness {
            kind,
            elements: Vec::new(),
            subgroups: Vec::new(),
            note: String::new(),
        }
    }

    pub fn element(mut self, name: impl Into<String>, index: Elem) -> Self {
        self.elements.push(NamedElement {
            name: name.into(),
            index,
        });
        self
    }

    pub fn subgroup(mut self, name: impl Into<String>, subgroup: Subgroup) -> Self {
        self.subgroups.push(NamedSubgroup {
            name: name.into(),
            subgroup,
        });
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    pub fn get(&self, name: &str) -> Option<Elem> {
        self.elements.iter().find(|e| e.name == name).map(|e| e.index)
    }

    pub fn get_subgroup(&self, name: &str) -> Option<&Subgroup> {
        self.subgroups
            .iter()
            .find(|s| s.name == name)
            .map(|s| &s.subgroup)
    }

    /// Re-evaluates the violated formula from scratch on the witness data.
    /// True when the witness really exhibits the failure (or, for a dichotomy
    /// witness, really has the claimed structure).
    pub fn replays(&self, g: &FiniteGroup, k: usize) -> bool {
        self.try_replay(g, k).unwrap_or(false)
    }

    fn try_replay(&self, g: &FiniteGroup, k: usize) -> Option<bool> {
        let n = g.order();
        if self.elements.iter().any(|e| e.index >= n)
            || self.subgroups.iter().any(|s| s.subgroup.parent_order() != n)
        {
            return Some(false);
        }
        let q = |a, b| q_predicate(g, k, a, b);
        let nontrivial = |a| !g.is_identity(a);
        Some(match self.kind {
            WitnessKind::SubgpFail => {
                let (x, y1, y2) = (self.get("x")?, self.get("y1")?, self.get("y2")?);
                nontrivial(x) && q(x, y1) && q(x, y2) && !q(x, g.mul(g.inv(y1), y2))
            }
            WitnessKind::NilFail => {
                let x = self.get("x")?;
                let ys = (1..=k + 1)
                    .map(|i| self.get(&format!("y{i}")))
                    .collect::<Option<Vec<_>>>()?;
                nontrivial(x) && ys.iter().all(|&y| q(x, y)) && nontrivial(left_normed_commutator(g, &ys))
            }
            WitnessKind::MalFail => {
                let (x, y, z) = (self.get("x")?, self.get("y")?, self.get("z")?);
                nontrivial(x) && nontrivial(y) && q(x, y) && q(x, g.conj(y, z)) && !q(x, z)
            }
            WitnessKind::IntersectionFail => {
                let (h1, h2) = (self.get_subgroup("H1")?, self.get_subgroup("H2")?);
                let c = self.get("c")?;
                // Two nil_k subgroups meeting nontrivially whose join is not
                // nil_k: a direct violation of NT_k.
                is_subgroup(g, h1)
                    && is_subgroup(g, h2)
                    && h1 != h2
                    && nontrivial(c)
                    && h1.contains(c)
                    && h2.contains(c)
                    && has_class_at_most(g, h1, k)
                    && has_class_at_most(g, h2, k)
                    && !has_class_at_most(g, &h1.join(g, h2), k)
            }
            WitnessKind::MalnormalFail => {
                let h = self.get_subgroup("H")?;
                let (x, c) = (self.get("x")?, self.get("c")?);
                is_subgroup(g, h)
                    && has_class_at_most(g, h, k)
                    && is_maximal_nilk(g, h, k)
                    && !h.contains(x)
                    && nontrivial(c)
                    && h.contains(c)
                    && h.contains(g.mul(x, g.mul(c, g.inv(x))))
            }
            WitnessKind::DichotomyWitness => {
                let (g0, a) = (self.get_subgroup("G0")?, self.get_subgroup("A")?);
                let g0_gens = g0.generators(g);
                is_subgroup(g, g0)
                    && is_subgroup(g, a)
                    && a.is_subgroup_of(g0)
                    && !a.is_trivial()
                    && a.is_normal_under(g, &g0_gens)
                    && has_class_at_most(g, a, k)
                    && !has_class_at_most(g, g0, k)
            }
        })
    }
}

fn is_subgroup(g: &FiniteGroup, h: &Subgroup) -> bool {
    Subgroup::from_elements(g, &h.elements().collect::<Vec<_>>()).is_ok()
}

fn has_class_at_most(g: &FiniteGroup, h: &Subgroup, k: usize) -> bool {
    class_at_most(g, h, &h.generators(g), k)
}

/// A nil_k subgroup is maximal iff no single extension `⟨H, g⟩` is nil_k.
pub(crate) fn is_maximal_nilk(g: &FiniteGroup, h: &Subgroup, k: usize) -> bool {
    let gens = h.generators(g);
    g.elements().filter(|&x| !h.contains(x)).all(|x| {
        let mut ext = gens.clone();
        ext.push(x);
        let k_sub = crate::group::subgroup_generate(g, &ext);
        !class_at_most(g, &k_sub, &ext, k)
    })
}
