use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::subgroup::{normal_closure_in, Subgroup};
use super::{Elem, FiniteGroup};

/// `[x₁, …, xₙ]`, left-normed: `[[…[x₁, x₂], …], xₙ]`.
///
/// # Panics
///
/// If `xs` is empty.
pub fn left_normed_commutator(g: &FiniteGroup, xs: &[Elem]) -> Elem {
    let (&first, rest) = xs.split_first().expect("commutator of an empty list");
    rest.iter().fold(first, |acc, &x| g.comm(acc, x))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Lower,
    Upper,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralSeries {
    pub direction: Direction,
    /// Terms up to and including the first repeated one.
    pub terms: Vec<Subgroup>,
}

impl CentralSeries {
    /// The term where the series stabilized.
    pub fn limit(&self) -> &Subgroup {
        self.terms.last().expect("series always has a first term")
    }
}

/// Nilpotency class, with a sentinel for groups that are not nilpotent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Class {
    Nilpotent(usize),
    NotNilpotent,
}

impl Class {
    pub fn at_most(self, k: usize) -> bool {
        matches!(self, Class::Nilpotent(c) if c <= k)
    }
}

impl std::fmt::Display for Class {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Class::Nilpotent(c) => write!(f, "{c}"),
            Class::NotNilpotent => f.write_str("not nilpotent"),
        }
    }
}

/// Lower central series of `⟨h_gens⟩ = h`, stopping once a term repeats or
/// after `max_terms` terms.
///
/// Each step uses `γ_{i+1} = ⟨[Y, X]^H⟩` where `Y` generates `γ_i` and `X`
/// generates `H`.
pub(crate) fn lower_central_terms(
    g: &FiniteGroup,
    h: &Subgroup,
    h_gens: &[Elem],
    max_terms: usize,
) -> Vec<Subgroup> {
    let mut terms = vec![h.clone()];
    let mut term_gens = h_gens.to_vec();
    while terms.len() < max_terms {
        let last = terms.last().unwrap();
        if last.is_trivial() {
            break;
        }
        let mut comms = Vec::new();
        for &y in &term_gens {
            for &x in h_gens {
                let c = g.comm(y, x);
                if !g.is_identity(c) && !comms.contains(&c) {
                    comms.push(c);
                }
            }
        }
        let (next, next_gens) = normal_closure_in(g, h_gens, &comms);
        if &next == last {
            break;
        }
        terms.push(next);
        term_gens = next_gens;
    }
    terms
}

fn upper_central_terms(g: &FiniteGroup, h: &Subgroup, h_gens: &[Elem]) -> Vec<Subgroup> {
    let mut terms = vec![Subgroup::trivial(g)];
    loop {
        let last = terms.last().unwrap();
        let mut next = FixedBitSet::with_capacity(g.order());
        for z in h.elements() {
            if h_gens.iter().all(|&x| last.contains(g.comm(z, x))) {
                next.insert(z);
            }
        }
        let next = Subgroup::from_bits(next);
        if &next == last {
            break;
        }
        terms.push(next);
    }
    terms
}

pub fn central_series(g: &FiniteGroup, h: &Subgroup, direction: Direction) -> CentralSeries {
    let gens = h.generators(g);
    let terms = match direction {
        Direction::Lower => lower_central_terms(g, h, &gens, usize::MAX),
        Direction::Upper => upper_central_terms(g, h, &gens),
    };
    CentralSeries { direction, terms }
}

pub fn nilpotency_class(g: &FiniteGroup, h: &Subgroup) -> Class {
    let gens = h.generators(g);
    class_from_terms(&lower_central_terms(g, h, &gens, usize::MAX))
}

fn class_from_terms(terms: &[Subgroup]) -> Class {
    if terms.last().unwrap().is_trivial() {
        Class::Nilpotent(terms.len() - 1)
    } else {
        Class::NotNilpotent
    }
}

/// Whether `h = ⟨h_gens⟩` has class at most `k`; stops after `γ_{k+1}`.
pub fn class_at_most(g: &FiniteGroup, h: &Subgroup, h_gens: &[Elem], k: usize) -> bool {
    // The series stops at the trivial group, at a repeated term, or at γ_{k+1}.
    lower_central_terms(g, h, h_gens, k + 1)
        .last()
        .unwrap()
        .is_trivial()
}

pub fn center(g: &FiniteGroup) -> Subgroup {
    let mut members = FixedBitSet::with_capacity(g.order());
    for z in g.elements() {
        if g.elements().all(|x| g.mul(z, x) == g.mul(x, z)) {
            members.insert(z);
        }
    }
    Subgroup::from_bits(members)
}
