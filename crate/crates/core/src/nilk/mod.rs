//! The `nil_k` predicates: `Q(x, y)`, the sets `C^k_G(x)`, the universal
//! sentences `Subgp`, `Nil` and `Mal`, enumeration of class-`k` subgroups,
//! malnormality, and the `NT_k` / `CSN_k` deciders.
//!
//! Failing verdicts carry the lexicographically first counterexample tuple in
//! element index order.

mod classical;
mod lattice;
mod q;
mod verdict;

use std::cell::OnceCell;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{class_at_most, Elem, FiniteGroup, Subgroup};

pub use classical::{is_csa, is_ct, maximal_abelian_subgroups};
pub use lattice::{
    cyclic_and_two_generated, enumerate_nilk_entries, enumerate_nilk_subgroups, enumerate_subgroups,
    enumerate_subgroups_where, maximal_nilk_subgroups, LatticeEntry, DEFAULT_SUBGROUP_CAP,
};
pub use q::{ck_set, q_predicate, QTable};
pub use verdict::{NamedElement, NamedSubgroup, Stats, Verdict, Witness, WitnessKind};

/// Independent routes to deciding `NT_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NtkMethod {
    /// `Subgp ∧ Nil`.
    Sentences,
    /// Every `C^k_G(x)`, `x ≠ 1`, is a subgroup of class at most `k`.
    CkCharacterization,
    /// Distinct maximal class-`k` subgroups intersect trivially.
    PairwiseIntersections,
}

impl NtkMethod {
    pub const ALL: [NtkMethod; 3] = [
        NtkMethod::Sentences,
        NtkMethod::CkCharacterization,
        NtkMethod::PairwiseIntersections,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            NtkMethod::Sentences => "sentences",
            NtkMethod::CkCharacterization => "ck_characterization",
            NtkMethod::PairwiseIntersections => "pairwise_intersections",
        }
    }
}

impl fmt::Display for NtkMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NtkMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NtkMethod::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::BadParams(format!("unknown method '{s}'")))
    }
}

/// Caches the `Q` table and the class-`k` subgroup lattice of one group for
/// one `k`.
pub struct NilkAnalyzer<'g> {
    g: &'g FiniteGroup,
    k: usize,
    cap: usize,
    q: QTable,
    entries: OnceCell<Result<Vec<LatticeEntry>>>,
    subgp: OnceCell<Verdict>,
}

impl<'g> NilkAnalyzer<'g> {
    /// # Panics
    ///
    /// If `k == 0`.
    pub fn new(g: &'g FiniteGroup, k: usize) -> Self {
        Self::with_cap(g, k, DEFAULT_SUBGROUP_CAP)
    }

    pub fn with_cap(g: &'g FiniteGroup, k: usize, cap: usize) -> Self {
        assert!(k >= 1, "k must be at least 1");
        NilkAnalyzer {
            g,
            k,
            cap,
            q: QTable::new(g, k),
            entries: OnceCell::new(),
            subgp: OnceCell::new(),
        }
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.g
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> &QTable {
        &self.q
    }

    pub fn ck_set(&self, x: Elem) -> Vec<Elem> {
        self.q.row(x).ones().collect()
    }

    /// `∀x ≠ 1 ∀y₁, y₂: Q(x, y₁) ∧ Q(x, y₂) → Q(x, y₁⁻¹y₂)`.
    pub fn subgp(&self) -> &Verdict {
        self.subgp.get_or_init(|| {
            let g = self.g;
            let mut evals = 0u64;
            for x in g.nontrivial_elements() {
                let row = self.q.row(x);
                for y1 in row.ones() {
                    let y1_inv = g.inv(y1);
                    for y2 in row.ones() {
                        evals += 1;
                        if !self.q.get(x, g.mul(y1_inv, y2)) {
                            let w = Witness::new(WitnessKind::SubgpFail)
                                .element("x", x)
                                .element("y1", y1)
                                .element("y2", y2);
                            return Verdict::fails("sentences", w, evals);
                        }
                    }
                }
            }
            Verdict::holds("sentences", evals)
        })
    }

    /// First `(y₁, …, y_{k+1})` over `set` with a nontrivial left-normed
    /// commutator, in lexicographic order.
    fn first_nil_tuple(&self, set: &[Elem], evals: &mut u64) -> Option<Vec<Elem>> {
        fn go(
            g: &FiniteGroup,
            set: &[Elem],
            len: usize,
            prefix: &mut Vec<Elem>,
            acc: Elem,
            evals: &mut u64,
        ) -> bool {
            if prefix.len() == len {
                return true;
            }
            for &y in set {
                *evals += 1;
                let next = if prefix.is_empty() { y } else { g.comm(acc, y) };
                // Once a prefix commutator is trivial every extension is.
                if g.is_identity(next) {
                    continue;
                }
                prefix.push(y);
                if go(g, set, len, prefix, next, evals) {
                    return true;
                }
                prefix.pop();
            }
            false
        }
        let mut prefix = Vec::with_capacity(self.k + 1);
        go(self.g, set, self.k + 1, &mut prefix, self.g.identity(), evals).then_some(prefix)
    }

    fn nil_witness(&self, x: Elem, ys: &[Elem]) -> Witness {
        ys.iter().enumerate().fold(
            Witness::new(WitnessKind::NilFail).element("x", x),
            |w, (i, &y)| w.element(format!("y{}", i + 1), y),
        )
    }

    /// The `Nil` sentence evaluated literally: for every `x ≠ 1` and every
    /// `(k+1)`-tuple drawn from `C^k_G(x)`, the commutator is trivial.
    pub fn nil_literal(&self) -> Verdict {
        let mut evals = 0;
        for x in self.g.nontrivial_elements() {
            let set = self.ck_set(x);
            if let Some(ys) = self.first_nil_tuple(&set, &mut evals) {
                return Verdict::fails("literal", self.nil_witness(x, &ys), evals);
            }
        }
        Verdict::holds("literal", evals)
    }

    /// Whether `⟨C^k_G(x)⟩` has class at most `k`, cached per distinct set.
    fn generated_class_ok(&self, row: &FixedBitSet, cache: &mut HashMap<FixedBitSet, bool>) -> bool {
        if let Some(&ok) = cache.get(row) {
            return ok;
        }
        let members: Vec<Elem> = row.ones().collect();
        let h = crate::group::subgroup_generate(self.g, &members);
        let ok = class_at_most(self.g, &h, &h.generators(self.g), self.k);
        cache.insert(row.clone(), ok);
        ok
    }

    /// The `Nil` sentence. When `Subgp` holds each `C^k_G(x)` is a subgroup,
    /// and the sentence reduces to a class test on it; otherwise the literal
    /// scan decides, and the method string records whether testing the
    /// generated subgroups `⟨C^k_G(x)⟩` instead would have disagreed.
    pub fn nil(&self) -> Verdict {
        if !self.subgp().holds {
            let mut literal = self.nil_literal();
            let mut cache = HashMap::new();
            let variant = self
                .g
                .nontrivial_elements()
                .all(|x| self.generated_class_ok(self.q.row(x), &mut cache));
            if variant != literal.holds {
                literal.method = format!(
                    "literal (generated-subgroup variant {})",
                    if variant { "holds" } else { "fails" }
                );
            }
            return literal;
        }
        let mut cache = HashMap::new();
        let mut evals = 0;
        for x in self.g.nontrivial_elements() {
            evals += 1;
            if !self.generated_class_ok(self.q.row(x), &mut cache) {
                let set = self.ck_set(x);
                let ys = self
                    .first_nil_tuple(&set, &mut evals)
                    .expect("a subgroup of class > k has a nontrivial (k+1)-fold commutator");
                return Verdict::fails("shortcut", self.nil_witness(x, &ys), evals);
            }
        }
        Verdict::holds("shortcut", evals)
    }

    /// `∀x, y ≠ 1 ∀z: Q(x, y) ∧ Q(x, y^z) → Q(x, z)`.
    pub fn mal(&self) -> Verdict {
        let g = self.g;
        let mut evals = 0u64;
        for x in g.nontrivial_elements() {
            let row = self.q.row(x);
            for y in row.ones().filter(|&y| !g.is_identity(y)) {
                // Only z outside C^k_G(x) can falsify the implication.
                for z in row.zeroes() {
                    evals += 1;
                    if row.contains(g.conj(y, z)) {
                        let w = Witness::new(WitnessKind::MalFail)
                            .element("x", x)
                            .element("y", y)
                            .element("z", z);
                        return Verdict::fails("sentences", w, evals);
                    }
                }
            }
        }
        Verdict::holds("sentences", evals)
    }

    pub fn nilk_entries(&self) -> Result<&[LatticeEntry]> {
        self.entries
            .get_or_init(|| enumerate_nilk_entries(self.g, self.k, self.cap))
            .as_ref()
            .map(Vec::as_slice)
            .map_err(Clone::clone)
    }

    pub fn maximal_nilk_subgroups(&self) -> Result<Vec<Subgroup>> {
        Ok(self
            .nilk_entries()?
            .iter()
            .filter(|e| e.maximal)
            .map(|e| e.subgroup.clone())
            .collect())
    }

    pub fn is_ntk(&self, method: NtkMethod) -> Result<Verdict> {
        match method {
            NtkMethod::Sentences => {
                let subgp = self.subgp();
                if !subgp.holds {
                    return Ok(subgp.clone());
                }
                let mut nil = self.nil();
                nil.method = "sentences".into();
                nil.stats.evaluations += subgp.stats.evaluations;
                Ok(nil)
            }
            NtkMethod::CkCharacterization => Ok(self.ntk_by_ck_sets()),
            NtkMethod::PairwiseIntersections => self.ntk_by_intersections(),
        }
    }

    fn ntk_by_ck_sets(&self) -> Verdict {
        const METHOD: &str = "ck_characterization";
        let g = self.g;
        let mut evals = 0u64;
        let mut class_cache: HashMap<FixedBitSet, bool> = HashMap::new();
        for x in g.nontrivial_elements() {
            let row = self.q.row(x);
            // A finite set containing 1 is a subgroup iff it is closed under
            // products.
            let closed = row.ones().all(|a| row.ones().all(|b| row.contains(g.mul(a, b))));
            evals += 1;
            if !closed {
                let (y1, y2) = row
                    .ones()
                    .flat_map(|a| row.ones().map(move |b| (a, b)))
                    .find(|&(a, b)| !row.contains(g.mul(g.inv(a), b)))
                    .expect("a non-closed set has a pair with y1^-1 y2 outside it");
                let w = Witness::new(WitnessKind::SubgpFail)
                    .element("x", x)
                    .element("y1", y1)
                    .element("y2", y2)
                    .note(format!("C^{}(x) is not closed under products", self.k));
                return Verdict::fails(METHOD, w, evals);
            }
            let ok = *class_cache.entry(row.clone()).or_insert_with(|| {
                let h = Subgroup::from_bits(row.clone());
                class_at_most(g, &h, &h.generators(g), self.k)
            });
            if !ok {
                let ys = self
                    .first_nil_tuple(&self.ck_set(x), &mut evals)
                    .expect("class > k implies a nontrivial commutator");
                let w = self
                    .nil_witness(x, &ys)
                    .note(format!("C^{}(x) has class greater than {}", self.k, self.k));
                return Verdict::fails(METHOD, w, evals);
            }
        }
        Verdict::holds(METHOD, evals)
    }

    fn ntk_by_intersections(&self) -> Result<Verdict> {
        const METHOD: &str = "pairwise_intersections";
        let maximal = self.maximal_nilk_subgroups()?;
        let mut evals = 0u64;
        for (i, h1) in maximal.iter().enumerate() {
            for h2 in &maximal[i + 1..] {
                evals += 1;
                if let Some(c) = h1.first_common_nontrivial(h2, self.g) {
                    let w = Witness::new(WitnessKind::IntersectionFail)
                        .subgroup("H1", h1.clone())
                        .subgroup("H2", h2.clone())
                        .element("c", c)
                        .note(format!(
                            "distinct maximal nil_{} subgroups of orders {} and {} meet in {} elements",
                            self.k,
                            h1.order(),
                            h2.order(),
                            h1.intersection_order(h2)
                        ));
                    return Ok(Verdict::fails(METHOD, w, evals));
                }
            }
        }
        Ok(Verdict::holds(METHOD, evals))
    }

    /// Every maximal class-`k` subgroup is malnormal.
    pub fn is_csnk(&self) -> Result<Verdict> {
        const METHOD: &str = "structural";
        let mut evals = 0;
        for h in self.maximal_nilk_subgroups()? {
            let v = is_malnormal(self.g, &h);
            evals += v.stats.evaluations;
            if let Some(w) = v.witness {
                return Ok(Verdict::fails(METHOD, w, evals));
            }
        }
        Ok(Verdict::holds(METHOD, evals))
    }

    /// `Subgp ∧ Nil ∧ Mal`, returning the first failing sentence's verdict.
    pub fn csnk_by_sentences(&self) -> Verdict {
        let subgp = self.subgp();
        if !subgp.holds {
            return subgp.clone();
        }
        let nil = self.nil();
        if !nil.holds {
            return nil;
        }
        self.mal()
    }
}

/// `H ∩ H^x = 1` for every `x ∉ H`. The witness carries `x` and the least
/// nontrivial `c ∈ H ∩ H^x`.
pub fn is_malnormal(g: &FiniteGroup, h: &Subgroup) -> Verdict {
    let mut evals = 0u64;
    for x in g.elements().filter(|&x| !h.contains(x)) {
        let x_inv = g.inv(x);
        for c in h.elements().filter(|&c| !g.is_identity(c)) {
            evals += 1;
            // c ∈ H^x iff x c x⁻¹ ∈ H.
            if h.contains(g.mul(x, g.mul(c, x_inv))) {
                let w = Witness::new(WitnessKind::MalnormalFail)
                    .subgroup("H", h.clone())
                    .element("x", x)
                    .element("c", c);
                return Verdict::fails("direct", w, evals);
            }
        }
    }
    Verdict::holds("direct", evals)
}

pub fn eval_subgp(g: &FiniteGroup, k: usize) -> Verdict {
    NilkAnalyzer::new(g, k).subgp().clone()
}

pub fn eval_nil(g: &FiniteGroup, k: usize) -> Verdict {
    NilkAnalyzer::new(g, k).nil()
}

pub fn eval_nil_literal(g: &FiniteGroup, k: usize) -> Verdict {
    NilkAnalyzer::new(g, k).nil_literal()
}

pub fn eval_mal(g: &FiniteGroup, k: usize) -> Verdict {
    NilkAnalyzer::new(g, k).mal()
}

pub fn is_ntk(g: &FiniteGroup, k: usize, method: NtkMethod) -> Result<Verdict> {
    NilkAnalyzer::new(g, k).is_ntk(method)
}

pub fn is_csnk(g: &FiniteGroup, k: usize) -> Result<Verdict> {
    NilkAnalyzer::new(g, k).is_csnk()
}
