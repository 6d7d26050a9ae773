use std::cell::OnceCell;
use std::collections::BTreeSet;

use super::corpus::CorpusEntry;
use super::{Finding, PropositionId};
use crate::error::Result;
use crate::group::{
    center, class_at_most, nilpotency_class, normal_closure_in, Class, FamilySpec, FiniteGroup, Subgroup,
};
use crate::nilk::{
    cyclic_and_two_generated, enumerate_subgroups, is_csa, is_ct, LatticeEntry, NilkAnalyzer, NtkMethod,
    Verdict, Witness, WitnessKind,
};

/// Groups up to this order get the full subgroup lattice in
/// `subgroup_closure`; larger ones get cyclic and 2-generated subgroups.
pub const FULL_LATTICE_ORDER: usize = 48;

/// Groups up to this order get the unshortcut dichotomy scan and the literal
/// `Nil` cross-check.
pub const BRUTE_FORCE_ORDER: usize = 24;

pub(crate) struct Checked {
    pub counterexamples: Vec<Finding>,
    pub evidence: Option<Finding>,
}

impl Checked {
    fn clean() -> Self {
        Checked {
            counterexamples: Vec::new(),
            evidence: None,
        }
    }

    fn failing(f: Finding) -> Self {
        Checked {
            counterexamples: vec![f],
            evidence: None,
        }
    }
}

/// Per-group, per-`k` state shared by all propositions.
pub(crate) struct GroupContext<'a> {
    pub entry: &'a CorpusEntry,
    pub k: usize,
    cap: usize,
    analyzer: NilkAnalyzer<'a>,
    class: OnceCell<Class>,
    ntk: OnceCell<Verdict>,
    csnk: OnceCell<Result<Verdict>>,
    lattice: OnceCell<Result<Vec<LatticeEntry>>>,
}

impl<'a> GroupContext<'a> {
    pub fn new(entry: &'a CorpusEntry, k: usize, cap: usize) -> Self {
        GroupContext {
            entry,
            k,
            cap,
            analyzer: NilkAnalyzer::with_cap(&entry.group, k, cap),
            class: OnceCell::new(),
            ntk: OnceCell::new(),
            csnk: OnceCell::new(),
            lattice: OnceCell::new(),
        }
    }

    fn g(&self) -> &'a FiniteGroup {
        &self.entry.group
    }

    fn finding(&self, witness: Option<Witness>, detail: impl Into<String>) -> Finding {
        Finding {
            group: self.g().name().to_string(),
            provenance: self.entry.provenance.clone(),
            subgroup: None,
            witness,
            detail: detail.into(),
        }
    }

    fn class(&self) -> Class {
        *self
            .class
            .get_or_init(|| nilpotency_class(self.g(), &Subgroup::whole(self.g())))
    }

    fn ntk(&self) -> &Verdict {
        self.ntk.get_or_init(|| {
            self.analyzer
                .is_ntk(NtkMethod::Sentences)
                .expect("the sentence method needs no lattice")
        })
    }

    fn csnk(&self) -> Result<&Verdict> {
        self.csnk
            .get_or_init(|| self.analyzer.is_csnk())
            .as_ref()
            .map_err(Clone::clone)
    }

    fn lattice(&self) -> Result<&[LatticeEntry]> {
        self.lattice
            .get_or_init(|| enumerate_subgroups(self.g(), self.cap))
            .as_ref()
            .map(Vec::as_slice)
            .map_err(Clone::clone)
    }

    pub fn check(&self, id: PropositionId) -> Result<Checked> {
        match id {
            PropositionId::CsnImpliesNt => self.csn_implies_nt(),
            PropositionId::PairwiseIffNt => self.pairwise_iff_nt(),
            PropositionId::ProductIndecomposable => Ok(self.product_indecomposable()),
            PropositionId::CkMaximal => self.ck_maximal(),
            PropositionId::SubgroupClosure => self.subgroup_closure(),
            PropositionId::FiniteCsnNilpotent => self.finite_csn_nilpotent(),
            PropositionId::CenterTrivial => Ok(self.center_trivial()),
            PropositionId::Dichotomy => self.dichotomy(),
        }
    }

    fn csn_implies_nt(&self) -> Result<Checked> {
        let ntk = self.ntk();
        if self.csnk()?.holds && !ntk.holds {
            return Ok(Checked::failing(
                self.finding(ntk.witness.clone(), "CSN_k holds but NT_k fails"),
            ));
        }
        Ok(Checked::clean())
    }

    fn pairwise_iff_nt(&self) -> Result<Checked> {
        let ntk = self.ntk();
        let pairwise = self.analyzer.is_ntk(NtkMethod::PairwiseIntersections)?;
        if pairwise.holds != ntk.holds {
            let witness = pairwise.witness.or_else(|| ntk.witness.clone());
            return Ok(Checked::failing(self.finding(
                witness,
                format!(
                    "NT_k is {} but pairwise trivial intersection is {}",
                    ntk.holds, pairwise.holds
                ),
            )));
        }
        Ok(Checked::clean())
    }

    fn product_indecomposable(&self) -> Checked {
        let Some(FamilySpec::DirectProduct(a, b)) = &self.entry.spec else {
            return Checked::clean();
        };
        if a.order() == Some(1) || b.order() == Some(1) {
            return Checked::clean();
        }
        if self.ntk().holds && !self.class().at_most(self.k) {
            return Checked::failing(
                self.finding(None, format!("{a} x {b} is NT_k with class {}", self.class())),
            );
        }
        Checked::clean()
    }

    fn ck_maximal(&self) -> Result<Checked> {
        let g = self.g();
        if !self.ntk().holds || g.order() == 1 {
            return Ok(Checked::clean());
        }
        let maximal: BTreeSet<Subgroup> = self.analyzer.maximal_nilk_subgroups()?.into_iter().collect();
        let mut from_ck = BTreeSet::new();
        for x in g.nontrivial_elements() {
            let c = Subgroup::from_bits(self.analyzer.q().row(x).clone());
            if !maximal.contains(&c) {
                return Ok(Checked::failing(self.finding(
                    None,
                    format!(
                        "C^k(x) for x = {x} has order {} and is not a maximal nil_k subgroup",
                        c.order()
                    ),
                )));
            }
            from_ck.insert(c);
        }
        if let Some(m) = maximal.difference(&from_ck).next() {
            return Ok(Checked::failing(self.finding(
                None,
                format!(
                    "maximal nil_k subgroup {:?} is no C^k(x)",
                    m.elements().collect::<Vec<_>>()
                ),
            )));
        }
        Ok(Checked::clean())
    }

    fn subgroup_closure(&self) -> Result<Checked> {
        let g = self.g();
        if !self.csnk()?.holds {
            return Ok(Checked::clean());
        }
        let subgroups: Vec<Subgroup> = if g.order() <= FULL_LATTICE_ORDER {
            self.lattice()?.iter().map(|e| e.subgroup.clone()).collect()
        } else {
            cyclic_and_two_generated(g)
        };
        for h in subgroups.iter().filter(|h| !h.is_trivial() && !h.is_whole()) {
            let (hg, _) = g.subgroup_as_group(h);
            let v = NilkAnalyzer::with_cap(&hg, self.k, self.cap).is_csnk()?;
            if !v.holds {
                let mut f = self.finding(
                    v.witness,
                    format!(
                        "subgroup of order {} is not CSN_k; witness indices refer to the subgroup",
                        h.order()
                    ),
                );
                f.subgroup = Some(h.clone());
                return Ok(Checked::failing(f));
            }
        }
        Ok(Checked::clean())
    }

    fn finite_csn_nilpotent(&self) -> Result<Checked> {
        if self.csnk()?.holds && !self.class().at_most(self.k) {
            return Ok(Checked::failing(
                self.finding(None, format!("CSN_k with class {}", self.class())),
            ));
        }
        Ok(Checked::clean())
    }

    fn center_trivial(&self) -> Checked {
        let g = self.g();
        if self.ntk().holds && !self.class().at_most(self.k) {
            if let Some(z) = center(g).elements().find(|&z| !g.is_identity(z)) {
                return Checked::failing(self.finding(
                    None,
                    format!("NT_k with class {} and central element {z}", self.class()),
                ));
            }
        }
        Checked::clean()
    }

    fn dichotomy(&self) -> Result<Checked> {
        let g = self.g();
        if !self.ntk().holds {
            return Ok(Checked::clean());
        }
        let csnk = self.csnk()?;
        let lattice = self.lattice()?;
        let found = dichotomy_witness(g, lattice, self.k);
        if g.order() <= BRUTE_FORCE_ORDER && dichotomy_exists_full_scan(g, lattice, self.k) != found.is_some()
        {
            return Ok(Checked::failing(
                self.finding(found, "normal-closure scan and full lattice scan disagree"),
            ));
        }
        match found {
            Some(w) if !w.replays(g, self.k) => Ok(Checked::failing(
                self.finding(Some(w), "dichotomy witness does not replay"),
            )),
            Some(w) if csnk.holds => Ok(Checked::failing(
                self.finding(Some(w), "CSN_k group with a dichotomy witness"),
            )),
            None if !csnk.holds => Ok(Checked::failing(self.finding(
                csnk.witness.clone(),
                "NT_k, not CSN_k, and no subgroup with a nontrivial normal nil_k subgroup of class > k",
            ))),
            Some(w) => Ok(Checked {
                counterexamples: Vec::new(),
                evidence: Some(self.finding(Some(w), "not CSN_k")),
            }),
            None => Ok(Checked::clean()),
        }
    }

    /// Re-checks the analyzer against itself and the direct `k = 1` checks.
    pub fn agreement(&self) -> Result<Vec<Finding>> {
        let g = self.g();
        let k = self.k;
        let mut out = Vec::new();
        let ntk: Vec<Verdict> = NtkMethod::ALL
            .iter()
            .map(|&m| self.analyzer.is_ntk(m))
            .collect::<Result<_>>()?;
        if ntk.iter().any(|v| v.holds != ntk[0].holds) {
            let summary: Vec<String> = ntk.iter().map(|v| format!("{}={}", v.method, v.holds)).collect();
            out.push(self.finding(None, format!("NT_k methods disagree: {}", summary.join(", "))));
        }
        let csnk = self.csnk()?;
        let by_sentences = self.analyzer.csnk_by_sentences();
        if csnk.holds != by_sentences.holds {
            out.push(self.finding(
                csnk.witness.clone().or(by_sentences.witness.clone()),
                format!("CSN_k structural={} sentences={}", csnk.holds, by_sentences.holds),
            ));
        }
        for v in ntk.iter().chain([csnk, &by_sentences]) {
            if !v.is_consistent(g, k) {
                out.push(self.finding(v.witness.clone(), format!("{} witness does not replay", v.method)));
            }
        }
        if g.order() <= BRUTE_FORCE_ORDER {
            let shortcut = self.analyzer.nil();
            let literal = self.analyzer.nil_literal();
            if shortcut.holds != literal.holds {
                out.push(self.finding(
                    literal.witness.or(shortcut.witness),
                    format!("Nil shortcut={} literal={}", shortcut.holds, literal.holds),
                ));
            }
        }
        if k == 1 {
            let (ct, csa) = (is_ct(g), is_csa(g));
            if ct != ntk[0].holds {
                out.push(self.finding(None, format!("NT_1={} but CT={ct}", ntk[0].holds)));
            }
            if csa != csnk.holds {
                out.push(self.finding(None, format!("CSN_1={} but CSA={csa}", csnk.holds)));
            }
        }
        Ok(out)
    }
}

/// First `(G0, A)` in lattice order with `class(G0) > k`, `A` the normal
/// closure in `G0` of one element, and `class(A) ≤ k`. Any nontrivial normal
/// nil_k subgroup of `G0` contains such a closure, so this finds a witness
/// whenever one exists.
pub fn dichotomy_witness(g: &FiniteGroup, lattice: &[LatticeEntry], k: usize) -> Option<Witness> {
    lattice
        .iter()
        .filter(|e| !class_at_most(g, &e.subgroup, &e.generators, k))
        .find_map(|e| {
            e.subgroup
                .elements()
                .filter(|&x| !g.is_identity(x))
                .find_map(|x| {
                    let (a, a_gens) = normal_closure_in(g, &e.generators, &[x]);
                    class_at_most(g, &a, &a_gens, k).then(|| {
                        Witness::new(WitnessKind::DichotomyWitness)
                            .subgroup("G0", e.subgroup.clone())
                            .subgroup("A", a)
                            .note(format!("A is the normal closure of <{x}> in G0"))
                    })
                })
        })
}

/// Existence of a dichotomy pair by testing every lattice member as `A`.
pub fn dichotomy_exists_full_scan(g: &FiniteGroup, lattice: &[LatticeEntry], k: usize) -> bool {
    lattice
        .iter()
        .filter(|e| !class_at_most(g, &e.subgroup, &e.generators, k))
        .any(|g0| {
            lattice.iter().any(|a| {
                !a.subgroup.is_trivial()
                    && a.subgroup.is_subgroup_of(&g0.subgroup)
                    && a.subgroup.is_normal_under(g, &g0.generators)
                    && class_at_most(g, &a.subgroup, &a.generators, k)
            })
        })
}
