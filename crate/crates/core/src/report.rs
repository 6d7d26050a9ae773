//! The per-group analysis report shared by the command line and tests.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::group::{nilpotency_class, Class, Elem, FiniteGroup, Subgroup};
use crate::harness::dichotomy_witness;
use crate::nilk::{enumerate_subgroups, NilkAnalyzer, NtkMethod, Verdict, Witness};

/// Bumped whenever a field changes meaning or is removed.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub name: String,
    pub order: usize,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodVerdict {
    pub method: NtkMethod,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentences {
    pub subgp: Verdict,
    pub nil: Verdict,
    pub mal: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupSummary {
    pub order: usize,
    pub generators: Vec<Elem>,
    pub elements: Vec<Elem>,
}

impl SubgroupSummary {
    fn of(g: &FiniteGroup, h: &Subgroup) -> Self {
        SubgroupSummary {
            order: h.order(),
            generators: h.generators(g),
            elements: h.elements().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub group: GroupSummary,
    pub k: usize,
    pub class: Class,
    pub subgroup_cap: usize,
    pub is_ntk: Vec<MethodVerdict>,
    pub is_csnk: Verdict,
    pub csnk_by_sentences: Verdict,
    pub sentences: Sentences,
    /// Sorted by order, then by element set.
    pub maximal_nilk_subgroups: Vec<SubgroupSummary>,
    /// Present exactly when the group is `NT_k` but not `CSN_k`.
    pub dichotomy: Option<Witness>,
}

impl AnalysisReport {
    /// Verdict of the first requested method.
    pub fn ntk(&self) -> bool {
        self.is_ntk[0].verdict.holds
    }

    /// `CSN_k ⇒ NT_k`, all methods agree, and every witness replays.
    pub fn is_consistent(&self, g: &FiniteGroup) -> bool {
        let k = self.k;
        let verdicts = self
            .is_ntk
            .iter()
            .map(|m| &m.verdict)
            .chain([&self.is_csnk, &self.csnk_by_sentences])
            .chain([&self.sentences.subgp, &self.sentences.nil, &self.sentences.mal]);
        let replay = verdicts.into_iter().all(|v| v.is_consistent(g, k));
        let agree = self.is_ntk.iter().all(|m| m.verdict.holds == self.ntk())
            && self.is_csnk.holds == self.csnk_by_sentences.holds;
        let dichotomy = match &self.dichotomy {
            Some(w) => w.replays(g, k) && self.ntk() && !self.is_csnk.holds,
            None => !(self.ntk() && !self.is_csnk.holds),
        };
        replay && agree && (!self.is_csnk.holds || self.ntk()) && dichotomy
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

/// Runs every decider on `g` for one `k`. `methods` selects the `NT_k`
/// routes; an empty slice means all of them.
pub fn analyze(
    g: &FiniteGroup,
    k: usize,
    methods: &[NtkMethod],
    subgroup_cap: usize,
    provenance: &str,
) -> Result<AnalysisReport> {
    let an = NilkAnalyzer::with_cap(g, k, subgroup_cap);
    let methods = if methods.is_empty() {
        &NtkMethod::ALL[..]
    } else {
        methods
    };
    let is_ntk = methods
        .iter()
        .map(|&method| {
            Ok(MethodVerdict {
                method,
                verdict: an.is_ntk(method)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let is_csnk = an.is_csnk()?;
    let maximal_nilk_subgroups = an
        .maximal_nilk_subgroups()?
        .iter()
        .map(|h| SubgroupSummary::of(g, h))
        .collect();
    let dichotomy = if is_ntk[0].verdict.holds && !is_csnk.holds {
        dichotomy_witness(g, &enumerate_subgroups(g, subgroup_cap)?, k)
    } else {
        None
    };
    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        group: GroupSummary {
            name: g.name().to_string(),
            order: g.order(),
            provenance: provenance.to_string(),
        },
        k,
        class: nilpotency_class(g, &Subgroup::whole(g)),
        subgroup_cap,
        is_ntk,
        is_csnk,
        csnk_by_sentences: an.csnk_by_sentences(),
        sentences: Sentences {
            subgp: an.subgp().clone(),
            nil: an.nil(),
            mal: an.mal(),
        },
        maximal_nilk_subgroups,
        dichotomy,
    })
}
