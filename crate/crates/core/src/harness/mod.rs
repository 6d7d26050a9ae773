//! Exhaustive checks of the structural propositions over a corpus of small
//! groups. The propositions are theorems, so a counterexample means a bug in
//! this crate; every counterexample carries the data needed to replay it.

mod corpus;
mod propositions;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::nilk::{Witness, DEFAULT_SUBGROUP_CAP};

pub use corpus::{build_default_corpus, default_corpus_specs, Corpus, CorpusEntry};
use propositions::GroupContext;
pub use propositions::{
    dichotomy_exists_full_scan, dichotomy_witness, BRUTE_FORCE_ORDER, FULL_LATTICE_ORDER,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PropositionId {
    /// `CSN_k ⇒ NT_k`.
    CsnImpliesNt,
    /// `NT_k` iff distinct maximal nil_k subgroups meet trivially.
    PairwiseIffNt,
    /// A direct product of two nontrivial groups that is `NT_k` has class ≤ k.
    ProductIndecomposable,
    /// In an `NT_k` group the sets `C^k(x)` are exactly the maximal nil_k
    /// subgroups.
    CkMaximal,
    /// Subgroups of `CSN_k` groups are `CSN_k`.
    SubgroupClosure,
    /// A finite `CSN_k` group has class ≤ k.
    FiniteCsnNilpotent,
    /// An `NT_k` group of class > k has trivial center.
    CenterTrivial,
    /// An `NT_k` group fails `CSN_k` iff some subgroup of class > k has a
    /// nontrivial normal nil_k subgroup.
    Dichotomy,
}

impl PropositionId {
    pub const ALL: [PropositionId; 8] = [
        PropositionId::CsnImpliesNt,
        PropositionId::PairwiseIffNt,
        PropositionId::ProductIndecomposable,
        PropositionId::CkMaximal,
        PropositionId::SubgroupClosure,
        PropositionId::FiniteCsnNilpotent,
        PropositionId::CenterTrivial,
        PropositionId::Dichotomy,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PropositionId::CsnImpliesNt => "csn_implies_nt",
            PropositionId::PairwiseIffNt => "pairwise_iff_nt",
            PropositionId::ProductIndecomposable => "product_indecomposable",
            PropositionId::CkMaximal => "ck_maximal",
            PropositionId::SubgroupClosure => "subgroup_closure",
            PropositionId::FiniteCsnNilpotent => "finite_csn_nilpotent",
            PropositionId::CenterTrivial => "center_trivial",
            PropositionId::Dichotomy => "dichotomy",
        }
    }
}

impl fmt::Display for PropositionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PropositionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PropositionId::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::BadParams(format!("unknown proposition '{s}'")))
    }
}

/// A counterexample, or evidence attached to a passing check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub group: String,
    pub provenance: String,
    /// When set, element indices in `witness` refer to this subgroup
    /// re-indexed in increasing element order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<Subgroup>,
    pub witness: Option<Witness>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skipped {
    pub group: String,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    /// Some group was skipped on a budget and nothing failed.
    Incomplete,
    Fail,
}

impl Status {
    fn of(counterexamples: &[Finding], skipped: &[Skipped]) -> Self {
        if !counterexamples.is_empty() {
            Status::Fail
        } else if !skipped.is_empty() {
            Status::Incomplete
        } else {
            Status::Pass
        }
    }

    pub fn worst(self, other: Status) -> Status {
        let rank = |s| match s {
            Status::Pass => 0,
            Status::Incomplete => 1,
            Status::Fail => 2,
        };
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarnessConfig {
    pub subgroup_cap: usize,
    /// Record wall-clock times. Off by default so reports are reproducible.
    pub timings: bool,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            subgroup_cap: DEFAULT_SUBGROUP_CAP,
            timings: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropositionReport {
    pub id: PropositionId,
    pub k: usize,
    pub status: Status,
    pub groups_checked: usize,
    pub counterexamples: Vec<Finding>,
    pub skipped: Vec<Skipped>,
    pub evidence: Vec<Finding>,
    pub max_order: usize,
    pub subgroup_cap: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

/// Cross-checks between independent decision routes for one `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgreementReport {
    pub k: usize,
    pub status: Status,
    pub groups_checked: usize,
    pub disagreements: Vec<Finding>,
    pub skipped: Vec<Skipped>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarnessRun {
    pub schema_version: u32,
    pub max_order: usize,
    pub ks: Vec<usize>,
    pub corpus_size: usize,
    pub status: Status,
    pub reports: Vec<PropositionReport>,
    pub agreement: Vec<AgreementReport>,
}

type GroupResults = (
    Vec<std::result::Result<propositions::Checked, String>>,
    Option<std::result::Result<Vec<Finding>, String>>,
);

fn check_entry(
    entry: &CorpusEntry,
    k: usize,
    ids: &[PropositionId],
    cap: usize,
    agreement: bool,
) -> GroupResults {
    let ctx = GroupContext::new(entry, k, cap);
    let outcomes = ids
        .iter()
        .map(|&id| ctx.check(id).map_err(|e| e.to_string()))
        .collect();
    let agree = agreement.then(|| ctx.agreement().map_err(|e| e.to_string()));
    (outcomes, agree)
}

fn run_k(
    corpus: &Corpus,
    k: usize,
    ids: &[PropositionId],
    config: HarnessConfig,
    agreement: bool,
) -> (Vec<PropositionReport>, Option<AgreementReport>) {
    let start = Instant::now();
    let per_group: Vec<GroupResults> = corpus
        .entries
        .par_iter()
        .map(|e| check_entry(e, k, ids, config.subgroup_cap, agreement))
        .collect();
    let elapsed = config.timings.then(|| start.elapsed().as_millis() as u64);

    let reports = ids
        .iter()
        .enumerate()
        .map(|(i, &id)| {
            let mut counterexamples = Vec::new();
            let mut skipped = Vec::new();
            let mut evidence = Vec::new();
            for (entry, (outcomes, _)) in corpus.entries.iter().zip(&per_group) {
                match &outcomes[i] {
                    Ok(c) => {
                        counterexamples.extend(c.counterexamples.iter().cloned());
                        evidence.extend(c.evidence.iter().cloned());
                    }
                    Err(reason) => skipped.push(Skipped {
                        group: entry.name().to_string(),
                        reason: reason.clone(),
                    }),
                }
            }
            PropositionReport {
                id,
                k,
                status: Status::of(&counterexamples, &skipped),
                groups_checked: corpus.len() - skipped.len(),
                counterexamples,
                skipped,
                evidence,
                max_order: corpus.max_order,
                subgroup_cap: config.subgroup_cap,
                elapsed_ms: elapsed,
            }
        })
        .collect();

    let agreement = agreement.then(|| {
        let mut disagreements = Vec::new();
        let mut skipped = Vec::new();
        for (entry, (_, agree)) in corpus.entries.iter().zip(&per_group) {
            match agree.as_ref().expect("agreement requested") {
                Ok(found) => disagreements.extend(found.iter().cloned()),
                Err(reason) => skipped.push(Skipped {
                    group: entry.name().to_string(),
                    reason: reason.clone(),
                }),
            }
        }
        AgreementReport {
            k,
            status: Status::of(&disagreements, &skipped),
            groups_checked: corpus.len() - skipped.len(),
            disagreements,
            skipped,
        }
    });
    (reports, agreement)
}

/// Checks one proposition on every corpus group. Groups whose subgroup
/// enumeration exceeds the cap are listed as skipped.
pub fn verify_proposition(
    id: PropositionId,
    corpus: &Corpus,
    k: usize,
    config: HarnessConfig,
) -> Result<PropositionReport> {
    if corpus.is_empty() {
        return Err(Error::Precondition("the corpus is empty".into()));
    }
    if k == 0 {
        return Err(Error::BadParams("k must be at least 1".into()));
    }
    Ok(run_k(corpus, k, &[id], config, false).0.remove(0))
}

/// Every proposition in `ids` for every `k`, plus the method-agreement checks,
/// in the order `k` then proposition.
pub fn run_all(
    corpus: &Corpus,
    ks: &[usize],
    ids: &[PropositionId],
    config: HarnessConfig,
) -> Result<HarnessRun> {
    if ks.is_empty() {
        return Err(Error::Precondition("no values of k given".into()));
    }
    if ks.contains(&0) {
        return Err(Error::BadParams("k must be at least 1".into()));
    }
    if corpus.is_empty() {
        return Err(Error::Precondition("the corpus is empty".into()));
    }
    let mut reports = Vec::new();
    let mut agreement = Vec::new();
    for &k in ks {
        let (r, a) = run_k(corpus, k, ids, config, true);
        reports.extend(r);
        agreement.extend(a);
    }
    let status = reports
        .iter()
        .map(|r| r.status)
        .chain(agreement.iter().map(|a| a.status))
        .fold(Status::Pass, Status::worst);
    Ok(HarnessRun {
        schema_version: crate::report::SCHEMA_VERSION,
        max_order: corpus.max_order,
        ks: ks.to_vec(),
        corpus_size: corpus.len(),
        status,
        reports,
        agreement,
    })
}
