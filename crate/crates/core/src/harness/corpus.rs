use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{build_family, is_prime, FamilySpec, FiniteGroup, DEFAULT_ORDER_CAP};

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub group: Arc<FiniteGroup>,
    /// `None` for groups that did not come from a family constructor.
    pub spec: Option<FamilySpec>,
    /// Enough to rebuild the group: a family expression or a file name.
    pub provenance: String,
}

impl CorpusEntry {
    pub fn from_spec(spec: FamilySpec) -> Result<Self> {
        let group = build_family(&spec)?;
        Ok(CorpusEntry {
            group: Arc::new(group),
            provenance: spec.to_string(),
            spec: Some(spec),
        })
    }

    pub fn custom(group: FiniteGroup, provenance: impl Into<String>) -> Self {
        CorpusEntry {
            group: Arc::new(group),
            spec: None,
            provenance: provenance.into(),
        }
    }

    pub fn name(&self) -> &str {
        self.group.name()
    }
}

#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
    pub max_order: usize,
}

impl Corpus {
    pub fn from_entries(entries: Vec<CorpusEntry>) -> Self {
        let max_order = entries.iter().map(|e| e.group.order()).max().unwrap_or(0);
        Corpus { entries, max_order }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Family specs of the default corpus, in corpus order.
pub fn default_corpus_specs(max_order: usize) -> Vec<FamilySpec> {
    let within = |s: &FamilySpec| s.order().is_some_and(|o| o <= max_order);
    let mut base: Vec<FamilySpec> = (1..=max_order).map(FamilySpec::Cyclic).collect();
    base.extend((3..).map(FamilySpec::Dihedral).take_while(within));
    base.extend((3..=5).map(FamilySpec::Symmetric).filter(within));
    base.extend((4..=5).map(FamilySpec::Alternating).filter(within));
    base.push(FamilySpec::Quaternion8);
    base.push(FamilySpec::Heisenberg(3));
    // p = 2 would repeat the dihedral groups.
    for p in (3..)
        .take_while(|p| p * (2 * p + 1) <= max_order)
        .filter(|&p| is_prime(p))
    {
        for q in (p + 1..=max_order / p).filter(|&q| is_prime(q) && q % p == 1) {
            base.push(FamilySpec::Semidirect { p, q });
        }
    }
    base.retain(within);

    let nontrivial: Vec<&FamilySpec> = base.iter().filter(|s| s.order() != Some(1)).collect();
    let mut products = Vec::new();
    for (i, a) in nontrivial.iter().enumerate() {
        for b in &nontrivial[..=i] {
            let spec = FamilySpec::product((*a).clone(), (*b).clone());
            if within(&spec) {
                products.push(spec);
            }
        }
    }
    base.extend(products);
    base
}

/// Cyclic groups up to `max_order`, dihedral groups, small symmetric and
/// alternating groups, `Q8`, the Heisenberg group mod 3, semidirect products
/// `C_q ⋊ C_p` with `p ≥ 3`, and direct products of two nontrivial members,
/// all of order at most `max_order`.
pub fn build_default_corpus(max_order: usize) -> Result<Corpus> {
    if max_order > DEFAULT_ORDER_CAP {
        return Err(Error::OrderLimitExceeded {
            order: max_order,
            cap: DEFAULT_ORDER_CAP,
        });
    }
    let entries = default_corpus_specs(max_order)
        .into_iter()
        .map(CorpusEntry::from_spec)
        .collect::<Result<Vec<_>>>()?;
    Ok(Corpus { entries, max_order })
}
