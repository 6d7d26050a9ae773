use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::{class_at_most, subgroup_generate, Elem, FiniteGroup, Subgroup};

/// Default cap on the number of distinct subgroups an enumeration may find.
pub const DEFAULT_SUBGROUP_CAP: usize = 100_000;

#[derive(Debug, Clone)]
pub struct LatticeEntry {
    pub subgroup: Subgroup,
    pub generators: Vec<Elem>,
    /// No accepted subgroup of the form `⟨H, g⟩` with `g ∉ H` exists.
    pub maximal: bool,
}

/// All subgroups accepted by `accept`, which must be inherited by subgroups
/// (as "class ≤ k" is). Sorted by `(order, bit-vector)`.
///
/// Breadth-first growth from the trivial subgroup: each accepted `H` is
/// extended by one element at a time. Every accepted subgroup is reached,
/// because each chain of one-element extensions inside it stays accepted.
/// Elements of the cosets `Hg` and `gH` give the same extension as `g` and
/// are skipped.
pub fn enumerate_subgroups_where(
    g: &FiniteGroup,
    cap: usize,
    mut accept: impl FnMut(&Subgroup, &[Elem]) -> bool,
) -> Result<Vec<LatticeEntry>> {
    let n = g.order();
    let mut seen: HashMap<FixedBitSet, Option<usize>> = HashMap::new();
    let trivial = Subgroup::trivial(g);
    seen.insert(trivial.bits().clone(), Some(0));
    let mut found = vec![LatticeEntry {
        subgroup: trivial,
        generators: Vec::new(),
        maximal: true,
    }];

    let mut i = 0;
    while i < found.len() {
        let h = found[i].subgroup.clone();
        let gens = found[i].generators.clone();
        let mut covered = h.bits().clone();
        let mut extendable = false;
        for x in 0..n {
            if covered.contains(x) {
                continue;
            }
            for y in h.elements() {
                covered.insert(g.mul(y, x));
                covered.insert(g.mul(x, y));
            }
            let mut ext = gens.clone();
            ext.push(x);
            let k = subgroup_generate(g, &ext);
            let slot = match seen.get(k.bits()) {
                Some(slot) => *slot,
                None => {
                    let slot = if accept(&k, &ext) {
                        if found.len() >= cap {
                            return Err(Error::SearchBudgetExceeded { cap });
                        }
                        found.push(LatticeEntry {
                            subgroup: k.clone(),
                            generators: ext,
                            maximal: true,
                        });
                        Some(found.len() - 1)
                    } else {
                        None
                    };
                    seen.insert(k.bits().clone(), slot);
                    slot
                }
            };
            extendable |= slot.is_some();
        }
        found[i].maximal = !extendable;
        i += 1;
    }
    found.sort_by(|a, b| a.subgroup.cmp(&b.subgroup));
    Ok(found)
}

/// The full subgroup lattice.
pub fn enumerate_subgroups(g: &FiniteGroup, cap: usize) -> Result<Vec<LatticeEntry>> {
    enumerate_subgroups_where(g, cap, |_, _| true)
}

pub fn enumerate_nilk_entries(g: &FiniteGroup, k: usize, cap: usize) -> Result<Vec<LatticeEntry>> {
    enumerate_subgroups_where(g, cap, |h, gens| class_at_most(g, h, gens, k))
}

/// Every subgroup of class at most `k`, sorted by `(order, bit-vector)`.
pub fn enumerate_nilk_subgroups(g: &FiniteGroup, k: usize, cap: usize) -> Result<Vec<Subgroup>> {
    Ok(enumerate_nilk_entries(g, k, cap)?
        .into_iter()
        .map(|e| e.subgroup)
        .collect())
}

/// The maximal elements of [`enumerate_nilk_subgroups`] under inclusion.
pub fn maximal_nilk_subgroups(g: &FiniteGroup, k: usize, cap: usize) -> Result<Vec<Subgroup>> {
    Ok(enumerate_nilk_entries(g, k, cap)?
        .into_iter()
        .filter(|e| e.maximal)
        .map(|e| e.subgroup)
        .collect())
}

/// All cyclic subgroups together with all subgroups generated by two
/// elements, sorted and deduplicated. Used where the full lattice is too big.
pub fn cyclic_and_two_generated(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut out: Vec<Subgroup> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for a in g.elements() {
        for b in a..g.order() {
            let h = subgroup_generate(g, &[a, b]);
            if seen.insert(h.bits().clone()) {
                out.push(h);
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_family, FamilySpec};

    fn group(spec: FamilySpec) -> FiniteGroup {
        build_family(&spec).unwrap()
    }

    fn orders(subs: &[Subgroup]) -> Vec<usize> {
        subs.iter().map(Subgroup::order).collect()
    }

    #[test]
    fn s3_abelian_subgroups() {
        let g = group(FamilySpec::Symmetric(3));
        let all = enumerate_nilk_subgroups(&g, 1, DEFAULT_SUBGROUP_CAP).unwrap();
        assert_eq!(orders(&all), [1, 2, 2, 2, 3]);
        let max = maximal_nilk_subgroups(&g, 1, DEFAULT_SUBGROUP_CAP).unwrap();
        assert_eq!(orders(&max), [2, 2, 2, 3]);
    }

    #[test]
    fn q8_abelian_subgroups() {
        let g = group(FamilySpec::Quaternion8);
        let all = enumerate_nilk_subgroups(&g, 1, DEFAULT_SUBGROUP_CAP).unwrap();
        assert_eq!(orders(&all), [1, 2, 4, 4, 4]);
        let max = maximal_nilk_subgroups(&g, 1, DEFAULT_SUBGROUP_CAP).unwrap();
        assert_eq!(orders(&max), [4, 4, 4]);
    }

    #[test]
    fn nilpotent_group_is_its_own_maximal() {
        let g = group(FamilySpec::Heisenberg(3));
        let max = maximal_nilk_subgroups(&g, 2, DEFAULT_SUBGROUP_CAP).unwrap();
        assert_eq!(max, [Subgroup::whole(&g)]);
        assert!(enumerate_nilk_subgroups(&g, 2, DEFAULT_SUBGROUP_CAP)
            .unwrap()
            .contains(&Subgroup::whole(&g)));
    }

    #[test]
    fn full_lattice_counts() {
        // Known subgroup counts: S4 has 30, D4 has 10, C12 has 6.
        for (spec, count) in [
            (FamilySpec::Symmetric(4), 30),
            (FamilySpec::Dihedral(4), 10),
            (FamilySpec::Cyclic(12), 6),
        ] {
            let g = group(spec.clone());
            assert_eq!(enumerate_subgroups(&g, 1000).unwrap().len(), count, "{spec}");
        }
    }

    #[test]
    fn maximal_flags_match_inclusion() {
        let g = group(FamilySpec::Symmetric(4));
        for k in 1..=3 {
            let entries = enumerate_nilk_entries(&g, k, DEFAULT_SUBGROUP_CAP).unwrap();
            for e in &entries {
                let by_inclusion = !entries.iter().any(|o| {
                    o.subgroup.order() > e.subgroup.order() && e.subgroup.is_subgroup_of(&o.subgroup)
                });
                assert_eq!(e.maximal, by_inclusion);
            }
        }
    }

    #[test]
    fn budget_is_an_error() {
        let g = group(FamilySpec::Symmetric(4));
        assert_eq!(
            enumerate_subgroups(&g, 10).unwrap_err(),
            Error::SearchBudgetExceeded { cap: 10 }
        );
    }

    #[test]
    fn two_generated_sample_covers_cyclics() {
        let g = group(FamilySpec::Symmetric(4));
        let sample = cyclic_and_two_generated(&g);
        let all = enumerate_subgroups(&g, 1000).unwrap();
        // Every subgroup of S4 is 2-generated.
        assert_eq!(sample.len(), all.len());
    }
}
