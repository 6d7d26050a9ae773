//! Commutative-transitive and CSA checks computed straight from commuting
//! relations, without the lattice search. They serve as independent routes for
//! the `k = 1` case.

use fixedbitset::FixedBitSet;

use super::is_malnormal;
use crate::group::{FiniteGroup, Subgroup};

fn commuting_rows(g: &FiniteGroup) -> Vec<FixedBitSet> {
    let n = g.order();
    let mut rows = vec![FixedBitSet::with_capacity(n); n];
    for a in 0..n {
        for b in a..n {
            if g.mul(a, b) == g.mul(b, a) {
                rows[a].insert(b);
                rows[b].insert(a);
            }
        }
    }
    rows
}

/// Centralizers of all non-identity elements are abelian.
pub fn is_ct(g: &FiniteGroup) -> bool {
    let rows = commuting_rows(g);
    g.nontrivial_elements().all(|x| {
        let c = &rows[x];
        c.ones().all(|a| c.is_subset(&rows[a]))
    })
}

/// Maximal abelian subgroups, as the maximal cliques of the commuting graph
/// (a maximal set of pairwise commuting elements is a subgroup). Sorted.
pub fn maximal_abelian_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut rows = commuting_rows(g);
    for (a, row) in rows.iter_mut().enumerate() {
        row.set(a, false);
    }
    let n = g.order();
    let mut cliques = Vec::new();
    let mut r = FixedBitSet::with_capacity(n);
    let mut p = FixedBitSet::with_capacity(n);
    p.insert_range(..);
    let x = FixedBitSet::with_capacity(n);
    bron_kerbosch(&rows, &mut r, p, x, &mut cliques);
    let mut subs: Vec<Subgroup> = cliques.into_iter().map(Subgroup::from_bits).collect();
    subs.sort();
    subs
}

fn bron_kerbosch(
    rows: &[FixedBitSet],
    r: &mut FixedBitSet,
    mut p: FixedBitSet,
    mut x: FixedBitSet,
    out: &mut Vec<FixedBitSet>,
) {
    if p.is_clear() && x.is_clear() {
        out.push(r.clone());
        return;
    }
    let pivot = p
        .ones()
        .chain(x.ones())
        .max_by_key(|&u| p.intersection_count(&rows[u]))
        .unwrap();
    let candidates: Vec<usize> = p.difference(&rows[pivot]).collect();
    for v in candidates {
        r.insert(v);
        let mut p2 = p.clone();
        p2.intersect_with(&rows[v]);
        let mut x2 = x.clone();
        x2.intersect_with(&rows[v]);
        bron_kerbosch(rows, r, p2, x2, out);
        r.set(v, false);
        p.set(v, false);
        x.insert(v);
    }
}

/// Every maximal abelian subgroup is malnormal.
pub fn is_csa(g: &FiniteGroup) -> bool {
    maximal_abelian_subgroups(g)
        .iter()
        .all(|h| is_malnormal(g, h).holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_family, FamilySpec};

    #[test]
    fn small_cases() {
        let s3 = build_family(&FamilySpec::Symmetric(3)).unwrap();
        assert!(is_ct(&s3));
        assert!(!is_csa(&s3));
        assert_eq!(maximal_abelian_subgroups(&s3).len(), 4);
        let q8 = build_family(&FamilySpec::Quaternion8).unwrap();
        assert!(!is_ct(&q8));
        let c7 = build_family(&FamilySpec::Cyclic(7)).unwrap();
        assert!(is_ct(&c7) && is_csa(&c7));
        assert_eq!(maximal_abelian_subgroups(&c7).len(), 1);
        let a4 = build_family(&FamilySpec::Alternating(4)).unwrap();
        assert!(is_ct(&a4));
        assert!(!is_csa(&a4));
    }
}
