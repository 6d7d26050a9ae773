use fixedbitset::FixedBitSet;

use crate::group::{Elem, FiniteGroup};

/// `Q(x, y)`: every left-normed commutator of length `k + 1` with entries in
/// `{x, y}` is trivial, i.e. `⟨x, y⟩` has class at most `k`.
pub fn q_predicate(g: &FiniteGroup, k: usize, x: Elem, y: Elem) -> bool {
    let holds = q_by_commutators(g, k, x, y);
    #[cfg(debug_assertions)]
    {
        let h = crate::group::subgroup_generate(g, &[x, y]);
        debug_assert_eq!(
            holds,
            crate::group::class_at_most(g, &h, &[x, y], k),
            "Q({x}, {y}) disagrees with the class of <x, y>"
        );
    }
    holds
}

/// Tree walk over the `2^(k+1)` commutators, sharing equal prefixes.
/// `[1, a] = 1`, so identity prefixes are dropped.
fn q_by_commutators(g: &FiniteGroup, k: usize, x: Elem, y: Elem) -> bool {
    let mut frontier: Vec<Elem> = vec![x, y];
    for _ in 0..k {
        let mut next = Vec::with_capacity(frontier.len() * 2);
        for &c in &frontier {
            if !g.is_identity(c) {
                next.push(g.comm(c, x));
                next.push(g.comm(c, y));
            }
        }
        next.sort_unstable();
        next.dedup();
        frontier = next;
    }
    frontier.iter().all(|&c| g.is_identity(c))
}

/// `Q(x, y)` for every pair, stored as one bit row per `x`; row `x` is the set
/// `C^k_G(x)`.
#[derive(Debug, Clone)]
pub struct QTable {
    k: usize,
    rows: Vec<FixedBitSet>,
}

impl QTable {
    pub fn new(g: &FiniteGroup, k: usize) -> Self {
        let n = g.order();
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for x in 0..n {
            for y in x..n {
                if q_by_commutators(g, k, x, y) {
                    rows[x].insert(y);
                    rows[y].insert(x);
                }
            }
        }
        QTable { k, rows }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn get(&self, x: Elem, y: Elem) -> bool {
        self.rows[x].contains(y)
    }

    /// `C^k_G(x)` as a bit set.
    pub fn row(&self, x: Elem) -> &FixedBitSet {
        &self.rows[x]
    }
}

/// `C^k_G(x) = { y : ⟨x, y⟩ has class ≤ k }`, in increasing order.
pub fn ck_set(g: &FiniteGroup, k: usize, x: Elem) -> Vec<Elem> {
    g.elements().filter(|&y| q_by_commutators(g, k, x, y)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_family, FamilySpec};

    fn group(spec: FamilySpec) -> FiniteGroup {
        build_family(&spec).unwrap()
    }

    #[test]
    fn identity_always_satisfies_q() {
        let g = group(FamilySpec::Symmetric(4));
        for y in g.elements() {
            for k in 1..=3 {
                assert!(q_predicate(&g, k, g.identity(), y));
            }
        }
    }

    #[test]
    fn s3_transpositions() {
        let g = FiniteGroup::from_permutation_generators(3, &["(1 2)", "(1 3)"]).unwrap();
        // BFS order from generators (1 2), (1 3): index 1 = (1 2), index 2 = (1 3).
        assert!(!q_predicate(&g, 1, 1, 2));
        assert_eq!(ck_set(&g, 1, 1), vec![0, 1]);
    }

    #[test]
    fn q8_class_two() {
        let g = group(FamilySpec::Quaternion8);
        assert!(q_predicate(&g, 2, 2, 4));
        assert!(!q_predicate(&g, 1, 2, 4));
        assert_eq!(ck_set(&g, 2, 2).len(), 8);
    }

    #[test]
    fn abelian_ck_is_everything() {
        let g = group(FamilySpec::Cyclic(10));
        for x in g.elements() {
            assert_eq!(ck_set(&g, 1, x).len(), 10);
        }
    }

    #[test]
    fn table_matches_predicate() {
        let g = group(FamilySpec::Dihedral(8));
        for k in 1..=3 {
            let t = QTable::new(&g, k);
            for x in g.elements() {
                for y in g.elements() {
                    assert_eq!(t.get(x, y), q_predicate(&g, k, x, y));
                }
            }
        }
    }
}
