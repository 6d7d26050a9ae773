//! Finite groups given by their full multiplication table.
//!
//! Elements are the indices `0..order`. Groups built from permutation
//! generators index their elements in breadth-first discovery order starting
//! from the identity, and permutations compose left to right: `x * y` means
//! "apply `x`, then `y`".

mod families;
mod io;
mod perm;
mod series;
mod subgroup;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub(crate) use families::is_prime;
pub use families::{build_family, FamilySpec};
pub use io::{parse_group_text, GroupFileKind};
pub use perm::{parse_cycles, Permutation};
pub use series::{
    center, central_series, class_at_most, left_normed_commutator, nilpotency_class, CentralSeries, Class,
    Direction,
};
pub use subgroup::{normal_closure, normal_closure_in, subgroup_generate, Subgroup};

/// An element of a [`FiniteGroup`], as an index into its table.
pub type Elem = usize;

/// Default cap on group order; the table holds `order²` entries.
pub const DEFAULT_ORDER_CAP: usize = 5000;

/// Up to this order associativity is checked on every triple.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 256;

/// Number of random triples checked above [`EXHAUSTIVE_ASSOCIATIVITY_LIMIT`].
pub const SAMPLED_ASSOCIATIVITY_TRIPLES: usize = 10_000;

/// Seed for the sampled associativity check.
pub const ASSOCIATIVITY_SEED: u64 = 0x5eed_a550_c1a7_1e00;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    identity: Elem,
    inverses: Vec<Elem>,
    name: String,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

impl FiniteGroup {
    /// Validates a Cayley table and discovers identity and inverses.
    pub fn from_cayley_table(rows: &[Vec<usize>], name: impl Into<String>) -> Result<Self> {
        Self::from_cayley_table_capped(rows, name, DEFAULT_ORDER_CAP)
    }

    pub fn from_cayley_table_capped(
        rows: &[Vec<usize>],
        name: impl Into<String>,
        cap: usize,
    ) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        if order > cap {
            return Err(Error::OrderLimitExceeded { order, cap });
        }
        let mut table = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::NotAGroup(format!(
                    "row {i} has {} entries, expected {order}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= order {
                    return Err(Error::NotAGroup(format!("entry {v} in row {i} out of range")));
                }
                table.push(v as u32);
            }
        }
        Self::from_flat_table(order, table, name.into())
    }

    /// `table` is row-major with `order * order` entries already in range.
    pub(crate) fn from_flat_table(order: usize, table: Vec<u32>, name: String) -> Result<Self> {
        debug_assert_eq!(table.len(), order * order);
        check_latin(order, &table)?;

        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] as usize == x))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        if (0..order).any(|x| table[x * order + identity] as usize != x) {
            return Err(Error::NotAGroup(format!(
                "element {identity} is only a left identity"
            )));
        }

        let mut inverses = vec![0; order];
        for (x, inv) in inverses.iter_mut().enumerate() {
            let row = &table[x * order..(x + 1) * order];
            // Latin rows guarantee exactly one right inverse.
            let y = row.iter().position(|&v| v as usize == identity).unwrap();
            if table[y * order + x] as usize != identity {
                return Err(Error::NotAGroup(format!("element {x} has no two-sided inverse")));
            }
            *inv = y;
        }

        let group = FiniteGroup {
            order,
            table,
            identity,
            inverses,
            name,
        };
        group.check_associativity()?;
        Ok(group)
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.order;
        let fail = |a, b, c| {
            Err(Error::NotAGroup(format!(
                "associativity fails on ({a}, {b}, {c})"
            )))
        };
        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return fail(a, b, c);
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(ASSOCIATIVITY_SEED);
            for _ in 0..SAMPLED_ASSOCIATIVITY_TRIPLES {
                let (a, b, c) = (
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                );
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                    return fail(a, b, c);
                }
            }
        }
        Ok(())
    }

    pub fn trivial() -> Self {
        FiniteGroup {
            order: 1,
            table: vec![0],
            identity: 0,
            inverses: vec![0],
            name: "C1".into(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    /// Non-identity elements in index order.
    pub fn nontrivial_elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.elements().filter(move |&x| x != self.identity)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a]
    }

    #[inline]
    pub fn is_identity(&self, a: Elem) -> bool {
        a == self.identity
    }

    /// `a^x = x⁻¹ a x`.
    #[inline]
    pub fn conj(&self, a: Elem, x: Elem) -> Elem {
        self.mul(self.inv(x), self.mul(a, x))
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    #[inline]
    pub fn comm(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: Elem, n: i64) -> Elem {
        let base = if n < 0 { self.inv(a) } else { a };
        let mut result = self.identity;
        for _ in 0..n.unsigned_abs() {
            result = self.mul(result, base);
        }
        result
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != self.identity {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The Cayley table as rows, the inverse of [`FiniteGroup::from_cayley_table`].
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(|row| row.iter().map(|&v| v as usize).collect())
            .collect()
    }

    /// Direct product with elements `(g, h)` at index `g * |other| + h`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Result<Self> {
        let (n, m) = (self.order, other.order);
        let order = n * m;
        if order > DEFAULT_ORDER_CAP {
            return Err(Error::OrderLimitExceeded {
                order,
                cap: DEFAULT_ORDER_CAP,
            });
        }
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let g = self.mul(a / m, b / m);
                let h = other.mul(a % m, b % m);
                table.push((g * m + h) as u32);
            }
        }
        let name = format!("{}x{}", self.name, other.name);
        Self::from_flat_table(order, table, name)
    }

    /// The subgroup `h` as a group in its own right, with its members
    /// re-indexed in increasing order. Returns the group and the map from new
    /// to old indices.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> (FiniteGroup, Vec<Elem>) {
        let members: Vec<Elem> = h.elements().collect();
        let mut index = vec![usize::MAX; self.order];
        for (i, &g) in members.iter().enumerate() {
            index[g] = i;
        }
        let n = members.len();
        let mut table = Vec::with_capacity(n * n);
        for &a in &members {
            for &b in &members {
                table.push(index[self.mul(a, b)] as u32);
            }
        }
        let identity = index[self.identity];
        let inverses = members.iter().map(|&g| index[self.inv(g)]).collect();
        let group = FiniteGroup {
            order: n,
            table,
            identity,
            inverses,
            name: format!("{}<{}>", self.name, n),
        };
        (group, members)
    }
}

fn check_latin(order: usize, table: &[u32]) -> Result<()> {
    let mut seen = vec![usize::MAX; order];
    for r in 0..order {
        for c in 0..order {
            let v = table[r * order + c] as usize;
            if seen[v] == r {
                return Err(Error::NotAGroup(format!("row {r} repeats entry {v}")));
            }
            seen[v] = r;
        }
    }
    seen.fill(usize::MAX);
    for c in 0..order {
        for r in 0..order {
            let v = table[r * order + c] as usize;
            if seen[v] == c {
                return Err(Error::NotAGroup(format!("column {c} repeats entry {v}")));
            }
            seen[v] = c;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic_rows(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
    }

    #[test]
    fn trivial_table() {
        let g = FiniteGroup::from_cayley_table(&[vec![0]], "C1").unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn z2_table() {
        let g = FiniteGroup::from_cayley_table(&[vec![0, 1], vec![1, 0]], "C2").unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn identity_need_not_be_zero() {
        // Z_3 relabelled so that 2 is the identity.
        let rows = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = FiniteGroup::from_cayley_table(&rows, "C3").unwrap();
        assert_eq!(g.identity(), 2);
        assert_eq!(g.inv(0), 1);
    }

    #[test]
    fn shifted_row_is_rejected() {
        let mut rows = cyclic_rows(4);
        rows[1].rotate_left(1);
        let err = FiniteGroup::from_cayley_table(&rows, "bad").unwrap_err();
        assert!(matches!(err, Error::NotAGroup(_)), "{err}");
    }

    #[test]
    fn non_associative_loop_is_rejected() {
        // A Latin square with identity 0 and x*x = 0 for all x. Any group of
        // order 5 is cyclic, so this loop cannot be associative.
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_cayley_table(&rows, "loop").unwrap_err();
        match err {
            Error::NotAGroup(reason) => assert!(reason.contains("associativity"), "{reason}"),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn ragged_and_out_of_range() {
        assert!(FiniteGroup::from_cayley_table(&[vec![0, 1], vec![1]], "x").is_err());
        assert!(FiniteGroup::from_cayley_table(&[vec![0, 2], vec![1, 0]], "x").is_err());
        assert!(FiniteGroup::from_cayley_table(&[], "x").is_err());
    }

    #[test]
    fn order_cap() {
        let err = FiniteGroup::from_cayley_table_capped(&cyclic_rows(6), "C6", 5).unwrap_err();
        assert_eq!(err, Error::OrderLimitExceeded { order: 6, cap: 5 });
    }

    #[test]
    fn sampled_associativity_above_limit() {
        let g = FiniteGroup::from_cayley_table(&cyclic_rows(300), "C300").unwrap();
        assert_eq!(g.order(), 300);
    }

    #[test]
    fn direct_product_order_multiplies() {
        let a = FiniteGroup::from_cayley_table(&cyclic_rows(3), "C3").unwrap();
        let b = FiniteGroup::from_cayley_table(&cyclic_rows(4), "C4").unwrap();
        let p = a.direct_product(&b).unwrap();
        assert_eq!(p.order(), 12);
        assert!(p.is_abelian());
        assert_eq!(p.name(), "C3xC4");
    }
}
