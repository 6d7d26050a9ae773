use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::word::{FreeWord, Letter};
use crate::error::{Error, Result};

/// A product `X_{i₁} ⋯ X_{iₙ}` of noncommuting variables, ordered by length
/// and then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut i = 0;
        while i < self.0.len() {
            let mut j = i;
            while j < self.0.len() && self.0[j] == self.0[i] {
                j += 1;
            }
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "X{}", self.0[i])?;
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

/// A noncommutative polynomial in `X_1 … X_m` with integer coefficients,
/// with every term of degree above `k` discarded.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruncatedSeries {
    m: u32,
    k: usize,
    coeffs: BTreeMap<Monomial, BigInt>,
}

impl TruncatedSeries {
    pub fn one(m: u32, k: usize) -> Self {
        TruncatedSeries {
            m,
            k,
            coeffs: BTreeMap::from([(Monomial(Vec::new()), BigInt::one())]),
        }
    }

    pub fn rank(&self) -> u32 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&Monomial(Vec::new())).is_some_and(BigInt::is_one)
    }

    pub fn coeff(&self, monomial: &[u32]) -> BigInt {
        self.coeffs
            .get(&Monomial(monomial.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    /// Nonzero terms in monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.coeffs.iter()
    }

    /// Lowest degree of a nonconstant nonzero term.
    pub fn lowest_nonconstant_degree(&self) -> Option<usize> {
        self.coeffs.keys().map(|m| m.0.len()).find(|&d| d > 0)
    }

    fn add_term(coeffs: &mut BTreeMap<Monomial, BigInt>, monomial: Monomial, c: BigInt) {
        let entry = coeffs.entry(monomial);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
        }
    }

    /// Truncated product.
    ///
    /// # Panics
    ///
    /// If the operands have different rank or truncation degree.
    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        assert_eq!((self.m, self.k), (other.m, other.k), "mismatched series");
        let mut coeffs = BTreeMap::new();
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                if a.0.len() + b.0.len() > self.k {
                    // Monomials are ordered by length, so the rest are longer.
                    break;
                }
                let mut mono = a.0.clone();
                mono.extend_from_slice(&b.0);
                Self::add_term(&mut coeffs, Monomial(mono), ca * cb);
            }
        }
        TruncatedSeries {
            m: self.m,
            k: self.k,
            coeffs,
        }
    }

    /// Right multiplication by the image of one letter: `1 + X_i` for `x_i`,
    /// `1 - X_i + X_i² - …` for `x_i⁻¹`.
    pub fn mul_letter(&self, letter: Letter) -> TruncatedSeries {
        let mut coeffs = self.coeffs.clone();
        for (mono, c) in &self.coeffs {
            let mut extended = mono.0.clone();
            let mut term = c.clone();
            for _ in mono.0.len()..self.k {
                extended.push(letter.generator);
                if letter.sign < 0 {
                    term = -term;
                }
                Self::add_term(&mut coeffs, Monomial(extended.clone()), term.clone());
                if letter.sign > 0 {
                    break;
                }
            }
        }
        TruncatedSeries {
            m: self.m,
            k: self.k,
            coeffs,
        }
    }

    /// Inverse of a series with constant term 1: `(1 + u)⁻¹ = Σ (-u)^j`.
    ///
    /// # Panics
    ///
    /// If the constant term is not 1.
    pub fn inverse(&self) -> TruncatedSeries {
        assert!(
            self.coeff(&[]).is_one(),
            "only series with constant term 1 are invertible here"
        );
        let mut neg_u = self.clone();
        neg_u.coeffs.remove(&Monomial(Vec::new()));
        for c in neg_u.coeffs.values_mut() {
            *c = -c.clone();
        }
        let mut result = TruncatedSeries::one(self.m, self.k);
        let mut power = TruncatedSeries::one(self.m, self.k);
        for _ in 0..self.k {
            power = power.mul(&neg_u);
            for (mono, c) in power.coeffs.clone() {
                Self::add_term(&mut result.coeffs, mono, c);
            }
        }
        result
    }
}

impl fmt::Display for TruncatedSeries {
    /// E.g. `1 + X1 X2 - X2 X1`; the zero series prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (mono, c)) in self.coeffs.iter().enumerate() {
            let negative = c < &BigInt::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mono.0.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs} {mono}")?;
            }
        }
        Ok(())
    }
}

fn check_rank(w: &FreeWord, m: u32) -> Result<()> {
    if w.rank_used() > m {
        return Err(Error::Precondition(format!(
            "word uses x{} but the rank is {m}",
            w.rank_used()
        )));
    }
    Ok(())
}

/// Magnus expansion of `w`, truncated at degree `k`.
pub fn magnus_image(w: &FreeWord, m: u32, k: usize) -> Result<TruncatedSeries> {
    check_rank(w, m)?;
    Ok(w.letters()
        .iter()
        .fold(TruncatedSeries::one(m, k), |s, &l| s.mul_letter(l)))
}

/// Whether `w` is trivial in the free nilpotent group of rank `m` and class
/// `k`, i.e. `w ∈ γ_{k+1}` of the free group.
pub fn is_identity_nmk(w: &FreeWord, m: u32, k: usize) -> Result<bool> {
    Ok(magnus_image(w, m, k)?.is_one())
}

/// `u = v` in the free nilpotent group of rank `m` and class `k`.
pub fn equal_nmk(u: &FreeWord, v: &FreeWord, m: u32, k: usize) -> Result<bool> {
    is_identity_nmk(&u.mul(&v.inverse()), m, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magnus::parse_word;

    fn image(text: &str, m: u32, k: usize) -> TruncatedSeries {
        magnus_image(&parse_word(text).unwrap(), m, k).unwrap()
    }

    #[test]
    fn empty_word_is_one() {
        assert!(image("1", 2, 3).is_one());
        assert_eq!(image("1", 2, 3).to_string(), "1");
    }

    #[test]
    fn inverse_generator() {
        let s = image("x1^-1", 1, 2);
        assert_eq!(s.to_string(), "1 - X1 + X1^2");
    }

    #[test]
    fn commutator_k2() {
        let s = image("[x1,x2]", 2, 2);
        assert_eq!(s.to_string(), "1 + X1 X2 - X2 X1");
    }

    #[test]
    fn generator_is_not_identity() {
        for (m, k) in [(1, 1), (3, 4)] {
            assert!(!is_identity_nmk(&parse_word("x1").unwrap(), m, k).unwrap());
        }
    }

    #[test]
    fn square_identity_class_two() {
        let w = parse_word("(x1 x2)^2 (x1^2 x2^2 [x2,x1])^-1").unwrap();
        assert!(is_identity_nmk(&w, 2, 2).unwrap());
        assert!(!is_identity_nmk(&w, 2, 3).unwrap());
    }

    #[test]
    fn series_inverse() {
        let s = image("x1 x2^-1 x1", 2, 4);
        assert!(s.mul(&s.inverse()).is_one());
        assert!(s.inverse().mul(&s).is_one());
    }

    #[test]
    fn rank_precondition() {
        assert!(magnus_image(&parse_word("x3").unwrap(), 2, 2).is_err());
    }

    #[test]
    fn monomial_order() {
        let a = Monomial(vec![2]);
        let b = Monomial(vec![1, 1]);
        assert!(a < b);
        assert!(Monomial(vec![1, 2]) < Monomial(vec![2, 1]));
    }
}
