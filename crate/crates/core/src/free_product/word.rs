use rand::Rng;

use super::factor::Factor;
use crate::error::{Error, Result};

/// `(copy index, factor element)`.
pub type Syllable<E> = (usize, E);

/// A reduced free-product word: no identity syllables and no two adjacent
/// syllables from the same copy. Only [`FreeProduct`] builds these.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FPWord<E> {
    syllables: Vec<Syllable<E>>,
}

impl<E> FPWord<E> {
    pub fn identity() -> Self {
        FPWord {
            syllables: Vec::new(),
        }
    }

    pub fn syllables(&self) -> &[Syllable<E>] {
        &self.syllables
    }

    /// Syllable length.
    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    /// First and last syllables lie in different copies, or length ≤ 1.
    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.syllables.first(), self.syllables.last()) {
            (Some(a), Some(b)) if self.syllables.len() > 1 => a.0 != b.0,
            _ => true,
        }
    }
}

/// The free product `F_0 ∗ F_1 ∗ ⋯ ∗ F_{r-1}`.
#[derive(Debug, Clone)]
pub struct FreeProduct<F: Factor> {
    factors: Vec<F>,
}

impl<F: Factor> FreeProduct<F> {
    /// # Panics
    ///
    /// If `factors` is empty.
    pub fn new(factors: Vec<F>) -> Self {
        assert!(!factors.is_empty(), "a free product needs at least one factor");
        FreeProduct { factors }
    }

    /// `r` copies of `factor`.
    pub fn copies(factor: F, r: usize) -> Self {
        FreeProduct::new(vec![factor; r])
    }

    pub fn copy_count(&self) -> usize {
        self.factors.len()
    }

    pub fn factor(&self, copy: usize) -> &F {
        &self.factors[copy]
    }

    /// Merges adjacent same-copy syllables and drops identities.
    ///
    /// # Panics
    ///
    /// If a copy index is out of range.
    pub fn normalize(&self, raw: impl IntoIterator<Item = Syllable<F::Elem>>) -> FPWord<F::Elem> {
        let mut out: Vec<Syllable<F::Elem>> = Vec::new();
        for (copy, e) in raw {
            let f = &self.factors[copy];
            match out.last_mut() {
                Some((c, top)) if *c == copy => {
                    let merged = f.mul(top, &e);
                    if f.is_identity(&merged) {
                        out.pop();
                    } else {
                        *top = merged;
                    }
                }
                _ => {
                    if !f.is_identity(&e) {
                        out.push((copy, e));
                    }
                }
            }
        }
        FPWord { syllables: out }
    }

    pub fn syllable(&self, copy: usize, e: F::Elem) -> FPWord<F::Elem> {
        self.normalize([(copy, e)])
    }

    pub fn mul(&self, a: &FPWord<F::Elem>, b: &FPWord<F::Elem>) -> FPWord<F::Elem> {
        self.normalize(a.syllables.iter().chain(&b.syllables).cloned())
    }

    pub fn inverse(&self, a: &FPWord<F::Elem>) -> FPWord<F::Elem> {
        FPWord {
            syllables: a
                .syllables
                .iter()
                .rev()
                .map(|(c, e)| (*c, self.factors[*c].inv(e)))
                .collect(),
        }
    }

    pub fn power(&self, a: &FPWord<F::Elem>, n: i64) -> FPWord<F::Elem> {
        let base = if n < 0 { self.inverse(a) } else { a.clone() };
        let mut out = FPWord::identity();
        for _ in 0..n.unsigned_abs() {
            out = self.mul(&out, &base);
        }
        out
    }

    /// `x⁻¹ a x`.
    pub fn conjugate(&self, a: &FPWord<F::Elem>, x: &FPWord<F::Elem>) -> FPWord<F::Elem> {
        self.mul(&self.mul(&self.inverse(x), a), x)
    }

    /// Returns `(core, conjugator)` with `w = conjugator · core · conjugator⁻¹`
    /// and `core` cyclically reduced.
    pub fn cyclic_reduce(&self, w: &FPWord<F::Elem>) -> (FPWord<F::Elem>, FPWord<F::Elem>) {
        let mut core = w.clone();
        let mut conjugator = FPWord::identity();
        while !core.is_cyclically_reduced() {
            let first = FPWord {
                syllables: vec![core.syllables[0].clone()],
            };
            core = self.conjugate(&core, &first);
            conjugator = self.mul(&conjugator, &first);
        }
        (core, conjugator)
    }

    /// Parses `0:x1x2 | 1:[x1,x2]`; `1` or an empty string is the identity.
    pub fn parse(&self, text: &str) -> Result<FPWord<F::Elem>> {
        if matches!(text.trim(), "" | "1") {
            return Ok(FPWord::identity());
        }
        let mut raw = Vec::new();
        let mut offset = 0;
        for part in text.split('|') {
            let colon = part.find(':').ok_or_else(|| {
                Error::parse_at(
                    offset + part.len() - part.trim_start().len(),
                    "expected 'copy:element'",
                )
            })?;
            let copy_text = part[..colon].trim();
            let copy_start = offset + part.len() - part.trim_start().len();
            let copy: usize = copy_text
                .parse()
                .map_err(|_| Error::parse_at(copy_start, "expected a copy index"))?;
            if copy >= self.factors.len() {
                return Err(Error::parse_at(
                    copy_start,
                    format!("copy {copy} out of range for {} copies", self.factors.len()),
                ));
            }
            let elem_start = offset + colon + 1;
            let e = self.factors[copy]
                .parse_elem(&part[colon + 1..])
                .map_err(|err| shift(err, elem_start))?;
            raw.push((copy, e));
            offset += part.len() + 1;
        }
        Ok(self.normalize(raw))
    }

    /// Inverse of [`FreeProduct::parse`].
    pub fn format(&self, w: &FPWord<F::Elem>) -> String {
        if w.is_identity() {
            return "1".to_string();
        }
        w.syllables
            .iter()
            .map(|(c, e)| format!("{c}:{}", self.factors[*c].format_elem(e)))
            .collect::<Vec<_>>()
            .join(" | ")
    }

    /// Random reduced word with at most `max_syllables` syllables.
    pub fn random_word<R: Rng + ?Sized>(&self, rng: &mut R, max_syllables: usize) -> FPWord<F::Elem> {
        let len = rng.random_range(0..=max_syllables);
        let raw: Vec<_> = (0..len)
            .map(|_| {
                let c = rng.random_range(0..self.factors.len());
                (c, self.factors[c].random_elem(rng))
            })
            .collect();
        self.normalize(raw)
    }
}

fn shift(err: Error, by: usize) -> Error {
    match err {
        Error::Parse {
            line,
            column,
            message,
        } => Error::Parse {
            line,
            column: column + by,
            message,
        },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_product::{FiniteFactor, FreeNilpotentFactor};
    use crate::group::{build_family, FamilySpec};

    fn nil(r: usize) -> FreeProduct<FreeNilpotentFactor> {
        FreeProduct::copies(FreeNilpotentFactor::new(2, 2).unwrap(), r)
    }

    fn c2c2() -> FreeProduct<FiniteFactor> {
        FreeProduct::copies(
            FiniteFactor::new(build_family(&FamilySpec::Cyclic(2)).unwrap()),
            2,
        )
    }

    #[test]
    fn cancellation() {
        let p = nil(2);
        let w = p.parse("0:x1 x2 | 0:x2^-1 x1^-1").unwrap();
        assert!(w.is_identity());
        let w = p.parse("0:x1 | 1:1 | 0:x2").unwrap();
        assert_eq!(p.format(&w), "0:x1 x2");
    }

    #[test]
    fn reduced_word_unchanged() {
        let p = c2c2();
        let w = p.parse("0:#1 | 1:#1 | 0:#1 | 1:#1").unwrap();
        assert_eq!(w.len(), 4);
    }

    #[test]
    fn involution_conjugation() {
        let p = c2c2();
        let x = p.parse("0:#1").unwrap();
        let xy = p.parse("0:#1 | 1:#1").unwrap();
        let lhs = p.conjugate(&xy, &x);
        assert_eq!(p.format(&lhs), "1:#1 | 0:#1");
        assert_eq!(lhs, p.inverse(&xy));
    }

    #[test]
    fn power_alternates() {
        let p = nil(2);
        let w = p.parse("0:x1 | 1:x2").unwrap();
        assert_eq!(p.power(&w, 3).len(), 6);
        assert_eq!(p.power(&w, -2).len(), 4);
        assert!(p.power(&w, 0).is_identity());
    }

    #[test]
    fn cyclic_reduction() {
        let p = nil(2);
        let w = p.parse("0:x1 | 1:x2 | 0:x1^-1").unwrap();
        let (core, conj) = p.cyclic_reduce(&w);
        assert_eq!(p.format(&core), "1:x2");
        assert_eq!(p.format(&conj), "0:x1");
        let w = p.parse("0:x1 | 1:x2 | 0:x2").unwrap();
        let (core, conj) = p.cyclic_reduce(&w);
        assert_eq!(core.len(), 2);
        assert!(core.is_cyclically_reduced());
        let back = p.mul(&p.mul(&conj, &core), &p.inverse(&conj));
        assert_eq!(back, w);
    }

    #[test]
    fn parse_errors() {
        let p = nil(2);
        for (text, column) in [("2:x1", 1), ("0 x1", 1), ("0:x1 | 1:x0", 10), ("0:x1 |x", 7)] {
            match p.parse(text) {
                Err(Error::Parse { column: c, .. }) => assert_eq!(c, column, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn format_round_trip() {
        let p = nil(3);
        let w = p.parse("0:x1x2 | 1:[x1,x2] | 2:x1^-1 | 0:x2").unwrap();
        assert_eq!(p.parse(&p.format(&w)).unwrap(), w);
    }
}
