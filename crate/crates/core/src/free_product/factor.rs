use std::fmt::Debug;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::magnus::{
    collect_class2, magnus_image, parse_word, Class2Coordinates, FreeWord, Letter, TruncatedSeries,
};

/// A group usable as a free factor.
pub trait Factor: Clone + Send + Sync {
    type Elem: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    fn identity(&self) -> Self::Elem;
    fn is_identity(&self, a: &Self::Elem) -> bool;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// Parses one element; parse errors report positions within `text`.
    fn parse_elem(&self, text: &str) -> Result<Self::Elem>;
    fn format_elem(&self, a: &Self::Elem) -> String;
    /// Small fixed set of non-identity elements used to seed bounded searches.
    fn alphabet(&self) -> Vec<Self::Elem>;
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    /// Whether every non-identity element has infinite order.
    fn is_torsion_free(&self) -> bool;
}

/// An element of a free nilpotent group. Equality, ordering and hashing use
/// the truncated Magnus image only; `word` is one representative.
#[derive(Debug, Clone)]
pub struct NilElem {
    pub series: TruncatedSeries,
    pub coords: Option<Class2Coordinates>,
    pub word: FreeWord,
}

impl PartialEq for NilElem {
    fn eq(&self, other: &Self) -> bool {
        self.series == other.series
    }
}

impl Eq for NilElem {}

impl Hash for NilElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.series.hash(state);
    }
}

impl PartialOrd for NilElem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for NilElem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.series.cmp(&other.series)
    }
}

/// The free nilpotent group of rank `m` and class `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreeNilpotentFactor {
    pub m: u32,
    pub k: usize,
}

impl FreeNilpotentFactor {
    pub fn new(m: u32, k: usize) -> Result<Self> {
        if m == 0 || k == 0 {
            return Err(Error::BadParams(format!(
                "free nilpotent factor needs m >= 1 and k >= 1, got m={m}, k={k}"
            )));
        }
        Ok(FreeNilpotentFactor { m, k })
    }

    /// The element represented by `w`. For `k ≤ 2` the stored word is the
    /// collected normal form.
    pub fn element(&self, w: &FreeWord) -> Result<NilElem> {
        let series = magnus_image(w, self.m, self.k)?;
        if self.k > 2 {
            return Ok(NilElem {
                series,
                coords: None,
                word: w.clone(),
            });
        }
        let mut coords = collect_class2(w, self.m)?;
        if self.k == 1 {
            coords.commutator_coords.iter_mut().for_each(|c| *c = 0);
        }
        Ok(NilElem {
            series,
            word: coords.to_word(),
            coords: Some(coords),
        })
    }

    /// `x_i^e` with `1 ≤ i ≤ m`.
    pub fn generator_power(&self, i: u32, e: i64) -> NilElem {
        self.element(&FreeWord::generator(i).pow(e))
            .expect("generator within rank")
    }
}

impl Factor for FreeNilpotentFactor {
    type Elem = NilElem;

    fn identity(&self) -> NilElem {
        self.element(&FreeWord::identity()).unwrap()
    }

    fn is_identity(&self, a: &NilElem) -> bool {
        a.series.is_one()
    }

    fn mul(&self, a: &NilElem, b: &NilElem) -> NilElem {
        self.element(&a.word.mul(&b.word)).unwrap()
    }

    fn inv(&self, a: &NilElem) -> NilElem {
        self.element(&a.word.inverse()).unwrap()
    }

    fn parse_elem(&self, text: &str) -> Result<NilElem> {
        self.element(&parse_word(text)?)
    }

    fn format_elem(&self, a: &NilElem) -> String {
        match &a.coords {
            Some(c) => c.to_string(),
            None => a.word.to_string(),
        }
    }

    fn alphabet(&self) -> Vec<NilElem> {
        (1..=self.m.min(2))
            .flat_map(|i| [self.generator_power(i, 1), self.generator_power(i, -1)])
            .collect()
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> NilElem {
        let len = rng.random_range(1..=4);
        let letters = (0..len).map(|_| {
            Letter::new(
                rng.random_range(1..=self.m),
                if rng.random_bool(0.5) { 1 } else { -1 },
            )
        });
        self.element(&FreeWord::from_letters(letters)).unwrap()
    }

    fn is_torsion_free(&self) -> bool {
        true
    }
}

/// A finite group given by its Cayley table.
#[derive(Debug, Clone)]
pub struct FiniteFactor {
    pub group: Arc<FiniteGroup>,
}

impl FiniteFactor {
    pub fn new(group: FiniteGroup) -> Self {
        FiniteFactor {
            group: Arc::new(group),
        }
    }
}

impl Factor for FiniteFactor {
    type Elem = Elem;

    fn identity(&self) -> Elem {
        self.group.identity()
    }

    fn is_identity(&self, a: &Elem) -> bool {
        self.group.is_identity(*a)
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.group.mul(*a, *b)
    }

    fn inv(&self, a: &Elem) -> Elem {
        self.group.inv(*a)
    }

    /// `#index`.
    fn parse_elem(&self, text: &str) -> Result<Elem> {
        let start = text.len() - text.trim_start().len();
        let body = text.trim();
        let digits = body
            .strip_prefix('#')
            .ok_or_else(|| Error::parse_at(start, "expected '#index'"))?;
        let index: Elem = digits
            .parse()
            .map_err(|_| Error::parse_at(start + 1, "expected an element index"))?;
        if index >= self.group.order() {
            return Err(Error::parse_at(
                start + 1,
                format!("index {index} out of range for order {}", self.group.order()),
            ));
        }
        Ok(index)
    }

    fn format_elem(&self, a: &Elem) -> String {
        format!("#{a}")
    }

    fn alphabet(&self) -> Vec<Elem> {
        self.group.nontrivial_elements().collect()
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        rng.random_range(0..self.group.order())
    }

    fn is_torsion_free(&self) -> bool {
        self.group.order() == 1
    }
}
