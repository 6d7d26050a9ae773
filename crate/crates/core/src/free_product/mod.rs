//! Free products of copies of a factor group in syllable normal form.
//!
//! A reduced word alternates between copies and has no identity syllables;
//! every element has exactly one. Factors are free nilpotent groups (with
//! equality through truncated Magnus images) or finite Cayley-table groups.
//!
//! The bounded experiments here make claims about finite balls of words
//! only, and their reports carry the bounds used.

mod experiments;
mod factor;
mod word;

pub use experiments::{
    bounded_malnormality, embed_remark, example2_check, Example2Report, MalnormalityBounds,
    MalnormalityReport, MalnormalityWitness, DEFAULT_NODE_CAP,
};
pub use factor::{Factor, FiniteFactor, FreeNilpotentFactor, NilElem};
pub use word::{FPWord, FreeProduct, Syllable};

/// `p.normalize(raw)`.
pub fn fp_normalize<F: Factor>(
    p: &FreeProduct<F>,
    raw: impl IntoIterator<Item = Syllable<F::Elem>>,
) -> FPWord<F::Elem> {
    p.normalize(raw)
}

pub fn fp_mul<F: Factor>(p: &FreeProduct<F>, a: &FPWord<F::Elem>, b: &FPWord<F::Elem>) -> FPWord<F::Elem> {
    p.mul(a, b)
}

pub fn fp_inverse<F: Factor>(p: &FreeProduct<F>, a: &FPWord<F::Elem>) -> FPWord<F::Elem> {
    p.inverse(a)
}

pub fn fp_power<F: Factor>(p: &FreeProduct<F>, a: &FPWord<F::Elem>, n: i64) -> FPWord<F::Elem> {
    p.power(a, n)
}

pub fn cyclic_reduce<F: Factor>(
    p: &FreeProduct<F>,
    w: &FPWord<F::Elem>,
) -> (FPWord<F::Elem>, FPWord<F::Elem>) {
    p.cyclic_reduce(w)
}
