use std::collections::{HashMap, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::factor::{Factor, FiniteFactor, FreeNilpotentFactor};
use super::word::{FPWord, FreeProduct, Syllable};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};

pub const DEFAULT_NODE_CAP: u64 = 1_000_000;

/// Image of `w ∈ ∗^m A` in `A ∗ A`: copy 0 is kept and copy `i ≥ 1` is sent
/// into copy 1 conjugated by `a_i = x1^i` from copy 0. The target is
/// `FreeProduct::copies(A, 2)`.
pub fn embed_remark(
    source: &FreeProduct<FreeNilpotentFactor>,
    w: &FPWord<<FreeNilpotentFactor as Factor>::Elem>,
) -> Result<FPWord<<FreeNilpotentFactor as Factor>::Elem>> {
    let a = *source.factor(0);
    if source.copy_count() < 2 {
        return Err(Error::Precondition(
            "the embedding needs at least two copies".into(),
        ));
    }
    if (1..source.copy_count()).any(|c| *source.factor(c) != a) {
        return Err(Error::Precondition(
            "the embedding needs copies of one factor".into(),
        ));
    }
    let target = FreeProduct::copies(a, 2);
    let mut raw = Vec::new();
    for (copy, e) in w.syllables() {
        if *copy == 0 {
            raw.push((0, e.clone()));
        } else {
            let i = *copy as i64;
            raw.push((0, a.generator_power(1, -i)));
            raw.push((1, e.clone()));
            raw.push((0, a.generator_power(1, i)));
        }
    }
    Ok(target.normalize(raw))
}

/// Bounds for [`bounded_malnormality`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MalnormalityBounds {
    /// Maximal syllable length of the conjugator `x`.
    pub radius: usize,
    /// Exponents `n, m` range over `1 ≤ |n|, |m| ≤ exp_bound`.
    pub exp_bound: i64,
    /// Seed for the extra random alphabet elements.
    pub seed: u64,
    /// Extra random factor elements added per copy.
    pub extra_samples: usize,
    pub node_cap: u64,
}

impl Default for MalnormalityBounds {
    fn default() -> Self {
        MalnormalityBounds {
            radius: 3,
            exp_bound: 3,
            seed: 0,
            extra_samples: 0,
            node_cap: DEFAULT_NODE_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MalnormalityWitness {
    pub x: String,
    pub n: i64,
    pub m: i64,
}

/// Outcome of a bounded search. `holds` is a statement about the searched
/// ball only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MalnormalityReport {
    pub holds: bool,
    pub z: String,
    pub bounds: MalnormalityBounds,
    /// Alphabet per copy, formatted as syllables.
    pub alphabet: Vec<Vec<String>>,
    pub words_checked: u64,
    pub witness: Option<MalnormalityWitness>,
}

/// `1, -1, 2, -2, …, n, -n`.
fn signed_range(n: i64) -> impl Iterator<Item = i64> {
    (1..=n).flat_map(|i| [i, -i])
}

/// Searches for `x` of syllable length at most `radius`, outside
/// `{z^j : |j| ≤ exp_bound·radius}`, with `x⁻¹ zⁿ x = zᵐ` for
/// `1 ≤ |n|, |m| ≤ exp_bound`. Conjugators are reduced words whose syllables
/// come from each factor's [`Factor::alphabet`], the syllables of `z` and
/// their inverses, and `extra_samples` seeded random elements. The first
/// witness in (length, alphabet order) is reported.
pub fn bounded_malnormality<F: Factor>(
    p: &FreeProduct<F>,
    z: &FPWord<F::Elem>,
    bounds: MalnormalityBounds,
) -> Result<MalnormalityReport> {
    if z.len() < 2 || !z.is_cyclically_reduced() {
        return Err(Error::Precondition(format!(
            "z = {} must be cyclically reduced of syllable length at least 2",
            p.format(z)
        )));
    }
    let alphabet = build_alphabet(p, z, &bounds);
    let first_syllables: Vec<Syllable<F::Elem>> = alphabet
        .iter()
        .enumerate()
        .flat_map(|(c, es)| es.iter().map(move |e| (c, e.clone())))
        .collect();

    let excluded: HashSet<FPWord<F::Elem>> = (-(bounds.exp_bound * bounds.radius as i64)
        ..=bounds.exp_bound * bounds.radius as i64)
        .map(|j| p.power(z, j))
        .collect();
    let targets: HashMap<FPWord<F::Elem>, i64> = signed_range(bounds.exp_bound)
        .map(|m| (p.power(z, m), m))
        .collect();
    let z_powers: Vec<(i64, FPWord<F::Elem>)> = signed_range(bounds.exp_bound)
        .map(|n| (n, p.power(z, n)))
        .collect();

    let search = Search {
        p,
        alphabet: &alphabet,
        excluded: &excluded,
        targets: &targets,
        z_powers: &z_powers,
        counter: AtomicU64::new(0),
        cap: bounds.node_cap,
    };
    let mut witness = None;
    for len in 1..=bounds.radius {
        let found: Vec<Option<Hit<F::Elem>>> = first_syllables
            .par_iter()
            .map(|s| {
                let mut prefix = vec![s.clone()];
                search.dfs(&mut prefix, len)
            })
            .collect::<Result<_>>()?;
        if let Some((x, n, m)) = found.into_iter().flatten().next() {
            witness = Some(MalnormalityWitness {
                x: p.format(&x),
                n,
                m,
            });
            break;
        }
    }
    Ok(MalnormalityReport {
        holds: witness.is_none(),
        z: p.format(z),
        bounds,
        alphabet: alphabet
            .iter()
            .enumerate()
            .map(|(c, es)| {
                es.iter()
                    .map(|e| format!("{c}:{}", p.factor(c).format_elem(e)))
                    .collect()
            })
            .collect(),
        words_checked: search.counter.load(Ordering::Relaxed),
        witness,
    })
}

fn build_alphabet<F: Factor>(
    p: &FreeProduct<F>,
    z: &FPWord<F::Elem>,
    bounds: &MalnormalityBounds,
) -> Vec<Vec<F::Elem>> {
    let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
    (0..p.copy_count())
        .map(|c| {
            let f = p.factor(c);
            let mut letters = f.alphabet();
            for (zc, e) in z.syllables() {
                if *zc == c {
                    letters.push(e.clone());
                    letters.push(f.inv(e));
                }
            }
            letters.extend((0..bounds.extra_samples).map(|_| f.random_elem(&mut rng)));
            let mut seen = HashSet::new();
            letters.retain(|e| !f.is_identity(e) && seen.insert(e.clone()));
            letters
        })
        .collect()
}

type Hit<E> = (FPWord<E>, i64, i64);

struct Search<'a, F: Factor> {
    p: &'a FreeProduct<F>,
    alphabet: &'a [Vec<F::Elem>],
    excluded: &'a HashSet<FPWord<F::Elem>>,
    targets: &'a HashMap<FPWord<F::Elem>, i64>,
    z_powers: &'a [(i64, FPWord<F::Elem>)],
    counter: AtomicU64,
    cap: u64,
}

impl<F: Factor> Search<'_, F> {
    fn dfs(&self, prefix: &mut Vec<Syllable<F::Elem>>, len: usize) -> Result<Option<Hit<F::Elem>>> {
        if prefix.len() == len {
            if self.counter.fetch_add(1, Ordering::Relaxed) >= self.cap {
                return Err(Error::BudgetExceeded {
                    cap: self.cap as usize,
                });
            }
            return Ok(self.check(self.p.normalize(prefix.iter().cloned())));
        }
        let last = prefix.last().map(|s| s.0);
        for (c, es) in self.alphabet.iter().enumerate() {
            if Some(c) == last {
                continue;
            }
            for e in es {
                prefix.push((c, e.clone()));
                let hit = self.dfs(prefix, len)?;
                prefix.pop();
                if hit.is_some() {
                    return Ok(hit);
                }
            }
        }
        Ok(None)
    }

    fn check(&self, x: FPWord<F::Elem>) -> Option<Hit<F::Elem>> {
        if self.excluded.contains(&x) {
            return None;
        }
        self.z_powers.iter().find_map(|(n, zn)| {
            self.targets
                .get(&self.p.conjugate(zn, &x))
                .map(|&m| (x.clone(), *n, m))
        })
    }
}

/// Outcome of the involution computation in `A ∗ B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Example2Report {
    pub holds: bool,
    pub x: Elem,
    pub y: Elem,
    /// Normal form of `x⁻¹(xy)x`.
    pub conjugate: String,
    /// Normal form of `(xy)⁻¹`.
    pub inverse: String,
}

fn involution(g: &FiniteGroup, chosen: Option<Elem>, label: &str) -> Result<Elem> {
    let is_involution = |e: Elem| !g.is_identity(e) && g.is_identity(g.mul(e, e));
    match chosen {
        Some(e) if e < g.order() && is_involution(e) => Ok(e),
        Some(e) => Err(Error::Precondition(format!(
            "{label} = {e} is not an involution of {}",
            g.name()
        ))),
        None => g
            .elements()
            .find(|&e| is_involution(e))
            .ok_or_else(|| Error::Precondition(format!("{} has no involution", g.name()))),
    }
}

/// With involutions `x ∈ A`, `y ∈ B` (the first ones if not given), checks
/// `x⁻¹(xy)x = yx = (xy)⁻¹` in `A ∗ B` by normal forms.
pub fn example2_check(
    a: &FiniteGroup,
    x: Option<Elem>,
    b: &FiniteGroup,
    y: Option<Elem>,
) -> Result<Example2Report> {
    let x = involution(a, x, "x")?;
    let y = involution(b, y, "y")?;
    let p = FreeProduct::new(vec![FiniteFactor::new(a.clone()), FiniteFactor::new(b.clone())]);
    let xw = p.syllable(0, x);
    let xy = p.normalize([(0, x), (1, y)]);
    let yx = p.normalize([(1, y), (0, x)]);
    let conjugate = p.conjugate(&xy, &xw);
    let inverse = p.inverse(&xy);
    Ok(Example2Report {
        holds: conjugate == yx && inverse == yx,
        x,
        y,
        conjugate: p.format(&conjugate),
        inverse: p.format(&inverse),
    })
}
