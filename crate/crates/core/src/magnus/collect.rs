use std::fmt;

use serde::{Deserialize, Serialize};

use super::word::{FreeWord, Letter};
use crate::error::{Error, Result};

/// Normal form `x₁^{e₁} ⋯ x_m^{e_m} ∏_{i<j} [x_j, x_i]^{c_{ji}}` in the free
/// nilpotent group of class 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Class2Coordinates {
    pub exponents: Vec<i64>,
    /// `c_{ji}` for `1 ≤ i < j ≤ m`, ordered `(2,1), (3,1), (3,2), (4,1), …`.
    pub commutator_coords: Vec<i64>,
}

fn pair_index(j: u32, i: u32) -> usize {
    debug_assert!(i < j);
    let (j, i) = (j as usize, i as usize);
    (j - 1) * (j - 2) / 2 + (i - 1)
}

impl Class2Coordinates {
    pub fn zero(m: u32) -> Self {
        let m = m as usize;
        Class2Coordinates {
            exponents: vec![0; m],
            commutator_coords: vec![0; m * m.saturating_sub(1) / 2],
        }
    }

    pub fn rank(&self) -> u32 {
        self.exponents.len() as u32
    }

    /// `c_{ji}`, the exponent of `[x_j, x_i]`, for `i < j`.
    pub fn commutator(&self, j: u32, i: u32) -> i64 {
        self.commutator_coords[pair_index(j, i)]
    }

    pub fn is_identity(&self) -> bool {
        self.exponents
            .iter()
            .chain(&self.commutator_coords)
            .all(|&c| c == 0)
    }

    /// A word with these coordinates.
    pub fn to_word(&self) -> FreeWord {
        let m = self.rank();
        let mut letters = Vec::new();
        for (i, &e) in self.exponents.iter().enumerate() {
            let l = Letter::new(i as u32 + 1, if e < 0 { -1 } else { 1 });
            letters.extend(std::iter::repeat_n(l, e.unsigned_abs() as usize));
        }
        let mut w = FreeWord::from_letters(letters);
        for j in 2..=m {
            for i in 1..j {
                let c = self.commutator(j, i);
                let comm = FreeWord::commutator(&FreeWord::generator(j), &FreeWord::generator(i));
                w = w.mul(&comm.pow(c));
            }
        }
        w
    }
}

impl fmt::Display for Class2Coordinates {
    /// `x1^2 x2 [x2,x1]^-1`, or `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let power = |base: String, e: i64| {
            if e == 1 {
                base
            } else {
                format!("{base}^{e}")
            }
        };
        for (i, &e) in self.exponents.iter().enumerate() {
            if e != 0 {
                parts.push(power(format!("x{}", i + 1), e));
            }
        }
        for j in 2..=self.rank() {
            for i in 1..j {
                let c = self.commutator(j, i);
                if c != 0 {
                    parts.push(power(format!("[x{j},x{i}]"), c));
                }
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// Collects `w` into class-2 normal form by repeatedly rewriting an adjacent
/// `y^a x^b` with `y > x` as `x^b y^a` and recording `[y, x]^{ab}`, which is
/// central. Each swap removes one inversion, so the loop terminates.
pub fn collect_class2(w: &FreeWord, m: u32) -> Result<Class2Coordinates> {
    if w.rank_used() > m {
        return Err(Error::Precondition(format!(
            "word uses x{} but the rank is {m}",
            w.rank_used()
        )));
    }
    let mut coords = Class2Coordinates::zero(m);
    let mut letters: Vec<Letter> = w.letters().to_vec();
    let mut swapped = true;
    while swapped {
        swapped = false;
        for p in 1..letters.len() {
            let (y, x) = (letters[p - 1], letters[p]);
            if y.generator > x.generator {
                coords.commutator_coords[pair_index(y.generator, x.generator)] +=
                    i64::from(y.sign) * i64::from(x.sign);
                letters.swap(p - 1, p);
                swapped = true;
            }
        }
    }
    for l in letters {
        coords.exponents[l.generator as usize - 1] += i64::from(l.sign);
    }
    Ok(coords)
}
