//! Words in free groups and exact equality in free nilpotent groups.
//!
//! Equality in the free nilpotent group of rank `m` and class `k` is decided
//! by the Magnus expansion `x_i ↦ 1 + X_i` into noncommutative polynomials
//! truncated at degree `k`: a word is trivial there iff its image is `1`.
//! For class 2 an independent collection procedure gives canonical
//! coordinates.

mod collect;
mod series;
mod word;

pub use collect::{collect_class2, Class2Coordinates};
pub use series::{equal_nmk, is_identity_nmk, magnus_image, Monomial, TruncatedSeries};
pub use word::{parse_word, FreeWord, Letter};

/// Rank, class and word-length limits applied to command-line input. The
/// library itself accepts larger values.
pub const CLI_MAX_RANK: u32 = 6;
pub const CLI_MAX_CLASS: usize = 6;
pub const CLI_MAX_WORD_LENGTH: usize = 64;
