//! Decision procedures for nilpotency-transitive (`NT_k`) and conjugately
//! separated nilpotent (`CSN_k`) finite groups, exact word arithmetic in free
//! nilpotent groups through truncated Magnus expansions, and normal forms in
//! free products of copies of a factor group.
//!
//! Module map:
//!
//! * [`group`]: finite groups as Cayley tables, subgroups, central series.
//! * [`nilk`]: the `Q(x, y)` predicate, `C^k_G(x)`, the universal sentences
//!   and the `NT_k` / `CSN_k` deciders.
//! * [`magnus`]: words in free groups, truncated Magnus series, class-2
//!   collection.
//! * [`free_product`]: reduced syllable words in free products.
//! * [`harness`]: the default corpus and exhaustive proposition checks.
//! * [`report`]: serializable analysis reports.

pub mod error;
pub mod free_product;
pub mod group;
pub mod harness;
pub mod magnus;
pub mod nilk;
pub mod report;

pub use error::{Error, Result};
pub use group::{
    center, central_series, left_normed_commutator, nilpotency_class, normal_closure, subgroup_generate,
    CentralSeries, Class, Direction, Elem, FamilySpec, FiniteGroup, Subgroup,
};
pub use nilk::{Verdict, Witness, WitnessKind};
