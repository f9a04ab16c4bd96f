//! Free globular categories generated by loop-free cell complexes, with
//! morphisms stored as face-closed cell sets.

mod build;
mod category;
mod complex;
mod ops;
mod pasting;

pub use build::{build_composable_pair, build_cube, build_free_category, build_oriental, build_presented, thin_counterexample, Presented};
pub use category::{Meta, MorphId, Morphism, OmegaCategory, DEFAULT_BUDGET};
pub use complex::{word_label, Cell, CellComplex, CellId, LETTERS};
pub use ops::{bilocalize, path_shift, quotient};
pub use pasting::{evaluate, try_evaluate, Decomposer, PastingTree};
