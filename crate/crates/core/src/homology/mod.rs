//! Exact integer homology of chain complexes and quotient complexes.

mod calcul;
mod chain;
mod checks;
mod corner;
pub mod linalg;

pub use calcul::{calcul_crosscheck, simplicial_complex, simplicial_nerve, CalculReport, CalculRow, Simplex};
pub use checks::{check_functor, diff_formula_check, invariance_check, push_forward, DiffReport};
pub use chain::{free_homology, quotient_homology, ChainComplex, Group, HomologySummary, QuotientComplex, SparseVec};
pub use corner::{formal_complex, CornerComplex, Side, TSolver};
