//! The cubical singular nerve of a finite globular category.

mod axioms;
mod cube;
mod enumerate;
mod fill;
pub mod shapes;

pub use axioms::{axiom_report, axiom_report_with, AxiomReport, CubeOps, NerveOps, Sampling};
pub use cube::{classify, compose_cubes, is_branching, is_functor, is_merging, is_thin, CubeClass, SingularCube};
pub use enumerate::{brute_force_cubes, Filter, Nerve};
pub use fill::{fill_shell, fill_thin, fill_with, Shell};
