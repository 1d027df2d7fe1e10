//! Computational objects behind PPAD: circuit-defined End-of-line
//! instances, Sperner colourings, two-dimensional discrete Brouwer
//! functions, and exact Nash equilibrium solvers and verifiers.
//!
//! Everything is exact: payoffs and probabilities are arbitrary-precision
//! rationals, and every exponential object ships with a brute-force
//! oracle so reductions and solvers can be cross-checked on small inputs.

pub mod circuit;
pub mod dbf;
pub mod error;
pub mod games;
pub mod reductions;
pub mod solvers;
pub mod sperner;
pub mod total_search;

pub use circuit::{BitString, BooleanCircuit, Gate};
pub use dbf::{decode_solution, eol_to_dbf, find_panchromatic, DbfInstance, PanchromaticPoint};
pub use error::{Error, Result};
pub use games::{BimatrixGame, MixedProfile, NashVerdict, NormalFormGame, Rational};
pub use reductions::SymmetrizationCertificate;
pub use sperner::{Colour, Half, SpernerInstance, TriangleRef};
pub use total_search::{EndOfLineInstance, EolSolution, SolutionKind};
