//! Exact computations with quasi-invariants of dihedral reflection systems.
//!
//! The crate builds the free basis of the ring of quasi-invariants over the
//! invariants of `I2(2N)` with two multiplicities, verifies it (quasi-invariance,
//! annihilation by the Calogero-Moser operator, freeness degree by degree) and
//! computes the Poincare and Hilbert series that predict its shape. All
//! arithmetic is exact.

pub mod bipoly;
pub mod calogero;
pub mod cli;
pub mod dihedral;
pub mod error;
pub mod generators;
pub mod modstruct;
pub mod poincare;
pub mod quasi;
pub mod scalars;

pub use bipoly::{BiPoly, CycloPoly, LineIndex, Monomial, RatPoly};
pub use dihedral::DihedralSystem;
pub use error::{Error, Result};
pub use generators::{full_basis, GeneratorSet, Provenance};
pub use scalars::{CycloElem, CyclotomicField, ExactMatrix, Rational};
