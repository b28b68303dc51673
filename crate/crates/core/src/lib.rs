//! Spinorized Holstein-Primakoff mapping of a truncated boson onto a spin,
//! the M-atom Jaynes-Cummings model built from it, its block spectra and
//! the classical phase space of the two-spin limit.

// Negated comparisons also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classical;
pub mod error;
pub mod model;
pub mod spectra;
pub mod spin_algebra;

pub use error::{Error, Result};
pub use model::{ModelParams, ProductBasis, SymmetryBlock};
pub use spectra::{Approximation, CouplingKind, Spectrum};
pub use spin_algebra::{BasisTag, HalfInteger, OperatorMatrix};
