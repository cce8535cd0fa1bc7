//! Asymmetric Landau states: Hermite-Laguerre-Gauss modes of a charged
//! particle in a magnetic field with broken axial symmetry.
//!
//! States are finite polynomials times a Gaussian envelope
//! ([`GaussianPolyState`]) and operators are polynomial-coefficient
//! differential operators ([`PolyDiffOperator`]), so commutators, eigenvalue
//! equations and inner products are evaluated exactly up to rounding.
//!
//! Units: `ω = 1`, `ρ_H = 1`, `m_e = 2`, so that `H_s = -¼∇² + r²`.

// `!(x <= tol)` style checks are deliberate: they reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod berry;
pub mod cli;
pub mod decompose;
pub mod error;
pub mod export;
pub mod fields;
pub mod gstate;
pub mod modes;
pub mod observables;
pub mod operators;
pub mod pattern;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use gstate::{inner_product, linear_combine, DensityGrid, GaussianPolyState, GridSpec, PolyDiffOperator};
pub use modes::{hlg_state, schwinger_state, Charge, ModeIndex, SymmetryConfig};
pub use operators::OperatorKind;
pub use specfun::HalfInt;
