//! Exact computations around the cascade of strongly orthogonal roots in a
//! restricted root system: the layer decomposition of the nilradical of a
//! minimal parabolic, the Pfaffian polynomial that controls stepwise square
//! integrability, the quasi-center determinant, and the modular weights that
//! they produce.  All root and polynomial arithmetic is over `BigRational`;
//! floating point appears only in [`sqint`], which verifies the Heisenberg
//! special case of the character and inversion formulas by quadrature.

pub mod cascade;
pub mod error;
pub mod linalg;
pub mod nilalg;
pub mod pfpoly;
pub mod realform;
pub mod rootsys;
pub mod sqint;
pub mod verify;

pub use error::{Error, Result};

/// Exact scalar used everywhere outside the quadrature module.
pub type Rat = num_rational::BigRational;
