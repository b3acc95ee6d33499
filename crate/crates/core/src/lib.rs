//! Exact deformation quantization on polynomial phase-space observables.
//!
//! The crate provides:
//!
//! * exact rational arithmetic on polynomials in `x1..xn`, `p1..pn` and the
//!   formal deformation parameter `h` ([`PhasePoly`], [`HbarPoly`]);
//! * the Moyal (Weyl-ordered) star product for any number of canonical pairs,
//!   the standard-ordered star product on the plane, the Poisson bracket and
//!   the gauge operator `exp(+/-(h/2) d^2/dx dp)` relating the two products
//!   ([`star`]);
//! * the algebra of infinite matrices over `Q[h]` with entries above the
//!   diagonal divisible by `h^(j-i)`, represented exactly in the `E(a,b)`
//!   basis ([`EBasisElement`]) and as truncated dense corners
//!   ([`DenseMatrix`]), together with the algebra isomorphisms `phi` and `psi`;
//! * a small expression language for star-product expressions ([`expr`]).
//!
//! Everything is `no_std` with `alloc`; all arithmetic is exact.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;
pub mod expr;
mod hbar;
pub mod matrix;
mod phase;
mod scalar;
pub mod star;

pub use error::Error;
pub use hbar::{HbarPoly, Valuation};
pub use matrix::{DenseMatrix, EBasisElement, MembershipViolation};
pub use phase::{Monomial, PhasePoly, PhaseVar, MAX_EXPONENT};
pub use scalar::{binomial, factorial, falling_factorial, Rational};

pub type Result<T, E = Error> = core::result::Result<T, E>;
