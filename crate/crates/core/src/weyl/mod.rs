//! Exact arithmetic in the divided-power Weyl algebra and its action on
//! quotients of the polynomial ring by a face ideal.
//!
//! The algebra is generated over the coefficient field by the variables
//! `x[i]` and the divided powers `d[i]^(k)` of the partial derivatives,
//! subject to the usual relations.  Working with divided powers keeps every
//! computation exact in positive characteristic, where `d[i]^k = k! d[i]^(k)`
//! would otherwise vanish for k >= p.
//!
//! Submodules:
//! - [`field`]: the coefficient fields (exact rationals or a prime field)
//!   and exact binomial coefficients.
//! - [`element`]: normal-form operators and their product.
//! - [`action`]: the action on polynomials, reduction modulo a face ideal,
//!   and the membership tests for operators that descend to the quotient.
//! - [`text`]: a printable text form with an exact round-tripping parser.

mod action;
mod element;
mod field;
mod text;

use crate::simplicial::Face;
use thiserror::Error;

pub use action::{
    apply, d_ring_basis_up_to, default_degree_bound, element_in_d_ring, in_d_ring, in_d_ring_star,
    preserves_face_ideal, Polynomial,
};
pub(crate) use action::box_vectors;
pub use element::WeylElement;
pub use field::{binomial, binomial_mod_p, field_binomial, FieldError, FieldSpec, Scalar};
pub use text::parse_element;

/// Errors raised by operator arithmetic, membership tests and parsing.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    /// Two operands live over different coefficient fields.
    #[error("coefficient fields differ: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    /// Two operands have different numbers of ambient variables.
    #[error("ambient variable counts differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    /// A membership test that compares stars was given an exponent vector
    /// whose support is not a face, so no star is defined for it.
    #[error("support {0} is not a face of the complex")]
    SupportNotAFace(Face),
    /// The operator text could not be parsed.
    #[error("cannot parse operator text: {0}")]
    Parse(String),
}
