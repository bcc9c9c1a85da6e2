//! Exact computation of the two-sided ideal structure of rings of
//! differential operators on Stanley-Reisner rings.
//!
//! A finite simplicial complex determines a squarefree monomial ideal and
//! its quotient, the face ring.  The differential operators on the face
//! ring form an algebra whose two-sided ideals are governed entirely by
//! the combinatorics of closed stars of faces.  This crate computes, over
//! the exact rationals or a prime field:
//!
//! - the combinatorics: faces, closed stars, star comparisons and the star
//!   poset ([`simplicial`]);
//! - squarefree monomial ideals, face ideals and minimal primes
//!   ([`face_ring`]);
//! - normal-form divided-power operator arithmetic, the action on the face
//!   ring, and operator membership tests ([`weyl`]);
//! - the lattice of two-sided operator ideals: principal ideals,
//!   localization kernels, enumeration, contraction to the face ring and
//!   the stable ideals there ([`dideals`]).
//!
//! Everything is deterministic: equal inputs produce byte-equal outputs.

pub mod corpus;
pub mod dideals;
pub mod face_ring;
pub mod frobenius;
pub mod simplicial;
pub mod weyl;

pub use corpus::{coned_path, corpus, hollow_triangle, path4, point, simplex, small_complexes};
pub use dideals::{
    contract, d_stable_ideals, enumerate_ideals, hasse_dot, ideal_of_element, localization_kernel,
    principal_ideal, DIdealError, IdealJson, TwoSidedIdeal, MAX_LATTICE_NODES,
};
pub use face_ring::{
    face_ideal, minimal_primes, star_face_ideal, IdealError, Monomial, SquarefreeMonomialIdeal,
};
pub use frobenius::{
    block_support, hk_bruteforce, hk_polynomial, j_ideal, multiplicities, operator_matrix,
    prime_power, BlockMatrix, FrobeniusDecomposition, FrobeniusError, HkPolynomial,
    MAX_MATRIX_GENERATORS,
};
pub use simplicial::{
    monomial_label, skeleton_dot, ComplexJson, Face, SimplicialComplex, SimplicialError, StarNode,
    StarPoset,
};
pub use weyl::{
    apply, binomial, binomial_mod_p, d_ring_basis_up_to, default_degree_bound, element_in_d_ring,
    field_binomial, in_d_ring, in_d_ring_star, parse_element, preserves_face_ideal, FieldError,
    FieldSpec, Polynomial, Scalar, WeylElement, WeylError,
};
