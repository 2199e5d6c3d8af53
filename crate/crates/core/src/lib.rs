//! Staged trees and their interpolating polynomials.
//!
//! The crate is `no_std` (it needs `alloc`). It covers:
//!
//! - [`poly`]: indeterminates, monomials and polynomials with positive
//!   integer coefficients, plus a text parser and canonical printer.
//! - [`ideal`]: square-free monomial ideals and their minimal primes.
//! - [`tree`]: labeled event trees, stages, interpolating and network
//!   polynomials, nested representations and representation transforms.
//! - [`enumerate`]: every staged tree whose interpolating polynomial is a
//!   given square-free sum of monomials.
//! - [`analyze`]: necessary-condition screening, incidence matrices and the
//!   simplicial-complex saturation test.
//!
//! IO, file formats and the command line live in the `staged-trees` crate.

#![no_std]

extern crate alloc;

pub mod analyze;
pub mod enumerate;
pub mod ideal;
pub mod poly;
pub mod tree;

mod varset;

pub use enumerate::{staged_trees, Enumerator, EquivalenceClass, SupportSet};
pub use ideal::{minimal_primes, IdealBasis, PrimeComponent};
pub use poly::{parse_polynomial, parse_polynomial_general, Indeterminate, Monomial, Polynomial};
pub use tree::{EventTree, Nesting};
