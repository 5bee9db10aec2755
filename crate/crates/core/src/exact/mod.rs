//! Arbitrary-precision integer and rational polynomial arithmetic.
//!
//! Everything downstream (root isolation, canonical forms, enumeration) is
//! built on the two dense polynomial types here. All arithmetic is exact.

pub(crate) mod irreducible;
pub mod parse;
mod poly;

pub use irreducible::{
    eisenstein_holds, is_irreducible_over_q, IrreducibilityCertificate, IrreducibilityOutcome,
    SEARCH_DEGREE_LIMIT,
};
pub use poly::{IntPolynomial, RatPolynomial};

/// Arbitrary-precision signed integer.
pub type Int = num_bigint::BigInt;

/// Rational number kept in lowest terms with positive denominator (the
/// normal form maintained by `num_rational::Ratio`).
pub type Rat = num_rational::BigRational;

/// Numerator of a positive rational in lowest terms.
pub fn rat_numer(q: &Rat) -> &Int {
    q.numer()
}

/// Denominator of a positive rational in lowest terms (always positive).
pub fn rat_denom(q: &Rat) -> &Int {
    q.denom()
}
