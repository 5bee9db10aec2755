#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
pub mod exact;
pub mod factorize;
pub mod monoid;
pub mod oracle;
pub mod invariants;
pub mod rootlift;
pub mod realroot;

pub use error::Error;
pub use exact::{Int, IntPolynomial, Rat, RatPolynomial};
pub use factorize::{
    canonicalize, enumerate_factorizations, equal_in_monoid, length_set, Bounds, CanonicalValue,
    ElementExpr, Factorization, FactorizationSet, LengthSet,
};
pub use monoid::{AtomDescription, Classification, MinimalPair, MonoidSpec, SpecRoute};
pub use realroot::AlgebraicNumber;

pub type Result<T> = core::result::Result<T, Error>;
