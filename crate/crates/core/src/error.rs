//! Error type shared by all modules.

use alloc::string::String;
use core::fmt;

use crate::exact::IntPolynomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An operation that needs a nonzero polynomial received zero.
    ZeroPolynomial,
    /// An operation that needs degree at least 1 received a constant.
    ConstantPolynomial,
    /// Polynomial division by the zero polynomial.
    DivisionByZeroPolynomial,
    /// The polynomial has a repeated root; root isolation requires
    /// square-free input.
    NotSquareFree,
    /// Irreducibility could not be decided within the configured search
    /// bounds (degree limit or divisor-combination budget).
    IrreducibilityUndecided { degree: usize },
    /// The polynomial is reducible; the witness factor divides it.
    Reducible { factor: IntPolynomial },
    /// `x^n - q` is reducible because `q` is a `p`-th rational power.
    NotIrreducibleRoot { prime: u32 },
    /// The polynomial has no positive real root.
    NoPositiveRoot,
    /// Requested root index is out of range.
    RootIndexOutOfRange { index: usize, count: usize },
    /// The base of the root must be positive.
    NonPositiveBase,
    /// `floor_log` needs a base strictly greater than 1.
    NoFiniteExponentBound,
    /// `floor_log` of a value below 1 has no nonnegative answer.
    ValueBelowOne,
    /// An element expression must have nonnegative coefficients.
    NegativeCoefficient { exponent: usize },
    /// The operation needs an atomic monoid (or at least not a provably
    /// non-atomic one).
    NonAtomicSpec,
    /// Enumeration needs a usable atom description for this spec.
    UnknownAtoms,
    /// The element uses an exponent that is not an atom of the spec.
    SupportOutsideAtoms { exponent: u32 },
    /// Exponent or coefficient bounds must be supplied explicitly when the
    /// root is not greater than 1.
    BoundsRequired,
    /// A derived bound does not fit in the machine-word budget.
    BoundOverflow,
    /// The operation is only defined for specs built on an irreducible root
    /// of a rational (a two-term minimal polynomial).
    NotARootSpec,
    /// Free-form parse error from the polynomial/rational text grammar.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroPolynomial => write!(f, "the zero polynomial is not allowed here"),
            Error::ConstantPolynomial => write!(f, "a polynomial of degree at least 1 is required"),
            Error::DivisionByZeroPolynomial => write!(f, "polynomial division by zero"),
            Error::NotSquareFree => write!(f, "polynomial is not square-free"),
            Error::IrreducibilityUndecided { degree } => write!(
                f,
                "irreducibility undecided at configured bound (degree {degree} exceeds the search limit)"
            ),
            Error::Reducible { factor } => write!(f, "polynomial is reducible; factor {factor}"),
            Error::NotIrreducibleRoot { prime } => write!(
                f,
                "base is a {prime}-th rational power, so the root polynomial is reducible"
            ),
            Error::NoPositiveRoot => write!(f, "polynomial has no positive real root"),
            Error::RootIndexOutOfRange { index, count } => {
                write!(f, "root index {index} out of range ({count} positive roots)")
            }
            Error::NonPositiveBase => write!(f, "base must be a positive rational"),
            Error::NoFiniteExponentBound => {
                write!(f, "no finite exponent bound: the root is not greater than 1")
            }
            Error::ValueBelowOne => write!(f, "value is below 1, no nonnegative power fits"),
            Error::NegativeCoefficient { exponent } => {
                write!(f, "element expression has a negative coefficient at exponent {exponent}")
            }
            Error::NonAtomicSpec => write!(f, "the monoid is not atomic"),
            Error::UnknownAtoms => write!(f, "the atom set of this spec is not known"),
            Error::SupportOutsideAtoms { exponent } => {
                write!(f, "exponent {exponent} is not an atom of this monoid")
            }
            Error::BoundsRequired => write!(
                f,
                "explicit exponent and coefficient bounds are required when the root is not > 1"
            ),
            Error::BoundOverflow => write!(f, "derived enumeration bound overflows the budget"),
            Error::NotARootSpec => {
                write!(f, "operation requires a spec built on an irreducible root of a rational")
            }
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}
