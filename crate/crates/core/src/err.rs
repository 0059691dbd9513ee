use alloc::string::String;
use core::fmt;

/// Engine errors. Structured where callers dispatch on them, stringly where
/// they only get reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A subquotient denominator escapes the numerator span; on cohomology
    /// inputs this signals an invalid N-complex.
    ContainmentViolation { degree: Option<i64> },
    /// The input to the long-exact-sequence verifier is not degreewise exact.
    NotExactInput(String),
    /// q-tensor / q-Hom asked for over a context whose q is not a primitive
    /// N-th root of unity (or over a ring that has none).
    NonPrimitiveQ(String),
    /// Operation needs a principal ideal domain.
    NotPid(String),
    /// Divisible-catalogue operation on an object outside the catalogue.
    OutOfCatalogue(String),
    /// A stage system matched no recognized (co)limit pattern; carries the
    /// stage dump.
    Unclassified(String),
    InconsistentTransitions(String),
    RingMismatch(String),
    Shape(String),
    Unsupported(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ContainmentViolation { degree: Some(d) } => {
                write!(f, "containment violation at degree {d}: denominator escapes numerator span")
            }
            Error::ContainmentViolation { degree: None } => {
                write!(f, "containment violation: denominator escapes numerator span")
            }
            Error::NotExactInput(s) => write!(f, "not a degreewise exact sequence: {s}"),
            Error::NonPrimitiveQ(s) => write!(f, "q is not a primitive root here: {s}"),
            Error::NotPid(s) => write!(f, "ring is not a PID: {s}"),
            Error::OutOfCatalogue(s) => write!(f, "outside the divisible catalogue: {s}"),
            Error::Unclassified(s) => write!(f, "no (co)limit pattern recognized: {s}"),
            Error::InconsistentTransitions(s) => write!(f, "inconsistent transitions: {s}"),
            Error::RingMismatch(s) => write!(f, "ring mismatch: {s}"),
            Error::Shape(s) => write!(f, "shape error: {s}"),
            Error::Unsupported(s) => write!(f, "unsupported: {s}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
