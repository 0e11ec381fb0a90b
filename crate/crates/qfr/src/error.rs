//! Crate-wide error type.

use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input: wrong parity, zero where nonzero required, etc.
    InvalidArgument(String),
    /// The quantity is not a quadratic residue for the given modulus.
    NonResidue,
    /// Discriminant is a perfect square or not 0,1 mod 4.
    UnsupportedDiscriminant(String),
    /// D has a square factor, or the operation needs a fundamental discriminant.
    NonFundamental(String),
    /// Two forms or ideals from different discriminants/fields were combined.
    Mismatch(String),
    /// An ideal power that was expected to be principal is not.
    NotPrincipal,
    /// No embedded table record for this discriminant.
    NotInTable(String),
    /// The prime is inert: no form of this discriminant represents it.
    NotRepresentable,
    /// Supplied generator is inconsistent with the ideal power.
    WrongGenerator,
    /// No solution found in the unit/conjugation orbit.
    WrongClass,
    /// Polynomial is not squarefree modulo p.
    NonSquarefreeModP,
    /// Working precision could not be raised enough to round safely.
    PrecisionExceeded,
    /// Trial-division budget exhausted before the factorization completed.
    FactorBudgetExceeded,
    /// The case is outside what the implemented theory resolves.
    Unsupported(String),
    /// Curve has zero discriminant over the field.
    SingularCurve,
    /// Point count inconsistent with the requested CM discriminant.
    CurveInconsistency(String),
    /// CLI literal could not be parsed.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(s) => write!(f, "invalid argument: {s}"),
            Error::NonResidue => write!(f, "not a quadratic residue"),
            Error::UnsupportedDiscriminant(s) => write!(f, "unsupported discriminant: {s}"),
            Error::NonFundamental(s) => write!(f, "non-fundamental discriminant: {s}"),
            Error::Mismatch(s) => write!(f, "mismatch: {s}"),
            Error::NotPrincipal => write!(f, "ideal power is not principal"),
            Error::NotInTable(s) => write!(f, "discriminant not in the embedded tables: {s}"),
            Error::NotRepresentable => write!(f, "prime is not representable for this discriminant"),
            Error::WrongGenerator => write!(f, "generator inconsistent with ideal power"),
            Error::WrongClass => write!(f, "no solution in the unit orbit; wrong class or exponent"),
            Error::NonSquarefreeModP => write!(f, "polynomial is not squarefree modulo p"),
            Error::PrecisionExceeded => write!(f, "could not round within the precision budget"),
            Error::FactorBudgetExceeded => write!(f, "factoring budget exceeded; result indeterminate"),
            Error::Unsupported(s) => write!(f, "unsupported: {s}"),
            Error::SingularCurve => write!(f, "singular curve"),
            Error::CurveInconsistency(s) => write!(f, "curve/count inconsistency: {s}"),
            Error::Parse(s) => write!(f, "parse error: {s}"),
        }
    }
}

impl std::error::Error for Error {}
