use num_bigint::BigUint;
use thiserror::Error;

use crate::weights::Corollary;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("superelliptic exponent n = {n} must be at least 2")]
    ExponentTooSmall { n: u64 },

    #[error("degree d = {d} must exceed n = {n}")]
    DegreeNotAboveExponent { n: u64, d: u64 },

    #[error("genus below 2 (n = {n}, d = {d} gives genus {genus})")]
    GenusBelowTwo { n: u64, d: u64, genus: u64 },

    #[error("q = {q} is out of range; this operation requires q >= {min}")]
    QOutOfRange { q: u64, min: u64 },

    #[error("generators {a} and {b} are not coprime; the gap set is infinite")]
    NotCoprime { a: BigUint, b: BigUint },

    #[error(
        "gcd(n, d) = {gcd} > 1: the value depends on the coefficients of f, not only on (n, d, q)"
    )]
    RequiresCoprimeFamily { gcd: u64 },

    #[error("{corollary} does not apply: {reason}")]
    HypothesisFailed {
        corollary: Corollary,
        reason: String,
    },

    #[error("(i, j) = ({i}, {j}) is not in the exponent set")]
    OutsideExponentSet { i: u64, j: u64 },

    #[error("fractional sum modulus c must be at least 1")]
    ZeroModulus,

    #[error("{what} evaluated to the non-integer {value}")]
    NonIntegral { what: &'static str, value: String },

    #[error("parameters too large to enumerate: {0}")]
    TooLarge(String),
}

impl Error {
    /// Stable machine-readable reason code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ExponentTooSmall { .. } => "exponent_too_small",
            Error::DegreeNotAboveExponent { .. } => "degree_not_above_exponent",
            Error::GenusBelowTwo { .. } => "genus_below_2",
            Error::QOutOfRange { .. } => "q_out_of_range",
            Error::NotCoprime { .. } => "not_coprime",
            Error::RequiresCoprimeFamily { .. } => "requires_coprime_family",
            Error::HypothesisFailed { .. } => "hypothesis_failed",
            Error::OutsideExponentSet { .. } => "outside_exponent_set",
            Error::ZeroModulus => "zero_modulus",
            Error::NonIntegral { .. } => "non_integral",
            Error::TooLarge(_) => "too_large",
        }
    }

    /// True for errors that mean "the question has no (n, d, q)-only answer"
    /// rather than "the input is malformed".
    pub fn is_unsupported(&self) -> bool {
        matches!(self, Error::RequiresCoprimeFamily { .. })
    }
}
