//! Exact arithmetic: big rationals, the field `Q(beta)` and residues at
//! infinity of fractional powers of polynomials.

pub mod field;
pub mod rational;
pub mod series;

pub use field::{alg_to_float, field_modulus, AlgElem};
pub use rational::{format_rational, parse_rational, Rational};
pub use series::{frac_power_expand, residue_at_infinity, residue_of_power, AlgPoly, LaurentSeries};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("value is not representable in Q(beta)")]
    Unrepresentable,
    #[error("series truncation does not resolve the requested term")]
    InsufficientOrder,
    #[error("division by zero")]
    DivisionByZero,
    #[error("domain error: {0}")]
    Domain(&'static str),
    #[error("cannot parse rational from {0:?}")]
    Parse(alloc::string::String),
}
