//! Error type shared across the crate.
//!
//! Anything a caller can trigger through legitimate inputs (vanishing
//! q-Pochhammer denominators, logarithmic resonances, parameters outside a
//! builder's domain) surfaces as an [`Error`]. Internal arithmetic misuse
//! (mixing exact and float scalars, dividing a raw scalar by exact zero,
//! blowing the big-rational size cap) panics instead: those are bugs in the
//! calling code, not data-dependent conditions.

use alloc::string::String;
use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Errors produced by constructors, series builders, and verifiers.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A parameter violates a documented precondition (zero t, p ∈ {0, ±1},
    /// half-integer parity mismatch, ...). The message names the parameter.
    InvalidParameter(String),
    /// q-Pochhammer order was negative; inverted products are not defined here.
    NegativePochhammerOrder(i64),
    /// A named factor (1 − a·q^n) in a series denominator is zero, so the
    /// requested coefficients do not exist.
    VanishingFactor { factor: String, n: i64 },
    /// A characteristic root collides with the q-shifted other root but the
    /// apparency obstruction is nonzero: the second local solution needs a
    /// logarithm, which this crate does not construct.
    LogarithmicCase { order: i64, obstruction: String },
    /// An apparency check was requested at a gap that is not actually a gap
    /// between the two characteristic exponents.
    NotResonant { gap: i64 },
    /// Exact mode cannot represent the characteristic roots (the discriminant
    /// is not a perfect rational square).
    IrrationalExponents,
    /// A function argument must be nonzero (operator application point,
    /// series node, ...).
    ZeroArgument(String),
    /// A structural expectation on polynomial degrees or divisibility failed;
    /// the message says which.
    MalformedEquation(String),
    /// The operation only makes sense in float mode.
    FloatModeRequired(String),
    /// The operation only makes sense in exact mode.
    ExactModeRequired(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::NegativePochhammerOrder(n) => {
                write!(f, "q-Pochhammer order must be >= 0, got {n}")
            }
            Error::VanishingFactor { factor, n } => {
                write!(f, "vanishing factor {factor} at step n = {n}")
            }
            Error::LogarithmicCase { order, obstruction } => write!(
                f,
                "logarithmic case: resonance at order {order} with nonzero obstruction {obstruction}"
            ),
            Error::NotResonant { gap } => {
                write!(f, "exponents do not differ by the claimed integer gap {gap}")
            }
            Error::IrrationalExponents => write!(
                f,
                "characteristic roots are irrational; not representable in exact mode"
            ),
            Error::ZeroArgument(what) => write!(f, "{what} must be nonzero"),
            Error::MalformedEquation(msg) => write!(f, "malformed equation: {msg}"),
            Error::FloatModeRequired(what) => write!(f, "{what} requires float mode"),
            Error::ExactModeRequired(what) => write!(f, "{what} requires exact mode"),
        }
    }
}

impl core::error::Error for Error {}
