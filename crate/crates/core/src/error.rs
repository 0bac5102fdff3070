use alloc::string::String;
use core::fmt;

/// Errors surfaced by the exact-arithmetic core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoreError {
    /// Operands belong to different number fields / algebras.
    Mismatch(String),
    /// Division by zero (field element or singular algebra element).
    DivisionByZero,
    /// Element is not invertible.
    NotInvertible,
    /// Interval precision escalation hit the configured cap without a decision.
    PrecisionExhausted { bits: u32 },
    /// Input violates a structural precondition (bad polynomial, bad table, ...).
    Structural(String),
    /// An exact internal cross-check failed; indicates inconsistent input data.
    Inconsistency(String),
    /// Element is not certifiably real, so no sign can be assigned.
    NotReal,
    /// A bounded search (primitive element, skew sampling) ran out of room.
    SearchExhausted(String),
    /// Bad user-supplied parameter.
    Parameter(String),
}

impl fmt::Display for CoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreError::Mismatch(s) => write!(f, "structure mismatch: {s}"),
            CoreError::DivisionByZero => write!(f, "division by zero"),
            CoreError::NotInvertible => write!(f, "element is not invertible"),
            CoreError::PrecisionExhausted { bits } => {
                write!(f, "precision exhausted at {bits} bits without a decision")
            }
            CoreError::Structural(s) => write!(f, "structural error: {s}"),
            CoreError::Inconsistency(s) => write!(f, "internal consistency error: {s}"),
            CoreError::NotReal => write!(f, "element is not certifiably real"),
            CoreError::SearchExhausted(s) => write!(f, "search exhausted: {s}"),
            CoreError::Parameter(s) => write!(f, "parameter error: {s}"),
        }
    }
}
