use alloc::string::String;
use core::fmt;

/// Errors raised by the compiler core.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// An angle or matrix entry was NaN or infinite.
    NonFinite,
    /// A matrix that must be unitary is not; `defect` is `‖M†M − I‖_max`.
    NonUnitary {
        defect: f64,
    },
    /// A 2×2 matrix that must lie in SU(2) has the wrong determinant.
    NotSpecialUnitary {
        det_error: f64,
    },
    InvalidTolerance(f64),
    InvalidParams(&'static str),
    UnknownGate(String),
    /// `absorb_z` was given a gate compiled with a scheme other than the
    /// three- or two-pulse scheme.
    WrongScheme,
    NotCarrier,
    /// The compile policy cannot handle the two-qubit gate at `op_index`.
    IllegalPolicy {
        op_index: usize,
        gate: String,
        reason: &'static str,
    },
    InvalidCircuit(String),
    ScheduleMismatch(String),
    EmptyEnvelope,
    /// A single integration step rotates by more than the allowed amount.
    StepTooLarge {
        step: usize,
        rotation: f64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFinite => write!(f, "non-finite input"),
            Error::NonUnitary { defect } => {
                write!(f, "matrix is not unitary (‖M†M − I‖ = {defect:e})")
            }
            Error::NotSpecialUnitary { det_error } => {
                write!(f, "matrix is not in SU(2) (|det − 1| = {det_error:e})")
            }
            Error::InvalidTolerance(t) => write!(f, "tolerance must be positive, got {t}"),
            Error::InvalidParams(why) => write!(f, "invalid gate parameters: {why}"),
            Error::UnknownGate(name) => write!(f, "unknown gate `{name}`"),
            Error::WrongScheme => {
                write!(
                    f,
                    "Z absorption needs a three-pulse or two-pulse compiled gate"
                )
            }
            Error::NotCarrier => write!(f, "gate is not a phase carrier"),
            Error::IllegalPolicy {
                op_index,
                gate,
                reason,
            } => write!(f, "illegal policy at op {op_index} ({gate}): {reason}"),
            Error::InvalidCircuit(why) => write!(f, "invalid circuit: {why}"),
            Error::ScheduleMismatch(why) => write!(f, "schedule does not match circuit: {why}"),
            Error::EmptyEnvelope => write!(f, "envelope has no samples"),
            Error::StepTooLarge { step, rotation } => write!(
                f,
                "integration step {step} rotates by {rotation} rad (limit 0.1); use more steps"
            ),
        }
    }
}

impl core::error::Error for Error {}
