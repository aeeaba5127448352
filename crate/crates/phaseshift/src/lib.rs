//! Text formats and the command-line front end for `phaseshift-core`.
//!
//! * [`circuit_text`] reads and writes the line-based circuit format.
//! * [`schedule_text`] reads and writes pulse schedules.
//! * [`cli`] implements the `phaseshift` binary.

pub mod circuit_text;
pub mod cli;
pub mod number;
pub mod schedule_text;

pub use circuit_text::{format_circuit, parse_circuit, parse_gate_spec};
pub use schedule_text::{format_schedule, parse_schedule};

/// A text input that could not be read, with its 1-based line number.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}
