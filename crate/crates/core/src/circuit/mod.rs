//! Two-qubit circuit IR, the phase-carrying compiler pass and a schedule
//! simulator.

mod bench;
mod compile;
mod simulate;

use alloc::format;
use alloc::vec::Vec;

use crate::error::Error;
use crate::gates::TwoQubitGate;
use crate::linalg::{Mat2, Mat4, UNITARITY_TOL};

pub use bench::{alternating_benchmark, random_circuit};
pub use compile::{
    compile_circuit, compile_circuit_traced, Checkpoint, CompilePolicy, Event, PolicyKind,
    PulseSchedule, ScheduleStats,
};
pub use simulate::{simulate_prefix, simulate_schedule, SimReport};

/// Number of qubits every circuit has.
pub const N_QUBITS: usize = 2;

#[derive(Clone, Debug, PartialEq)]
pub enum Op {
    Gate1 {
        qubit: usize,
        matrix: Mat2,
    },
    /// The gate matrix acts with `q0` as its first (high-order) qubit.
    Gate2 {
        q0: usize,
        q1: usize,
        gate: TwoQubitGate,
    },
    Measure {
        qubit: usize,
    },
}

impl Op {
    /// Full 4×4 matrix in the circuit's basis; `None` for measurements.
    pub fn system_matrix(&self) -> Option<Mat4> {
        match self {
            Op::Gate1 { qubit, matrix } => Some(embed1(*qubit, matrix)),
            Op::Gate2 { q0, gate, .. } => Some(embed2(*q0, &gate.matrix())),
            Op::Measure { .. } => None,
        }
    }
}

pub(crate) fn embed1(qubit: usize, m: &Mat2) -> Mat4 {
    if qubit == 0 {
        m.kron(&Mat2::identity())
    } else {
        Mat2::identity().kron(m)
    }
}

pub(crate) fn embed2(q0: usize, m: &Mat4) -> Mat4 {
    if q0 == 0 {
        *m
    } else {
        m.swap_qubits()
    }
}

/// An ordered list of operations on two qubits. No operation may follow a
/// qubit's measurement.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CircuitIR {
    ops: Vec<Op>,
    measured: [bool; N_QUBITS],
}

impl CircuitIR {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_ops(ops: impl IntoIterator<Item = Op>) -> Result<Self, Error> {
        let mut ir = Self::new();
        for op in ops {
            ir.push(op)?;
        }
        Ok(ir)
    }

    pub fn ops(&self) -> &[Op] {
        &self.ops
    }

    pub fn n_qubits(&self) -> usize {
        N_QUBITS
    }

    pub fn is_measured(&self, qubit: usize) -> bool {
        self.measured.get(qubit).copied().unwrap_or(false)
    }

    pub fn push(&mut self, op: Op) -> Result<(), Error> {
        let touched: Vec<usize> = match &op {
            Op::Gate1 { qubit, matrix } => {
                matrix.require_unitary(UNITARITY_TOL)?;
                alloc::vec![*qubit]
            }
            Op::Gate2 { q0, q1, gate } => {
                if q0 == q1 {
                    return Err(Error::InvalidCircuit(format!(
                        "two-qubit gate on q{q0} twice"
                    )));
                }
                gate.matrix().require_unitary(UNITARITY_TOL)?;
                alloc::vec![*q0, *q1]
            }
            Op::Measure { qubit } => alloc::vec![*qubit],
        };
        for &q in &touched {
            if q >= N_QUBITS {
                return Err(Error::InvalidCircuit(format!("qubit q{q} out of range")));
            }
            if self.measured[q] {
                return Err(Error::InvalidCircuit(format!(
                    "q{q} used after measurement"
                )));
            }
        }
        if let Op::Measure { qubit } = op {
            self.measured[qubit] = true;
        }
        self.ops.push(op);
        Ok(())
    }

    pub fn gate1_count(&self) -> usize {
        self.ops
            .iter()
            .filter(|op| matches!(op, Op::Gate1 { .. }))
            .count()
    }

    /// Ideal unitary of the first `n` operations; measurements act as identity.
    pub fn prefix_unitary(&self, n: usize) -> Mat4 {
        self.ops[..n]
            .iter()
            .filter_map(Op::system_matrix)
            .fold(Mat4::identity(), |acc, m| m * acc)
    }

    pub fn unitary(&self) -> Mat4 {
        self.prefix_unitary(self.ops.len())
    }
}

/// Multiply runs of single-qubit gates on the same qubit into one gate
/// (later · earlier). A two-qubit gate or measurement on that qubit ends
/// the run.
pub fn merge_adjacent_1q(ir: &CircuitIR) -> CircuitIR {
    let mut out: Vec<Op> = Vec::with_capacity(ir.ops.len());
    let mut open: [Option<usize>; N_QUBITS] = [None; N_QUBITS];
    for op in &ir.ops {
        match op {
            Op::Gate1 { qubit, matrix } => match open[*qubit] {
                Some(i) => {
                    if let Op::Gate1 { matrix: prev, .. } = &mut out[i] {
                        *prev = *matrix * *prev;
                    }
                }
                None => {
                    open[*qubit] = Some(out.len());
                    out.push(op.clone());
                }
            },
            Op::Gate2 { q0, q1, .. } => {
                open[*q0] = None;
                open[*q1] = None;
                out.push(op.clone());
            }
            Op::Measure { qubit } => {
                open[*qubit] = None;
                out.push(op.clone());
            }
        }
    }
    CircuitIR {
        ops: out,
        measured: ir.measured,
    }
}

#[cfg(test)]
mod tests;
