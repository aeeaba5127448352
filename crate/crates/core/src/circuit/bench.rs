//! Circuit generators for benchmarks and randomized checks.

use core::f64::consts::PI;

use rand::Rng;

use super::{CircuitIR, Op, N_QUBITS};
use crate::gates::TwoQubitGate;
use crate::random::haar_su2;
use crate::schemes::clifford_table;
use crate::su2::{rx, rz};

fn push(ir: &mut CircuitIR, op: Op) {
    // generators only build valid circuits
    ir.push(op).expect("generated circuit is valid");
}

/// `depth` layers of (random U on q0, random U on q1, `gate` on q0 q1),
/// then a final pair of random gates and a measurement of both qubits.
pub fn alternating_benchmark<R: Rng + ?Sized>(
    depth: usize,
    gate: &TwoQubitGate,
    rng: &mut R,
) -> CircuitIR {
    let mut ir = CircuitIR::new();
    for layer in 0..=depth {
        for qubit in 0..N_QUBITS {
            push(
                &mut ir,
                Op::Gate1 {
                    qubit,
                    matrix: haar_su2(rng),
                },
            );
        }
        if layer < depth {
            push(
                &mut ir,
                Op::Gate2 {
                    q0: 0,
                    q1: 1,
                    gate: gate.clone(),
                },
            );
        }
    }
    for qubit in 0..N_QUBITS {
        push(&mut ir, Op::Measure { qubit });
    }
    ir
}

/// Up to `depth` random operations drawn from Haar-random, diagonal,
/// Clifford and X-rotation single-qubit gates and two-qubit gates from
/// `pool` (either orientation), followed by measurements of a random subset
/// of qubits.
pub fn random_circuit<R: Rng + ?Sized>(
    rng: &mut R,
    depth: usize,
    pool: &[TwoQubitGate],
) -> CircuitIR {
    let mut ir = CircuitIR::new();
    let n = rng.random_range(0..=depth);
    for _ in 0..n {
        let qubit = rng.random_range(0..N_QUBITS);
        let op = match rng.random_range(0..10) {
            0..=3 => Op::Gate1 {
                qubit,
                matrix: haar_su2(rng),
            },
            4 => Op::Gate1 {
                qubit,
                matrix: rz(rng.random_range(-PI..PI)),
            },
            5 => {
                let table = clifford_table();
                Op::Gate1 {
                    qubit,
                    matrix: table[rng.random_range(0..table.len())].matrix,
                }
            }
            6 => Op::Gate1 {
                qubit,
                matrix: rx(rng.random_range(-PI..PI)),
            },
            _ if !pool.is_empty() => {
                let gate = pool[rng.random_range(0..pool.len())].clone();
                let (q0, q1) = if rng.random_bool(0.5) { (0, 1) } else { (1, 0) };
                Op::Gate2 { q0, q1, gate }
            }
            _ => Op::Gate1 {
                qubit,
                matrix: haar_su2(rng),
            },
        };
        push(&mut ir, op);
    }
    for qubit in 0..N_QUBITS {
        if rng.random_bool(0.5) {
            push(&mut ir, Op::Measure { qubit });
        }
    }
    ir
}
