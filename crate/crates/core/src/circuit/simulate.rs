//! Re-simulation of schedules against the ideal circuit.

use alloc::format;

use super::{embed1, embed2, CircuitIR, Event, Op, PulseSchedule, N_QUBITS};
use crate::error::Error;
use crate::linalg::Mat4;
use crate::su2::rz;

#[derive(Clone, Debug, PartialEq)]
pub struct SimReport {
    /// Frame-corrected product of the schedule.
    pub physical: Mat4,
    pub ideal: Mat4,
    /// Max-norm distance up to global phase.
    pub deviation: f64,
}

/// Product of `events`, with each frame event undone by `Z_{−angle}`.
///
/// Two-qubit events take their matrices from the circuit's two-qubit gates,
/// matched in order by name and qubits. Returns the product and the number
/// of two-qubit gates consumed.
pub fn simulate_prefix(events: &[Event], ir: &CircuitIR) -> Result<(Mat4, usize), Error> {
    let mut gate2 = ir.ops().iter().filter_map(|op| match op {
        Op::Gate2 { q0, q1, gate } => Some((*q0, *q1, gate)),
        _ => None,
    });
    let mut used = 0;
    let mut u = Mat4::identity();
    for (i, e) in events.iter().enumerate() {
        let m = match e {
            Event::Pulse { qubit, pulse } => {
                check_qubit(*qubit, i)?;
                embed1(*qubit, &pulse.matrix())
            }
            Event::Frame { qubit, angle } => {
                check_qubit(*qubit, i)?;
                embed1(*qubit, &rz(-angle))
            }
            Event::Gate2 { q0, q1, name } => {
                let (g0, g1, gate) = gate2.next().ok_or_else(|| {
                    Error::ScheduleMismatch(format!("event {i}: extra two-qubit gate {name}"))
                })?;
                if (g0, g1) != (*q0, *q1) || gate.name() != *name {
                    return Err(Error::ScheduleMismatch(format!(
                        "event {i}: expected {} q{g0} q{g1}, found {name} q{q0} q{q1}",
                        gate.name()
                    )));
                }
                used += 1;
                embed2(g0, &gate.matrix())
            }
        };
        u = m * u;
    }
    Ok((u, used))
}

fn check_qubit(q: usize, i: usize) -> Result<(), Error> {
    if q >= N_QUBITS {
        return Err(Error::ScheduleMismatch(format!(
            "event {i}: qubit q{q} out of range"
        )));
    }
    Ok(())
}

/// Compare a schedule with the ideal unitary of `ir`.
pub fn simulate_schedule(s: &PulseSchedule, ir: &CircuitIR) -> Result<SimReport, Error> {
    let (physical, used) = simulate_prefix(&s.events, ir)?;
    let expected = ir
        .ops()
        .iter()
        .filter(|op| matches!(op, Op::Gate2 { .. }))
        .count();
    if used != expected {
        return Err(Error::ScheduleMismatch(format!(
            "schedule has {used} two-qubit gates, circuit has {expected}"
        )));
    }
    let ideal = ir.unitary();
    Ok(SimReport {
        physical,
        ideal,
        deviation: physical.phase_distance(&ideal),
    })
}
