//! Compile single-qubit gates into sequences of phase-shifted, fixed-angle
//! X pulses, carry virtual-Z frames through two-qubit gates, and verify the
//! result with a small dense simulator.
//!
//! The crate is `no_std` (it needs `alloc`). File formats and the
//! command-line front end live in the `phaseshift` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod carrier;
pub mod circuit;
pub mod error;
pub mod gates;
pub mod linalg;
pub mod pulsesim;
pub mod random;
pub mod schemes;
pub mod su2;
pub mod uniqueness;
pub mod weyl;

pub use carrier::{
    abs_permutation, carry_map, classify, is_enc, is_generalized_enc, is_phase_carrier, segment_of,
    CarrierPermutation, CarryMap, ClassifierResult, EncMap, Segment,
};
pub use circuit::{
    compile_circuit, merge_adjacent_1q, simulate_schedule, CircuitIR, CompilePolicy, Event, Op,
    PolicyKind, PulseSchedule,
};
pub use error::Error;
pub use gates::{standard_gate, TwoQubitGate};
pub use linalg::{equal_up_to_global_phase, normalize_angle, Mat2, Mat4, C64};
pub use pulsesim::{drive_unitary, integrate_sigma, Envelope};
pub use schemes::{
    absorb_z, clifford_table, compile_with, four_pulse, special_case, three_pulse, two_pulse,
    virtual_z, CompiledGate, Pulse, PulseSequence, SchemeTag,
};
pub use su2::{
    conjugated_x, from_quaternion, params_from_unitary, to_quaternion, unitary_from_params, x_rot,
    z_rot, GateParams, Quaternion,
};
pub use weyl::{weyl_coordinates, WeylCoords};
