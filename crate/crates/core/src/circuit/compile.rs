//! The compilation pass.
//!
//! Frame semantics: after every step the physical state equals
//! `(Z_{f_0} ⊗ Z_{f_1})` applied to the ideal state, up to global phase,
//! where `f_q` is the pending frame of qubit `q`. Policies that buffer
//! single-qubit gates additionally hold a pending gate `P_q`, in which case
//! physical `= (⊗ Z_{f_q}) (⊗ P_q)^{-1} · ideal`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::{embed2, CircuitIR, Op, N_QUBITS};
use crate::carrier::{abs_permutation, is_generalized_enc, CarryMap, EncMap};
use crate::error::Error;
use crate::linalg::{normalize_angle, Mat2};
use crate::schemes::{
    special_case, three_pulse, virtual_z, CompiledGate, Pulse, SchemeTag, STRUCTURE_TOL,
};
use crate::su2::{params_from_unitary, rz, to_special_unitary};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PolicyKind {
    /// Every single-qubit gate is compiled exactly; frames stay zero.
    ThreeAlways,
    /// Virtual-Z compilation with frames carried through phase carriers.
    VirtualZCarry,
    /// Virtual-Z on one qubit and an exact scheme on the other, so that
    /// equal frames pass through excitation-number-conserving gates.
    EncMixed,
    /// Choose per two-qubit gate.
    Auto,
}

impl PolicyKind {
    pub const ALL: [PolicyKind; 4] = [
        PolicyKind::ThreeAlways,
        PolicyKind::VirtualZCarry,
        PolicyKind::EncMixed,
        PolicyKind::Auto,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            PolicyKind::ThreeAlways => "three-always",
            PolicyKind::VirtualZCarry => "vz-carry",
            PolicyKind::EncMixed => "enc-mixed",
            PolicyKind::Auto => "auto",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.as_str() == name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CompilePolicy {
    pub kind: PolicyKind,
    /// Use the identity, (anti-)diagonal and Clifford shortcuts.
    pub special_cases: bool,
}

impl CompilePolicy {
    pub fn new(kind: PolicyKind) -> Self {
        CompilePolicy {
            kind,
            special_cases: true,
        }
    }

    pub fn without_special_cases(self) -> Self {
        CompilePolicy {
            special_cases: false,
            ..self
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Event {
    Pulse {
        qubit: usize,
        pulse: Pulse,
    },
    Gate2 {
        q0: usize,
        q1: usize,
        name: String,
    },
    /// Pending frame dropped at a measurement or at the end of the circuit:
    /// the physical state is `Z_angle` applied to the ideal one.
    Frame {
        qubit: usize,
        angle: f64,
    },
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ScheduleStats {
    pub pulses: [usize; N_QUBITS],
    /// Single-qubit gates in the source circuit.
    pub gate1: usize,
    /// Compiled single-qubit units per scheme.
    pub scheme_gates: BTreeMap<SchemeTag, usize>,
    pub scheme_pulses: BTreeMap<SchemeTag, usize>,
    /// Diagonal gates folded into a frame with no pulses.
    pub absorbed: usize,
    /// Zero-angle pulses dropped.
    pub elided: usize,
}

impl ScheduleStats {
    pub fn total_pulses(&self) -> usize {
        self.pulses.iter().sum()
    }

    pub fn pulses_per_gate1(&self) -> f64 {
        if self.gate1 == 0 {
            0.0
        } else {
            self.total_pulses() as f64 / self.gate1 as f64
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct PulseSchedule {
    pub events: Vec<Event>,
    pub stats: ScheduleStats,
}

impl PulseSchedule {
    /// Rebuild a schedule from bare events; only per-qubit pulse counts are
    /// recoverable.
    pub fn from_events(events: Vec<Event>) -> Self {
        let mut stats = ScheduleStats::default();
        for e in &events {
            if let Event::Pulse { qubit, .. } = e {
                if *qubit < N_QUBITS {
                    stats.pulses[*qubit] += 1;
                }
            }
        }
        PulseSchedule { events, stats }
    }

    pub fn pulse_count(&self) -> usize {
        self.stats.total_pulses()
    }
}

/// Compiler state after processing `op_index`.
#[derive(Clone, Debug, PartialEq)]
pub struct Checkpoint {
    pub op_index: usize,
    pub events: usize,
    pub frames: [f64; N_QUBITS],
    pub pending: [Mat2; N_QUBITS],
}

#[derive(Clone, Copy)]
enum Role {
    Carrier(CarryMap),
    Enc(EncMap),
    Plain,
}

fn roles(ir: &CircuitIR, kind: PolicyKind) -> Result<Vec<Role>, Error> {
    let mut out = Vec::new();
    for (op_index, op) in ir.ops().iter().enumerate() {
        let Op::Gate2 { q0, gate, .. } = op else {
            continue;
        };
        if kind == PolicyKind::ThreeAlways {
            out.push(Role::Plain);
            continue;
        }
        let m = embed2(*q0, &gate.matrix());
        let carrier = abs_permutation(&m)?.map(|p| p.carry_map());
        let illegal = |reason| Error::IllegalPolicy {
            op_index,
            gate: gate.name(),
            reason,
        };
        let role = match kind {
            PolicyKind::VirtualZCarry => {
                Role::Carrier(carrier.ok_or_else(|| illegal("not a phase carrier"))?)
            }
            PolicyKind::EncMixed => Role::Enc(
                is_generalized_enc(&m)?
                    .ok_or_else(|| illegal("not excitation-number conserving"))?,
            ),
            _ => match carrier {
                Some(c) => Role::Carrier(c),
                None => is_generalized_enc(&m)?.map_or(Role::Plain, Role::Enc),
            },
        };
        out.push(role);
    }
    Ok(out)
}

/// `θ` with `u ≐ Z_θ`, if `u` is diagonal.
fn diagonal_angle(u: &Mat2) -> Option<f64> {
    let v = to_special_unitary(u);
    (v[(0, 1)].norm() <= STRUCTURE_TOL && v[(1, 0)].norm() <= STRUCTURE_TOL)
        .then(|| normalize_angle(-2.0 * v[(0, 0)].arg()))
}

struct Pass {
    policy: CompilePolicy,
    frames: [f64; N_QUBITS],
    pending: [Option<Mat2>; N_QUBITS],
    events: Vec<Event>,
    stats: ScheduleStats,
}

impl Pass {
    fn emit(&mut self, qubit: usize, c: &CompiledGate) {
        for p in c.sequence.iter() {
            self.events.push(Event::Pulse { qubit, pulse: *p });
        }
        let n = c.pulse_count();
        self.stats.pulses[qubit] += n;
        self.stats.elided += c.elided;
        *self.stats.scheme_gates.entry(c.scheme).or_default() += 1;
        *self.stats.scheme_pulses.entry(c.scheme).or_default() += n;
    }

    /// Compile `v` with the frame carried: the pulses realize
    /// `Z_{f'} · v · Z_{−f}` for a new frame `f'` of our choosing.
    fn carry(&mut self, q: usize, v: &Mat2) -> Result<(), Error> {
        let w = *v * rz(-self.frames[q]);
        if self.policy.special_cases {
            if let Some(theta) = diagonal_angle(&w) {
                self.frames[q] = normalize_angle(-theta);
                self.stats.absorbed += 1;
                return Ok(());
            }
            if let Some(c) = special_case(&w)?.filter(|c| c.pulse_count() <= 1) {
                self.emit(q, &c);
                self.frames[q] = 0.0;
                return Ok(());
            }
        }
        let c = virtual_z(&params_from_unitary(&w)?.0);
        self.emit(q, &c);
        self.frames[q] = c.residual_z;
        Ok(())
    }

    /// Compile `t` exactly and set the frame to `frame`.
    fn exact(&mut self, q: usize, t: &Mat2, frame: f64) -> Result<(), Error> {
        let special = if self.policy.special_cases {
            special_case(t)?
        } else {
            None
        };
        let c = match special {
            Some(c) => c,
            None => three_pulse(&params_from_unitary(t)?.0),
        };
        self.emit(q, &c);
        self.frames[q] = normalize_angle(frame);
        Ok(())
    }

    fn flush_carry(&mut self, q: usize) -> Result<(), Error> {
        if let Some(v) = self.pending[q].take() {
            self.carry(q, &v)?;
        }
        Ok(())
    }

    /// Bring qubit `q` to frame `target`, compiling any pending gate exactly.
    fn flush_to(&mut self, q: usize, target: f64) -> Result<(), Error> {
        let f = self.frames[q];
        match self.pending[q].take() {
            Some(v) => self.exact(q, &(rz(target) * v * rz(-f)), target),
            None if normalize_angle(target - f).abs() <= 1e-12 => {
                self.frames[q] = normalize_angle(target);
                Ok(())
            }
            None => self.exact(q, &rz(target - f), target),
        }
    }

    fn drop_frame(&mut self, qubit: usize) {
        let angle = self.frames[qubit];
        if angle != 0.0 {
            self.events.push(Event::Frame { qubit, angle });
        }
        self.frames[qubit] = 0.0;
    }

    fn gate1(&mut self, q: usize, m: &Mat2) -> Result<(), Error> {
        match self.policy.kind {
            PolicyKind::ThreeAlways => self.exact(q, m, 0.0),
            PolicyKind::VirtualZCarry => self.carry(q, m),
            PolicyKind::EncMixed | PolicyKind::Auto => {
                let prev = self.pending[q].unwrap_or_else(Mat2::identity);
                self.pending[q] = Some(*m * prev);
                Ok(())
            }
        }
    }

    fn gate2(&mut self, q0: usize, q1: usize, name: String, role: Role) -> Result<(), Error> {
        match role {
            Role::Carrier(map) => {
                self.flush_carry(q0)?;
                self.flush_carry(q1)?;
                let (p0, p1) = map.apply(self.frames[0], self.frames[1]);
                self.frames = [normalize_angle(p0), normalize_angle(p1)];
            }
            Role::Enc(map) => {
                let (a, b) = (q0.min(q1), q0.max(q1));
                self.flush_carry(a)?;
                let theta = self.frames[a];
                self.flush_to(b, theta)?;
                let (p0, p1) = map.apply(theta);
                self.frames = [normalize_angle(p0), normalize_angle(p1)];
            }
            Role::Plain => {
                if self.policy.kind != PolicyKind::ThreeAlways {
                    self.flush_to(q0, 0.0)?;
                    self.flush_to(q1, 0.0)?;
                }
            }
        }
        self.events.push(Event::Gate2 { q0, q1, name });
        Ok(())
    }

    fn measure(&mut self, q: usize) -> Result<(), Error> {
        self.flush_carry(q)?;
        self.drop_frame(q);
        Ok(())
    }

    fn checkpoint(&self, op_index: usize) -> Checkpoint {
        Checkpoint {
            op_index,
            events: self.events.len(),
            frames: self.frames,
            pending: self.pending.map(|p| p.unwrap_or_else(Mat2::identity)),
        }
    }
}

/// Compile a circuit into a pulse schedule under `policy`.
///
/// Two-qubit gates the policy cannot carry frames through are rejected with
/// [`Error::IllegalPolicy`] before anything is emitted.
pub fn compile_circuit(ir: &CircuitIR, policy: CompilePolicy) -> Result<PulseSchedule, Error> {
    run(ir, policy, None)
}

/// Like [`compile_circuit`], also returning the compiler state after every
/// operation.
pub fn compile_circuit_traced(
    ir: &CircuitIR,
    policy: CompilePolicy,
) -> Result<(PulseSchedule, Vec<Checkpoint>), Error> {
    let mut trace = Vec::new();
    let s = run(ir, policy, Some(&mut trace))?;
    Ok((s, trace))
}

fn run(
    ir: &CircuitIR,
    policy: CompilePolicy,
    mut trace: Option<&mut Vec<Checkpoint>>,
) -> Result<PulseSchedule, Error> {
    let roles = roles(ir, policy.kind)?;
    let mut roles = roles.into_iter();
    let mut pass = Pass {
        policy,
        frames: [0.0; N_QUBITS],
        pending: [None; N_QUBITS],
        events: Vec::new(),
        stats: ScheduleStats {
            gate1: ir.gate1_count(),
            ..ScheduleStats::default()
        },
    };
    for (i, op) in ir.ops().iter().enumerate() {
        match op {
            Op::Gate1 { qubit, matrix } => pass.gate1(*qubit, matrix)?,
            Op::Gate2 { q0, q1, gate } => {
                let role = roles.next().unwrap_or(Role::Plain);
                pass.gate2(*q0, *q1, gate.name(), role)?;
            }
            Op::Measure { qubit } => pass.measure(*qubit)?,
        }
        if let Some(t) = trace.as_deref_mut() {
            t.push(pass.checkpoint(i));
        }
    }
    for q in 0..N_QUBITS {
        pass.flush_carry(q)?;
        pass.drop_frame(q);
    }
    Ok(PulseSchedule {
        events: pass.events,
        stats: pass.stats,
    })
}
