//! Single-qubit compilation schemes.
//!
//! Every scheme turns a target gate into a time-ordered list of conjugated X
//! rotations `Z_{−φ} X_σ Z_φ`. Index 0 of a [`PulseSequence`] is applied
//! first, so its matrix is the rightmost factor of the product.

mod clifford;

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use crate::error::Error;
use crate::linalg::{normalize_angle, Mat2, UNITARITY_TOL};
use crate::su2::{conj_x, rz, to_special_unitary, GateParams};

pub use clifford::{clifford_table, CliffordCategory, CliffordEntry};

/// Off-(anti)diagonal magnitude below which a gate counts as (anti)diagonal.
pub const STRUCTURE_TOL: f64 = 1e-10;

/// Tolerance for matching a gate against the Clifford table.
pub const CLIFFORD_TOL: f64 = 1e-8;

/// Rotation angles at or below this magnitude are dropped from sequences.
pub const ELIDE_TOL: f64 = 1e-12;

/// One conjugated X rotation: rotation angle `sigma`, phase shift `phase`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pulse {
    pub sigma: f64,
    pub phase: f64,
}

impl Pulse {
    /// The phase is reduced to `[−π, π)`; `sigma` is kept as given so that
    /// fixed-angle pulses read exactly `π/2` or `π`.
    pub fn new(sigma: f64, phase: f64) -> Self {
        Pulse {
            sigma,
            phase: normalize_angle(phase),
        }
    }

    pub fn matrix(&self) -> Mat2 {
        conj_x(self.sigma, self.phase)
    }

    pub fn is_fixed_angle(&self) -> bool {
        self.sigma == FRAC_PI_2 || self.sigma == PI
    }
}

/// Time-ordered pulses (index 0 is earliest).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PulseSequence(pub Vec<Pulse>);

impl PulseSequence {
    pub fn new(pulses: Vec<Pulse>) -> Self {
        PulseSequence(pulses)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Pulse> {
        self.0.iter()
    }

    /// `P_{n−1} ⋯ P_1 P_0`.
    pub fn product(&self) -> Mat2 {
        self.0
            .iter()
            .fold(Mat2::identity(), |acc, p| p.matrix() * acc)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchemeTag {
    VirtualZ,
    Three,
    Four,
    Two,
    Special,
}

impl SchemeTag {
    pub const ALL: [SchemeTag; 5] = [
        SchemeTag::VirtualZ,
        SchemeTag::Three,
        SchemeTag::Four,
        SchemeTag::Two,
        SchemeTag::Special,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SchemeTag::VirtualZ => "vz",
            SchemeTag::Three => "three",
            SchemeTag::Four => "four",
            SchemeTag::Two => "two",
            SchemeTag::Special => "special",
        }
    }
}

/// Output of a scheme.
///
/// The physical product of `sequence` equals `Z_{residual_z} · target` up to
/// global phase; `residual_z` is nonzero only for the virtual-Z scheme.
#[derive(Clone, Debug, PartialEq)]
pub struct CompiledGate {
    pub sequence: PulseSequence,
    pub residual_z: f64,
    pub scheme: SchemeTag,
    /// Zero-angle pulses dropped from `sequence`.
    pub elided: usize,
}

impl CompiledGate {
    fn exact(scheme: SchemeTag, pulses: Vec<Pulse>) -> Self {
        CompiledGate {
            sequence: PulseSequence(pulses),
            residual_z: 0.0,
            scheme,
            elided: 0,
        }
    }

    /// Product of the emitted pulses.
    pub fn physical(&self) -> Mat2 {
        self.sequence.product()
    }

    /// The gate this compilation realizes once the residual frame is undone:
    /// `Z_{−residual_z} · physical`.
    pub fn realized(&self) -> Mat2 {
        rz(-self.residual_z) * self.physical()
    }

    pub fn pulse_count(&self) -> usize {
        self.sequence.len()
    }
}

/// Three fixed-angle pulses `π/2, π, π/2` with phases
/// `θ = α − β`, `ω = −α − β`, `φ = −β + γ − π`.
pub fn three_pulse(p: &GateParams) -> CompiledGate {
    let theta = p.alpha - p.beta;
    let omega = -p.alpha - p.beta;
    let phi = -p.beta + p.gamma - PI;
    CompiledGate::exact(
        SchemeTag::Three,
        alloc::vec![
            Pulse::new(FRAC_PI_2, omega),
            Pulse::new(PI, phi),
            Pulse::new(FRAC_PI_2, theta),
        ],
    )
}

/// Euler angles `(θ, φ, ω)` with `Z_θ X_{π/2} Z_φ X_{π/2} Z_ω ≐ U(α, β, γ)`.
pub fn virtual_z_angles(p: &GateParams) -> (f64, f64, f64) {
    (
        -p.alpha + p.beta,
        PI - 2.0 * p.gamma,
        -p.alpha - p.beta - PI,
    )
}

/// Two `π/2` pulses with phases `ω` then `ω + φ`, leaving the extraneous
/// rotation `Z_{−(θ+φ+ω)}` as `residual_z`.
pub fn virtual_z(p: &GateParams) -> CompiledGate {
    let (theta, phi, omega) = virtual_z_angles(p);
    CompiledGate {
        sequence: PulseSequence(alloc::vec![
            Pulse::new(FRAC_PI_2, omega),
            Pulse::new(FRAC_PI_2, omega + phi),
        ]),
        residual_z: normalize_angle(-(theta + phi + omega)),
        scheme: SchemeTag::VirtualZ,
        elided: 0,
    }
}

/// The `π` pulse of the three-pulse scheme split into two `π/2` pulses.
pub fn four_pulse(p: &GateParams) -> CompiledGate {
    let theta = p.alpha - p.beta;
    let omega = -p.alpha - p.beta;
    let phi = -p.beta + p.gamma - PI;
    CompiledGate::exact(
        SchemeTag::Four,
        alloc::vec![
            Pulse::new(FRAC_PI_2, omega),
            Pulse::new(FRAC_PI_2, phi),
            Pulse::new(FRAC_PI_2, phi),
            Pulse::new(FRAC_PI_2, theta),
        ],
    )
}

/// A `π` pulse followed by one variable-angle pulse with
/// `σ = 2γ − π`, `θ = 3π/2 + α − β`, `ω = 3π/2 − β`.
pub fn two_pulse(p: &GateParams) -> CompiledGate {
    let sigma = 2.0 * p.gamma - PI;
    let theta = 1.5 * PI + p.alpha - p.beta;
    let omega = 1.5 * PI - p.beta;
    let mut pulses = alloc::vec![Pulse::new(PI, omega)];
    let mut elided = 0;
    if sigma.abs() <= ELIDE_TOL {
        elided = 1;
    } else {
        pulses.push(Pulse::new(sigma, theta));
    }
    CompiledGate {
        sequence: PulseSequence(pulses),
        residual_z: 0.0,
        scheme: SchemeTag::Two,
        elided,
    }
}

/// Compile with the three-, four- or two-pulse scheme, or virtual-Z.
pub fn compile_with(scheme: SchemeTag, p: &GateParams) -> Option<CompiledGate> {
    match scheme {
        SchemeTag::VirtualZ => Some(virtual_z(p)),
        SchemeTag::Three => Some(three_pulse(p)),
        SchemeTag::Four => Some(four_pulse(p)),
        SchemeTag::Two => Some(two_pulse(p)),
        SchemeTag::Special => None,
    }
}

/// Single `π` pulse matching an anti-diagonal SU(2) gate with lower-left
/// entry `e^{iβ}`: phase `3π/2 − β`.
pub(crate) fn anti_diagonal_pulse(beta: f64) -> Pulse {
    Pulse::new(PI, 1.5 * PI - beta)
}

/// Two `π` pulses of opposite phase matching `diag(e^{iα}, e^{−iα})`:
/// phase `θ = −(α + π)/2` first, then `−θ`.
pub(crate) fn diagonal_pulses(alpha: f64) -> [Pulse; 2] {
    let theta = -(alpha + PI) / 2.0;
    [Pulse::new(PI, theta), Pulse::new(PI, -theta)]
}

/// Recognize gates that need fewer than three pulses.
///
/// Checked in order: identity (no pulses), anti-diagonal (one `π` pulse),
/// diagonal (two `π` pulses), single-qubit Clifford (at most two pulses).
/// Returns `Ok(None)` when none apply.
pub fn special_case(u: &Mat2) -> Result<Option<CompiledGate>, Error> {
    u.require_unitary(UNITARITY_TOL)?;
    let v = to_special_unitary(u);
    let m = &v.0;
    let special = |pulses: Vec<Pulse>| Some(CompiledGate::exact(SchemeTag::Special, pulses));

    if v.phase_distance(&Mat2::identity()) <= STRUCTURE_TOL {
        return Ok(special(Vec::new()));
    }
    if m[0][0].norm() <= STRUCTURE_TOL && m[1][1].norm() <= STRUCTURE_TOL {
        return Ok(special(alloc::vec![anti_diagonal_pulse(m[1][0].arg())]));
    }
    if m[0][1].norm() <= STRUCTURE_TOL && m[1][0].norm() <= STRUCTURE_TOL {
        return Ok(special(diagonal_pulses(m[0][0].arg()).to_vec()));
    }
    for entry in clifford_table() {
        if v.phase_distance(&entry.matrix) <= CLIFFORD_TOL {
            return Ok(special(entry.sequence.0.clone()));
        }
    }
    Ok(None)
}

/// Rewrite a three- or two-pulse compilation so that it realizes
/// `Z_{δL} · U · Z_{δR}`, by shifting pulse phases only.
///
/// For the three-pulse scheme: `θ ↦ θ − δL`, `φ ↦ φ + (δR − δL)/2`,
/// `ω ↦ ω + δR`. The two-pulse scheme uses the same `π`-pulse identity.
pub fn absorb_z(c: &CompiledGate, delta_l: f64, delta_r: f64) -> Result<CompiledGate, Error> {
    let mid = (delta_r - delta_l) / 2.0;
    let mut out = c.clone();
    let pulses = &mut out.sequence.0;
    match (c.scheme, pulses.len()) {
        (SchemeTag::Three, 3) => {
            pulses[0] = Pulse::new(pulses[0].sigma, pulses[0].phase + delta_r);
            pulses[1] = Pulse::new(pulses[1].sigma, pulses[1].phase + mid);
            pulses[2] = Pulse::new(pulses[2].sigma, pulses[2].phase - delta_l);
        }
        (SchemeTag::Two, 1 | 2) => {
            pulses[0] = Pulse::new(pulses[0].sigma, pulses[0].phase + mid);
            if let Some(p) = pulses.get_mut(1) {
                *p = Pulse::new(p.sigma, p.phase - delta_l);
            }
        }
        _ => return Err(Error::WrongScheme),
    }
    Ok(out)
}
