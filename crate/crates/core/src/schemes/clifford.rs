//! The 24 single-qubit Cliffords (modulo global phase), each with a
//! sequence of at most two fixed-angle pulses.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

// std, when linked, provides these methods inherently
#[allow(unused_imports)]
use num_traits::Float;
use once_cell::race::OnceBox;

use super::{anti_diagonal_pulse, Pulse, PulseSequence};
use crate::linalg::{Mat2, C64, I, ONE};
use crate::su2::{rx, rz, to_special_unitary};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CliffordCategory {
    /// Identity, Pauli rotations and half-rotations.
    PauliRot,
    /// `π` rotations about axes halfway between two coordinate axes.
    HadamardCousin,
    /// `±2π/3` rotations about the body diagonals.
    YAnalog,
}

#[derive(Clone, Debug)]
pub struct CliffordEntry {
    pub index: usize,
    pub name: &'static str,
    pub matrix: Mat2,
    pub category: CliffordCategory,
    /// Rotation axis `(n_x, n_y, n_z)`; `None` for the identity.
    pub axis: Option<[f64; 3]>,
    pub sequence: PulseSequence,
}

static TABLE: OnceBox<Vec<CliffordEntry>> = OnceBox::new();

/// All 24 entries, built on first use.
pub fn clifford_table() -> &'static [CliffordEntry] {
    TABLE
        .get_or_init(|| alloc::boxed::Box::new(build()))
        .as_slice()
}

/// `exp(−i angle/2 · n·σ)`.
fn axis_rotation(n: [f64; 3], angle: f64) -> Mat2 {
    let (s, c) = (angle / 2.0).sin_cos();
    let [x, y, z] = n;
    let c = C64::new(c, 0.0);
    Mat2::new(
        c - I * s * z,
        (-I * x - y) * s,
        (-I * x + y) * s,
        c + I * s * z,
    )
}

fn ry(angle: f64) -> Mat2 {
    axis_rotation([0.0, 1.0, 0.0], angle)
}

fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Arg of `re + i·im` for sign-valued components.
fn arg(re: f64, im: f64) -> f64 {
    im.atan2(re)
}

/// Hadamard cousins with `n_z ≠ 0`: a `π` pulse with phase `φ`, then a
/// `π/2` pulse with phase `θ`, where `e^{iφ} = sgn n_x − i sgn n_y` and
/// `e^{i(θ−φ)} = i sgn n_z`.
fn hadamard_cousin_pulses(n: [f64; 3]) -> [Pulse; 2] {
    let phi = arg(sgn(n[0]), -sgn(n[1]));
    let theta = phi + arg(0.0, sgn(n[2]));
    [Pulse::new(PI, phi), Pulse::new(FRAC_PI_2, theta)]
}

/// Solve `(Z_{−θ} X_{π/2} Z_θ)(Z_{−φ} X_π Z_φ) ≐ v` for a gate with
/// `|v00| = |v01| = 1/√2`. The product equals
/// `(1/√2) [[−e^{i(θ−φ)}, −i e^{iφ}], [−i e^{−iφ}, −e^{−i(θ−φ)}]]`.
pub(crate) fn pi_then_half_pi(v: &Mat2) -> [Pulse; 2] {
    let m = &v.0;
    let c = (-ONE / (m[0][1] * m[1][0] * 2.0)).sqrt();
    let e_phi = I * c * m[0][1] * 2.0.sqrt();
    let e_diff = -c * m[0][0] * 2.0.sqrt();
    let phi = e_phi.arg();
    [
        Pulse::new(PI, phi),
        Pulse::new(FRAC_PI_2, phi + e_diff.arg()),
    ]
}

fn build() -> Vec<CliffordEntry> {
    use CliffordCategory::*;
    let h = FRAC_1_SQRT_2;
    let t = 1.0 / 3.0.sqrt();
    let p = |s: f64, ph: f64| Pulse::new(s, ph);
    let mut rows: Vec<(
        &'static str,
        Mat2,
        CliffordCategory,
        Option<[f64; 3]>,
        Vec<Pulse>,
    )> = alloc::vec![
        ("I", Mat2::identity(), PauliRot, None, alloc::vec![]),
        (
            "X180",
            rx(PI),
            PauliRot,
            Some([1.0, 0.0, 0.0]),
            alloc::vec![p(PI, 0.0)]
        ),
        (
            "X90",
            rx(FRAC_PI_2),
            PauliRot,
            Some([1.0, 0.0, 0.0]),
            alloc::vec![p(FRAC_PI_2, 0.0)]
        ),
        (
            "X-90",
            rx(-FRAC_PI_2),
            PauliRot,
            Some([1.0, 0.0, 0.0]),
            alloc::vec![p(FRAC_PI_2, PI)]
        ),
        (
            "Y180",
            ry(PI),
            PauliRot,
            Some([0.0, 1.0, 0.0]),
            alloc::vec![p(PI, -FRAC_PI_2)]
        ),
        (
            "Y90",
            ry(FRAC_PI_2),
            PauliRot,
            Some([0.0, 1.0, 0.0]),
            alloc::vec![p(FRAC_PI_2, -FRAC_PI_2)]
        ),
        (
            "Y-90",
            ry(-FRAC_PI_2),
            PauliRot,
            Some([0.0, 1.0, 0.0]),
            alloc::vec![p(FRAC_PI_2, FRAC_PI_2)]
        ),
        (
            "Z180",
            rz(PI),
            PauliRot,
            Some([0.0, 0.0, 1.0]),
            alloc::vec![p(PI, -PI / 4.0), p(PI, PI / 4.0)],
        ),
        (
            "Z90",
            rz(FRAC_PI_2),
            PauliRot,
            Some([0.0, 0.0, 1.0]),
            alloc::vec![p(PI, -3.0 * PI / 8.0), p(PI, 3.0 * PI / 8.0)],
        ),
        (
            "Z-90",
            rz(-FRAC_PI_2),
            PauliRot,
            Some([0.0, 0.0, 1.0]),
            alloc::vec![p(PI, -5.0 * PI / 8.0), p(PI, 5.0 * PI / 8.0)],
        ),
    ];

    const COUSIN_NAMES: [&str; 6] = [
        "H(x+y)", "H(-x+y)", "H(x+z)", "H(-x+z)", "H(y+z)", "H(-y+z)",
    ];
    let cousins = [
        [h, h, 0.0],
        [-h, h, 0.0],
        [h, 0.0, h],
        [-h, 0.0, h],
        [0.0, h, h],
        [0.0, -h, h],
    ];
    for (name, n) in COUSIN_NAMES.into_iter().zip(cousins) {
        let m = axis_rotation(n, PI);
        let seq = if n[2] == 0.0 {
            // anti-diagonal: one π pulse
            let v = to_special_unitary(&m);
            alloc::vec![anti_diagonal_pulse(v[(1, 0)].arg())]
        } else {
            hadamard_cousin_pulses(n).to_vec()
        };
        rows.push((name, m, HadamardCousin, Some(n), seq));
    }

    const ANALOG_NAMES: [&str; 8] = [
        "C(+++)", "C(++-)", "C(+-+)", "C(+--)", "C(-++)", "C(-+-)", "C(--+)", "C(---)",
    ];
    for (k, name) in ANALOG_NAMES.into_iter().enumerate() {
        let s = |bit: usize| if k & (4 >> bit) == 0 { t } else { -t };
        let n = [s(0), s(1), s(2)];
        let m = axis_rotation(n, 4.0 * PI / 3.0);
        let seq = pi_then_half_pi(&to_special_unitary(&m)).to_vec();
        rows.push((name, m, YAnalog, Some(n), seq));
    }

    rows.into_iter()
        .enumerate()
        .map(
            |(index, (name, matrix, category, axis, seq))| CliffordEntry {
                index,
                name,
                matrix,
                category,
                axis,
                sequence: PulseSequence(seq),
            },
        )
        .collect()
}
