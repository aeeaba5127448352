//! Which fixed rotation angles `(ω1, ω2, ω3)` let three phase-shifted
//! pulses reach every single-qubit gate.
//!
//! The set reached is `A = {Z_{θ0} X_{ω1} Z_{θ1} X_{ω2} Z_{θ2} X_{ω3} Z_{θ3} | Σθ = 0}`.
//! In quaternion form each element is `U(u1, u2) + V(u1, u2, u3)·j` with
//! `u_t = e^{−iθ_t}` and `a_t = (cos ω_t/2, sin ω_t/2)`:
//!
//! ```text
//! U = a1⁰a2⁰a3⁰ − a1¹a2¹a3⁰·u1 − a1⁰a2¹a3¹·u2 − a1¹a2⁰a3¹·u1u2
//! V = a1⁰a2⁰a3¹·u3 + a1⁰a2¹a3⁰·u2u3 + a1¹a2⁰a3⁰·u1u2u3 − a1¹a2¹a3¹·u1u3
//! ```
//!
//! `A` covers SU(2)/{±I} exactly when `U` has zero constant term, one zero
//! coefficient and two coefficients of magnitude 1/2; that happens exactly
//! when one angle is `π` and the other two are `±π/2`.

use core::f64::consts::{FRAC_PI_2, PI};

// std, when linked, provides these methods inherently
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::Error;
use crate::linalg::{cis, normalize_angle, Mat2, C64};
use crate::random::{haar_su2, seeded};
use crate::schemes::{Pulse, PulseSequence};
use crate::su2::{rx, rz, to_quaternion};

/// Tolerance for the exact covering predicate.
pub const COVER_TOL: f64 = 1e-10;

/// A numerical solution must reproduce the target to this accuracy.
pub const SOLVE_TOL: f64 = 1e-6;

const GRID: usize = 64;
const REFINE_STARTS: usize = 8;
const REFINE_ITERS: usize = 60;

/// Three fixed rotation angles in matrix-product order.
///
/// Angles are kept as given: `ω` and `ω + 2π` give the same rotation up to
/// sign, which flips the sign of some coefficients but not the verdicts.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AngleTriple {
    pub omega1: f64,
    pub omega2: f64,
    pub omega3: f64,
}

impl AngleTriple {
    pub fn new(omega1: f64, omega2: f64, omega3: f64) -> Result<Self, Error> {
        if ![omega1, omega2, omega3].iter().all(|w| w.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(AngleTriple {
            omega1,
            omega2,
            omega3,
        })
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.omega1, self.omega2, self.omega3]
    }

    /// `(cos ω_t/2, sin ω_t/2)` for each angle.
    fn halves(&self) -> [(f64, f64); 3] {
        self.as_array().map(|w| {
            let (s, c) = (w / 2.0).sin_cos();
            (c, s)
        })
    }
}

/// Coefficients of `1, u1, u2, u1·u2` in `U`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoverageCoeffs {
    pub b00: f64,
    pub b01: f64,
    pub b10: f64,
    pub b11: f64,
}

impl CoverageCoeffs {
    pub fn eval(&self, u1: C64, u2: C64) -> C64 {
        C64::new(self.b00, 0.0) + u1 * self.b01 + u2 * self.b10 + u1 * u2 * self.b11
    }
}

/// Coefficients of `u3, u2·u3, u1·u2·u3, u1·u3` in `V`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VCoeffs(pub [f64; 4]);

impl VCoeffs {
    /// `V / u3`.
    pub fn eval_without_u3(&self, u1: C64, u2: C64) -> C64 {
        let [c0, c1, c2, c3] = self.0;
        C64::new(c0, 0.0) + u2 * c1 + u1 * u2 * c2 + u1 * c3
    }

    pub fn eval(&self, u1: C64, u2: C64, u3: C64) -> C64 {
        u3 * self.eval_without_u3(u1, u2)
    }
}

pub fn product_coeffs(t: &AngleTriple) -> (CoverageCoeffs, VCoeffs) {
    let [(a10, a11), (a20, a21), (a30, a31)] = t.halves();
    (
        CoverageCoeffs {
            b00: a10 * a20 * a30,
            b01: -a11 * a21 * a30,
            b10: -a10 * a21 * a31,
            b11: -a11 * a20 * a31,
        },
        VCoeffs([
            a10 * a20 * a31,
            a10 * a21 * a30,
            a11 * a20 * a30,
            -a11 * a21 * a31,
        ]),
    )
}

fn near(x: f64, y: f64) -> bool {
    (x - y).abs() <= COVER_TOL
}

/// Exact test: zero constant term, exactly one vanishing coefficient and
/// the other two equal to `±1/2`.
pub fn covers_su2(t: &AngleTriple) -> bool {
    let (c, _) = product_coeffs(t);
    if !near(c.b00, 0.0) {
        return false;
    }
    let rest = [c.b01, c.b10, c.b11];
    let zeros = rest.iter().filter(|b| near(**b, 0.0)).count();
    zeros == 1
        && rest
            .iter()
            .filter(|b| !near(**b, 0.0))
            .all(|b| near(b.abs(), 0.5))
}

/// `Z_{θ0} X_{ω1} Z_{θ1} X_{ω2} Z_{θ2} X_{ω3} Z_{θ3}` with `θ0 = −(θ1+θ2+θ3)`.
pub fn triple_product(t: &AngleTriple, theta: [f64; 3]) -> Mat2 {
    let [t1, t2, t3] = theta;
    rz(-(t1 + t2 + t3)) * rx(t.omega1) * rz(t1) * rx(t.omega2) * rz(t2) * rx(t.omega3) * rz(t3)
}

/// Phase shifts `(φ1, φ2, φ3)` for fixed angles `(ω1, ω2, ω3)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedAngleSolution {
    pub phases: [f64; 3],
    /// Time-ordered pulses `(ω3, φ3), (ω2, φ2), (ω1, φ1)`.
    pub sequence: PulseSequence,
    /// Distance from the target up to sign.
    pub residual: f64,
}

fn build_solution(t: &AngleTriple, u: [C64; 3], target: &Mat2) -> FixedAngleSolution {
    let theta = u.map(|x| normalize_angle(-x.arg()));
    let phi3 = theta[2];
    let phi2 = theta[1] + theta[2];
    let phi1 = theta[0] + theta[1] + theta[2];
    let mut phases = [phi1, phi2, phi3].map(normalize_angle);
    if (t.omega2.abs() - PI).abs() <= 1e-12 && phases[1] >= FRAC_PI_2 {
        phases[1] -= PI;
    } else if (t.omega2.abs() - PI).abs() <= 1e-12 && phases[1] < -FRAC_PI_2 {
        phases[1] += PI;
    }
    let sequence = PulseSequence::new(alloc::vec![
        Pulse::new(t.omega3, phases[2]),
        Pulse::new(t.omega2, phases[1]),
        Pulse::new(t.omega1, phases[0]),
    ]);
    let residual = sequence.product().phase_distance(target);
    FixedAngleSolution {
        phases,
        sequence,
        residual,
    }
}

/// Pick `u3` so that `V = v` given `u1, u2`.
fn solve_u3(vc: &VCoeffs, u1: C64, u2: C64, v: C64) -> C64 {
    let g = vc.eval_without_u3(u1, u2);
    if g.norm() <= 1e-14 || v.norm() <= 1e-14 {
        C64::new(1.0, 0.0)
    } else {
        let r = v / g;
        r / r.norm()
    }
}

/// Solve `p·x + q·y = u` for unit `x, y`, with `|p| = |q| = 1/2`.
fn two_circle(p: f64, q: f64, u: C64) -> (C64, C64) {
    let psi = u.arg();
    let delta = u.norm().min(1.0).acos();
    (cis(psi + delta) / (2.0 * p), cis(psi - delta) / (2.0 * q))
}

fn closed_form(c: &CoverageCoeffs, u: C64) -> (C64, C64) {
    if near(c.b11, 0.0) {
        two_circle(c.b01, c.b10, u)
    } else if near(c.b10, 0.0) {
        // f = b01·u1 + b11·w with w = u1·u2
        let (u1, w) = two_circle(c.b01, c.b11, u);
        (u1, w * u1.conj())
    } else {
        // f = b10·u2 + b11·w
        let (u2, w) = two_circle(c.b10, c.b11, u);
        (w * u2.conj(), u2)
    }
}

/// Best `(x1, x2)` found by local refinement from `start`, minimizing
/// `|f(e^{ix1}, e^{ix2}) − u|`.
fn refine(c: &CoverageCoeffs, u: C64, start: (f64, f64)) -> ((f64, f64), f64) {
    let (mut x1, mut x2) = start;
    let resid = |x1: f64, x2: f64| c.eval(cis(x1), cis(x2)) - u;
    let mut r = resid(x1, x2);
    let mut lambda = 1e-3;
    for _ in 0..REFINE_ITERS {
        if r.norm() <= 1e-14 {
            break;
        }
        let (u1, u2) = (cis(x1), cis(x2));
        let i = C64::new(0.0, 1.0);
        let d1 = i * u1 * (C64::new(c.b01, 0.0) + u2 * c.b11);
        let d2 = i * u2 * (C64::new(c.b10, 0.0) + u1 * c.b11);
        // normal equations of the 2×2 real system
        let a11 = d1.norm_sqr() + lambda;
        let a22 = d2.norm_sqr() + lambda;
        let a12 = d1.re * d2.re + d1.im * d2.im;
        let g1 = d1.re * r.re + d1.im * r.im;
        let g2 = d2.re * r.re + d2.im * r.im;
        let det = a11 * a22 - a12 * a12;
        if det.abs() < 1e-300 {
            break;
        }
        let s1 = -(a22 * g1 - a12 * g2) / det;
        let s2 = -(a11 * g2 - a12 * g1) / det;
        let trial = resid(x1 + s1, x2 + s2);
        if trial.norm() < r.norm() {
            x1 += s1;
            x2 += s2;
            r = trial;
            lambda = (lambda * 0.3).max(1e-12);
        } else {
            lambda *= 10.0;
        }
    }
    ((x1, x2), r.norm())
}

fn numeric(c: &CoverageCoeffs, u: C64) -> Option<(C64, C64)> {
    let step = 2.0 * PI / GRID as f64;
    let mut candidates: alloc::vec::Vec<(f64, (f64, f64))> = (0..GRID * GRID)
        .map(|k| {
            let x = ((k / GRID) as f64 * step - PI, (k % GRID) as f64 * step - PI);
            ((c.eval(cis(x.0), cis(x.1)) - u).norm(), x)
        })
        .collect();
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0));
    candidates
        .iter()
        .take(REFINE_STARTS)
        .map(|&(_, x)| refine(c, u, x))
        .filter(|(_, err)| *err <= SOLVE_TOL)
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|((x1, x2), _)| (cis(x1), cis(x2)))
}

/// Phase shifts realizing `target` (up to sign) with the fixed angles `t`.
///
/// Covering triples are solved in closed form; others by a grid search and
/// local refinement, returning `None` when nothing reaches [`SOLVE_TOL`].
pub fn solve_fixed_angles(
    target: &Mat2,
    t: &AngleTriple,
) -> Result<Option<FixedAngleSolution>, Error> {
    let q = to_quaternion(target)?;
    let (coeffs, vc) = product_coeffs(t);
    let attempt = |u: C64, v: C64| -> Option<FixedAngleSolution> {
        let (u1, u2) = if covers_su2(t) {
            closed_form(&coeffs, u)
        } else {
            numeric(&coeffs, u)?
        };
        let u3 = solve_u3(&vc, u1, u2, v);
        let sol = build_solution(t, [u1, u2, u3], target);
        (sol.residual <= SOLVE_TOL).then_some(sol)
    };
    let (u, v) = q.to_pair();
    Ok(attempt(u, v).or_else(|| attempt(-u, -v)))
}

/// Fraction of `n_samples` Haar-random targets that [`solve_fixed_angles`]
/// reaches. Sample `i` is drawn from its own generator seeded `seed + i`.
pub fn coverage_fraction(t: &AngleTriple, n_samples: usize, seed: u64) -> f64 {
    if n_samples == 0 {
        return 0.0;
    }
    let hits = (0..n_samples)
        .filter(|&i| {
            let target = haar_su2(&mut seeded(seed.wrapping_add(i as u64)));
            matches!(solve_fixed_angles(&target, t), Ok(Some(_)))
        })
        .count();
    hits as f64 / n_samples as f64
}
