//! Single-qubit rotations, the (α, β, γ) parameterization of SU(2), and the
//! SU(2) ↔ unit quaternion isomorphism.
//!
//! Conventions used throughout the crate:
//!
//! * `Z_θ = diag(e^{−iθ/2}, e^{+iθ/2})`
//! * `X_ω = exp(−iωX/2)`
//! * a pulse with rotation angle σ and phase φ realizes `Z_{−φ} X_σ Z_φ`,
//!   which with the above equals `exp(−iσ/2 (cos φ X − sin φ Y))`.

use core::f64::consts::FRAC_PI_2;
use core::ops::Mul;

// std, when linked, provides these methods inherently
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::Error;
use crate::linalg::{cis, normalize_angle, Mat2, C64, I, ONE, UNITARITY_TOL, ZERO};

fn finite(x: f64) -> Result<f64, Error> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::NonFinite)
    }
}

#[inline]
pub(crate) fn rz(theta: f64) -> Mat2 {
    Mat2::new(cis(-theta / 2.0), ZERO, ZERO, cis(theta / 2.0))
}

#[inline]
pub(crate) fn rx(omega: f64) -> Mat2 {
    let c = C64::new((omega / 2.0).cos(), 0.0);
    let s = C64::new(0.0, -(omega / 2.0).sin());
    Mat2::new(c, s, s, c)
}

/// `Z_{−φ} X_σ Z_φ`, computed in closed form.
#[inline]
pub(crate) fn conj_x(sigma: f64, phase: f64) -> Mat2 {
    let c = C64::new((sigma / 2.0).cos(), 0.0);
    let s = -(sigma / 2.0).sin();
    Mat2::new(c, I * s * cis(phase), I * s * cis(-phase), c)
}

/// `Z_θ = diag(e^{−iθ/2}, e^{iθ/2})`.
pub fn z_rot(theta: f64) -> Result<Mat2, Error> {
    Ok(rz(finite(theta)?))
}

/// `X_ω = exp(−iωX/2)`.
pub fn x_rot(omega: f64) -> Result<Mat2, Error> {
    Ok(rx(finite(omega)?))
}

/// The conjugated X rotation `Z_{−phase} X_sigma Z_phase`.
pub fn conjugated_x(sigma: f64, phase: f64) -> Result<Mat2, Error> {
    Ok(conj_x(finite(sigma)?, finite(phase)?))
}

/// Parameters of `U(α, β, γ) = [[e^{iα} cos γ, −e^{−iβ} sin γ], [e^{iβ} sin γ, e^{−iα} cos γ]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GateParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl GateParams {
    pub const IDENTITY: GateParams = GateParams {
        alpha: 0.0,
        beta: 0.0,
        gamma: 0.0,
    };

    /// Validated constructor. `alpha` and `beta` are reduced to `[−π, π)`;
    /// `gamma` must already lie in `[0, π/2]`.
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self, Error> {
        finite(alpha)?;
        finite(beta)?;
        finite(gamma)?;
        if !(0.0..=FRAC_PI_2).contains(&gamma) {
            return Err(Error::InvalidParams("gamma must lie in [0, pi/2]"));
        }
        Ok(GateParams {
            alpha: normalize_angle(alpha),
            beta: normalize_angle(beta),
            gamma,
        })
    }

    /// Accepts any finite triple and canonicalizes it through the matrix,
    /// dropping the resulting ±1 global phase.
    pub fn from_raw(alpha: f64, beta: f64, gamma: f64) -> Result<Self, Error> {
        finite(alpha)?;
        finite(beta)?;
        finite(gamma)?;
        let raw = GateParams { alpha, beta, gamma };
        Ok(params_from_unitary(&raw.unitary())?.0)
    }

    pub fn unitary(&self) -> Mat2 {
        let (s, c) = self.gamma.sin_cos();
        Mat2::new(
            cis(self.alpha) * c,
            -cis(-self.beta) * s,
            cis(self.beta) * s,
            cis(-self.alpha) * c,
        )
    }
}

/// `U(α, β, γ)` for `p`.
pub fn unitary_from_params(p: &GateParams) -> Mat2 {
    p.unitary()
}

/// Magnitude below which an entry is treated as exactly zero when an angle
/// becomes unconstrained.
const DEGENERATE_EPS: f64 = 1e-12;

/// Decompose `u = e^{i·phase} · U(α, β, γ)`.
///
/// When `cos γ` vanishes `α` is set to 0, and when `sin γ` vanishes `β` is
/// set to 0.
pub fn params_from_unitary(u: &Mat2) -> Result<(GateParams, f64), Error> {
    u.require_unitary(UNITARITY_TOL)?;
    let phase = u.det().arg() / 2.0;
    let v = u.scale(cis(-phase));
    let a = v[(0, 0)];
    let b = v[(1, 0)];
    let gamma = b.norm().atan2(a.norm());
    let alpha = if a.norm() <= DEGENERATE_EPS {
        0.0
    } else {
        normalize_angle(a.arg())
    };
    let beta = if b.norm() <= DEGENERATE_EPS {
        0.0
    } else {
        normalize_angle(b.arg())
    };
    Ok((GateParams { alpha, beta, gamma }, normalize_angle(phase)))
}

/// Divide out `sqrt(det u)` so the result lies in SU(2). The sign choice
/// follows the principal branch of the square root.
pub fn to_special_unitary(u: &Mat2) -> Mat2 {
    u.scale(cis(-u.det().arg() / 2.0))
}

/// Quaternion `a0 + a1·i + a2·j + a3·k`.
///
/// The SU(2) correspondence is `I ↦ 1, −iZ ↦ i, −iX ↦ j, −iY ↦ k`, so the
/// matrix of `q` is `a0·I − a1·iZ − a2·iX − a3·iY`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quaternion {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl Quaternion {
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);

    pub const fn new(a0: f64, a1: f64, a2: f64, a3: f64) -> Self {
        Quaternion { a0, a1, a2, a3 }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.a0 * self.a0 + self.a1 * self.a1 + self.a2 * self.a2 + self.a3 * self.a3
    }

    pub fn is_unit(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= 1e-12
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(self.a0, -self.a1, -self.a2, -self.a3)
    }

    /// Split as `u + v·j` with `u = a0 + a1·i`, `v = a2 + a3·i`.
    pub fn to_pair(&self) -> (C64, C64) {
        (C64::new(self.a0, self.a1), C64::new(self.a2, self.a3))
    }

    pub fn from_pair(u: C64, v: C64) -> Self {
        Quaternion::new(u.re, u.im, v.re, v.im)
    }

    pub fn to_mat(&self) -> Mat2 {
        Mat2::new(
            C64::new(self.a0, -self.a1),
            C64::new(-self.a3, -self.a2),
            C64::new(self.a3, -self.a2),
            C64::new(self.a0, self.a1),
        )
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, r: Quaternion) -> Quaternion {
        let l = self;
        Quaternion::new(
            l.a0 * r.a0 - l.a1 * r.a1 - l.a2 * r.a2 - l.a3 * r.a3,
            l.a0 * r.a1 + l.a1 * r.a0 + l.a2 * r.a3 - l.a3 * r.a2,
            l.a0 * r.a2 - l.a1 * r.a3 + l.a2 * r.a0 + l.a3 * r.a1,
            l.a0 * r.a3 + l.a1 * r.a2 - l.a2 * r.a1 + l.a3 * r.a0,
        )
    }
}

/// Map an SU(2) matrix to its unit quaternion. The determinant must be 1
/// within `1e-9`; callers holding a U(2) element normalize first with
/// [`to_special_unitary`].
pub fn to_quaternion(u: &Mat2) -> Result<Quaternion, Error> {
    u.require_unitary(UNITARITY_TOL)?;
    let det_error = (u.det() - ONE).norm();
    if det_error > 1e-9 {
        return Err(Error::NotSpecialUnitary { det_error });
    }
    let m = &u.0;
    Ok(Quaternion::new(
        (m[0][0].re + m[1][1].re) / 2.0,
        (m[1][1].im - m[0][0].im) / 2.0,
        -(m[0][1].im + m[1][0].im) / 2.0,
        (m[1][0].re - m[0][1].re) / 2.0,
    ))
}

pub fn from_quaternion(q: &Quaternion) -> Mat2 {
    q.to_mat()
}
