//! Weyl-chamber coordinates of two-qubit unitaries.
//!
//! The coordinates are computed from the spectrum of `m = U_Bᵀ U_B`, where
//! `U_B` is the determinant-normalized gate in the magic basis. Local gates
//! become real orthogonal in that basis, so the spectrum of `m` is a local
//! invariant. The eigenphases `2λ_k` of `m` relate to the interaction
//! coefficients through `λ = ((c1−c2+c3), (−c1+c2+c3), (c1+c2−c3), (−c1−c2−c3)) / 2`.
//!
//! `m` is unitary and symmetric, so its real and imaginary parts are commuting
//! real symmetric matrices; a generic real combination of the two is
//! diagonalized with Jacobi rotations and the same basis diagonalizes `m`.

use core::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

// std, when linked, provides these methods inherently
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::Error;
use crate::linalg::{cis, symmetric_eigen4, Mat4, C64, UNITARITY_TOL};

/// Interaction coefficients with `π/2 ≥ c1 ≥ c2 ≥ c3 ≥ 0`.
///
/// Mirror-image classes (those differing only in the sign of `c3`) share a
/// point in this chamber.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeylCoords {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl WeylCoords {
    pub fn as_array(&self) -> [f64; 3] {
        [self.c1, self.c2, self.c3]
    }

    pub fn max_abs_diff(&self, other: &WeylCoords) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Fold an arbitrary triple into the chamber using π-shifts, sign flips
    /// and permutations of the coefficients.
    pub fn canonicalize(raw: [f64; 3]) -> WeylCoords {
        let mut c = raw.map(|x| (x - PI * (x / PI).round()).abs());
        c.sort_by(|a, b| b.total_cmp(a));
        WeylCoords {
            c1: c[0],
            c2: c[1],
            c3: c[2],
        }
    }
}

fn magic_basis() -> Mat4 {
    let s = FRAC_1_SQRT_2;
    let r = C64::new(s, 0.0);
    let i = C64::new(0.0, s);
    let o = C64::new(0.0, 0.0);
    Mat4::from_row_major(&[r, o, o, i, o, i, r, o, o, i, -r, o, r, o, o, -i]).unwrap()
}

/// Combinations `cos t · Re m + sin t · Im m` tried in order until one
/// separates the joint eigenspaces.
const MIX_ANGLES: [f64; 4] = [0.6180339887, 1.2247448714, 2.2360679775, 0.3141592654];

/// Eigenvalues of a unitary symmetric 4×4 matrix.
fn symmetric_unitary_spectrum(m: &Mat4) -> [C64; 4] {
    let mut best: Option<(f64, [C64; 4])> = None;
    for t in MIX_ANGLES {
        let (s, c) = t.sin_cos();
        let mut a = [[0.0; 4]; 4];
        for r in 0..4 {
            for k in 0..4 {
                a[r][k] = c * m.0[r][k].re + s * m.0[r][k].im;
            }
        }
        let (_, p) = symmetric_eigen4(a);
        let mut d = Mat4::zeros();
        for r in 0..4 {
            for k in 0..4 {
                d.0[r][k] = C64::new(p[k][r], 0.0);
            }
        }
        let mut pc = Mat4::zeros();
        for r in 0..4 {
            for k in 0..4 {
                pc.0[r][k] = C64::new(p[r][k], 0.0);
            }
        }
        let diag = d * *m * pc;
        let off = (0..4)
            .flat_map(|r| (0..4).map(move |k| (r, k)))
            .filter(|(r, k)| r != k)
            .map(|(r, k)| diag.0[r][k].norm())
            .fold(0.0, f64::max);
        let eig = [diag.0[0][0], diag.0[1][1], diag.0[2][2], diag.0[3][3]];
        if off < 1e-12 {
            return eig;
        }
        if best.as_ref().is_none_or(|(o, _)| off < *o) {
            best = Some((off, eig));
        }
    }
    best.map(|(_, e)| e).unwrap_or([C64::new(1.0, 0.0); 4])
}

/// Canonical Weyl coordinates of a two-qubit unitary.
pub fn weyl_coordinates(u: &Mat4) -> Result<WeylCoords, Error> {
    u.require_unitary(UNITARITY_TOL)?;
    let su = u.scale(cis(-u.det().arg() / 4.0));
    let mb = magic_basis();
    let ub = mb.adjoint() * su * mb;
    let m = ub.transpose() * ub;
    let eig = symmetric_unitary_spectrum(&m);

    let mut theta = eig.map(|z| z.arg());
    // det m = 1, so the phases sum to a multiple of 2π; remove it.
    let excess = (theta.iter().sum::<f64>() / TAU).round() as i64;
    for _ in 0..excess.unsigned_abs() {
        let k = if excess > 0 {
            (0..4)
                .max_by(|&a, &b| theta[a].total_cmp(&theta[b]))
                .unwrap()
        } else {
            (0..4)
                .min_by(|&a, &b| theta[a].total_cmp(&theta[b]))
                .unwrap()
        };
        theta[k] -= TAU * excess.signum() as f64;
    }
    let lam = theta.map(|t| t / 2.0);
    Ok(WeylCoords::canonicalize([
        lam[0] + lam[2],
        lam[1] + lam[2],
        lam[0] + lam[1],
    ]))
}
