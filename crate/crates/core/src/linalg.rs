//! Fixed-size complex matrices for one- and two-qubit operators.
//!
//! Everything here is stack allocated. `Mat2` and `Mat4` are aliases of the
//! const-generic [`Mat`]; basis order for `Mat4` is |00>, |01>, |10>, |11>
//! with qubit 0 as the most significant bit.

use core::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;
// std, when linked, provides these methods inherently
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::Error;

pub type C64 = Complex64;

/// Default max-norm tolerance for matrix comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Tolerance used when accepting externally supplied matrices as unitary.
pub const UNITARITY_TOL: f64 = 1e-8;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
pub(crate) const I: C64 = C64::new(0.0, 1.0);

/// Unit complex number `e^{i x}`.
#[inline]
pub fn cis(x: f64) -> C64 {
    C64::new(x.cos(), x.sin())
}

/// Reduce an angle to `[-pi, pi)`.
pub fn normalize_angle(x: f64) -> f64 {
    use core::f64::consts::{PI, TAU};
    let mut r = x - TAU * ((x + PI) / TAU).floor();
    if r >= PI {
        r -= TAU;
    }
    if r < -PI {
        r += TAU;
    }
    // -0.0 prints badly and compares oddly in golden files
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Row-major square complex matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat<const N: usize>(pub [[C64; N]; N]);

pub type Mat2 = Mat<2>;
pub type Mat4 = Mat<4>;

impl<const N: usize> Mat<N> {
    pub const fn zeros() -> Self {
        Mat([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for k in 0..N {
            m.0[k][k] = ONE;
        }
        m
    }

    pub fn from_diag(d: [C64; N]) -> Self {
        let mut m = Self::zeros();
        for k in 0..N {
            m.0[k][k] = d[k];
        }
        m
    }

    /// Build from a row-major slice of exactly `N*N` entries.
    pub fn from_row_major(entries: &[C64]) -> Option<Self> {
        if entries.len() != N * N {
            return None;
        }
        let mut m = Self::zeros();
        for (k, z) in entries.iter().enumerate() {
            m.0[k / N][k % N] = *z;
        }
        Some(m)
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for r in 0..N {
            for c in 0..N {
                m.0[c][r] = self.0[r][c].conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros();
        for r in 0..N {
            for c in 0..N {
                m.0[c][r] = self.0[r][c];
            }
        }
        m
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|z| *z *= s);
        m
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|k| self.0[k][k]).sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = &C64> {
        self.0.iter().flatten()
    }

    pub fn is_finite(&self) -> bool {
        self.entries().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `max |a_ij - b_ij|`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries()
            .zip(other.entries())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `‖M†M − I‖_max`.
    pub fn unitarity_defect(&self) -> f64 {
        (self.adjoint() * *self).max_abs_diff(&Self::identity())
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.is_finite() && self.unitarity_defect() <= tol
    }

    pub(crate) fn require_unitary(&self, tol: f64) -> Result<(), Error> {
        if !self.is_finite() {
            return Err(Error::NonFinite);
        }
        let defect = self.unitarity_defect();
        if defect > tol {
            return Err(Error::NonUnitary { defect });
        }
        Ok(())
    }

    /// Divide by the phase of the largest-magnitude entry so that entry
    /// becomes positive real. Ties go to the lowest row-major index.
    pub fn canonicalize_phase(&self) -> Self {
        let mut best = ZERO;
        for z in self.entries() {
            if z.norm() > best.norm() {
                best = *z;
            }
        }
        if best.norm() == 0.0 {
            return *self;
        }
        self.scale((best / best.norm()).conj())
    }

    /// Max-norm distance between `self` and `other` after aligning the
    /// global phase of `other` to `self` through the trace overlap.
    pub fn phase_distance(&self, other: &Self) -> f64 {
        let overlap = (other.adjoint() * *self).trace();
        let phase = if overlap.norm() > 0.0 {
            overlap / overlap.norm()
        } else {
            ONE
        };
        self.max_abs_diff(&other.scale(phase))
    }
}

impl<const N: usize> Default for Mat<N> {
    fn default() -> Self {
        Self::identity()
    }
}

impl<const N: usize> Index<(usize, usize)> for Mat<N> {
    type Output = C64;
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.0[r][c]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for Mat<N> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.0[r][c]
    }
}

impl<const N: usize> Mul for Mat<N> {
    type Output = Mat<N>;
    fn mul(self, rhs: Mat<N>) -> Mat<N> {
        let mut m = Mat::<N>::zeros();
        for r in 0..N {
            for c in 0..N {
                let mut acc = ZERO;
                for k in 0..N {
                    acc += self.0[r][k] * rhs.0[k][c];
                }
                m.0[r][c] = acc;
            }
        }
        m
    }
}

impl Mat2 {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Mat([[a, b], [c, d]])
    }

    pub fn det(&self) -> C64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    /// Kronecker product `self ⊗ rhs`; `self` acts on qubit 0.
    pub fn kron(&self, rhs: &Mat2) -> Mat4 {
        let mut m = Mat4::zeros();
        for r in 0..4 {
            for c in 0..4 {
                m.0[r][c] = self.0[r >> 1][c >> 1] * rhs.0[r & 1][c & 1];
            }
        }
        m
    }
}

impl Mat4 {
    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> C64 {
        let mut a = self.0;
        let mut det = ONE;
        for col in 0..4 {
            let pivot = (col..4)
                .max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm()))
                .unwrap_or(col);
            if a[pivot][col].norm() == 0.0 {
                return ZERO;
            }
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            det *= a[col][col];
            for r in col + 1..4 {
                let f = a[r][col] / a[col][col];
                for c in col..4 {
                    let v = a[col][c];
                    a[r][c] -= f * v;
                }
            }
        }
        det
    }

    /// Swap the roles of the two qubits: `SWAP · self · SWAP`.
    pub fn swap_qubits(&self) -> Self {
        const P: [usize; 4] = [0, 2, 1, 3];
        let mut m = Mat4::zeros();
        for r in 0..4 {
            for c in 0..4 {
                m.0[P[r]][P[c]] = self.0[r][c];
            }
        }
        m
    }
}

/// Max-norm equality up to a global phase.
///
/// Fails with [`Error::InvalidTolerance`] when `tol <= 0`.
pub fn equal_up_to_global_phase<const N: usize>(
    a: &Mat<N>,
    b: &Mat<N>,
    tol: f64,
) -> Result<bool, Error> {
    if !(tol > 0.0) {
        return Err(Error::InvalidTolerance(tol));
    }
    Ok(a.phase_distance(b) <= tol)
}

/// Cyclic Jacobi eigen-decomposition of a real symmetric 4×4 matrix.
///
/// Returns `(eigenvalues, v)` where column `k` of `v` is the eigenvector for
/// `eigenvalues[k]`.
pub(crate) fn symmetric_eigen4(mut a: [[f64; 4]; 4]) -> ([f64; 4], [[f64; 4]; 4]) {
    let mut v = [[0.0; 4]; 4];
    for (k, row) in v.iter_mut().enumerate() {
        row[k] = 1.0;
    }
    for _sweep in 0..64 {
        let off: f64 = (0..4)
            .flat_map(|p| (p + 1..4).map(move |q| (p, q)))
            .map(|(p, q)| a[p][q] * a[p][q])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..4 {
            for q in p + 1..4 {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..4 {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..4 {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let vkp = row[p];
                    let vkq = row[q];
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }
    ([a[0][0], a[1][1], a[2][2], a[3][3]], v)
}
