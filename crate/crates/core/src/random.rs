//! Haar-random sampling of SU(2), U(4) and gate parameters.

use core::f64::consts::PI;

// std, when linked, provides these methods inherently
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{Mat2, Mat4, C64};
use crate::su2::{GateParams, Quaternion};

/// Deterministic generator used for all seeded sampling in the crate.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn haar_quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    loop {
        let v: [f64; 4] = core::array::from_fn(|_| rng.sample(StandardNormal));
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-6 {
            return Quaternion::new(v[0] / n, v[1] / n, v[2] / n, v[3] / n);
        }
    }
}

/// Haar-random element of SU(2).
pub fn haar_su2<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    haar_quaternion(rng).to_mat()
}

/// Haar-random element of U(4): Gram–Schmidt on a complex Ginibre matrix.
pub fn haar_u4<R: Rng + ?Sized>(rng: &mut R) -> Mat4 {
    let mut cols: [[C64; 4]; 4] = core::array::from_fn(|_| {
        core::array::from_fn(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
    });
    for k in 0..4 {
        for j in 0..k {
            let proj: C64 = (0..4).map(|r| cols[j][r].conj() * cols[k][r]).sum();
            for r in 0..4 {
                let v = cols[j][r];
                cols[k][r] -= proj * v;
            }
        }
        let n = cols[k].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in cols[k].iter_mut() {
            *z /= n;
        }
    }
    let mut m = Mat4::zeros();
    for (c, col) in cols.iter().enumerate() {
        for (r, z) in col.iter().enumerate() {
            m.0[r][c] = *z;
        }
    }
    m
}

/// Uniformly distributed angles: α, β ∈ [−π, π), γ ∈ [0, π/2].
pub fn random_params<R: Rng + ?Sized>(rng: &mut R) -> GateParams {
    GateParams {
        alpha: rng.random_range(-PI..PI),
        beta: rng.random_range(-PI..PI),
        gamma: rng.random_range(0.0..=PI / 2.0),
    }
}
