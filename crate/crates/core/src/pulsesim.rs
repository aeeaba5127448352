//! Time-stepped integration of a resonant drive in the rotating frame.
//!
//! A drive with envelope `Ω(t)` and phase `φ` has `H(t) = (Ω(t)/2)·n_φ·σ`
//! with the fixed axis `n_φ = (cos φ, −sin φ, 0)`, so `U(T) = Z_{−φ} X_σ Z_φ`
//! with `σ = ∫Ω dt`. The integrator multiplies exact per-step rotations.

use alloc::vec::Vec;

// std, when linked, provides these methods inherently
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::Error;
use crate::linalg::{cis, Mat2, C64};
use crate::su2::conj_x;

/// Largest rotation allowed in a single step, in radians.
pub const MAX_STEP_ROTATION: f64 = 0.1;

/// Gaussian envelopes are cut off at this many standard deviations.
pub const GAUSS_CUTOFF: f64 = 3.0;

/// Sampled drive amplitude `Ω` (rad/s) on a uniform grid of spacing `dt` (s).
#[derive(Clone, Debug, PartialEq)]
pub struct Envelope {
    pub samples: Vec<f64>,
    pub dt: f64,
    pub phase: f64,
}

impl Envelope {
    pub fn new(samples: Vec<f64>, dt: f64, phase: f64) -> Result<Self, Error> {
        if !(dt.is_finite() && phase.is_finite() && samples.iter().all(|s| s.is_finite())) {
            return Err(Error::NonFinite);
        }
        if dt <= 0.0 {
            return Err(Error::InvalidParams("envelope time step must be positive"));
        }
        Ok(Envelope { samples, dt, phase })
    }

    /// Constant amplitude over `duration`, sampled at `steps + 1` points.
    pub fn constant(area: f64, duration: f64, steps: usize, phase: f64) -> Result<Self, Error> {
        check_grid(duration, steps)?;
        let omega = area / duration;
        Envelope::new(
            alloc::vec![omega; steps + 1],
            duration / steps as f64,
            phase,
        )
    }

    /// Gaussian of standard deviation `width` truncated at `±3·width` and
    /// scaled so that the continuous truncated area equals `area`.
    pub fn gaussian(area: f64, width: f64, steps: usize, phase: f64) -> Result<Self, Error> {
        check_grid(width, steps)?;
        let half = GAUSS_CUTOFF * width;
        let dt = 2.0 * half / steps as f64;
        let norm = width
            * (2.0 * core::f64::consts::PI).sqrt()
            * libm::erf(GAUSS_CUTOFF / core::f64::consts::SQRT_2);
        let amp = area / norm;
        let samples = (0..=steps)
            .map(|i| {
                let t = -half + i as f64 * dt;
                amp * (-t * t / (2.0 * width * width)).exp()
            })
            .collect();
        Envelope::new(samples, dt, phase)
    }

    /// Same samples with every amplitude multiplied by `k`.
    pub fn scaled(&self, k: f64) -> Result<Self, Error> {
        Envelope::new(
            self.samples.iter().map(|s| s * k).collect(),
            self.dt,
            self.phase,
        )
    }

    fn step_areas(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples
            .windows(2)
            .map(move |w| (w[0] + w[1]) / 2.0 * self.dt)
    }
}

fn check_grid(span: f64, steps: usize) -> Result<(), Error> {
    if !span.is_finite() {
        return Err(Error::NonFinite);
    }
    if span <= 0.0 || steps == 0 {
        return Err(Error::InvalidParams(
            "envelope needs a positive span and at least one step",
        ));
    }
    Ok(())
}

/// `σ = ∫Ω dt` by the trapezoidal rule.
pub fn integrate_sigma(e: &Envelope) -> Result<f64, Error> {
    if e.samples.is_empty() {
        return Err(Error::EmptyEnvelope);
    }
    Ok(e.step_areas().sum())
}

/// `exp(−i·a/2·n_φ·σ)` in closed form.
fn step_rotation(a: f64, phase: f64) -> Mat2 {
    let c = C64::new((a / 2.0).cos(), 0.0);
    let s = C64::new(0.0, -(a / 2.0).sin());
    Mat2::new(c, s * cis(phase), s * cis(-phase), c)
}

/// Time-ordered product of the per-step propagators.
pub fn drive_unitary(e: &Envelope) -> Result<Mat2, Error> {
    if e.samples.is_empty() {
        return Err(Error::EmptyEnvelope);
    }
    let mut u = Mat2::identity();
    for (step, a) in e.step_areas().enumerate() {
        if a.abs() > MAX_STEP_ROTATION {
            return Err(Error::StepTooLarge {
                step,
                rotation: a.abs(),
            });
        }
        u = step_rotation(a, e.phase) * u;
    }
    Ok(u)
}

/// Max-norm distance between the integrated propagator and
/// `Z_{−φ} X_σ Z_φ` with `σ` from [`integrate_sigma`].
pub fn closed_form_deviation(e: &Envelope) -> Result<f64, Error> {
    let u = drive_unitary(e)?;
    Ok(u.max_abs_diff(&conj_x(integrate_sigma(e)?, e.phase)))
}
