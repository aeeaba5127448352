//! Named two-qubit gates.

use alloc::string::{String, ToString};
use core::f64::consts::FRAC_1_SQRT_2;
use core::fmt;

// std, when linked, provides these methods inherently
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::Error;
use crate::linalg::{cis, Mat4, C64, I, ONE};

/// A two-qubit gate by name, or a raw matrix.
#[derive(Clone, Debug, PartialEq)]
pub enum TwoQubitGate {
    Cz,
    Cnot,
    Swap,
    Iswap,
    Sqisw,
    Cphase(f64),
    Fsim(f64, f64),
    Custom(Mat4),
}

impl TwoQubitGate {
    /// Resolve a bare name plus its numeric parameters.
    pub fn from_name(name: &str, params: &[f64]) -> Result<Self, Error> {
        let upper = name.to_ascii_uppercase();
        let gate = match (upper.as_str(), params) {
            ("CZ", []) => TwoQubitGate::Cz,
            ("CNOT" | "CX", []) => TwoQubitGate::Cnot,
            ("SWAP", []) => TwoQubitGate::Swap,
            ("ISWAP", []) => TwoQubitGate::Iswap,
            ("SQISW", []) => TwoQubitGate::Sqisw,
            ("CPHASE", [phi]) => TwoQubitGate::Cphase(*phi),
            ("FSIM", [theta, phi]) => TwoQubitGate::Fsim(*theta, *phi),
            _ => return Err(Error::UnknownGate(name.to_string())),
        };
        if params.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(gate)
    }

    pub fn matrix(&self) -> Mat4 {
        let d = |a: C64, b: C64, c: C64, e: C64| Mat4::from_diag([a, b, c, e]);
        match self {
            TwoQubitGate::Cz => d(ONE, ONE, ONE, -ONE),
            TwoQubitGate::Cnot => perm(&[0, 1, 3, 2], &[ONE; 4]),
            TwoQubitGate::Swap => perm(&[0, 2, 1, 3], &[ONE; 4]),
            TwoQubitGate::Iswap => perm(&[0, 2, 1, 3], &[ONE, I, I, ONE]),
            TwoQubitGate::Sqisw => {
                let s = C64::new(FRAC_1_SQRT_2, 0.0);
                let mut m = Mat4::identity();
                m.0[1][1] = s;
                m.0[2][2] = s;
                m.0[1][2] = I * s;
                m.0[2][1] = I * s;
                m
            }
            TwoQubitGate::Cphase(phi) => d(ONE, ONE, ONE, cis(*phi)),
            TwoQubitGate::Fsim(theta, phi) => {
                let (s, c) = theta.sin_cos();
                let mut m = Mat4::identity();
                m.0[1][1] = C64::new(c, 0.0);
                m.0[2][2] = C64::new(c, 0.0);
                m.0[1][2] = C64::new(0.0, -s);
                m.0[2][1] = C64::new(0.0, -s);
                m.0[3][3] = cis(-phi);
                m
            }
            TwoQubitGate::Custom(m) => *m,
        }
    }

    /// Display name, e.g. `CZ` or `CPHASE(0.5)`.
    pub fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for TwoQubitGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwoQubitGate::Cz => write!(f, "CZ"),
            TwoQubitGate::Cnot => write!(f, "CNOT"),
            TwoQubitGate::Swap => write!(f, "SWAP"),
            TwoQubitGate::Iswap => write!(f, "ISWAP"),
            TwoQubitGate::Sqisw => write!(f, "SQISW"),
            TwoQubitGate::Cphase(phi) => write!(f, "CPHASE({phi})"),
            TwoQubitGate::Fsim(theta, phi) => write!(f, "FSIM({theta},{phi})"),
            TwoQubitGate::Custom(_) => write!(f, "CUSTOM"),
        }
    }
}

/// Matrix with `m[r][cols[r]] = phases[r]`.
fn perm(cols: &[usize; 4], phases: &[C64; 4]) -> Mat4 {
    let mut m = Mat4::zeros();
    for r in 0..4 {
        m.0[r][cols[r]] = phases[r];
    }
    m
}

/// Standard gate matrix by name; see [`TwoQubitGate::from_name`].
pub fn standard_gate(name: &str, params: &[f64]) -> Result<Mat4, Error> {
    Ok(TwoQubitGate::from_name(name, params)?.matrix())
}
