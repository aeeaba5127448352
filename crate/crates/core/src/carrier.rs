//! Phase carriers and excitation-number-conserving gates.
//!
//! A two-qubit gate `U` is a phase carrier when every pair of Z rotations
//! commutes through it up to a relabeling of angles:
//! `U (Z_{θ0} ⊗ Z_{θ1}) = (Z_{φ0} ⊗ Z_{φ1}) U`. This holds exactly when `|U|` is
//! a permutation matrix whose permutation commutes with flipping both bits.
//!
//! Basis index `k = 2·b0 + b1`, with `b0` the bit of qubit 0.

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use crate::error::Error;
use crate::linalg::{cis, Mat4, C64, UNITARITY_TOL};
use crate::su2::rz;
use crate::weyl::{weyl_coordinates, WeylCoords};

/// A permutation-matrix entry must have at least this magnitude.
pub const PERMUTATION_TOL: f64 = 1e-8;

/// Entries outside a block structure must be at most this large.
pub const ZERO_TOL: f64 = 1e-10;

/// Tolerance for Weyl-segment membership.
pub const SEGMENT_TOL: f64 = 1e-8;

const GENERALIZED_ENC_TOL: f64 = 1e-9;
const ENC_PROBES: [f64; 2] = [0.3, 1.1];

/// `(−1)^{b0}, (−1)^{b1}` for basis index `k`.
fn signs(k: usize) -> [i8; 2] {
    [
        if k & 2 == 0 { 1 } else { -1 },
        if k & 1 == 0 { 1 } else { -1 },
    ]
}

/// A bit-flip-equivariant permutation: row `j` of the gate is nonzero only
/// in column `pi[j]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CarrierPermutation {
    pub pi: [usize; 4],
    /// `sign_rows[j] = ((−1)^{π(j)_0}, (−1)^{π(j)_1})`.
    pub sign_rows: [[i8; 2]; 4],
}

impl CarrierPermutation {
    /// `None` unless `pi` is a bijection with `π(3 − k) = 3 − π(k)`.
    pub fn new(pi: [usize; 4]) -> Option<Self> {
        let mut seen = [false; 4];
        for &p in &pi {
            if p > 3 || seen[p] {
                return None;
            }
            seen[p] = true;
        }
        if (0..4).any(|k| pi[3 - k] != 3 - pi[k]) {
            return None;
        }
        Some(CarrierPermutation {
            pi,
            sign_rows: pi.map(signs),
        })
    }

    /// The 0/1 matrix with ones at `(j, π(j))`.
    pub fn matrix(&self) -> Mat4 {
        let mut m = Mat4::zeros();
        for (j, &c) in self.pi.iter().enumerate() {
            m.0[j][c] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Solve `φ0 + φ1 = s_{π(0)}(θ)` and `φ0 − φ1 = s_{π(1)}(θ)`, where
    /// `s_k(θ) = (−1)^{k_0} θ0 + (−1)^{k_1} θ1`.
    pub fn carry_map(&self) -> CarryMap {
        let [a0, a1] = self.sign_rows[0];
        let [b0, b1] = self.sign_rows[1];
        CarryMap {
            coeffs: [
                [(a0 + b0) / 2, (a1 + b1) / 2],
                [(a0 - b0) / 2, (a1 - b1) / 2],
            ],
        }
    }
}

/// All eight bit-flip-equivariant permutations, in lexicographic order.
pub fn equivariant_permutations() -> Vec<CarrierPermutation> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    if let Some(p) = CarrierPermutation::new([a, b, c, d]) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Integer linear map `(θ0, θ1) ↦ (φ0, φ1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CarryMap {
    pub coeffs: [[i8; 2]; 2],
}

impl CarryMap {
    pub const IDENTITY: CarryMap = CarryMap {
        coeffs: [[1, 0], [0, 1]],
    };

    pub fn apply(&self, theta0: f64, theta1: f64) -> (f64, f64) {
        let [r0, r1] = self.coeffs;
        (
            f64::from(r0[0]) * theta0 + f64::from(r0[1]) * theta1,
            f64::from(r1[0]) * theta0 + f64::from(r1[1]) * theta1,
        )
    }

    /// `‖U (Z_{θ0} ⊗ Z_{θ1}) − (Z_{φ0} ⊗ Z_{φ1}) U‖_max`, with no phase alignment.
    pub fn residual(&self, u: &Mat4, theta0: f64, theta1: f64) -> f64 {
        let (phi0, phi1) = self.apply(theta0, theta1);
        let lhs = *u * rz(theta0).kron(&rz(theta1));
        let rhs = rz(phi0).kron(&rz(phi1)) * *u;
        lhs.max_abs_diff(&rhs)
    }
}

/// The permutation underlying `|u|`, if it is an equivariant one.
pub fn abs_permutation(u: &Mat4) -> Result<Option<CarrierPermutation>, Error> {
    u.require_unitary(UNITARITY_TOL)?;
    let mut pi = [usize::MAX; 4];
    for (j, slot) in pi.iter_mut().enumerate() {
        let big: Vec<usize> = (0..4)
            .filter(|&k| u.0[j][k].norm() >= 1.0 - PERMUTATION_TOL)
            .collect();
        match big.as_slice() {
            [k] => *slot = *k,
            _ => return Ok(None),
        }
    }
    Ok(CarrierPermutation::new(pi))
}

pub fn is_phase_carrier(u: &Mat4) -> Result<bool, Error> {
    Ok(abs_permutation(u)?.is_some())
}

/// Carry-angle map of a phase carrier.
pub fn carry_map(u: &Mat4) -> Result<CarryMap, Error> {
    abs_permutation(u)?
        .map(|p| p.carry_map())
        .ok_or(Error::NotCarrier)
}

/// Excitation-number conserving: `u` preserves the spans of `|00⟩`,
/// `{|01⟩, |10⟩}` and `|11⟩`.
pub fn is_enc(u: &Mat4) -> Result<bool, Error> {
    u.require_unitary(UNITARITY_TOL)?;
    let block = |k: usize| match k {
        0 => 0,
        1 | 2 => 1,
        _ => 2,
    };
    Ok((0..4)
        .flat_map(|r| (0..4).map(move |c| (r, c)))
        .filter(|&(r, c)| block(r) != block(c))
        .all(|(r, c)| u.0[r][c].norm() <= ZERO_TOL))
}

/// Map `θ ↦ (k0 θ, k1 θ)` with `U (Z_θ ⊗ Z_θ) = (Z_{k0 θ} ⊗ Z_{k1 θ}) U`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EncMap {
    pub k0: i8,
    pub k1: i8,
}

impl EncMap {
    pub fn apply(&self, theta: f64) -> (f64, f64) {
        (f64::from(self.k0) * theta, f64::from(self.k1) * theta)
    }

    fn residual(&self, u: &Mat4, theta: f64) -> f64 {
        let (phi0, phi1) = self.apply(theta);
        let lhs = *u * rz(theta).kron(&rz(theta));
        let rhs = rz(phi0).kron(&rz(phi1)) * *u;
        lhs.max_abs_diff(&rhs)
    }
}

/// Detect `U (Z_θ ⊗ Z_θ) = (Z_{φ0} ⊗ Z_{φ1}) U` with `φ` linear in `θ`.
///
/// `u D(θ) u†` is unitarily similar to `diag(e^{−iθ}, 1, 1, e^{iθ})`, so a
/// diagonal right-hand side forces `k0, k1 ∈ {±1}`. Candidates are screened
/// at two probe angles and confirmed at twenty more.
pub fn is_generalized_enc(u: &Mat4) -> Result<Option<EncMap>, Error> {
    u.require_unitary(UNITARITY_TOL)?;
    for (k0, k1) in [(1, 1), (-1, -1), (1, -1), (-1, 1)] {
        let map = EncMap { k0, k1 };
        if ENC_PROBES
            .iter()
            .all(|&t| map.residual(u, t) <= GENERALIZED_ENC_TOL)
            && (0..20)
                .map(|i| -3.0 + 0.3137 * f64::from(i))
                .all(|t| map.residual(u, t) <= GENERALIZED_ENC_TOL)
        {
            return Ok(Some(map));
        }
    }
    Ok(None)
}

/// Where a Weyl point sits relative to the two carrier segments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Segment {
    /// `(x, 0, 0)`.
    ICnot,
    /// `(π/2, π/2, z)`.
    IswapSwap,
    OffSegment,
}

impl Segment {
    pub fn as_str(&self) -> &'static str {
        match self {
            Segment::ICnot => "I-CNOT",
            Segment::IswapSwap => "iSWAP-SWAP",
            Segment::OffSegment => "off-segment",
        }
    }
}

pub fn segment_of(w: &WeylCoords) -> Segment {
    if w.c2.abs() <= SEGMENT_TOL && w.c3.abs() <= SEGMENT_TOL {
        Segment::ICnot
    } else if (w.c1 - FRAC_PI_2).abs() <= SEGMENT_TOL && (w.c2 - FRAC_PI_2).abs() <= SEGMENT_TOL {
        Segment::IswapSwap
    } else {
        Segment::OffSegment
    }
}

/// Full verdict for one gate.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassifierResult {
    pub is_carrier: bool,
    pub permutation: Option<CarrierPermutation>,
    pub carry_map: Option<CarryMap>,
    pub is_enc: bool,
    pub is_generalized_enc: bool,
    pub enc_map: Option<EncMap>,
    pub weyl: WeylCoords,
    pub segment: Segment,
}

pub fn classify(u: &Mat4) -> Result<ClassifierResult, Error> {
    let permutation = abs_permutation(u)?;
    let enc = is_enc(u)?;
    let enc_map = is_generalized_enc(u)?;
    let weyl = weyl_coordinates(u)?;
    Ok(ClassifierResult {
        is_carrier: permutation.is_some(),
        permutation,
        carry_map: permutation.map(|p| p.carry_map()),
        is_enc: enc,
        is_generalized_enc: enc_map.is_some(),
        enc_map,
        weyl,
        segment: segment_of(&weyl),
    })
}

/// `diag(e^{ia}, e^{ib}, e^{ic}, e^{id}) × π`.
pub fn synthesize_carrier(perm: &CarrierPermutation, phases: [f64; 4]) -> Mat4 {
    Mat4::from_diag(phases.map(cis)) * perm.matrix()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::TwoQubitGate;
    use crate::random::{haar_u4, seeded};
    use core::f64::consts::{FRAC_PI_4, PI};
    use rand::Rng;

    fn g(gate: TwoQubitGate) -> Mat4 {
        gate.matrix()
    }

    #[test]
    fn eight_equivariant_permutations() {
        let all = equivariant_permutations();
        assert_eq!(all.len(), 8);
        // brute force over all 24 permutations
        let mut count = 0;
        for a in 0..4usize {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let p = [a, b, c, d];
                        let bij = (0..4).all(|x| p.contains(&x));
                        if bij && (0..4).all(|k| p[3 - k] == 3 - p[k]) {
                            count += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(count, 8);
    }

    #[test]
    fn abs_permutation_examples() {
        assert_eq!(
            abs_permutation(&g(TwoQubitGate::Cz)).unwrap().unwrap().pi,
            [0, 1, 2, 3]
        );
        assert_eq!(
            abs_permutation(&g(TwoQubitGate::Iswap))
                .unwrap()
                .unwrap()
                .pi,
            [0, 2, 1, 3]
        );
        assert_eq!(abs_permutation(&g(TwoQubitGate::Sqisw)).unwrap(), None);
        // CNOT is a permutation but not an equivariant one
        assert_eq!(abs_permutation(&g(TwoQubitGate::Cnot)).unwrap(), None);
    }

    #[test]
    fn carrier_verdicts() {
        let mut rng = seeded(3);
        assert!(is_phase_carrier(&g(TwoQubitGate::Cz)).unwrap());
        assert!(!is_phase_carrier(&g(TwoQubitGate::Cnot)).unwrap());
        assert!(is_phase_carrier(&g(TwoQubitGate::Swap)).unwrap());
        assert!(is_phase_carrier(&g(TwoQubitGate::Iswap)).unwrap());
        for _ in 0..20 {
            let phi = rng.random_range(-PI..PI);
            assert!(is_phase_carrier(&g(TwoQubitGate::Cphase(phi))).unwrap());
        }
        for _ in 0..100 {
            assert!(!is_phase_carrier(&haar_u4(&mut rng)).unwrap());
        }
    }

    #[test]
    fn carry_map_examples() {
        assert_eq!(carry_map(&g(TwoQubitGate::Cz)).unwrap(), CarryMap::IDENTITY);
        let swapped = CarryMap {
            coeffs: [[0, 1], [1, 0]],
        };
        assert_eq!(carry_map(&g(TwoQubitGate::Iswap)).unwrap(), swapped);
        assert_eq!(carry_map(&g(TwoQubitGate::Swap)).unwrap(), swapped);
        assert_eq!(carry_map(&g(TwoQubitGate::Cnot)), Err(Error::NotCarrier));
    }

    #[test]
    fn synthesized_carriers_verify() {
        let mut rng = seeded(4);
        for _ in 0..500 {
            let perms = equivariant_permutations();
            let perm = perms[rng.random_range(0..8)];
            let phases = [(); 4].map(|_| rng.random_range(-PI..PI));
            let u = synthesize_carrier(&perm, phases);
            let map = carry_map(&u).unwrap();
            for _ in 0..5 {
                let (t0, t1) = (rng.random_range(-PI..PI), rng.random_range(-PI..PI));
                assert!(map.residual(&u, t0, t1) <= 1e-10);
            }
            let class = classify(&u).unwrap();
            assert_ne!(class.segment, Segment::OffSegment, "{:?}", class.weyl);
            assert!(class.is_generalized_enc);
        }
    }

    #[test]
    fn enc_examples() {
        for gate in [
            TwoQubitGate::Cphase(0.7),
            TwoQubitGate::Sqisw,
            TwoQubitGate::Iswap,
            TwoQubitGate::Fsim(0.4, 1.3),
        ] {
            assert!(is_enc(&g(gate.clone())).unwrap(), "{gate}");
            assert_eq!(
                is_generalized_enc(&g(gate)).unwrap(),
                Some(EncMap { k0: 1, k1: 1 })
            );
        }
        assert!(is_enc(&Mat4::identity()).unwrap());
        assert!(!is_enc(&g(TwoQubitGate::Cnot)).unwrap());
        assert_eq!(is_generalized_enc(&g(TwoQubitGate::Cnot)).unwrap(), None);
    }

    #[test]
    fn generalized_enc_restricts_carry_map() {
        for perm in equivariant_permutations() {
            let u = synthesize_carrier(&perm, [0.1, -0.4, 1.2, 2.0]);
            let full = perm.carry_map();
            let map = is_generalized_enc(&u).unwrap().unwrap();
            let (a, b) = full.apply(0.77, 0.77);
            let (c, d) = map.apply(0.77);
            assert!(
                (a - c).abs() < 1e-12 && (b - d).abs() < 1e-12,
                "{:?}",
                perm.pi
            );
        }
    }

    #[test]
    fn segments() {
        let mut rng = seeded(8);
        for _ in 0..20 {
            let phi = rng.random_range(-PI..PI);
            let w = weyl_coordinates(&g(TwoQubitGate::Cphase(phi))).unwrap();
            assert_eq!(segment_of(&w), Segment::ICnot);
        }
        let swap_like = synthesize_carrier(
            &CarrierPermutation::new([0, 2, 1, 3]).unwrap(),
            [0.3, 0.0, 0.0, -0.2],
        );
        assert_eq!(
            segment_of(&weyl_coordinates(&swap_like).unwrap()),
            Segment::IswapSwap
        );
        let w = weyl_coordinates(&g(TwoQubitGate::Sqisw)).unwrap();
        assert_eq!(segment_of(&w), Segment::OffSegment);
        assert!(
            w.max_abs_diff(&WeylCoords {
                c1: FRAC_PI_4,
                c2: FRAC_PI_4,
                c3: 0.0
            }) < 1e-8
        );
    }

    #[test]
    fn classify_sqisw() {
        let r = classify(&g(TwoQubitGate::Sqisw)).unwrap();
        assert!(!r.is_carrier && r.is_enc && r.is_generalized_enc);
    }

    #[test]
    fn non_unitary_rejected() {
        let mut m = Mat4::identity();
        m.0[0][0] = C64::new(2.0, 0.0);
        assert!(is_phase_carrier(&m).is_err());
        assert!(is_enc(&m).is_err());
    }
}
