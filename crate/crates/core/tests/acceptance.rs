//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};
use std::process::ExitCode;
use std::time::Instant;

use rand::Rng;

use phaseshift_core::carrier::{
    carry_map, classify, equivariant_permutations, is_phase_carrier, synthesize_carrier,
    CarrierPermutation, Segment,
};
use phaseshift_core::circuit::{alternating_benchmark, random_circuit};
use phaseshift_core::linalg::normalize_angle;
use phaseshift_core::pulsesim::{drive_unitary, Envelope};
use phaseshift_core::random::{haar_su2, haar_u4, seeded};
use phaseshift_core::schemes::virtual_z_angles;
use phaseshift_core::uniqueness::{coverage_fraction, covers_su2, AngleTriple};
use phaseshift_core::weyl::WeylCoords;
use phaseshift_core::{
    absorb_z, clifford_table, compile_circuit, conjugated_x, four_pulse, params_from_unitary,
    simulate_schedule, three_pulse, two_pulse, virtual_z, weyl_coordinates, z_rot, CompilePolicy,
    Mat2, PolicyKind, TwoQubitGate,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn scheme_exactness() -> Outcome {
    let start = Instant::now();
    let mut rng = seeded(1001);
    let mut worst = [0.0f64; 3];
    for _ in 0..10_000 {
        let target = haar_su2(&mut rng);
        let (p, _) = params_from_unitary(&target).map_err(|e| e.to_string())?;
        for (w, c) in worst
            .iter_mut()
            .zip([three_pulse(&p), four_pulse(&p), two_pulse(&p)])
        {
            *w = w.max(c.physical().phase_distance(&target));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(
        worst.iter().all(|w| *w <= 1e-9) && secs < 10.0,
        format!(
            "max deviation three={:.2e} four={:.2e} two={:.2e} over 10^4 targets in {secs:.2} s",
            worst[0], worst[1], worst[2]
        ),
    )
}

fn clifford_budget() -> Outcome {
    let table = clifford_table();
    let total: usize = table.iter().map(|e| e.sequence.len()).sum();
    let worst = table
        .iter()
        .map(|e| e.sequence.product().phase_distance(&e.matrix))
        .fold(0.0, f64::max);
    check(
        table.len() == 24 && total == 38 && worst <= 1e-10,
        format!(
            "{} gates, {total} pulses (average {:.4}), worst entry deviation {worst:.2e}",
            table.len(),
            total as f64 / table.len() as f64
        ),
    )
}

fn carrier_golden_set() -> Outcome {
    let mut rng = seeded(1003);
    let mut carriers = vec![
        ("SWAP".to_string(), TwoQubitGate::Swap.matrix()),
        ("CZ".to_string(), TwoQubitGate::Cz.matrix()),
        ("ISWAP".to_string(), TwoQubitGate::Iswap.matrix()),
    ];
    for _ in 0..20 {
        let phi = rng.random_range(-PI..PI);
        carriers.push((format!("CPHASE({phi})"), TwoQubitGate::Cphase(phi).matrix()));
    }
    let mut worst = 0.0f64;
    for (name, u) in &carriers {
        if !is_phase_carrier(u).map_err(|e| e.to_string())? {
            return Err(format!("{name} not recognized as a carrier"));
        }
        let map = carry_map(u).map_err(|e| e.to_string())?;
        for _ in 0..10 {
            let (t0, t1) = (rng.random_range(-PI..PI), rng.random_range(-PI..PI));
            worst = worst.max(map.residual(u, t0, t1));
        }
    }
    for gate in [TwoQubitGate::Cnot, TwoQubitGate::Sqisw] {
        if is_phase_carrier(&gate.matrix()).map_err(|e| e.to_string())? {
            return Err(format!("{gate} wrongly classified as a carrier"));
        }
    }
    check(
        worst <= 1e-10,
        format!(
            "{} carriers accepted, CNOT and SQISW rejected, worst carry residual {worst:.2e}",
            carriers.len()
        ),
    )
}

fn carrier_segments() -> Outcome {
    let mut rng = seeded(1004);
    let diagonal = CarrierPermutation::new([0, 1, 2, 3]).expect("identity permutation");
    let swap_like = CarrierPermutation::new([0, 2, 1, 3]).expect("swap permutation");
    assert!(equivariant_permutations().contains(&swap_like));
    let mut worst = 0.0f64;
    for i in 0..500 {
        let phases = [(); 4].map(|_| rng.random_range(-PI..PI));
        let chi = phases[0] - phases[1] - phases[2] + phases[3];
        let (u, expected, segment) = if i % 2 == 0 {
            (
                synthesize_carrier(&diagonal, phases),
                WeylCoords::canonicalize([chi / 2.0, 0.0, 0.0]),
                Segment::ICnot,
            )
        } else {
            (
                synthesize_carrier(&swap_like, phases),
                WeylCoords::canonicalize([FRAC_PI_2, FRAC_PI_2, FRAC_PI_2 - chi / 2.0]),
                Segment::IswapSwap,
            )
        };
        let r = classify(&u).map_err(|e| e.to_string())?;
        if r.segment != segment {
            return Err(format!(
                "carrier {i} classified {:?} at {:?}",
                r.segment, r.weyl
            ));
        }
        worst = worst.max(r.weyl.max_abs_diff(&expected));
    }
    let sq = weyl_coordinates(&TwoQubitGate::Sqisw.matrix()).map_err(|e| e.to_string())?;
    let sq_err = sq.max_abs_diff(&WeylCoords {
        c1: FRAC_PI_4,
        c2: FRAC_PI_4,
        c3: 0.0,
    });
    let sq_seg = classify(&TwoQubitGate::Sqisw.matrix())
        .map_err(|e| e.to_string())?
        .segment;
    check(
        worst <= 1e-8 && sq_err <= 1e-8 && sq_seg == Segment::OffSegment,
        format!(
            "500 synthesized carriers on their segment (worst coordinate error {worst:.2e}); SQISW off-segment, error {sq_err:.2e}"
        ),
    )
}

fn theorem_coverage() -> Outcome {
    let start = Instant::now();
    let is_pi = |x: f64| (x.abs() - PI).abs() < 1e-12;
    let is_half = |x: f64| (x.abs() - FRAC_PI_2).abs() < 1e-12;
    let expected = |w: [f64; 3]| {
        (0..3).any(|i| is_pi(w[i]) && (0..3).filter(|&j| j != i).all(|j| is_half(w[j])))
    };
    // exact set: every triple drawn from {0, ±π/2, π}
    let values = [0.0, FRAC_PI_2, -FRAC_PI_2, PI];
    let mut positives = 0;
    for a in values {
        for b in values {
            for c in values {
                let t = AngleTriple::new(a, b, c).map_err(|e| e.to_string())?;
                let want = expected([a, b, c]);
                if covers_su2(&t) != want {
                    return Err(format!("covers_su2 wrong at ({a}, {b}, {c})"));
                }
                positives += usize::from(want);
            }
        }
    }
    let step = PI / 7.0;
    for i in -7..=7 {
        for j in -7..=7 {
            for k in -7..=7 {
                let w = [i, j, k].map(|n| f64::from(n) * step);
                let t = AngleTriple::new(w[0], w[1], w[2]).map_err(|e| e.to_string())?;
                if covers_su2(&t) {
                    return Err(format!("covers_su2 true on the π/7 grid at {w:?}"));
                }
            }
        }
    }
    let full = coverage_fraction(&AngleTriple::new(FRAC_PI_2, PI, FRAC_PI_2).unwrap(), 500, 0);
    let partial = coverage_fraction(
        &AngleTriple::new(FRAC_PI_2, FRAC_PI_2, FRAC_PI_2).unwrap(),
        500,
        0,
    );
    let secs = start.elapsed().as_secs_f64();
    check(
        positives == 12 && full == 1.0 && partial < 0.95 && secs < 60.0,
        format!(
            "{positives} covering triples, 15^3 grid all false, coverage {full} and {partial} in {secs:.2} s"
        ),
    )
}

fn enc_reduction() -> Outcome {
    let ir = alternating_benchmark(100, &TwoQubitGate::Sqisw, &mut seeded(1006));
    let count = |kind| {
        compile_circuit(&ir, CompilePolicy::new(kind))
            .map(|s| s.pulse_count())
            .map_err(|e| e.to_string())
    };
    let (enc, three) = (
        count(PolicyKind::EncMixed)?,
        count(PolicyKind::ThreeAlways)?,
    );
    let ratio = enc as f64 / three as f64;
    let target = 5.0 / 6.0;
    check(
        (ratio - target).abs() <= 0.02 * target,
        format!("depth 100: {enc}/{three} pulses, ratio {ratio:.4} vs 5/6"),
    )
}

fn circuit_equivalence() -> Outcome {
    let mut rng = seeded(1007);
    let carriers = vec![
        TwoQubitGate::Cz,
        TwoQubitGate::Swap,
        TwoQubitGate::Iswap,
        TwoQubitGate::Cphase(0.9),
    ];
    let mut enc = carriers.clone();
    enc.extend([TwoQubitGate::Sqisw, TwoQubitGate::Fsim(0.4, -1.2)]);
    let mut worst = 0.0f64;
    for kind in PolicyKind::ALL {
        for _ in 0..200 {
            let mut any = enc.clone();
            any.extend([TwoQubitGate::Cnot, TwoQubitGate::Custom(haar_u4(&mut rng))]);
            let pool = match kind {
                PolicyKind::VirtualZCarry => &carriers,
                PolicyKind::EncMixed => &enc,
                _ => &any,
            };
            let ir = random_circuit(&mut rng, 20, pool);
            let s = compile_circuit(&ir, CompilePolicy::new(kind)).map_err(|e| e.to_string())?;
            let d = simulate_schedule(&s, &ir)
                .map_err(|e| e.to_string())?
                .deviation;
            worst = worst.max(d);
        }
    }
    check(
        worst <= 1e-8,
        format!("800 circuits (200 per policy), worst deviation {worst:.2e}"),
    )
}

fn virtual_z_residual() -> Outcome {
    let mut rng = seeded(1008);
    let (mut worst_u, mut worst_r) = (0.0f64, 0.0f64);
    for _ in 0..10_000 {
        let target = haar_su2(&mut rng);
        let (p, _) = params_from_unitary(&target).map_err(|e| e.to_string())?;
        let c = virtual_z(&p);
        let (theta, phi, omega) = virtual_z_angles(&p);
        // the pulses realize Z_residual · target
        let moved = z_rot(c.residual_z).unwrap() * target;
        worst_u = worst_u.max(c.physical().phase_distance(&moved));
        let undone = z_rot(-c.residual_z).unwrap() * c.physical();
        worst_u = worst_u.max(undone.phase_distance(&target));
        let r = normalize_angle(c.residual_z + theta + phi + omega).abs();
        worst_r = worst_r.max(r.min(TAU - r));
    }
    check(
        worst_u <= 1e-9 && worst_r <= 1e-9,
        format!("10^4 targets: worst pulses vs Z·target deviation {worst_u:.2e}, residual formula error {worst_r:.2e}"),
    )
}

fn z_absorption() -> Outcome {
    let mut rng = seeded(1009);
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let target = haar_su2(&mut rng);
        let (p, _) = params_from_unitary(&target).map_err(|e| e.to_string())?;
        let (dl, dr) = (rng.random_range(-PI..PI), rng.random_range(-PI..PI));
        let c = if i % 2 == 0 {
            three_pulse(&p)
        } else {
            two_pulse(&p)
        };
        let moved = absorb_z(&c, dl, dr).map_err(|e| e.to_string())?;
        let want: Mat2 = z_rot(dl).unwrap() * target * z_rot(dr).unwrap();
        worst = worst.max(moved.physical().phase_distance(&want));
        if moved.sequence.len() != c.sequence.len() {
            return Err("absorption changed the pulse count".to_string());
        }
    }
    check(
        worst <= 1e-10,
        format!("10^3 (target, δL, δR) triples, worst deviation {worst:.2e}"),
    )
}

fn pulse_simulation() -> Outcome {
    let mut rng = seeded(1010);
    let mut worst = 0.0f64;
    for i in 0..100 {
        let area = rng.random_range(-TAU..TAU);
        let phase = rng.random_range(-PI..PI);
        let e = if i % 2 == 0 {
            Envelope::constant(area, 2e-8, 2000, phase)
        } else {
            Envelope::gaussian(area, 2e-8 / 6.0, 2000, phase)
        }
        .map_err(|e| e.to_string())?;
        let u = drive_unitary(&e).map_err(|e| e.to_string())?;
        worst = worst.max(u.phase_distance(&conjugated_x(area, phase).unwrap()));
    }
    check(
        worst <= 1e-6,
        format!("100 (area, phase) pairs, constant and Gaussian, worst deviation {worst:.2e}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("scheme exactness", scheme_exactness),
        ("Clifford pulse budget", clifford_budget),
        ("carrier golden set", carrier_golden_set),
        ("carrier Weyl segments", carrier_segments),
        ("fixed-angle coverage", theorem_coverage),
        ("ENC pulse reduction", enc_reduction),
        ("circuit equivalence", circuit_equivalence),
        ("virtual-Z residual", virtual_z_residual),
        ("Z absorption", z_absorption),
        ("pulse simulation", pulse_simulation),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} acceptance criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
