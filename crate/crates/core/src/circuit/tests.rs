use super::*;
use crate::linalg::C64;
use crate::random::{haar_su2, seeded};
use crate::schemes::SchemeTag;
use crate::su2::{rx, rz};
use core::f64::consts::{FRAC_PI_2, PI};
use rand::Rng;

fn g1(qubit: usize, matrix: Mat2) -> Op {
    Op::Gate1 { qubit, matrix }
}

fn g2(q0: usize, q1: usize, gate: TwoQubitGate) -> Op {
    Op::Gate2 { q0, q1, gate }
}

fn m(qubit: usize) -> Op {
    Op::Measure { qubit }
}

fn policy(kind: PolicyKind) -> CompilePolicy {
    CompilePolicy::new(kind)
}

fn deviation(ir: &CircuitIR, p: CompilePolicy) -> f64 {
    let s = compile_circuit(ir, p).unwrap();
    simulate_schedule(&s, ir).unwrap().deviation
}

/// Checks the frame invariant after every operation.
fn check_trace(ir: &CircuitIR, p: CompilePolicy, tol: f64) {
    let (s, trace) = compile_circuit_traced(ir, p).unwrap();
    for c in &trace {
        let (physical, _) = simulate_prefix(&s.events[..c.events], ir).unwrap();
        let frames = rz(c.frames[0]).kron(&rz(c.frames[1]));
        let pending = c.pending[0].adjoint().kron(&c.pending[1].adjoint());
        let expected = frames * pending * ir.prefix_unitary(c.op_index + 1);
        let d = physical.phase_distance(&expected);
        assert!(d <= tol, "{:?} op {}: {d:e}", p.kind, c.op_index);
    }
}

#[test]
fn push_validates() {
    let mut ir = CircuitIR::new();
    assert!(ir.push(g1(2, Mat2::identity())).is_err());
    assert!(ir.push(g2(0, 0, TwoQubitGate::Cz)).is_err());
    let bad = Mat2::new(
        C64::new(2.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(1.0, 0.0),
    );
    assert!(ir.push(g1(0, bad)).is_err());
    ir.push(m(0)).unwrap();
    assert!(ir.push(g1(0, Mat2::identity())).is_err());
    assert!(ir.push(g2(1, 0, TwoQubitGate::Cz)).is_err());
    ir.push(g1(1, Mat2::identity())).unwrap();
}

#[test]
fn merge_examples() {
    let ir = CircuitIR::from_ops([g1(0, rx(FRAC_PI_2)), g1(0, rx(FRAC_PI_2))]).unwrap();
    let merged = merge_adjacent_1q(&ir);
    assert_eq!(merged.ops().len(), 1);
    let Op::Gate1 { matrix, .. } = &merged.ops()[0] else {
        panic!()
    };
    assert!(matrix.phase_distance(&rx(PI)) < 1e-12);

    let ir =
        CircuitIR::from_ops([g1(0, rx(0.3)), g2(0, 1, TwoQubitGate::Cz), g1(0, rx(0.3))]).unwrap();
    assert_eq!(merge_adjacent_1q(&ir).ops().len(), 3);

    // a gate on the other qubit does not break the run
    let ir = CircuitIR::from_ops([g1(0, rx(0.3)), g1(1, rx(0.1)), g1(0, rz(0.2))]).unwrap();
    assert_eq!(merge_adjacent_1q(&ir).ops().len(), 2);
}

#[test]
fn merge_random_chains() {
    let mut rng = seeded(1);
    for _ in 0..50 {
        let ops: Vec<Op> = (0..5).map(|_| g1(0, haar_su2(&mut rng))).collect();
        let ir = CircuitIR::from_ops(ops).unwrap();
        let merged = merge_adjacent_1q(&ir);
        assert_eq!(merged.ops().len(), 1);
        assert!(merged.unitary().phase_distance(&ir.unitary()) < 1e-12);
    }
    for _ in 0..50 {
        let ir = random_circuit(&mut rng, 20, &[TwoQubitGate::Cnot, TwoQubitGate::Sqisw]);
        let merged = merge_adjacent_1q(&ir);
        assert!(merged.unitary().phase_distance(&ir.unitary()) < 1e-10);
    }
}

#[test]
fn carrier_example_eight_pulses() {
    let mut rng = seeded(2);
    let ir = CircuitIR::from_ops([
        g1(0, haar_su2(&mut rng)),
        g1(1, haar_su2(&mut rng)),
        g2(0, 1, TwoQubitGate::Cphase(0.9)),
        g1(0, haar_su2(&mut rng)),
        g1(1, haar_su2(&mut rng)),
        m(0),
        m(1),
    ])
    .unwrap();
    let s = compile_circuit(&ir, policy(PolicyKind::VirtualZCarry)).unwrap();
    assert_eq!(s.pulse_count(), 8);
    assert_eq!(s.stats.scheme_gates[&SchemeTag::VirtualZ], 4);
    let frames = s
        .events
        .iter()
        .filter(|e| matches!(e, Event::Frame { .. }))
        .count();
    assert_eq!(frames, 2);
    assert!(simulate_schedule(&s, &ir).unwrap().deviation <= 1e-9);
    assert!(deviation(&ir, policy(PolicyKind::ThreeAlways)) <= 1e-9);
    assert_eq!(
        compile_circuit(&ir, policy(PolicyKind::ThreeAlways))
            .unwrap()
            .pulse_count(),
        12
    );
}

#[test]
fn enc_layer_five_pulses() {
    let mut rng = seeded(3);
    let layer = |rng: &mut rand_chacha::ChaCha8Rng| {
        [
            g1(0, haar_su2(rng)),
            g1(1, haar_su2(rng)),
            g2(0, 1, TwoQubitGate::Sqisw),
        ]
    };
    let mut ops = Vec::new();
    ops.extend(layer(&mut rng));
    ops.extend(layer(&mut rng));
    let ir = CircuitIR::from_ops(ops).unwrap();
    let mixed = compile_circuit(&ir, policy(PolicyKind::EncMixed)).unwrap();
    let three = compile_circuit(&ir, policy(PolicyKind::ThreeAlways)).unwrap();
    assert_eq!(three.pulse_count(), 12);
    assert_eq!(mixed.pulse_count(), 10);
    assert!(simulate_schedule(&mixed, &ir).unwrap().deviation <= 1e-9);
}

#[test]
fn benchmark_ratio_near_five_sixths() {
    let mut rng = seeded(4);
    let ir = alternating_benchmark(100, &TwoQubitGate::Sqisw, &mut rng);
    let mixed = compile_circuit(&ir, policy(PolicyKind::EncMixed)).unwrap();
    let three = compile_circuit(&ir, policy(PolicyKind::ThreeAlways)).unwrap();
    assert_eq!(three.pulse_count(), 101 * 6);
    assert_eq!(mixed.pulse_count(), 100 * 5 + 4);
    let ratio = mixed.pulse_count() as f64 / three.pulse_count() as f64;
    assert!((ratio / (5.0 / 6.0) - 1.0).abs() < 0.02);
    assert!(simulate_schedule(&mixed, &ir).unwrap().deviation <= 1e-8);
}

#[test]
fn single_gate_then_measure_uses_virtual_z() {
    let mut rng = seeded(5);
    let ir = CircuitIR::from_ops([g1(0, haar_su2(&mut rng)), m(0)]).unwrap();
    for kind in [
        PolicyKind::EncMixed,
        PolicyKind::VirtualZCarry,
        PolicyKind::Auto,
    ] {
        let s = compile_circuit(&ir, policy(kind)).unwrap();
        assert_eq!(s.pulse_count(), 2);
        assert_eq!(s.stats.scheme_gates[&SchemeTag::VirtualZ], 1);
    }
}

#[test]
fn empty_circuit() {
    let ir = CircuitIR::new();
    for kind in PolicyKind::ALL {
        let s = compile_circuit(&ir, policy(kind)).unwrap();
        assert!(s.events.is_empty());
        assert_eq!(simulate_schedule(&s, &ir).unwrap().deviation, 0.0);
    }
}

#[test]
fn illegal_policies_name_the_gate() {
    let ir = CircuitIR::from_ops([g1(0, rx(0.2)), g2(0, 1, TwoQubitGate::Sqisw)]).unwrap();
    match compile_circuit(&ir, policy(PolicyKind::VirtualZCarry)) {
        Err(Error::IllegalPolicy { op_index, gate, .. }) => {
            assert_eq!(op_index, 1);
            assert_eq!(gate, "SQISW");
        }
        other => panic!("{other:?}"),
    }
    let ir = CircuitIR::from_ops([g2(1, 0, TwoQubitGate::Cnot)]).unwrap();
    assert!(matches!(
        compile_circuit(&ir, policy(PolicyKind::EncMixed)),
        Err(Error::IllegalPolicy { gate, .. }) if gate == "CNOT"
    ));
    assert!(compile_circuit(&ir, policy(PolicyKind::Auto)).is_ok());
    assert!(compile_circuit(&ir, policy(PolicyKind::ThreeAlways)).is_ok());
}

#[test]
fn corrupted_schedule_is_detected() {
    let mut rng = seeded(6);
    let ir = random_circuit(&mut rng, 20, &[TwoQubitGate::Cz]);
    let ir = if ir.gate1_count() == 0 {
        CircuitIR::from_ops([g1(0, haar_su2(&mut rng))]).unwrap()
    } else {
        ir
    };
    let mut s = compile_circuit(&ir, policy(PolicyKind::ThreeAlways)).unwrap();
    let Some(Event::Pulse { pulse, .. }) = s
        .events
        .iter_mut()
        .find(|e| matches!(e, Event::Pulse { .. }))
    else {
        panic!("no pulses");
    };
    pulse.phase += 0.1;
    assert!(simulate_schedule(&s, &ir).unwrap().deviation > 1e-3);
}

#[test]
fn mismatched_schedule_errors() {
    let ir = CircuitIR::from_ops([g2(0, 1, TwoQubitGate::Cz)]).unwrap();
    let s = PulseSchedule::from_events(alloc::vec![Event::Gate2 {
        q0: 0,
        q1: 1,
        name: "SWAP".into()
    }]);
    assert!(matches!(
        simulate_schedule(&s, &ir),
        Err(Error::ScheduleMismatch(_))
    ));
    let s = PulseSchedule::from_events(Vec::new());
    assert!(matches!(
        simulate_schedule(&s, &ir),
        Err(Error::ScheduleMismatch(_))
    ));
}

fn pools(kind: PolicyKind) -> Vec<TwoQubitGate> {
    let cphase = TwoQubitGate::Cphase(0.7);
    let carriers = alloc::vec![
        TwoQubitGate::Cz,
        TwoQubitGate::Swap,
        TwoQubitGate::Iswap,
        cphase
    ];
    match kind {
        PolicyKind::VirtualZCarry => carriers,
        PolicyKind::EncMixed => alloc::vec![
            TwoQubitGate::Sqisw,
            TwoQubitGate::Iswap,
            TwoQubitGate::Fsim(0.4, 1.1),
            TwoQubitGate::Cz,
            TwoQubitGate::Swap,
        ],
        _ => alloc::vec![
            TwoQubitGate::Cnot,
            TwoQubitGate::Sqisw,
            TwoQubitGate::Cz,
            TwoQubitGate::Swap,
            TwoQubitGate::Fsim(0.3, -0.8),
        ],
    }
}

#[test]
fn random_circuits_all_policies() {
    let mut rng = seeded(7);
    for kind in PolicyKind::ALL {
        let pool = pools(kind);
        for i in 0..200 {
            let ir = random_circuit(&mut rng, 20, &pool);
            let p = if i % 2 == 0 {
                policy(kind)
            } else {
                policy(kind).without_special_cases()
            };
            assert!(deviation(&ir, p) <= 1e-8, "{kind:?}");
        }
    }
}

#[test]
fn frame_invariant_after_every_op() {
    let mut rng = seeded(8);
    for kind in PolicyKind::ALL {
        let pool = pools(kind);
        for _ in 0..30 {
            let ir = random_circuit(&mut rng, 20, &pool);
            check_trace(&ir, policy(kind), 1e-8);
        }
    }
}

#[test]
fn three_always_never_uses_frames() {
    let mut rng = seeded(9);
    for _ in 0..50 {
        let ir = random_circuit(&mut rng, 20, &pools(PolicyKind::Auto));
        let s = compile_circuit(&ir, policy(PolicyKind::ThreeAlways)).unwrap();
        assert!(!s.events.iter().any(|e| matches!(e, Event::Frame { .. })));
        assert!(simulate_schedule(&s, &ir).unwrap().deviation <= 1e-9);
    }
}

#[test]
fn three_always_costs_at_least_carrying() {
    let mut rng = seeded(10);
    for _ in 0..100 {
        let ir = random_circuit(&mut rng, 20, &pools(PolicyKind::VirtualZCarry));
        let plain = CompilePolicy::new(PolicyKind::ThreeAlways).without_special_cases();
        let carry = CompilePolicy::new(PolicyKind::VirtualZCarry).without_special_cases();
        let a = compile_circuit(&ir, plain).unwrap().pulse_count();
        let b = compile_circuit(&ir, carry).unwrap().pulse_count();
        assert!(a >= b);
    }
}

#[test]
fn dropping_frames_keeps_z_probabilities() {
    let mut rng = seeded(11);
    for _ in 0..50 {
        let ir = random_circuit(&mut rng, 20, &pools(PolicyKind::VirtualZCarry));
        let s = compile_circuit(&ir, policy(PolicyKind::VirtualZCarry)).unwrap();
        let raw: Vec<Event> = s
            .events
            .iter()
            .filter(|e| !matches!(e, Event::Frame { .. }))
            .cloned()
            .collect();
        let (physical, _) = simulate_prefix(&raw, &ir).unwrap();
        let ideal = ir.unitary();
        let psi: Vec<C64> = (0..4)
            .map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        for r in 0..4 {
            let amp = |u: &Mat4| (0..4).map(|c| u.0[r][c] * psi[c]).sum::<C64>().norm_sqr();
            assert!((amp(&physical) - amp(&ideal)).abs() < 1e-10);
        }
    }
}

#[test]
fn diagonal_gates_fold_into_frames() {
    let ir =
        CircuitIR::from_ops([g1(0, rz(0.4)), g2(0, 1, TwoQubitGate::Cz), g1(0, rz(-1.0))]).unwrap();
    let s = compile_circuit(&ir, policy(PolicyKind::VirtualZCarry)).unwrap();
    assert_eq!(s.pulse_count(), 0);
    assert_eq!(s.stats.absorbed, 2);
    assert!(simulate_schedule(&s, &ir).unwrap().deviation <= 1e-12);
}

#[test]
fn policy_names_round_trip() {
    for kind in PolicyKind::ALL {
        assert_eq!(PolicyKind::from_name(kind.as_str()), Some(kind));
    }
    assert_eq!(PolicyKind::from_name("bogus"), None);
}
