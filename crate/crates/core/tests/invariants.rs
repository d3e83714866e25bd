//! Property-style invariants: realification algebra, machine norm and
//! optimality, parser round-trip, mode equivalence.

use proptest::prelude::*;
use rand::Rng;

use dlmq_core::circuit::{self, CircuitDescription, GateKind, GateSpec};
use dlmq_core::dlm::{Event, LearningMachine, MachineConfig, Mode, UpdateDecision};
use dlmq_core::gates;
use dlmq_core::linalg::{self, ComplexMatrix};
use dlmq_core::rng::{self, RunRng};
use num_complex::Complex64;

/// Random unitary as a product of embedded complex Givens rotations.
fn random_unitary(dim: usize, rng: &mut RunRng) -> ComplexMatrix {
    let mut u = ComplexMatrix::identity(dim);
    for _ in 0..(3 * dim) {
        let i = rng.gen_range(0..dim);
        let mut j = rng.gen_range(0..dim);
        while j == i {
            j = rng.gen_range(0..dim);
        }
        let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let a: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let b: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let mut g = ComplexMatrix::identity(dim);
        g[(i, i)] = Complex64::from_polar(theta.cos(), a);
        g[(i, j)] = -Complex64::from_polar(theta.sin(), b);
        g[(j, i)] = Complex64::from_polar(theta.sin(), -b);
        g[(j, j)] = Complex64::from_polar(theta.cos(), -a);
        u = g.mul(&u);
    }
    u
}

fn random_complex_unit_vec(dim: usize, rng: &mut RunRng) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

#[test]
fn realify_is_a_homomorphism() {
    let mut r = rng::seeded(101);
    for trial in 0..100 {
        let dim = [2, 4][trial % 2];
        let u = random_unitary(dim, &mut r);
        let v = random_unitary(dim, &mut r);
        let lhs = linalg::realify(&u.mul(&v)).unwrap();
        let rhs = linalg::realify(&u).unwrap().mul(&linalg::realify(&v).unwrap());
        for i in 0..2 * dim {
            for j in 0..2 * dim {
                assert!((lhs[(i, j)] - rhs[(i, j)]).abs() < 1e-10, "trial {trial}");
            }
        }
    }
}

#[test]
fn realify_commutes_with_vector_action() {
    let mut r = rng::seeded(202);
    for _ in 0..50 {
        let dim = 4;
        let u = random_unitary(dim, &mut r);
        let v = random_complex_unit_vec(dim, &mut r);
        let complex_route = linalg::realify_vec(&u.mul_vec(&v));
        let real_route = linalg::realify(&u).unwrap().mul_vec(&linalg::realify_vec(&v));
        for (a, b) in complex_route.iter().zip(&real_route) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}

#[test]
fn realify_preserves_orthogonality() {
    let mut r = rng::seeded(303);
    for _ in 0..50 {
        let u = random_unitary(8, &mut r);
        let m = linalg::realify(&u).unwrap();
        assert!(m.orthogonality_deviation() < 1e-10);
    }
}

/// Independent brute force: materialize all 2*dim candidate vectors and
/// scan for the minimal cost with the same tie rule.
fn brute_force_best(x: &[f64], v: &[f64], alpha: f64) -> UpdateDecision {
    let dim = x.len();
    let mut best: Option<UpdateDecision> = None;
    for j in 0..dim {
        for s in [1i8, -1] {
            let mut w = vec![0.0; dim];
            for i in 0..dim {
                w[i] = if i == j {
                    f64::from(s) * (1.0 + alpha * alpha * (x[j] * x[j] - 1.0)).sqrt()
                } else {
                    alpha * x[i]
                };
            }
            let cost = -linalg::dot(&w, v);
            let better = match &best {
                None => true,
                Some(b) => cost < b.cost,
            };
            if better {
                best = Some(UpdateDecision { j, s, cost });
            }
        }
    }
    best.unwrap()
}

#[test]
fn chosen_candidate_is_brute_force_optimal() {
    let mut r = rng::seeded(404);
    for trial in 0..10_000 {
        let dim = [4, 8][trial % 2];
        let alpha = r.gen_range(0.05..0.999);
        let raw: Vec<f64> = (0..dim).map(|_| r.gen_range(-1.0..1.0)).collect();
        let x = match linalg::normalize(&raw) {
            Ok(u) => u,
            Err(_) => continue,
        };
        let v: Vec<f64> = (0..dim).map(|_| r.gen_range(-1.0..1.0)).collect();
        let expect = brute_force_best(x.as_slice(), &v, alpha);
        let cfg = MachineConfig::new(alpha, dim, Mode::Deterministic);
        let mut m = LearningMachine::with_state(cfg, x);
        let got = m.update(&v);
        assert_eq!((got.j, got.s), (expect.j, expect.s), "trial {trial}");
        assert!((got.cost - expect.cost).abs() < 1e-12);
    }
}

#[test]
fn norm_preserved_over_many_updates() {
    let mut r = rng::seeded(505);
    let cfg = MachineConfig::new(0.99, 8, Mode::Deterministic);
    let mut m = LearningMachine::new(cfg, &mut r);
    for step in 0..200_000u64 {
        let v: Vec<f64> = (0..8).map(|_| r.gen_range(-1.0..1.0)).collect();
        m.update(&v);
        if step % 10_000 == 0 {
            let n = linalg::norm(m.internal());
            assert!((n - 1.0).abs() < 1e-9, "step {step}: norm {n}");
        }
    }
    assert!((linalg::norm(m.internal()) - 1.0).abs() < 1e-9);
}

#[test]
fn deterministic_machine_is_reproducible() {
    let mut decisions = Vec::new();
    for _ in 0..2 {
        let mut r = rng::seeded(606);
        let cfg = MachineConfig::new(0.99, 4, Mode::Deterministic);
        let mut m = LearningMachine::new(cfg, &mut r);
        let mut seq = Vec::new();
        for _ in 0..2000 {
            let kind = usize::from(r.gen::<f64>() < 0.3);
            let e = Event::new(kind, [1.0, 0.0]);
            let v = m.fill_missing(&e).unwrap();
            seq.push(m.update(&v));
        }
        decisions.push(seq);
    }
    assert_eq!(decisions[0], decisions[1]);
}

#[test]
fn stochastic_and_deterministic_rates_agree() {
    // Same Hadamard-processor input stream in both modes: post-warm-up
    // output kind frequencies agree within 3 sigma binomial.
    let total = 40_000u64;
    let counted = total / 2;
    let mut fracs = Vec::new();
    for mode in [Mode::Deterministic, Mode::Stochastic] {
        let mut r = rng::seeded(707);
        let mut p = gates::make_single_qubit_gate(&gates::h_matrix(), 0.99, mode, "H", &mut r)
            .unwrap();
        let mut input = rng::seeded(808);
        let psi0 = 0.3f64;
        let psi1 = 1.1f64;
        let mut n0 = 0u64;
        for i in 0..total {
            let e = if input.gen::<f64>() < 0.5 {
                Event::new(0, [psi0.cos(), psi0.sin()])
            } else {
                Event::new(1, [psi1.cos(), psi1.sin()])
            };
            let out = p.process(&e, &mut r).unwrap();
            if i >= counted && out.kind == 0 {
                n0 += 1;
            }
        }
        fracs.push(n0 as f64 / counted as f64);
    }
    let p = fracs[0];
    let sigma = (p * (1.0 - p) / counted as f64).sqrt();
    assert!(
        (fracs[0] - fracs[1]).abs() <= 3.0 * sigma + 2.0 / counted as f64,
        "dlm={} slm={}",
        fracs[0],
        fracs[1]
    );
}

#[test]
fn stochastic_output_selection_raises_window_variance() {
    // On the factoring network the windowed Q3 estimate fluctuates more
    // with stochastic output selection than with deterministic selection.
    let variance = |mode: Mode| {
        let mut cfg = dlmq_core::experiment::ExperimentConfig::new("shor");
        cfg.mode = mode;
        let run = dlmq_core::experiment::run_shor(&cfg, 11).unwrap();
        let rows = &run.result.rows[50..];
        let mean: f64 = rows.iter().map(|r| r[3]).sum::<f64>() / rows.len() as f64;
        rows.iter().map(|r| (r[3] - mean).powi(2)).sum::<f64>() / rows.len() as f64
    };
    let dlm = variance(Mode::Deterministic);
    let slm = variance(Mode::Stochastic);
    assert!(slm > dlm, "slm variance {slm} <= dlm variance {dlm}");
}

fn arb_gate(num_qubits: usize) -> impl Strategy<Value = GateSpec> {
    let q = 1..=num_qubits;
    prop_oneof![
        q.clone().prop_map(|a| GateSpec::new(GateKind::H, vec![a], None)),
        q.clone().prop_map(|a| GateSpec::new(GateKind::X, vec![a], None)),
        q.clone().prop_map(|a| GateSpec::new(GateKind::Y, vec![a], None)),
        (q.clone(), -6.0..6.0f64).prop_map(|(a, t)| GateSpec::new(GateKind::R, vec![a], Some(t))),
        (q.clone(), -6.0..6.0f64)
            .prop_map(|(a, t)| GateSpec::new(GateKind::PhaseShift, vec![a], Some(t))),
    ]
}

fn arb_circuit() -> impl Strategy<Value = CircuitDescription> {
    (1usize..=3).prop_flat_map(|l| {
        proptest::collection::vec(arb_gate(l), 0..8)
            .prop_map(move |gates| CircuitDescription { num_qubits: l, gates })
    })
}

proptest! {
    #[test]
    fn parser_round_trip(c in arb_circuit()) {
        let rendered = circuit::render(&c);
        let parsed = circuit::parse_circuit(&rendered).unwrap();
        prop_assert_eq!(parsed, c);
    }

    #[test]
    fn message_rotation_preserves_norm(phi in -10.0..10.0f64, y0 in -1.0..1.0f64) {
        let y1 = (1.0 - y0 * y0).sqrt();
        let ps = gates::PhaseShifter::new(phi, 1, 1);
        let out = ps.phase_shift(&Event::new(1, [y0, y1]));
        let n = (out.message[0] * out.message[0] + out.message[1] * out.message[1]).sqrt();
        prop_assert!((n - 1.0).abs() < 1e-12);
    }
}
