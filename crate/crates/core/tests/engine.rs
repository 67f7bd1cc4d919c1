mod common;

use common::{grover_success, identity, kron, matvec, max_diff, rows_of};
use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sparse_qsim::engine::{
    build_grover, build_qnn_neuron, memory_report, simulate, Caps, Circuit, CircuitStep,
    DiagonalOp, Engine, Placement, QnnLayout, StepOp, Structure,
};
use sparse_qsim::gates::{catalog, gate_catalog_lookup, GateSpec};
use sparse_qsim::sparsity::memory_improvement;

/// Applies one placement to `state` by definition.
fn apply_placement(n: u32, p: &Placement, state: &[C]) -> Vec<C> {
    match p {
        Placement::Gate { gate, targets } => {
            let left = identity(1 << targets[0]);
            let right = identity(1 << (n as usize - 1 - targets.last().unwrap()));
            let full = kron(&kron(&left, &rows_of(&gate.matrix)), &right);
            matvec(&full, state)
        }
        Placement::Controlled {
            gate,
            controls,
            target,
        } => {
            let bit = |q: usize| 1usize << (n as usize - 1 - q);
            let tb = bit(*target);
            (0..state.len())
                .map(|i| {
                    if controls.iter().any(|&q| i & bit(q) == 0) {
                        return state[i];
                    }
                    let out_t = usize::from(i & tb != 0);
                    gate.matrix.get(out_t, 0) * state[i & !tb]
                        + gate.matrix.get(out_t, 1) * state[i | tb]
                })
                .collect()
        }
    }
}

fn reference_run(c: &Circuit) -> Vec<C> {
    let n = c.n();
    let mut state = vec![C::new(0.0, 0.0); 1 << n];
    state[c.initial() as usize] = C::new(1.0, 0.0);
    for step in c.steps() {
        match &step.op {
            StepOp::Gates(ps) => {
                for p in ps {
                    state = apply_placement(n, p, &state);
                }
            }
            StepOp::Diagonal(op) => {
                for (i, a) in state.iter_mut().enumerate() {
                    *a *= op.entry(i as u64);
                }
            }
        }
    }
    state
}

fn random_gate<R: Rng>(rng: &mut R, max_arity: u32) -> GateSpec {
    loop {
        let info = &catalog()[rng.random_range(0..catalog().len())];
        if info.arity <= max_arity {
            let params: Vec<f64> = (0..info.param_count)
                .map(|_| rng.random_range(-3.0..3.0))
                .collect();
            return info.instantiate(&params).unwrap();
        }
    }
}

fn random_circuit<R: Rng>(rng: &mut R, n: u32, steps: usize) -> Circuit {
    let mut out = Vec::new();
    for _ in 0..steps {
        if rng.random_bool(0.1) {
            let marked = (0..rng.random_range(1..3))
                .map(|_| rng.random_range(0..1u64 << n))
                .collect();
            out.push(CircuitStep::diagonal(DiagonalOp::PhaseOracle { marked }));
            continue;
        }
        if rng.random_bool(0.15) {
            out.push(CircuitStep::hadamard_layer(n as usize));
            continue;
        }
        let mut placements = Vec::new();
        let mut q = 0usize;
        while q < n as usize {
            let room = n - q as u32;
            match rng.random_range(0..4) {
                0 => q += 1,
                1 if room >= 3 => {
                    let width = rng.random_range(3..=room.min(5)) as usize;
                    let target = q + rng.random_range(0..width);
                    let controls = (q..q + width)
                        .filter(|&c| c != target && rng.random_bool(0.7))
                        .collect::<Vec<_>>();
                    let controls = if controls.is_empty() {
                        vec![if target == q { q + 1 } else { q }]
                    } else {
                        controls
                    };
                    let g = random_gate(rng, 1);
                    let p = Placement::controlled(g, controls, target);
                    q = p.span().1 + 1;
                    placements.push(p);
                }
                _ => {
                    let g = random_gate(rng, room.min(3));
                    let a = g.arity as usize;
                    placements.push(Placement::gate(g, (q..q + a).collect()));
                    q += a;
                }
            }
        }
        out.push(CircuitStep::gates(placements));
    }
    Circuit::new(n, rng.random_range(0..1u64 << n), out).unwrap()
}

#[test]
fn engines_agree_with_reference_on_random_circuits() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..40 {
        let n = rng.random_range(1..=8);
        let steps = rng.random_range(1..6);
        let c = random_circuit(&mut rng, n, steps);
        let want = reference_run(&c);
        for e in Engine::ALL {
            let r = simulate(&c, e).unwrap_or_else(|err| panic!("trial {trial} {e}: {err}"));
            let d = max_diff(&r.final_state, &want);
            assert!(d < 1e-9, "trial {trial}, engine {e}, n {n}: diff {d}");
            let total: f64 = r.probabilities.iter().sum();
            assert!((total - 1.0).abs() < 1e-9);
        }
    }
}

#[test]
fn circuit_json_round_trip_preserves_results() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let c = random_circuit(&mut rng, 5, 4);
        let again = Circuit::from_json(&c.to_json().unwrap()).unwrap();
        let a = simulate(&c, Engine::Dax).unwrap();
        let b = simulate(&again, Engine::Dax).unwrap();
        assert!(max_diff(&a.final_state, &b.final_state) < 1e-12);
    }
}

#[test]
fn grover_matches_closed_form() {
    for n in 2..=9u32 {
        let marked = 0x2d5 % (1u64 << n);
        let c = build_grover(n, marked, None).unwrap();
        let k = (c.steps().len() as u32 - 1) / 4;
        for e in [Engine::Dax, Engine::Das, Engine::RhDax] {
            let r = simulate(&c, e).unwrap();
            let p = r.probabilities[marked as usize];
            assert!((p - grover_success(n, k)).abs() < 1e-9, "n {n} {e}: {p}");
            assert_eq!(r.argmax(), marked);
        }
    }
}

#[test]
fn grover_step_shapes() {
    let c = build_grover(6, 9, Some(2)).unwrap();
    let rep = memory_report(&c, Engine::RhDax, Caps::default()).unwrap();
    assert_eq!(rep.len(), 9);
    for r in &rep {
        match r.structure {
            Structure::Rh => assert_eq!(r.stored_bytes, 16),
            Structure::Dax => assert_eq!(r.nnz, 64),
            s => panic!("unexpected {s}"),
        }
    }
}

/// Probability that the neuron's output fires, from the classical
/// distribution of input bits.
fn neuron_oracle(angles: &[f64]) -> f64 {
    let m = angles.len();
    let k = QnnLayout::for_inputs(m as u32).encode;
    let mut total = 0.0;
    for bits in 0..1u32 << m {
        let mut p = 1.0;
        for (i, a) in angles.iter().enumerate() {
            let one = (a / 2.0).sin().powi(2);
            p *= if bits >> i & 1 == 1 { one } else { 1.0 - one };
        }
        let count = bits.count_ones() % (1 << k);
        if count >= 1 << (k - 1) {
            total += p;
        }
    }
    total
}

#[test]
fn neuron_matches_classical_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for m in 1..=6usize {
        let angles: Vec<f64> = (0..m)
            .map(|_| rng.random_range(0.0..std::f64::consts::PI))
            .collect();
        let weights: Vec<i8> = (0..m)
            .map(|_| if rng.random_bool(0.5) { 1 } else { -1 })
            .collect();
        let c = build_qnn_neuron(&angles, &weights).unwrap();
        let out = QnnLayout::for_inputs(m as u32).output_qubit() as u32;
        let want = neuron_oracle(&angles);
        for e in Engine::ALL {
            let r = simulate(&c, e).unwrap();
            assert!(
                (r.qubit_one_probability(out) - want).abs() < 1e-12,
                "m {m} {e}"
            );
        }
    }
}

#[test]
fn identical_sparse_steps_report_memory_improvement() {
    for name in ["X", "Y", "Z", "S", "T", "RZ"] {
        let g = gate_catalog_lookup(name, if name == "RZ" { &[0.3] } else { &[] }).unwrap();
        for n in 1..=10u32 {
            let step = CircuitStep::gates(
                (0..n as usize)
                    .map(|q| Placement::single(g.clone(), q))
                    .collect(),
            );
            let c = Circuit::new(n, 0, vec![step]).unwrap();
            for e in [Engine::Dax, Engine::Das] {
                let rec = &memory_report(&c, e, Caps::default()).unwrap()[0];
                let want = memory_improvement(&g, n).unwrap();
                assert_eq!(
                    (rec.dense_bytes, rec.stored_bytes),
                    (want.dense_bytes, want.compressed_bytes)
                );
                assert_eq!(rec.improvement, want.ratio());
            }
        }
    }
}

#[test]
fn tiny_circuits() {
    let x = gate_catalog_lookup("X", &[]).unwrap();
    let c = Circuit::new(
        3,
        0,
        vec![CircuitStep::gates(vec![Placement::single(x, 2)])],
    )
    .unwrap();
    for e in Engine::ALL {
        assert_eq!(simulate(&c, e).unwrap().probabilities[1], 1.0);
    }
    let c = Circuit::new(1, 1, vec![]).unwrap();
    assert_eq!(
        simulate(&c, Engine::Das).unwrap().probabilities,
        vec![0.0, 1.0]
    );
}
