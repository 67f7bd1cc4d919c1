//! Grover search, with the Hadamard layers handled by RH and the oracle and
//! Z0 reflections by DAX.
//!
//! `cargo run --example grover_search -- 12 777`

use sparse_qsim::engine::{build_grover, simulate_with, Engine, SimOptions, Structure};

fn main() {
    let mut args = std::env::args().skip(1);
    let n: u32 = args.next().map_or(10, |a| a.parse().expect("qubit count"));
    let marked: u64 = args
        .next()
        .map_or(777 % (1 << n), |a| a.parse().expect("marked index"));

    let circuit = build_grover(n, marked, None).unwrap();
    let opts = SimOptions {
        shots: 1000,
        seed: 1,
        ..SimOptions::default()
    };
    let report = simulate_with(&circuit, Engine::RhDax, &opts).unwrap();

    let rh = report
        .steps
        .iter()
        .filter(|s| s.structure == Structure::Rh)
        .count();
    println!(
        "{n} qubits, {} steps ({rh} as RH), marked {marked}",
        report.steps.len()
    );
    println!(
        "argmax {} with probability {:.6}",
        report.argmax(),
        report.probabilities[marked as usize]
    );
    println!(
        "sign descents {}, mul-adds {}",
        report.totals.sign_calls, report.totals.mul_adds
    );
    println!("peak step storage {} B", report.peak_stored_bytes);
    let hits = report
        .samples
        .as_ref()
        .unwrap()
        .get(&marked)
        .copied()
        .unwrap_or(0);
    println!("{hits} of 1000 samples hit the marked state");
}
