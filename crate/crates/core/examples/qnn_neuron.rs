//! An eight-input QNN neuron on twelve qubits, run on every engine.

use sparse_qsim::engine::{build_qnn_neuron, memory_report, simulate, Caps, Engine, QnnLayout};

fn main() {
    let angles = [0.3, 1.9, 2.7, 0.8, 1.2, 2.2, 0.5, 1.6];
    let weights = [1, -1, 1, 1, -1, 1, -1, 1];
    let circuit = build_qnn_neuron(&angles, &weights).unwrap();
    let layout = QnnLayout::for_inputs(angles.len() as u32);
    let out = layout.output_qubit() as u32;
    println!(
        "{} qubits: {} inputs, {} counter, 1 output",
        layout.qubits(),
        layout.inputs,
        layout.encode
    );

    for e in Engine::ALL {
        let r = simulate(&circuit, e).unwrap();
        println!(
            "{e:>7}: P(output = 1) = {:.12}",
            r.qubit_one_probability(out)
        );
    }

    println!("\nstep     label   dense bytes   DAX bytes");
    for r in memory_report(&circuit, Engine::Dax, Caps::default()).unwrap() {
        println!(
            "{:>4} {:>10} {:>13} {:>11}",
            r.index,
            r.label.unwrap_or_default(),
            r.dense_bytes,
            r.stored_bytes
        );
    }
}
