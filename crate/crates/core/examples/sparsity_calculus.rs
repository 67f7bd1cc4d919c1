//! Predicted vs measured zero ratios of tensor products, and how they grow
//! with the number of identical gates.

use sparse_qsim::dense::DEFAULT_DENSE_CAP;
use sparse_qsim::gates::gate_catalog_lookup;
use sparse_qsim::sparsity::{identical_gate_sparsity, ratio_power, ratio_tensor, sparsity_report};

fn main() {
    let ch = gate_catalog_lookup("CH", &[]).unwrap();
    let x = gate_catalog_lookup("X", &[]).unwrap();
    let rep = sparsity_report(&ch.matrix, &x.matrix, DEFAULT_DENSE_CAP).unwrap();
    println!(
        "CH x X: R(A) = {}, R(B) = {}, predicted {}, measured {:?}",
        rep.ratio_a, rep.ratio_b, rep.predicted, rep.measured
    );
    println!("R(0.5, 0.5) = {}", ratio_tensor(0.5, 0.5).unwrap());

    println!("\n m   1-(1-0.5)^m");
    for m in [1, 2, 4, 8, 16, 32] {
        println!("{m:>2}   {:.12}", ratio_power(0.5, m).unwrap());
    }

    let rxx = gate_catalog_lookup("RXX", &[0.7]).unwrap();
    println!("\nn qubits of RXX gates:");
    for n in [2, 8, 16, 32] {
        println!(
            "  n = {n:>2}: zero ratio {:.10}",
            identical_gate_sparsity(&rxx, n).unwrap()
        );
    }
}
