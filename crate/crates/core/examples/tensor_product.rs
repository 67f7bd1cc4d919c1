//! Builds whole-register step matrices in each structure and compares their
//! sizes; the compressed folds never form a dense intermediate.

use sparse_qsim::engine::{step_matrix, Caps, CircuitStep, Placement, Structure};
use sparse_qsim::gates::gate_catalog_lookup;

fn main() {
    let x = gate_catalog_lookup("X", &[]).unwrap();
    let ch = gate_catalog_lookup("CH", &[]).unwrap();
    for n in [4u32, 8, 12, 16, 20] {
        let mut placements = vec![Placement::gate(ch.clone(), vec![0, 1])];
        placements.extend((2..n as usize).map(|q| Placement::single(x.clone(), q)));
        let step = CircuitStep::gates(placements);
        print!("n = {n:>2}:");
        for s in [Structure::Dense, Structure::Dax, Structure::Das] {
            match step_matrix(&step, n, s, Caps::default()) {
                Ok(m) => print!("  {s} {} B ({} nnz)", m.analytic_bytes(), m.nnz()),
                Err(e) => print!("  {s}: {e}"),
            }
        }
        println!();
    }
}
