//! Lists every catalog gate with its shape and zero ratio, then instantiates
//! a parametric one.

use sparse_qsim::gates::{catalog, gate_catalog_lookup};

fn main() {
    for g in catalog() {
        println!(
            "{:<10} {} qubit(s)  {}",
            g.name,
            g.arity,
            g.shape_ratio_label()
        );
    }

    let rx = gate_catalog_lookup("rx", &[std::f64::consts::FRAC_PI_2]).unwrap();
    println!("\nRX(pi/2), zero ratio {}:", rx.zero_ratio());
    for r in 0..rx.matrix.rows() {
        let row: Vec<String> = rx.matrix.row(r).iter().map(|v| format!("{v:.4}")).collect();
        println!("  [{}]", row.join(", "));
    }
}
