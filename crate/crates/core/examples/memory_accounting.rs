//! Dense vs compressed bytes for steps of identical gates.

use sparse_qsim::gates::{catalog, gate_catalog_lookup};
use sparse_qsim::sparsity::memory_improvement;

fn main() {
    let x = gate_catalog_lookup("X", &[]).unwrap();
    println!(
        " n  {:>22} {:>14} {:>14}",
        "dense bytes", "DAX bytes", "improvement"
    );
    for n in [4u32, 8, 12, 16, 20, 24, 28, 32] {
        let m = memory_improvement(&x, n).unwrap();
        println!(
            "{n:>2}  {:>22} {:>14} {:>14.1}",
            m.dense_bytes,
            m.compressed_bytes,
            m.ratio()
        );
    }

    println!("\nimprovement at n = 12 by gate:");
    for g in catalog() {
        if 12 % g.arity == 0 {
            let m = memory_improvement(&g.canonical(), 12).unwrap();
            println!("  {:<10} {:>10.1}x", g.name, m.ratio());
        }
    }
}
