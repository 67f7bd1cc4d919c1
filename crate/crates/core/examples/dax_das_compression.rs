//! Encodes Y ⊗ X in both compressed structures and prints what is stored.

use sparse_qsim::das::{das_decode, das_encode};
use sparse_qsim::dax::{dax_decode, dax_encode};
use sparse_qsim::dense::dense_tensor;
use sparse_qsim::gates::gate_catalog_lookup;

fn main() {
    let y = gate_catalog_lookup("Y", &[]).unwrap().matrix;
    let x = gate_catalog_lookup("X", &[]).unwrap().matrix;
    let yx = dense_tensor(&y, &x).unwrap();
    println!("dense Y x X: {} bytes", yx.memory_bytes());

    let dax = dax_encode(&yx);
    println!("\nDAX, {} bytes:", dax.memory_bytes());
    for (e, idx) in dax.entries().iter().zip(dax.linear_indices()) {
        println!("  row {} col {} (index {idx})  {}", e.row, e.col, e.value);
    }

    let das = das_encode(&yx).unwrap();
    println!("\nDAS, {} bytes:", das.memory_bytes());
    for e in das.entries() {
        println!(
            "  dis {}  last-in-row {}  {}",
            e.dis, e.last_in_row, e.value
        );
    }

    assert_eq!(dax_decode(&dax).unwrap(), yx);
    assert_eq!(das_decode(&das).unwrap(), yx);
    println!("\nboth decode back to the dense matrix bit for bit");
}
