//! Writes a DAX and a DAS dump of CCX ⊗ X, reads them back and checks they
//! describe the same matrix.

use sparse_qsim::cli::expression_dax;
use sparse_qsim::das::{das_decode, DasMatrix};
use sparse_qsim::dax::{dax_decode, DaxMatrix};

fn main() {
    let dax = expression_dax("CCX x X").unwrap();
    let das = DasMatrix::from_dax(&dax).unwrap();

    let dir = std::env::temp_dir();
    let dax_path = dir.join("ccx_x.dax");
    let das_path = dir.join("ccx_x.das");
    let mut buf = Vec::new();
    dax.write_dump(&mut buf).unwrap();
    std::fs::write(&dax_path, &buf).unwrap();
    println!(
        "{}: {} bytes, {} entries",
        dax_path.display(),
        buf.len(),
        dax.nnz()
    );
    buf.clear();
    das.write_dump(&mut buf).unwrap();
    std::fs::write(&das_path, &buf).unwrap();
    println!(
        "{}: {} bytes, {} entries",
        das_path.display(),
        buf.len(),
        das.nnz()
    );

    let dax_back = DaxMatrix::read_dump(std::fs::read(&dax_path).unwrap().as_slice()).unwrap();
    let das_back = DasMatrix::read_dump(std::fs::read(&das_path).unwrap().as_slice()).unwrap();
    assert_eq!(dax_back, dax);
    assert_eq!(das_back, das);
    assert_eq!(
        dax_decode(&dax_back).unwrap(),
        das_decode(&das_back).unwrap()
    );
    println!("both dumps read back to the same 16x16 matrix");
}
