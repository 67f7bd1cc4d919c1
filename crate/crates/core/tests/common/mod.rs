//! Reference implementations used as test oracles. They share no code with
//! the library beyond its data types.
#![allow(dead_code)]

use num_complex::Complex64 as C;
use rand::Rng;
use sparse_qsim::dense::DenseMatrix;

pub type Rows = Vec<Vec<C>>;

pub fn rows_of(m: &DenseMatrix) -> Rows {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

/// Textbook Kronecker product.
pub fn kron(a: &Rows, b: &Rows) -> Rows {
    let (ar, ac) = (a.len(), a[0].len());
    let (br, bc) = (b.len(), b[0].len());
    let mut out = vec![vec![C::new(0.0, 0.0); ac * bc]; ar * br];
    for i in 0..ar {
        for j in 0..ac {
            for k in 0..br {
                for l in 0..bc {
                    out[i * br + k][j * bc + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn identity(dim: usize) -> Rows {
    (0..dim)
        .map(|r| {
            (0..dim)
                .map(|c| C::new(if r == c { 1.0 } else { 0.0 }, 0.0))
                .collect()
        })
        .collect()
}

pub fn matvec(m: &Rows, v: &[C]) -> Vec<C> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn count_zeros(m: &Rows) -> usize {
    m.iter()
        .flatten()
        .filter(|v| v.re == 0.0 && v.im == 0.0)
        .count()
}

/// `(-1)^{popcount(r & c)}`.
pub fn popcount_sign(r: u64, c: u64) -> i8 {
    if (r & c).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Entry `(r, c)` of `H^{⊗n}`.
pub fn hadamard_entry(n: u32, r: u64, c: u64) -> f64 {
    popcount_sign(r, c) as f64 / 2f64.powf(n as f64 / 2.0)
}

/// Probability of the marked state after `k` Grover iterations on `n` qubits.
pub fn grover_success(n: u32, k: u32) -> f64 {
    let theta = (1.0 / 2f64.powf(n as f64 / 2.0)).asin();
    ((2 * k + 1) as f64 * theta).sin().powi(2)
}

/// Random matrix whose zeros are all structural: nonzero values have
/// magnitude in [0.5, 2], so no product of two of them is zero. With
/// `full_rows`, every row keeps at least one nonzero.
pub fn random_structural<R: Rng>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    density: f64,
    full_rows: bool,
) -> DenseMatrix {
    let mut data = vec![C::new(0.0, 0.0); rows * cols];
    for r in 0..rows {
        let forced = if full_rows {
            Some(rng.random_range(0..cols))
        } else {
            None
        };
        for c in 0..cols {
            if Some(c) == forced || rng.random_bool(density) {
                let mag = rng.random_range(0.5..2.0);
                let phase = rng.random_range(0.0..std::f64::consts::TAU);
                data[r * cols + c] = C::from_polar(mag, phase);
            }
        }
    }
    DenseMatrix::new(rows, cols, data).unwrap()
}

pub fn random_state<R: Rng>(rng: &mut R, n: u32) -> sparse_qsim::StateVector {
    sparse_qsim::StateVector::random(n, rng).unwrap()
}

pub fn max_diff(a: &[C], b: &[C]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
