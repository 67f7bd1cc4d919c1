//! Uncompressed row-major matrices. These are the baseline the compressed
//! structures are checked against, and the engine's `dense` path.

use crate::counters::OpCounters;
use crate::error::{Error, Result};
use crate::state::{ComplexAmp, StateVector};

/// Default ceiling on dense element counts (2^26 elements, 1 GiB of complex
/// doubles).
pub const DEFAULT_DENSE_CAP: usize = 1 << 26;

/// Bytes per stored dense element (two `f64`s).
pub const DENSE_ELEMENT_BYTES: u64 = 16;

pub(crate) const ZERO: ComplexAmp = ComplexAmp::new(0.0, 0.0);
pub(crate) const ONE: ComplexAmp = ComplexAmp::new(1.0, 0.0);

#[inline]
pub(crate) fn is_zero(v: ComplexAmp) -> bool {
    v.re == 0.0 && v.im == 0.0
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ComplexAmp>,
}

impl DenseMatrix {
    /// Row-major constructor. Both dimensions must be powers of two
    /// (1 is allowed).
    pub fn new(rows: usize, cols: usize, data: Vec<ComplexAmp>) -> Result<Self> {
        check_shape(rows, cols)?;
        if data.len() != rows * cols {
            return Err(Error::InvalidShape(format!(
                "{rows}x{cols} matrix needs {} elements, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from nested rows.
    pub fn from_rows(rows: &[Vec<ComplexAmp>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidShape("ragged rows".into()));
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        check_shape(rows, cols)?;
        Ok(Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim, dim)?;
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        Ok(m)
    }

    /// Diagonal matrix from its diagonal.
    pub fn diagonal(diag: &[ComplexAmp]) -> Result<Self> {
        let dim = diag.len();
        let mut m = Self::zeros(dim, dim)?;
        for (i, &v) in diag.iter().enumerate() {
            m.data[i * dim + i] = v;
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[ComplexAmp] {
        &self.data
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> ComplexAmp {
        self.data[row * self.cols + col]
    }

    #[inline]
    pub(crate) fn set(&mut self, row: usize, col: usize, v: ComplexAmp) {
        self.data[row * self.cols + col] = v;
    }

    pub fn row(&self, row: usize) -> &[ComplexAmp] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    /// Number of entries that are not exactly `0+0i`.
    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|v| !is_zero(**v)).count()
    }

    pub fn memory_bytes(&self) -> u64 {
        self.data.len() as u64 * DENSE_ELEMENT_BYTES
    }

    pub fn adjoint(&self) -> Self {
        let mut out = vec![ZERO; self.data.len()];
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[c * self.rows + r] = self.get(r, c).conj();
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data: out,
        }
    }

    /// Ordinary matrix product `self * rhs`.
    pub fn matmul(&self, rhs: &DenseMatrix) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = vec![ZERO; self.rows * rhs.cols];
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if is_zero(a) {
                    continue;
                }
                for c in 0..rhs.cols {
                    out[r * rhs.cols + c] += a * rhs.get(k, c);
                }
            }
        }
        Self::new(self.rows, rhs.cols, out)
    }

    /// `M M^dagger = I` elementwise within `tol`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let Ok(prod) = self.matmul(&self.adjoint()) else {
            return false;
        };
        (0..self.rows).all(|r| {
            (0..self.cols).all(|c| {
                let expect = if r == c { ONE } else { ZERO };
                (prod.get(r, c) - expect).norm() <= tol
            })
        })
    }
}

fn check_shape(rows: usize, cols: usize) -> Result<()> {
    if !rows.is_power_of_two() || !cols.is_power_of_two() {
        return Err(Error::InvalidShape(format!(
            "{rows}x{cols} is not a power-of-two shape"
        )));
    }
    Ok(())
}

pub(crate) fn check_dense_cap(rows: u128, cols: u128, cap: usize) -> Result<()> {
    let requested = rows.saturating_mul(cols);
    if requested > cap as u128 {
        return Err(Error::DenseCapacity { requested, cap });
    }
    Ok(())
}

/// Kronecker product under [`DEFAULT_DENSE_CAP`].
pub fn dense_tensor(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    dense_tensor_capped(a, b, DEFAULT_DENSE_CAP)
}

/// Kronecker product `a ⊗ b`, refusing results over `cap` elements.
///
/// Positions where either factor is zero are written as `+0+0i` rather than
/// the signed product, so structural zeros stay canonical.
pub fn dense_tensor_capped(a: &DenseMatrix, b: &DenseMatrix, cap: usize) -> Result<DenseMatrix> {
    let rows = a.rows as u128 * b.rows as u128;
    let cols = a.cols as u128 * b.cols as u128;
    check_dense_cap(rows, cols, cap)?;
    let (rows, cols) = (rows as usize, cols as usize);
    let mut data = vec![ZERO; rows * cols];
    for ra in 0..a.rows {
        for ca in 0..a.cols {
            let va = a.get(ra, ca);
            if is_zero(va) {
                continue;
            }
            for rb in 0..b.rows {
                let base = (ra * b.rows + rb) * cols + ca * b.cols;
                for cb in 0..b.cols {
                    let vb = b.get(rb, cb);
                    if !is_zero(vb) {
                        data[base + cb] = va * vb;
                    }
                }
            }
        }
    }
    Ok(DenseMatrix { rows, cols, data })
}

/// `m · s`.
pub fn dense_mvm(m: &DenseMatrix, s: &StateVector) -> Result<StateVector> {
    dense_mvm_counted(m, s, &mut OpCounters::default())
}

pub fn dense_mvm_counted(
    m: &DenseMatrix,
    s: &StateVector,
    counters: &mut OpCounters,
) -> Result<StateVector> {
    if m.rows != m.cols || m.cols != s.len() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix against state of length {}",
            m.rows,
            m.cols,
            s.len()
        )));
    }
    let amps = s.amplitudes();
    let out = (0..m.rows)
        .map(|r| {
            m.row(r)
                .iter()
                .zip(amps)
                .fold(ZERO, |acc, (v, x)| acc + v * x)
        })
        .collect();
    counters.mul_adds += (m.rows * m.cols) as u64;
    Ok(StateVector::from_raw(s.n(), out))
}

/// Fraction of entries equal to exactly `0+0i`.
pub fn zero_ratio(m: &DenseMatrix) -> f64 {
    let total = m.data.len();
    (total - m.nnz()) as f64 / total as f64
}
