//! Zero-ratio calculus for tensor products, and the dense-vs-compressed
//! memory ratio for steps built from identical gates.
//!
//! The prediction counts positional zeros: it assumes no product of two
//! nonzero entries evaluates to zero. Catalog gates only have structural
//! zeros, so for them prediction and measurement agree exactly.

use serde::Serialize;

use crate::dense::{dense_tensor_capped, zero_ratio, DenseMatrix, DENSE_ELEMENT_BYTES};
use crate::error::{Error, Result};
use crate::gates::GateSpec;

/// Bytes charged per DAX or DAS entry (8-byte index word plus two `f64`s).
pub const ENTRY_BYTES: u64 = 24;

fn check_ratio(r: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::OutOfRange(format!("zero ratio {r} not in [0, 1]")));
    }
    Ok(())
}

/// Predicted zero ratio of `A ⊗ B`: `R(A) + (1 - R(A)) R(B)`.
pub fn ratio_tensor(r_a: f64, r_b: f64) -> Result<f64> {
    check_ratio(r_a)?;
    check_ratio(r_b)?;
    Ok(r_a + (1.0 - r_a) * r_b)
}

/// Predicted zero ratio of `A^{⊗m}`: `1 - (1 - R(A))^m`.
pub fn ratio_power(r_a: f64, m: u32) -> Result<f64> {
    check_ratio(r_a)?;
    if m < 1 {
        return Err(Error::OutOfRange("tensor power must be at least 1".into()));
    }
    let m = i32::try_from(m).map_err(|_| Error::OutOfRange(format!("power {m} too large")))?;
    Ok(1.0 - (1.0 - r_a).powi(m))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SparsityReport {
    pub ratio_a: f64,
    pub ratio_b: f64,
    pub predicted: f64,
    /// Measured on the dense product, when it fit under the cap.
    pub measured: Option<f64>,
}

impl SparsityReport {
    pub fn agrees(&self) -> Option<bool> {
        self.measured.map(|m| m == self.predicted)
    }
}

/// Predicts the zero ratio of `a ⊗ b` and, when the product fits under
/// `dense_cap` elements, measures it too.
pub fn sparsity_report(
    a: &DenseMatrix,
    b: &DenseMatrix,
    dense_cap: usize,
) -> Result<SparsityReport> {
    let ratio_a = zero_ratio(a);
    let ratio_b = zero_ratio(b);
    let predicted = ratio_tensor(ratio_a, ratio_b)?;
    let measured = match dense_tensor_capped(a, b, dense_cap) {
        Ok(m) => Some(zero_ratio(&m)),
        Err(Error::DenseCapacity { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(SparsityReport {
        ratio_a,
        ratio_b,
        predicted,
        measured,
    })
}

/// Exact byte comparison of a dense operation-matrix and its compressed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MemoryImprovement {
    pub dense_bytes: u128,
    pub compressed_bytes: u128,
}

impl MemoryImprovement {
    pub fn new(dim: u128, nnz: u128) -> Result<Self> {
        let dense_bytes = dim
            .checked_mul(dim)
            .and_then(|e| e.checked_mul(DENSE_ELEMENT_BYTES as u128))
            .ok_or_else(|| Error::IndexOverflow(format!("dense byte count of dimension {dim}")))?;
        let compressed_bytes = nnz.checked_mul(ENTRY_BYTES as u128).ok_or_else(|| {
            Error::IndexOverflow(format!("compressed byte count of {nnz} entries"))
        })?;
        Ok(Self {
            dense_bytes,
            compressed_bytes,
        })
    }

    /// Dense bytes over compressed bytes (infinite for an empty matrix).
    pub fn ratio(&self) -> f64 {
        self.dense_bytes as f64 / self.compressed_bytes as f64
    }
}

/// Memory improvement of the `n`-qubit operation-matrix made of `n / arity`
/// copies of `gate`: dense `2^{2n} · 16` bytes against `24 · nnz` bytes.
pub fn memory_improvement(gate: &GateSpec, n: u32) -> Result<MemoryImprovement> {
    let arity = gate.arity;
    if arity == 0 || n == 0 || !n.is_multiple_of(arity) {
        return Err(Error::OutOfRange(format!(
            "n = {n} is not a positive multiple of the gate arity {arity}"
        )));
    }
    let copies = n / arity;
    let gate_nnz = gate.matrix.nnz() as u128;
    let nnz = gate_nnz
        .checked_pow(copies)
        .ok_or_else(|| Error::IndexOverflow(format!("{gate_nnz}^{copies} entries")))?;
    let dim = 1u128
        .checked_shl(n)
        .filter(|_| n < 64)
        .ok_or_else(|| Error::IndexOverflow(format!("2^{n} rows")))?;
    MemoryImprovement::new(dim, nnz)
}

/// Zero ratio of the operation-matrix of `n / arity` identical gates.
pub fn identical_gate_sparsity(gate: &GateSpec, n: u32) -> Result<f64> {
    if gate.arity == 0 || !n.is_multiple_of(gate.arity) {
        return Err(Error::OutOfRange(format!(
            "n = {n} is not a multiple of the gate arity {}",
            gate.arity
        )));
    }
    ratio_power(gate.zero_ratio(), n / gate.arity)
}
