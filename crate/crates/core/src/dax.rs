//! DAX: each nonzero stored with its position.
//!
//! Entries keep the row and column separately; the single linear index
//! `row · cols + col` is available through [`DaxEntry::linear_index`]. Memory
//! accounting still charges 24 bytes per entry (one 8-byte index word and two
//! `f64`s), which is what the compressed-size figures are quoted in.

use std::io::{Read, Write};

use serde::Serialize;

use crate::counters::OpCounters;
use crate::dense::{check_dense_cap, is_zero, DenseMatrix, DEFAULT_DENSE_CAP, ZERO};
use crate::error::{Error, Result};
use crate::sparsity::ENTRY_BYTES;
use crate::state::{ComplexAmp, StateVector};

/// Largest row or column count a compressed matrix may have.
pub const MAX_DIM: u64 = 1 << 63;

pub const DAX_MAGIC: &[u8; 4] = b"DAX1";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DaxEntry {
    pub row: u64,
    pub col: u64,
    pub value: ComplexAmp,
}

impl DaxEntry {
    /// Row-major position in a matrix with `cols` columns.
    pub fn linear_index(&self, cols: u64) -> u128 {
        self.row as u128 * cols as u128 + self.col as u128
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DaxMatrix {
    rows: u64,
    cols: u64,
    entries: Vec<DaxEntry>,
}

pub(crate) fn check_dims(rows: u64, cols: u64) -> Result<()> {
    if !rows.is_power_of_two() || !cols.is_power_of_two() {
        return Err(Error::InvalidShape(format!(
            "{rows}x{cols} is not a power-of-two shape"
        )));
    }
    if rows > MAX_DIM || cols > MAX_DIM {
        return Err(Error::IndexOverflow(format!("{rows}x{cols} exceeds 2^63")));
    }
    Ok(())
}

pub(crate) fn product_dim(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b)
        .filter(|&d| d <= MAX_DIM)
        .ok_or_else(|| Error::IndexOverflow(format!("{a} * {b} exceeds 2^63")))
}

impl DaxMatrix {
    /// Validating constructor: entries must be nonzero, in range, and strictly
    /// increasing in row-major order.
    pub fn from_entries(rows: u64, cols: u64, entries: Vec<DaxEntry>) -> Result<Self> {
        check_dims(rows, cols)?;
        for (i, e) in entries.iter().enumerate() {
            if e.row >= rows || e.col >= cols {
                return Err(Error::OutOfRange(format!(
                    "entry ({}, {}) outside {rows}x{cols}",
                    e.row, e.col
                )));
            }
            if is_zero(e.value) || !e.value.re.is_finite() || !e.value.im.is_finite() {
                return Err(Error::OutOfRange(format!(
                    "entry ({}, {}) stores a zero or non-finite value",
                    e.row, e.col
                )));
            }
            if i > 0 && (entries[i - 1].row, entries[i - 1].col) >= (e.row, e.col) {
                return Err(Error::OutOfRange(format!(
                    "entry ({}, {}) out of canonical order",
                    e.row, e.col
                )));
            }
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn identity(dim: u64) -> Result<Self> {
        Self::diagonal(dim, |_| ComplexAmp::new(1.0, 0.0))
    }

    /// Diagonal matrix; zero diagonal values are skipped.
    pub fn diagonal(dim: u64, value: impl Fn(u64) -> ComplexAmp) -> Result<Self> {
        check_dims(dim, dim)?;
        let entries = (0..dim)
            .map(|i| DaxEntry {
                row: i,
                col: i,
                value: value(i),
            })
            .filter(|e| !is_zero(e.value))
            .collect();
        Ok(Self {
            rows: dim,
            cols: dim,
            entries,
        })
    }

    pub fn rows(&self) -> u64 {
        self.rows
    }

    pub fn cols(&self) -> u64 {
        self.cols
    }

    pub fn entries(&self) -> &[DaxEntry] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Linear positions of the stored entries, in order.
    pub fn linear_indices(&self) -> impl Iterator<Item = u128> + '_ {
        self.entries.iter().map(|e| e.linear_index(self.cols))
    }

    /// Accounted size: 24 bytes per entry.
    pub fn memory_bytes(&self) -> u64 {
        dax_memory_bytes(self)
    }

    /// Bytes actually held by this value.
    pub fn allocated_bytes(&self) -> u64 {
        (std::mem::size_of::<Self>() + self.entries.capacity() * std::mem::size_of::<DaxEntry>())
            as u64
    }

    /// `(row, start, end)` for every row that has entries.
    fn row_spans(&self) -> Vec<(u64, usize, usize)> {
        let mut spans = Vec::new();
        let mut start = 0;
        for i in 1..=self.entries.len() {
            if i == self.entries.len() || self.entries[i].row != self.entries[start].row {
                spans.push((self.entries[start].row, start, i));
                start = i;
            }
        }
        spans
    }

    /// Writes the `DAX1` dump: magic, rows, cols, entry count, then
    /// `(row, col, re, im)` per entry, all little-endian.
    pub fn write_dump<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(DAX_MAGIC)?;
        w.write_all(&self.rows.to_le_bytes())?;
        w.write_all(&self.cols.to_le_bytes())?;
        w.write_all(&(self.entries.len() as u64).to_le_bytes())?;
        for e in &self.entries {
            w.write_all(&e.row.to_le_bytes())?;
            w.write_all(&e.col.to_le_bytes())?;
            w.write_all(&e.value.re.to_le_bytes())?;
            w.write_all(&e.value.im.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_dump<R: Read>(mut r: R) -> Result<Self> {
        let mut magic = [0u8; 4];
        read_exact(&mut r, &mut magic)?;
        if &magic != DAX_MAGIC {
            return Err(Error::BadDump(format!(
                "expected magic DAX1, found {magic:?}"
            )));
        }
        let rows = read_u64(&mut r)?;
        let cols = read_u64(&mut r)?;
        let count = read_u64(&mut r)?;
        let mut entries = Vec::with_capacity(count.min(1 << 20) as usize);
        for _ in 0..count {
            let row = read_u64(&mut r)?;
            let col = read_u64(&mut r)?;
            let re = f64::from_bits(read_u64(&mut r)?);
            let im = f64::from_bits(read_u64(&mut r)?);
            entries.push(DaxEntry {
                row,
                col,
                value: ComplexAmp::new(re, im),
            });
        }
        ensure_eof(&mut r)?;
        Self::from_entries(rows, cols, entries).map_err(|e| Error::BadDump(e.to_string()))
    }
}

pub(crate) fn read_exact<R: Read>(r: &mut R, buf: &mut [u8]) -> Result<()> {
    r.read_exact(buf)
        .map_err(|e| Error::BadDump(format!("truncated dump: {e}")))
}

pub(crate) fn read_u64<R: Read>(r: &mut R) -> Result<u64> {
    let mut buf = [0u8; 8];
    read_exact(r, &mut buf)?;
    Ok(u64::from_le_bytes(buf))
}

pub(crate) fn ensure_eof<R: Read>(r: &mut R) -> Result<()> {
    let mut probe = [0u8; 1];
    match r.read(&mut probe)? {
        0 => Ok(()),
        _ => Err(Error::BadDump("trailing bytes after last entry".into())),
    }
}

/// Losslessly encodes every nonzero of `m`.
pub fn dax_encode(m: &DenseMatrix) -> DaxMatrix {
    let mut entries = Vec::with_capacity(m.nnz());
    for r in 0..m.rows() {
        for (c, &v) in m.row(r).iter().enumerate() {
            if !is_zero(v) {
                entries.push(DaxEntry {
                    row: r as u64,
                    col: c as u64,
                    value: v,
                });
            }
        }
    }
    DaxMatrix {
        rows: m.rows() as u64,
        cols: m.cols() as u64,
        entries,
    }
}

pub fn dax_decode(m: &DaxMatrix) -> Result<DenseMatrix> {
    dax_decode_capped(m, DEFAULT_DENSE_CAP)
}

pub fn dax_decode_capped(m: &DaxMatrix, cap: usize) -> Result<DenseMatrix> {
    check_dense_cap(m.rows as u128, m.cols as u128, cap)?;
    let mut out = DenseMatrix::zeros(m.rows as usize, m.cols as usize)?;
    for e in &m.entries {
        out.set(e.row as usize, e.col as usize, e.value);
    }
    Ok(out)
}

/// Tensor product on the compressed form. Result row and column indices are
/// the concatenations `r_a · b.rows + r_b` and `c_a · b.cols + c_b`.
///
/// Iteration runs over A's rows, then B's rows, then the entries of each,
/// which emits the result already in canonical order.
pub fn dax_mtp(a: &DaxMatrix, b: &DaxMatrix) -> Result<DaxMatrix> {
    let rows = product_dim(a.rows, b.rows)?;
    let cols = product_dim(a.cols, b.cols)?;
    let capacity = a
        .entries
        .len()
        .checked_mul(b.entries.len())
        .ok_or_else(|| Error::IndexOverflow("entry count overflows usize".into()))?;
    let mut entries = Vec::with_capacity(capacity);
    let b_spans = b.row_spans();
    for (ra, a_start, a_end) in a.row_spans() {
        for &(rb, b_start, b_end) in &b_spans {
            let row = ra * b.rows + rb;
            for ea in &a.entries[a_start..a_end] {
                let col_base = ea.col * b.cols;
                for eb in &b.entries[b_start..b_end] {
                    let value = ea.value * eb.value;
                    if !is_zero(value) {
                        entries.push(DaxEntry {
                            row,
                            col: col_base + eb.col,
                            value,
                        });
                    }
                }
            }
        }
    }
    debug_assert!(entries
        .windows(2)
        .all(|w| (w[0].row, w[0].col) < (w[1].row, w[1].col)));
    Ok(DaxMatrix {
        rows,
        cols,
        entries,
    })
}

pub fn dax_mvm(m: &DaxMatrix, s: &StateVector) -> Result<StateVector> {
    dax_mvm_counted(m, s, &mut OpCounters::default())
}

/// `S_next[row] += value · S[col]` over the stored entries only.
pub fn dax_mvm_counted(
    m: &DaxMatrix,
    s: &StateVector,
    counters: &mut OpCounters,
) -> Result<StateVector> {
    if m.rows != m.cols || m.cols != s.len() as u64 {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix against state of length {}",
            m.rows,
            m.cols,
            s.len()
        )));
    }
    let amps = s.amplitudes();
    let mut out = vec![ZERO; amps.len()];
    for e in &m.entries {
        out[e.row as usize] += e.value * amps[e.col as usize];
    }
    counters.mul_adds += m.entries.len() as u64;
    Ok(StateVector::from_raw(s.n(), out))
}

pub fn dax_memory_bytes(m: &DaxMatrix) -> u64 {
    ENTRY_BYTES * m.entries.len() as u64
}
