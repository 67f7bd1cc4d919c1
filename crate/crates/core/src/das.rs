//! DAS: row-major run-length stream of nonzeros.
//!
//! Each entry stores the number of zeros since the previous nonzero of the
//! same row (or since the row start), a flag marking the last nonzero of its
//! row, and the value. Trailing zeros of a row are implied by the column
//! count. A row without any nonzero has no anchor for its flag, so such
//! matrices are rejected at encode time.

use std::io::{Read, Write};

use serde::Serialize;

use crate::counters::OpCounters;
use crate::dax::{check_dims, ensure_eof, product_dim, read_exact, read_u64, DaxMatrix};
use crate::dense::{check_dense_cap, is_zero, DenseMatrix, DEFAULT_DENSE_CAP, ZERO};
use crate::error::{Error, Result};
use crate::sparsity::ENTRY_BYTES;
use crate::state::{ComplexAmp, StateVector};

/// Largest storable distance (63 bits).
pub const MAX_DIS: u64 = (1 << 63) - 1;

const FLAG_BIT: u64 = 1 << 63;

pub const DAS_MAGIC: &[u8; 4] = b"DAS1";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DasEntry {
    pub dis: u64,
    pub last_in_row: bool,
    pub value: ComplexAmp,
}

impl DasEntry {
    /// The packed index word: low 63 bits distance, top bit flag.
    pub fn packed(&self) -> u64 {
        self.dis | if self.last_in_row { FLAG_BIT } else { 0 }
    }

    pub fn unpack(word: u64, value: ComplexAmp) -> Self {
        Self {
            dis: word & MAX_DIS,
            last_in_row: word & FLAG_BIT != 0,
            value,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DasMatrix {
    rows: u64,
    cols: u64,
    entries: Vec<DasEntry>,
}

impl DasMatrix {
    /// Validates the stream: one flagged entry closes each row, rows are
    /// consumed exactly, and no row overruns its width.
    pub fn from_entries(rows: u64, cols: u64, entries: Vec<DasEntry>) -> Result<Self> {
        check_dims(rows, cols)?;
        let mut row = 0u64;
        let mut col = 0u64;
        for (i, e) in entries.iter().enumerate() {
            if row >= rows {
                return Err(Error::MalformedStream(format!(
                    "entry {i} lies past the last row"
                )));
            }
            if e.dis > MAX_DIS {
                return Err(Error::MalformedStream(format!(
                    "entry {i} distance exceeds 63 bits"
                )));
            }
            if is_zero(e.value) || !e.value.re.is_finite() || !e.value.im.is_finite() {
                return Err(Error::MalformedStream(format!(
                    "entry {i} stores a zero or non-finite value"
                )));
            }
            col = col
                .checked_add(e.dis)
                .filter(|&c| c < cols)
                .ok_or_else(|| {
                    Error::MalformedStream(format!("row {row} overruns {cols} columns"))
                })?;
            col += 1;
            if e.last_in_row {
                row += 1;
                col = 0;
            }
        }
        if row != rows || col != 0 {
            return Err(Error::MalformedStream(format!(
                "stream closes {row} of {rows} rows"
            )));
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

    /// Diagonal matrix; every diagonal value must be nonzero.
    pub fn diagonal(dim: u64, value: impl Fn(u64) -> ComplexAmp) -> Result<Self> {
        check_dims(dim, dim)?;
        let entries = (0..dim)
            .map(|i| {
                let v = value(i);
                if is_zero(v) {
                    Err(Error::UnrepresentableRow { row: i })
                } else {
                    Ok(DasEntry {
                        dis: i,
                        last_in_row: true,
                        value: v,
                    })
                }
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            rows: dim,
            cols: dim,
            entries,
        })
    }

    /// Re-encodes a DAX matrix as a DAS stream without a dense intermediate.
    pub fn from_dax(m: &DaxMatrix) -> Result<Self> {
        let mut entries = Vec::with_capacity(m.nnz());
        let mut expected_row = 0u64;
        let mut next_col = 0u64;
        for (i, e) in m.entries().iter().enumerate() {
            if e.row != expected_row {
                return Err(Error::UnrepresentableRow { row: expected_row });
            }
            entries.push(DasEntry {
                dis: e.col - next_col,
                last_in_row: false,
                value: e.value,
            });
            next_col = e.col + 1;
            let row_ends = m.entries().get(i + 1).is_none_or(|nx| nx.row != e.row);
            if row_ends {
                entries.last_mut().unwrap().last_in_row = true;
                expected_row += 1;
                next_col = 0;
            }
        }
        if expected_row != m.rows() {
            return Err(Error::UnrepresentableRow { row: expected_row });
        }
        Ok(Self {
            rows: m.rows(),
            cols: m.cols(),
            entries,
        })
    }

    pub fn rows(&self) -> u64 {
        self.rows
    }

    pub fn cols(&self) -> u64 {
        self.cols
    }

    pub fn entries(&self) -> &[DasEntry] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn memory_bytes(&self) -> u64 {
        ENTRY_BYTES * self.entries.len() as u64
    }

    pub fn allocated_bytes(&self) -> u64 {
        (std::mem::size_of::<Self>() + self.entries.capacity() * std::mem::size_of::<DasEntry>())
            as u64
    }

    /// Per row: `(start, end, zeros after the last nonzero)`.
    fn row_spans(&self) -> Vec<(usize, usize, u64)> {
        let mut spans = Vec::with_capacity(self.rows as usize);
        let mut start = 0;
        let mut used = 0u64;
        for (i, e) in self.entries.iter().enumerate() {
            used += e.dis + 1;
            if e.last_in_row {
                spans.push((start, i + 1, self.cols - used));
                start = i + 1;
                used = 0;
            }
        }
        spans
    }

    /// Writes the `DAS1` dump: magic, rows, cols, entry count, then
    /// `(dis | flag << 63, re, im)` per entry, all little-endian.
    pub fn write_dump<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(DAS_MAGIC)?;
        w.write_all(&self.rows.to_le_bytes())?;
        w.write_all(&self.cols.to_le_bytes())?;
        w.write_all(&(self.entries.len() as u64).to_le_bytes())?;
        for e in &self.entries {
            w.write_all(&e.packed().to_le_bytes())?;
            w.write_all(&e.value.re.to_le_bytes())?;
            w.write_all(&e.value.im.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_dump<R: Read>(mut r: R) -> Result<Self> {
        let mut magic = [0u8; 4];
        read_exact(&mut r, &mut magic)?;
        if &magic != DAS_MAGIC {
            return Err(Error::BadDump(format!(
                "expected magic DAS1, found {magic:?}"
            )));
        }
        let rows = read_u64(&mut r)?;
        let cols = read_u64(&mut r)?;
        let count = read_u64(&mut r)?;
        let mut entries = Vec::with_capacity(count.min(1 << 20) as usize);
        for _ in 0..count {
            let word = read_u64(&mut r)?;
            let re = f64::from_bits(read_u64(&mut r)?);
            let im = f64::from_bits(read_u64(&mut r)?);
            entries.push(DasEntry::unpack(word, ComplexAmp::new(re, im)));
        }
        ensure_eof(&mut r)?;
        Self::from_entries(rows, cols, entries).map_err(|e| Error::BadDump(e.to_string()))
    }
}

pub fn das_encode(m: &DenseMatrix) -> Result<DasMatrix> {
    let mut entries = Vec::with_capacity(m.nnz());
    for r in 0..m.rows() {
        let row_start = entries.len();
        let mut next_col = 0usize;
        for (c, &v) in m.row(r).iter().enumerate() {
            if !is_zero(v) {
                entries.push(DasEntry {
                    dis: (c - next_col) as u64,
                    last_in_row: false,
                    value: v,
                });
                next_col = c + 1;
            }
        }
        match entries[row_start..].last_mut() {
            Some(last) => last.last_in_row = true,
            None => return Err(Error::UnrepresentableRow { row: r as u64 }),
        }
    }
    Ok(DasMatrix {
        rows: m.rows() as u64,
        cols: m.cols() as u64,
        entries,
    })
}

pub fn das_decode(m: &DasMatrix) -> Result<DenseMatrix> {
    das_decode_capped(m, DEFAULT_DENSE_CAP)
}

pub fn das_decode_capped(m: &DasMatrix, cap: usize) -> Result<DenseMatrix> {
    check_dense_cap(m.rows as u128, m.cols as u128, cap)?;
    let mut out = DenseMatrix::zeros(m.rows as usize, m.cols as usize)?;
    let (mut row, mut col) = (0usize, 0usize);
    for e in &m.entries {
        col += e.dis as usize;
        if row >= out.rows() || col >= out.cols() {
            return Err(Error::MalformedStream(format!("row {row} overrun")));
        }
        out.set(row, col, e.value);
        col += 1;
        if e.last_in_row {
            row += 1;
            col = 0;
        }
    }
    Ok(out)
}

/// Tensor product on the compressed streams.
///
/// For result row `(r_a, r_b)` and each pair of A-entry `i` and B-entry `j`
/// from those rows, the distance before the product is:
/// - `A_i.dis · B.cols + B_j.dis` when both are first in their rows;
/// - `A_i.dis · B.cols + B_j.dis + B_last_dis` when `B_j` is first but `A_i`
///   is not, where `B_last_dis` counts the zeros behind B's last nonzero;
/// - `B_j.dis` otherwise.
pub fn das_mtp(a: &DasMatrix, b: &DasMatrix) -> Result<DasMatrix> {
    let rows = product_dim(a.rows, b.rows)?;
    let cols = product_dim(a.cols, b.cols)?;
    let capacity = a
        .entries
        .len()
        .checked_mul(b.entries.len())
        .ok_or_else(|| Error::IndexOverflow("entry count overflows usize".into()))?;
    let mut entries: Vec<DasEntry> = Vec::with_capacity(capacity);
    let b_spans = b.row_spans();
    let b_cols = b.cols as u128;
    let overflow = || Error::IndexOverflow("DAS distance exceeds 63 bits".into());

    for (ra, &(a_start, a_end, _)) in a.row_spans().iter().enumerate() {
        for (rb, &(b_start, b_end, b_last_dis)) in b_spans.iter().enumerate() {
            let row_start = entries.len();
            // zeros owed by products that evaluated to exactly zero
            let mut carry: u128 = 0;
            for (i, ea) in a.entries[a_start..a_end].iter().enumerate() {
                for (j, eb) in b.entries[b_start..b_end].iter().enumerate() {
                    let dis = match (i == 0, j == 0) {
                        (true, true) => ea.dis as u128 * b_cols + eb.dis as u128,
                        (false, true) => {
                            ea.dis as u128 * b_cols + eb.dis as u128 + b_last_dis as u128
                        }
                        _ => eb.dis as u128,
                    };
                    let value = ea.value * eb.value;
                    if is_zero(value) {
                        carry += dis + 1;
                        continue;
                    }
                    let dis = u64::try_from(dis + carry)
                        .ok()
                        .filter(|&d| d <= MAX_DIS)
                        .ok_or_else(overflow)?;
                    carry = 0;
                    entries.push(DasEntry {
                        dis,
                        last_in_row: false,
                        value,
                    });
                }
            }
            match entries[row_start..].last_mut() {
                Some(last) => last.last_in_row = true,
                None => {
                    return Err(Error::UnrepresentableRow {
                        row: ra as u64 * b.rows + rb as u64,
                    })
                }
            }
        }
    }
    Ok(DasMatrix {
        rows,
        cols,
        entries,
    })
}

pub fn das_mvm(m: &DasMatrix, s: &StateVector) -> Result<StateVector> {
    das_mvm_counted(m, s, &mut OpCounters::default())
}

/// Single forward scan with running row and column cursors.
pub fn das_mvm_counted(
    m: &DasMatrix,
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
    let (mut row, mut col) = (0usize, 0usize);
    for e in &m.entries {
        col += e.dis as usize;
        let (Some(slot), Some(x)) = (out.get_mut(row), amps.get(col)) else {
            return Err(Error::MalformedStream(format!(
                "row {row} overrun at column {col}"
            )));
        };
        *slot += e.value * x;
        col += 1;
        if e.last_in_row {
            row += 1;
            col = 0;
        }
    }
    counters.mul_adds += m.entries.len() as u64;
    Ok(StateVector::from_raw(s.n(), out))
}
