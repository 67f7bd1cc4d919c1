//! RH: `H^{⊗n}` held as its qubit count and the common magnitude
//! `1/√(2^n)`. Entry signs are recomputed on demand by descending the
//! quadrant structure of the matrix.
//!
//! `H^{⊗n}` splits into four quadrants with overall signs `[[+, +], [+, -]]`,
//! and every quadrant repeats the pattern one level down. Four ways of
//! producing the signs for one matrix-vector product are provided; they
//! differ only in how many times the O(n) quadrant descent runs:
//!
//! | method      | descents                          |
//! |-------------|-----------------------------------|
//! | non-opt     | `2^n · 2^n`                       |
//! | quarter     | `2^{n-1} · 2^{n-1}`               |
//! | block (`b`) | `2^{n-1} · (2^{n-1}/b + b - 1)`   |
//! | logarithm   | `2^{n-1} · (n - 1)`               |

use serde::{Deserialize, Serialize};

use crate::counters::OpCounters;
use crate::dense::ZERO;
use crate::error::{Error, Result};
use crate::state::StateVector;

/// `+1` or `-1`.
pub type Sign = i8;

/// Largest `n` accepted by the index arithmetic here.
pub const MAX_RH_QUBITS: u32 = 62;

/// Accounted size of an [`RhMatrix`]: the magnitude and the qubit count.
pub const RH_BYTES: u64 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RhMatrix {
    n: u32,
    value: f64,
}

impl RhMatrix {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    /// Independent of `n`.
    pub fn memory_bytes(&self) -> u64 {
        RH_BYTES
    }
}

/// Builds the RH form of `H^{⊗n}`.
pub fn rh_build(n: u32) -> Result<RhMatrix> {
    check_n(n)?;
    let value = if n.is_multiple_of(2) {
        0.5f64.powi((n / 2) as i32)
    } else {
        std::f64::consts::FRAC_1_SQRT_2 * 0.5f64.powi((n / 2) as i32)
    };
    Ok(RhMatrix { n, value })
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 || n > MAX_RH_QUBITS {
        return Err(Error::OutOfRange(format!(
            "Hadamard register size {n} outside 1..={MAX_RH_QUBITS}"
        )));
    }
    Ok(())
}

/// Tally of quadrant-descent invocations.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SignCounter {
    pub count: u64,
}

#[inline]
fn descend(r: u64, c: u64, n: u32, counter: &mut SignCounter) -> Sign {
    counter.count += 1;
    let mut sign = 1;
    for level in (0..n).rev() {
        let bit = 1u64 << level;
        // lower-right quadrant at this level
        if r & bit != 0 && c & bit != 0 {
            sign = -sign;
        }
    }
    sign
}

/// Sign of entry `(r, c)` of `H^{⊗n}` by quadrant descent, O(n).
pub fn quadrant_sign(r: u64, c: u64, n: u32, counter: &mut SignCounter) -> Result<Sign> {
    check_n(n)?;
    let dim = 1u64 << n;
    if r >= dim || c >= dim {
        return Err(Error::OutOfRange(format!(
            "index ({r}, {c}) outside a {dim}x{dim} matrix"
        )));
    }
    Ok(descend(r, c, n, counter))
}

fn check_row(r: u64, n: u32) -> Result<()> {
    check_n(n)?;
    if r >= 1u64 << n {
        return Err(Error::OutOfRange(format!("row {r} outside 2^{n} rows")));
    }
    Ok(())
}

/// Full row `r` with one descent per column.
pub fn sign_row_nonoptimized(r: u64, n: u32, counter: &mut SignCounter) -> Result<Vec<Sign>> {
    check_row(r, n)?;
    Ok((0..1u64 << n).map(|c| descend(r, c, n, counter)).collect())
}

/// Signs of the upper-left `2^{n-1} × 2^{n-1}` quarter. The full matrix is
/// `[[Q, Q], [Q, -Q]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarterTable {
    half: usize,
    signs: Vec<Sign>,
}

impl QuarterTable {
    pub fn half(&self) -> usize {
        self.half
    }

    pub fn row(&self, r: usize) -> &[Sign] {
        &self.signs[r * self.half..(r + 1) * self.half]
    }

    /// Sign anywhere in the full matrix, reconstructed from the quarter.
    pub fn full_sign(&self, r: usize, c: usize) -> Sign {
        let q = self.signs[(r % self.half) * self.half + c % self.half];
        if r >= self.half && c >= self.half {
            -q
        } else {
            q
        }
    }
}

pub fn sign_quarter(n: u32, counter: &mut SignCounter) -> Result<QuarterTable> {
    check_n(n)?;
    let half = 1u64 << (n - 1);
    let mut signs = Vec::with_capacity((half * half) as usize);
    for r in 0..half {
        for c in 0..half {
            signs.push(descend(r, c, n, counter));
        }
    }
    Ok(QuarterTable {
        half: half as usize,
        signs,
    })
}

/// Per-row descent count of the block method: `2^{n-1}/b + b - 1`.
pub fn block_cost(n: u32, b: u64) -> u64 {
    (1u64 << (n - 1)) / b + b - 1
}

fn check_block(n: u32, b: u64) -> Result<()> {
    let half = 1u64 << (n - 1);
    if !b.is_power_of_two() {
        return Err(Error::InvalidBlockSize {
            block: b,
            n,
            reason: "block size must be a power of two".into(),
        });
    }
    if b > half {
        return Err(Error::InvalidBlockSize {
            block: b,
            n,
            reason: format!("block size exceeds the quarter width {half}"),
        });
    }
    Ok(())
}

fn fill_row_block(r: u64, n: u32, b: u64, out: &mut [Sign], counter: &mut SignCounter) {
    let b = b as usize;
    for (c, slot) in out[..b].iter_mut().enumerate() {
        *slot = descend(r, c as u64, n, counter);
    }
    for head in (b..out.len()).step_by(b) {
        let s = descend(r, head as u64, n, counter);
        for j in 0..b {
            out[head + j] = s * out[j];
        }
    }
}

/// Quarter-width row `r`: the first block of `b` signs by descent, then one
/// descent per further block, whose head sign flips or keeps the first
/// block's pattern.
pub fn sign_row_block(r: u64, n: u32, b: u64, counter: &mut SignCounter) -> Result<Vec<Sign>> {
    check_row(r, n)?;
    check_block(n, b)?;
    let mut out = vec![0; 1usize << (n - 1)];
    fill_row_block(r, n, b, &mut out, counter);
    Ok(out)
}

/// Power-of-two block size minimizing [`block_cost`]; ties go to the smaller
/// block.
pub fn optimal_block_size(n: u32) -> Result<u64> {
    if !(2..=MAX_RH_QUBITS).contains(&n) {
        return Err(Error::OutOfRange(format!(
            "block method needs 2 <= n <= {MAX_RH_QUBITS}, got {n}"
        )));
    }
    let log_half = n - 1;
    if log_half.is_multiple_of(2) {
        return Ok(1u64 << (log_half / 2));
    }
    let lo = 1u64 << (log_half / 2);
    let hi = lo << 1;
    Ok(if block_cost(n, hi) < block_cost(n, lo) {
        hi
    } else {
        lo
    })
}

fn fill_row_logarithm(r: u64, n: u32, out: &mut [Sign], counter: &mut SignCounter) {
    out[0] = 1;
    for c in 1..out.len() {
        out[c] = if c.is_power_of_two() {
            descend(r, c as u64, n, counter)
        } else {
            let msb = 1usize << (usize::BITS - 1 - c.leading_zeros());
            out[msb] * out[c - msb]
        };
    }
}

/// Quarter-width row `r` with descents only at power-of-two columns; every
/// other column is `sign[msb(c)] · sign[c - msb(c)]`. Column 0 is `+1` for
/// free, so a row costs `n - 1` descents.
pub fn sign_row_logarithm(r: u64, n: u32, counter: &mut SignCounter) -> Result<Vec<Sign>> {
    check_row(r, n)?;
    let mut out = vec![0; 1usize << (n - 1)];
    fill_row_logarithm(r, n, &mut out, counter);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum SignMethod {
    NonOptimized,
    Quarter,
    /// Block method; `None` picks [`optimal_block_size`].
    Block(Option<u64>),
    #[default]
    Logarithm,
}

impl SignMethod {
    pub fn label(&self) -> &'static str {
        match self {
            SignMethod::NonOptimized => "nonopt",
            SignMethod::Quarter => "quarter",
            SignMethod::Block(_) => "block",
            SignMethod::Logarithm => "logarithm",
        }
    }

    /// Block size actually used at `n`, for the block method.
    pub fn resolved_block(&self, n: u32) -> Result<Option<u64>> {
        match self {
            SignMethod::Block(Some(b)) => {
                check_block(n, *b)?;
                Ok(Some(*b))
            }
            SignMethod::Block(None) if n == 1 => Ok(Some(1)),
            SignMethod::Block(None) => optimal_block_size(n).map(Some),
            _ => Ok(None),
        }
    }

    /// Descent total for one full `H^{⊗n}` product.
    pub fn expected_sign_calls(&self, n: u32) -> Result<u128> {
        check_n(n)?;
        let full = 1u128 << n;
        let half = full / 2;
        Ok(match self {
            SignMethod::NonOptimized => full * full,
            SignMethod::Quarter => half * half,
            SignMethod::Block(_) => {
                let b = self.resolved_block(n)?.unwrap_or(1) as u128;
                half * (half / b + b - 1)
            }
            SignMethod::Logarithm => half * (n as u128 - 1),
        })
    }
}

pub fn rh_mvm(m: &RhMatrix, s: &StateVector, method: SignMethod) -> Result<StateVector> {
    rh_mvm_counted(m, s, method, &mut OpCounters::default())
}

/// `H^{⊗n} · s`: scale the state by the RH magnitude once, then sweep the
/// quarter rows. For quarter row `r`, column `c` and `h = 2^{n-1}`:
///
/// ```text
/// next[r]     += sign · S[c]        next[r]     += sign · S[c + h]
/// next[r + h] += sign · S[c]        next[r + h] -= sign · S[c + h]
/// ```
///
/// The non-optimized method instead takes full-width dot products, one
/// descent per matrix entry.
pub fn rh_mvm_counted(
    m: &RhMatrix,
    s: &StateVector,
    method: SignMethod,
    counters: &mut OpCounters,
) -> Result<StateVector> {
    if s.n() != m.n {
        return Err(Error::DimensionMismatch(format!(
            "H^⊗{} against a {}-qubit state",
            m.n,
            s.n()
        )));
    }
    let n = m.n;
    let scaled: Vec<_> = s.amplitudes().iter().map(|a| a * m.value).collect();
    let full = scaled.len();
    let half = full / 2;
    let mut out = vec![ZERO; full];
    let mut signs = SignCounter::default();

    if let SignMethod::NonOptimized = method {
        let mut row = vec![0; full];
        for (r, o) in out.iter_mut().enumerate() {
            for (c, slot) in row.iter_mut().enumerate() {
                *slot = descend(r as u64, c as u64, n, &mut signs);
            }
            *o = row
                .iter()
                .zip(&scaled)
                .fold(ZERO, |acc, (&sg, x)| if sg > 0 { acc + x } else { acc - x });
        }
        counters.mul_adds += (full * full) as u64;
        counters.sign_calls += signs.count;
        return Ok(StateVector::from_raw(n, out));
    }

    let (lo, hi) = scaled.split_at(half);
    let mut accumulate = |r: usize, row: &[Sign]| {
        let (mut top, mut bottom) = (ZERO, ZERO);
        for ((&sg, &x0), &x1) in row.iter().zip(lo).zip(hi) {
            if sg > 0 {
                top += x0;
                top += x1;
                bottom += x0;
                bottom -= x1;
            } else {
                top -= x0;
                top -= x1;
                bottom -= x0;
                bottom += x1;
            }
        }
        out[r] = top;
        out[r + half] = bottom;
    };

    match method {
        SignMethod::Quarter => {
            let table = sign_quarter(n, &mut signs)?;
            for r in 0..half {
                accumulate(r, table.row(r));
            }
        }
        SignMethod::Block(_) => {
            let b = method.resolved_block(n)?.unwrap_or(1);
            let mut row = vec![0; half];
            for r in 0..half {
                fill_row_block(r as u64, n, b, &mut row, &mut signs);
                accumulate(r, &row);
            }
        }
        SignMethod::Logarithm => {
            let mut row = vec![0; half];
            for r in 0..half {
                fill_row_logarithm(r as u64, n, &mut row, &mut signs);
                accumulate(r, &row);
            }
        }
        SignMethod::NonOptimized => unreachable!(),
    }
    counters.mul_adds += 4 * (half * half) as u64;
    counters.sign_calls += signs.count;
    Ok(StateVector::from_raw(n, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::ComplexAmp;

    fn oracle(r: u64, c: u64) -> Sign {
        if (r & c).count_ones().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    #[test]
    fn build_examples() {
        assert_eq!(
            rh_build(1).unwrap().value(),
            std::f64::consts::FRAC_1_SQRT_2
        );
        assert_eq!(rh_build(2).unwrap().value(), 0.5);
        assert_eq!(rh_build(34).unwrap().value(), 2f64.powi(-17));
        for n in 1..=40 {
            let v = rh_build(n).unwrap().value();
            assert!((v * v * 2f64.powi(n as i32) - 1.0).abs() < 1e-12);
            assert_eq!(rh_build(n).unwrap().memory_bytes(), RH_BYTES);
        }
        assert!(rh_build(0).is_err());
    }

    #[test]
    fn quadrant_sign_examples() {
        let mut k = SignCounter::default();
        assert_eq!(quadrant_sign(2, 7, 3, &mut k).unwrap(), -1);
        assert_eq!(k.count, 1);
        for c in 0..16 {
            assert_eq!(quadrant_sign(0, c, 4, &mut k).unwrap(), 1);
        }
        assert!(quadrant_sign(8, 0, 3, &mut k).is_err());
        assert!(quadrant_sign(0, 8, 3, &mut k).is_err());
    }

    #[test]
    fn nonoptimized_rows() {
        let mut k = SignCounter::default();
        assert_eq!(
            sign_row_nonoptimized(3, 2, &mut k).unwrap(),
            vec![1, -1, -1, 1]
        );
        assert_eq!(sign_row_nonoptimized(1, 1, &mut k).unwrap(), vec![1, -1]);
        let mut k = SignCounter::default();
        for r in 0..8 {
            sign_row_nonoptimized(r, 3, &mut k).unwrap();
        }
        assert_eq!(k.count, 64);
    }

    #[test]
    fn quarter_examples() {
        let mut k = SignCounter::default();
        let q = sign_quarter(5, &mut k).unwrap();
        assert_eq!(q.half(), 16);
        assert_eq!(k.count, 256);

        let mut k = SignCounter::default();
        let q1 = sign_quarter(1, &mut k).unwrap();
        assert_eq!(q1.row(0), &[1]);

        for n in 1..=8u32 {
            let q = sign_quarter(n, &mut SignCounter::default()).unwrap();
            for r in 0..1u64 << n {
                let full = sign_row_nonoptimized(r, n, &mut SignCounter::default()).unwrap();
                for (c, &s) in full.iter().enumerate() {
                    assert_eq!(q.full_sign(r as usize, c), s);
                }
            }
        }
    }

    #[test]
    fn block_examples() {
        let mut k = SignCounter::default();
        sign_row_block(3, 5, 2, &mut k).unwrap();
        assert_eq!(k.count, 9);
        let mut k = SignCounter::default();
        sign_row_block(3, 5, 4, &mut k).unwrap();
        assert_eq!(k.count, 7);
        let mut k = SignCounter::default();
        let b1 = sign_row_block(3, 5, 1, &mut k).unwrap();
        assert_eq!(k.count, 16);
        let q = sign_quarter(5, &mut SignCounter::default()).unwrap();
        assert_eq!(b1, q.row(3));

        assert!(matches!(
            sign_row_block(0, 5, 3, &mut k),
            Err(Error::InvalidBlockSize { block: 3, .. })
        ));
        assert!(sign_row_block(0, 5, 32, &mut k).is_err());
    }

    #[test]
    fn optimal_block_examples() {
        assert_eq!(optimal_block_size(5).unwrap(), 4);
        assert_eq!(block_cost(5, 4), 7);
        assert_eq!(optimal_block_size(2).unwrap(), 1);
        assert_eq!(block_cost(2, 1), 2);
        assert_eq!(block_cost(2, 2), 2);
        assert_eq!(optimal_block_size(9).unwrap(), 16);
        assert_eq!(block_cost(9, 16), 31);
        assert!(optimal_block_size(1).is_err());
    }

    #[test]
    fn logarithm_examples() {
        let mut k = SignCounter::default();
        sign_row_logarithm(7, 5, &mut k).unwrap();
        assert_eq!(k.count, 4);
        let mut k = SignCounter::default();
        assert_eq!(sign_row_logarithm(0, 1, &mut k).unwrap(), vec![1]);
        assert_eq!(k.count, 0);
        for n in 1..=9u32 {
            for r in 0..1u64 << (n - 1) {
                let row = sign_row_logarithm(r, n, &mut SignCounter::default()).unwrap();
                for (c, &s) in row.iter().enumerate() {
                    assert_eq!(s, oracle(r, c as u64));
                }
            }
        }
    }

    #[test]
    fn mvm_small_examples() {
        let v = std::f64::consts::FRAC_1_SQRT_2;
        for method in [
            SignMethod::NonOptimized,
            SignMethod::Quarter,
            SignMethod::Block(None),
            SignMethod::Logarithm,
        ] {
            let out = rh_mvm(
                &rh_build(1).unwrap(),
                &StateVector::basis(1, 0).unwrap(),
                method,
            )
            .unwrap();
            for a in out.amplitudes() {
                assert!((a - ComplexAmp::new(v, 0.0)).norm() < 1e-15);
            }
            let out = rh_mvm(
                &rh_build(3).unwrap(),
                &StateVector::basis(3, 0).unwrap(),
                method,
            )
            .unwrap();
            for a in out.amplitudes() {
                assert!((a.re - 8f64.sqrt().recip()).abs() < 1e-15 && a.im == 0.0);
            }
        }
    }

    #[test]
    fn mvm_counts_match_formulas() {
        for n in 1..=8u32 {
            let s = StateVector::basis(n, 1).unwrap();
            let rh = rh_build(n).unwrap();
            for method in [
                SignMethod::NonOptimized,
                SignMethod::Quarter,
                SignMethod::Block(None),
                SignMethod::Logarithm,
            ] {
                let mut k = OpCounters::default();
                rh_mvm_counted(&rh, &s, method, &mut k).unwrap();
                assert_eq!(
                    k.sign_calls as u128,
                    method.expected_sign_calls(n).unwrap(),
                    "{method:?} n={n}"
                );
            }
        }
    }

    #[test]
    fn mvm_rejects_mismatch() {
        let s = StateVector::basis(2, 0).unwrap();
        assert!(rh_mvm(&rh_build(3).unwrap(), &s, SignMethod::Logarithm).is_err());
        assert!(rh_mvm(
            &rh_build(3).unwrap(),
            &StateVector::basis(3, 0).unwrap(),
            SignMethod::Block(Some(3))
        )
        .is_err());
    }
}
