//! The simulation state: `2^n` complex amplitudes of unit 2-norm.
//!
//! Basis index convention: qubit 0 is the most significant bit of the index,
//! so `|q0 q1 ... q(n-1)>` maps to the integer whose binary expansion reads
//! `q0 q1 ... q(n-1)` left to right. This matches the left-to-right order of
//! the tensor products that build each step's operation-matrix.

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Double-precision complex amplitude.
pub type ComplexAmp = Complex64;

/// Tolerance on `sum |amp|^2 = 1`.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Largest register this crate will allocate a state for.
pub const MAX_QUBITS: u32 = 40;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateVector {
    n: u32,
    amps: Vec<ComplexAmp>,
}

impl StateVector {
    /// Computational basis state `|index>` on `n` qubits.
    pub fn basis(n: u32, index: u64) -> Result<Self> {
        check_qubits(n)?;
        let len = 1u64 << n;
        if index >= len {
            return Err(Error::OutOfRange(format!(
                "basis index {index} not below 2^{n}"
            )));
        }
        let mut amps = vec![ComplexAmp::new(0.0, 0.0); len as usize];
        amps[index as usize] = ComplexAmp::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    /// Wraps a normalized amplitude vector. The length must be a power of two
    /// (at least 2) and the squared norm must be 1 within [`NORM_TOLERANCE`].
    pub fn from_amplitudes(amps: Vec<ComplexAmp>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidState(format!(
                "length {len} is not a power of two >= 2"
            )));
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::InvalidState("non-finite amplitude".into()));
        }
        let state = Self {
            n: len.trailing_zeros(),
            amps,
        };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidState(format!(
                "squared norm is {norm}, expected 1"
            )));
        }
        Ok(state)
    }

    /// Normalizes an arbitrary nonzero vector.
    pub fn normalized(mut amps: Vec<ComplexAmp>) -> Result<Self> {
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::InvalidState("cannot normalize a zero vector".into()));
        }
        for a in &mut amps {
            *a /= norm;
        }
        Self::from_amplitudes(amps)
    }

    /// Uniformly random direction, for tests and benchmarks.
    pub fn random<R: Rng + ?Sized>(n: u32, rng: &mut R) -> Result<Self> {
        check_qubits(n)?;
        let amps = (0..1usize << n)
            .map(|_| ComplexAmp::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        Self::normalized(amps)
    }

    /// Unchecked constructor for MVM outputs; the engine re-checks the norm
    /// after every step.
    pub(crate) fn from_raw(n: u32, amps: Vec<ComplexAmp>) -> Self {
        debug_assert_eq!(amps.len(), 1usize << n);
        Self { n, amps }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn amplitudes(&self) -> &[ComplexAmp] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<ComplexAmp> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Largest amplitude difference (modulus) against another state.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        assert_eq!(self.len(), other.len(), "state length mismatch");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

pub(crate) fn check_qubits(n: u32) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::OutOfRange(format!(
            "qubit count {n} outside 1..={MAX_QUBITS}"
        )));
    }
    Ok(())
}
