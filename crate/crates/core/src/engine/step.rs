//! Whole-register operation-matrices for a single circuit step.
//!
//! A step with placements is the tensor product, by qubit position, of each
//! placement's local matrix and identities on the idle qubits. Qubit 0 is the
//! leftmost factor, i.e. the most significant bit of a basis index.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::circuit::{CircuitStep, DiagonalOp, Placement, StepOp};
use crate::counters::OpCounters;
use crate::das::{das_mtp, das_mvm_counted, DasMatrix};
use crate::dax::{dax_decode, dax_mtp, dax_mvm_counted, DaxMatrix};
use crate::dense::{
    check_dense_cap, dense_mvm_counted, dense_tensor_capped, DenseMatrix, DENSE_ELEMENT_BYTES,
};
use crate::error::{Error, Result};
use crate::rh::{rh_build, rh_mvm_counted, RhMatrix, SignMethod, RH_BYTES};
use crate::sparsity::ENTRY_BYTES;
use crate::state::StateVector;

/// Default ceiling on stored DAX/DAS entries for one step matrix.
pub const DEFAULT_ENTRY_CAP: usize = 1 << 25;

/// Storage structure of an operation-matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Structure {
    Dense,
    Dax,
    Das,
    Rh,
}

impl Structure {
    pub fn label(&self) -> &'static str {
        match self {
            Structure::Dense => "dense",
            Structure::Dax => "dax",
            Structure::Das => "das",
            Structure::Rh => "rh",
        }
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Simulation engine: which structure each step is built in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    Dense,
    Dax,
    Das,
    /// RH for steps that are Hadamard on every qubit, DAX otherwise.
    RhDax,
}

impl Engine {
    pub const ALL: [Engine; 4] = [Engine::Dense, Engine::Dax, Engine::Das, Engine::RhDax];

    pub fn label(&self) -> &'static str {
        match self {
            Engine::Dense => "dense",
            Engine::Dax => "dax",
            Engine::Das => "das",
            Engine::RhDax => "rh-dax",
        }
    }

    /// Structure used for `step` on an `n`-qubit register.
    pub fn structure_for(&self, step: &CircuitStep, n: u32) -> Structure {
        match self {
            Engine::Dense => Structure::Dense,
            Engine::Dax => Structure::Dax,
            Engine::Das => Structure::Das,
            Engine::RhDax if step.is_full_hadamard(n as usize) => Structure::Rh,
            Engine::RhDax => Structure::Dax,
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Engine::ALL
            .into_iter()
            .find(|e| e.label().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::Parse(format!(
                    "unknown engine `{s}` (expected dense, dax, das or rh-dax)"
                ))
            })
    }
}

/// Capacity limits applied while building step matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximum dense elements (`rows · cols`).
    pub dense: usize,
    /// Maximum DAX/DAS entries.
    pub entries: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            dense: crate::dense::DEFAULT_DENSE_CAP,
            entries: DEFAULT_ENTRY_CAP,
        }
    }
}

/// A step's operation-matrix in one structure.
#[derive(Debug, Clone, PartialEq)]
pub enum StepMatrix {
    Dense(DenseMatrix),
    Dax(DaxMatrix),
    Das(DasMatrix),
    Rh(RhMatrix),
}

impl StepMatrix {
    pub fn structure(&self) -> Structure {
        match self {
            StepMatrix::Dense(_) => Structure::Dense,
            StepMatrix::Dax(_) => Structure::Dax,
            StepMatrix::Das(_) => Structure::Das,
            StepMatrix::Rh(_) => Structure::Rh,
        }
    }

    /// Nonzero count of the operator (every entry is nonzero for RH).
    pub fn nnz(&self) -> u128 {
        match self {
            StepMatrix::Dense(m) => m.nnz() as u128,
            StepMatrix::Dax(m) => m.nnz() as u128,
            StepMatrix::Das(m) => m.nnz() as u128,
            StepMatrix::Rh(m) => 1u128 << (2 * m.n()),
        }
    }

    /// Bytes by the structure's own accounting: `16` per dense element,
    /// `24` per DAX/DAS entry, a constant for RH.
    pub fn analytic_bytes(&self) -> u128 {
        match self {
            StepMatrix::Dense(m) => m.memory_bytes() as u128,
            StepMatrix::Dax(m) => m.nnz() as u128 * ENTRY_BYTES as u128,
            StepMatrix::Das(m) => m.nnz() as u128 * ENTRY_BYTES as u128,
            StepMatrix::Rh(_) => RH_BYTES as u128,
        }
    }

    /// Heap plus inline bytes actually held by the in-memory value.
    pub fn allocated_bytes(&self) -> u64 {
        match self {
            StepMatrix::Dense(m) => (m.data().len() * std::mem::size_of_val(&m.data()[0])) as u64,
            StepMatrix::Dax(m) => m.allocated_bytes(),
            StepMatrix::Das(m) => m.allocated_bytes(),
            StepMatrix::Rh(_) => std::mem::size_of::<RhMatrix>() as u64,
        }
    }

    /// `self · s`; `method` only matters for RH.
    pub fn apply(
        &self,
        s: &StateVector,
        method: SignMethod,
        counters: &mut OpCounters,
    ) -> Result<StateVector> {
        match self {
            StepMatrix::Dense(m) => dense_mvm_counted(m, s, counters),
            StepMatrix::Dax(m) => dax_mvm_counted(m, s, counters),
            StepMatrix::Das(m) => das_mvm_counted(m, s, counters),
            StepMatrix::Rh(m) => rh_mvm_counted(m, s, method, counters),
        }
    }
}

/// Bytes of the full `2^n × 2^n` dense operation-matrix.
pub fn dense_step_bytes(n: u32) -> u128 {
    (1u128 << (2 * n)) * DENSE_ELEMENT_BYTES as u128
}

/// One tensor factor of a step, in qubit order.
enum Factor<'a> {
    Identity(u32),
    Placement(&'a Placement),
}

fn factors(placements: &[Placement], n: u32) -> Vec<Factor<'_>> {
    let mut sorted: Vec<&Placement> = placements.iter().collect();
    sorted.sort_by_key(|p| p.span().0);
    let mut out = Vec::new();
    let mut next = 0usize;
    for p in sorted {
        let (lo, hi) = p.span();
        if lo > next {
            out.push(Factor::Identity((lo - next) as u32));
        }
        out.push(Factor::Placement(p));
        next = hi + 1;
    }
    if next < n as usize {
        out.push(Factor::Identity(n - next as u32));
    }
    out
}

fn check_entry_cap(requested: u128, caps: Caps) -> Result<()> {
    if requested > caps.entries as u128 {
        return Err(Error::EntryCapacity {
            requested,
            cap: caps.entries,
        });
    }
    Ok(())
}

fn local_factor_dax(f: &Factor<'_>) -> Result<DaxMatrix> {
    match f {
        Factor::Identity(k) => DaxMatrix::identity(1 << k),
        Factor::Placement(p) => p.local_dax(),
    }
}

/// Builds the operation-matrix of `step` in `structure`.
///
/// Placements are folded left to right with the structure's own tensor
/// product; the compressed structures never hold a dense intermediate. RH is
/// only available for a step that is Hadamard on every qubit.
pub fn step_matrix(
    step: &CircuitStep,
    n: u32,
    structure: Structure,
    caps: Caps,
) -> Result<StepMatrix> {
    let dim = 1u64 << n;
    match &step.op {
        StepOp::Diagonal(op) => {
            let entry = |i: u64| op.entry(i);
            match structure {
                Structure::Dense => {
                    check_dense_cap(dim as u128, dim as u128, caps.dense)?;
                    let diag: Vec<_> = (0..dim).map(entry).collect();
                    DenseMatrix::diagonal(&diag).map(StepMatrix::Dense)
                }
                Structure::Dax => {
                    check_entry_cap(dim as u128, caps)?;
                    DaxMatrix::diagonal(dim, entry).map(StepMatrix::Dax)
                }
                Structure::Das => {
                    check_entry_cap(dim as u128, caps)?;
                    DasMatrix::diagonal(dim, entry).map(StepMatrix::Das)
                }
                Structure::Rh => Err(rh_mismatch(op)),
            }
        }
        StepOp::Gates(placements) => {
            if structure == Structure::Rh {
                if !step.is_full_hadamard(n as usize) {
                    return Err(Error::MalformedCircuit(
                        "RH structure needs a Hadamard on every qubit".into(),
                    ));
                }
                return rh_build(n).map(StepMatrix::Rh);
            }
            let fs = factors(placements, n);
            match structure {
                Structure::Dense => {
                    check_dense_cap(dim as u128, dim as u128, caps.dense)?;
                    let mut acc = DenseMatrix::identity(1)?;
                    for f in &fs {
                        let local = match f {
                            Factor::Identity(k) => DenseMatrix::identity(1 << k)?,
                            Factor::Placement(Placement::Gate { gate, .. }) => gate.matrix.clone(),
                            Factor::Placement(p) => dax_decode(&p.local_dax()?)?,
                        };
                        acc = dense_tensor_capped(&acc, &local, caps.dense)?;
                    }
                    Ok(StepMatrix::Dense(acc))
                }
                Structure::Dax | Structure::Das => {
                    let locals = fs
                        .iter()
                        .map(local_factor_dax)
                        .collect::<Result<Vec<_>>>()?;
                    let predicted = locals
                        .iter()
                        .try_fold(1u128, |acc, m| acc.checked_mul(m.nnz() as u128))
                        .ok_or_else(|| Error::IndexOverflow("step entry count".into()))?;
                    check_entry_cap(predicted, caps)?;
                    if structure == Structure::Dax {
                        let mut acc = DaxMatrix::identity(1)?;
                        for m in &locals {
                            acc = dax_mtp(&acc, m)?;
                        }
                        Ok(StepMatrix::Dax(acc))
                    } else {
                        let mut acc = DasMatrix::identity(1)?;
                        for m in &locals {
                            acc = das_mtp(&acc, &DasMatrix::from_dax(m)?)?;
                        }
                        Ok(StepMatrix::Das(acc))
                    }
                }
                Structure::Rh => unreachable!("handled above"),
            }
        }
    }
}

fn rh_mismatch(op: &DiagonalOp) -> Error {
    Error::MalformedCircuit(format!("{op:?} step cannot be stored as RH"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::das::das_decode;
    use crate::dense::dense_tensor;
    use crate::gates::gate_catalog_lookup;

    fn g(name: &str) -> crate::gates::GateSpec {
        gate_catalog_lookup(name, &[]).unwrap()
    }

    fn dense(step: &CircuitStep, n: u32) -> DenseMatrix {
        match step_matrix(step, n, Structure::Dense, Caps::default()).unwrap() {
            StepMatrix::Dense(m) => m,
            other => panic!("expected dense, got {:?}", other.structure()),
        }
    }

    #[test]
    fn single_gate_positions() {
        let i2 = DenseMatrix::identity(2).unwrap();
        let h_on_1 = CircuitStep::gates(vec![Placement::single(g("H"), 1)]);
        assert_eq!(
            dense(&h_on_1, 2),
            dense_tensor(&i2, &g("H").matrix).unwrap()
        );

        let x_on_0 = CircuitStep::gates(vec![Placement::single(g("X"), 0)]);
        let expect = dense_tensor(&dense_tensor(&g("X").matrix, &i2).unwrap(), &i2).unwrap();
        assert_eq!(dense(&x_on_0, 3), expect);
        let StepMatrix::Dax(d) = step_matrix(&x_on_0, 3, Structure::Dax, Caps::default()).unwrap()
        else {
            panic!()
        };
        assert_eq!(d.nnz(), 8);
        assert_eq!(dax_decode(&d).unwrap(), expect);

        let cx = CircuitStep::gates(vec![Placement::gate(g("CX"), vec![0, 1])]);
        assert_eq!(dense(&cx, 2), g("CX").matrix);
    }

    #[test]
    fn structures_agree() {
        let step = CircuitStep::gates(vec![
            Placement::single(g("H"), 0),
            Placement::controlled(g("X"), vec![3], 1),
            Placement::gate(g("CH"), vec![4, 5]),
        ]);
        let want = dense(&step, 6);
        let StepMatrix::Dax(d) = step_matrix(&step, 6, Structure::Dax, Caps::default()).unwrap()
        else {
            panic!()
        };
        let StepMatrix::Das(s) = step_matrix(&step, 6, Structure::Das, Caps::default()).unwrap()
        else {
            panic!()
        };
        assert_eq!(dax_decode(&d).unwrap(), want);
        assert_eq!(das_decode(&s).unwrap(), want);
    }

    #[test]
    fn diagonal_steps() {
        let oracle = CircuitStep::diagonal(DiagonalOp::PhaseOracle { marked: vec![2] });
        let m = dense(&oracle, 2);
        let diag: Vec<f64> = (0..4).map(|i| m.get(i, i).re).collect();
        assert_eq!(diag, [1.0, 1.0, -1.0, 1.0]);
        let z0 = CircuitStep::diagonal(DiagonalOp::ZeroReflection);
        let StepMatrix::Dax(d) = step_matrix(&z0, 3, Structure::Dax, Caps::default()).unwrap()
        else {
            panic!()
        };
        assert_eq!(d.nnz(), 8);
        assert!(step_matrix(&z0, 3, Structure::Rh, Caps::default()).is_err());
    }

    #[test]
    fn capacity_errors() {
        let caps = Caps {
            dense: 1 << 8,
            entries: 4,
        };
        let h = CircuitStep::hadamard_layer(5);
        assert!(matches!(
            step_matrix(&h, 5, Structure::Dense, caps),
            Err(Error::DenseCapacity { .. })
        ));
        assert!(matches!(
            step_matrix(&h, 5, Structure::Dax, caps),
            Err(Error::EntryCapacity { .. })
        ));
        assert!(step_matrix(&h, 5, Structure::Rh, caps).is_ok());
    }

    #[test]
    fn engine_dispatch_and_parse() {
        let h = CircuitStep::hadamard_layer(3);
        assert_eq!(Engine::RhDax.structure_for(&h, 3), Structure::Rh);
        assert_eq!(Engine::RhDax.structure_for(&h, 4), Structure::Dax);
        assert_eq!("RH-DAX".parse::<Engine>().unwrap(), Engine::RhDax);
        assert!("sparse".parse::<Engine>().is_err());
    }
}
