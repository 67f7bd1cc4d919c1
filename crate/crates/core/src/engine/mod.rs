//! Circuits, per-step operation-matrices and the simulation loop.
//!
//! Basis indices are big-endian in qubit order: qubit 0 is the most
//! significant bit, so a step's matrix is `G_0 ⊗ G_1 ⊗ ... ⊗ G_{n-1}`.

mod builders;
mod circuit;
mod simulate;
mod step;

pub use builders::{build_grover, build_qnn_neuron, grover_auto_iterations, QnnLayout};
pub use circuit::{
    Circuit, CircuitFile, CircuitStep, DiagonalOp, Placement, PlacementFile, StepFile, StepObject,
    StepOp,
};
pub use simulate::{
    memory_report, sample, simulate, simulate_with, SimOptions, SimReport, StepRecord,
};
pub use step::{
    dense_step_bytes, step_matrix, Caps, Engine, StepMatrix, Structure, DEFAULT_ENTRY_CAP,
};
