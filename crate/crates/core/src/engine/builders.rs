//! Ready-made circuits: Grover search and a single QNN neuron.

use std::f64::consts::FRAC_PI_4;

use super::circuit::{Circuit, CircuitStep, DiagonalOp, Placement};
use crate::error::{Error, Result};
use crate::gates::gate_catalog_lookup;
use crate::state::check_qubits;

/// Default Grover iteration count: `floor(π/4 · √(2^n))`, at least 1.
///
/// Flooring keeps the two-qubit search at its exact single iteration.
pub fn grover_auto_iterations(n: u32) -> u32 {
    let k = (FRAC_PI_4 * 2f64.powf(n as f64 / 2.0)).floor() as u32;
    k.max(1)
}

/// `H^{⊗n}` followed by `iterations` rounds of
/// `[oracle, H^{⊗n}, Z0, H^{⊗n}]`, where the oracle flips the sign of
/// `marked` and `Z0` flips every state except `|0...0>`.
pub fn build_grover(n: u32, marked: u64, iterations: Option<u32>) -> Result<Circuit> {
    check_qubits(n)?;
    if marked >> n != 0 {
        return Err(Error::OutOfRange(format!(
            "marked index {marked} not below 2^{n}"
        )));
    }
    let rounds = iterations.unwrap_or_else(|| grover_auto_iterations(n));
    let width = n as usize;
    let mut steps = vec![CircuitStep::hadamard_layer(width).labeled("init")];
    for i in 1..=rounds {
        steps.push(
            CircuitStep::diagonal(DiagonalOp::PhaseOracle {
                marked: vec![marked],
            })
            .labeled(format!("oracle {i}")),
        );
        steps.push(CircuitStep::hadamard_layer(width).labeled(format!("diffuse-h {i}")));
        steps.push(CircuitStep::diagonal(DiagonalOp::ZeroReflection).labeled(format!("z0 {i}")));
        steps.push(CircuitStep::hadamard_layer(width).labeled(format!("diffuse-h {i}")));
    }
    Circuit::new(n, 0, steps)
}

/// Qubit layout of a QNN neuron circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QnnLayout {
    pub inputs: u32,
    /// Width of the counter register that aggregates the inputs.
    pub encode: u32,
}

impl QnnLayout {
    pub fn for_inputs(inputs: u32) -> Self {
        let encode = if inputs <= 2 {
            1
        } else {
            u32::BITS - (inputs - 1).leading_zeros()
        };
        Self { inputs, encode }
    }

    pub fn qubits(&self) -> u32 {
        self.inputs + self.encode + 1
    }

    /// Qubit holding bit `b` (0 = least significant) of the counter.
    pub fn encode_qubit(&self, b: u32) -> usize {
        (self.inputs + self.encode - 1 - b) as usize
    }

    pub fn output_qubit(&self) -> usize {
        (self.qubits() - 1) as usize
    }
}

/// A single neuron on `encode_angles.len()` input qubits.
///
/// * `stage1`: `RY(angle)` on every input qubit.
/// * `stage2`: `Z` on inputs whose weight is `-1`, then, for each input, a
///   controlled increment of the counter register (one multi-controlled X
///   per counter bit, most significant first).
/// * `stage3`: `CX` from the counter's most significant bit onto the output.
///
/// The output qubit's probability of reading 1 is the neuron's activation;
/// see [`super::SimReport::qubit_one_probability`].
pub fn build_qnn_neuron(encode_angles: &[f64], weights: &[i8]) -> Result<Circuit> {
    let m = encode_angles.len();
    if m == 0 {
        return Err(Error::MalformedCircuit(
            "a neuron needs at least one input".into(),
        ));
    }
    if weights.len() != m {
        return Err(Error::MalformedCircuit(format!(
            "{m} input angle(s) but {} weight(s)",
            weights.len()
        )));
    }
    if let Some(w) = weights.iter().find(|w| !matches!(w, -1 | 1)) {
        return Err(Error::MalformedCircuit(format!(
            "weight {w} is not +1 or -1"
        )));
    }
    let layout = QnnLayout::for_inputs(m as u32);
    check_qubits(layout.qubits())?;

    let x = gate_catalog_lookup("X", &[])?;
    let z = gate_catalog_lookup("Z", &[])?;
    let mut steps = Vec::new();

    let rotations = encode_angles
        .iter()
        .enumerate()
        .map(|(q, &a)| Ok(Placement::single(gate_catalog_lookup("RY", &[a])?, q)))
        .collect::<Result<Vec<_>>>()?;
    steps.push(CircuitStep::gates(rotations).labeled("stage1"));

    let flips: Vec<_> = weights
        .iter()
        .enumerate()
        .filter(|(_, &w)| w == -1)
        .map(|(q, _)| Placement::single(z.clone(), q))
        .collect();
    if !flips.is_empty() {
        steps.push(CircuitStep::gates(flips).labeled("stage2"));
    }
    for input in 0..m {
        for b in (0..layout.encode).rev() {
            let controls = std::iter::once(input)
                .chain((0..b).map(|lower| layout.encode_qubit(lower)))
                .collect();
            let p = Placement::controlled(x.clone(), controls, layout.encode_qubit(b));
            steps.push(CircuitStep::gates(vec![p]).labeled("stage2"));
        }
    }

    let msb = layout.encode_qubit(layout.encode - 1);
    let out = Placement::controlled(x, vec![msb], layout.output_qubit());
    steps.push(CircuitStep::gates(vec![out]).labeled("stage3"));

    Circuit::new(layout.qubits(), 0, steps)
}
