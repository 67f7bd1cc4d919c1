//! Circuits as ordered whole-register steps, and their JSON file form.

use serde::{Deserialize, Serialize};

use crate::dax::{DaxEntry, DaxMatrix};
use crate::dense::is_zero;
use crate::error::{Error, Result};
use crate::gates::{find_gate, gate_catalog_lookup, GateSpec};
use crate::state::{check_qubits, ComplexAmp};

/// A gate placed on part of the register.
#[derive(Debug, Clone, PartialEq)]
pub enum Placement {
    /// `gate` on the ascending, contiguous qubits `targets`.
    Gate { gate: GateSpec, targets: Vec<usize> },
    /// Single-qubit `gate` on `target`, applied when every control qubit is 1.
    /// Occupies the contiguous span from its lowest to its highest qubit;
    /// idle qubits inside the span are left untouched.
    Controlled {
        gate: GateSpec,
        controls: Vec<usize>,
        target: usize,
    },
}

impl Placement {
    pub fn gate(gate: GateSpec, targets: Vec<usize>) -> Self {
        Placement::Gate { gate, targets }
    }

    pub fn single(gate: GateSpec, target: usize) -> Self {
        Placement::Gate {
            gate,
            targets: vec![target],
        }
    }

    pub fn controlled(gate: GateSpec, controls: Vec<usize>, target: usize) -> Self {
        Placement::Controlled {
            gate,
            controls,
            target,
        }
    }

    pub fn gate_spec(&self) -> &GateSpec {
        match self {
            Placement::Gate { gate, .. } | Placement::Controlled { gate, .. } => gate,
        }
    }

    /// Inclusive qubit span `(first, last)`.
    pub fn span(&self) -> (usize, usize) {
        match self {
            Placement::Gate { targets, .. } => (targets[0], *targets.last().unwrap()),
            Placement::Controlled {
                controls, target, ..
            } => {
                let lo = controls.iter().copied().chain([*target]).min().unwrap();
                let hi = controls.iter().copied().chain([*target]).max().unwrap();
                (lo, hi)
            }
        }
    }

    pub fn width(&self) -> u32 {
        let (lo, hi) = self.span();
        (hi - lo + 1) as u32
    }

    fn validate(&self, n: usize) -> Result<()> {
        match self {
            Placement::Gate { gate, targets } => {
                if targets.len() != gate.arity as usize {
                    return Err(Error::MalformedCircuit(format!(
                        "gate {} acts on {} qubit(s) but has {} target(s)",
                        gate.name,
                        gate.arity,
                        targets.len()
                    )));
                }
                if targets.windows(2).any(|w| w[1] != w[0] + 1) {
                    return Err(Error::MalformedCircuit(format!(
                        "targets {targets:?} of gate {} are not ascending and contiguous",
                        gate.name
                    )));
                }
            }
            Placement::Controlled {
                gate,
                controls,
                target,
            } => {
                if gate.arity != 1 {
                    return Err(Error::MalformedCircuit(format!(
                        "controlled placement needs a single-qubit gate, got {}",
                        gate.name
                    )));
                }
                if controls.is_empty() {
                    return Err(Error::MalformedCircuit(
                        "controlled placement without controls".into(),
                    ));
                }
                let mut all: Vec<usize> = controls.iter().copied().chain([*target]).collect();
                all.sort_unstable();
                if all.windows(2).any(|w| w[0] == w[1]) {
                    return Err(Error::MalformedCircuit(format!(
                        "controls {controls:?} and target {target} overlap"
                    )));
                }
            }
        }
        let (_, hi) = self.span();
        if hi >= n {
            return Err(Error::MalformedCircuit(format!(
                "qubit {hi} out of range for a {n}-qubit circuit"
            )));
        }
        Ok(())
    }

    /// The placement's own `2^width` square matrix in DAX form, generated row
    /// by row without a dense intermediate.
    pub fn local_dax(&self) -> Result<DaxMatrix> {
        match self {
            Placement::Gate { gate, .. } => Ok(crate::dax::dax_encode(&gate.matrix)),
            Placement::Controlled {
                gate,
                controls,
                target,
            } => {
                let (lo, hi) = self.span();
                let width = hi - lo + 1;
                // qubit q is bit (hi - q) of the local index
                let bit = |q: usize| 1u64 << (hi - q);
                let control_mask: u64 = controls.iter().map(|&q| bit(q)).sum();
                let target_bit = bit(*target);
                let dim = 1u64 << width;
                let mut entries = Vec::with_capacity(dim as usize + (dim / 2) as usize);
                for row in 0..dim {
                    if row & control_mask != control_mask {
                        entries.push(DaxEntry {
                            row,
                            col: row,
                            value: ComplexAmp::new(1.0, 0.0),
                        });
                        continue;
                    }
                    let out_t = usize::from(row & target_bit != 0);
                    for in_t in 0..2usize {
                        let value = gate.matrix.get(out_t, in_t);
                        if is_zero(value) {
                            continue;
                        }
                        let col = if in_t == 1 {
                            row | target_bit
                        } else {
                            row & !target_bit
                        };
                        entries.push(DaxEntry { row, col, value });
                    }
                }
                DaxMatrix::from_entries(dim, dim, entries)
            }
        }
    }
}

/// Diagonal phase flips injected as whole-register steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagonalOp {
    /// `-1` on the marked basis states, `+1` elsewhere.
    PhaseOracle { marked: Vec<u64> },
    /// `+1` on `|0...0>`, `-1` elsewhere.
    ZeroReflection,
}

impl DiagonalOp {
    pub fn entry(&self, index: u64) -> ComplexAmp {
        let flip = match self {
            DiagonalOp::PhaseOracle { marked } => marked.contains(&index),
            DiagonalOp::ZeroReflection => index != 0,
        };
        ComplexAmp::new(if flip { -1.0 } else { 1.0 }, 0.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StepOp {
    Gates(Vec<Placement>),
    Diagonal(DiagonalOp),
}

/// One time step; qubits not covered by a placement see the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitStep {
    pub label: Option<String>,
    pub op: StepOp,
}

impl CircuitStep {
    pub fn gates(placements: Vec<Placement>) -> Self {
        Self {
            label: None,
            op: StepOp::Gates(placements),
        }
    }

    pub fn diagonal(op: DiagonalOp) -> Self {
        Self {
            label: None,
            op: StepOp::Diagonal(op),
        }
    }

    pub fn labeled(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Hadamard on every one of the `n` qubits.
    pub fn hadamard_layer(n: usize) -> Self {
        let h = gate_catalog_lookup("Hadamard", &[]).expect("catalog has Hadamard");
        Self::gates((0..n).map(|q| Placement::single(h.clone(), q)).collect())
    }

    /// True when the step is exactly `H^{⊗n}`.
    pub fn is_full_hadamard(&self, n: usize) -> bool {
        let StepOp::Gates(placements) = &self.op else {
            return false;
        };
        let mut covered = vec![false; n];
        for p in placements {
            match p {
                Placement::Gate { gate, targets } if gate.is_hadamard() && targets.len() == 1 => {
                    match covered.get_mut(targets[0]) {
                        Some(slot) => *slot = true,
                        None => return false,
                    }
                }
                _ => return false,
            }
        }
        covered.iter().all(|&c| c)
    }

    fn validate(&self, n: usize) -> Result<()> {
        match &self.op {
            StepOp::Gates(placements) => {
                let mut used = vec![false; n];
                for p in placements {
                    p.validate(n)?;
                    let (lo, hi) = p.span();
                    for slot in &mut used[lo..=hi] {
                        if *slot {
                            return Err(Error::MalformedCircuit(format!(
                                "placements overlap on qubits {lo}..={hi}"
                            )));
                        }
                        *slot = true;
                    }
                }
            }
            StepOp::Diagonal(DiagonalOp::PhaseOracle { marked }) => {
                if let Some(m) = marked.iter().find(|&&m| m >> n != 0) {
                    return Err(Error::OutOfRange(format!(
                        "marked index {m} not below 2^{n}"
                    )));
                }
            }
            StepOp::Diagonal(DiagonalOp::ZeroReflection) => {}
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n: u32,
    initial: u64,
    steps: Vec<CircuitStep>,
}

impl Circuit {
    pub fn new(n: u32, initial: u64, steps: Vec<CircuitStep>) -> Result<Self> {
        check_qubits(n).map_err(|e| Error::MalformedCircuit(e.to_string()))?;
        if initial >> n != 0 {
            return Err(Error::MalformedCircuit(format!(
                "initial basis state {initial} not below 2^{n}"
            )));
        }
        for (i, s) in steps.iter().enumerate() {
            s.validate(n as usize)
                .map_err(|e| Error::MalformedCircuit(format!("step {i}: {e}")))?;
        }
        Ok(Self { n, initial, steps })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn initial(&self) -> u64 {
        self.initial
    }

    pub fn steps(&self) -> &[CircuitStep] {
        &self.steps
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: CircuitFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.into_circuit()
    }

    pub fn to_json(&self) -> Result<String> {
        let file = CircuitFile::from_circuit(self)?;
        serde_json::to_string_pretty(&file).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// On-disk circuit document.
///
/// ```json
/// {
///   "qubits": 3,
///   "initial": 0,
///   "steps": [
///     [{"gate": "H", "targets": [0]}, {"gate": "RY", "targets": [1], "params": [0.5]}],
///     {"label": "flip", "placements": [{"gate": "X", "controls": [0, 1], "targets": [2]}]},
///     {"oracle": [5]},
///     {"zero_reflection": true}
///   ]
/// }
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitFile {
    pub qubits: u32,
    #[serde(default)]
    pub initial: u64,
    pub steps: Vec<StepFile>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StepFile {
    Placements(Vec<PlacementFile>),
    Object(StepObject),
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepObject {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub placements: Option<Vec<PlacementFile>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero_reflection: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlacementFile {
    pub gate: String,
    pub targets: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub controls: Vec<usize>,
}

impl PlacementFile {
    fn into_placement(self) -> Result<Placement> {
        let gate = gate_catalog_lookup(&self.gate, &self.params)?;
        if self.controls.is_empty() {
            return Ok(Placement::gate(gate, self.targets));
        }
        match self.targets.as_slice() {
            [t] => Ok(Placement::controlled(gate, self.controls, *t)),
            _ => Err(Error::MalformedCircuit(format!(
                "controlled {} needs exactly one target",
                self.gate
            ))),
        }
    }

    fn from_placement(p: &Placement) -> Result<Self> {
        let gate = p.gate_spec();
        let info = find_gate(&gate.name).ok_or_else(|| {
            Error::MalformedCircuit(format!("gate {} is not in the catalog", gate.name))
        })?;
        let (targets, controls) = match p {
            Placement::Gate { targets, .. } => (targets.clone(), Vec::new()),
            Placement::Controlled {
                controls, target, ..
            } => (vec![*target], controls.clone()),
        };
        Ok(Self {
            gate: info.name.to_string(),
            targets,
            params: gate.params.clone(),
            controls,
        })
    }
}

impl CircuitFile {
    pub fn into_circuit(self) -> Result<Circuit> {
        let steps = self
            .steps
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                s.into_step()
                    .map_err(|e| Error::MalformedCircuit(format!("step {i}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Circuit::new(self.qubits, self.initial, steps)
    }

    pub fn from_circuit(c: &Circuit) -> Result<Self> {
        let steps = c
            .steps
            .iter()
            .map(|s| {
                let mut obj = StepObject {
                    label: s.label.clone(),
                    ..StepObject::default()
                };
                match &s.op {
                    StepOp::Gates(ps) => {
                        let files = ps
                            .iter()
                            .map(PlacementFile::from_placement)
                            .collect::<Result<Vec<_>>>()?;
                        if obj.label.is_none() {
                            return Ok(StepFile::Placements(files));
                        }
                        obj.placements = Some(files);
                    }
                    StepOp::Diagonal(DiagonalOp::PhaseOracle { marked }) => {
                        obj.oracle = Some(marked.clone())
                    }
                    StepOp::Diagonal(DiagonalOp::ZeroReflection) => {
                        obj.zero_reflection = Some(true)
                    }
                }
                Ok(StepFile::Object(obj))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            qubits: c.n,
            initial: c.initial,
            steps,
        })
    }
}

impl StepFile {
    fn into_step(self) -> Result<CircuitStep> {
        let obj = match self {
            StepFile::Placements(ps) => StepObject {
                placements: Some(ps),
                ..StepObject::default()
            },
            StepFile::Object(obj) => obj,
        };
        let kinds = usize::from(obj.placements.is_some())
            + usize::from(obj.oracle.is_some())
            + usize::from(obj.zero_reflection.is_some());
        if kinds != 1 {
            return Err(Error::MalformedCircuit(
                "a step needs exactly one of `placements`, `oracle`, `zero_reflection`".into(),
            ));
        }
        let op = if let Some(ps) = obj.placements {
            StepOp::Gates(
                ps.into_iter()
                    .map(PlacementFile::into_placement)
                    .collect::<Result<_>>()?,
            )
        } else if let Some(marked) = obj.oracle {
            StepOp::Diagonal(DiagonalOp::PhaseOracle { marked })
        } else if obj.zero_reflection == Some(true) {
            StepOp::Diagonal(DiagonalOp::ZeroReflection)
        } else {
            return Err(Error::MalformedCircuit(
                "`zero_reflection` must be true".into(),
            ));
        };
        Ok(CircuitStep {
            label: obj.label,
            op,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dax::dax_decode;
    use crate::dense::DenseMatrix;

    fn g(name: &str) -> GateSpec {
        gate_catalog_lookup(name, &[]).unwrap()
    }

    #[test]
    fn controlled_local_matrix_matches_catalog_forms() {
        let cx = Placement::controlled(g("X"), vec![0], 1);
        assert_eq!(
            dax_decode(&cx.local_dax().unwrap()).unwrap(),
            g("CX").matrix
        );
        let ccx = Placement::controlled(g("X"), vec![3, 4], 5);
        assert_eq!(
            dax_decode(&ccx.local_dax().unwrap()).unwrap(),
            g("CCX").matrix
        );
        let ch = Placement::controlled(g("H"), vec![2], 3);
        assert_eq!(
            dax_decode(&ch.local_dax().unwrap()).unwrap(),
            g("CH").matrix
        );
    }

    #[test]
    fn controlled_with_gap_and_reversed_direction() {
        // control on qubit 2, target on qubit 0, idle qubit 1 between them
        let p = Placement::controlled(g("X"), vec![2], 0);
        let m = dax_decode(&p.local_dax().unwrap()).unwrap();
        let mut expect = DenseMatrix::zeros(8, 8).unwrap();
        for col in 0..8usize {
            let row = if col & 1 == 1 { col ^ 0b100 } else { col };
            expect.set(row, col, ComplexAmp::new(1.0, 0.0));
        }
        assert_eq!(m, expect);
    }

    #[test]
    fn validation() {
        let ok = Circuit::new(
            3,
            0,
            vec![CircuitStep::gates(vec![Placement::gate(
                g("CX"),
                vec![1, 2],
            )])],
        );
        assert!(ok.is_ok());
        let gap = Circuit::new(
            3,
            0,
            vec![CircuitStep::gates(vec![Placement::gate(
                g("CX"),
                vec![0, 2],
            )])],
        );
        assert!(gap.is_err());
        let overlap = Circuit::new(
            3,
            0,
            vec![CircuitStep::gates(vec![
                Placement::gate(g("CX"), vec![0, 1]),
                Placement::single(g("X"), 1),
            ])],
        );
        assert!(overlap.is_err());
        let range = Circuit::new(
            2,
            0,
            vec![CircuitStep::gates(vec![Placement::single(g("X"), 2)])],
        );
        assert!(range.is_err());
        assert!(Circuit::new(2, 4, vec![]).is_err());
        let oracle = Circuit::new(
            2,
            0,
            vec![CircuitStep::diagonal(DiagonalOp::PhaseOracle {
                marked: vec![4],
            })],
        );
        assert!(oracle.is_err());
        let ctrl_overlap = Circuit::new(
            3,
            0,
            vec![CircuitStep::gates(vec![Placement::controlled(
                g("X"),
                vec![1],
                1,
            )])],
        );
        assert!(ctrl_overlap.is_err());
    }

    #[test]
    fn full_hadamard_detection() {
        assert!(CircuitStep::hadamard_layer(3).is_full_hadamard(3));
        assert!(!CircuitStep::hadamard_layer(2).is_full_hadamard(3));
        let mixed = CircuitStep::gates(vec![
            Placement::single(g("H"), 0),
            Placement::single(g("X"), 1),
        ]);
        assert!(!mixed.is_full_hadamard(2));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{
            "qubits": 3,
            "steps": [
                [{"gate": "H", "targets": [0]}, {"gate": "RY", "targets": [1], "params": [0.5]}],
                {"label": "flip", "placements": [{"gate": "X", "controls": [0, 1], "targets": [2]}]},
                {"oracle": [5]},
                {"zero_reflection": true}
            ]
        }"#;
        let c = Circuit::from_json(text).unwrap();
        assert_eq!(c.steps().len(), 4);
        assert_eq!(c.initial(), 0);
        let again = Circuit::from_json(&c.to_json().unwrap()).unwrap();
        assert_eq!(again, c);
    }

    #[test]
    fn json_errors() {
        assert!(matches!(Circuit::from_json("{"), Err(Error::Parse(_))));
        let unknown = r#"{"qubits": 1, "steps": [[{"gate": "Nope", "targets": [0]}]]}"#;
        assert!(Circuit::from_json(unknown).is_err());
        let two_kinds = r#"{"qubits": 1, "steps": [{"oracle": [0], "zero_reflection": true}]}"#;
        assert!(Circuit::from_json(two_kinds).is_err());
        let extra = r#"{"qubits": 1, "steps": [], "bogus": 1}"#;
        assert!(Circuit::from_json(extra).is_err());
    }
}
