//! The simulation loop, measurement sampling and per-step accounting.

use std::collections::BTreeMap;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::circuit::Circuit;
use super::step::{dense_step_bytes, step_matrix, Caps, Engine, StepMatrix, Structure};
use crate::counters::OpCounters;
use crate::error::{Error, Result};
use crate::rh::SignMethod;
use crate::state::{ComplexAmp, StateVector, NORM_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimOptions {
    /// Sign method for RH steps.
    pub sign_method: SignMethod,
    pub caps: Caps,
    /// Measurement samples drawn from the final distribution (0 = none).
    pub shots: u64,
    pub seed: u64,
}

impl Default for SimOptions {
    fn default() -> Self {
        Self {
            sign_method: SignMethod::Logarithm,
            caps: Caps::default(),
            shots: 0,
            seed: 0,
        }
    }
}

/// Accounting for one step.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepRecord {
    pub index: usize,
    pub label: Option<String>,
    pub structure: Structure,
    pub nnz: u128,
    /// `2^{2n} · 16`, whatever structure was used.
    pub dense_bytes: u128,
    /// Bytes under the structure's own accounting (`24 · nnz` for DAX/DAS).
    pub stored_bytes: u128,
    /// Bytes the in-memory matrix actually held.
    pub allocated_bytes: u64,
    /// `dense_bytes / stored_bytes`.
    pub improvement: f64,
    pub sign_calls: u64,
    pub mul_adds: u64,
}

impl StepRecord {
    fn new(
        index: usize,
        label: Option<String>,
        n: u32,
        m: &StepMatrix,
        counters: OpCounters,
    ) -> Self {
        let dense_bytes = dense_step_bytes(n);
        let stored_bytes = m.analytic_bytes();
        Self {
            index,
            label,
            structure: m.structure(),
            nnz: m.nnz(),
            dense_bytes,
            stored_bytes,
            allocated_bytes: m.allocated_bytes(),
            improvement: dense_bytes as f64 / stored_bytes as f64,
            sign_calls: counters.sign_calls,
            mul_adds: counters.mul_adds,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimReport {
    pub n: u32,
    pub engine: Engine,
    pub sign_method: SignMethod,
    pub final_state: Vec<ComplexAmp>,
    pub probabilities: Vec<f64>,
    pub steps: Vec<StepRecord>,
    pub totals: OpCounters,
    /// Largest `stored_bytes` over all steps.
    pub peak_stored_bytes: u128,
    /// Basis index to count, when shots were requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<BTreeMap<u64, u64>>,
}

impl SimReport {
    pub fn state(&self) -> StateVector {
        StateVector::from_raw(self.n, self.final_state.clone())
    }

    /// Index of the largest probability (lowest index on ties).
    pub fn argmax(&self) -> u64 {
        let mut best = 0;
        for (i, &p) in self.probabilities.iter().enumerate() {
            if p > self.probabilities[best] {
                best = i;
            }
        }
        best as u64
    }

    /// Probability that `qubit` reads 1.
    pub fn qubit_one_probability(&self, qubit: u32) -> f64 {
        let bit = 1usize << (self.n - 1 - qubit);
        self.probabilities
            .iter()
            .enumerate()
            .filter(|(i, _)| i & bit != 0)
            .map(|(_, p)| p)
            .sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn simulate(c: &Circuit, engine: Engine) -> Result<SimReport> {
    simulate_with(c, engine, &SimOptions::default())
}

/// Applies every step of `c` to its initial basis state with `engine`.
///
/// The norm is checked after each step and must stay within
/// [`NORM_TOLERANCE`] of 1.
pub fn simulate_with(c: &Circuit, engine: Engine, opts: &SimOptions) -> Result<SimReport> {
    let n = c.n();
    if let SignMethod::Block(_) = opts.sign_method {
        opts.sign_method.resolved_block(n)?;
    }
    let mut state = StateVector::basis(n, c.initial())?;
    let mut records = Vec::with_capacity(c.steps().len());
    let mut totals = OpCounters::default();
    for (index, step) in c.steps().iter().enumerate() {
        let m = step_matrix(step, n, engine.structure_for(step, n), opts.caps)?;
        let mut counters = OpCounters::default();
        state = m.apply(&state, opts.sign_method, &mut counters)?;
        let norm = state.norm_sqr().sqrt();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NormDrift { step: index, norm });
        }
        totals.add(counters);
        records.push(StepRecord::new(index, step.label.clone(), n, &m, counters));
    }
    let probabilities = state.probabilities();
    let samples = if opts.shots > 0 {
        Some(sample(&probabilities, opts.shots, opts.seed)?)
    } else {
        None
    };
    Ok(SimReport {
        n,
        engine,
        sign_method: opts.sign_method,
        peak_stored_bytes: records.iter().map(|r| r.stored_bytes).max().unwrap_or(0),
        final_state: state.into_amplitudes(),
        probabilities,
        steps: records,
        totals,
        samples,
    })
}

/// Draws `shots` basis indices from `probabilities` with a seeded ChaCha8
/// generator.
pub fn sample(probabilities: &[f64], shots: u64, seed: u64) -> Result<BTreeMap<u64, u64>> {
    let dist = WeightedIndex::new(probabilities).map_err(|e| Error::InvalidState(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = BTreeMap::new();
    for _ in 0..shots {
        *counts.entry(dist.sample(&mut rng) as u64).or_insert(0) += 1;
    }
    Ok(counts)
}

/// Builds every step matrix of `c` under `engine` without simulating, and
/// reports its bytes. Counters are zero.
pub fn memory_report(c: &Circuit, engine: Engine, caps: Caps) -> Result<Vec<StepRecord>> {
    let n = c.n();
    c.steps()
        .iter()
        .enumerate()
        .map(|(index, step)| {
            let m = step_matrix(step, n, engine.structure_for(step, n), caps)?;
            Ok(StepRecord::new(
                index,
                step.label.clone(),
                n,
                &m,
                OpCounters::default(),
            ))
        })
        .collect()
}
