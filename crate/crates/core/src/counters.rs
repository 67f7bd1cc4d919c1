use serde::Serialize;

/// Work tallies gathered while applying operation-matrices.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct OpCounters {
    /// Invocations of the O(n) quadrant sign routine.
    pub sign_calls: u64,
    /// Complex multiply-accumulate operations against the state.
    pub mul_adds: u64,
}

impl OpCounters {
    pub fn add(&mut self, other: OpCounters) {
        self.sign_calls += other.sign_calls;
        self.mul_adds += other.mul_adds;
    }
}
