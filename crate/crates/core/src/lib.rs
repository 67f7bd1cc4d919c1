//! Full-state quantum circuit simulation on compressed operation-matrices.
//!
//! Each circuit step is turned into one `2^n × 2^n` operation-matrix and
//! multiplied into the state. The matrix can be held as
//!
//! * [`dense::DenseMatrix`], every element;
//! * [`dax::DaxMatrix`], nonzeros with explicit row and column;
//! * [`das::DasMatrix`], nonzeros with a zero-run distance and an end-of-row flag;
//! * [`rh::RhMatrix`], `H^{⊗n}` as its single magnitude, signs recomputed on the fly.
//!
//! Qubit 0 is the most significant bit of a basis index.
//!
//! ```
//! use sparse_qsim::engine::{build_grover, simulate, Engine};
//!
//! let circuit = build_grover(4, 11, None).unwrap();
//! let report = simulate(&circuit, Engine::RhDax).unwrap();
//! assert_eq!(report.argmax(), 11);
//! ```

pub mod cli;
pub mod counters;
pub mod das;
pub mod dax;
pub mod dense;
pub mod engine;
pub mod error;
pub mod gates;
pub mod rh;
pub mod sparsity;
pub mod state;

pub use counters::OpCounters;
pub use error::{Error, Result};
pub use state::{ComplexAmp, StateVector};
