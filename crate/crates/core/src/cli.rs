//! Command-line front end.
//!
//! All output is rendered into memory first and written once at the end, so
//! a failing command never leaves a partial `--out` file behind.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::counters::OpCounters;
use crate::das::{DasMatrix, DAS_MAGIC};
use crate::dax::{dax_encode, dax_mtp, DaxMatrix, DAX_MAGIC};
use crate::dense::DEFAULT_DENSE_CAP;
use crate::engine::{
    build_grover, build_qnn_neuron, grover_auto_iterations, simulate_with, step_matrix, Caps,
    Circuit, CircuitStep, Engine, Placement, QnnLayout, SimOptions, SimReport, StepMatrix,
    Structure, DEFAULT_ENTRY_CAP,
};
use crate::error::{Error, Result};
use crate::gates::{catalog, gate_catalog_lookup};
use crate::rh::{rh_build, rh_mvm_counted, SignMethod};
use crate::state::StateVector;

#[derive(Debug, Parser)]
#[command(
    name = "sparse-qsim",
    version,
    about = "Quantum circuit simulation on compressed operation-matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate a circuit file and report the final state and per-step memory.
    Simulate(SimulateArgs),
    /// Run a micro-benchmark suite; counters are checked, timings are informational.
    Bench(BenchArgs),
    /// Write the binary dump of a gate tensor expression such as "Y x X".
    Dump(DumpArgs),
    /// Read a DAX or DAS dump and describe it.
    Load(LoadArgs),
    /// List the gate catalog with shapes and zero ratios.
    Gates(OutputArgs),
    /// Write a generated circuit file.
    Emit(EmitArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Human,
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EngineArgs {
    /// nonopt, quarter, block or logarithm.
    #[arg(long, default_value = "logarithm", value_parser = parse_sign_method)]
    pub sign_method: SignMethod,
    /// Block size for the block sign method (default: the optimal size).
    #[arg(long)]
    pub block_size: Option<u64>,
    /// Largest dense matrix, in elements.
    #[arg(long, default_value_t = DEFAULT_DENSE_CAP)]
    pub dense_cap: usize,
    /// Largest DAX/DAS matrix, in entries.
    #[arg(long, default_value_t = DEFAULT_ENTRY_CAP)]
    pub entry_cap: usize,
}

impl EngineArgs {
    fn sign_method(&self) -> Result<SignMethod> {
        match (self.sign_method, self.block_size) {
            (SignMethod::Block(_), b) => Ok(SignMethod::Block(b)),
            (_, Some(b)) => Err(Error::OutOfRange(format!(
                "--block-size {b} is only valid with --sign-method block"
            ))),
            (m, None) => Ok(m),
        }
    }

    fn caps(&self) -> Caps {
        Caps {
            dense: self.dense_cap,
            entries: self.entry_cap,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    /// Circuit file (JSON).
    pub circuit: PathBuf,
    /// dense, dax, das or rh-dax.
    #[arg(long, default_value = "rh-dax")]
    pub engine: Engine,
    #[command(flatten)]
    pub engine_args: EngineArgs,
    /// Measurement samples to draw from the final state.
    #[arg(long, default_value_t = 0)]
    pub shots: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Build a step of identical Pauli-X gates.
    Mtp,
    /// Apply `H^{⊗n}` to a random state.
    Mvm,
    /// Count sign descents of the four RH sign methods.
    RhSigns,
    /// Grover search at the automatic iteration count.
    Grover,
    /// QNN neuron on random angles and weights.
    Qnn,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Comma-separated sizes (qubits; inputs for qnn).
    #[arg(long, value_delimiter = ',')]
    pub sizes: Vec<u32>,
    /// Engines to run (repeatable); each suite has its own default set.
    #[arg(long = "engine")]
    pub engines: Vec<Engine>,
    #[command(flatten)]
    pub engine_args: EngineArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DumpStructure {
    Dax,
    Das,
}

#[derive(Debug, Clone, Args)]
pub struct DumpArgs {
    /// Gates joined by `x`, e.g. "CCX x X" or "RX(0.5) x H".
    pub expression: String,
    #[arg(long, value_enum, default_value_t = DumpStructure::Dax)]
    pub structure: DumpStructure,
    /// Destination of the binary dump.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct LoadArgs {
    pub file: PathBuf,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct EmitArgs {
    #[command(subcommand)]
    pub circuit: EmitCircuit,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum EmitCircuit {
    /// Grover search for one marked basis state.
    Grover {
        #[arg(long)]
        qubits: u32,
        #[arg(long)]
        marked: u64,
        /// Iteration count (default: floor(π/4·√2^n), at least 1).
        #[arg(long)]
        iterations: Option<u32>,
    },
    /// One QNN neuron.
    Qnn {
        /// Comma-separated RY angles, one per input.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        angles: Vec<f64>,
        /// Comma-separated weights, each +1 or -1.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        weights: Vec<i8>,
    },
}

fn parse_sign_method(s: &str) -> std::result::Result<SignMethod, String> {
    match s.to_ascii_lowercase().as_str() {
        "nonopt" | "non-optimized" => Ok(SignMethod::NonOptimized),
        "quarter" => Ok(SignMethod::Quarter),
        "block" => Ok(SignMethod::Block(None)),
        "logarithm" | "log" => Ok(SignMethod::Logarithm),
        _ => Err(format!(
            "unknown sign method `{s}` (expected nonopt, quarter, block or logarithm)"
        )),
    }
}

/// Parses `args` (program name first) and runs the command, writing standard
/// output to `stdout`. Returns the process exit code; diagnostics go to
/// `stderr`.
pub fn run_with_io(
    args: impl IntoIterator<Item = impl Into<OsString> + Clone>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(text.as_bytes());
            } else {
                let _ = stderr.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match run(&cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

pub fn main_with_args(args: impl IntoIterator<Item = impl Into<OsString> + Clone>) -> i32 {
    run_with_io(
        args,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Simulate(a) => {
            let text = cmd_simulate(a)?;
            emit(a.output.out.as_deref(), text.as_bytes(), stdout)
        }
        Command::Bench(a) => {
            let text = cmd_bench(a)?;
            emit(a.output.out.as_deref(), text.as_bytes(), stdout)
        }
        Command::Dump(a) => {
            let (bytes, summary) = cmd_dump(a)?;
            write_file(&a.out, &bytes)?;
            stdout.write_all(summary.as_bytes())?;
            Ok(())
        }
        Command::Load(a) => {
            let text = cmd_load(a)?;
            emit(a.output.out.as_deref(), text.as_bytes(), stdout)
        }
        Command::Gates(a) => {
            let text = cmd_gates(a.format)?;
            emit(a.out.as_deref(), text.as_bytes(), stdout)
        }
        Command::Emit(a) => {
            let circuit = match &a.circuit {
                EmitCircuit::Grover {
                    qubits,
                    marked,
                    iterations,
                } => build_grover(*qubits, *marked, *iterations)?,
                EmitCircuit::Qnn { angles, weights } => build_qnn_neuron(angles, weights)?,
            };
            let mut text = circuit.to_json()?;
            text.push('\n');
            emit(a.out.as_deref(), text.as_bytes(), stdout)
        }
    }
}

fn emit(out: Option<&Path>, bytes: &[u8], stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => write_file(path, bytes),
        None => Ok(stdout.write_all(bytes)?),
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|e| {
        let _ = std::fs::remove_file(path);
        Error::Io(format!("{}: {e}", path.display()))
    })
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

fn cmd_simulate(a: &SimulateArgs) -> Result<String> {
    let text = std::fs::read_to_string(&a.circuit)
        .map_err(|e| Error::Io(format!("{}: {e}", a.circuit.display())))?;
    let circuit = Circuit::from_json(&text)?;
    let opts = SimOptions {
        sign_method: a.engine_args.sign_method()?,
        caps: a.engine_args.caps(),
        shots: a.shots,
        seed: a.seed,
    };
    let report = simulate_with(&circuit, a.engine, &opts)?;
    match a.output.format {
        Format::Json => to_json(&report),
        Format::Csv => to_csv(&report.steps),
        Format::Human => Ok(human_report(&report)),
    }
}

fn human_report(r: &SimReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "qubits {}  engine {}  steps {}",
        r.n,
        r.engine,
        r.steps.len()
    );
    let _ = writeln!(
        s,
        "{:>5}  {:<16} {:<6} {:>14} {:>18} {:>14} {:>12} {:>12}",
        "step", "label", "struct", "nnz", "dense bytes", "stored bytes", "sign calls", "mul-adds"
    );
    for st in &r.steps {
        let _ = writeln!(
            s,
            "{:>5}  {:<16} {:<6} {:>14} {:>18} {:>14} {:>12} {:>12}",
            st.index,
            st.label.as_deref().unwrap_or("-"),
            st.structure,
            st.nnz,
            st.dense_bytes,
            st.stored_bytes,
            st.sign_calls,
            st.mul_adds
        );
    }
    let _ = writeln!(
        s,
        "totals: sign calls {}, mul-adds {}, peak stored bytes {}",
        r.totals.sign_calls, r.totals.mul_adds, r.peak_stored_bytes
    );
    let mut top: Vec<(usize, f64)> = r
        .probabilities
        .iter()
        .copied()
        .enumerate()
        .filter(|&(_, p)| p > 1e-12)
        .collect();
    top.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    let _ = writeln!(s, "most likely outcomes:");
    for (i, p) in top.into_iter().take(8) {
        let _ = writeln!(s, "  |{:0width$b}>  {p:.9}", i, width = r.n as usize);
    }
    if let Some(samples) = &r.samples {
        let _ = writeln!(s, "samples:");
        for (i, c) in samples {
            let _ = writeln!(s, "  |{:0width$b}>  {c}", i, width = r.n as usize);
        }
    }
    s
}

/// One benchmark measurement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub suite: &'static str,
    pub n: u32,
    pub engine: String,
    /// Informational only.
    pub wall_ms: f64,
    pub memory_bytes: u128,
    pub sign_calls: u64,
    pub mul_adds: u64,
    /// What the counters were checked against, when a formula applies.
    pub expected_sign_calls: Option<u128>,
    pub result: String,
}

fn check_count(what: &str, got: u128, want: u128) -> Result<()> {
    if got != want {
        return Err(Error::CounterMismatch(format!(
            "{what}: counted {got}, formula gives {want}"
        )));
    }
    Ok(())
}

fn cmd_bench(a: &BenchArgs) -> Result<String> {
    let rows = bench_rows(a)?;
    match a.output.format {
        Format::Json => to_json(&rows),
        Format::Csv => to_csv(&rows),
        Format::Human => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "{:<9} {:>3} {:<16} {:>11} {:>14} {:>14} {:>14}  result",
                "suite", "n", "engine", "wall ms", "memory bytes", "sign calls", "mul-adds"
            );
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{:<9} {:>3} {:<16} {:>11.3} {:>14} {:>14} {:>14}  {}",
                    r.suite,
                    r.n,
                    r.engine,
                    r.wall_ms,
                    r.memory_bytes,
                    r.sign_calls,
                    r.mul_adds,
                    r.result
                );
            }
            Ok(s)
        }
    }
}

/// Runs a bench suite and returns its rows. Counter columns are checked
/// against their closed forms and a mismatch is an error.
pub fn bench_rows(a: &BenchArgs) -> Result<Vec<BenchRow>> {
    let caps = a.engine_args.caps();
    let method = a.engine_args.sign_method()?;
    let pick = |default: &[u32]| {
        if a.sizes.is_empty() {
            default.to_vec()
        } else {
            a.sizes.clone()
        }
    };
    let engines = |default: &[Engine]| {
        if a.engines.is_empty() {
            default.to_vec()
        } else {
            a.engines.clone()
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut rows = Vec::new();
    match a.suite {
        Suite::Mtp => {
            let x = gate_catalog_lookup("X", &[])?;
            for n in pick(&[4, 8, 12, 16, 20]) {
                let step = CircuitStep::gates(
                    (0..n as usize)
                        .map(|q| Placement::single(x.clone(), q))
                        .collect(),
                );
                for e in engines(&[Engine::Dax, Engine::Das]) {
                    let start = Instant::now();
                    let m = step_matrix(&step, n, e.structure_for(&step, n), caps)?;
                    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
                    if m.structure() != Structure::Dense {
                        check_count("X step nonzeros", m.nnz(), 1u128 << n)?;
                    }
                    rows.push(BenchRow {
                        suite: "mtp",
                        n,
                        engine: e.to_string(),
                        wall_ms,
                        memory_bytes: m.analytic_bytes(),
                        sign_calls: 0,
                        mul_adds: 0,
                        expected_sign_calls: None,
                        result: format!("nnz={}", m.nnz()),
                    });
                }
            }
        }
        Suite::Mvm => {
            for n in pick(&[4, 6, 8, 10]) {
                let step = CircuitStep::hadamard_layer(n as usize);
                let state = StateVector::random(n, &mut rng)?;
                for e in engines(&Engine::ALL) {
                    let m = step_matrix(&step, n, e.structure_for(&step, n), caps)?;
                    let mut counters = OpCounters::default();
                    let start = Instant::now();
                    m.apply(&state, method, &mut counters)?;
                    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
                    check_count(
                        "H layer mul-adds",
                        counters.mul_adds as u128,
                        1u128 << (2 * n),
                    )?;
                    let expected = match m {
                        StepMatrix::Rh(_) => {
                            let want = method.expected_sign_calls(n)?;
                            check_count("H layer sign calls", counters.sign_calls as u128, want)?;
                            Some(want)
                        }
                        _ => None,
                    };
                    rows.push(BenchRow {
                        suite: "mvm",
                        n,
                        engine: e.to_string(),
                        wall_ms,
                        memory_bytes: m.analytic_bytes(),
                        sign_calls: counters.sign_calls,
                        mul_adds: counters.mul_adds,
                        expected_sign_calls: expected,
                        result: format!("structure={}", m.structure()),
                    });
                }
            }
        }
        Suite::RhSigns => {
            let block = match method {
                SignMethod::Block(b) => b,
                _ => None,
            };
            for n in pick(&[4, 8, 12]) {
                let rh = rh_build(n)?;
                let state = StateVector::random(n, &mut rng)?;
                let methods = [
                    SignMethod::NonOptimized,
                    SignMethod::Quarter,
                    SignMethod::Block(block),
                    SignMethod::Logarithm,
                ];
                for m in methods {
                    let want = m.expected_sign_calls(n)?;
                    let mut counters = OpCounters::default();
                    let start = Instant::now();
                    rh_mvm_counted(&rh, &state, m, &mut counters)?;
                    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
                    check_count(
                        &format!("{} sign calls at n = {n}", m.label()),
                        counters.sign_calls as u128,
                        want,
                    )?;
                    let label = match m.resolved_block(n)? {
                        Some(b) => format!("rh/block(b={b})"),
                        None => format!("rh/{}", m.label()),
                    };
                    rows.push(BenchRow {
                        suite: "rh-signs",
                        n,
                        engine: label,
                        wall_ms,
                        memory_bytes: rh.memory_bytes() as u128,
                        sign_calls: counters.sign_calls,
                        mul_adds: counters.mul_adds,
                        expected_sign_calls: Some(want),
                        result: String::new(),
                    });
                }
            }
        }
        Suite::Grover => {
            for n in pick(&[4, 6, 8, 10]) {
                let marked = rng.random_range(0..1u64 << n);
                let circuit = build_grover(n, marked, None)?;
                for e in engines(&[Engine::Dense, Engine::RhDax]) {
                    let opts = SimOptions {
                        sign_method: method,
                        caps,
                        ..SimOptions::default()
                    };
                    let start = Instant::now();
                    let r = simulate_with(&circuit, e, &opts)?;
                    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
                    let rh_steps = r
                        .steps
                        .iter()
                        .filter(|s| s.structure == Structure::Rh)
                        .count() as u128;
                    let want = rh_steps * method.expected_sign_calls(n)?;
                    check_count("Grover sign calls", r.totals.sign_calls as u128, want)?;
                    let best = r.argmax();
                    rows.push(BenchRow {
                        suite: "grover",
                        n,
                        engine: e.to_string(),
                        wall_ms,
                        memory_bytes: r.peak_stored_bytes,
                        sign_calls: r.totals.sign_calls,
                        mul_adds: r.totals.mul_adds,
                        expected_sign_calls: Some(want),
                        result: format!(
                            "marked={marked} argmax={best} p={:.6} iterations={}",
                            r.probabilities[best as usize],
                            grover_auto_iterations(n)
                        ),
                    });
                }
            }
        }
        Suite::Qnn => {
            for inputs in pick(&[2, 4, 8]) {
                let angles: Vec<f64> = (0..inputs)
                    .map(|_| rng.random_range(0.0..std::f64::consts::PI))
                    .collect();
                let weights: Vec<i8> = (0..inputs)
                    .map(|_| if rng.random_bool(0.5) { 1 } else { -1 })
                    .collect();
                let circuit = build_qnn_neuron(&angles, &weights)?;
                let layout = QnnLayout::for_inputs(inputs);
                for e in engines(&Engine::ALL) {
                    let opts = SimOptions {
                        sign_method: method,
                        caps,
                        ..SimOptions::default()
                    };
                    let start = Instant::now();
                    let r = simulate_with(&circuit, e, &opts)?;
                    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
                    rows.push(BenchRow {
                        suite: "qnn",
                        n: layout.qubits(),
                        engine: e.to_string(),
                        wall_ms,
                        memory_bytes: r.peak_stored_bytes,
                        sign_calls: r.totals.sign_calls,
                        mul_adds: r.totals.mul_adds,
                        expected_sign_calls: None,
                        result: format!(
                            "inputs={inputs} p_out={:.9}",
                            r.qubit_one_probability(layout.output_qubit() as u32)
                        ),
                    });
                }
            }
        }
    }
    Ok(rows)
}

/// Parses `"A x B x ..."` (also `⊗`) where each gate is a catalog name with
/// optional parameters in parentheses, e.g. `RX(0.5)`.
pub fn parse_gate_expression(expr: &str) -> Result<Vec<crate::gates::GateSpec>> {
    let spaced = expr.replace('⊗', " x ");
    let tokens: Vec<&str> = spaced.split_whitespace().collect();
    if tokens.is_empty() {
        return Err(Error::Parse("empty gate expression".into()));
    }
    let mut gates = Vec::new();
    for (i, tok) in tokens.iter().enumerate() {
        if i % 2 == 1 {
            if !tok.eq_ignore_ascii_case("x") {
                return Err(Error::Parse(format!(
                    "expected `x` between gates, found `{tok}`"
                )));
            }
            continue;
        }
        let (name, params) = match tok.split_once('(') {
            Some((name, rest)) => {
                let inner = rest
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("unclosed parameter list in `{tok}`")))?;
                let params = inner
                    .split(',')
                    .filter(|p| !p.is_empty())
                    .map(|p| {
                        p.trim()
                            .parse::<f64>()
                            .map_err(|e| Error::Parse(format!("`{p}`: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                (name, params)
            }
            None => (*tok, Vec::new()),
        };
        gates.push(gate_catalog_lookup(name, &params)?);
    }
    if tokens.len().is_multiple_of(2) {
        return Err(Error::Parse("gate expression ends with `x`".into()));
    }
    Ok(gates)
}

/// The DAX form of a gate tensor expression, built without dense products.
pub fn expression_dax(expr: &str) -> Result<DaxMatrix> {
    let mut acc = DaxMatrix::identity(1)?;
    for g in parse_gate_expression(expr)? {
        acc = dax_mtp(&acc, &dax_encode(&g.matrix))?;
    }
    Ok(acc)
}

fn cmd_dump(a: &DumpArgs) -> Result<(Vec<u8>, String)> {
    let dax = expression_dax(&a.expression)?;
    let mut bytes = Vec::new();
    let (label, entries) = match a.structure {
        DumpStructure::Dax => {
            dax.write_dump(&mut bytes)?;
            ("DAX", dax.nnz())
        }
        DumpStructure::Das => {
            let das = DasMatrix::from_dax(&dax)?;
            das.write_dump(&mut bytes)?;
            ("DAS", das.nnz())
        }
    };
    let summary = format!(
        "{label} {}x{}: {entries} entries, {} payload bytes after the {}-byte header -> {}\n",
        dax.rows(),
        dax.cols(),
        bytes.len() - DUMP_HEADER_BYTES,
        DUMP_HEADER_BYTES,
        a.out.display()
    );
    Ok((bytes, summary))
}

/// Magic plus three `u64` words.
pub const DUMP_HEADER_BYTES: usize = 4 + 3 * 8;

#[derive(Debug, Serialize)]
struct LoadedDax<'a> {
    structure: &'static str,
    rows: u64,
    cols: u64,
    nnz: usize,
    memory_bytes: u64,
    entries: &'a [crate::dax::DaxEntry],
}

#[derive(Debug, Serialize)]
struct LoadedDas<'a> {
    structure: &'static str,
    rows: u64,
    cols: u64,
    nnz: usize,
    memory_bytes: u64,
    entries: &'a [crate::das::DasEntry],
}

fn cmd_load(a: &LoadArgs) -> Result<String> {
    let bytes =
        std::fs::read(&a.file).map_err(|e| Error::Io(format!("{}: {e}", a.file.display())))?;
    let magic = bytes
        .get(..4)
        .ok_or_else(|| Error::BadDump("file shorter than its magic".into()))?;
    if magic == DAX_MAGIC {
        let m = DaxMatrix::read_dump(bytes.as_slice())?;
        let view = LoadedDax {
            structure: "dax",
            rows: m.rows(),
            cols: m.cols(),
            nnz: m.nnz(),
            memory_bytes: m.memory_bytes(),
            entries: m.entries(),
        };
        match a.output.format {
            Format::Json => to_json(&view),
            Format::Csv => to_csv(
                &m.entries()
                    .iter()
                    .map(|e| (e.row, e.col, e.value.re, e.value.im))
                    .collect::<Vec<_>>(),
            ),
            Format::Human => {
                let mut s = format!(
                    "DAX {}x{}, {} entries, {} bytes\n",
                    m.rows(),
                    m.cols(),
                    m.nnz(),
                    m.memory_bytes()
                );
                for e in m.entries().iter().take(64) {
                    let _ = writeln!(s, "  ({}, {})  {}", e.row, e.col, e.value);
                }
                Ok(s)
            }
        }
    } else if magic == DAS_MAGIC {
        let m = DasMatrix::read_dump(bytes.as_slice())?;
        let view = LoadedDas {
            structure: "das",
            rows: m.rows(),
            cols: m.cols(),
            nnz: m.nnz(),
            memory_bytes: m.memory_bytes(),
            entries: m.entries(),
        };
        match a.output.format {
            Format::Json => to_json(&view),
            Format::Csv => to_csv(
                &m.entries()
                    .iter()
                    .map(|e| (e.dis, e.last_in_row, e.value.re, e.value.im))
                    .collect::<Vec<_>>(),
            ),
            Format::Human => {
                let mut s = format!(
                    "DAS {}x{}, {} entries, {} bytes\n",
                    m.rows(),
                    m.cols(),
                    m.nnz(),
                    m.memory_bytes()
                );
                for e in m.entries().iter().take(64) {
                    let _ = writeln!(
                        s,
                        "  dis {:>4}{}  {}",
                        e.dis,
                        if e.last_in_row { " |" } else { "  " },
                        e.value
                    );
                }
                Ok(s)
            }
        }
    } else {
        Err(Error::BadDump(format!("unrecognized magic {magic:?}")))
    }
}

#[derive(Debug, Serialize)]
struct GateRow {
    listing: String,
    name: &'static str,
    aliases: String,
    qubits: u32,
    params: usize,
    shape: String,
    zero_ratio: f64,
}

fn cmd_gates(format: Format) -> Result<String> {
    let rows: Vec<GateRow> = catalog()
        .iter()
        .map(|g| GateRow {
            listing: g
                .listing
                .iter()
                .map(u8::to_string)
                .collect::<Vec<_>>()
                .join("/"),
            name: g.name,
            aliases: g.aliases.join(" "),
            qubits: g.arity,
            params: g.param_count,
            shape: format!("{}x{}", g.dim(), g.dim()),
            zero_ratio: g.zero_ratio_f64(),
        })
        .collect();
    match format {
        Format::Json => to_json(&rows),
        Format::Csv => to_csv(&rows),
        Format::Human => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "{:<7} {:<10} {:<22} {:>6} {:>6}  shape / zeros",
                "#", "gate", "aliases", "qubits", "params"
            );
            for (g, info) in rows.iter().zip(catalog()) {
                let _ = writeln!(
                    s,
                    "{:<7} {:<10} {:<22} {:>6} {:>6}  {}",
                    g.listing,
                    g.name,
                    g.aliases,
                    g.qubits,
                    g.params,
                    info.shape_ratio_label()
                );
            }
            Ok(s)
        }
    }
}
