//! Catalog of standard gate matrices.
//!
//! The catalog carries the forty gates of the common-gate survey (38 distinct
//! gates: CH and CSX appear twice in that listing, as entries 25/27 and 26/28).
//! Multi-qubit gates put the control on the first (most significant) qubit.
//! Parametric gates are evaluated at the caller's angles; their *canonical*
//! form uses generic angles so that only structural zeros remain.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI};

use serde::Serialize;

use crate::dense::{dense_tensor, zero_ratio, DenseMatrix, ONE, ZERO};
use crate::error::{Error, Result};
use crate::state::ComplexAmp;

/// Unitarity tolerance for catalog and user-supplied gates.
pub const UNITARY_TOLERANCE: f64 = 1e-12;

/// Generic angles used for a parametric gate's canonical form.
pub const CANONICAL_ANGLES: [f64; 4] = [PI / 3.0, PI / 5.0, PI / 7.0, PI / 11.0];

type Builder = fn(&[f64]) -> Vec<ComplexAmp>;

/// One catalog row.
#[derive(Clone, Copy)]
pub struct GateInfo {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    /// Position(s) in the forty-gate listing.
    pub listing: &'static [u8],
    pub arity: u32,
    pub param_count: usize,
    /// Zero ratio of the canonical form as `(numerator, denominator)`.
    pub zero_ratio: (u32, u32),
    build: Builder,
}

impl std::fmt::Debug for GateInfo {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GateInfo")
            .field("name", &self.name)
            .field("arity", &self.arity)
            .field("param_count", &self.param_count)
            .finish()
    }
}

impl GateInfo {
    pub fn dim(&self) -> usize {
        1 << self.arity
    }

    pub fn zero_ratio_f64(&self) -> f64 {
        self.zero_ratio.0 as f64 / self.zero_ratio.1 as f64
    }

    /// `[d, d] / r%` label as in the survey table.
    pub fn shape_ratio_label(&self) -> String {
        let d = self.dim();
        format!("[{d}, {d}] / {}%", format_percent(self.zero_ratio_f64()))
    }

    pub fn canonical_params(&self) -> &'static [f64] {
        &CANONICAL_ANGLES[..self.param_count]
    }

    pub fn instantiate(&self, params: &[f64]) -> Result<GateSpec> {
        if params.len() != self.param_count {
            return Err(Error::ParamCount {
                gate: self.name.to_string(),
                expected: self.param_count,
                got: params.len(),
            });
        }
        if params.iter().any(|p| !p.is_finite()) {
            return Err(Error::OutOfRange(format!(
                "non-finite angle for gate {}",
                self.name
            )));
        }
        let dim = self.dim();
        let matrix = DenseMatrix::new(dim, dim, (self.build)(params))?;
        Ok(GateSpec {
            name: self.name.to_string(),
            arity: self.arity,
            params: params.to_vec(),
            matrix,
        })
    }

    pub fn canonical(&self) -> GateSpec {
        self.instantiate(self.canonical_params())
            .expect("catalog builders produce well-formed matrices")
    }

    fn matches(&self, name: &str) -> bool {
        self.name.eq_ignore_ascii_case(name)
            || self.aliases.iter().any(|a| a.eq_ignore_ascii_case(name))
    }
}

fn format_percent(r: f64) -> String {
    let p = r * 100.0;
    if p.fract() == 0.0 {
        format!("{p:.0}")
    } else {
        format!("{p}")
    }
}

/// A concrete gate: name, arity, angles, and its `2^arity` square unitary.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GateSpec {
    pub name: String,
    pub arity: u32,
    pub params: Vec<f64>,
    #[serde(skip)]
    pub matrix: DenseMatrix,
}

impl GateSpec {
    /// Wraps an arbitrary unitary (for example a precomputed product such as
    /// `Y ⊗ X`) as a gate.
    pub fn custom(name: impl Into<String>, matrix: DenseMatrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() || matrix.rows() < 2 {
            return Err(Error::InvalidShape(format!(
                "gate matrix must be square with dimension >= 2, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if !matrix.is_unitary(UNITARY_TOLERANCE) {
            return Err(Error::InvalidShape("gate matrix is not unitary".into()));
        }
        Ok(Self {
            name: name.into(),
            arity: matrix.rows().trailing_zeros(),
            params: Vec::new(),
            matrix,
        })
    }

    pub fn zero_ratio(&self) -> f64 {
        zero_ratio(&self.matrix)
    }

    pub fn is_hadamard(&self) -> bool {
        self.name == "Hadamard"
    }
}

/// Looks up a gate by catalog name or alias (case-insensitive) and evaluates
/// it at `params`.
pub fn gate_catalog_lookup(name: &str, params: &[f64]) -> Result<GateSpec> {
    find_gate(name)
        .ok_or_else(|| Error::UnknownGate(name.to_string()))?
        .instantiate(params)
}

pub fn find_gate(name: &str) -> Option<&'static GateInfo> {
    CATALOG.iter().find(|g| g.matches(name))
}

pub fn catalog() -> &'static [GateInfo] {
    CATALOG
}

fn c(re: f64, im: f64) -> ComplexAmp {
    ComplexAmp::new(re, im)
}

fn r(re: f64) -> ComplexAmp {
    ComplexAmp::new(re, 0.0)
}

fn cis(theta: f64) -> ComplexAmp {
    ComplexAmp::from_polar(1.0, theta)
}

fn diag(d: &[ComplexAmp]) -> Vec<ComplexAmp> {
    DenseMatrix::diagonal(d).unwrap().data().to_vec()
}

fn permutation(dim: usize, map: impl Fn(usize) -> usize) -> Vec<ComplexAmp> {
    // column `col` maps to row `map(col)`
    let mut m = vec![ZERO; dim * dim];
    for col in 0..dim {
        m[map(col) * dim + col] = ONE;
    }
    m
}

/// `blockdiag(I_2, g)` for a 2x2 `g`.
fn controlled(g: &[ComplexAmp]) -> Vec<ComplexAmp> {
    let mut m = diag(&[ONE, ONE, ZERO, ZERO]);
    m[2 * 4 + 2] = g[0];
    m[2 * 4 + 3] = g[1];
    m[3 * 4 + 2] = g[2];
    m[3 * 4 + 3] = g[3];
    m
}

/// `cos(θ/2) I - i sin(θ/2) P` for a two-qubit Pauli product `P`.
fn pauli_rotation(theta: f64, p: &[ComplexAmp]) -> Vec<ComplexAmp> {
    let (s, co) = (theta / 2.0).sin_cos();
    let id = diag(&[ONE; 4]);
    id.iter()
        .zip(p)
        .map(|(i, pv)| i * co + pv * c(0.0, -s))
        .collect()
}

fn kron2(a: Vec<ComplexAmp>, b: Vec<ComplexAmp>) -> Vec<ComplexAmp> {
    let a = DenseMatrix::new(2, 2, a).unwrap();
    let b = DenseMatrix::new(2, 2, b).unwrap();
    dense_tensor(&a, &b).unwrap().data().to_vec()
}

fn h(_: &[f64]) -> Vec<ComplexAmp> {
    let v = FRAC_1_SQRT_2;
    vec![r(v), r(v), r(v), r(-v)]
}

fn sx(_: &[f64]) -> Vec<ComplexAmp> {
    vec![c(0.5, 0.5), c(0.5, -0.5), c(0.5, -0.5), c(0.5, 0.5)]
}

fn sxdg(_: &[f64]) -> Vec<ComplexAmp> {
    vec![c(0.5, -0.5), c(0.5, 0.5), c(0.5, 0.5), c(0.5, -0.5)]
}

fn r_gate(p: &[f64]) -> Vec<ComplexAmp> {
    let (theta, phi) = (p[0], p[1]);
    let (s, co) = (theta / 2.0).sin_cos();
    vec![
        r(co),
        c(0.0, -1.0) * cis(-phi) * s,
        c(0.0, -1.0) * cis(phi) * s,
        r(co),
    ]
}

fn rx(p: &[f64]) -> Vec<ComplexAmp> {
    let (s, co) = (p[0] / 2.0).sin_cos();
    vec![r(co), c(0.0, -s), c(0.0, -s), r(co)]
}

fn ry(p: &[f64]) -> Vec<ComplexAmp> {
    let (s, co) = (p[0] / 2.0).sin_cos();
    vec![r(co), r(-s), r(s), r(co)]
}

fn u3(p: &[f64]) -> Vec<ComplexAmp> {
    let (theta, phi, lambda) = (p[0], p[1], p[2]);
    let (s, co) = (theta / 2.0).sin_cos();
    vec![
        r(co),
        -cis(lambda) * s,
        cis(phi) * s,
        cis(phi + lambda) * co,
    ]
}

fn u2(p: &[f64]) -> Vec<ComplexAmp> {
    let (phi, lambda) = (p[0], p[1]);
    let v = FRAC_1_SQRT_2;
    vec![r(v), -cis(lambda) * v, cis(phi) * v, cis(phi + lambda) * v]
}

fn identity(_: &[f64]) -> Vec<ComplexAmp> {
    diag(&[ONE, ONE])
}

fn x(_: &[f64]) -> Vec<ComplexAmp> {
    vec![ZERO, ONE, ONE, ZERO]
}

fn y(_: &[f64]) -> Vec<ComplexAmp> {
    vec![ZERO, c(0.0, -1.0), c(0.0, 1.0), ZERO]
}

fn z(_: &[f64]) -> Vec<ComplexAmp> {
    diag(&[ONE, r(-1.0)])
}

fn s_gate(_: &[f64]) -> Vec<ComplexAmp> {
    diag(&[ONE, c(0.0, 1.0)])
}

fn t(_: &[f64]) -> Vec<ComplexAmp> {
    diag(&[ONE, cis(FRAC_PI_4)])
}

fn tdg(_: &[f64]) -> Vec<ComplexAmp> {
    diag(&[ONE, cis(-FRAC_PI_4)])
}

fn phase(p: &[f64]) -> Vec<ComplexAmp> {
    diag(&[ONE, cis(p[0])])
}

fn rz(p: &[f64]) -> Vec<ComplexAmp> {
    diag(&[cis(-p[0] / 2.0), cis(p[0] / 2.0)])
}

fn ccx(_: &[f64]) -> Vec<ComplexAmp> {
    permutation(8, |i| match i {
        6 => 7,
        7 => 6,
        i => i,
    })
}

fn cswap(_: &[f64]) -> Vec<ComplexAmp> {
    permutation(8, |i| match i {
        5 => 6,
        6 => 5,
        i => i,
    })
}

fn rxx(p: &[f64]) -> Vec<ComplexAmp> {
    pauli_rotation(p[0], &kron2(x(&[]), x(&[])))
}

fn ryy(p: &[f64]) -> Vec<ComplexAmp> {
    pauli_rotation(p[0], &kron2(y(&[]), y(&[])))
}

fn rzx(p: &[f64]) -> Vec<ComplexAmp> {
    pauli_rotation(p[0], &kron2(z(&[]), x(&[])))
}

fn ecr(_: &[f64]) -> Vec<ComplexAmp> {
    let v = FRAC_1_SQRT_2;
    let (o, i, mi) = (r(v), c(0.0, v), c(0.0, -v));
    vec![
        ZERO, o, ZERO, i, //
        o, ZERO, mi, ZERO, //
        ZERO, i, ZERO, o, //
        mi, ZERO, o, ZERO,
    ]
}

fn ch(_: &[f64]) -> Vec<ComplexAmp> {
    controlled(&h(&[]))
}

fn csx(_: &[f64]) -> Vec<ComplexAmp> {
    controlled(&sx(&[]))
}

fn cu(p: &[f64]) -> Vec<ComplexAmp> {
    let g: Vec<_> = u3(&p[..3]).into_iter().map(|v| v * cis(p[3])).collect();
    controlled(&g)
}

fn cu3(p: &[f64]) -> Vec<ComplexAmp> {
    controlled(&u3(p))
}

fn rzz(p: &[f64]) -> Vec<ComplexAmp> {
    let (a, b) = (cis(-p[0] / 2.0), cis(p[0] / 2.0));
    diag(&[a, b, b, a])
}

fn swap(_: &[f64]) -> Vec<ComplexAmp> {
    permutation(4, |i| match i {
        1 => 2,
        2 => 1,
        i => i,
    })
}

fn iswap(_: &[f64]) -> Vec<ComplexAmp> {
    let i = c(0.0, 1.0);
    vec![
        ONE, ZERO, ZERO, ZERO, //
        ZERO, ZERO, i, ZERO, //
        ZERO, i, ZERO, ZERO, //
        ZERO, ZERO, ZERO, ONE,
    ]
}

fn cx(_: &[f64]) -> Vec<ComplexAmp> {
    controlled(&x(&[]))
}

fn cy(_: &[f64]) -> Vec<ComplexAmp> {
    controlled(&y(&[]))
}

fn cz(_: &[f64]) -> Vec<ComplexAmp> {
    controlled(&z(&[]))
}

// CX(0 -> 1) followed by CX(1 -> 0): |a b> -> |b, a xor b>
fn dcx(_: &[f64]) -> Vec<ComplexAmp> {
    permutation(4, |i| {
        let (a, b) = (i >> 1, i & 1);
        (b << 1) | (a ^ b)
    })
}

fn cphase(p: &[f64]) -> Vec<ComplexAmp> {
    controlled(&phase(p))
}

fn crz(p: &[f64]) -> Vec<ComplexAmp> {
    controlled(&rz(p))
}

macro_rules! gate {
    ($name:expr, [$($alias:expr),*], [$($n:expr),+], $arity:expr, $params:expr, ($num:expr, $den:expr), $build:expr) => {
        GateInfo {
            name: $name,
            aliases: &[$($alias),*],
            listing: &[$($n),+],
            arity: $arity,
            param_count: $params,
            zero_ratio: ($num, $den),
            build: $build,
        }
    };
}

static CATALOG: &[GateInfo] = &[
    gate!("Hadamard", ["H"], [1], 1, 0, (0, 1), h),
    gate!(
        "SX",
        ["square root of Pauli-X", "sqrt-X"],
        [2],
        1,
        0,
        (0, 1),
        sx
    ),
    gate!("SXdg", [], [3], 1, 0, (0, 1), sxdg),
    gate!("R", [], [4], 1, 2, (0, 1), r_gate),
    gate!("RX", [], [5], 1, 1, (0, 1), rx),
    gate!("RY", [], [6], 1, 1, (0, 1), ry),
    gate!("U", ["U3"], [7], 1, 3, (0, 1), u3),
    gate!("U2", [], [8], 1, 2, (0, 1), u2),
    gate!("Identity", ["I", "Id"], [9], 1, 0, (1, 2), identity),
    gate!("Pauli-X", ["X", "NOT"], [10], 1, 0, (1, 2), x),
    gate!("Pauli-Y", ["Y"], [11], 1, 0, (1, 2), y),
    gate!("Pauli-Z", ["Z"], [12], 1, 0, (1, 2), z),
    gate!("S", [], [13], 1, 0, (1, 2), s_gate),
    gate!("T", [], [14], 1, 0, (1, 2), t),
    gate!("Tdg", ["T-adjoint"], [15], 1, 0, (1, 2), tdg),
    gate!("Phase", ["P"], [16], 1, 1, (1, 2), phase),
    gate!("RZ", [], [17], 1, 1, (1, 2), rz),
    gate!("U1", [], [18], 1, 1, (1, 2), phase),
    gate!("CCX", ["Toffoli"], [19], 3, 0, (7, 8), ccx),
    gate!("CSwap", ["Fredkin"], [20], 3, 0, (7, 8), cswap),
    gate!("RXX", [], [21], 2, 1, (1, 2), rxx),
    gate!("RYY", [], [22], 2, 1, (1, 2), ryy),
    gate!("RZX", [], [23], 2, 1, (1, 2), rzx),
    gate!("ECR", [], [24], 2, 0, (1, 2), ecr),
    gate!("CH", [], [25, 27], 2, 0, (5, 8), ch),
    gate!("CSX", [], [26, 28], 2, 0, (5, 8), csx),
    gate!("CU", [], [29], 2, 4, (5, 8), cu),
    gate!("CU3", [], [30], 2, 3, (5, 8), cu3),
    gate!("RZZ", [], [31], 2, 1, (3, 4), rzz),
    gate!("Swap", [], [32], 2, 0, (3, 4), swap),
    gate!("iSwap", [], [33], 2, 0, (3, 4), iswap),
    gate!("CX", ["Controlled-X", "CNOT"], [34], 2, 0, (3, 4), cx),
    gate!("CY", ["Controlled-Y"], [35], 2, 0, (3, 4), cy),
    gate!("CZ", ["Controlled-Z"], [36], 2, 0, (3, 4), cz),
    gate!("DCX", [], [37], 2, 0, (3, 4), dcx),
    gate!("CPhase", ["CP"], [38], 2, 1, (3, 4), cphase),
    gate!("CRZ", [], [39], 2, 1, (3, 4), crz),
    gate!("CU1", [], [40], 2, 1, (3, 4), cphase),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn covers_all_forty_listing_positions() {
        let mut seen: Vec<u8> = CATALOG
            .iter()
            .flat_map(|g| g.listing.iter().copied())
            .collect();
        seen.sort_unstable();
        assert_eq!(seen, (1..=40).collect::<Vec<u8>>());
        assert_eq!(CATALOG.len(), 38);
    }

    #[test]
    fn every_gate_is_unitary_at_canonical_and_random_angles() {
        for g in catalog() {
            assert!(
                g.canonical().matrix.is_unitary(UNITARY_TOLERANCE),
                "{}",
                g.name
            );
            let odd: Vec<f64> = (0..g.param_count).map(|i| 0.37 + 1.1 * i as f64).collect();
            assert!(
                g.instantiate(&odd)
                    .unwrap()
                    .matrix
                    .is_unitary(UNITARY_TOLERANCE),
                "{}",
                g.name
            );
        }
    }

    #[test]
    fn canonical_zero_ratios_match_listing() {
        for g in catalog() {
            let spec = g.canonical();
            let total = spec.matrix.data().len() as u64;
            let zeros = total - spec.matrix.nnz() as u64;
            let (num, den) = g.zero_ratio;
            assert_eq!(zeros * den as u64, total * num as u64, "{}", g.name);
            assert_eq!(spec.zero_ratio(), g.zero_ratio_f64(), "{}", g.name);
        }
    }

    #[test]
    fn lookup_examples() {
        let hd = gate_catalog_lookup("Hadamard", &[]).unwrap();
        for v in hd.matrix.data() {
            assert_eq!(v.re.abs(), FRAC_1_SQRT_2);
            assert_eq!(v.im, 0.0);
        }
        assert_eq!(hd.zero_ratio(), 0.0);

        let px = gate_catalog_lookup("Pauli-X", &[]).unwrap();
        assert_eq!(px.matrix.data(), &[ZERO, ONE, ONE, ZERO]);
        assert_eq!(px.zero_ratio(), 0.5);

        let t = gate_catalog_lookup("ccx", &[]).unwrap();
        assert_eq!((t.matrix.rows(), t.matrix.cols()), (8, 8));
        assert_eq!(t.zero_ratio(), 0.875);
        assert_eq!(t.matrix.get(7, 6), ONE);
    }

    #[test]
    fn lookup_errors() {
        assert_eq!(
            gate_catalog_lookup("Frobnicate", &[]),
            Err(Error::UnknownGate("Frobnicate".into()))
        );
        assert!(matches!(
            gate_catalog_lookup("RX", &[]),
            Err(Error::ParamCount {
                expected: 1,
                got: 0,
                ..
            })
        ));
        assert!(matches!(
            gate_catalog_lookup("X", &[0.1]),
            Err(Error::ParamCount {
                expected: 0,
                got: 1,
                ..
            })
        ));
    }

    #[test]
    fn incidental_zeros_are_kept() {
        // RY(pi) has exact zeros on the diagonal only if cos(pi/2) rounds to 0;
        // it does not, so the ratio stays at the evaluated value.
        let ry_pi = gate_catalog_lookup("RY", &[PI]).unwrap();
        assert_eq!(ry_pi.zero_ratio(), 0.0);
        let rz0 = gate_catalog_lookup("RX", &[0.0]).unwrap();
        assert_eq!(rz0.zero_ratio(), 0.5);
    }

    #[test]
    fn dcx_is_two_cnots() {
        let cx01 = gate_catalog_lookup("CX", &[]).unwrap().matrix;
        let swap = gate_catalog_lookup("Swap", &[]).unwrap().matrix;
        let cx10 = swap.matmul(&cx01).unwrap().matmul(&swap).unwrap();
        let expect = cx10.matmul(&cx01).unwrap();
        assert_eq!(gate_catalog_lookup("DCX", &[]).unwrap().matrix, expect);
    }

    #[test]
    fn labels() {
        assert_eq!(find_gate("X").unwrap().shape_ratio_label(), "[2, 2] / 50%");
        assert_eq!(
            find_gate("CH").unwrap().shape_ratio_label(),
            "[4, 4] / 62.5%"
        );
        assert_eq!(
            find_gate("CCX").unwrap().shape_ratio_label(),
            "[8, 8] / 87.5%"
        );
    }

    #[test]
    fn custom_gate_checks_unitarity() {
        let bad = DenseMatrix::new(2, 2, vec![ONE, ONE, ONE, ONE]).unwrap();
        assert!(GateSpec::custom("bad", bad).is_err());
        let yx = dense_tensor(
            &gate_catalog_lookup("Y", &[]).unwrap().matrix,
            &gate_catalog_lookup("X", &[]).unwrap().matrix,
        )
        .unwrap();
        let g = GateSpec::custom("YX", yx).unwrap();
        assert_eq!(g.arity, 2);
    }
}
