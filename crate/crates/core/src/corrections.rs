//! Bob's correction catalog on particles (4,5): local operators drawn from
//! {I, σx, σz, σzσx} on each particle, optionally preceded by a CNOT with
//! control 4 and target 5 — 32 operations in total — plus the search for a
//! correction mapping a collapsed branch family back onto the input family.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bases::{cnot, pauli_x, pauli_z};
use crate::statevec::{LinearOp, PureState};
use crate::{Error, Result};

/// Single-particle correction factor. `ZX` is the product σz·σx with σx
/// applied first. The declaration order doubles as the search tie-break
/// order: I < X < Z < ZX.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LocalPauli {
    I,
    X,
    Z,
    ZX,
}

impl LocalPauli {
    pub const ALL: [LocalPauli; 4] = [LocalPauli::I, LocalPauli::X, LocalPauli::Z, LocalPauli::ZX];

    /// The 2×2 matrix of this factor.
    pub fn op(self) -> LinearOp {
        match self {
            LocalPauli::I => LinearOp::identity(1),
            LocalPauli::X => pauli_x(),
            LocalPauli::Z => pauli_z(),
            LocalPauli::ZX => pauli_z().matmul(&pauli_x()).expect("same size"),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LocalPauli::I => "I",
            LocalPauli::X => "X",
            LocalPauli::Z => "Z",
            LocalPauli::ZX => "ZX",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        match s {
            "I" => Ok(LocalPauli::I),
            "X" => Ok(LocalPauli::X),
            "Z" => Ok(LocalPauli::Z),
            "ZX" => Ok(LocalPauli::ZX),
            other => Err(Error::CorrectionFormat(format!(
                "unknown local operator {other:?}"
            ))),
        }
    }

    /// Spelling used in rendered tables, e.g. "(σz σx)4".
    fn spelling(self, particle: u8) -> String {
        match self {
            LocalPauli::I => format!("I{particle}"),
            LocalPauli::X => format!("(σx){particle}"),
            LocalPauli::Z => format!("(σz){particle}"),
            LocalPauli::ZX => format!("(σz σx){particle}"),
        }
    }
}

/// One element of the 32-operation correction catalog. The derived ordering
/// (cnot_first, then particle 4, then particle 5) is the tie-break order
/// used when several corrections work.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CorrectionOp {
    /// Apply CNOT (control particle 4, target particle 5) before the locals.
    pub cnot_first: bool,
    pub local4: LocalPauli,
    pub local5: LocalPauli,
}

impl CorrectionOp {
    pub const IDENTITY: CorrectionOp = CorrectionOp {
        cnot_first: false,
        local4: LocalPauli::I,
        local5: LocalPauli::I,
    };

    /// All 32 catalog operations in tie-break order.
    pub fn all() -> Vec<CorrectionOp> {
        let mut out = Vec::with_capacity(32);
        for cnot_first in [false, true] {
            for local4 in LocalPauli::ALL {
                for local5 in LocalPauli::ALL {
                    out.push(CorrectionOp { cnot_first, local4, local5 });
                }
            }
        }
        out
    }

    /// The 4×4 unitary (local4 ⊗ local5) · (CNOT if cnot_first).
    pub fn realize(self) -> LinearOp {
        let locals = self.local4.op().kron(&self.local5.op()).expect("two qubits");
        if self.cnot_first {
            locals.matmul(&cnot()).expect("same size")
        } else {
            locals
        }
    }

    /// Rendering used in text tables: "I" for the identity, otherwise the
    /// factor spelling, e.g. "(σz σx)4⊗(σx)5 · CNOT" or "CNOT".
    pub fn spelling(self) -> String {
        let locals_trivial = self.local4 == LocalPauli::I && self.local5 == LocalPauli::I;
        if locals_trivial {
            return if self.cnot_first { "CNOT".into() } else { "I".into() };
        }
        let locals = format!(
            "{}⊗{}",
            self.local4.spelling(4),
            self.local5.spelling(5)
        );
        if self.cnot_first {
            format!("{locals} · CNOT")
        } else {
            locals
        }
    }
}

/// Serialized form: { "cnot": bool, "p4": "I|X|Z|ZX", "p5": "I|X|Z|ZX" }.
#[derive(Serialize, Deserialize)]
struct CorrectionOpWire {
    cnot: bool,
    p4: String,
    p5: String,
}

impl Serialize for CorrectionOp {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CorrectionOpWire {
            cnot: self.cnot_first,
            p4: self.local4.name().into(),
            p5: self.local5.name().into(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CorrectionOp {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = CorrectionOpWire::deserialize(deserializer)?;
        Ok(CorrectionOp {
            cnot_first: wire.cnot,
            local4: LocalPauli::from_name(&wire.p4).map_err(serde::de::Error::custom)?,
            local5: LocalPauli::from_name(&wire.p5).map_err(serde::de::Error::custom)?,
        })
    }
}

/// True iff the two normalized states agree up to a global phase:
/// |⟨a|b⟩| ≥ 1 − tol.
pub fn equal_up_to_phase(a: &PureState, b: &PureState, tol: f64) -> Result<bool> {
    for s in [a, b] {
        if !s.is_normalized(1e-9) {
            return Err(if s.norm() < 1e-9 {
                Error::ZeroVector
            } else {
                Error::NotNormalized((s.norm() - 1.0).abs())
            });
        }
    }
    Ok(a.inner(b)?.norm() >= 1.0 - tol)
}

/// Linear map from class parameters to the four (4,5) amplitudes:
/// `cols[j]` is the image of the j-th parameter, in standard binary order.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamMap {
    pub cols: Vec<[Complex64; 4]>,
}

impl ParamMap {
    pub fn n_params(&self) -> usize {
        self.cols.len()
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.cols.iter().flatten().all(|e| e.norm() <= tol)
    }

    /// Applies the map to a parameter vector.
    pub fn eval(&self, params: &[Complex64]) -> [Complex64; 4] {
        assert_eq!(params.len(), self.cols.len());
        let mut out = [Complex64::new(0.0, 0.0); 4];
        for (col, p) in self.cols.iter().zip(params) {
            for (o, e) in out.iter_mut().zip(col) {
                *o += e * p;
            }
        }
        out
    }
}

/// Tolerance for the columnwise proportionality check.
pub const MATCH_TOL: f64 = 1e-12;

/// If realize(op) · m = c · target for a single nonzero scalar c, returns c.
pub fn correction_scale(op: CorrectionOp, m: &ParamMap, target: &ParamMap) -> Option<Complex64> {
    if m.n_params() != target.n_params() {
        return None;
    }
    let u = op.realize();
    // Image columns: realize(op) applied to each column of m.
    let mut image: Vec<[Complex64; 4]> = Vec::with_capacity(m.cols.len());
    for col in &m.cols {
        let v = u.apply_vec(col);
        image.push([v[0], v[1], v[2], v[3]]);
    }
    // Reference entry: the largest-magnitude target entry.
    let mut best = (0usize, 0usize, 0.0f64);
    for (j, col) in target.cols.iter().enumerate() {
        for (i, e) in col.iter().enumerate() {
            if e.norm() > best.2 {
                best = (j, i, e.norm());
            }
        }
    }
    if best.2 == 0.0 {
        return None; // degenerate target
    }
    let c = image[best.0][best.1] / target.cols[best.0][best.1];
    if c.norm() <= MATCH_TOL {
        return None; // proportionality constant must be nonzero
    }
    for (icol, tcol) in image.iter().zip(&target.cols) {
        for (iv, tv) in icol.iter().zip(tcol) {
            if (iv - c * tv).norm() > MATCH_TOL {
                return None;
            }
        }
    }
    Some(c)
}

/// Per-outcome result of the correction search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OutcomeCorrection {
    /// The lexicographically smallest working correction and its scale.
    Found(CorrectionOp, Complex64),
    /// The branch map is identically zero: the outcome never occurs.
    ZeroMap,
    /// No catalog operation recovers the family.
    Unrecoverable,
}

impl OutcomeCorrection {
    pub fn found(&self) -> Option<CorrectionOp> {
        match self {
            OutcomeCorrection::Found(op, _) => Some(*op),
            _ => None,
        }
    }
}

/// For each branch map, searches the 32-operation catalog for the smallest
/// correction U with realize(U) · M = c · target, c ≠ 0.
pub fn find_correction(branch_maps: &[ParamMap], target: &ParamMap) -> Vec<OutcomeCorrection> {
    let catalog = CorrectionOp::all();
    branch_maps
        .iter()
        .map(|m| {
            if m.is_zero(MATCH_TOL) {
                return OutcomeCorrection::ZeroMap;
            }
            for &op in &catalog {
                if let Some(c) = correction_scale(op, m, target) {
                    return OutcomeCorrection::Found(op, c);
                }
            }
            OutcomeCorrection::Unrecoverable
        })
        .collect()
}
