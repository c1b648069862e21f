//! The four-step teleportation procedure: compose the two-qubit input with
//! the three-qubit channel, optionally apply a Hadamard to particle 1, then
//! branch over the eight joint outcomes (Bell label on particles (2,3),
//! canonical bit on particle 1). Bob keeps particles (4,5).

use num_complex::Complex64;

use crate::bases::{bell_state, channel_state, hadamard, BellLabel, ChannelSpec};
use crate::statevec::{apply, project, tensor, Projection, PureState};
use crate::{Error, Result};

/// One of the eight joint measurement outcomes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MeasurementOutcome {
    /// Bell label measured on particles (2,3).
    pub bell: BellLabel,
    /// Canonical bit measured on particle 1.
    pub canon: u8,
}

impl MeasurementOutcome {
    /// All eight outcomes in table order: Bell-major, canonical bit 0 first.
    pub const ALL: [MeasurementOutcome; 8] = [
        MeasurementOutcome { bell: BellLabel::PhiPlus, canon: 0 },
        MeasurementOutcome { bell: BellLabel::PhiPlus, canon: 1 },
        MeasurementOutcome { bell: BellLabel::PhiMinus, canon: 0 },
        MeasurementOutcome { bell: BellLabel::PhiMinus, canon: 1 },
        MeasurementOutcome { bell: BellLabel::PsiPlus, canon: 0 },
        MeasurementOutcome { bell: BellLabel::PsiPlus, canon: 1 },
        MeasurementOutcome { bell: BellLabel::PsiMinus, canon: 0 },
        MeasurementOutcome { bell: BellLabel::PsiMinus, canon: 1 },
    ];

    pub fn index(self) -> usize {
        self.bell.index() * 2 + usize::from(self.canon)
    }

    /// Rendering used in text tables, e.g. "|0⟩1 |Φ+⟩23".
    pub fn label(self) -> String {
        format!("|{}⟩1 |{}⟩23", self.canon, self.bell.symbol())
    }
}

/// One projective branch of the protocol.
#[derive(Debug, Clone)]
pub struct BranchResult {
    pub outcome: MeasurementOutcome,
    /// Probability of the outcome; exactly 0.0 for impossible branches.
    pub probability: f64,
    /// Bob's renormalized state on particles (4,5); `None` flags an
    /// impossible branch.
    pub bob_state: Option<PureState>,
    /// Unnormalized collapsed amplitudes on (4,5) in standard binary order
    /// (|00⟩, |01⟩, |10⟩, |11⟩), including all protocol prefactors.
    pub raw_amplitudes: [Complex64; 4],
}

/// Builds the five-particle working state: input on particles (1,2), channel
/// on particles (3,4,5), then a Hadamard on particle 1 when requested.
pub fn prepare(input: &PureState, channel: &ChannelSpec, use_hadamard: bool) -> Result<PureState> {
    if input.n_qubits() != 2 {
        return Err(Error::Shape(format!(
            "input must be a 2-qubit state, got {} qubits",
            input.n_qubits()
        )));
    }
    if !input.is_normalized(1e-10) {
        return Err(Error::NotNormalized((input.norm() - 1.0).abs()));
    }
    let omega = tensor(input, &channel_state(channel))?;
    if use_hadamard {
        apply(&hadamard(), &[1], &omega)
    } else {
        Ok(omega)
    }
}

/// Collapses a prepared five-particle state onto one joint outcome: particle
/// 1 onto |canon⟩ and particles (2,3) onto `vec23` (any normalized two-qubit
/// vector, Bell or otherwise). The residual covers particles (4,5).
pub fn branch(state: &PureState, canon: u8, vec23: &PureState) -> Result<Projection> {
    let onto = tensor(&PureState::basis(1, usize::from(canon)), vec23)?;
    project(state, &[1, 2, 3], &onto)
}

/// Runs the full protocol and returns all eight branches in table order.
/// With `use_hadamard` off, the branches realize the pre-Hadamard expansion;
/// with it on, the post-Hadamard expansion used by the instruction tables.
pub fn run_protocol(
    input: &PureState,
    channel: &ChannelSpec,
    use_hadamard: bool,
) -> Result<Vec<BranchResult>> {
    let state = prepare(input, channel, use_hadamard)?;
    let mut out = Vec::with_capacity(8);
    for &outcome in &MeasurementOutcome::ALL {
        let proj = branch(&state, outcome.canon, &bell_state(outcome.bell))?;
        let raw: [Complex64; 4] = proj.raw.clone().try_into().expect("two qubits remain");
        out.push(BranchResult {
            outcome,
            probability: proj.probability,
            bob_state: proj.residual,
            raw_amplitudes: raw,
        });
    }
    Ok(out)
}

/// The linear map M with raw_amplitudes(outcome) = (1/(2√N)) · M · (α,β,δ,γ)ᵀ
/// for every input α|00⟩ + β|10⟩ + δ|01⟩ + γ|11⟩ run through the
/// Hadamard-bearing protocol. Rows are Bob's amplitudes in standard binary
/// order; columns follow the parameter listing (α, β, δ, γ).
pub fn coefficient_matrix(channel: &ChannelSpec, outcome: MeasurementOutcome) -> [[Complex64; 4]; 4] {
    coefficient_matrices(channel)[outcome.index()]
}

/// All eight coefficient matrices at once, in outcome table order. One
/// protocol run per parameter serves every outcome, so exhaustive scans
/// should prefer this over eight [`coefficient_matrix`] calls.
pub fn coefficient_matrices(channel: &ChannelSpec) -> [[[Complex64; 4]; 4]; 8] {
    let scale = 2.0 * (channel.n_nonzero() as f64).sqrt();
    let mut out = [[[Complex64::new(0.0, 0.0); 4]; 4]; 8];
    // Parameter order (α, β, δ, γ) ↔ basis inputs |00⟩, |10⟩, |01⟩, |11⟩.
    for (col, &basis_index) in PARAM_BASIS_INDEX.iter().enumerate() {
        let input = PureState::basis(2, basis_index);
        let branches = run_protocol(&input, channel, true).expect("basis input is valid");
        for branch_result in &branches {
            let m = &mut out[branch_result.outcome.index()];
            for row in 0..4 {
                m[row][col] = branch_result.raw_amplitudes[row] * scale;
            }
        }
    }
    out
}

/// Amplitude index of the basis input exciting each parameter, in parameter
/// listing order (α, β, δ, γ) → (|00⟩, |10⟩, |01⟩, |11⟩).
pub const PARAM_BASIS_INDEX: [usize; 4] = [0b00, 0b10, 0b01, 0b11];

/// Parameter symbols in listing order.
pub const PARAM_NAMES: [&str; 4] = ["α", "β", "δ", "γ"];
