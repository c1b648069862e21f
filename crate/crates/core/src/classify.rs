//! Exhaustive classification of which two-qubit input families can be
//! teleported through which channels, plus the factorization test and the
//! randomized scan over arbitrary (2,3) measurement bases.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::bases::{bell_state, ChannelSpec};
use crate::corrections::{find_correction, OutcomeCorrection, ParamMap};
use crate::protocol::{branch, prepare, run_protocol, MeasurementOutcome, PARAM_BASIS_INDEX};
use crate::report::{InstructionTable, SymbolicState, TableRow};
use crate::statevec::{apply, PureState};
use crate::{Error, Result};

/// The seven input families: the general two-qubit state with parameters
/// (α, β, δ, γ), and the six two-parameter subfamilies picked out by which
/// pair of amplitudes is free.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InputClass {
    /// α|00⟩ + β|10⟩ + δ|01⟩ + γ|11⟩, all four free.
    General,
    /// α|00⟩ + γ|11⟩.
    Diag,
    /// β|10⟩ + δ|01⟩.
    AntiDiag,
    /// α|00⟩ + δ|01⟩.
    LeftCol,
    /// β|10⟩ + γ|11⟩.
    RightCol,
    /// α|00⟩ + β|10⟩.
    TopRow,
    /// δ|01⟩ + γ|11⟩.
    BottomRow,
}

impl InputClass {
    pub const ALL: [InputClass; 7] = [
        InputClass::General,
        InputClass::Diag,
        InputClass::AntiDiag,
        InputClass::LeftCol,
        InputClass::RightCol,
        InputClass::TopRow,
        InputClass::BottomRow,
    ];

    /// Number of free complex parameters.
    pub fn free_params(self) -> usize {
        match self {
            InputClass::General => 4,
            _ => 2,
        }
    }

    /// Positions of the free parameters within the listing (α, β, δ, γ).
    pub fn param_positions(self) -> &'static [usize] {
        match self {
            InputClass::General => &[0, 1, 2, 3],
            InputClass::Diag => &[0, 3],
            InputClass::AntiDiag => &[1, 2],
            InputClass::LeftCol => &[0, 2],
            InputClass::RightCol => &[1, 3],
            InputClass::TopRow => &[0, 1],
            InputClass::BottomRow => &[2, 3],
        }
    }

    /// Symbols of the free parameters, in class order.
    pub fn param_symbols(self) -> Vec<&'static str> {
        self.param_positions()
            .iter()
            .map(|&p| crate::protocol::PARAM_NAMES[p])
            .collect()
    }

    /// Stable name used by the CLI and in JSON documents.
    pub fn name(self) -> &'static str {
        match self {
            InputClass::General => "general",
            InputClass::Diag => "diag",
            InputClass::AntiDiag => "anti-diag",
            InputClass::LeftCol => "left-col",
            InputClass::RightCol => "right-col",
            InputClass::TopRow => "top-row",
            InputClass::BottomRow => "bottom-row",
        }
    }

    /// Human-readable family expression, e.g. "α|00⟩ + γ|11⟩".
    pub fn expression(self) -> String {
        let syms = self.param_symbols();
        let kets: Vec<String> = self
            .param_positions()
            .iter()
            .map(|&p| format!("|{:02b}⟩", PARAM_BASIS_INDEX[p]))
            .collect();
        syms.iter()
            .zip(&kets)
            .map(|(s, k)| format!("{s}{k}"))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Embedding of the free parameters into the two-qubit amplitude space
    /// (standard binary order). Used both for the input on particles (1,2)
    /// and for the recovery target on particles (4,5).
    pub fn target_embedding(self) -> ParamMap {
        let cols = self
            .param_positions()
            .iter()
            .map(|&p| {
                let mut col = [Complex64::new(0.0, 0.0); 4];
                col[PARAM_BASIS_INDEX[p]] = Complex64::new(1.0, 0.0);
                col
            })
            .collect();
        ParamMap { cols }
    }

    /// Restricts a full 4×4 coefficient matrix (columns α, β, δ, γ) to the
    /// class's free parameters.
    pub fn restrict(self, m: &[[Complex64; 4]; 4]) -> ParamMap {
        let cols = self
            .param_positions()
            .iter()
            .map(|&p| {
                let mut col = [Complex64::new(0.0, 0.0); 4];
                for (row, item) in col.iter_mut().enumerate() {
                    *item = m[row][p];
                }
                col
            })
            .collect();
        ParamMap { cols }
    }

    /// Builds the normalized class member with the given parameter values.
    pub fn member_state(self, params: &[Complex64]) -> Result<PureState> {
        if params.len() != self.free_params() {
            return Err(Error::Shape(format!(
                "class {} takes {} parameters, got {}",
                self.name(),
                self.free_params(),
                params.len()
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 4];
        for (&p, &v) in self.param_positions().iter().zip(params) {
            amps[PARAM_BASIS_INDEX[p]] = v;
        }
        PureState::new(2, amps)?.normalized()
    }

    /// Draws random normalized parameters for this class.
    pub fn sample_params<R: Rng>(self, rng: &mut R) -> Vec<Complex64> {
        let mut params: Vec<Complex64> = (0..self.free_params())
            .map(|_| Complex64::new(gauss(rng), gauss(rng)))
            .collect();
        let norm: f64 = params.iter().map(|p| p.norm_sqr()).sum::<f64>().sqrt();
        for p in params.iter_mut() {
            *p /= norm;
        }
        params
    }
}

impl fmt::Display for InputClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InputClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InputClass::ALL
            .iter()
            .copied()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownClass(s.to_string()))
    }
}

impl Serialize for InputClass {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for InputClass {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Standard normal draw (Box–Muller).
fn gauss<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = rng.gen::<f64>().max(f64::MIN_POSITIVE);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// The eight restricted branch maps of a (class, channel) pair, in outcome
/// table order.
pub fn branch_maps(class: InputClass, channel: &ChannelSpec) -> Vec<ParamMap> {
    crate::protocol::coefficient_matrices(channel)
        .iter()
        .map(|m| class.restrict(m))
        .collect()
}

/// Decides teleportability of a class through a channel. Returns the full
/// eight-row instruction table when every outcome's collapsed family can be
/// mapped back onto the class embedding by a catalog correction; `None`
/// otherwise.
pub fn is_teleportable(class: InputClass, channel: &ChannelSpec) -> Option<InstructionTable> {
    let target = class.target_embedding();
    let maps = branch_maps(class, channel);
    let found = find_correction(&maps, &target);

    let mut rows = Vec::with_capacity(8);
    for ((&outcome, map), oc) in MeasurementOutcome::ALL.iter().zip(&maps).zip(&found) {
        let correction = match oc {
            OutcomeCorrection::Found(op, _) => *op,
            // A zero map would mean the outcome cannot occur; no channel
            // produces one (its u- and v-halves cannot both vanish), and a
            // recoverable table needs all eight rows, so reject.
            OutcomeCorrection::ZeroMap | OutcomeCorrection::Unrecoverable => return None,
        };
        let state = SymbolicState::from_param_map(map)?;
        rows.push(TableRow { outcome, state, correction });
    }
    Some(InstructionTable { channel: *channel, class, rows })
}

/// One sign-insensitive set of nonzero channel coefficients that admits
/// teleportation for a class.
#[derive(Debug, Clone, Serialize)]
pub struct SupportPattern {
    /// Names of the nonzero coefficients, e.g. ["a", "h"].
    pub names: Vec<char>,
    /// The all-positive representative channel.
    pub canonical: ChannelSpec,
    /// How many signed channels share this pattern (all teleport).
    pub signed_variants: usize,
}

/// Full classification result for one input class.
#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub class: InputClass,
    /// Every teleporting channel with its instruction table, grouped by
    /// support pattern with the canonical representative first.
    pub teleporting_channels: Vec<(ChannelSpec, InstructionTable)>,
    /// The distinct support patterns, canonical representatives in
    /// enumeration order.
    pub support_patterns: Vec<SupportPattern>,
    /// Number of distinct support patterns.
    pub pattern_count: usize,
    /// Number of signed teleporting channels.
    pub channel_count: usize,
}

/// Scans all 6560 channels and reports which ones teleport the class.
pub fn classify_all(class: InputClass) -> ClassificationReport {
    let mut by_pattern: BTreeMap<ChannelSpec, Vec<(ChannelSpec, InstructionTable)>> =
        BTreeMap::new();
    for channel in ChannelSpec::enumerate_all() {
        if let Some(table) = is_teleportable(class, &channel) {
            by_pattern
                .entry(channel.canonical_pattern())
                .or_default()
                .push((channel, table));
        }
    }

    let mut teleporting_channels = Vec::new();
    let mut support_patterns = Vec::new();
    for (canonical, group) in by_pattern {
        support_patterns.push(SupportPattern {
            names: canonical.support_names(),
            canonical,
            signed_variants: group.len(),
        });
        // Canonical representative first, remaining variants in enumeration
        // order.
        let mut group = group;
        group.sort_by_key(|(ch, _)| (*ch != canonical, *ch));
        teleporting_channels.extend(group);
    }

    let pattern_count = support_patterns.len();
    let channel_count = teleporting_channels.len();
    ClassificationReport {
        class,
        teleporting_channels,
        support_patterns,
        pattern_count,
        channel_count,
    }
}

/// Tolerance for the factorization determinant test.
pub const FACTORIZATION_TOL: f64 = 1e-12;

/// True iff the state α|00⟩ + β|10⟩ + δ|01⟩ + γ|11⟩ is a product of two
/// single-qubit states, i.e. the amplitude matrix [[α, δ], [β, γ]] is
/// singular: αγ − βδ = 0.
pub fn factorization_condition(
    alpha: Complex64,
    beta: Complex64,
    delta: Complex64,
    gamma: Complex64,
) -> bool {
    (alpha * gamma - beta * delta).norm() <= FACTORIZATION_TOL
}

/// A counterexample found by [`general_basis_scan`] (none are expected).
#[derive(Debug, Clone, Serialize)]
pub struct ScanHit {
    pub sample_index: usize,
    pub channel: ChannelSpec,
}

/// Outcome of the randomized measurement-basis scan.
#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub samples: usize,
    pub seed: u64,
    /// Samples where every outcome of a random orthonormal (2,3) basis was
    /// correctable for the general class; expected to stay 0.
    pub successes: usize,
    pub counterexamples: Vec<ScanHit>,
}

/// Draws random orthonormal four-element bases on particles (2,3) and random
/// channels, then asks whether the general input class becomes correctable.
/// Each success would contradict the impossibility classification and is
/// reported as a counterexample.
pub fn general_basis_scan(samples: usize, seed: u64) -> Result<ScanReport> {
    if samples == 0 {
        return Err(Error::SampleCount("samples must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = InputClass::General.target_embedding();
    let mut counterexamples = Vec::new();

    for sample_index in 0..samples {
        let channel = random_channel(&mut rng);
        let basis = random_orthonormal_basis(&mut rng);
        let maps = basis_branch_maps(&channel, &basis)?;
        let found = find_correction(&maps, &target);
        let success = found
            .iter()
            .all(|oc| !matches!(oc, OutcomeCorrection::Unrecoverable));
        if success {
            counterexamples.push(ScanHit { sample_index, channel });
        }
    }

    Ok(ScanReport {
        samples,
        seed,
        successes: counterexamples.len(),
        counterexamples,
    })
}

/// Branch maps of the general class for an arbitrary orthonormal basis on
/// particles (2,3): outcomes are (basis vector, canonical bit on particle 1)
/// with the basis index major, canonical bit minor.
pub fn basis_branch_maps(channel: &ChannelSpec, basis: &[PureState]) -> Result<Vec<ParamMap>> {
    let mut maps =
        vec![ParamMap { cols: vec![[Complex64::new(0.0, 0.0); 4]; 4] }; basis.len() * 2];
    for (j, &basis_index) in PARAM_BASIS_INDEX.iter().enumerate() {
        let input = PureState::basis(2, basis_index);
        let state = prepare(&input, channel, true)?;
        for (b, vec23) in basis.iter().enumerate() {
            for canon in 0..2u8 {
                let proj = branch(&state, canon, vec23)?;
                let map = &mut maps[b * 2 + usize::from(canon)];
                for (row, &amp) in proj.raw.iter().enumerate() {
                    map.cols[j][row] = amp;
                }
            }
        }
    }
    Ok(maps)
}

/// Uniformly random channel (rejection-samples the all-zero tuple).
pub fn random_channel<R: Rng>(rng: &mut R) -> ChannelSpec {
    loop {
        let mut coeffs = [0i8; 8];
        for k in coeffs.iter_mut() {
            *k = rng.gen_range(-1..=1);
        }
        if let Ok(c) = ChannelSpec::new(coeffs) {
            return c;
        }
    }
}

/// Haar-like random orthonormal basis of the two-qubit space: a complex
/// Gaussian matrix orthonormalized by modified Gram–Schmidt.
pub fn random_orthonormal_basis<R: Rng>(rng: &mut R) -> Vec<PureState> {
    loop {
        let mut vecs: Vec<Vec<Complex64>> = (0..4)
            .map(|_| (0..4).map(|_| Complex64::new(gauss(rng), gauss(rng))).collect())
            .collect();
        let mut ok = true;
        for i in 0..4 {
            for j in 0..i {
                let ip: Complex64 = vecs[j]
                    .iter()
                    .zip(&vecs[i])
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                let prev = vecs[j].clone();
                for (x, p) in vecs[i].iter_mut().zip(&prev) {
                    *x -= ip * p;
                }
            }
            let norm: f64 = vecs[i].iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-8 {
                ok = false; // vanishingly unlikely degenerate draw
                break;
            }
            for x in vecs[i].iter_mut() {
                *x /= norm;
            }
        }
        if ok {
            return vecs
                .into_iter()
                .map(|v| PureState::new(2, v).expect("fixed size"))
                .collect();
        }
    }
}

/// Independently re-checks an instruction table by sampling: runs the
/// protocol on random class members, applies the row correction for each
/// branch, and verifies the input is recovered with fidelity ≥ 1 − tol and
/// branch probability 1/8 within prob_tol.
pub fn verify_table_by_sampling<R: Rng>(
    table: &InstructionTable,
    draws: usize,
    rng: &mut R,
    tol: f64,
    prob_tol: f64,
) -> Result<()> {
    for _ in 0..draws {
        let params = table.class.sample_params(rng);
        let input = table.class.member_state(&params)?;
        let branches = run_protocol(&input, &table.channel, true)?;
        for branch_result in &branches {
            let row = &table.rows[branch_result.outcome.index()];
            if (branch_result.probability - 0.125).abs() > prob_tol {
                return Err(Error::InvalidTable(format!(
                    "branch {:?} of channel {} has probability {} instead of 1/8",
                    branch_result.outcome, table.channel, branch_result.probability
                )));
            }
            let bob = branch_result
                .bob_state
                .as_ref()
                .ok_or_else(|| Error::InvalidTable("impossible branch in table".into()))?;
            let corrected = apply(&row.correction.realize(), &[1, 2], bob)?;
            let fidelity = corrected.inner(&input)?.norm();
            if fidelity < 1.0 - tol {
                return Err(Error::InvalidTable(format!(
                    "correction for {:?} of channel {} recovers fidelity {}",
                    branch_result.outcome, table.channel, fidelity
                )));
            }
        }
    }
    Ok(())
}

/// Convenience: the Bell basis in label order, for feeding
/// [`basis_branch_maps`] its degenerate known case.
pub fn bell_basis() -> Vec<PureState> {
    crate::bases::BellLabel::ALL.iter().map(|&l| bell_state(l)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corrections::CorrectionOp;
    use crate::protocol::coefficient_matrix;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn class_names_round_trip() {
        for class in InputClass::ALL {
            assert_eq!(class, class.name().parse().unwrap());
        }
        assert!(matches!(
            "nonsense".parse::<InputClass>(),
            Err(Error::UnknownClass(_))
        ));
    }

    #[test]
    fn class_expressions_follow_parameter_listing() {
        assert_eq!(InputClass::Diag.expression(), "α|00⟩ + γ|11⟩");
        assert_eq!(InputClass::AntiDiag.expression(), "β|10⟩ + δ|01⟩");
        assert_eq!(InputClass::LeftCol.expression(), "α|00⟩ + δ|01⟩");
        assert_eq!(InputClass::RightCol.expression(), "β|10⟩ + γ|11⟩");
        assert_eq!(InputClass::TopRow.expression(), "α|00⟩ + β|10⟩");
        assert_eq!(InputClass::BottomRow.expression(), "δ|01⟩ + γ|11⟩");
    }

    #[test]
    fn diag_through_ghz_channel_is_teleportable() {
        let channel: ChannelSpec = "+000000+".parse().unwrap();
        let table = is_teleportable(InputClass::Diag, &channel).expect("teleportable");
        assert_eq!(table.rows.len(), 8);
        assert_eq!(table.rows[0].correction, CorrectionOp::IDENTITY);
    }

    #[test]
    fn general_class_fails_on_sample_channels() {
        for code in ["+000000+", "00+00+00", "++++++++", "+-+-+-+-"] {
            let channel: ChannelSpec = code.parse().unwrap();
            assert!(is_teleportable(InputClass::General, &channel).is_none(), "{code}");
        }
    }

    #[test]
    fn top_row_fails_even_on_its_natural_channels() {
        for code in ["+000000+", "+000+000", "+0+00000", "++000000"] {
            let channel: ChannelSpec = code.parse().unwrap();
            assert!(is_teleportable(InputClass::TopRow, &channel).is_none(), "{code}");
        }
    }

    #[test]
    fn left_col_teleports_through_a_f_pattern_not_a_e() {
        let af: ChannelSpec = "+0000+00".parse().unwrap();
        assert!(is_teleportable(InputClass::LeftCol, &af).is_some());
        let ae: ChannelSpec = "+000+000".parse().unwrap();
        assert!(is_teleportable(InputClass::LeftCol, &ae).is_none());
    }

    #[test]
    fn factorization_condition_matches_known_cases() {
        let s = 1.0 / 2f64.sqrt();
        // Maximally entangled diagonal state.
        assert!(!factorization_condition(c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)));
        // Product of (m|0⟩ + n|1⟩) and (r|0⟩ + s|1⟩): (α,β,δ,γ) = (mr, nr, ms, ns).
        let (m, n) = (c(0.6, 0.2), c(0.5, -0.3));
        let (r, t) = (c(0.3, 0.7), c(-0.2, 0.4));
        assert!(factorization_condition(m * r, n * r, m * t, n * t));
        // Diagonal family with both entries nonzero is entangled.
        assert!(!factorization_condition(c(0.6, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.8, 0.0)));
    }

    #[test]
    fn scan_rejects_zero_samples() {
        assert!(matches!(general_basis_scan(0, 1), Err(Error::SampleCount(_))));
    }

    #[test]
    fn small_scan_finds_no_counterexamples() {
        let report = general_basis_scan(25, 7).unwrap();
        assert_eq!(report.successes, 0);
        assert!(report.counterexamples.is_empty());
    }

    #[test]
    fn bell_basis_branch_maps_match_coefficient_matrices() {
        let channel: ChannelSpec = "+-0++000".parse().unwrap();
        let maps = basis_branch_maps(&channel, &bell_basis()).unwrap();
        let scale = 2.0 * (channel.n_nonzero() as f64).sqrt();
        for &outcome in &MeasurementOutcome::ALL {
            // basis_branch_maps indexes (bell-major, canon minor) like
            // outcome.index(), and keeps the 1/(2√N) prefactor.
            let m = coefficient_matrix(&channel, outcome);
            let map = &maps[outcome.index()];
            for col in 0..4 {
                for row in 0..4 {
                    let got = map.cols[col][row] * scale;
                    assert!(
                        (got - m[row][col]).norm() < 1e-12,
                        "outcome {outcome:?} entry ({row},{col})"
                    );
                }
            }
        }
    }

    #[test]
    fn sampled_verification_accepts_generated_table() {
        let channel: ChannelSpec = "0+0000+0".parse().unwrap();
        let table = is_teleportable(InputClass::Diag, &channel).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        verify_table_by_sampling(&table, 10, &mut rng, 1e-10, 1e-12).unwrap();
    }
}
