//! The ten-point verification suite: re-derives every classification result,
//! instruction table, and channel list, checks them against the bundled
//! reference data and against independent numerical oracles, and reports one
//! pass/fail outcome per criterion. Shared by the `verify-paper` subcommand
//! and the acceptance test target.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use serde::Serialize;

use crate::bases::{bell_state, rotated_basis_pair, ChannelSpec, COEFF_BASIS_INDEX};
use crate::classify::{
    branch_maps, classify_all, factorization_condition, general_basis_scan, is_teleportable,
    random_channel, ClassificationReport, InputClass,
};
use crate::corrections::{find_correction, OutcomeCorrection};
use crate::protocol::{
    branch, coefficient_matrices, prepare, run_protocol, MeasurementOutcome, PARAM_BASIS_INDEX,
};
use crate::report::{load_reference_lists, load_reference_tables};
use crate::statevec::{apply, project, tensor};

/// Settings for one verification run.
#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    /// Base seed; randomized criteria derive per-criterion streams from it.
    pub seed: u64,
    /// Sample count of the random-basis falsification scan.
    pub samples: usize,
    /// Numerical tolerance for the fidelity, oracle, and equivalence checks.
    pub tolerance: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 0, samples: 1000, tolerance: 1e-10 }
    }
}

/// Result of a single criterion.
#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Results of the full suite, in criterion order.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_count(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }
}

/// Probability-exactness tolerance (the 1/8 claim).
pub const PROB_TOL: f64 = 1e-12;

/// Threshold shared by the two product-state tests in the factorization
/// criterion.
pub const SCHMIDT_TOL: f64 = 1e-9;

/// Classifies all seven input classes, timing the scan; the result feeds
/// the criteria that need the exhaustive classification.
pub fn classification_reports() -> (Vec<ClassificationReport>, Duration) {
    let started = Instant::now();
    let reports: Vec<ClassificationReport> =
        InputClass::ALL.iter().map(|&c| classify_all(c)).collect();
    (reports, started.elapsed())
}

/// Runs all ten criteria and collects their outcomes.
pub fn run_all(config: &VerifyConfig) -> VerifyReport {
    let (reports, classification_time) = classification_reports();

    let checks = vec![
        check_support_counts(&reports, classification_time),
        check_reference_tables(),
        check_reference_lists(&reports),
        check_equiprobability(&reports, config.seed.wrapping_add(401)),
        check_fidelity(&reports, config.seed.wrapping_add(501), config.tolerance),
        check_impossibility(),
        check_oracle(config.seed.wrapping_add(701), config.tolerance),
        check_rotated_equivalence(config.seed.wrapping_add(801), config.tolerance),
        check_factorization(config.seed.wrapping_add(901)),
        check_scan(config.seed, config.samples),
    ];
    VerifyReport { checks }
}

/// Criterion 1: exhaustive support-pattern counts per class, single-threaded,
/// within the runtime budget.
pub fn check_support_counts(reports: &[ClassificationReport], elapsed: Duration) -> CheckOutcome {
    let expected: [usize; 7] = [0, 8, 8, 4, 4, 0, 0];
    let counts: Vec<usize> = reports.iter().map(|r| r.pattern_count).collect();
    let counts_ok = counts == expected;
    let time_ok = elapsed < Duration::from_secs(60);
    let listing = reports
        .iter()
        .map(|r| format!("{} {}", r.class, r.pattern_count))
        .collect::<Vec<_>>()
        .join(", ");
    // Keep the passing detail free of wall-clock text so identical flags
    // yield byte-identical reports; print the measurement only on failure.
    let budget = if time_ok {
        "within the 60s budget".to_string()
    } else {
        format!("over the 60s budget at {:.1?}", elapsed)
    };
    CheckOutcome {
        id: 1,
        name: "support-pattern counts",
        passed: counts_ok && time_ok,
        detail: format!(
            "all 6560 channels × 7 classes: {listing} (expected 0/8/8/4/4/0/0) {budget}"
        ),
    }
}

/// Criterion 2: every bundled reference instruction table is reproduced with
/// zero hard mismatches; label-slip rows are flagged, not failed.
pub fn check_reference_tables() -> CheckOutcome {
    let id = 2;
    let name = "instruction-table reproduction";
    let tables = match load_reference_tables() {
        Ok(t) => t,
        Err(e) => {
            return CheckOutcome { id, name, passed: false, detail: e.to_string() };
        }
    };
    let mut hard = 0usize;
    let mut flagged = 0usize;
    let mut rows = 0usize;
    let mut problems: Vec<String> = Vec::new();
    for golden in &tables {
        let generated = match is_teleportable(golden.class, &golden.channel) {
            Some(t) => t,
            None => {
                problems.push(format!("{} not teleportable for {}", golden.channel, golden.class));
                continue;
            }
        };
        if let Err(e) = generated.validate() {
            problems.push(format!("{}: {e}", golden.channel));
            continue;
        }
        match crate::report::verify_against_golden(&generated, golden) {
            Ok(m) => {
                hard += m.hard_mismatches;
                flagged += m.flagged;
                rows += m.rows.len();
                if m.hard_mismatches > 0 {
                    problems.push(format!("{}: {} hard mismatches", golden.channel, m.hard_mismatches));
                }
            }
            Err(e) => problems.push(e.to_string()),
        }
    }
    let passed = problems.is_empty() && hard == 0 && tables.len() == 8;
    let detail = if problems.is_empty() {
        format!(
            "{} tables, {rows} rows: {hard} hard mismatches, {flagged} ambiguous rows flagged",
            tables.len()
        )
    } else {
        problems.join("; ")
    };
    CheckOutcome { id, name, passed, detail }
}

/// Sorted coefficient-name sets of a classification report.
fn computed_pattern_sets(report: &ClassificationReport) -> BTreeSet<Vec<char>> {
    report
        .support_patterns
        .iter()
        .map(|p| {
            let mut names = p.names.clone();
            names.sort_unstable();
            names
        })
        .collect()
}

/// Swaps the two channel particles kept by Bob's side of the basis listing:
/// coefficient names c↔d and e↔f; a, b, g, h are symmetric.
fn mirror_names(names: &[char]) -> Vec<char> {
    let mut out: Vec<char> = names
        .iter()
        .map(|&n| match n {
            'c' => 'd',
            'd' => 'c',
            'e' => 'f',
            'f' => 'e',
            other => other,
        })
        .collect();
    out.sort_unstable();
    out
}

fn render_sets(sets: &BTreeSet<Vec<char>>) -> String {
    sets.iter()
        .map(|s| format!("{{{}}}", s.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Criterion 3: the computed support patterns equal the bundled reference
/// channel lists, as sets, for each listed class.
pub fn check_reference_lists(reports: &[ClassificationReport]) -> CheckOutcome {
    let id = 3;
    let name = "channel-list reproduction";
    let lists = match load_reference_lists() {
        Ok(l) => l,
        Err(e) => {
            return CheckOutcome { id, name, passed: false, detail: e.to_string() };
        }
    };
    let mut passed = true;
    let mut parts: Vec<String> = Vec::new();
    for list in &lists {
        let report = reports
            .iter()
            .find(|r| r.class == list.class)
            .expect("all classes classified");
        let computed = computed_pattern_sets(report);
        let reference: BTreeSet<Vec<char>> = list
            .patterns
            .iter()
            .map(|p| {
                let mut names = p.clone();
                names.sort_unstable();
                names
            })
            .collect();
        if computed == reference {
            parts.push(format!("{}: {} sets match", list.class, computed.len()));
        } else {
            passed = false;
            let mirrored: BTreeSet<Vec<char>> =
                computed.iter().map(|s| mirror_names(s)).collect();
            let mirror_note = if mirrored == reference {
                "; the reference list is exactly the particle-4/5 mirror (c↔d, e↔f) of the computed sets"
            } else {
                ""
            };
            parts.push(format!(
                "{}: computed {} ≠ reference {}{}",
                list.class,
                render_sets(&computed),
                render_sets(&reference),
                mirror_note
            ));
        }
    }
    CheckOutcome { id, name, passed, detail: parts.join(" | ") }
}

/// Criterion 4: every branch of every teleportable pair carries probability
/// exactly 1/8, over 20 random parameter draws per pair.
pub fn check_equiprobability(reports: &[ClassificationReport], seed: u64) -> CheckOutcome {
    let id = 4;
    let name = "branch equiprobability";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = 0usize;
    let mut worst = 0.0f64;
    for report in reports {
        for (channel, _) in &report.teleporting_channels {
            pairs += 1;
            for _ in 0..20 {
                let params = report.class.sample_params(&mut rng);
                let input = match report.class.member_state(&params) {
                    Ok(s) => s,
                    Err(e) => {
                        return CheckOutcome { id, name, passed: false, detail: e.to_string() };
                    }
                };
                let branches = match run_protocol(&input, channel, true) {
                    Ok(b) => b,
                    Err(e) => {
                        return CheckOutcome { id, name, passed: false, detail: e.to_string() };
                    }
                };
                for b in &branches {
                    worst = worst.max((b.probability - 0.125).abs());
                }
            }
        }
    }
    CheckOutcome {
        id,
        name,
        passed: worst <= PROB_TOL,
        detail: format!(
            "{pairs} teleportable pairs × 20 draws × 8 branches: max |p − 1/8| = {worst:.2e} (tolerance {PROB_TOL:.0e})"
        ),
    }
}

/// Criterion 5: protocol plus table correction reproduces the input with
/// overlap ≥ 1 − tolerance, over 20 random draws per teleportable pair.
pub fn check_fidelity(reports: &[ClassificationReport], seed: u64, tolerance: f64) -> CheckOutcome {
    let id = 5;
    let name = "corrected teleportation fidelity";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = 0usize;
    let mut worst = 1.0f64;
    for report in reports {
        for (channel, table) in &report.teleporting_channels {
            pairs += 1;
            for _ in 0..20 {
                let params = report.class.sample_params(&mut rng);
                let outcome: crate::Result<()> = (|| {
                    let input = report.class.member_state(&params)?;
                    let branches = run_protocol(&input, channel, true)?;
                    for b in &branches {
                        let row = &table.rows[b.outcome.index()];
                        let bob = b.bob_state.as_ref().ok_or(crate::Error::InvalidTable(
                            "impossible branch in a teleportable pair".into(),
                        ))?;
                        let corrected = apply(&row.correction.realize(), &[1, 2], bob)?;
                        worst = worst.min(corrected.inner(&input)?.norm());
                    }
                    Ok(())
                })();
                if let Err(e) = outcome {
                    return CheckOutcome { id, name, passed: false, detail: e.to_string() };
                }
            }
        }
    }
    CheckOutcome {
        id,
        name,
        passed: worst >= 1.0 - tolerance,
        detail: format!(
            "{pairs} teleportable pairs × 20 draws: min overlap = 1 − {:.2e} (tolerance {tolerance:.0e})",
            1.0 - worst
        ),
    }
}

/// Criterion 6: for the general class, no channel, outcome, and catalog
/// correction combination passes the recovery criterion — checked for all
/// 6560 × 8 × 32 combinations.
pub fn check_impossibility() -> CheckOutcome {
    let id = 6;
    let name = "general-class impossibility";
    let target = InputClass::General.target_embedding();
    let mut channels = 0usize;
    for channel in ChannelSpec::enumerate_all() {
        channels += 1;
        let maps = branch_maps(InputClass::General, &channel);
        for (i, oc) in find_correction(&maps, &target).iter().enumerate() {
            if !matches!(oc, OutcomeCorrection::Unrecoverable) {
                return CheckOutcome {
                    id,
                    name,
                    passed: false,
                    detail: format!(
                        "channel {channel}, outcome {:?}: expected no recovery, got {oc:?}",
                        MeasurementOutcome::ALL[i]
                    ),
                };
            }
        }
    }
    CheckOutcome {
        id,
        name,
        passed: true,
        detail: format!(
            "{channels} channels × 8 outcomes × 32 corrections: recovery impossible everywhere"
        ),
    }
}

/// Direct-contraction oracle for the unnormalized branch amplitudes: builds
/// the 32 five-particle amplitudes by explicit multiplication, applies the
/// particle-1 Hadamard as a two-term sum, and contracts against the Bell
/// conjugate coefficients — no shared code with the simulator kernels.
pub fn oracle_raw_amplitudes(
    input: &[Complex64; 4],
    channel: &ChannelSpec,
    outcome: MeasurementOutcome,
) -> [Complex64; 4] {
    let n = channel.n_nonzero() as f64;
    let root_half = std::f64::consts::FRAC_1_SQRT_2;

    // Channel amplitudes k[x3 x4 x5] in standard binary order.
    let mut k = [0.0f64; 8];
    for (i, &coeff) in channel.coeffs().iter().enumerate() {
        k[COEFF_BASIS_INDEX[i]] = f64::from(coeff) / n.sqrt();
    }

    // Bell conjugate coefficients on (x2, x3): Φ± = (|00⟩ ± |11⟩)/√2,
    // Ψ± = (|01⟩ ± |10⟩)/√2 — all real, so conjugation is trivial.
    let mut bell = [0.0f64; 4];
    match outcome.bell {
        crate::bases::BellLabel::PhiPlus => {
            bell[0b00] = root_half;
            bell[0b11] = root_half;
        }
        crate::bases::BellLabel::PhiMinus => {
            bell[0b00] = root_half;
            bell[0b11] = -root_half;
        }
        crate::bases::BellLabel::PsiPlus => {
            bell[0b01] = root_half;
            bell[0b10] = root_half;
        }
        crate::bases::BellLabel::PsiMinus => {
            bell[0b01] = root_half;
            bell[0b10] = -root_half;
        }
    }

    let mut out = [Complex64::new(0.0, 0.0); 4];
    for x2 in 0..2usize {
        for x3 in 0..2usize {
            let b = bell[x2 * 2 + x3];
            if b == 0.0 {
                continue;
            }
            for x4 in 0..2usize {
                for x5 in 0..2usize {
                    // Hadamard on particle 1 then projection onto |canon⟩:
                    // amplitude (ψ[0 x2] + (−1)^canon ψ[1 x2])/√2.
                    let sign = if outcome.canon == 1 { -1.0 } else { 1.0 };
                    let psi_mix =
                        (input[x2] + input[0b10 + x2] * sign) * root_half;
                    let chan = k[x3 * 4 + x4 * 2 + x5];
                    out[x4 * 2 + x5] += b * psi_mix * chan;
                }
            }
        }
    }
    out
}

/// The oracle's coefficient matrix, scaled like the library's.
pub fn oracle_coefficient_matrix(
    channel: &ChannelSpec,
    outcome: MeasurementOutcome,
) -> [[Complex64; 4]; 4] {
    let scale = 2.0 * (channel.n_nonzero() as f64).sqrt();
    let mut m = [[Complex64::new(0.0, 0.0); 4]; 4];
    for (col, &basis_index) in PARAM_BASIS_INDEX.iter().enumerate() {
        let mut input = [Complex64::new(0.0, 0.0); 4];
        input[basis_index] = Complex64::new(1.0, 0.0);
        let raw = oracle_raw_amplitudes(&input, channel, outcome);
        for row in 0..4 {
            m[row][col] = raw[row] * scale;
        }
    }
    m
}

/// Asserts the two-column block shape of a coefficient matrix when one
/// channel half vanishes: `zero_cols` vanish identically and
/// `paired = (−1)^canon · base`.
fn block_shape_holds(
    m: &[[Complex64; 4]; 4],
    zero_cols: [usize; 2],
    base_col: usize,
    paired_col: usize,
    canon: u8,
    tol: f64,
) -> bool {
    let sign = if canon == 1 { -1.0 } else { 1.0 };
    let mut base_norm = 0.0f64;
    for row in 0..4 {
        for &zc in &zero_cols {
            if m[row][zc].norm() > tol {
                return false;
            }
        }
        base_norm += m[row][base_col].norm_sqr();
        if (m[row][paired_col] - m[row][base_col] * sign).norm() > tol {
            return false;
        }
    }
    base_norm > tol
}

/// Criterion 7: library coefficient matrices match the direct-contraction
/// oracle on random channels, and single-half channels show the expected
/// parameter-pair block structure.
pub fn check_oracle(seed: u64, tolerance: f64) -> CheckOutcome {
    let id = 7;
    let name = "coefficient-matrix oracle";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_diff = 0.0f64;
    for _ in 0..50 {
        let channel = random_channel(&mut rng);
        let lib = coefficient_matrices(&channel);
        for &outcome in &MeasurementOutcome::ALL {
            let orc = oracle_coefficient_matrix(&channel, outcome);
            for row in 0..4 {
                for col in 0..4 {
                    max_diff = max_diff.max((lib[outcome.index()][row][col] - orc[row][col]).norm());
                }
            }
        }
    }
    if max_diff > tolerance {
        return CheckOutcome {
            id,
            name,
            passed: false,
            detail: format!("max |library − oracle| = {max_diff:.2e} exceeds {tolerance:.0e}"),
        };
    }

    // Vanishing-half probes. Columns follow the parameter listing
    // (α, β, δ, γ) = (0, 1, 2, 3). With the second channel half zero, the
    // (δ, γ) pair drops out of Φ outcomes and the (α, β) pair out of Ψ
    // outcomes; with the first half zero, the roles swap.
    let first_half_only: ChannelSpec = "+00+0000".parse().expect("valid channel");
    let second_half_only: ChannelSpec = "0+000+00".parse().expect("valid channel");
    for (channel, phi_zero, phi_base, phi_paired) in
        [(first_half_only, [2usize, 3], 0usize, 1usize), (second_half_only, [0, 1], 2, 3)]
    {
        let ms = coefficient_matrices(&channel);
        for &outcome in &MeasurementOutcome::ALL {
            let m = &ms[outcome.index()];
            let is_phi = matches!(
                outcome.bell,
                crate::bases::BellLabel::PhiPlus | crate::bases::BellLabel::PhiMinus
            );
            // The surviving pair swaps between Φ and Ψ outcomes.
            let (zero_cols, base, paired) = if is_phi {
                (phi_zero, phi_base, phi_paired)
            } else {
                ([phi_base, phi_paired], phi_zero[0], phi_zero[1])
            };
            if !block_shape_holds(m, zero_cols, base, paired, outcome.canon, tolerance) {
                return CheckOutcome {
                    id,
                    name,
                    passed: false,
                    detail: format!(
                        "block-structure probe failed for channel {channel}, outcome {outcome:?}"
                    ),
                };
            }
        }
    }
    CheckOutcome {
        id,
        name,
        passed: true,
        detail: format!(
            "50 random channels × 8 outcomes: max |library − oracle| = {max_diff:.2e}; vanishing-half block structure confirmed"
        ),
    }
}

/// Criterion 8: Hadamard-then-canonical measurement agrees with projecting
/// particle 1 onto the rotated pair (A = B = 1/√2): identical probabilities
/// and phase-equivalent residuals.
pub fn check_rotated_equivalence(seed: u64, tolerance: f64) -> CheckOutcome {
    let id = 8;
    let name = "rotated-basis equivalence";
    let root_half = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let (phi, chi) = match rotated_basis_pair(root_half, root_half) {
        Ok(pair) => pair,
        Err(e) => {
            return CheckOutcome { id, name, passed: false, detail: e.to_string() };
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_prob_diff = 0.0f64;
    let mut min_overlap = 1.0f64;
    for _ in 0..100 {
        let params = InputClass::General.sample_params(&mut rng);
        let channel = random_channel(&mut rng);
        let outcome: crate::Result<()> = (|| {
            let input = InputClass::General.member_state(&params)?;
            let with_h = prepare(&input, &channel, true)?;
            let without_h = prepare(&input, &channel, false)?;
            for &o in &MeasurementOutcome::ALL {
                let canonical = branch(&with_h, o.canon, &bell_state(o.bell))?;
                // Canonical |0⟩ after the Hadamard ↔ |χ⟩ before it; |1⟩ ↔ |φ⟩.
                let rotated_vec = if o.canon == 0 { &chi } else { &phi };
                let onto = tensor(rotated_vec, &bell_state(o.bell))?;
                let rotated = project(&without_h, &[1, 2, 3], &onto)?;
                max_prob_diff =
                    max_prob_diff.max((canonical.probability - rotated.probability).abs());
                match (&canonical.residual, &rotated.residual) {
                    (Some(a), Some(b)) => {
                        min_overlap = min_overlap.min(a.inner(b)?.norm());
                    }
                    (None, None) => {}
                    _ => {
                        return Err(crate::Error::InvalidTable(format!(
                            "branch {o:?} possible in one picture, impossible in the other"
                        )));
                    }
                }
            }
            Ok(())
        })();
        if let Err(e) = outcome {
            return CheckOutcome { id, name, passed: false, detail: e.to_string() };
        }
    }
    let passed = max_prob_diff <= tolerance && min_overlap >= 1.0 - tolerance;
    CheckOutcome {
        id,
        name,
        passed,
        detail: format!(
            "100 random states × 8 outcomes: max |Δp| = {max_prob_diff:.2e}, min residual overlap = 1 − {:.2e}",
            1.0 - min_overlap
        ),
    }
}

/// Smallest singular value of the 2×2 amplitude matrix [[α, δ], [β, γ]].
pub fn smallest_singular_value(
    alpha: Complex64,
    beta: Complex64,
    delta: Complex64,
    gamma: Complex64,
) -> f64 {
    let trace = alpha.norm_sqr() + beta.norm_sqr() + delta.norm_sqr() + gamma.norm_sqr();
    let det_sqr = (alpha * gamma - beta * delta).norm_sqr();
    let disc = (trace * trace - 4.0 * det_sqr).max(0.0).sqrt();
    (((trace - disc) / 2.0).max(0.0)).sqrt()
}

/// Criterion 9: the determinant-based product test agrees with the singular
/// value test on a half-product, half-generic sample.
pub fn check_factorization(seed: u64) -> CheckOutcome {
    let id = 9;
    let name = "factorization criterion";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut disagreements = 0usize;
    let mut product_draws = 0usize;
    for i in 0..1000usize {
        let (alpha, beta, delta, gamma) = if i % 2 == 0 {
            product_draws += 1;
            let one = sample_qubit(&mut rng);
            let two = sample_qubit(&mut rng);
            (one[0] * two[0], one[1] * two[0], one[0] * two[1], one[1] * two[1])
        } else {
            let p = InputClass::General.sample_params(&mut rng);
            (p[0], p[1], p[2], p[3])
        };
        let determinant_says = factorization_condition(alpha, beta, delta, gamma);
        let schmidt_says = smallest_singular_value(alpha, beta, delta, gamma) <= SCHMIDT_TOL;
        if determinant_says != schmidt_says {
            disagreements += 1;
        }
    }
    CheckOutcome {
        id,
        name,
        passed: disagreements == 0,
        detail: format!(
            "1000 states ({product_draws} product, {} generic): {disagreements} disagreements with the singular-value test at {SCHMIDT_TOL:.0e}",
            1000 - product_draws
        ),
    }
}

/// Normalized random single-qubit amplitudes.
fn sample_qubit<R: Rng>(rng: &mut R) -> [Complex64; 2] {
    let params = InputClass::Diag.sample_params(rng);
    [params[0], params[1]]
}

/// Criterion 10: the random-basis falsification scan finds no channel and
/// orthonormal (2,3)-basis making the general class correctable.
pub fn check_scan(seed: u64, samples: usize) -> CheckOutcome {
    let id = 10;
    let name = "random-basis falsification scan";
    match general_basis_scan(samples, seed) {
        Ok(report) => CheckOutcome {
            id,
            name,
            passed: report.successes == 0,
            detail: format!(
                "{} random bases × channels (seed {}): {} successes",
                report.samples, report.seed, report.successes
            ),
        },
        Err(e) => CheckOutcome { id, name, passed: false, detail: e.to_string() },
    }
}
