//! Property tests for the simulator's structural invariants: enumeration,
//! unitarity, branch completeness, and the exactness of the linear
//! coefficient-matrix summary.

use num_complex::Complex64;
use proptest::prelude::*;

use telechan::bases::{bell_state, channel_state, ChannelSpec, N_COEFFS};
use telechan::corrections::CorrectionOp;
use telechan::protocol::{
    coefficient_matrices, prepare, run_protocol, MeasurementOutcome, PARAM_BASIS_INDEX,
};
use telechan::statevec::{apply, PureState};

const TOL: f64 = 1e-12;

fn amplitude() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn two_qubit_state() -> impl Strategy<Value = PureState> {
    proptest::collection::vec(amplitude(), 4)
        .prop_filter("norm too small", |v| {
            v.iter().map(|a| a.norm_sqr()).sum::<f64>() > 1e-6
        })
        .prop_map(|v| {
            PureState::new(2, v)
                .unwrap()
                .normalized()
                .expect("filtered nonzero")
        })
}

fn channel() -> impl Strategy<Value = ChannelSpec> {
    proptest::collection::vec(-1i8..=1, N_COEFFS)
        .prop_filter("all-zero channel", |v| v.iter().any(|&c| c != 0))
        .prop_map(|v| {
            let coeffs: [i8; N_COEFFS] = v.try_into().unwrap();
            ChannelSpec::new(coeffs).expect("nonzero by filter")
        })
}

#[test]
fn enumeration_is_complete_and_distinct() {
    let all = ChannelSpec::enumerate_all();
    assert_eq!(all.len(), 6560, "3^8 - 1 sign patterns");
    let mut texts: Vec<String> = all.iter().map(|c| c.to_string()).collect();
    texts.sort();
    texts.dedup();
    assert_eq!(texts.len(), 6560, "every channel is distinct");
    for c in &all {
        let round: ChannelSpec = c.to_string().parse().expect("text form parses back");
        assert_eq!(&round, c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Every catalog correction is a signed permutation, hence an isometry.
    #[test]
    fn catalog_ops_preserve_norm(s in two_qubit_state(), idx in 0usize..32) {
        let op = CorrectionOp::all()[idx];
        let corrected = op.realize().apply_vec(s.amplitudes());
        let corrected = PureState::new(2, corrected).unwrap();
        prop_assert!((corrected.norm() - 1.0).abs() <= TOL);
    }

    /// The eight joint outcomes exhaust the measurement: probabilities sum to 1.
    #[test]
    fn branch_probabilities_sum_to_one(
        s in two_qubit_state(),
        c in channel(),
        with_h in proptest::bool::ANY,
    ) {
        let branches = run_protocol(&s, &c, with_h).unwrap();
        let total: f64 = branches.iter().map(|b| b.probability).sum();
        prop_assert!((total - 1.0).abs() <= TOL, "total probability {total}");
    }

    /// Summing |canon⟩⊗|bell⟩⊗(raw amplitudes) over all eight outcomes
    /// reconstructs the prepared five-particle state exactly.
    #[test]
    fn outcome_decomposition_reconstructs_prepared_state(
        s in two_qubit_state(),
        c in channel(),
        with_h in proptest::bool::ANY,
    ) {
        let prepared = prepare(&s, &c, with_h).unwrap();
        let branches = run_protocol(&s, &c, with_h).unwrap();
        let mut rebuilt = vec![Complex64::new(0.0, 0.0); 32];
        for b in &branches {
            let bell = bell_state(b.outcome.bell);
            for x23 in 0..4 {
                for x45 in 0..4 {
                    let index = (usize::from(b.outcome.canon) << 4) | (x23 << 2) | x45;
                    rebuilt[index] += bell.amp(x23) * b.raw_amplitudes[x45];
                }
            }
        }
        for (x, want) in prepared.amplitudes().iter().enumerate() {
            prop_assert!(
                (rebuilt[x] - want).norm() <= TOL,
                "amplitude {x}: rebuilt {} vs prepared {}",
                rebuilt[x],
                want
            );
        }
    }

    /// A global phase on the input never changes any outcome probability.
    #[test]
    fn global_phase_leaves_probabilities_unchanged(
        s in two_qubit_state(),
        c in channel(),
        theta in 0.0f64..std::f64::consts::TAU,
    ) {
        let phased = s.scaled(Complex64::from_polar(1.0, theta));
        let plain = run_protocol(&s, &c, true).unwrap();
        let rotated = run_protocol(&phased, &c, true).unwrap();
        for (p, r) in plain.iter().zip(&rotated) {
            prop_assert!((p.probability - r.probability).abs() <= TOL);
        }
    }

    /// The coefficient matrix is an exact linear summary: for any input,
    /// raw amplitudes equal (1/(2√N)) · M · (α, β, δ, γ)ᵀ.
    #[test]
    fn coefficient_matrix_is_exact_for_any_input(s in two_qubit_state(), c in channel()) {
        let params: Vec<Complex64> =
            PARAM_BASIS_INDEX.iter().map(|&i| s.amp(i)).collect();
        let scale = 1.0 / (2.0 * (c.n_nonzero() as f64).sqrt());
        let matrices = coefficient_matrices(&c);
        let branches = run_protocol(&s, &c, true).unwrap();
        for b in &branches {
            let m = &matrices[b.outcome.index()];
            for row in 0..4 {
                let predicted: Complex64 =
                    (0..4).map(|col| m[row][col] * params[col]).sum::<Complex64>() * scale;
                prop_assert!(
                    (predicted - b.raw_amplitudes[row]).norm() <= TOL,
                    "outcome {} row {row}: predicted {predicted} vs raw {}",
                    b.outcome.label(),
                    b.raw_amplitudes[row]
                );
            }
        }
    }

    /// Measuring in a rotated pair built from A = B = 1/√2 agrees with
    /// applying the Hadamard first and measuring in the computational basis.
    #[test]
    fn hadamard_equals_balanced_rotated_pair(s in two_qubit_state(), c in channel()) {
        use telechan::bases::rotated_basis_pair;

        let r = std::f64::consts::FRAC_1_SQRT_2;
        let (phi, chi) =
            rotated_basis_pair(Complex64::new(r, 0.0), Complex64::new(r, 0.0)).unwrap();
        let without_h = prepare(&s, &c, false).unwrap();
        let with_h = run_protocol(&s, &c, true).unwrap();
        for b in &with_h {
            // Canon 0 after the Hadamard corresponds to χ, canon 1 to φ.
            let vec1 = if b.outcome.canon == 0 { &chi } else { &phi };
            let onto = telechan::statevec::tensor(vec1, &bell_state(b.outcome.bell)).unwrap();
            let proj =
                telechan::statevec::project(&without_h, &[1, 2, 3], &onto).unwrap();
            prop_assert!((proj.probability - b.probability).abs() <= TOL);
            for (raw, want) in proj.raw.iter().zip(&b.raw_amplitudes) {
                prop_assert!((raw - want).norm() <= TOL);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Kronecker products of correction factors associate, so the catalog's
    /// two-factor form is unambiguous.
    #[test]
    fn kron_is_associative(
        a in proptest::collection::vec(amplitude(), 4),
        b in proptest::collection::vec(amplitude(), 4),
        c in proptest::collection::vec(amplitude(), 4),
    ) {
        use telechan::statevec::LinearOp;
        let a = LinearOp::new(1, a).unwrap();
        let b = LinearOp::new(1, b).unwrap();
        let c = LinearOp::new(1, c).unwrap();
        let left = a.kron(&b).unwrap().kron(&c).unwrap();
        let right = a.kron(&b.kron(&c).unwrap()).unwrap();
        for row in 0..8 {
            for col in 0..8 {
                prop_assert!((left.entry(row, col) - right.entry(row, col)).norm() <= TOL);
            }
        }
    }

    /// Preparing with the Hadamard equals preparing without and applying it
    /// afterwards to particle 1.
    #[test]
    fn hadamard_commutes_with_channel_attachment(s in two_qubit_state(), c in channel()) {
        use telechan::bases::hadamard;
        let direct = prepare(&s, &c, true).unwrap();
        let late = apply(&hadamard(), &[1], &prepare(&s, &c, false).unwrap()).unwrap();
        for (a, b) in direct.amplitudes().iter().zip(late.amplitudes()) {
            prop_assert!((a - b).norm() <= TOL);
        }
    }
}

#[test]
fn channel_state_matches_coefficient_layout() {
    // A single +1 in each slot must excite exactly the advertised basis index.
    use telechan::bases::COEFF_BASIS_INDEX;
    for (slot, &index) in COEFF_BASIS_INDEX.iter().enumerate() {
        let mut coeffs = [0i8; N_COEFFS];
        coeffs[slot] = 1;
        let c = ChannelSpec::new(coeffs).unwrap();
        let state = channel_state(&c);
        for x in 0..8 {
            let want = if x == index { 1.0 } else { 0.0 };
            assert!((state.amp(x).re - want).abs() <= TOL && state.amp(x).im.abs() <= TOL);
        }
    }
}

#[test]
fn measurement_outcomes_enumerate_all_pairs() {
    let mut seen = std::collections::BTreeSet::new();
    for (i, o) in MeasurementOutcome::ALL.iter().enumerate() {
        assert_eq!(o.index(), i);
        seen.insert((o.bell.index(), o.canon));
    }
    assert_eq!(seen.len(), 8);
}
