//! Bell states, standard operators, rotated measurement bases, and the
//! eight-coefficient three-qubit channel family.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::statevec::{LinearOp, PureState};
use crate::{Error, Result};

/// The four maximally entangled two-qubit states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BellLabel {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellLabel {
    pub const ALL: [BellLabel; 4] = [
        BellLabel::PhiPlus,
        BellLabel::PhiMinus,
        BellLabel::PsiPlus,
        BellLabel::PsiMinus,
    ];

    pub fn index(self) -> usize {
        match self {
            BellLabel::PhiPlus => 0,
            BellLabel::PhiMinus => 1,
            BellLabel::PsiPlus => 2,
            BellLabel::PsiMinus => 3,
        }
    }

    /// Stable lowercase name used in JSON documents.
    pub fn json_name(self) -> &'static str {
        match self {
            BellLabel::PhiPlus => "phi+",
            BellLabel::PhiMinus => "phi-",
            BellLabel::PsiPlus => "psi+",
            BellLabel::PsiMinus => "psi-",
        }
    }

    pub fn from_json_name(s: &str) -> Result<Self> {
        match s {
            "phi+" => Ok(BellLabel::PhiPlus),
            "phi-" => Ok(BellLabel::PhiMinus),
            "psi+" => Ok(BellLabel::PsiPlus),
            "psi-" => Ok(BellLabel::PsiMinus),
            other => Err(Error::ReferenceData(format!(
                "unknown Bell label {other:?}"
            ))),
        }
    }

    /// Symbol used in rendered tables.
    pub fn symbol(self) -> &'static str {
        match self {
            BellLabel::PhiPlus => "Φ+",
            BellLabel::PhiMinus => "Φ-",
            BellLabel::PsiPlus => "Ψ+",
            BellLabel::PsiMinus => "Ψ-",
        }
    }
}

impl Serialize for BellLabel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.json_name())
    }
}

impl<'de> Deserialize<'de> for BellLabel {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        BellLabel::from_json_name(&s).map_err(serde::de::Error::custom)
    }
}

/// Returns the normalized Bell state on two qubits:
/// Φ± = (|00⟩ ± |11⟩)/√2, Ψ± = (|01⟩ ± |10⟩)/√2.
pub fn bell_state(label: BellLabel) -> PureState {
    let s = 1.0 / 2f64.sqrt();
    let (i, j, sign) = match label {
        BellLabel::PhiPlus => (0b00, 0b11, 1.0),
        BellLabel::PhiMinus => (0b00, 0b11, -1.0),
        BellLabel::PsiPlus => (0b01, 0b10, 1.0),
        BellLabel::PsiMinus => (0b01, 0b10, -1.0),
    };
    let mut amps = vec![Complex64::new(0.0, 0.0); 4];
    amps[i] = Complex64::new(s, 0.0);
    amps[j] = Complex64::new(sign * s, 0.0);
    PureState::new(2, amps).expect("fixed size")
}

/// Hadamard operator (σx + σz)/√2.
pub fn hadamard() -> LinearOp {
    let s = 1.0 / 2f64.sqrt();
    LinearOp::from_real(1, &[s, s, s, -s]).expect("fixed size")
}

/// Pauli σx.
pub fn pauli_x() -> LinearOp {
    LinearOp::from_real(1, &[0.0, 1.0, 1.0, 0.0]).expect("fixed size")
}

/// Pauli σz.
pub fn pauli_z() -> LinearOp {
    LinearOp::from_real(1, &[1.0, 0.0, 0.0, -1.0]).expect("fixed size")
}

/// CNOT with the first (most significant) qubit as control: flips the second
/// entry of the ket when the first is 1.
pub fn cnot() -> LinearOp {
    LinearOp::from_real(
        2,
        &[
            1.0, 0.0, 0.0, 0.0, //
            0.0, 1.0, 0.0, 0.0, //
            0.0, 0.0, 0.0, 1.0, //
            0.0, 0.0, 1.0, 0.0,
        ],
    )
    .expect("fixed size")
}

/// Number of channel coefficients.
pub const N_COEFFS: usize = 8;

/// Coefficient names in listing order.
pub const COEFF_NAMES: [char; N_COEFFS] = ['a', 'b', 'c', 'd', 'e', 'f', 'g', 'h'];

/// Amplitude index of the basis state carrying each coefficient, in listing
/// order (|000⟩,|100⟩,|010⟩,|001⟩,|110⟩,|101⟩,|011⟩,|111⟩).
pub const COEFF_BASIS_INDEX: [usize; N_COEFFS] = [0b000, 0b100, 0b010, 0b001, 0b110, 0b101, 0b011, 0b111];

/// A three-qubit channel: eight coefficients in {−1, 0, +1}, realized as the
/// normalized state with amplitude coeff/√N on the listed basis states,
/// where N is the number of nonzero coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChannelSpec {
    coeffs: [i8; N_COEFFS],
}

impl ChannelSpec {
    pub fn new(coeffs: [i8; N_COEFFS]) -> Result<Self> {
        if coeffs.iter().any(|&k| !(-1..=1).contains(&k)) {
            return Err(Error::Channel(
                "coefficients must be −1, 0, or +1".into(),
            ));
        }
        if coeffs.iter().all(|&k| k == 0) {
            return Err(Error::Channel("all eight coefficients are zero".into()));
        }
        Ok(ChannelSpec { coeffs })
    }

    pub fn coeffs(&self) -> [i8; N_COEFFS] {
        self.coeffs
    }

    /// Number of nonzero coefficients (the normalization count N).
    pub fn n_nonzero(&self) -> usize {
        self.coeffs.iter().filter(|&&k| k != 0).count()
    }

    /// Positions (0..8, listing order) of the nonzero coefficients.
    pub fn support(&self) -> Vec<usize> {
        (0..N_COEFFS).filter(|&i| self.coeffs[i] != 0).collect()
    }

    /// Nonzero coefficient names, e.g. ['a', 'h'].
    pub fn support_names(&self) -> Vec<char> {
        self.support().into_iter().map(|i| COEFF_NAMES[i]).collect()
    }

    /// The all-positive representative of this channel's support pattern.
    pub fn canonical_pattern(&self) -> ChannelSpec {
        let mut coeffs = self.coeffs;
        for k in coeffs.iter_mut() {
            *k = k.abs();
        }
        ChannelSpec { coeffs }
    }

    /// Human-readable state expression, e.g. "(1/√2)(|000⟩ + |111⟩)".
    pub fn expression(&self) -> String {
        let mut terms = String::new();
        for (i, &k) in self.coeffs.iter().enumerate() {
            if k == 0 {
                continue;
            }
            if terms.is_empty() {
                if k < 0 {
                    terms.push('-');
                }
            } else {
                terms.push_str(if k < 0 { " - " } else { " + " });
            }
            terms.push_str(&format!("|{:03b}⟩", COEFF_BASIS_INDEX[i]));
        }
        let n = self.n_nonzero();
        if n == 1 {
            terms
        } else {
            format!("(1/√{n})({terms})")
        }
    }

    /// All 3⁸ − 1 = 6560 channels, ordered lexicographically over the
    /// coefficient tuple with −1 < 0 < +1.
    pub fn enumerate_all() -> Vec<ChannelSpec> {
        let mut out = Vec::with_capacity(6560);
        let mut coeffs = [-1i8; N_COEFFS];
        loop {
            if coeffs.iter().any(|&k| k != 0) {
                out.push(ChannelSpec { coeffs });
            }
            // Increment the tuple, last coefficient fastest.
            let mut i = N_COEFFS;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if coeffs[i] < 1 {
                    coeffs[i] += 1;
                    for k in coeffs.iter_mut().skip(i + 1) {
                        *k = -1;
                    }
                    break;
                }
            }
        }
    }
}

impl fmt::Display for ChannelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in self.coeffs {
            f.write_str(match k {
                -1 => "-",
                0 => "0",
                1 => "+",
                _ => unreachable!("validated at construction"),
            })?;
        }
        Ok(())
    }
}

impl FromStr for ChannelSpec {
    type Err = Error;

    /// Parses the 8-character {+,0,−} code, e.g. "+000000+".
    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().collect();
        if chars.len() != N_COEFFS {
            return Err(Error::Channel(format!(
                "expected 8 characters of +, 0, -, got {s:?}"
            )));
        }
        let mut coeffs = [0i8; N_COEFFS];
        for (i, ch) in chars.into_iter().enumerate() {
            coeffs[i] = match ch {
                '+' => 1,
                '0' => 0,
                '-' => -1,
                other => {
                    return Err(Error::Channel(format!(
                        "invalid character {other:?} in channel code {s:?}"
                    )))
                }
            };
        }
        ChannelSpec::new(coeffs)
    }
}

impl Serialize for ChannelSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ChannelSpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Builds the normalized three-qubit state of a channel.
pub fn channel_state(c: &ChannelSpec) -> PureState {
    let n = c.n_nonzero() as f64;
    let scale = 1.0 / n.sqrt();
    let mut amps = vec![Complex64::new(0.0, 0.0); 8];
    for (i, &k) in c.coeffs().iter().enumerate() {
        if k != 0 {
            amps[COEFF_BASIS_INDEX[i]] = Complex64::new(f64::from(k) * scale, 0.0);
        }
    }
    PureState::new(3, amps).expect("fixed size")
}

/// Returns the orthonormal single-qubit pair (|φ⟩, |χ⟩) defined by
/// |φ⟩ = A*|0⟩ − B|1⟩ and |χ⟩ = B*|0⟩ + A|1⟩, so that |0⟩ = A|φ⟩ + B|χ⟩ and
/// |1⟩ = −B*|φ⟩ + A*|χ⟩. Requires |A|² + |B|² = 1.
pub fn rotated_basis_pair(a: Complex64, b: Complex64) -> Result<(PureState, PureState)> {
    let norm = a.norm_sqr() + b.norm_sqr();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::NotNormalized((norm.sqrt() - 1.0).abs()));
    }
    let phi = PureState::new(1, vec![a.conj(), -b])?;
    let chi = PureState::new(1, vec![b.conj(), a])?;
    Ok((phi, chi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevec::apply;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn bell_states_have_expected_amplitudes() {
        let s = 1.0 / 2f64.sqrt();
        let phi_plus = bell_state(BellLabel::PhiPlus);
        assert!((phi_plus.amp(0b00).re - s).abs() < 1e-15);
        assert!((phi_plus.amp(0b11).re - s).abs() < 1e-15);
        let psi_minus = bell_state(BellLabel::PsiMinus);
        assert!((psi_minus.amp(0b01).re - s).abs() < 1e-15);
        assert!((psi_minus.amp(0b10).re + s).abs() < 1e-15);
    }

    #[test]
    fn bell_states_are_orthonormal() {
        for &x in &BellLabel::ALL {
            for &y in &BellLabel::ALL {
                let ip = bell_state(x).inner(&bell_state(y)).unwrap();
                let want = if x == y { 1.0 } else { 0.0 };
                assert!((ip - c(want, 0.0)).norm() < 1e-14, "{x:?} vs {y:?}");
            }
        }
    }

    #[test]
    fn bell_states_are_joint_pauli_eigenvectors() {
        // Eigenvalues of (σx⊗σx, σz⊗σz): Φ+ → (+,+), Φ- → (−,+),
        // Ψ+ → (+,−), Ψ- → (−,−).
        let xx = pauli_x().kron(&pauli_x()).unwrap();
        let zz = pauli_z().kron(&pauli_z()).unwrap();
        let expect = [
            (BellLabel::PhiPlus, 1.0, 1.0),
            (BellLabel::PhiMinus, -1.0, 1.0),
            (BellLabel::PsiPlus, 1.0, -1.0),
            (BellLabel::PsiMinus, -1.0, -1.0),
        ];
        for (label, ex, ez) in expect {
            let b = bell_state(label);
            let bx = apply(&xx, &[1, 2], &b).unwrap();
            let bz = apply(&zz, &[1, 2], &b).unwrap();
            for i in 0..4 {
                assert!((bx.amp(i) - b.amp(i) * ex).norm() < 1e-14, "{label:?} σxσx");
                assert!((bz.amp(i) - b.amp(i) * ez).norm() < 1e-14, "{label:?} σzσz");
            }
        }
    }

    #[test]
    fn hadamard_squares_to_identity_and_is_unitary() {
        let h = hadamard();
        let h2 = h.matmul(&h).unwrap();
        assert!((h2.entry(0, 0) - c(1.0, 0.0)).norm() < 1e-14);
        assert!(h2.entry(0, 1).norm() < 1e-14);
        assert!(h.is_unitary(1e-13));
        // Hermitian: H = H†.
        for r in 0..2 {
            for col in 0..2 {
                assert!((h.entry(r, col) - h.dagger().entry(r, col)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn hadamard_sends_one_to_minus_superposition() {
        let out = apply(&hadamard(), &[1], &PureState::basis(1, 1)).unwrap();
        let s = 1.0 / 2f64.sqrt();
        assert!((out.amp(0) - c(s, 0.0)).norm() < 1e-15);
        assert!((out.amp(1) - c(-s, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn channel_state_places_coefficients_in_listing_order() {
        let s = 1.0 / 2f64.sqrt();
        let ghz: ChannelSpec = "+000000+".parse().unwrap();
        let st = channel_state(&ghz);
        assert!((st.amp(0b000).re - s).abs() < 1e-15);
        assert!((st.amp(0b111).re - s).abs() < 1e-15);

        let cf: ChannelSpec = "00+00+00".parse().unwrap();
        let st = channel_state(&cf);
        assert!((st.amp(0b010).re - s).abs() < 1e-15);
        assert!((st.amp(0b101).re - s).abs() < 1e-15);
    }

    #[test]
    fn channel_state_with_all_coefficients_is_uniform() {
        let all: ChannelSpec = "++++++++".parse().unwrap();
        let st = channel_state(&all);
        let s = 1.0 / 8f64.sqrt();
        for i in 0..8 {
            assert!((st.amp(i).re - s).abs() < 1e-15);
        }
        assert!((st.norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn channel_parse_round_trips_and_rejects_invalid() {
        let all = ChannelSpec::enumerate_all();
        assert_eq!(all.len(), 6560);
        for ch in all.iter().step_by(97) {
            let code = ch.to_string();
            let back: ChannelSpec = code.parse().unwrap();
            assert_eq!(*ch, back);
        }
        assert!("++".parse::<ChannelSpec>().is_err());
        assert!("00000000".parse::<ChannelSpec>().is_err());
        assert!("+000*00+".parse::<ChannelSpec>().is_err());
    }

    #[test]
    fn rotated_pair_at_identity_is_canonical_basis() {
        let (phi, chi) = rotated_basis_pair(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        assert!((phi.amp(0) - c(1.0, 0.0)).norm() < 1e-15);
        assert!(phi.amp(1).norm() < 1e-15);
        assert!((chi.amp(1) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn rotated_pair_is_orthonormal_for_random_parameters() {
        let draws = [
            (c(0.6, 0.0), c(0.8, 0.0)),
            (c(0.6, 0.3), c(-0.1, 0.734_846_922_834_953_4)),
            (c(0.0, 1.0), c(0.0, 0.0)),
        ];
        for (a, b) in draws {
            let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
            let (a, b) = (a / norm, b / norm);
            let (phi, chi) = rotated_basis_pair(a, b).unwrap();
            assert!(phi.inner(&chi).unwrap().norm() < 1e-13);
            assert!((phi.norm() - 1.0).abs() < 1e-13);
            assert!((chi.norm() - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn rotated_pair_rejects_unnormalized_parameters() {
        assert!(rotated_basis_pair(c(1.0, 0.0), c(1.0, 0.0)).is_err());
    }
}
