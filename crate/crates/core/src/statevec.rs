//! Dense complex-amplitude representation of up to five qubits.
//!
//! Qubits are labeled 1..=n; qubit i occupies bit position (n − i) of the
//! amplitude index, so qubit 1 is the most significant bit and basis kets
//! read left to right, e.g. index 0b110 of a 3-qubit register is |110⟩.

use num_complex::Complex64;

use crate::{Error, Result};

/// Largest register size supported by this crate.
pub const MAX_QUBITS: usize = 5;

/// Absolute tolerance for norm and unitarity checks.
pub const NORM_TOL: f64 = 1e-12;

/// Probabilities below this threshold are treated as an exactly impossible
/// branch; the corresponding residual is flagged absent.
pub const ZERO_PROB: f64 = 1e-24;

/// Normalized complex amplitude vector over `n_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl PureState {
    /// Builds a state from raw amplitudes (length must equal 2^n_qubits).
    pub fn new(n_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits(n_qubits));
        }
        if amps.len() != 1 << n_qubits {
            return Err(Error::AmplitudeCount {
                n_qubits,
                found: amps.len(),
            });
        }
        Ok(PureState { n_qubits, amps })
    }

    /// The computational basis state |index⟩.
    pub fn basis(n_qubits: usize, index: usize) -> Self {
        assert!(n_qubits >= 1 && n_qubits <= MAX_QUBITS);
        assert!(index < 1 << n_qubits, "basis index out of range");
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        PureState { n_qubits, amps }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amp(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    /// Euclidean norm of the amplitude vector.
    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    /// Returns the state scaled to unit norm; errors on a zero vector.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n * n < ZERO_PROB {
            return Err(Error::ZeroVector);
        }
        Ok(self.scaled(Complex64::new(1.0 / n, 0.0)))
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        PureState {
            n_qubits: self.n_qubits,
            amps: self.amps.iter().map(|a| a * c).collect(),
        }
    }

    /// Inner product ⟨self|other⟩ (conjugate-linear in `self`).
    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::Shape(format!(
                "inner product between {} and {} qubit states",
                self.n_qubits, other.n_qubits
            )));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Bit position of qubit `q` (1-based) within the amplitude index.
    fn bit_pos(&self, q: usize) -> usize {
        self.n_qubits - q
    }
}

/// Dense 2^n × 2^n complex matrix acting on an n-qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearOp {
    n_qubits: usize,
    mat: Vec<Complex64>, // row-major
}

impl LinearOp {
    /// Builds an operator from a row-major matrix of size 2^n × 2^n.
    pub fn new(n_qubits: usize, mat: Vec<Complex64>) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits(n_qubits));
        }
        let dim = 1usize << n_qubits;
        if mat.len() != dim * dim {
            return Err(Error::Shape(format!(
                "operator matrix has {} entries, expected {}",
                mat.len(),
                dim * dim
            )));
        }
        Ok(LinearOp { n_qubits, mat })
    }

    /// Convenience constructor from real entries.
    pub fn from_real(n_qubits: usize, entries: &[f64]) -> Result<Self> {
        LinearOp::new(
            n_qubits,
            entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn identity(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        let mut mat = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            mat[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        LinearOp { n_qubits, mat }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.mat[row * self.dim() + col]
    }

    /// Matrix product self · other.
    pub fn matmul(&self, other: &LinearOp) -> Result<LinearOp> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::Shape("operator size mismatch in product".into()));
        }
        let dim = self.dim();
        let mut mat = vec![Complex64::new(0.0, 0.0); dim * dim];
        for r in 0..dim {
            for k in 0..dim {
                let a = self.entry(r, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..dim {
                    mat[r * dim + c] += a * other.entry(k, c);
                }
            }
        }
        Ok(LinearOp { n_qubits: self.n_qubits, mat })
    }

    /// Kronecker product self ⊗ other; `other`'s qubits become the least
    /// significant bits, matching [`tensor`] on states.
    pub fn kron(&self, other: &LinearOp) -> Result<LinearOp> {
        let n = self.n_qubits + other.n_qubits;
        if n > MAX_QUBITS {
            return Err(Error::TooManyQubits(n));
        }
        let (da, db) = (self.dim(), other.dim());
        let dim = da * db;
        let mut mat = vec![Complex64::new(0.0, 0.0); dim * dim];
        for ra in 0..da {
            for ca in 0..da {
                let a = self.entry(ra, ca);
                for rb in 0..db {
                    for cb in 0..db {
                        mat[(ra * db + rb) * dim + (ca * db + cb)] = a * other.entry(rb, cb);
                    }
                }
            }
        }
        Ok(LinearOp { n_qubits: n, mat })
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> LinearOp {
        let dim = self.dim();
        let mut mat = vec![Complex64::new(0.0, 0.0); dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                mat[c * dim + r] = self.entry(r, c).conj();
            }
        }
        LinearOp { n_qubits: self.n_qubits, mat }
    }

    /// Checks U†U = I entrywise within `tol`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        let dim = self.dim();
        let prod = self.dagger().matmul(self).expect("same size");
        for r in 0..dim {
            for c in 0..dim {
                let want = if r == c { 1.0 } else { 0.0 };
                if (prod.entry(r, c) - Complex64::new(want, 0.0)).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// Applies the full-size matrix to a raw amplitude vector.
    pub fn apply_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        let dim = self.dim();
        assert_eq!(v.len(), dim);
        let mut out = vec![Complex64::new(0.0, 0.0); dim];
        for r in 0..dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in 0..dim {
                acc += self.entry(r, c) * v[c];
            }
            out[r] = acc;
        }
        out
    }
}

/// Result of a projective measurement branch.
#[derive(Debug, Clone)]
pub struct Projection {
    /// Renormalized post-measurement state of the remaining qubits;
    /// `None` flags an impossible (zero-probability) branch.
    pub residual: Option<PureState>,
    /// Unnormalized partial inner product over the remaining qubits, in
    /// ascending original qubit order.
    pub raw: Vec<Complex64>,
    /// Squared norm of `raw`, clamped to [0, 1].
    pub probability: f64,
}

/// Kronecker product of two registers; `b`'s qubits are relabeled to follow
/// `a`'s, i.e. qubit j of `b` becomes qubit a.n_qubits + j of the result.
pub fn tensor(a: &PureState, b: &PureState) -> Result<PureState> {
    let n = a.n_qubits + b.n_qubits;
    if n > MAX_QUBITS {
        return Err(Error::TooManyQubits(n));
    }
    let mut amps = Vec::with_capacity(1 << n);
    for x in &a.amps {
        for y in &b.amps {
            amps.push(x * y);
        }
    }
    Ok(PureState { n_qubits: n, amps })
}

fn check_targets(s: &PureState, targets: &[usize]) -> Result<()> {
    if targets.is_empty() {
        return Err(Error::Targets("empty target list".into()));
    }
    for (i, &t) in targets.iter().enumerate() {
        if t == 0 || t > s.n_qubits {
            return Err(Error::Targets(format!(
                "qubit {t} outside register of {} qubits",
                s.n_qubits
            )));
        }
        if targets[..i].contains(&t) {
            return Err(Error::Targets(format!("qubit {t} listed twice")));
        }
    }
    Ok(())
}

/// Applies a k-qubit operator to the listed target qubits (1-based labels).
/// `targets[0]` corresponds to the most significant bit of the operator's
/// own index space.
pub fn apply(op: &LinearOp, targets: &[usize], s: &PureState) -> Result<PureState> {
    check_targets(s, targets)?;
    let k = targets.len();
    if op.n_qubits != k {
        return Err(Error::Shape(format!(
            "{}-qubit operator applied to {} targets",
            op.n_qubits, k
        )));
    }
    let positions: Vec<usize> = targets.iter().map(|&t| s.bit_pos(t)).collect();
    let dim = s.dim();
    let subdim = 1usize << k;

    // For every full index, gather the sub-index spelled by the target bits,
    // then mix amplitudes that agree outside the targets.
    let sub_of = |i: usize| -> usize {
        let mut r = 0usize;
        for (j, &p) in positions.iter().enumerate() {
            r |= ((i >> p) & 1) << (k - 1 - j);
        }
        r
    };
    let with_sub = |i: usize, r: usize| -> usize {
        let mut out = i;
        for (j, &p) in positions.iter().enumerate() {
            let bit = (r >> (k - 1 - j)) & 1;
            out = (out & !(1 << p)) | (bit << p);
        }
        out
    };

    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    for i in 0..dim {
        let r = sub_of(i);
        let mut acc = Complex64::new(0.0, 0.0);
        for c in 0..subdim {
            let e = op.entry(r, c);
            if e != Complex64::new(0.0, 0.0) {
                acc += e * s.amps[with_sub(i, c)];
            }
        }
        amps[i] = acc;
    }
    Ok(PureState { n_qubits: s.n_qubits, amps })
}

/// Projects the listed target qubits onto the state `onto` and returns the
/// collapsed branch over the remaining qubits (kept in ascending original
/// order). `onto` must span exactly the target qubits, with `targets[0]` as
/// its most significant bit.
pub fn project(s: &PureState, targets: &[usize], onto: &PureState) -> Result<Projection> {
    check_targets(s, targets)?;
    let k = targets.len();
    if onto.n_qubits != k {
        return Err(Error::Shape(format!(
            "projector spans {} qubits but {} targets given",
            onto.n_qubits, k
        )));
    }
    if !onto.is_normalized(1e-10) {
        return Err(Error::NotNormalized((onto.norm() - 1.0).abs()));
    }
    if k == s.n_qubits {
        return Err(Error::Targets(
            "projection must leave at least one qubit".into(),
        ));
    }

    let positions: Vec<usize> = targets.iter().map(|&t| s.bit_pos(t)).collect();
    let rest: Vec<usize> = (1..=s.n_qubits)
        .filter(|q| !targets.contains(q))
        .map(|q| s.bit_pos(q))
        .collect(); // descending bit positions → MSB-first for the residual

    let m = s.n_qubits - k;
    let mut raw = vec![Complex64::new(0.0, 0.0); 1 << m];
    for (ri, amp) in raw.iter_mut().enumerate() {
        // Spell the full index from the residual index and each sub-index.
        let mut base = 0usize;
        for (j, &p) in rest.iter().enumerate() {
            base |= ((ri >> (m - 1 - j)) & 1) << p;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (r, o) in onto.amps.iter().enumerate() {
            if *o == Complex64::new(0.0, 0.0) {
                continue;
            }
            let mut full = base;
            for (j, &p) in positions.iter().enumerate() {
                let bit = (r >> (k - 1 - j)) & 1;
                full |= bit << p;
            }
            acc += o.conj() * s.amps[full];
        }
        *amp = acc;
    }

    let p: f64 = raw.iter().map(|a| a.norm_sqr()).sum();
    let probability = if p < ZERO_PROB { 0.0 } else { p.min(1.0) };
    let residual = if p < ZERO_PROB {
        None
    } else {
        let scale = Complex64::new(1.0 / p.sqrt(), 0.0);
        Some(PureState {
            n_qubits: m,
            amps: raw.iter().map(|a| a * scale).collect(),
        })
    };
    Ok(Projection {
        residual,
        raw,
        probability,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn h() -> LinearOp {
        let s = 1.0 / 2f64.sqrt();
        LinearOp::from_real(1, &[s, s, s, -s]).unwrap()
    }

    fn cnot() -> LinearOp {
        LinearOp::from_real(
            2,
            &[
                1.0, 0.0, 0.0, 0.0, //
                0.0, 1.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 1.0, //
                0.0, 0.0, 1.0, 0.0,
            ],
        )
        .unwrap()
    }

    #[test]
    fn tensor_of_basis_states_is_basis_state() {
        let a = PureState::basis(1, 0);
        let b = PureState::basis(1, 0);
        let t = tensor(&a, &b).unwrap();
        assert_eq!(t.amplitudes()[0], c(1.0, 0.0));
        assert!(t.amplitudes()[1..].iter().all(|&x| x == c(0.0, 0.0)));
    }

    #[test]
    fn tensor_matches_direct_kronecker_product() {
        let alpha = c(0.6, 0.0);
        let gamma = c(0.0, 0.8);
        let mut two = vec![c(0.0, 0.0); 4];
        two[0b00] = alpha;
        two[0b11] = gamma;
        let input = PureState::new(2, two).unwrap();
        let s = 1.0 / 2f64.sqrt();
        let mut three = vec![c(0.0, 0.0); 8];
        three[0b000] = c(s, 0.0);
        three[0b111] = c(s, 0.0);
        let chan = PureState::new(3, three).unwrap();

        let t = tensor(&input, &chan).unwrap();
        assert_eq!(t.n_qubits(), 5);
        for (i, &amp) in t.amplitudes().iter().enumerate() {
            let expect = match i {
                0b00000 => alpha * s,
                0b00111 => alpha * s,
                0b11000 => gamma * s,
                0b11111 => gamma * s,
                _ => c(0.0, 0.0),
            };
            assert!((amp - expect).norm() < 1e-15, "index {i}");
        }
    }

    #[test]
    fn tensor_appends_zero_qubit() {
        let s = 1.0 / 2f64.sqrt();
        let phi = PureState::new(2, vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)]).unwrap();
        let t = tensor(&phi, &PureState::basis(1, 0)).unwrap();
        assert!((t.amp(0b000).re - s).abs() < 1e-15);
        assert!((t.amp(0b110).re - s).abs() < 1e-15);
        assert!((t.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn tensor_rejects_oversized_register() {
        let a = PureState::basis(3, 0);
        let b = PureState::basis(3, 0);
        assert!(matches!(tensor(&a, &b), Err(Error::TooManyQubits(6))));
    }

    #[test]
    fn hadamard_on_zero_gives_plus() {
        let out = apply(&h(), &[1], &PureState::basis(1, 0)).unwrap();
        let s = 1.0 / 2f64.sqrt();
        assert!((out.amp(0) - c(s, 0.0)).norm() < 1e-15);
        assert!((out.amp(1) - c(s, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn hadamard_squares_to_identity() {
        let one = PureState::basis(1, 1);
        let out = apply(&h(), &[1], &apply(&h(), &[1], &one).unwrap()).unwrap();
        assert!((out.amp(1) - c(1.0, 0.0)).norm() < 1e-12);
        assert!(out.amp(0).norm() < 1e-12);
    }

    #[test]
    fn cnot_flips_target_when_control_set() {
        // |10⟩ on qubits (4,5) of a 5-qubit register → |11⟩.
        let mut amps = vec![c(0.0, 0.0); 32];
        amps[0b00010] = c(1.0, 0.0);
        let s = PureState::new(5, amps).unwrap();
        let out = apply(&cnot(), &[4, 5], &s).unwrap();
        assert!((out.amp(0b00011) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn apply_embeds_on_chosen_qubit_only() {
        // X on qubit 2 of |000⟩ → |010⟩.
        let x = LinearOp::from_real(1, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let out = apply(&x, &[2], &PureState::basis(3, 0)).unwrap();
        assert!((out.amp(0b010) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn apply_rejects_shape_mismatch() {
        let out = apply(&cnot(), &[1], &PureState::basis(2, 0));
        assert!(matches!(out, Err(Error::Shape(_))));
    }

    #[test]
    fn projecting_state_onto_itself_has_probability_one() {
        let s = 1.0 / 2f64.sqrt();
        let phi = PureState::new(2, vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)]).unwrap();
        let full = tensor(&phi, &PureState::basis(1, 0)).unwrap();
        let proj = project(&full, &[1, 2], &phi).unwrap();
        assert!((proj.probability - 1.0).abs() < 1e-12);
        let residual = proj.residual.unwrap();
        assert!((residual.amp(0) - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn projecting_onto_orthogonal_state_is_flagged_impossible() {
        let s = 1.0 / 2f64.sqrt();
        let psi_plus =
            PureState::new(2, vec![c(0.0, 0.0), c(s, 0.0), c(s, 0.0), c(0.0, 0.0)]).unwrap();
        let full = PureState::basis(3, 0); // |000⟩
        let proj = project(&full, &[1, 2], &psi_plus).unwrap();
        assert_eq!(proj.probability, 0.0);
        assert!(proj.residual.is_none());
    }

    #[test]
    fn projection_keeps_remaining_qubits_in_original_order() {
        // State |0⟩₁|1⟩₂|0⟩₃ projected on qubit 2 → residual |00⟩ on (1,3).
        let mut amps = vec![c(0.0, 0.0); 8];
        amps[0b010] = c(1.0, 0.0);
        let s = PureState::new(3, amps).unwrap();
        let proj = project(&s, &[2], &PureState::basis(1, 1)).unwrap();
        assert!((proj.probability - 1.0).abs() < 1e-12);
        assert!((proj.residual.unwrap().amp(0b00) - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn kron_of_operators_matches_apply_on_separate_targets() {
        let x = LinearOp::from_real(1, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let z = LinearOp::from_real(1, &[1.0, 0.0, 0.0, -1.0]).unwrap();
        let xz = x.kron(&z).unwrap();
        let s = PureState::new(
            2,
            vec![c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(-0.5, 0.0)],
        )
        .unwrap();
        let via_kron = apply(&xz, &[1, 2], &s).unwrap();
        let via_steps = apply(&z, &[2], &apply(&x, &[1], &s).unwrap()).unwrap();
        for i in 0..4 {
            assert!((via_kron.amp(i) - via_steps.amp(i)).norm() < 1e-14);
        }
    }

    #[test]
    fn unitarity_check_accepts_hadamard_rejects_scaling() {
        assert!(h().is_unitary(1e-13));
        let m = LinearOp::from_real(1, &[2.0, 0.0, 0.0, 2.0]).unwrap();
        assert!(!m.is_unitary(1e-13));
    }
}
