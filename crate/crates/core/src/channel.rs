//! Quantum channels in Kraus form and their action on POVMs.
//!
//! A pre-processing channel `𝓔` acts on a measurement through its adjoint:
//! `{M_x} ↦ {𝓔†(M_x)}`. The free pre-processings for measurement coherence
//! are the unital detection-incoherent (UDI) channels, those with
//! `Δ∘𝓔 = Δ∘𝓔∘Δ` and `𝓔(I) = I`.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::measurement::Povm;
use crate::operator::{max_abs, CMatrix, HermitianOperator};
use crate::random::random_probability_vector;
use crate::rng::{self, Rng};
use crate::tolerance::{CHANNEL_TOL, EIG_CUTOFF};

/// Completely positive trace-preserving map `ρ ↦ Σ_k K_k ρ K_k†`.
#[derive(Clone, Debug, PartialEq)]
pub struct KrausChannel {
    in_dim: usize,
    out_dim: usize,
    kraus: Vec<CMatrix>,
}

impl KrausChannel {
    /// Checks shapes and trace preservation `Σ K†K = I` within [`CHANNEL_TOL`].
    pub fn new(kraus: Vec<CMatrix>) -> Result<Self> {
        let first = kraus
            .first()
            .ok_or_else(|| Error::InvalidChannel("no Kraus operators".into()))?;
        let (out_dim, in_dim) = first.shape();
        if let Some((k, bad)) = kraus
            .iter()
            .enumerate()
            .find(|(_, k)| k.shape() != (out_dim, in_dim))
        {
            return Err(Error::InvalidChannel(format!(
                "Kraus operator {k} is {}x{}, expected {out_dim}x{in_dim}",
                bad.nrows(),
                bad.ncols()
            )));
        }
        let ch = Self {
            in_dim,
            out_dim,
            kraus,
        };
        let residual = ch.trace_preservation_residual();
        if residual > CHANNEL_TOL {
            return Err(Error::NotTracePreserving { residual });
        }
        Ok(ch)
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            in_dim: dim,
            out_dim: dim,
            kraus: vec![CMatrix::identity(dim, dim)],
        }
    }

    /// Complete dephasing, Kraus operators `{|i⟩⟨i|}`.
    pub fn dephasing(dim: usize) -> Self {
        let kraus = (0..dim)
            .map(|i| HermitianOperator::basis_projector(dim, i).into_entries())
            .collect();
        Self {
            in_dim: dim,
            out_dim: dim,
            kraus,
        }
    }

    /// Convex combination `Σ_i w_i 𝓔_i` of channels with equal shapes.
    pub fn mixture(parts: &[(f64, KrausChannel)]) -> Result<Self> {
        let mut kraus = Vec::new();
        for (w, ch) in parts {
            if *w < 0.0 {
                return Err(Error::InvalidChannel(format!("negative weight {w}")));
            }
            let s = Complex64::new(w.sqrt(), 0.0);
            kraus.extend(ch.kraus.iter().map(|k| k * s));
        }
        Self::new(kraus)
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn kraus(&self) -> &[CMatrix] {
        &self.kraus
    }

    /// `Σ K ρ K†` on an arbitrary (not necessarily Hermitian) matrix.
    pub fn apply_matrix(&self, rho: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(self.out_dim, self.out_dim);
        for k in &self.kraus {
            out += k * rho * k.adjoint();
        }
        out
    }

    /// `Σ K† M K` on an arbitrary matrix.
    pub fn adjoint_apply_matrix(&self, m: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(self.in_dim, self.in_dim);
        for k in &self.kraus {
            out += k.adjoint() * m * k;
        }
        out
    }

    /// `max |Σ K†K − I|`.
    pub fn trace_preservation_residual(&self) -> f64 {
        let mut s = CMatrix::zeros(self.in_dim, self.in_dim);
        for k in &self.kraus {
            s += k.adjoint() * k;
        }
        max_abs(&(s - CMatrix::identity(self.in_dim, self.in_dim)))
    }

    /// `max |Σ K K† − I|`; infinite for non-square channels.
    pub fn unital_residual(&self) -> f64 {
        if self.in_dim != self.out_dim {
            return f64::INFINITY;
        }
        let mut s = CMatrix::zeros(self.out_dim, self.out_dim);
        for k in &self.kraus {
            s += k * k.adjoint();
        }
        max_abs(&(s - CMatrix::identity(self.out_dim, self.out_dim)))
    }
}

/// A unitary `U`, acting as `ρ ↦ U ρ U†`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryChannel {
    u: CMatrix,
}

impl UnitaryChannel {
    pub fn new(u: CMatrix) -> Result<Self> {
        if !u.is_square() {
            return Err(Error::NotSquare {
                rows: u.nrows(),
                cols: u.ncols(),
            });
        }
        let n = u.nrows();
        let residual = max_abs(&(u.adjoint() * &u - CMatrix::identity(n, n)));
        if residual > CHANNEL_TOL {
            return Err(Error::NotUnitary { residual });
        }
        Ok(Self { u })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.u
    }

    pub fn dim(&self) -> usize {
        self.u.nrows()
    }

    /// The channel of `U†`.
    pub fn adjoint(&self) -> Self {
        Self { u: self.u.adjoint() }
    }

    pub fn to_kraus(&self) -> KrausChannel {
        KrausChannel {
            in_dim: self.dim(),
            out_dim: self.dim(),
            kraus: vec![self.u.clone()],
        }
    }

    pub fn hadamard() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self {
            u: CMatrix::from_row_slice(2, 2, &[h, h, h, -h]),
        }
    }

    /// `Σ_i e^{iθ_i} |π(i)⟩⟨i|`. Maps diagonal matrices to diagonal matrices.
    pub fn phase_permutation(perm: &[usize], phases: &[f64]) -> Result<Self> {
        let n = perm.len();
        if phases.len() != n {
            return Err(Error::LengthMismatch {
                left: n,
                right: phases.len(),
            });
        }
        let mut seen = vec![false; n];
        let mut u = CMatrix::zeros(n, n);
        for (i, &p) in perm.iter().enumerate() {
            if p >= n || seen[p] {
                return Err(Error::OutOfRange {
                    what: "permutation image",
                    value: p,
                });
            }
            seen[p] = true;
            u[(p, i)] = Complex64::from_polar(1.0, phases[i]);
        }
        Ok(Self { u })
    }
}

/// `Σ_k K_k ρ K_k†`.
pub fn apply(ch: &KrausChannel, rho: &HermitianOperator) -> Result<HermitianOperator> {
    if rho.dim() != ch.in_dim {
        return Err(Error::DimensionMismatch {
            expected: ch.in_dim,
            found: rho.dim(),
        });
    }
    Ok(HermitianOperator::from_matrix(ch.apply_matrix(rho.entries())))
}

/// Heisenberg-picture action `Σ_k K_k† M K_k`.
pub fn adjoint_apply(ch: &KrausChannel, effect: &HermitianOperator) -> Result<HermitianOperator> {
    if effect.dim() != ch.out_dim {
        return Err(Error::DimensionMismatch {
            expected: ch.out_dim,
            found: effect.dim(),
        });
    }
    Ok(HermitianOperator::from_matrix(
        ch.adjoint_apply_matrix(effect.entries()),
    ))
}

/// `M ∘ 𝓔 = {𝓔†(M_x)}`. The bipartite split survives when the channel is
/// square.
pub fn pre_process(povm: &Povm, ch: &KrausChannel) -> Result<Povm> {
    let effects = povm
        .effects()
        .iter()
        .map(|m| adjoint_apply(ch, m))
        .collect::<Result<Vec<_>>>()?;
    let split = if ch.in_dim == ch.out_dim {
        povm.dims_split()
    } else {
        None
    };
    Povm::from_parts(effects, split)
}

/// True iff `max |Σ K K† − I| ≤ tol` (square channels only).
pub fn is_unital(ch: &KrausChannel, tol: f64) -> bool {
    ch.unital_residual() <= tol
}

fn dephase_matrix(m: &CMatrix) -> CMatrix {
    CMatrix::from_fn(m.nrows(), m.ncols(), |i, j| {
        if i == j {
            m[(i, i)]
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

fn matrix_unit(dim: usize, i: usize, j: usize) -> CMatrix {
    let mut e = CMatrix::zeros(dim, dim);
    e[(i, j)] = Complex64::new(1.0, 0.0);
    e
}

/// Worst-case violations of the two equivalent detection-incoherence
/// conditions over the matrix-unit basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DetectionResidual {
    /// `max_ij ‖Δ𝓔(E_ij) − Δ𝓔Δ(E_ij)‖_max`.
    pub forward: f64,
    /// `max_ij ‖𝓔†Δ(E_ij) − Δ𝓔†Δ(E_ij)‖_max`.
    pub adjoint: f64,
}

impl DetectionResidual {
    pub fn max(&self) -> f64 {
        self.forward.max(self.adjoint)
    }
}

/// Evaluates both forms of `Δ∘𝓔 = Δ∘𝓔∘Δ` on every matrix unit. The
/// condition is linear, so the basis check is complete.
pub fn detection_incoherence_residual(ch: &KrausChannel) -> DetectionResidual {
    let mut forward: f64 = 0.0;
    for i in 0..ch.in_dim {
        for j in 0..ch.in_dim {
            let e = matrix_unit(ch.in_dim, i, j);
            let lhs = dephase_matrix(&ch.apply_matrix(&e));
            let rhs = dephase_matrix(&ch.apply_matrix(&dephase_matrix(&e)));
            forward = forward.max(max_abs(&(lhs - rhs)));
        }
    }
    let mut adjoint: f64 = 0.0;
    for i in 0..ch.out_dim {
        for j in 0..ch.out_dim {
            let e = dephase_matrix(&matrix_unit(ch.out_dim, i, j));
            let lhs = ch.adjoint_apply_matrix(&e);
            let rhs = dephase_matrix(&lhs);
            adjoint = adjoint.max(max_abs(&(lhs - rhs)));
        }
    }
    DetectionResidual { forward, adjoint }
}

/// True iff both detection-incoherence residuals are within `tol`.
pub fn is_detection_incoherent(ch: &KrausChannel, tol: f64) -> bool {
    ch.in_dim == ch.out_dim && detection_incoherence_residual(ch).max() <= tol
}

/// Generalized CNOT `|i, j⟩ ↦ |i, j ⊕ i⟩` on `d ⊗ d`.
pub fn cnot_unitary(d: usize) -> UnitaryChannel {
    let n = d * d;
    let mut u = CMatrix::zeros(n, n);
    for i in 0..d {
        for j in 0..d {
            u[(i * d + (j + i) % d, i * d + j)] = Complex64::new(1.0, 0.0);
        }
    }
    UnitaryChannel { u }
}

/// Cyclic shift `|i⟩ ↦ |i ⊕ y⟩`.
pub fn shift_unitary(d: usize, y: usize) -> Result<UnitaryChannel> {
    if y >= d {
        return Err(Error::OutOfRange {
            what: "shift",
            value: y,
        });
    }
    let mut u = CMatrix::zeros(d, d);
    for i in 0..d {
        u[((i + y) % d, i)] = Complex64::new(1.0, 0.0);
    }
    Ok(UnitaryChannel { u })
}

/// The pre-processing channel with Kraus operator `U_cnot†`, whose adjoint
/// sends an effect `X` to `U_cnot X U_cnot†`.
pub fn cnot_dagger_channel(d: usize) -> KrausChannel {
    cnot_unitary(d).adjoint().to_kraus()
}

/// Random UDI channel on dimension `d`, deterministic in `seed`.
///
/// Mixes one to three components, each UDI by construction: a phase
/// permutation of the computational basis, complete dephasing, and (when
/// `d = s²`) a generalized CNOT, its inverse, or a local shift, followed by
/// random diagonal phases.
pub fn random_udi_channel(d: usize, seed: u64) -> KrausChannel {
    let mut rng = rng::stream(seed, "random_udi_channel", 0);
    let root = (1..=d).find(|s| s * s >= d).unwrap_or(1);
    let structured = root * root == d && root >= 2;
    let parts = rng.random_range(1..=3usize);
    let weights = random_probability_vector(&mut rng, parts);
    let components: Vec<(f64, KrausChannel)> = weights
        .into_iter()
        .map(|w| {
            let kinds = if structured { 3 } else { 2 };
            let ch = match rng.random_range(0..kinds) {
                0 => random_phase_permutation(&mut rng, d).to_kraus(),
                1 => KrausChannel::dephasing(d),
                _ => random_structured_permutation(&mut rng, root).to_kraus(),
            };
            (w, ch)
        })
        .collect();
    KrausChannel::mixture(&components).expect("mixture of UDI channels")
}

fn random_phases(rng: &mut Rng, d: usize) -> Vec<f64> {
    (0..d)
        .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
        .collect()
}

fn random_phase_permutation(rng: &mut Rng, d: usize) -> UnitaryChannel {
    let mut perm: Vec<usize> = (0..d).collect();
    perm.shuffle(rng);
    let phases = random_phases(rng, d);
    UnitaryChannel::phase_permutation(&perm, &phases).expect("valid permutation")
}

fn random_structured_permutation(rng: &mut Rng, s: usize) -> UnitaryChannel {
    let base = match rng.random_range(0..4) {
        0 => cnot_unitary(s),
        1 => cnot_unitary(s).adjoint(),
        2 => {
            let y = rng.random_range(0..s);
            let shift = shift_unitary(s, y).expect("y < s");
            UnitaryChannel {
                u: CMatrix::identity(s, s).kronecker(shift.matrix()),
            }
        }
        _ => {
            let y = rng.random_range(0..s);
            let shift = shift_unitary(s, y).expect("y < s");
            UnitaryChannel {
                u: shift.matrix().kronecker(&CMatrix::identity(s, s)),
            }
        }
    };
    let phases = random_phases(rng, s * s);
    let diag = CMatrix::from_fn(s * s, s * s, |i, j| {
        if i == j {
            Complex64::from_polar(1.0, phases[i])
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    UnitaryChannel {
        u: diag * base.matrix(),
    }
}

/// The quantum-to-classical channel `ρ ↦ Σ_x tr(M_x ρ)|x⟩⟨x|` of a POVM,
/// with Kraus operators `√λ |x⟩⟨v|` from each effect's eigendecomposition.
pub fn measurement_channel(povm: &Povm) -> KrausChannel {
    let (d, n) = (povm.dim(), povm.outcomes());
    let mut kraus = Vec::new();
    for (x, m) in povm.effects().iter().enumerate() {
        let spec = m.spectrum();
        for (k, &l) in spec.eigenvalues().iter().enumerate() {
            if l <= EIG_CUTOFF {
                continue;
            }
            let v = spec.eigenvectors().column(k);
            let mut op = CMatrix::zeros(n, d);
            for i in 0..d {
                op[(x, i)] = v[i].conj() * l.sqrt();
            }
            kraus.push(op);
        }
    }
    KrausChannel {
        in_dim: d,
        out_dim: n,
        kraus,
    }
}

/// `(max ‖Δ𝓔(E_ij) − 𝓔(E_ij)‖, max ‖Δ𝓔Δ(E_ij) − 𝓔(E_ij)‖)` over matrix
/// units: how far `𝓔` is from having classical output, and from being a
/// classical channel.
pub fn classicality_residuals(ch: &KrausChannel) -> (f64, f64) {
    let mut out_classical: f64 = 0.0;
    let mut classical: f64 = 0.0;
    for i in 0..ch.in_dim {
        for j in 0..ch.in_dim {
            let e = matrix_unit(ch.in_dim, i, j);
            let image = ch.apply_matrix(&e);
            out_classical = out_classical.max(max_abs(&(dephase_matrix(&image) - &image)));
            let sandwiched = dephase_matrix(&ch.apply_matrix(&dephase_matrix(&e)));
            classical = classical.max(max_abs(&(sandwiched - &image)));
        }
    }
    (out_classical, classical)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::dephase;
    use crate::random::{random_density, random_psd, random_unital_channel};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn plus() -> HermitianOperator {
        HermitianOperator::real_ket_bra(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2])
    }

    fn amplitude_damping(gamma: f64) -> KrausChannel {
        let c = |x: f64| Complex64::new(x, 0.0);
        KrausChannel::new(vec![
            CMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c((1.0 - gamma).sqrt())]),
            CMatrix::from_row_slice(2, 2, &[c(0.0), c(gamma.sqrt()), c(0.0), c(0.0)]),
        ])
        .unwrap()
    }

    #[test]
    fn rejects_non_trace_preserving() {
        let k = CMatrix::identity(2, 2) * Complex64::new(0.5, 0.0);
        assert!(matches!(
            KrausChannel::new(vec![k]),
            Err(Error::NotTracePreserving { .. })
        ));
        assert!(KrausChannel::new(vec![]).is_err());
    }

    #[test]
    fn apply_examples() {
        let rho = plus();
        let out = apply(&KrausChannel::identity(2), &rho).unwrap();
        assert!(out.max_abs_diff(&rho) < 1e-15);
        let out = apply(&KrausChannel::dephasing(2), &rho).unwrap();
        assert!(out.max_abs_diff(&HermitianOperator::diagonal(&[0.5, 0.5])) < 1e-15);
        let plus_zero = HermitianOperator::real_ket_bra(&[FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2, 0.0]);
        let out = apply(&cnot_unitary(2).to_kraus(), &plus_zero).unwrap();
        let phi = HermitianOperator::real_ket_bra(&[FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2]);
        assert!(out.max_abs_diff(&phi) < 1e-15);
        assert!(apply(&KrausChannel::identity(3), &rho).is_err());
    }

    #[test]
    fn adjoint_examples() {
        let mut rng = rng::seeded(1);
        let m = random_psd(&mut rng, 3, 3);
        let out = adjoint_apply(&KrausChannel::identity(3), &m).unwrap();
        assert!(out.max_abs_diff(&m) < 1e-14);
        let u = UnitaryChannel::new(crate::random::random_unitary(&mut rng, 3)).unwrap();
        let out = adjoint_apply(&u.to_kraus(), &m).unwrap();
        let expected = m.conjugated_by(&u.matrix().adjoint());
        assert!(out.max_abs_diff(&expected) < 1e-13);
        let out = adjoint_apply(&KrausChannel::dephasing(3), &m).unwrap();
        assert!(out.max_abs_diff(&dephase(&m)) < 1e-14);
    }

    #[test]
    fn adjoint_duality_on_random_channels() {
        let mut rng = rng::seeded(2);
        for _ in 0..20 {
            let ch = random_unital_channel(&mut rng, 3, 3);
            let rho = random_density(&mut rng, 3);
            let m = random_psd(&mut rng, 3, 2);
            let lhs = m.trace_product(&apply(&ch, &rho).unwrap());
            let rhs = adjoint_apply(&ch, &m).unwrap().trace_product(&rho);
            assert!((lhs - rhs).abs() <= 1e-10);
        }
    }

    #[test]
    fn cnot_dagger_preprocessing_gives_bell_measurement() {
        let h = FRAC_1_SQRT_2;
        let pm = Povm::new(vec![plus(), HermitianOperator::real_ket_bra(&[h, -h])]).unwrap();
        let product = pm.tensor(&Povm::computational_basis(2));
        let bell = pre_process(&product, &cnot_dagger_channel(2)).unwrap();
        let expected = [
            HermitianOperator::real_ket_bra(&[h, 0.0, 0.0, h]),
            HermitianOperator::real_ket_bra(&[0.0, h, h, 0.0]),
            HermitianOperator::real_ket_bra(&[h, 0.0, 0.0, -h]),
            HermitianOperator::real_ket_bra(&[0.0, h, -h, 0.0]),
        ];
        for (got, want) in bell.effects().iter().zip(&expected) {
            assert!(got.max_abs_diff(want) < 1e-15);
        }
        assert_eq!(bell.dims_split(), Some((2, 2)));
    }

    #[test]
    fn unitality_examples() {
        assert!(is_unital(&UnitaryChannel::hadamard().to_kraus(), 1e-12));
        assert!(is_unital(&KrausChannel::dephasing(3), 1e-12));
        let ad = amplitude_damping(0.5);
        assert!(!is_unital(&ad, 1e-9));
        assert!((ad.unital_residual() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn detection_incoherence_examples() {
        assert!(is_detection_incoherent(&KrausChannel::dephasing(2), 1e-12));
        assert!(is_detection_incoherent(&cnot_dagger_channel(2), 1e-12));
        assert!(is_detection_incoherent(&cnot_dagger_channel(3), 1e-12));
        let h = detection_incoherence_residual(&UnitaryChannel::hadamard().to_kraus());
        assert!((h.forward - 0.5).abs() < 1e-12);
        assert!((h.adjoint - 0.5).abs() < 1e-12);
        assert!(!is_detection_incoherent(&UnitaryChannel::hadamard().to_kraus(), 1e-9));
    }

    #[test]
    fn detection_residual_forms_agree() {
        let mut rng = rng::seeded(4);
        for _ in 0..10 {
            let ch = random_unital_channel(&mut rng, 3, 2);
            let r = detection_incoherence_residual(&ch);
            assert_eq!(r.forward > 1e-9, r.adjoint > 1e-9);
        }
        for seed in 0..10 {
            let r = detection_incoherence_residual(&random_udi_channel(4, seed));
            assert!(r.forward <= 1e-12 && r.adjoint <= 1e-12);
        }
    }

    #[test]
    fn cnot_examples() {
        let c2 = cnot_unitary(2);
        let one = Complex64::new(1.0, 0.0);
        assert_eq!(c2.matrix()[(3, 2)], one);
        assert_eq!(c2.matrix()[(2, 3)], one);
        assert_eq!(c2.matrix()[(0, 0)], one);
        assert_eq!(cnot_unitary(1).matrix(), &CMatrix::identity(1, 1));
        // |1,1⟩ = 4 ↦ |1,2⟩ = 5 for d = 3.
        assert_eq!(cnot_unitary(3).matrix()[(5, 4)], one);
        assert!(UnitaryChannel::new(cnot_unitary(3).matrix().clone()).is_ok());
    }

    #[test]
    fn shift_examples() {
        let x = shift_unitary(2, 1).unwrap();
        let one = Complex64::new(1.0, 0.0);
        assert_eq!(x.matrix()[(0, 1)], one);
        assert_eq!(x.matrix()[(1, 0)], one);
        assert_eq!(shift_unitary(4, 0).unwrap().matrix(), &CMatrix::identity(4, 4));
        assert_eq!(shift_unitary(3, 2).unwrap().matrix()[(2, 0)], one);
        assert!(matches!(shift_unitary(3, 3), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn random_udi_channels_are_udi_and_seeded() {
        for seed in 0..100 {
            for d in [2, 3, 4] {
                let ch = random_udi_channel(d, seed);
                assert!(is_unital(&ch, 1e-9), "seed {seed} d {d}");
                assert!(is_detection_incoherent(&ch, 1e-9), "seed {seed} d {d}");
            }
        }
        assert_eq!(random_udi_channel(9, 17), random_udi_channel(9, 17));
    }

    #[test]
    fn measurement_channel_classicality() {
        let h = FRAC_1_SQRT_2;
        let coherent = Povm::new(vec![plus(), HermitianOperator::real_ket_bra(&[h, -h])]).unwrap();
        let (out, classical) = classicality_residuals(&measurement_channel(&coherent));
        assert!(out < 1e-12);
        assert!(classical > 0.1);
        let (out, classical) = classicality_residuals(&measurement_channel(&Povm::computational_basis(3)));
        assert!(out < 1e-12 && classical < 1e-12);
    }

    #[test]
    fn phase_permutation_rejects_non_permutations() {
        assert!(UnitaryChannel::phase_permutation(&[0, 0], &[0.0, 0.0]).is_err());
        assert!(UnitaryChannel::phase_permutation(&[0, 2], &[0.0, 0.0]).is_err());
        assert!(UnitaryChannel::phase_permutation(&[1, 0], &[0.0]).is_err());
    }
}
