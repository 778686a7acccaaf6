//! Resource monotones of measurements.
//!
//! * [`measurement_relative_entropy`]: `D_m(M‖N) = (1/d) Σ_x D(M_x‖N_x)`.
//! * [`coherence_monotone`]: `C_m(M) = (1/d) Σ_x [S(ΔM_x) − S(M_x)]`, the
//!   minimum of `D_m(M‖F)` over incoherent `F`.
//! * [`entanglement_monotone_bracket`]: `E_m`, the minimum of `D_m` over
//!   separable measurements, bounded effect by effect through the relative
//!   entropy of entanglement of PSD operators.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measurement::{effect_separability, Povm, Separability};
use crate::operator::{
    dephase, direct_sum_relative_entropy, entropy_of_eigenvalues, partial_trace,
    relative_entropy, HermitianOperator, Subsystem,
};
use crate::random::random_incoherent_povm;
use crate::rng;
use crate::tolerance::{BRACKET_TOL, PSD_TOL};

/// Certified interval `[lower, upper]` around a quantity in bits.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bracket {
    pub lower: f64,
    pub upper: f64,
    /// `upper − lower ≤ BRACKET_TOL`.
    pub exact: bool,
}

impl Bracket {
    pub fn new(lower: f64, upper: f64) -> Self {
        Self {
            lower,
            upper,
            exact: upper - lower <= BRACKET_TOL,
        }
    }

    pub fn zero() -> Self {
        Self::new(0.0, 0.0)
    }

    pub fn gap(&self) -> f64 {
        self.upper - self.lower
    }

    /// True iff both ends are within `tol` of `value`.
    pub fn pins(&self, value: f64, tol: f64) -> bool {
        (self.lower - value).abs() <= tol && (self.upper - value).abs() <= tol
    }
}

/// `(1/d) Σ_x D(M_x‖N_x)` in bits, with `d` the full Hilbert-space
/// dimension. Infinite when some `M_x` is not supported on `N_x`.
pub fn measurement_relative_entropy(m: &Povm, n: &Povm) -> Result<f64> {
    if m.dim() != n.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            found: n.dim(),
        });
    }
    if m.outcomes() != n.outcomes() {
        return Err(Error::LengthMismatch {
            left: m.outcomes(),
            right: n.outcomes(),
        });
    }
    Ok(direct_sum_relative_entropy(m.effects(), n.effects())? / m.dim() as f64)
}

fn entropy(op: &HermitianOperator) -> f64 {
    entropy_of_eigenvalues(op.spectrum().eigenvalues())
}

/// Per-effect terms `(S(ΔM_x) − S(M_x)) / d`; they sum to [`coherence_monotone`].
pub fn coherence_contributions(m: &Povm) -> Vec<f64> {
    let d = m.dim() as f64;
    m.effects()
        .iter()
        .map(|e| ((entropy(&dephase(e)) - entropy(e)) / d).max(0.0))
        .collect()
}

/// Closed form of `C_m` in bits.
pub fn coherence_monotone(m: &Povm) -> f64 {
    coherence_contributions(m).iter().sum()
}

/// `min_F D_m(M‖F) − C_m(M)` over `trials` random incoherent POVMs `F`.
/// Nonnegative up to rounding when the closed form is the minimum.
pub fn coherence_oracle_margin(m: &Povm, trials: usize, seed: u64) -> Result<f64> {
    let cm = coherence_monotone(m);
    let mut margin = f64::INFINITY;
    for t in 0..trials {
        let mut rng = rng::stream(seed, "coherence_oracle", t as u64);
        let f = random_incoherent_povm(&mut rng, m.dim(), m.outcomes());
        margin = margin.min(measurement_relative_entropy(m, &f)? - cm);
    }
    Ok(margin)
}

/// True iff `C_m(M) ≤ D_m(M‖F) + 1e-9` for every sampled incoherent `F`.
pub fn coherence_oracle_check(m: &Povm, trials: usize, seed: u64) -> bool {
    matches!(coherence_oracle_margin(m, trials, seed), Ok(g) if g >= -1e-9)
}

/// Bracket on the relative entropy of entanglement
/// `E_R(X) = min { D(X‖Y) : Y separable, tr Y = tr X }` of a bipartite PSD
/// operator.
///
/// The lower bound is the larger conditional-entropy bound
/// `max{S(X_A), S(X_B)} − S(X)`. The upper bound is the best of three
/// separable candidates: the product-basis dephasing `ΔX`, the reduced
/// entropy `p·S(tr_B ψ)` when `X = p|ψ⟩⟨ψ|`, and `X` itself when it is
/// certified separable.
pub fn entanglement_relative_entropy_bracket(x: &HermitianOperator) -> Result<Bracket> {
    let (da, db) = x.dims_split().ok_or(Error::MissingSplit)?;
    let spectrum = x.spectrum();
    if spectrum.rank() == 0 {
        return Ok(Bracket::zero());
    }
    let s_x = entropy_of_eigenvalues(spectrum.eigenvalues());
    let s_a = entropy(&partial_trace(x, Subsystem::A)?);
    let s_b = entropy(&partial_trace(x, Subsystem::B)?);
    let lower = (s_a - s_x).max(s_b - s_x).max(0.0);

    let mut upper = relative_entropy(x, &dephase(x))?;
    if spectrum.rank() == 1 {
        let p = spectrum.max();
        let psi: Vec<_> = spectrum.eigenvectors().column(0).iter().copied().collect();
        let pure = HermitianOperator::ket_bra(&psi).with_split(da, db)?;
        upper = upper.min(p * entropy(&partial_trace(&pure, Subsystem::A)?));
    }
    if effect_separability(x, PSD_TOL)? == Separability::DecidedTrue {
        upper = upper.min(0.0);
    }
    if upper < lower && lower - upper <= BRACKET_TOL {
        upper = lower;
    }
    Ok(Bracket::new(lower, upper))
}

/// Per-effect [`entanglement_relative_entropy_bracket`]s, in outcome order.
pub fn effect_brackets(m: &Povm) -> Result<Vec<Bracket>> {
    if m.dims_split().is_none() {
        return Err(Error::MissingSplit);
    }
    m.effects()
        .par_iter()
        .map(entanglement_relative_entropy_bracket)
        .collect()
}

/// Bracket on `E_m(M) = (1/d) Σ_x E_R(M_x)` for a bipartite POVM.
pub fn entanglement_monotone_bracket(m: &Povm) -> Result<Bracket> {
    let brackets = effect_brackets(m)?;
    let d = m.dim() as f64;
    let lower = brackets.iter().map(|b| b.lower).sum::<f64>() / d;
    let upper = brackets.iter().map(|b| b.upper).sum::<f64>() / d;
    Ok(Bracket {
        lower,
        upper,
        exact: brackets.iter().all(|b| b.exact),
    })
}
