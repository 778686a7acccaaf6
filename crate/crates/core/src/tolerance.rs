//! Numerical thresholds shared across the crate.
//!
//! Every comparison against zero in this crate goes through one of these
//! constants, and reports carry a [`Tolerances`] block so that serialized
//! results state the rules they were computed under.

use serde::{Deserialize, Serialize};

/// Max absolute entry deviation between a matrix and its conjugate transpose.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Most negative eigenvalue still accepted as positive semidefinite.
pub const PSD_TOL: f64 = 1e-10;
/// Eigenvalues at or below this are outside the numerical support.
pub const EIG_CUTOFF: f64 = 1e-12;
/// Max entry of `P_ker(N) M P_ker(N)` for `im M ⊆ im N` to hold.
pub const SUPPORT_TOL: f64 = 1e-9;
/// Max entry deviation of `Σ_x M_x` from the identity.
pub const COMPLETENESS_TOL: f64 = 1e-9;
/// Column-sum slack of a stochastic matrix.
pub const STOCHASTIC_TOL: f64 = 1e-12;
/// Trace preservation, unitality, unitarity and detection-incoherence residuals.
pub const CHANNEL_TOL: f64 = 1e-9;
/// Max gap between bracket bounds for the bracket to count as exact.
pub const BRACKET_TOL: f64 = 1e-7;
/// Trace of a normalized state may deviate from one by this much.
pub const STATE_TRACE_TOL: f64 = 1e-9;

/// Overridable tolerance set, serialized into every report.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub hermitian: f64,
    pub psd: f64,
    pub eig_cutoff: f64,
    pub support: f64,
    pub completeness: f64,
    pub stochastic: f64,
    pub channel: f64,
    pub bracket: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian: HERMITIAN_TOL,
            psd: PSD_TOL,
            eig_cutoff: EIG_CUTOFF,
            support: SUPPORT_TOL,
            completeness: COMPLETENESS_TOL,
            stochastic: STOCHASTIC_TOL,
            channel: CHANNEL_TOL,
            bracket: BRACKET_TOL,
        }
    }
}
