//! Coherence and entanglement of quantum measurements.
//!
//! A measurement is a [`Povm`]. Its coherence is measured by
//! [`coherence_monotone`], and the entanglement of a bipartite measurement by
//! [`entanglement_monotone_bracket`], which returns a certified interval. The
//! [`conversion`] module pairs a coherent measurement with an incoherent
//! ancilla and a free pre-processing channel to produce an entangled one.
//!
//! ```
//! use qmr::{coherence_monotone, conversion, entanglement_monotone_bracket, HermitianOperator, Povm};
//!
//! let h = std::f64::consts::FRAC_1_SQRT_2;
//! let pm = Povm::new(vec![
//!     HermitianOperator::real_ket_bra(&[h, h]),
//!     HermitianOperator::real_ket_bra(&[h, -h]),
//! ])?;
//! assert!((coherence_monotone(&pm) - 1.0).abs() < 1e-12);
//!
//! let bell = conversion::convert(&pm, &qmr::channel::cnot_dagger_channel(2))?;
//! let em = entanglement_monotone_bracket(&bell)?;
//! assert!(em.exact && em.pins(1.0, 1e-12));
//! # Ok::<(), qmr::Error>(())
//! ```
//!
//! Logarithms are base 2 throughout. Bipartite operators on `dA ⊗ dB` use the
//! basis index `iA·dB + iB`.

pub mod channel;
pub mod conversion;
pub mod error;
pub mod json;
pub mod measurement;
pub mod monotone;
pub mod operator;
pub mod random;
pub mod report;
pub mod rng;
pub mod suite;
pub mod tolerance;

pub use channel::{KrausChannel, UnitaryChannel};
pub use conversion::{ConversionResult, Regime};
pub use error::{Error, Result};
pub use measurement::{Povm, Separability, StochasticMap, Violation};
pub use monotone::{
    coherence_monotone, entanglement_monotone_bracket, entanglement_relative_entropy_bracket,
    measurement_relative_entropy, Bracket,
};
pub use operator::{CMatrix, HermitianOperator, Subsystem};
pub use report::ResourceReport;
pub use tolerance::Tolerances;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/operators.md")]
    mod operators {}
    #[doc = include_str!("../../../book/src/measurements.md")]
    mod measurements {}
    #[doc = include_str!("../../../book/src/channels.md")]
    mod channels {}
    #[doc = include_str!("../../../book/src/coherence.md")]
    mod coherence {}
    #[doc = include_str!("../../../book/src/entanglement.md")]
    mod entanglement {}
    #[doc = include_str!("../../../book/src/conversion.md")]
    mod conversion {}
}
