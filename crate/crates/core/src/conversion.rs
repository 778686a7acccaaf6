//! Turning measurement coherence into measurement entanglement.
//!
//! A POVM `M` on `d` dimensions is paired with an incoherent ancilla
//! measurement `E` and the product `M ⊗ E` is pre-processed by a UDI
//! channel on `d ⊗ d`. The entanglement of the result never exceeds
//! `C_m(M)`, and the generalized-CNOT channel reaches `C_m(M)` whenever
//! `n ≥ d`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{
    cnot_dagger_channel, detection_incoherence_residual, pre_process, random_udi_channel,
    KrausChannel,
};
use crate::error::{Error, Result};
use crate::measurement::Povm;
use crate::monotone::{coherence_monotone, entanglement_monotone_bracket, Bracket};
use crate::operator::HermitianOperator;
use crate::rng;
use crate::tolerance::CHANNEL_TOL;
use rand::Rng as _;

/// Slack on the theorem inequalities.
pub const THEOREM_TOL: f64 = 1e-8;
/// Slack on the `n ≥ d` equality.
pub const EQUALITY_TOL: f64 = 1e-7;

/// Identifier used for the generalized-CNOT pre-processing.
pub const CNOT_ID: &str = "cnot-dagger";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    #[serde(rename = "n_ge_d")]
    NGeD,
    #[serde(rename = "n_lt_d")]
    NLtD,
}

impl Regime {
    pub fn of(dim: usize, outcomes: usize) -> Self {
        if outcomes >= dim {
            Regime::NGeD
        } else {
            Regime::NLtD
        }
    }
}

/// Outcome of one conversion, with the proven bounds on its `E_m`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConversionResult {
    pub input_cm: f64,
    pub output_em: Bracket,
    pub channel_id: String,
    pub regime: Regime,
    /// `C_m` when `n ≥ d`, `(n − 1)/d · C_m` otherwise.
    pub bound_lower: f64,
    pub bound_upper: f64,
}

/// The ancilla measurement `E_B` on `d` dimensions with `n` outcomes: the
/// computational basis padded with zero effects when `n ≥ d`, otherwise
/// `{|0⟩⟨0|, …, |n−2⟩⟨n−2|, I − Σ}`.
pub fn ancilla_incoherent_povm(d: usize, n: usize) -> Povm {
    let mut effects: Vec<HermitianOperator> = (0..d.min(n))
        .map(|i| HermitianOperator::basis_projector(d, i))
        .collect();
    if n >= d {
        effects.resize(n, HermitianOperator::zeros(d));
    } else {
        effects.pop();
        let rest: Vec<f64> = (0..d).map(|i| if i + 1 >= n { 1.0 } else { 0.0 }).collect();
        effects.push(HermitianOperator::diagonal(&rest));
    }
    Povm::new(effects).expect("incoherent ancilla is a POVM")
}

/// [`convert_with`] at the default channel tolerance.
pub fn convert(m: &Povm, ch: &KrausChannel) -> Result<Povm> {
    convert_with(m, ch, CHANNEL_TOL)
}

/// `{𝓝†(M_x ⊗ E_y)}` ordered `x·n + y`, on `d ⊗ d`.
///
/// Fails with [`Error::NotFreeOperation`] unless `ch` is unital and
/// detection-incoherent within `udi_tol`.
pub fn convert_with(m: &Povm, ch: &KrausChannel, udi_tol: f64) -> Result<Povm> {
    let d = m.dim();
    if ch.in_dim() != d * d || ch.out_dim() != d * d {
        return Err(Error::DimensionMismatch {
            expected: d * d,
            found: ch.in_dim(),
        });
    }
    let unital_residual = ch.unital_residual();
    let detection_residual = detection_incoherence_residual(ch).max();
    if unital_residual > udi_tol || detection_residual > udi_tol {
        return Err(Error::NotFreeOperation {
            unital_residual,
            detection_residual,
        });
    }
    let product = m.tensor(&ancilla_incoherent_povm(d, m.outcomes()));
    pre_process(&product, ch)
}

fn bounds(m: &Povm, cm: f64) -> (Regime, f64) {
    let regime = Regime::of(m.dim(), m.outcomes());
    let lower = match regime {
        Regime::NGeD => cm,
        Regime::NLtD => (m.outcomes() - 1) as f64 / m.dim() as f64 * cm,
    };
    (regime, lower)
}

/// Converts `m` with `ch` and brackets the result's `E_m`.
pub fn conversion_result(m: &Povm, ch: &KrausChannel, channel_id: &str) -> Result<ConversionResult> {
    Ok(convert_and_bracket(m, ch, channel_id, CHANNEL_TOL)?.1)
}

/// [`convert_with`] together with the [`ConversionResult`] of the output.
pub fn convert_and_bracket(
    m: &Povm,
    ch: &KrausChannel,
    channel_id: &str,
    udi_tol: f64,
) -> Result<(Povm, ConversionResult)> {
    let converted = convert_with(m, ch, udi_tol)?;
    let input_cm = coherence_monotone(m);
    let (regime, bound_lower) = bounds(m, input_cm);
    let result = ConversionResult {
        input_cm,
        output_em: entanglement_monotone_bracket(&converted)?,
        channel_id: channel_id.to_string(),
        regime,
        bound_lower,
        bound_upper: input_cm,
    };
    Ok((converted, result))
}

/// Seed of the `t`-th sampled UDI channel in a sweep seeded by `seed`.
pub fn channel_seed(seed: u64, label: &str, t: usize) -> u64 {
    rng::stream(seed, label, t as u64).random()
}

/// Worst case of a [`verify_theorem1`] sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Theorem1Check {
    pub holds: bool,
    pub trials: usize,
    /// Largest `bound − C_m` over all trials; `≤ 1e-8` when the theorem holds.
    pub max_excess: f64,
    /// Channel seed of the worst trial.
    pub worst_channel_seed: Option<u64>,
}

/// `E_m` of conversions by `trials` sampled UDI channels never exceeds
/// `C_m(M)`: the lower end always, the upper end when the bracket is exact.
pub fn verify_theorem1(m: &Povm, trials: usize, seed: u64) -> Result<Theorem1Check> {
    let cm = coherence_monotone(m);
    let d = m.dim();
    let excesses = (0..trials)
        .into_par_iter()
        .map(|t| {
            let s = channel_seed(seed, "verify_theorem1", t);
            let em = entanglement_monotone_bracket(&convert(m, &random_udi_channel(d * d, s))?)?;
            let checked = if em.exact { em.upper } else { em.lower };
            Ok((checked - cm, s))
        })
        .collect::<Result<Vec<_>>>()?;
    let worst = excesses
        .iter()
        .copied()
        .fold(None, |acc: Option<(f64, u64)>, x| match acc {
            Some(a) if a.0 >= x.0 => Some(a),
            _ => Some(x),
        });
    let max_excess = worst.map_or(f64::NEG_INFINITY, |w| w.0);
    Ok(Theorem1Check {
        holds: max_excess <= THEOREM_TOL,
        trials,
        max_excess,
        worst_channel_seed: worst.map(|w| w.1),
    })
}

/// CNOT conversion checked against the proven bounds: equality with an
/// exact bracket when `n ≥ d`, `(n−1)/d·C_m ≤ E_m ≤ C_m` otherwise.
pub fn verify_theorem2(m: &Povm) -> Result<ConversionResult> {
    let r = conversion_result(m, &cnot_dagger_channel(m.dim()), CNOT_ID)?;
    let em = r.output_em;
    match r.regime {
        Regime::NGeD => {
            if !em.exact || !em.pins(r.input_cm, EQUALITY_TOL) {
                return Err(Error::TheoremViolation(format!(
                    "n >= d: E_m bracket [{}, {}] does not pin C_m = {}",
                    em.lower, em.upper, r.input_cm
                )));
            }
        }
        Regime::NLtD => {
            if em.lower < r.bound_lower - THEOREM_TOL || em.upper > r.bound_upper + THEOREM_TOL {
                return Err(Error::TheoremViolation(format!(
                    "n < d: E_m bracket [{}, {}] outside [{}, {}]",
                    em.lower, em.upper, r.bound_lower, r.bound_upper
                )));
            }
        }
    }
    Ok(r)
}

/// Certified lower bound on `sup_𝓝 E_m(M ⊗ E ∘ 𝓝)`: the best `E_m` lower
/// end over the CNOT channel and `sample_budget` sampled UDI channels.
pub fn induced_coherence(m: &Povm, sample_budget: usize, seed: u64) -> Result<f64> {
    if m.outcomes() <= 1 {
        return Err(Error::Precondition(
            "induced coherence needs more than one outcome".into(),
        ));
    }
    let d = m.dim();
    let cnot = entanglement_monotone_bracket(&convert(m, &cnot_dagger_channel(d))?)?.lower;
    let sampled = (0..sample_budget)
        .into_par_iter()
        .map(|t| {
            let ch = random_udi_channel(d * d, channel_seed(seed, "induced_coherence", t));
            Ok(entanglement_monotone_bracket(&convert(m, &ch)?)?.lower)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(sampled.into_iter().fold(cnot, f64::max))
}
