//! Seeded property suite over random instances.
//!
//! Every property is a function of one instance seed. Instance seeds derive
//! from the suite seed and the property name, so a failure is reproduced by
//! [`run_instance`] with the reported counterexample seed.

use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{
    cnot_dagger_channel, detection_incoherence_residual, pre_process, random_udi_channel,
    UnitaryChannel,
};
use crate::conversion::{
    channel_seed, convert, induced_coherence, verify_theorem1, verify_theorem2, EQUALITY_TOL,
    THEOREM_TOL,
};
use crate::error::{Error, Result};
use crate::measurement::{
    is_incoherent, is_separable_effectwise, post_process, random_povm, Povm, Separability,
};
use crate::monotone::{
    coherence_monotone, coherence_oracle_margin, effect_brackets, measurement_relative_entropy,
};
use crate::operator::{
    direct_sum, direct_sum_relative_entropy, partial_trace, relative_entropy,
    von_neumann_entropy, HermitianOperator, Subsystem,
};
use crate::random::{
    random_density, random_incoherent_povm, random_psd, random_separable, random_stochastic_map,
    random_unital_channel, random_unitary, unit_interval,
};
use crate::rng::{self, Rng};
use crate::tolerance::PSD_TOL;

/// Residual slack shared by the inequality properties.
pub const PROPERTY_TOL: f64 = 1e-8;

/// Result of one property on one instance: `residual` is the amount by which
/// the property is violated (`≤ 0` or within tolerance means it holds).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Check {
    pub pass: bool,
    pub residual: f64,
}

impl Check {
    /// Inequality `residual ≤ tol`.
    pub fn at_most(residual: f64, tol: f64) -> Self {
        Self {
            pass: residual <= tol,
            residual,
        }
    }
}

type Property = fn(&mut Rng) -> Result<Check>;

/// The registered properties, in report order.
pub const PROPERTIES: &[(&str, Property)] = &[
    ("relative entropy nonnegativity", relative_entropy_nonnegative),
    ("direct-sum additivity", direct_sum_additive),
    ("partial trace of products", partial_trace_of_products),
    ("lemma1.1 nonnegativity and faithfulness", lemma1_faithfulness),
    ("lemma1.2 unital pre-processing", lemma1_unital),
    ("lemma1.3 unitary invariance", lemma1_unitary),
    ("lemma1.4 post-processing", lemma1_post_processing),
    ("lemma1.5 tensor additivity", lemma1_additivity),
    ("lemma1.6 joint convexity", lemma1_convexity),
    ("prop1 UDI preserves incoherence", prop1_udi),
    ("prop2 closed form is the minimum", prop2_oracle),
    ("C_m faithfulness", cm_faithfulness),
    ("C_m monotonicity", cm_monotonicity),
    ("prop3 incoherent bipartite is separable", prop3_separable),
    ("E_R reduction-map inequality", er_reduction_map),
    ("E_R conditional-entropy bound", er_conditional_entropy),
    ("theorem1 C_m bounds E_m", theorem1),
    ("theorem2 equality for n >= d", theorem2_equality),
    ("theorem2 sandwich for n < d", theorem2_sandwich),
    ("theorem3 induced coherence", theorem3),
    ("cnot shift-relabel symmetry", shift_symmetry),
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyOutcome {
    pub name: String,
    pub passed: usize,
    pub total: usize,
    pub max_residual: f64,
    /// Instance seed of the first failure.
    pub counterexample_seed: Option<u64>,
    /// Error raised by the first failing instance, if it errored.
    pub error: Option<String>,
}

impl PropertyOutcome {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub trials: usize,
    pub properties: Vec<PropertyOutcome>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(PropertyOutcome::ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyOutcome> {
        self.properties.iter().filter(|p| !p.ok())
    }
}

/// Seed of instance `i` of property `name`.
pub fn instance_seed(seed: u64, name: &str, i: usize) -> u64 {
    channel_seed(seed, name, i)
}

/// Runs property `name` on the instance with the given seed.
pub fn run_instance(name: &str, instance: u64) -> Result<Check> {
    let (_, f) = PROPERTIES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Precondition(format!("unknown property {name:?}")))?;
    f(&mut rng::seeded(instance))
}

/// Runs one property on `trials` instances.
pub fn run_property(name: &str, seed: u64, trials: usize) -> Result<PropertyOutcome> {
    let results: Vec<(u64, Result<Check>)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let s = instance_seed(seed, name, i);
            (s, run_instance(name, s))
        })
        .collect();
    let mut out = PropertyOutcome {
        name: name.to_string(),
        passed: 0,
        total: trials,
        max_residual: f64::NEG_INFINITY,
        counterexample_seed: None,
        error: None,
    };
    for (s, r) in results {
        let failed = match r {
            Ok(c) => {
                out.max_residual = out.max_residual.max(c.residual);
                !c.pass
            }
            Err(e) => {
                out.error.get_or_insert_with(|| e.to_string());
                out.max_residual = f64::INFINITY;
                true
            }
        };
        if failed {
            out.counterexample_seed.get_or_insert(s);
        } else {
            out.passed += 1;
        }
    }
    Ok(out)
}

/// Runs every registered property.
pub fn run_suite(seed: u64, trials: usize) -> SuiteReport {
    let properties = PROPERTIES
        .iter()
        .map(|(name, _)| run_property(name, seed, trials).expect("registered property"))
        .collect();
    SuiteReport {
        seed,
        trials,
        properties,
    }
}

fn pick<T: Copy>(rng: &mut Rng, xs: &[T]) -> T {
    xs[rng.random_range(0..xs.len())]
}

/// Random POVM with `d ∈ {2, 3}` and `n ∈ {2, 3, 4}` drawn from `rng`.
fn small_povm(rng: &mut Rng) -> Result<Povm> {
    let d = pick(rng, &[2, 3]);
    let n = pick(rng, &[2, 3, 4]);
    random_povm(d, n, rng.random())
}

fn povm_pair(rng: &mut Rng) -> Result<(Povm, Povm)> {
    let m = small_povm(rng)?;
    let n = random_povm(m.dim(), m.outcomes(), rng.random())?;
    Ok((m, n))
}

fn relative_entropy_nonnegative(rng: &mut Rng) -> Result<Check> {
    let d = pick(rng, &[2, 3, 4]);
    let rho = random_density(rng, d);
    let sigma = random_density(rng, d);
    Ok(Check::at_most(-relative_entropy(&rho, &sigma)?, PROPERTY_TOL))
}

fn direct_sum_additive(rng: &mut Rng) -> Result<Check> {
    let (m, n) = povm_pair(rng)?;
    let blockwise = direct_sum_relative_entropy(m.effects(), n.effects())?;
    let whole = relative_entropy(&direct_sum(m.effects()), &direct_sum(n.effects()))?;
    Ok(Check::at_most((blockwise - whole).abs(), PROPERTY_TOL))
}

fn partial_trace_of_products(rng: &mut Rng) -> Result<Check> {
    let (da, db) = (pick(rng, &[1, 2, 3]), pick(rng, &[1, 2, 3]));
    let a = random_density(rng, da);
    let b = random_density(rng, db);
    let ab = crate::operator::tensor(&a, &b);
    let ra = partial_trace(&ab, Subsystem::A)?.max_abs_diff(&a);
    let rb = partial_trace(&ab, Subsystem::B)?.max_abs_diff(&b);
    Ok(Check::at_most(ra.max(rb), 1e-12))
}

fn lemma1_faithfulness(rng: &mut Rng) -> Result<Check> {
    let (m, n) = povm_pair(rng)?;
    let d = measurement_relative_entropy(&m, &n)?;
    let self_d = measurement_relative_entropy(&m, &m)?;
    // Zero divergence must mean identical effects, and distinct POVMs must
    // have positive divergence.
    let distinct = m.max_effect_deviation(&n) > PROPERTY_TOL;
    let residual = (-d).max(self_d.abs());
    Ok(Check {
        pass: residual <= PROPERTY_TOL && (!distinct || d > PROPERTY_TOL),
        residual,
    })
}

fn lemma1_unital(rng: &mut Rng) -> Result<Check> {
    let (m, n) = povm_pair(rng)?;
    let terms = pick(rng, &[1, 2, 3]);
    let ch = random_unital_channel(rng, m.dim(), terms);
    let before = measurement_relative_entropy(&m, &n)?;
    let after = measurement_relative_entropy(&pre_process(&m, &ch)?, &pre_process(&n, &ch)?)?;
    Ok(Check::at_most(after - before, PROPERTY_TOL))
}

fn lemma1_unitary(rng: &mut Rng) -> Result<Check> {
    let (m, n) = povm_pair(rng)?;
    let u = UnitaryChannel::new(random_unitary(rng, m.dim()))?.to_kraus();
    let before = measurement_relative_entropy(&m, &n)?;
    let after = measurement_relative_entropy(&pre_process(&m, &u)?, &pre_process(&n, &u)?)?;
    Ok(Check::at_most((after - before).abs(), PROPERTY_TOL))
}

fn lemma1_post_processing(rng: &mut Rng) -> Result<Check> {
    let (m, n) = povm_pair(rng)?;
    let rows = pick(rng, &[1, 2, 3, 4]);
    let s = random_stochastic_map(rng, rows, m.outcomes());
    let before = measurement_relative_entropy(&m, &n)?;
    let after = measurement_relative_entropy(&post_process(&m, &s)?, &post_process(&n, &s)?)?;
    Ok(Check::at_most(after - before, PROPERTY_TOL))
}

fn lemma1_additivity(rng: &mut Rng) -> Result<Check> {
    let (m, n) = povm_pair(rng)?;
    let (m2, n2) = povm_pair(rng)?;
    let joint = measurement_relative_entropy(&m.tensor(&m2), &n.tensor(&n2))?;
    let separate = measurement_relative_entropy(&m, &n)? + measurement_relative_entropy(&m2, &n2)?;
    Ok(Check::at_most((joint - separate).abs(), PROPERTY_TOL))
}

fn lemma1_convexity(rng: &mut Rng) -> Result<Check> {
    let (m1, n1) = povm_pair(rng)?;
    let m2 = random_povm(m1.dim(), m1.outcomes(), rng.random())?;
    let n2 = random_povm(m1.dim(), m1.outcomes(), rng.random())?;
    let p = unit_interval(rng);
    let mixed = measurement_relative_entropy(&m1.mix(p, &m2)?, &n1.mix(p, &n2)?)?;
    let bound = p * measurement_relative_entropy(&m1, &n1)?
        + (1.0 - p) * measurement_relative_entropy(&m2, &n2)?;
    Ok(Check::at_most(mixed - bound, PROPERTY_TOL))
}

fn prop1_udi(rng: &mut Rng) -> Result<Check> {
    let d = pick(rng, &[2, 3, 4]);
    let n = pick(rng, &[2, 3, 4]);
    let ch = random_udi_channel(d, rng.random());
    let f = random_incoherent_povm(rng, d, n);
    let off = pre_process(&f, &ch)?
        .effects()
        .iter()
        .map(HermitianOperator::max_off_diagonal)
        .fold(0.0, f64::max);
    let predicate = detection_incoherence_residual(&ch).max().max(ch.unital_residual());
    Ok(Check::at_most(off.max(predicate), 1e-9))
}

fn prop2_oracle(rng: &mut Rng) -> Result<Check> {
    let m = small_povm(rng)?;
    let margin = coherence_oracle_margin(&m, 50, rng.random())?;
    let direct = measurement_relative_entropy(&m, &m.dephased())?;
    let closed = (coherence_monotone(&m) - direct).abs();
    Ok(Check::at_most((-margin).max(closed), 1e-9))
}

fn cm_faithfulness(rng: &mut Rng) -> Result<Check> {
    let m = small_povm(rng)?;
    let f = random_incoherent_povm(rng, m.dim(), m.outcomes());
    let coherent = !is_incoherent(&m, 1e-6);
    let cm = coherence_monotone(&m);
    let cf = coherence_monotone(&f);
    let pass = (cm <= PROPERTY_TOL) != coherent && cf <= PROPERTY_TOL;
    Ok(Check {
        pass,
        residual: if coherent { cf.max(PROPERTY_TOL - cm) } else { cm.max(cf) },
    })
}

fn cm_monotonicity(rng: &mut Rng) -> Result<Check> {
    let m = small_povm(rng)?;
    let ch = random_udi_channel(m.dim(), rng.random());
    let rows = pick(rng, &[1, 2, 3, 4]);
    let s = random_stochastic_map(rng, rows, m.outcomes());
    let processed = post_process(&pre_process(&m, &ch)?, &s)?;
    Ok(Check::at_most(
        coherence_monotone(&processed) - coherence_monotone(&m),
        PROPERTY_TOL,
    ))
}

fn prop3_separable(rng: &mut Rng) -> Result<Check> {
    let n = pick(rng, &[2, 3, 4]);
    let f = random_incoherent_povm(rng, 4, n);
    let f = Povm::bipartite(f.into_effects(), 2, 2)?;
    let decided = is_separable_effectwise(&f, PSD_TOL)? == Separability::DecidedTrue;
    Ok(Check {
        pass: decided,
        residual: if decided { 0.0 } else { 1.0 },
    })
}

/// Random PSD `X` on `2 ⊗ 2` or `2 ⊗ 3` and a random separable `Y`.
fn er_pair(rng: &mut Rng) -> Result<(HermitianOperator, HermitianOperator)> {
    let db = pick(rng, &[2, 3]);
    let rank = rng.random_range(1..=2 * db);
    let x = random_psd(rng, 2 * db, rank).with_split(2, db)?;
    let terms = rng.random_range(1..=4);
    let y = random_separable(rng, 2, db, terms);
    Ok((x, y))
}

fn er_reduction_map(rng: &mut Rng) -> Result<Check> {
    let (x, y) = er_pair(rng)?;
    let y = y.scaled(0.5 + 2.0 * unit_interval(rng));
    let s_x = von_neumann_entropy(&x)?;
    let d_xy = relative_entropy(&x, &y)?;
    let mut worst = f64::NEG_INFINITY;
    for side in [Subsystem::A, Subsystem::B] {
        let xs = partial_trace(&x, side)?;
        let ys = partial_trace(&y, side)?;
        let lhs = von_neumann_entropy(&xs)? - s_x;
        let rhs = d_xy - relative_entropy(&xs, &ys)?;
        worst = worst.max(lhs - rhs);
    }
    Ok(Check::at_most(worst, PROPERTY_TOL))
}

fn er_conditional_entropy(rng: &mut Rng) -> Result<Check> {
    let (x, y) = er_pair(rng)?;
    let y = y.scaled(x.trace() / y.trace());
    let s_x = von_neumann_entropy(&x)?;
    let s_a = von_neumann_entropy(&partial_trace(&x, Subsystem::A)?)?;
    let s_b = von_neumann_entropy(&partial_trace(&x, Subsystem::B)?)?;
    let lower = (s_a - s_x).max(s_b - s_x);
    Ok(Check::at_most(lower - relative_entropy(&x, &y)?, PROPERTY_TOL))
}

fn theorem1(rng: &mut Rng) -> Result<Check> {
    let d = pick(rng, &[2, 3]);
    let n = pick(rng, &[2, 3, 4]);
    let m = random_povm(d, n, rng.random())?;
    let c = verify_theorem1(&m, 4, rng.random())?;
    Ok(Check {
        pass: c.holds,
        residual: c.max_excess,
    })
}

fn theorem2_equality(rng: &mut Rng) -> Result<Check> {
    let d = pick(rng, &[2, 3]);
    let n = pick(rng, &[d, d + 1, d * d]);
    let m = random_povm(d, n, rng.random())?;
    let r = match verify_theorem2(&m) {
        Ok(r) => r,
        Err(Error::TheoremViolation(_)) => return Ok(Check { pass: false, residual: f64::INFINITY }),
        Err(e) => return Err(e),
    };
    let em = r.output_em;
    let residual = (em.lower - r.input_cm).abs().max((em.upper - r.input_cm).abs());
    Ok(Check::at_most(residual, EQUALITY_TOL))
}

fn theorem2_sandwich(rng: &mut Rng) -> Result<Check> {
    let (d, n) = pick(rng, &[(3, 2), (4, 2), (4, 3)]);
    let m = random_povm(d, n, rng.random())?;
    let r = match verify_theorem2(&m) {
        Ok(r) => r,
        Err(Error::TheoremViolation(_)) => return Ok(Check { pass: false, residual: f64::INFINITY }),
        Err(e) => return Err(e),
    };
    let em = r.output_em;
    let residual = (r.bound_lower - em.lower).max(em.upper - r.bound_upper);
    Ok(Check::at_most(residual, THEOREM_TOL))
}

fn theorem3(rng: &mut Rng) -> Result<Check> {
    let d = pick(rng, &[2, 3]);
    let n = pick(rng, &[2, 3, 4]);
    let m = random_povm(d, n, rng.random())?;
    let cm = coherence_monotone(&m);
    let ic = induced_coherence(&m, 4, rng.random())?;
    let f = random_incoherent_povm(rng, d, n);
    let zero = induced_coherence(&f, 4, rng.random())?;
    let mut residual = (ic - cm).max(zero.abs());
    let mut tol = THEOREM_TOL;
    if n >= d {
        residual = residual.max((ic - cm).abs());
        tol = EQUALITY_TOL;
    }
    Ok(Check::at_most(residual, tol))
}

fn shift_symmetry(rng: &mut Rng) -> Result<Check> {
    let d = pick(rng, &[2, 3]);
    let n = pick(rng, &[d, d + 1]);
    let m = random_povm(d, n, rng.random())?;
    let out = convert(&m, &cnot_dagger_channel(d))?;
    let brackets = effect_brackets(&out)?;
    let mut worst: f64 = 0.0;
    for x in 0..n {
        let row = &brackets[x * n..x * n + d];
        for b in row {
            worst = worst
                .max((b.lower - row[0].lower).abs())
                .max((b.upper - row[0].upper).abs());
        }
    }
    Ok(Check::at_most(worst, 1e-9))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_property_passes_a_short_run() {
        let report = run_suite(0, 3);
        for p in &report.properties {
            assert!(p.ok(), "{p:?}");
        }
    }

    #[test]
    fn instances_are_reproducible() {
        let a = run_property("C_m monotonicity", 5, 4).unwrap();
        let b = run_property("C_m monotonicity", 5, 4).unwrap();
        assert_eq!(a, b);
        assert!(run_instance("no such property", 0).is_err());
    }
}
