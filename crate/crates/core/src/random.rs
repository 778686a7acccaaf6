//! Random test instances: Ginibre matrices, PSD operators, unitaries,
//! stochastic maps, incoherent POVMs, separable operators.
//!
//! Every sampler takes an explicit generator; see [`crate::rng`] for how
//! streams are derived from a seed.

use rand::Rng as _;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::channel::KrausChannel;
use crate::measurement::{Povm, StochasticMap};
use crate::operator::{tensor, CMatrix, HermitianOperator};
use crate::rng::Rng;
use num_complex::Complex64;

/// Matrix of i.i.d. standard complex Gaussian entries.
pub fn ginibre(rng: &mut Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    })
}

/// `G G†` with `G` a `dim × rank` Ginibre matrix.
pub fn random_psd(rng: &mut Rng, dim: usize, rank: usize) -> HermitianOperator {
    let g = ginibre(rng, dim, rank);
    HermitianOperator::from_matrix(&g * g.adjoint())
}

/// Full-rank density matrix.
pub fn random_density(rng: &mut Rng, dim: usize) -> HermitianOperator {
    let p = random_psd(rng, dim, dim);
    let t = p.trace();
    p.scaled(1.0 / t)
}

/// Unit vector drawn from the Gaussian ensemble.
pub fn random_pure_state(rng: &mut Rng, dim: usize) -> Vec<Complex64> {
    let g = ginibre(rng, dim, 1);
    let norm = g.norm();
    g.iter().map(|z| z / norm).collect()
}

/// Haar-distributed unitary (QR of a Ginibre matrix with the phases of
/// R's diagonal absorbed into Q).
pub fn random_unitary(rng: &mut Rng, dim: usize) -> CMatrix {
    let qr = ginibre(rng, dim, dim).qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Probability vector with i.i.d. exponential weights (flat Dirichlet).
pub fn random_probability_vector(rng: &mut Rng, n: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..n).map(|_| Exp1.sample(rng)).collect();
    let total: f64 = w.iter().sum();
    w.into_iter().map(|x| x / total).collect()
}

/// Column-stochastic `rows × cols` matrix with flat-Dirichlet columns.
pub fn random_stochastic_map(rng: &mut Rng, rows: usize, cols: usize) -> StochasticMap {
    let mut probs = nalgebra::DMatrix::<f64>::zeros(rows, cols);
    for x in 0..cols {
        let col = random_probability_vector(rng, rows);
        for (y, p) in col.into_iter().enumerate() {
            probs[(y, x)] = p;
        }
    }
    StochasticMap::new(probs).expect("columns are normalized by construction")
}

/// Incoherent POVM: effect `x` is `diag(p(x|0), …, p(x|d−1))` with each
/// `p(·|i)` a random probability vector. Every incoherent POVM has this form.
pub fn random_incoherent_povm(rng: &mut Rng, dim: usize, outcomes: usize) -> Povm {
    let columns: Vec<Vec<f64>> = (0..dim)
        .map(|_| random_probability_vector(rng, outcomes))
        .collect();
    let effects = (0..outcomes)
        .map(|x| {
            let diag: Vec<f64> = columns.iter().map(|c| c[x]).collect();
            HermitianOperator::diagonal(&diag)
        })
        .collect();
    Povm::new(effects).expect("diagonal columns sum to one")
}

/// Convex combination of `terms` products of full-rank PSD operators,
/// scaled to unit trace.
pub fn random_separable(rng: &mut Rng, dim_a: usize, dim_b: usize, terms: usize) -> HermitianOperator {
    let weights = random_probability_vector(rng, terms.max(1));
    let mut acc = HermitianOperator::zeros(dim_a * dim_b);
    for w in weights {
        let a = random_density(rng, dim_a);
        let b = random_density(rng, dim_b);
        acc = &acc + &tensor(&a, &b).scaled(w);
    }
    acc.with_split(dim_a, dim_b).expect("product dimensions")
}

/// Unital channel: random mixture of `terms` Haar unitaries.
pub fn random_unital_channel(rng: &mut Rng, dim: usize, terms: usize) -> KrausChannel {
    let weights = random_probability_vector(rng, terms.max(1));
    let kraus = weights
        .into_iter()
        .map(|w| random_unitary(rng, dim) * Complex64::new(w.sqrt(), 0.0))
        .collect();
    KrausChannel::new(kraus).expect("mixture of unitaries is trace preserving")
}

/// Uniform draw from `[0, 1]`.
pub fn unit_interval(rng: &mut Rng) -> f64 {
    rng.random::<f64>()
}
