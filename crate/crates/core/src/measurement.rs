//! POVMs, classical post-processing, and the two free sets of measurements:
//! incoherent (every effect diagonal) and separable (every effect a
//! separable operator).

use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{dephase, hermitian_deviation, max_abs, tensor, CMatrix, HermitianOperator};
use crate::random::ginibre;
use crate::rng::{self, Rng};
use crate::tolerance::{Tolerances, EIG_CUTOFF, PSD_TOL, STATE_TRACE_TOL, STOCHASTIC_TOL};

/// One failed POVM invariant, with the residual that failed it.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    NoEffects,
    OutcomeCount { declared: usize, found: usize },
    EffectShape { index: usize, rows: usize, cols: usize, expected: usize },
    NotHermitian { index: usize, deviation: f64 },
    NotPsd { index: usize, min_eigenvalue: f64 },
    Incomplete { residual: f64 },
    InvalidSplit { dim_a: usize, dim_b: usize, dim: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoEffects => write!(f, "effects: list is empty"),
            Violation::OutcomeCount { declared, found } => write!(
                f,
                "outcomes: declared {declared}, found {found} effects"
            ),
            Violation::EffectShape { index, rows, cols, expected } => write!(
                f,
                "shape: effect {index} is {rows}x{cols}, expected {expected}x{expected}"
            ),
            Violation::NotHermitian { index, deviation } => write!(
                f,
                "hermiticity: effect {index} deviates by {deviation:.3e}"
            ),
            Violation::NotPsd { index, min_eigenvalue } => write!(
                f,
                "positivity: effect {index} has eigenvalue {min_eigenvalue:.3e}"
            ),
            Violation::Incomplete { residual } => write!(
                f,
                "completeness: max |sum_x M_x - I| entry is {residual:.3e}"
            ),
            Violation::InvalidSplit { dim_a, dim_b, dim } => write!(
                f,
                "split: {dim_a}x{dim_b} does not factor dimension {dim}"
            ),
        }
    }
}

/// Checks every POVM invariant on raw matrices and reports all failures.
pub fn check_effects(
    declared_outcomes: Option<usize>,
    effects: &[CMatrix],
    dims_split: Option<(usize, usize)>,
    tol: &Tolerances,
) -> Vec<Violation> {
    let mut out = Vec::new();
    if effects.is_empty() {
        out.push(Violation::NoEffects);
        return out;
    }
    if let Some(declared) = declared_outcomes {
        if declared != effects.len() {
            out.push(Violation::OutcomeCount {
                declared,
                found: effects.len(),
            });
        }
    }
    let dim = effects[0].nrows();
    let mut shapes_ok = true;
    for (index, e) in effects.iter().enumerate() {
        if e.nrows() != dim || e.ncols() != dim {
            shapes_ok = false;
            out.push(Violation::EffectShape {
                index,
                rows: e.nrows(),
                cols: e.ncols(),
                expected: dim,
            });
            continue;
        }
        let deviation = hermitian_deviation(e);
        if deviation > tol.hermitian {
            out.push(Violation::NotHermitian { index, deviation });
            continue;
        }
        let min = HermitianOperator::from_matrix(e.clone()).min_eigenvalue();
        if min < -tol.psd {
            out.push(Violation::NotPsd {
                index,
                min_eigenvalue: min,
            });
        }
    }
    if shapes_ok {
        let mut sum = CMatrix::zeros(dim, dim);
        for e in effects {
            sum += e;
        }
        let residual = max_abs(&(sum - CMatrix::identity(dim, dim)));
        if residual > tol.completeness {
            out.push(Violation::Incomplete { residual });
        }
    }
    if let Some((dim_a, dim_b)) = dims_split {
        if dim_a * dim_b != dim || dim_a == 0 {
            out.push(Violation::InvalidSplit { dim_a, dim_b, dim });
        }
    }
    out
}

/// A positive-operator-valued measure: PSD effects summing to the identity.
/// Zero effects are allowed.
#[derive(Clone, Debug, PartialEq)]
pub struct Povm {
    dim: usize,
    effects: Vec<HermitianOperator>,
    dims_split: Option<(usize, usize)>,
}

impl Povm {
    pub fn new(effects: Vec<HermitianOperator>) -> Result<Self> {
        Self::with_tolerances(effects, None, &Tolerances::default())
    }

    /// POVM on a `dim_a ⊗ dim_b` system.
    pub fn bipartite(effects: Vec<HermitianOperator>, dim_a: usize, dim_b: usize) -> Result<Self> {
        Self::with_tolerances(effects, Some((dim_a, dim_b)), &Tolerances::default())
    }

    pub fn with_tolerances(
        mut effects: Vec<HermitianOperator>,
        dims_split: Option<(usize, usize)>,
        tol: &Tolerances,
    ) -> Result<Self> {
        let raw: Vec<CMatrix> = effects.iter().map(|e| e.entries().clone()).collect();
        let violations = check_effects(None, &raw, dims_split, tol);
        if !violations.is_empty() {
            return Err(Error::InvalidPovm(violations));
        }
        let dim = effects[0].dim();
        for e in &mut effects {
            e.set_split(dims_split);
        }
        Ok(Self {
            dim,
            effects,
            dims_split,
        })
    }

    /// `{|0⟩⟨0|, …, |d−1⟩⟨d−1|}`.
    pub fn computational_basis(dim: usize) -> Self {
        let effects = (0..dim)
            .map(|i| HermitianOperator::basis_projector(dim, i))
            .collect();
        Self::new(effects).expect("basis projectors form a POVM")
    }

    /// The single-outcome measurement `{I}`.
    pub fn trivial(dim: usize) -> Self {
        Self::new(vec![HermitianOperator::identity(dim)]).expect("identity is a POVM")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn outcomes(&self) -> usize {
        self.effects.len()
    }

    pub fn effects(&self) -> &[HermitianOperator] {
        &self.effects
    }

    pub fn effect(&self, x: usize) -> &HermitianOperator {
        &self.effects[x]
    }

    pub fn dims_split(&self) -> Option<(usize, usize)> {
        self.dims_split
    }

    pub fn into_effects(self) -> Vec<HermitianOperator> {
        self.effects
    }

    /// `max |Σ_x M_x − I|` entrywise.
    pub fn completeness_residual(&self) -> f64 {
        let mut sum = CMatrix::zeros(self.dim, self.dim);
        for e in &self.effects {
            sum += e.entries();
        }
        max_abs(&(sum - CMatrix::identity(self.dim, self.dim)))
    }

    /// `{Δ M_x}`, the trace-matched incoherent POVM closest to `self` in `D_m`.
    pub fn dephased(&self) -> Povm {
        Povm {
            dim: self.dim,
            effects: self.effects.iter().map(dephase).collect(),
            dims_split: self.dims_split,
        }
    }

    /// `{M_x ⊗ N_y}` ordered `x·n_N + y`, split `(dim M, dim N)`.
    pub fn tensor(&self, other: &Povm) -> Povm {
        let split = Some((self.dim, other.dim));
        let effects = self
            .effects
            .iter()
            .flat_map(|m| other.effects.iter().map(move |n| tensor(m, n)))
            .collect();
        Povm {
            dim: self.dim * other.dim,
            effects,
            dims_split: split,
        }
    }

    /// `p·self + (1 − p)·other`, effectwise.
    pub fn mix(&self, p: f64, other: &Povm) -> Result<Povm> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Precondition(format!("mixing weight {p} outside [0, 1]")));
        }
        self.same_shape(other)?;
        let effects = self
            .effects
            .iter()
            .zip(&other.effects)
            .map(|(a, b)| &a.scaled(p) + &b.scaled(1.0 - p))
            .collect();
        Povm::with_tolerances(effects, self.dims_split, &Tolerances::default())
    }

    /// Largest entrywise difference between corresponding effects.
    pub fn max_effect_deviation(&self, other: &Povm) -> f64 {
        if self.dim != other.dim || self.outcomes() != other.outcomes() {
            return f64::INFINITY;
        }
        self.effects
            .iter()
            .zip(&other.effects)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }

    pub(crate) fn same_shape(&self, other: &Povm) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        if self.outcomes() != other.outcomes() {
            return Err(Error::LengthMismatch {
                left: self.outcomes(),
                right: other.outcomes(),
            });
        }
        Ok(())
    }

    /// Builds a POVM from effects already known to be valid up to round-off.
    pub(crate) fn from_parts(
        effects: Vec<HermitianOperator>,
        dims_split: Option<(usize, usize)>,
    ) -> Result<Povm> {
        Povm::with_tolerances(effects, dims_split, &Tolerances::default())
    }
}

/// Column-stochastic matrix `p(y|x)`: rows index outputs, columns inputs.
#[derive(Clone, Debug, PartialEq)]
pub struct StochasticMap {
    probs: DMatrix<f64>,
}

impl StochasticMap {
    pub fn new(probs: DMatrix<f64>) -> Result<Self> {
        if probs.ncols() == 0 || probs.nrows() == 0 {
            return Err(Error::InvalidStochasticMap("empty alphabet".into()));
        }
        if let Some(p) = probs.iter().find(|&&p| !(p >= 0.0)) {
            return Err(Error::InvalidStochasticMap(format!("negative or NaN entry {p}")));
        }
        for (x, col) in probs.column_iter().enumerate() {
            let s: f64 = col.iter().sum();
            if (s - 1.0).abs() > STOCHASTIC_TOL {
                return Err(Error::InvalidStochasticMap(format!(
                    "column {x} sums to {s}"
                )));
            }
        }
        Ok(Self { probs })
    }

    /// Row-major `rows × cols` entries.
    pub fn from_row_slice(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::new(DMatrix::from_row_slice(rows, cols, entries))
    }

    pub fn identity(n: usize) -> Self {
        Self {
            probs: DMatrix::identity(n, n),
        }
    }

    /// Every input goes to the single output 0.
    pub fn merge(n: usize) -> Self {
        Self {
            probs: DMatrix::from_element(1, n, 1.0),
        }
    }

    pub fn uniform(rows: usize, cols: usize) -> Self {
        Self {
            probs: DMatrix::from_element(rows, cols, 1.0 / rows as f64),
        }
    }

    /// Output alphabet size.
    pub fn rows(&self) -> usize {
        self.probs.nrows()
    }

    /// Input alphabet size.
    pub fn cols(&self) -> usize {
        self.probs.ncols()
    }

    pub fn prob(&self, y: usize, x: usize) -> f64 {
        self.probs[(y, x)]
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.probs
    }

    /// `next ∘ self`, i.e. the matrix product `next · self`.
    pub fn then(&self, next: &StochasticMap) -> Result<StochasticMap> {
        if next.cols() != self.rows() {
            return Err(Error::LengthMismatch {
                left: next.cols(),
                right: self.rows(),
            });
        }
        Ok(StochasticMap {
            probs: &next.probs * &self.probs,
        })
    }
}

/// Born-rule statistics `p_x = tr(ρ M_x)`.
pub fn apply_statistics(povm: &Povm, rho: &HermitianOperator) -> Result<Vec<f64>> {
    if rho.dim() != povm.dim() {
        return Err(Error::DimensionMismatch {
            expected: povm.dim(),
            found: rho.dim(),
        });
    }
    let min = rho.min_eigenvalue();
    if min < -PSD_TOL {
        return Err(Error::InvalidState(format!("eigenvalue {min:.3e}")));
    }
    let tr = rho.trace();
    if (tr - 1.0).abs() > STATE_TRACE_TOL {
        return Err(Error::InvalidState(format!("trace {tr}")));
    }
    Ok(povm.effects().iter().map(|m| rho.trace_product(m)).collect())
}

/// True iff every effect is diagonal up to `tol` (max off-diagonal modulus).
pub fn is_incoherent(povm: &Povm, tol: f64) -> bool {
    povm.effects().iter().all(|m| m.max_off_diagonal() <= tol)
}

/// Three-valued outcome of a separability test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Separability {
    DecidedTrue,
    DecidedFalse,
    Undecided,
}

impl Separability {
    /// Effectwise conjunction: any entangled effect decides the whole POVM.
    fn and(self, other: Separability) -> Separability {
        use Separability::*;
        match (self, other) {
            (DecidedFalse, _) | (_, DecidedFalse) => DecidedFalse,
            (Undecided, _) | (_, Undecided) => Undecided,
            _ => DecidedTrue,
        }
    }
}

/// Separability of one bipartite PSD operator.
///
/// Zero and product-basis-diagonal operators are separable outright.
/// Otherwise the unit-trace normalization is tested for a positive partial
/// transpose, which decides separability when `dA·dB ≤ 6`; in larger
/// dimensions only a negative partial transpose is conclusive.
pub fn effect_separability(op: &HermitianOperator, tol: f64) -> Result<Separability> {
    let (da, db) = op.dims_split().ok_or(Error::MissingSplit)?;
    let tr = op.trace();
    if tr <= EIG_CUTOFF || op.max_off_diagonal() <= tol || da == 1 || db == 1 {
        return Ok(Separability::DecidedTrue);
    }
    let pt_min = op.scaled(1.0 / tr).partial_transpose()?.min_eigenvalue();
    Ok(match (pt_min >= -tol, da * db <= 6) {
        (false, _) => Separability::DecidedFalse,
        (true, true) => Separability::DecidedTrue,
        (true, false) => Separability::Undecided,
    })
}

/// Separability certificate for a bipartite POVM, combined over effects.
pub fn is_separable_effectwise(povm: &Povm, tol: f64) -> Result<Separability> {
    if povm.dims_split().is_none() {
        return Err(Error::MissingSplit);
    }
    povm.effects()
        .iter()
        .try_fold(Separability::DecidedTrue, |acc, e| {
            Ok(acc.and(effect_separability(e, tol)?))
        })
}

/// `M'_y = Σ_x p(y|x) M_x`.
pub fn post_process(povm: &Povm, s: &StochasticMap) -> Result<Povm> {
    if s.cols() != povm.outcomes() {
        return Err(Error::LengthMismatch {
            left: s.cols(),
            right: povm.outcomes(),
        });
    }
    let effects = (0..s.rows())
        .map(|y| {
            povm.effects()
                .iter()
                .enumerate()
                .fold(HermitianOperator::zeros(povm.dim()), |acc, (x, m)| {
                    &acc + &m.scaled(s.prob(y, x))
                })
        })
        .collect();
    Povm::from_parts(effects, povm.dims_split())
}

/// Random `n`-outcome POVM on dimension `d`, deterministic in `seed`.
///
/// Draws `G_x G_x†` with full-rank Ginibre `G_x` and normalizes by
/// `S^{-1/2}(·)S^{-1/2}` where `S = Σ_x G_x G_x†`.
pub fn random_povm(d: usize, n: usize, seed: u64) -> Result<Povm> {
    random_povm_with(&mut rng::stream(seed, "random_povm", 0), d, n, d)
}

/// Random POVM whose effects all have rank one. Requires `n ≥ d`.
pub fn random_rank_one_povm(d: usize, n: usize, seed: u64) -> Result<Povm> {
    if n < d {
        return Err(Error::Precondition(format!(
            "rank-one POVM needs at least {d} outcomes, got {n}"
        )));
    }
    random_povm_with(&mut rng::stream(seed, "random_rank_one_povm", 0), d, n, 1)
}

/// Same construction as [`random_povm`] drawing from `rng`, with effects of
/// rank at most `rank`. A singular `S` triggers a fresh draw.
pub fn random_povm_with(rng: &mut Rng, d: usize, n: usize, rank: usize) -> Result<Povm> {
    if d == 0 || n == 0 || rank == 0 {
        return Err(Error::Precondition(format!(
            "random POVM needs d, n, rank >= 1 (got {d}, {n}, {rank})"
        )));
    }
    const ATTEMPTS: usize = 16;
    for _ in 0..ATTEMPTS {
        let raw: Vec<HermitianOperator> = (0..n)
            .map(|_| {
                let g = ginibre(rng, d, rank);
                HermitianOperator::from_matrix(&g * g.adjoint())
            })
            .collect();
        let total = raw
            .iter()
            .fold(HermitianOperator::zeros(d), |acc, a| &acc + a);
        let spec = total.spectrum();
        if spec.min() <= 1e-8 * spec.max() {
            continue;
        }
        let inv_sqrt = spec.apply(|l| 1.0 / l.sqrt());
        let effects = raw
            .iter()
            .map(|a| a.conjugated_by(inv_sqrt.entries()))
            .collect();
        return Povm::new(effects);
    }
    Err(Error::Generation(format!(
        "S stayed singular over {ATTEMPTS} draws (d={d}, n={n}, rank={rank})"
    )))
}
