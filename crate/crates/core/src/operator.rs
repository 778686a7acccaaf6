//! Dense Hermitian operators and their spectral calculus.
//!
//! [`HermitianOperator`] carries POVM effects, unnormalized bipartite
//! operators and density matrices alike. Entropies are in bits and are
//! defined on positive semidefinite operators without requiring unit trace:
//! `S(M) = −Σ λ log₂ λ` over the numerical support of `M`.
//!
//! Bipartite operators use row-major subsystem ordering: basis index
//! `iA·dB + iB`.

use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerance::{EIG_CUTOFF, HERMITIAN_TOL, PSD_TOL, SUPPORT_TOL};

/// Dense complex matrix.
pub type CMatrix = DMatrix<Complex64>;

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `max |m_ij − conj(m_ji)|`.
pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    if !m.is_square() {
        return f64::INFINITY;
    }
    let n = m.nrows();
    let mut dev: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

/// A square complex matrix equal to its conjugate transpose, optionally
/// tagged with a bipartite factorization `dim = dA·dB`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianOperator {
    entries: CMatrix,
    dims_split: Option<(usize, usize)>,
}

impl HermitianOperator {
    /// Validates squareness and Hermiticity (within [`HERMITIAN_TOL`]). The
    /// stored matrix is the Hermitian part of `entries`.
    pub fn new(entries: CMatrix) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::NotSquare {
                rows: entries.nrows(),
                cols: entries.ncols(),
            });
        }
        let deviation = hermitian_deviation(&entries);
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self::from_matrix(entries))
    }

    /// Same as [`new`](Self::new) followed by [`with_split`](Self::with_split).
    pub fn bipartite(entries: CMatrix, dim_a: usize, dim_b: usize) -> Result<Self> {
        Self::new(entries)?.with_split(dim_a, dim_b)
    }

    /// Hermitian part of a matrix already known to be Hermitian up to round-off.
    pub(crate) fn from_matrix(m: CMatrix) -> Self {
        let entries = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
        Self {
            entries,
            dims_split: None,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            entries: CMatrix::identity(dim, dim),
            dims_split: None,
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            entries: CMatrix::zeros(dim, dim),
            dims_split: None,
        }
    }

    pub fn diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        Self {
            entries: CMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    Complex64::new(diag[i], 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }),
            dims_split: None,
        }
    }

    /// `|v⟩⟨v|`, unnormalized.
    pub fn ket_bra(v: &[Complex64]) -> Self {
        let n = v.len();
        Self {
            entries: CMatrix::from_fn(n, n, |i, j| v[i] * v[j].conj()),
            dims_split: None,
        }
    }

    /// `|v⟩⟨v|` for a real vector.
    pub fn real_ket_bra(v: &[f64]) -> Self {
        let c: Vec<Complex64> = v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::ket_bra(&c)
    }

    /// Computational basis projector `|i⟩⟨i|` on dimension `dim`.
    pub fn basis_projector(dim: usize, i: usize) -> Self {
        let mut diag = vec![0.0; dim];
        diag[i] = 1.0;
        Self::diagonal(&diag)
    }

    /// Attaches the factorization `dim = dim_a·dim_b`.
    pub fn with_split(mut self, dim_a: usize, dim_b: usize) -> Result<Self> {
        if dim_a * dim_b != self.dim() || dim_a == 0 {
            return Err(Error::InvalidSplit(dim_a, dim_b, self.dim()));
        }
        self.dims_split = Some((dim_a, dim_b));
        Ok(self)
    }

    pub(crate) fn set_split(&mut self, split: Option<(usize, usize)>) {
        debug_assert!(split.map_or(true, |(a, b)| a * b == self.dim()));
        self.dims_split = split;
    }

    pub fn without_split(mut self) -> Self {
        self.dims_split = None;
        self
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn dims_split(&self) -> Option<(usize, usize)> {
        self.dims_split
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_entries(self) -> CMatrix {
        self.entries
    }

    /// Real part of the trace (the imaginary part vanishes by Hermiticity).
    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.entries[(i, i)].re).sum()
    }

    /// `tr(self · other)`, real for Hermitian arguments.
    pub fn trace_product(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        let n = self.dim();
        let mut acc = 0.0;
        for i in 0..n {
            for k in 0..n {
                acc += (self.entries[(i, k)] * other.entries[(k, i)]).re;
            }
        }
        acc
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            entries: &self.entries * Complex64::new(factor, 0.0),
            dims_split: self.dims_split,
        }
    }

    /// `U M U†`. `u` need not be square; the result has dimension `u.nrows()`.
    pub fn conjugated_by(&self, u: &CMatrix) -> Self {
        Self::from_matrix(u * &self.entries * u.adjoint())
    }

    pub fn spectrum(&self) -> Spectrum {
        Spectrum::new(self)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.spectrum().min()
    }

    /// `max_ij |self_ij − other_ij|`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        max_abs(&(&self.entries - &other.entries))
    }

    /// Largest off-diagonal modulus in the computational basis.
    pub fn max_off_diagonal(&self) -> f64 {
        let n = self.dim();
        let mut m: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    m = m.max(self.entries[(i, j)].norm());
                }
            }
        }
        m
    }

    /// Partial transpose on the second factor.
    pub fn partial_transpose(&self) -> Result<Self> {
        let (da, db) = self.dims_split.ok_or(Error::MissingSplit)?;
        let mut out = CMatrix::zeros(self.dim(), self.dim());
        for ia in 0..da {
            for ib in 0..db {
                for ja in 0..da {
                    for jb in 0..db {
                        out[(ia * db + ib, ja * db + jb)] = self.entries[(ia * db + jb, ja * db + ib)];
                    }
                }
            }
        }
        let mut op = Self::from_matrix(out);
        op.dims_split = self.dims_split;
        Ok(op)
    }
}

impl Add for &HermitianOperator {
    type Output = HermitianOperator;

    fn add(self, rhs: Self) -> HermitianOperator {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        HermitianOperator {
            entries: &self.entries + &rhs.entries,
            dims_split: common_split(self, rhs),
        }
    }
}

impl Sub for &HermitianOperator {
    type Output = HermitianOperator;

    fn sub(self, rhs: Self) -> HermitianOperator {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        HermitianOperator {
            entries: &self.entries - &rhs.entries,
            dims_split: common_split(self, rhs),
        }
    }
}

impl Mul<f64> for &HermitianOperator {
    type Output = HermitianOperator;

    fn mul(self, rhs: f64) -> HermitianOperator {
        self.scaled(rhs)
    }
}

fn common_split(a: &HermitianOperator, b: &HermitianOperator) -> Option<(usize, usize)> {
    match (a.dims_split, b.dims_split) {
        (Some(x), Some(y)) if x == y => Some(x),
        (Some(x), None) | (None, Some(x)) => Some(x),
        _ => None,
    }
}

/// Eigendecomposition `M = V diag(λ) V†` with eigenvalues sorted descending.
#[derive(Clone, Debug)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    eigenvectors: CMatrix,
}

impl Spectrum {
    pub fn new(op: &HermitianOperator) -> Self {
        let n = op.dim();
        if n == 0 {
            return Self {
                eigenvalues: Vec::new(),
                eigenvectors: CMatrix::zeros(0, 0),
            };
        }
        let eig = op.entries.clone().symmetric_eigen();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
        let eigenvalues = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let eigenvectors = CMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
        Self {
            eigenvalues,
            eigenvectors,
        }
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Unitary whose columns are the eigenvectors, in eigenvalue order.
    pub fn eigenvectors(&self) -> &CMatrix {
        &self.eigenvectors
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// `V diag(f(λ)) V†`.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> HermitianOperator {
        let v = &self.eigenvectors;
        let scaled = CMatrix::from_fn(v.nrows(), v.ncols(), |i, j| {
            v[(i, j)] * f(self.eigenvalues[j])
        });
        HermitianOperator::from_matrix(scaled * v.adjoint())
    }

    pub fn reconstruct(&self) -> HermitianOperator {
        self.apply(|x| x)
    }

    /// Number of eigenvalues above [`EIG_CUTOFF`].
    pub fn rank(&self) -> usize {
        self.eigenvalues.iter().filter(|&&l| l > EIG_CUTOFF).count()
    }

    fn ensure_psd(&self) -> Result<()> {
        let min = self.min();
        if min < -PSD_TOL {
            Err(Error::NotPsd {
                min_eigenvalue: min,
            })
        } else {
            Ok(())
        }
    }
}

/// True iff the smallest eigenvalue of `m` is at least `−tol`.
pub fn validate_psd(m: &HermitianOperator, tol: f64) -> bool {
    m.min_eigenvalue() >= -tol
}

/// `−Σ λ log₂ λ` over eigenvalues above the numerical cutoff.
pub(crate) fn entropy_of_eigenvalues(eigenvalues: &[f64]) -> f64 {
    eigenvalues
        .iter()
        .filter(|&&l| l > EIG_CUTOFF)
        .map(|&l| -l * l.log2())
        .sum()
}

/// Von Neumann entropy in bits of a positive semidefinite operator (trace
/// not required to be one). `S(0) = 0`.
pub fn von_neumann_entropy(m: &HermitianOperator) -> Result<f64> {
    let spectrum = m.spectrum();
    spectrum.ensure_psd()?;
    Ok(entropy_of_eigenvalues(spectrum.eigenvalues()))
}

/// Quantum relative entropy `tr M (log₂ M − log₂ N)` in bits, or
/// `f64::INFINITY` when the image of `M` is not contained in the image of `N`.
///
/// `D(0‖N) = 0` for every `N`, including `N = 0`.
pub fn relative_entropy(m: &HermitianOperator, n: &HermitianOperator) -> Result<f64> {
    if m.dim() != n.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            found: n.dim(),
        });
    }
    let sm = m.spectrum();
    sm.ensure_psd()?;
    let sn = n.spectrum();
    sn.ensure_psd()?;

    if sm.rank() == 0 {
        return Ok(0.0);
    }

    let w = sn.eigenvectors();
    let rotated = w.adjoint() * m.entries() * w;
    let kernel: Vec<usize> = (0..n.dim())
        .filter(|&j| sn.eigenvalues[j] <= EIG_CUTOFF)
        .collect();

    if !kernel.is_empty() {
        // P_ker M P_ker = W_K (W_K† M W_K) W_K†
        let wk = CMatrix::from_fn(n.dim(), kernel.len(), |i, k| w[(i, kernel[k])]);
        let block = CMatrix::from_fn(kernel.len(), kernel.len(), |a, b| {
            rotated[(kernel[a], kernel[b])]
        });
        let leak = max_abs(&(&wk * block * wk.adjoint()));
        if leak > SUPPORT_TOL {
            return Ok(f64::INFINITY);
        }
    }

    let m_log_m: f64 = sm
        .eigenvalues()
        .iter()
        .filter(|&&l| l > EIG_CUTOFF)
        .map(|&l| l * l.log2())
        .sum();
    let m_log_n: f64 = (0..n.dim())
        .filter(|&j| sn.eigenvalues[j] > EIG_CUTOFF)
        .map(|j| rotated[(j, j)].re * sn.eigenvalues[j].log2())
        .sum();
    Ok(m_log_m - m_log_n)
}

/// Zeroes every off-diagonal entry in the computational basis.
#[cfg(not(feature = "fault-injection"))]
pub fn dephase(m: &HermitianOperator) -> HermitianOperator {
    let n = m.dim();
    let mut out = CMatrix::zeros(n, n);
    for i in 0..n {
        out[(i, i)] = Complex64::new(m.entries[(i, i)].re, 0.0);
    }
    HermitianOperator {
        entries: out,
        dims_split: m.dims_split,
    }
}

/// Deliberately wrong dephasing: flips the sign of the off-diagonal part.
#[cfg(feature = "fault-injection")]
pub fn dephase(m: &HermitianOperator) -> HermitianOperator {
    let n = m.dim();
    let out = CMatrix::from_fn(n, n, |i, j| {
        if i == j {
            m.entries[(i, i)]
        } else {
            -m.entries[(i, j)]
        }
    });
    HermitianOperator {
        entries: out,
        dims_split: m.dims_split,
    }
}

/// Kronecker product, tagged with the split `(dim M, dim N)`.
pub fn tensor(m: &HermitianOperator, n: &HermitianOperator) -> HermitianOperator {
    HermitianOperator {
        entries: m.entries.kronecker(&n.entries),
        dims_split: Some((m.dim(), n.dim())),
    }
}

/// Which factor of a bipartite operator to keep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Partial trace over the factor not selected by `keep`.
pub fn partial_trace(m: &HermitianOperator, keep: Subsystem) -> Result<HermitianOperator> {
    let (da, db) = m.dims_split.ok_or(Error::MissingSplit)?;
    let e = &m.entries;
    let out = match keep {
        Subsystem::A => CMatrix::from_fn(da, da, |i, j| {
            (0..db).map(|k| e[(i * db + k, j * db + k)]).sum()
        }),
        Subsystem::B => CMatrix::from_fn(db, db, |k, l| {
            (0..da).map(|i| e[(i * db + k, i * db + l)]).sum()
        }),
    };
    Ok(HermitianOperator::from_matrix(out))
}

/// Block-diagonal embedding `⊕_x M_x`.
pub fn direct_sum(blocks: &[HermitianOperator]) -> HermitianOperator {
    let total: usize = blocks.iter().map(HermitianOperator::dim).sum();
    let mut out = CMatrix::zeros(total, total);
    let mut offset = 0;
    for b in blocks {
        let d = b.dim();
        out.view_mut((offset, offset), (d, d)).copy_from(b.entries());
        offset += d;
    }
    HermitianOperator {
        entries: out,
        dims_split: None,
    }
}

/// `Σ_x D(M_x‖N_x)`, the relative entropy of the direct sums without
/// building them. Any infinite term makes the sum infinite.
pub fn direct_sum_relative_entropy(
    ms: &[HermitianOperator],
    ns: &[HermitianOperator],
) -> Result<f64> {
    if ms.len() != ns.len() {
        return Err(Error::LengthMismatch {
            left: ms.len(),
            right: ns.len(),
        });
    }
    let mut total = 0.0;
    for (m, n) in ms.iter().zip(ns) {
        total += relative_entropy(m, n)?;
    }
    Ok(total)
}
