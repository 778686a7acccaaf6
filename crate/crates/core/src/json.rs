//! JSON interchange: row-major complex matrices as `[re, im]` pairs.
//!
//! ```json
//! {"dim": 2, "outcomes": 2, "dims_split": null,
//!  "effects": [{"dim": 2, "dims_split": null,
//!               "entries": [[[0.5, 0.0], [0.5, 0.0]], [[0.5, 0.0], [0.5, 0.0]]]}, ...]}
//! ```

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channel::KrausChannel;
use crate::error::{Error, Result};
use crate::measurement::{check_effects, Povm, Violation};
use crate::operator::{CMatrix, HermitianOperator};
use crate::tolerance::Tolerances;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    #[serde(default)]
    pub dims_split: Option<(usize, usize)>,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &CMatrix, dims_split: Option<(usize, usize)>) -> Self {
        let entries = (0..m.nrows())
            .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
            .collect();
        Self {
            dim: m.nrows(),
            dims_split,
            entries,
        }
    }

    /// The raw matrix. Rows must be rectangular; squareness is not required.
    pub fn to_matrix(&self) -> Result<CMatrix> {
        let rows = self.entries.len();
        let cols = self.entries.first().map_or(0, Vec::len);
        if let Some(bad) = self.entries.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(CMatrix::from_fn(rows, cols, |i, j| {
            let [re, im] = self.entries[i][j];
            Complex64::new(re, im)
        }))
    }
}

impl From<&HermitianOperator> for MatrixJson {
    fn from(op: &HermitianOperator) -> Self {
        Self::from_matrix(op.entries(), op.dims_split())
    }
}

impl TryFrom<&MatrixJson> for HermitianOperator {
    type Error = Error;

    fn try_from(m: &MatrixJson) -> Result<Self> {
        let raw = m.to_matrix()?;
        if raw.nrows() != m.dim {
            return Err(Error::DimensionMismatch {
                expected: m.dim,
                found: raw.nrows(),
            });
        }
        let op = HermitianOperator::new(raw)?;
        match m.dims_split {
            Some((a, b)) => op.with_split(a, b),
            None => Ok(op),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PovmJson {
    pub dim: usize,
    pub outcomes: usize,
    #[serde(default)]
    pub dims_split: Option<(usize, usize)>,
    pub effects: Vec<MatrixJson>,
}

impl PovmJson {
    /// Every violated POVM invariant, including disagreement with the
    /// declared `dim` and `outcomes`.
    pub fn violations(&self, tol: &Tolerances) -> Result<Vec<Violation>> {
        let raw = self
            .effects
            .iter()
            .map(MatrixJson::to_matrix)
            .collect::<Result<Vec<_>>>()?;
        let mut out = Vec::new();
        if let Some((index, e)) = raw
            .iter()
            .enumerate()
            .find(|(_, e)| e.nrows() != self.dim || e.ncols() != self.dim)
        {
            out.push(Violation::EffectShape {
                index,
                rows: e.nrows(),
                cols: e.ncols(),
                expected: self.dim,
            });
        }
        out.extend(check_effects(Some(self.outcomes), &raw, self.dims_split, tol));
        Ok(out)
    }

    pub fn to_povm(&self, tol: &Tolerances) -> Result<Povm> {
        let violations = self.violations(tol)?;
        if !violations.is_empty() {
            return Err(Error::InvalidPovm(violations));
        }
        let effects = self
            .effects
            .iter()
            .map(|m| m.to_matrix().map(HermitianOperator::from_matrix))
            .collect::<Result<Vec<_>>>()?;
        Povm::with_tolerances(effects, self.dims_split, tol)
    }
}

impl From<&Povm> for PovmJson {
    fn from(p: &Povm) -> Self {
        Self {
            dim: p.dim(),
            outcomes: p.outcomes(),
            dims_split: p.dims_split(),
            effects: p.effects().iter().map(MatrixJson::from).collect(),
        }
    }
}

impl TryFrom<&PovmJson> for Povm {
    type Error = Error;

    fn try_from(p: &PovmJson) -> Result<Self> {
        p.to_povm(&Tolerances::default())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelJson {
    pub in_dim: usize,
    pub out_dim: usize,
    pub kraus: Vec<MatrixJson>,
}

impl From<&KrausChannel> for ChannelJson {
    fn from(ch: &KrausChannel) -> Self {
        Self {
            in_dim: ch.in_dim(),
            out_dim: ch.out_dim(),
            kraus: ch.kraus().iter().map(|k| MatrixJson::from_matrix(k, None)).collect(),
        }
    }
}

impl TryFrom<&ChannelJson> for KrausChannel {
    type Error = Error;

    fn try_from(c: &ChannelJson) -> Result<Self> {
        let kraus = c
            .kraus
            .iter()
            .map(MatrixJson::to_matrix)
            .collect::<Result<Vec<_>>>()?;
        let ch = KrausChannel::new(kraus)?;
        if ch.in_dim() != c.in_dim || ch.out_dim() != c.out_dim {
            return Err(Error::InvalidChannel(format!(
                "declared {}->{}, Kraus operators are {}->{}",
                c.in_dim,
                c.out_dim,
                ch.in_dim(),
                ch.out_dim()
            )));
        }
        Ok(ch)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::cnot_dagger_channel;
    use crate::measurement::random_povm;

    #[test]
    fn povm_round_trip_is_lossless() {
        let p = random_povm(3, 4, 2).unwrap();
        let text = serde_json::to_string(&PovmJson::from(&p)).unwrap();
        let back: PovmJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Povm::try_from(&back).unwrap(), p);
    }

    #[test]
    fn channel_round_trip() {
        let ch = cnot_dagger_channel(2);
        let back = KrausChannel::try_from(&ChannelJson::from(&ch)).unwrap();
        assert_eq!(back, ch);
    }

    #[test]
    fn reports_incompleteness() {
        let mut j = PovmJson::from(&Povm::computational_basis(2));
        j.effects[0].entries[0][0] = [0.9, 0.0];
        let v = j.violations(&Tolerances::default()).unwrap();
        assert_eq!(v.len(), 1);
        assert!(v[0].to_string().starts_with("completeness"));
        assert!(matches!(Povm::try_from(&j), Err(Error::InvalidPovm(_))));
    }

    #[test]
    fn reports_declared_mismatches() {
        let mut j = PovmJson::from(&Povm::computational_basis(2));
        j.outcomes = 3;
        j.dim = 3;
        let v = j.violations(&Tolerances::default()).unwrap();
        assert!(v.iter().any(|x| matches!(x, Violation::OutcomeCount { .. })));
        assert!(v.iter().any(|x| matches!(x, Violation::EffectShape { .. })));
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let mut j = PovmJson::from(&Povm::computational_basis(2));
        j.effects[1].entries[1].pop();
        assert!(j.violations(&Tolerances::default()).is_err());
    }
}
