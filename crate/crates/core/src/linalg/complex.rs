use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use super::scalar::Field;
use crate::error::{Error, Result};

/// Degree-indexed dimensions with finite support. Zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GradedDims(BTreeMap<i64, usize>);

impl GradedDims {
    pub fn new() -> Self {
        Self::default()
    }

    /// Single nonzero entry `dim` in degree `degree`.
    pub fn concentrated(degree: i64, dim: usize) -> Self {
        let mut g = Self::new();
        g.set(degree, dim);
        g
    }

    pub fn get(&self, degree: i64) -> usize {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn set(&mut self, degree: i64, dim: usize) {
        if dim == 0 {
            self.0.remove(&degree);
        } else {
            self.0.insert(degree, dim);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.0.iter().map(|(&k, &v)| (k, v))
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.0.keys().next_back().copied()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.iter().map(|(n, d)| if n.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) }).sum()
    }
}

impl FromIterator<(i64, usize)> for GradedDims {
    fn from_iter<I: IntoIterator<Item = (i64, usize)>>(iter: I) -> Self {
        let mut g = GradedDims::new();
        for (k, v) in iter {
            g.set(k, g.get(k) + v);
        }
        g
    }
}

impl fmt::Display for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (k, v)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}: {v}")?;
        }
        write!(f, "}}")
    }
}

/// Bounded cochain complex `C^lo -> C^{lo+1} -> ... -> C^hi`.
///
/// `differential(n)` has shape `dim(n+1) x dim(n)`; outside the support every space is 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    field: Field,
    lo: i64,
    dims: Vec<usize>,
    differentials: Vec<Matrix>,
}

impl CochainComplex {
    /// `differentials[k]` maps degree `lo + k` to `lo + k + 1`; there must be
    /// `dims.len() - 1` of them (or none when `dims` is empty).
    pub fn new(field: Field, lo: i64, dims: Vec<usize>, differentials: Vec<Matrix>) -> Result<Self> {
        check_shapes(field, &dims, &differentials, |k| (dims[k + 1], dims[k]))?;
        let c = CochainComplex { field, lo, dims, differentials };
        for k in 1..c.differentials.len() {
            if !(&c.differentials[k] * &c.differentials[k - 1]).is_zero() {
                return Err(Error::NotAComplex { degree: lo + k as i64 - 1 });
            }
        }
        Ok(c)
    }

    /// A single space in degree `degree`.
    pub fn concentrated(field: Field, degree: i64, dim: usize) -> Self {
        CochainComplex { field, lo: degree, dims: vec![dim], differentials: vec![] }
    }

    pub fn zero(field: Field) -> Self {
        CochainComplex { field, lo: 0, dims: vec![], differentials: vec![] }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest degree in the support (`lo - 1` when empty).
    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn dim(&self, n: i64) -> usize {
        index(self.lo, self.dims.len(), n).map_or(0, |k| self.dims[k])
    }

    pub fn dims(&self) -> GradedDims {
        (0..self.dims.len()).map(|k| (self.lo + k as i64, self.dims[k])).collect()
    }

    /// The differential `C^n -> C^{n+1}`.
    pub fn differential(&self, n: i64) -> Matrix {
        match index(self.lo, self.differentials.len(), n) {
            Some(k) => self.differentials[k].clone(),
            None => Matrix::zeros(self.field, self.dim(n + 1), self.dim(n)),
        }
    }

    pub fn cohomology_dims(&self) -> GradedDims {
        let ranks: Vec<usize> = self.differentials.iter().map(Matrix::rank).collect();
        let rank = |k: i64| -> usize {
            if k < 0 {
                0
            } else {
                ranks.get(k as usize).copied().unwrap_or(0)
            }
        };
        (0..self.dims.len())
            .map(|k| {
                let k = k as i64;
                (self.lo + k, self.dims[k as usize] - rank(k) - rank(k - 1))
            })
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims().euler_characteristic()
    }
}

/// Bounded chain complex `C_hi -> ... -> C_lo`.
///
/// `differential(n)` maps degree `n` to `n - 1` and has shape `dim(n-1) x dim(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    field: Field,
    lo: i64,
    dims: Vec<usize>,
    differentials: Vec<Matrix>,
}

impl ChainComplex {
    /// `differentials[k]` maps degree `lo + k + 1` to `lo + k`.
    pub fn new(field: Field, lo: i64, dims: Vec<usize>, differentials: Vec<Matrix>) -> Result<Self> {
        check_shapes(field, &dims, &differentials, |k| (dims[k], dims[k + 1]))?;
        let c = ChainComplex { field, lo, dims, differentials };
        for k in 1..c.differentials.len() {
            if !(&c.differentials[k - 1] * &c.differentials[k]).is_zero() {
                return Err(Error::NotAComplex { degree: lo + k as i64 + 1 });
            }
        }
        Ok(c)
    }

    pub fn concentrated(field: Field, degree: i64, dim: usize) -> Self {
        ChainComplex { field, lo: degree, dims: vec![dim], differentials: vec![] }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn dim(&self, n: i64) -> usize {
        index(self.lo, self.dims.len(), n).map_or(0, |k| self.dims[k])
    }

    pub fn dims(&self) -> GradedDims {
        (0..self.dims.len()).map(|k| (self.lo + k as i64, self.dims[k])).collect()
    }

    /// The differential `C_n -> C_{n-1}`.
    pub fn differential(&self, n: i64) -> Matrix {
        match index(self.lo + 1, self.differentials.len(), n) {
            Some(k) => self.differentials[k].clone(),
            None => Matrix::zeros(self.field, self.dim(n - 1), self.dim(n)),
        }
    }

    pub fn homology_dims(&self) -> GradedDims {
        let ranks: Vec<usize> = self.differentials.iter().map(Matrix::rank).collect();
        // ranks[k] is the rank of d_{lo+k+1}
        let rank_out = |k: usize| if k == 0 { 0 } else { ranks.get(k - 1).copied().unwrap_or(0) };
        let rank_in = |k: usize| ranks.get(k).copied().unwrap_or(0);
        (0..self.dims.len()).map(|k| (self.lo + k as i64, self.dims[k] - rank_out(k) - rank_in(k))).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims().euler_characteristic()
    }
}

fn index(lo: i64, len: usize, n: i64) -> Option<usize> {
    let k = n - lo;
    (k >= 0 && (k as usize) < len).then_some(k as usize)
}

fn check_shapes(
    field: Field,
    dims: &[usize],
    differentials: &[Matrix],
    expected: impl Fn(usize) -> (usize, usize),
) -> Result<()> {
    if differentials.len() + 1 != dims.len().max(1) {
        return Err(Error::InvalidInput(format!(
            "{} spaces need {} differentials, got {}",
            dims.len(),
            dims.len().saturating_sub(1),
            differentials.len()
        )));
    }
    for (k, d) in differentials.iter().enumerate() {
        if d.field() != field {
            return Err(Error::FieldMismatch { expected: field, found: d.field() });
        }
        if d.shape() != expected(k) {
            return Err(Error::ShapeMismatch {
                context: format!("differential {k}"),
                expected: expected(k),
                found: d.shape(),
            });
        }
    }
    Ok(())
}
