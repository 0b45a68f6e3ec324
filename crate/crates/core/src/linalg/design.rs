use serde::Serialize;

use super::matrix::{norm, Matrix};
use crate::error::{Error, Result};

/// An ordering of the `p` design columns. Position `k` holds the (0-based)
/// index of the column orthogonalized `k`-th.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(p: usize) -> Self {
        Self((0..p).collect())
    }

    pub fn new(order: Vec<usize>) -> Result<Self> {
        let p = order.len();
        let mut seen = vec![false; p];
        for &j in &order {
            if j >= p || seen[j] {
                return Err(Error::InvalidOrder(format!(
                    "{order:?} is not a permutation of 0..{p}"
                )));
            }
            seen[j] = true;
        }
        Ok(Self(order))
    }

    /// Resolves column labels into a permutation.
    pub fn from_names<S: AsRef<str>>(names: &[S], columns: &[String]) -> Result<Self> {
        if names.len() != columns.len() {
            return Err(Error::InvalidOrder(format!(
                "order lists {} names but the design has {} columns",
                names.len(),
                columns.len()
            )));
        }
        let idx = names
            .iter()
            .map(|n| {
                let n = n.as_ref();
                columns
                    .iter()
                    .position(|c| c == n)
                    .ok_or_else(|| Error::InvalidOrder(format!("unknown column {n:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(idx)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Position at which column `col` is orthogonalized.
    pub fn position_of(&self, col: usize) -> Option<usize> {
        self.0.iter().position(|&c| c == col)
    }

    /// Permutation moving column `col` to the last position, keeping the
    /// others in their original relative order.
    pub fn moving_last(p: usize, col: usize) -> Self {
        let mut v: Vec<usize> = (0..p).filter(|&j| j != col).collect();
        v.push(col);
        Self(v)
    }
}

/// An `n × p` design with column labels and preprocessing flags.
#[derive(Debug, Clone, Serialize)]
pub struct DesignMatrix {
    values: Matrix,
    col_names: Vec<String>,
    centered: bool,
    scaled: bool,
}

impl DesignMatrix {
    /// Validates `n > p ≥ 1` and that no column is identically zero.
    pub fn new(values: Matrix, col_names: Vec<String>) -> Result<Self> {
        let (n, p) = (values.nrows(), values.ncols());
        if p == 0 {
            return Err(Error::InvalidDesign("design has no columns".into()));
        }
        if n <= p {
            return Err(Error::InvalidDesign(format!(
                "need n > p, got n = {n}, p = {p}"
            )));
        }
        if col_names.len() != p {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {p} columns",
                col_names.len()
            )));
        }
        let d = Self {
            values,
            col_names,
            centered: false,
            scaled: false,
        };
        d.check_columns()?;
        Ok(d)
    }

    /// Design with default labels `m1..mp`.
    pub fn unlabeled(values: Matrix) -> Result<Self> {
        let names = (1..=values.ncols()).map(|j| format!("m{j}")).collect();
        Self::new(values, names)
    }

    fn check_columns(&self) -> Result<()> {
        for j in 0..self.p() {
            let c = self.values.col(j);
            if c.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidDesign(format!(
                    "column {} has non-finite entries",
                    self.col_names[j]
                )));
            }
            if c.iter().all(|&v| v == 0.0) {
                return Err(Error::InvalidDesign(format!(
                    "column {} is all zero",
                    self.col_names[j]
                )));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.values.nrows()
    }

    pub fn p(&self) -> usize {
        self.values.ncols()
    }

    pub fn values(&self) -> &Matrix {
        &self.values
    }

    pub fn col(&self, j: usize) -> &[f64] {
        self.values.col(j)
    }

    pub fn col_names(&self) -> &[String] {
        &self.col_names
    }

    pub fn is_centered(&self) -> bool {
        self.centered
    }

    pub fn is_scaled(&self) -> bool {
        self.scaled
    }

    /// Flags the design as centered without touching the values. For
    /// designs whose columns are known to have zero mean by construction.
    pub fn assume_centered(mut self) -> Self {
        self.centered = true;
        self
    }

    /// Subtracts each column's mean.
    pub fn centered(&self) -> Result<Self> {
        let mut values = self.values.clone();
        for j in 0..self.p() {
            center_in_place(values.col_mut(j));
        }
        let d = Self {
            values,
            col_names: self.col_names.clone(),
            centered: true,
            scaled: self.scaled,
        };
        d.check_columns()?;
        Ok(d)
    }

    /// Divides each column by its sample standard deviation (n − 1 divisor)
    /// computed about the column mean.
    pub fn scaled(&self) -> Result<Self> {
        let mut values = self.values.clone();
        let n = self.n() as f64;
        for j in 0..self.p() {
            let c = values.col_mut(j);
            let mean = c.iter().sum::<f64>() / n;
            let ss: f64 = c.iter().map(|v| (v - mean) * (v - mean)).sum();
            let sd = (ss / (n - 1.0)).sqrt();
            if sd == 0.0 {
                return Err(Error::InvalidDesign(format!(
                    "column {} is constant",
                    self.col_names[j]
                )));
            }
            c.iter_mut().for_each(|v| *v /= sd);
        }
        Ok(Self {
            values,
            col_names: self.col_names.clone(),
            centered: self.centered,
            scaled: true,
        })
    }

    /// Centers, then optionally scales.
    pub fn standardized(&self, scale: bool) -> Result<Self> {
        let c = self.centered()?;
        if scale {
            c.scaled()
        } else {
            Ok(c)
        }
    }

    /// Column norms ‖m_j‖.
    pub fn col_norms(&self) -> Vec<f64> {
        (0..self.p()).map(|j| norm(self.col(j))).collect()
    }

    /// Replaces column `j` by `c · m_j`.
    pub fn with_scaled_column(&self, j: usize, c: f64) -> Result<Self> {
        let mut values = self.values.clone();
        values.col_mut(j).iter_mut().for_each(|v| *v *= c);
        let d = Self {
            values,
            col_names: self.col_names.clone(),
            centered: self.centered,
            scaled: false,
        };
        d.check_columns()?;
        Ok(d)
    }
}

pub(crate) fn center_in_place(v: &mut [f64]) {
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    v.iter_mut().for_each(|x| *x -= mean);
}

/// Copy of `y` with its mean removed.
pub fn center_vector(y: &[f64]) -> Vec<f64> {
    let mut v = y.to_vec();
    center_in_place(&mut v);
    v
}

/// Row-stacks `k` copies of the design: `[Mᵀ Mᵀ … Mᵀ]ᵀ`.
pub fn stack_replicates(m: &DesignMatrix, k: usize) -> Result<DesignMatrix> {
    if k == 0 {
        return Err(Error::InvalidDesign("replicate count must be >= 1".into()));
    }
    let (n, p) = (m.n(), m.p());
    let mut data = Vec::with_capacity(n * p * k);
    for j in 0..p {
        for _ in 0..k {
            data.extend_from_slice(m.col(j));
        }
    }
    Ok(DesignMatrix {
        values: Matrix::from_col_major(n * k, p, data),
        col_names: m.col_names.clone(),
        centered: m.centered,
        scaled: m.scaled,
    })
}

/// Row-stacks `k` copies of a response vector, matching [`stack_replicates`].
pub fn stack_vector(y: &[f64], k: usize) -> Vec<f64> {
    y.iter().copied().cycle().take(y.len() * k).collect()
}
