//! The row-stochastic transition matrix `A`, probability vectors, and the
//! `A^T x` kernel shared by every solver.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Row-sum and unit-norm tolerance for stored matrices and vectors.
pub const STOCHASTIC_TOL: f64 = 1e-12;
/// Vectors whose sum is within this distance of 1 are silently renormalized.
pub const RENORMALIZE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
enum Weights {
    /// One weight per row, `1/d(v_i)` for graph-derived matrices.
    PerRow(Vec<f64>),
    /// One weight per stored entry, for general row-stochastic matrices.
    PerEntry(Vec<f64>),
}

/// Sparse row-compressed row-stochastic matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct RowStochasticMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    weights: Weights,
}

impl RowStochasticMatrix {
    /// General constructor from explicit rows of `(column, weight)` entries.
    ///
    /// Zero weights are dropped. Rows must be nonnegative, free of repeated
    /// columns and sum to 1 within [`STOCHASTIC_TOL`]. Diagonal entries are
    /// allowed here; graph-derived matrices never have them.
    pub fn from_rows(rows: &[Vec<(usize, f64)>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidParameter("matrix must have at least one row".into()));
        }
        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut col_idx = Vec::new();
        let mut weights = Vec::new();
        row_ptr.push(0);
        for (i, row) in rows.iter().enumerate() {
            let mut entries: Vec<(usize, f64)> = row.iter().copied().filter(|&(_, w)| w != 0.0).collect();
            entries.sort_by_key(|&(j, _)| j);
            let reject = |reason: String| Err(Error::NotRowStochastic { row: i, reason });
            if entries.windows(2).any(|p| p[0].0 == p[1].0) {
                return reject("repeated column index".into());
            }
            let mut sum = 0.0;
            for &(j, w) in &entries {
                if j >= n {
                    return reject(format!("column {j} out of range"));
                }
                if !(w.is_finite() && w > 0.0) {
                    return reject(format!("entry ({i}, {j}) = {w} is not a positive weight"));
                }
                sum += w;
            }
            if (sum - 1.0).abs() > STOCHASTIC_TOL {
                return reject(format!("row sums to {sum}"));
            }
            for (j, w) in entries {
                col_idx.push(j);
                weights.push(w);
            }
            row_ptr.push(col_idx.len());
        }
        Ok(RowStochasticMatrix { n, row_ptr, col_idx, weights: Weights::PerEntry(weights) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.col_idx.len()
    }

    /// Stored entries `(column, weight)` of row `i` in ascending column order.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        let cols = &self.col_idx[range.clone()];
        cols.iter().zip(range).map(move |(&j, k)| {
            let w = match &self.weights {
                Weights::PerRow(w) => w[i],
                Weights::PerEntry(w) => w[k],
            };
            (j, w)
        })
    }

    /// Entry `(i, i)`, zero when absent.
    pub fn diagonal(&self, i: usize) -> f64 {
        self.row(i).find(|&(j, _)| j == i).map_or(0.0, |(_, w)| w)
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.n).all(|i| self.diagonal(i) == 0.0)
    }

    /// `y = A^T x`, returning a fresh vector.
    pub fn apply_transposed(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut y = vec![0.0; self.n];
        self.apply_transposed_into(x, &mut y)?;
        Ok(y)
    }

    /// `y = A^T x` into a caller buffer.
    ///
    /// Scatter over rows in ascending order: `y[j] += a[i][j] * x[i]`. The
    /// fixed order makes results bit-reproducible.
    pub fn apply_transposed_into(&self, x: &[f64], y: &mut [f64]) -> Result<()> {
        check_dim(self.n, x.len())?;
        check_dim(self.n, y.len())?;
        y.fill(0.0);
        match &self.weights {
            Weights::PerRow(w) => {
                for (i, (&xi, &wi)) in x.iter().zip(w).enumerate() {
                    let scaled = wi * xi;
                    for &j in &self.col_idx[self.row_ptr[i]..self.row_ptr[i + 1]] {
                        y[j] += scaled;
                    }
                }
            }
            Weights::PerEntry(w) => {
                for (i, &xi) in x.iter().enumerate() {
                    for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                        y[self.col_idx[k]] += w[k] * xi;
                    }
                }
            }
        }
        Ok(())
    }

    /// Dense copy of `A` (row-major), for small verification routines.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut dense = vec![vec![0.0; self.n]; self.n];
        for (i, row) in dense.iter_mut().enumerate() {
            for (j, w) in self.row(i) {
                row[j] = w;
            }
        }
        dense
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Degree-normalized adjacency: entry `(i, j)` is `1/d(v_i)` for each edge.
pub fn transition_matrix(g: &Graph) -> Result<RowStochasticMatrix> {
    let n = g.n();
    let mut row_ptr = Vec::with_capacity(n + 1);
    let mut col_idx = Vec::with_capacity(2 * g.edge_count());
    let mut weights = Vec::with_capacity(n);
    row_ptr.push(0);
    for i in 0..n {
        let nbrs = g.neighbors(i);
        if nbrs.is_empty() {
            return Err(Error::IsolatedVertex(i));
        }
        col_idx.extend_from_slice(nbrs);
        weights.push(1.0 / nbrs.len() as f64);
        row_ptr.push(col_idx.len());
    }
    Ok(RowStochasticMatrix { n, row_ptr, col_idx, weights: Weights::PerRow(weights) })
}

/// Nonnegative vector with unit L1 norm.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    /// Validates entries: every entry finite and `>= 0` (exact check), sum
    /// within [`RENORMALIZE_TOL`] of 1. Sums off by more than
    /// [`STOCHASTIC_TOL`] are rescaled.
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidParameter("probability vector must be nonempty".into()));
        }
        for (index, &value) in entries.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidEntry { index, value });
            }
        }
        let sum: f64 = entries.iter().sum();
        if (sum - 1.0).abs() <= STOCHASTIC_TOL {
            Ok(ProbabilityVector(entries))
        } else if (sum - 1.0).abs() <= RENORMALIZE_TOL {
            Ok(ProbabilityVector(entries.into_iter().map(|x| x / sum).collect()))
        } else {
            Err(Error::NotNormalized { sum })
        }
    }

    /// Scales a nonnegative vector with positive sum to unit L1 norm.
    pub fn normalized(entries: Vec<f64>) -> Result<Self> {
        for (index, &value) in entries.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidEntry { index, value });
            }
        }
        let sum: f64 = entries.iter().sum();
        if sum <= 0.0 {
            return Err(Error::NotNormalized { sum });
        }
        Ok(ProbabilityVector(entries.into_iter().map(|x| x / sum).collect()))
    }

    /// Unit mass on one vertex.
    pub fn point_mass(n: usize, vertex: usize) -> Result<Self> {
        if vertex >= n {
            return Err(Error::InvalidParameter(format!("vertex {vertex} out of range for n = {n}")));
        }
        let mut e = vec![0.0; n];
        e[vertex] = 1.0;
        Ok(ProbabilityVector(e))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl std::ops::Deref for ProbabilityVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl<'de> Deserialize<'de> for ProbabilityVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<f64>::deserialize(d)?;
        ProbabilityVector::new(raw).map_err(serde::de::Error::custom)
    }
}

/// `f_i = d(v_i) / 2|E|`.
pub fn degree_distribution(g: &Graph) -> Result<ProbabilityVector> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyEdgeSet);
    }
    let m2 = (2 * g.edge_count()) as f64;
    ProbabilityVector::new((0..g.n()).map(|v| g.degree(v) as f64 / m2).collect())
}

pub fn uniform_vector(n: usize) -> Result<ProbabilityVector> {
    if n == 0 {
        return Err(Error::InvalidParameter("uniform vector needs n >= 1".into()));
    }
    ProbabilityVector::new(vec![1.0 / n as f64; n])
}

/// One real per line, shortest round-trip decimal form.
pub fn format_vector_text(x: &[f64]) -> String {
    let mut out = String::new();
    for v in x {
        out.push_str(&format!("{v}\n"));
    }
    out
}

pub fn format_vector_json(x: &[f64]) -> String {
    serde_json::to_string(x).expect("f64 slices serialize")
}

/// Reads a vector either as a JSON array or as one real per line (blank
/// lines and `#` comments skipped).
pub fn parse_vector(text: &str) -> Result<Vec<f64>> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        return serde_json::from_str(trimmed).map_err(|e| Error::Parse {
            location: crate::Location::Unknown,
            message: format!("invalid JSON vector: {e}"),
        });
    }
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v = line.parse::<f64>().map_err(|_| Error::Parse {
            location: crate::Location::Line(idx + 1),
            message: format!("invalid real `{line}`"),
        })?;
        out.push(v);
    }
    Ok(out)
}
