//! PageRank solvers.
//!
//! Two iterative routes compute the fixed point of
//! `x = c A^T x + (1-c) v`:
//!
//! * [`pagerank_power`] iterates the damped operator directly, starting at
//!   `v`. Every iterate keeps unit sum because `A^T` is column-stochastic.
//! * [`pagerank_linear`] runs Jacobi on `(I - c A^T) x = (1-c) v`, starting
//!   at the right-hand side, and stops on the true residual.
//!
//! [`pagerank_dense_oracle`] solves the same system by Gaussian elimination
//! for `n <= 64` and serves as ground truth in tests.

use serde::{Deserialize, Serialize};

use crate::dense;
use crate::error::{Error, Result};
use crate::transition::{check_dim, ProbabilityVector, RowStochasticMatrix};

pub const DEFAULT_DAMPING: f64 = 0.85;
pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 100_000;
/// Iterations without a new minimum of the stopping quantity after which an
/// iteration is treated as stuck at the floating-point floor.
pub const STALL_WINDOW: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PageRankConfig {
    pub c: f64,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for PageRankConfig {
    fn default() -> Self {
        PageRankConfig { c: DEFAULT_DAMPING, tol: DEFAULT_TOL, max_iter: DEFAULT_MAX_ITER }
    }
}

impl PageRankConfig {
    pub fn new(c: f64, tol: f64, max_iter: usize) -> Result<Self> {
        let cfg = PageRankConfig { c, tol, max_iter };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_damping(c: f64) -> Result<Self> {
        Self::new(c, DEFAULT_TOL, DEFAULT_MAX_ITER)
    }

    pub fn validate(&self) -> Result<()> {
        check_damping(self.c)?;
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidParameter(format!("tol must be positive, got {}", self.tol)));
        }
        if self.max_iter < 1 {
            return Err(Error::InvalidParameter("max_iter must be >= 1".into()));
        }
        Ok(())
    }
}

/// Rejects damping constants outside the open interval (0, 1).
pub fn check_damping(c: f64) -> Result<()> {
    if c > 0.0 && c < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("damping constant must lie in (0, 1), got {c}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Power,
    Linear,
    DenseOracle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Power => "power",
            Method::Linear => "linear",
            Method::DenseOracle => "dense_oracle",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PageRankResult {
    pub pi: ProbabilityVector,
    pub iterations: usize,
    /// `|(I - c A^T) pi - (1-c) v|_1` for the returned (renormalized) `pi`.
    pub residual: f64,
    pub method: Method,
    pub converged: bool,
    /// The stopping quantity stopped decreasing before reaching the
    /// tolerance; rounding, not the iteration budget, ended the solve.
    pub stalled: bool,
}

/// Tracks the smallest value of a stopping quantity seen so far.
struct StallGuard {
    best: f64,
    since_best: usize,
}

impl StallGuard {
    fn new() -> Self {
        StallGuard { best: f64::INFINITY, since_best: 0 }
    }

    /// Records `value`; true once [`STALL_WINDOW`] updates pass without a
    /// new minimum.
    fn stalled(&mut self, value: f64) -> bool {
        if value < self.best {
            self.best = value;
            self.since_best = 0;
        } else {
            self.since_best += 1;
        }
        self.since_best >= STALL_WINDOW
    }
}

/// `|(I - c A^T) x - (1-c) v|_1`. For unit-sum `x` this equals the fixed-point
/// defect `|(c A^T + (1-c) v 1^T) x - x|_1`.
pub fn linear_residual(a: &RowStochasticMatrix, c: f64, v: &[f64], x: &[f64]) -> Result<f64> {
    check_dim(a.n(), v.len())?;
    let ax = a.apply_transposed(x)?;
    Ok(x.iter()
        .zip(&ax)
        .zip(v)
        .map(|((&xi, &yi), &vi)| (xi - c * yi - (1.0 - c) * vi).abs())
        .sum())
}

#[allow(clippy::too_many_arguments)]
fn finish(
    a: &RowStochasticMatrix,
    c: f64,
    v: &ProbabilityVector,
    x: Vec<f64>,
    iterations: usize,
    method: Method,
    converged: bool,
    stalled: bool,
) -> Result<PageRankResult> {
    let pi = ProbabilityVector::normalized(x)?;
    let residual = linear_residual(a, c, v, &pi)?;
    Ok(PageRankResult { pi, iterations, residual, method, converged, stalled })
}

/// Power iteration `x <- c A^T x + (1-c) v` from `x_0 = v`.
///
/// Stops when `|x_{k+1} - x_k|_1 <= tol * (1-c)`; by the L1 contraction of
/// `c A^T` this bounds the distance to the fixed point by `c * tol`.
///
/// In exact arithmetic the step shrinks by at least a factor `c` per
/// iteration. On bipartite graphs with `c` close to 1 rounding can lock the
/// iterates into a period-2 cycle whose step sits above `tol * (1-c)`; the
/// solve then ends after [`STALL_WINDOW`] non-improving steps with
/// `stalled` set and `converged` false.
pub fn pagerank_power(
    a: &RowStochasticMatrix,
    cfg: &PageRankConfig,
    v: &ProbabilityVector,
) -> Result<PageRankResult> {
    pagerank_power_observed(a, cfg, v, |_, _| {})
}

/// [`pagerank_power`] calling `observer(iterate, step)` after every update,
/// where `step` is the L1 distance to the previous iterate.
pub fn pagerank_power_observed(
    a: &RowStochasticMatrix,
    cfg: &PageRankConfig,
    v: &ProbabilityVector,
    mut observer: impl FnMut(&[f64], f64),
) -> Result<PageRankResult> {
    cfg.validate()?;
    check_dim(a.n(), v.len())?;
    let c = cfg.c;
    let threshold = cfg.tol * (1.0 - c);
    let mut x = v.to_vec();
    let mut next = vec![0.0; a.n()];
    let mut iterations = 0;
    let mut converged = false;
    let mut stalled = false;
    let mut guard = StallGuard::new();
    while iterations < cfg.max_iter {
        a.apply_transposed_into(&x, &mut next)?;
        let mut step = 0.0;
        for ((n, &xi), &vi) in next.iter_mut().zip(&x).zip(v.iter()) {
            *n = c * *n + (1.0 - c) * vi;
            step += (*n - xi).abs();
        }
        std::mem::swap(&mut x, &mut next);
        iterations += 1;
        observer(&x, step);
        if step <= threshold {
            converged = true;
            break;
        }
        if guard.stalled(step) {
            stalled = true;
            break;
        }
    }
    finish(a, c, v, x, iterations, Method::Power, converged, stalled)
}

/// Jacobi iteration on `(I - c A^T) x = (1-c) v` from `x_0 = (1-c) v`.
///
/// For matrices with zero diagonal each sweep adds one more term of the
/// Neumann series `(1-c) sum_k c^k (A^T)^k v`. Stops when the L1 residual is
/// at most `tol * (1-c)`, which bounds the error by `tol` because
/// `|(I - c A^T)^{-1}|_1 = 1/(1-c)`.
pub fn pagerank_linear(
    a: &RowStochasticMatrix,
    cfg: &PageRankConfig,
    v: &ProbabilityVector,
) -> Result<PageRankResult> {
    cfg.validate()?;
    let n = a.n();
    check_dim(n, v.len())?;
    let c = cfg.c;
    let threshold = cfg.tol * (1.0 - c);
    let b: Vec<f64> = v.iter().map(|&vi| (1.0 - c) * vi).collect();
    let diag: Vec<f64> = (0..n).map(|i| a.diagonal(i)).collect();
    let mut x = b.clone();
    let mut ax = vec![0.0; n];
    let mut iterations = 0;
    let mut converged = false;
    let mut stalled = false;
    let mut guard = StallGuard::new();
    loop {
        a.apply_transposed_into(&x, &mut ax)?;
        let residual: f64 = (0..n).map(|i| (x[i] - c * ax[i] - b[i]).abs()).sum();
        if residual <= threshold {
            converged = true;
            break;
        }
        if iterations >= cfg.max_iter {
            break;
        }
        if guard.stalled(residual) {
            stalled = true;
            break;
        }
        for i in 0..n {
            let off_diagonal = (ax[i] - diag[i] * x[i]).max(0.0);
            x[i] = (b[i] + c * off_diagonal) / (1.0 - c * diag[i]);
        }
        iterations += 1;
    }
    finish(a, c, v, x, iterations, Method::Linear, converged, stalled)
}

/// `(1-c) (I - c A^T)^{-1} v` by dense Gaussian elimination. Not renormalized.
pub fn pagerank_dense_oracle(a: &RowStochasticMatrix, c: f64, v: &ProbabilityVector) -> Result<Vec<f64>> {
    check_damping(c)?;
    check_dim(a.n(), v.len())?;
    let m = dense::identity_minus_scaled_transpose(a, c)?;
    let b: Vec<f64> = v.iter().map(|&vi| (1.0 - c) * vi).collect();
    dense::solve(&m, &b)
}

/// Dispatches to one of the three methods.
pub fn pagerank(
    a: &RowStochasticMatrix,
    cfg: &PageRankConfig,
    v: &ProbabilityVector,
    method: Method,
) -> Result<PageRankResult> {
    match method {
        Method::Power => pagerank_power(a, cfg, v),
        Method::Linear => pagerank_linear(a, cfg, v),
        Method::DenseOracle => {
            cfg.validate()?;
            let x = pagerank_dense_oracle(a, cfg.c, v)?;
            // Elimination can leave entries like -1e-18 where the exact value is 0.
            let x = x.into_iter().map(|xi| if xi < 0.0 && xi > -1e-14 { 0.0 } else { xi }).collect();
            finish(a, cfg.c, v, x, 0, Method::DenseOracle, true, false)
        }
    }
}

/// A nonnegative unit-norm `f` with `A^T f = f`, found by normalized power
/// iteration on the lazy operator `(I + A^T)/2` from the uniform vector.
///
/// The lazy operator has the same fixed points as `A^T` and does not
/// oscillate on periodic chains. Fails with [`Error::NotStationary`] when
/// `|A^T f - f|_1 <= tol` is not reached within `max_iter` steps.
pub fn stationary_vector(a: &RowStochasticMatrix, tol: f64, max_iter: usize) -> Result<ProbabilityVector> {
    let n = a.n();
    let mut x = vec![1.0 / n as f64; n];
    let mut ax = vec![0.0; n];
    let mut defect = f64::INFINITY;
    for _ in 0..max_iter {
        a.apply_transposed_into(&x, &mut ax)?;
        defect = x.iter().zip(&ax).map(|(xi, yi)| (xi - yi).abs()).sum();
        if defect <= tol {
            return ProbabilityVector::normalized(x);
        }
        for (xi, &yi) in x.iter_mut().zip(&ax) {
            *xi = 0.5 * (*xi + yi);
        }
        let s: f64 = x.iter().sum();
        x.iter_mut().for_each(|xi| *xi /= s);
    }
    Err(Error::NotStationary { defect })
}
