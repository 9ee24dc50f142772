//! L1 distances, the two-sided bound on `|pi - f|_1`, the difference
//! identity `(I - c A^T)(pi - f) = (1-c)(v - f)`, and the operator norms of
//! `I - c A^T` and its inverse.

use serde::{Deserialize, Serialize};

use crate::dense;
use crate::error::{Error, Result};
use crate::solver::check_damping;
use crate::transition::{check_dim, ProbabilityVector, RowStochasticMatrix};

/// Default slack for bound checks against solves at `tol = 1e-12`.
pub const DEFAULT_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }

    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

/// One instance of the sandwich `lower <= |pi - f|_1 <= upper`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub c: f64,
    pub distance_vf: f64,
    pub distance_pif: f64,
    pub lower: f64,
    pub upper: f64,
    pub slack: f64,
    /// Pass iff both inequalities hold within `slack`.
    pub verdict: Verdict,
    pub lower_holds: bool,
    pub upper_holds: bool,
    /// `|(I - c A^T)(pi - f) - (1-c)(v - f)|_1`.
    pub identity_defect: f64,
    pub identity_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub c: f64,
    pub norm_forward: f64,
    pub norm_inverse: f64,
    pub expected_forward: f64,
    pub expected_inverse: f64,
    pub deviation_forward: f64,
    pub deviation_inverse: f64,
}

impl NormReport {
    pub fn within(&self, slack: f64) -> bool {
        self.deviation_forward <= slack && self.deviation_inverse <= slack
    }
}

pub fn l1_distance(x: &[f64], y: &[f64]) -> Result<f64> {
    check_dim(x.len(), y.len())?;
    Ok(x.iter().zip(y).map(|(a, b)| (a - b).abs()).sum())
}

/// `((1-c)/(1+c) |v - f|_1, |v - f|_1)`.
pub fn theorem_bounds(v: &ProbabilityVector, f: &ProbabilityVector, c: f64) -> Result<(f64, f64)> {
    check_damping(c)?;
    let d = l1_distance(v, f)?;
    Ok(((1.0 - c) / (1.0 + c) * d, d))
}

/// `|(I - c A^T)(pi - f) - (1-c)(v - f)|_1` via one sparse `A^T` product.
pub fn difference_identity_defect(
    a: &RowStochasticMatrix,
    c: f64,
    v: &[f64],
    f: &[f64],
    pi: &[f64],
) -> Result<f64> {
    let n = a.n();
    check_dim(n, v.len())?;
    check_dim(n, f.len())?;
    check_dim(n, pi.len())?;
    let diff: Vec<f64> = pi.iter().zip(f).map(|(p, q)| p - q).collect();
    let ad = a.apply_transposed(&diff)?;
    Ok((0..n)
        .map(|i| (diff[i] - c * ad[i] - (1.0 - c) * (v[i] - f[i])).abs())
        .sum())
}

/// `|A^T f - f|_1`.
pub fn stationarity_defect(a: &RowStochasticMatrix, f: &[f64]) -> Result<f64> {
    let af = a.apply_transposed(f)?;
    l1_distance(&af, f)
}

/// Checks the sandwich for one solved instance.
///
/// `f` must satisfy `A^T f = f` within `slack`, otherwise the premise is
/// false and [`Error::NotStationary`] is returned.
pub fn check_theorem(
    a: &RowStochasticMatrix,
    c: f64,
    v: &ProbabilityVector,
    f: &ProbabilityVector,
    pi: &ProbabilityVector,
    slack: f64,
) -> Result<BoundReport> {
    check_damping(c)?;
    let defect = stationarity_defect(a, f)?;
    if defect > slack {
        return Err(Error::NotStationary { defect });
    }
    let (lower, upper) = theorem_bounds(v, f, c)?;
    let distance_pif = l1_distance(pi, f)?;
    let lower_holds = lower - slack <= distance_pif;
    let upper_holds = distance_pif <= upper + slack;
    let identity_defect = difference_identity_defect(a, c, v, f, pi)?;
    Ok(BoundReport {
        c,
        distance_vf: upper,
        distance_pif,
        lower,
        upper,
        slack,
        verdict: Verdict::from_bool(lower_holds && upper_holds),
        lower_holds,
        upper_holds,
        identity_defect,
        identity_holds: identity_defect <= slack,
    })
}

/// Dense L1 operator norms of `I - c A^T` and of its explicit inverse,
/// against `1 + c` and `1/(1-c)`.
///
/// The forward identity needs a zero diagonal, so matrices with self-loop
/// weight are rejected.
pub fn norm_identities(a: &RowStochasticMatrix, c: f64) -> Result<NormReport> {
    check_damping(c)?;
    dense::check_cap(a.n())?;
    if let Some(row) = (0..a.n()).find(|&i| a.diagonal(i) != 0.0) {
        return Err(Error::NonZeroDiagonal { row });
    }
    let m = dense::identity_minus_scaled_transpose(a, c)?;
    let inv = dense::inverse(&m)?;
    let norm_forward = dense::l1_operator_norm(&m);
    let norm_inverse = dense::l1_operator_norm(&inv);
    let expected_forward = 1.0 + c;
    let expected_inverse = 1.0 / (1.0 - c);
    Ok(NormReport {
        c,
        norm_forward,
        norm_inverse,
        expected_forward,
        expected_inverse,
        deviation_forward: (norm_forward - expected_forward).abs(),
        deviation_inverse: (norm_inverse - expected_inverse).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GeneratorSpec};
    use crate::solver::{pagerank_dense_oracle, pagerank_power, PageRankConfig};
    use crate::transition::{degree_distribution, transition_matrix, uniform_vector};

    fn setup(s: &str) -> (RowStochasticMatrix, ProbabilityVector) {
        let g = generate(&s.parse::<GeneratorSpec>().unwrap(), 0).unwrap();
        (transition_matrix(&g).unwrap(), degree_distribution(&g).unwrap())
    }

    fn oracle_pi(a: &RowStochasticMatrix, c: f64, v: &ProbabilityVector) -> ProbabilityVector {
        ProbabilityVector::new(pagerank_dense_oracle(a, c, v).unwrap()).unwrap()
    }

    #[test]
    fn l1_examples() {
        assert_eq!(l1_distance(&[0.5, 0.5], &[0.5, 0.5]).unwrap(), 0.0);
        assert_eq!(l1_distance(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 2.0);
        let d = l1_distance(&[1.0 / 3.0; 3], &[0.25, 0.5, 0.25]).unwrap();
        assert!((d - 1.0 / 3.0).abs() < 1e-15);
        assert!(l1_distance(&[1.0], &[1.0, 0.0]).is_err());
    }

    #[test]
    fn bounds_examples() {
        let (_, f) = setup("path:3");
        assert_eq!(theorem_bounds(&f, &f, 0.85).unwrap(), (0.0, 0.0));
        let u = uniform_vector(3).unwrap();
        let (lo, hi) = theorem_bounds(&u, &f, 0.85).unwrap();
        assert!((lo - 1.0 / 37.0).abs() < 1e-15);
        assert!((hi - 1.0 / 3.0).abs() < 1e-15);
        let (lo1, hi1) = theorem_bounds(&u, &f, 0.1).unwrap();
        let (lo9, hi9) = theorem_bounds(&u, &f, 0.9).unwrap();
        assert!((lo1 - 0.9 / 1.1 * hi).abs() < 1e-15);
        assert!((lo9 - 0.1 / 1.9 * hi).abs() < 1e-15);
        assert!(lo9 < lo1 && hi1 == hi9);
        assert!(theorem_bounds(&u, &f, 1.0).is_err());
        assert!(theorem_bounds(&u, &f, -0.2).is_err());
    }

    #[test]
    fn path_attains_lower_bound() {
        let (a, f) = setup("path:3");
        let u = uniform_vector(3).unwrap();
        // v - f = (1/12, -1/6, 1/12) is a -1 eigenvector of A^T.
        let vf: Vec<f64> = u.iter().zip(f.iter()).map(|(p, q)| p - q).collect();
        let avf = a.apply_transposed(&vf).unwrap();
        assert!(avf.iter().zip(&vf).all(|(x, y)| (x + y).abs() < 1e-15));
        let pi = oracle_pi(&a, 0.85, &u);
        let r = check_theorem(&a, 0.85, &u, &f, &pi, DEFAULT_SLACK).unwrap();
        assert!((r.distance_pif - 1.0 / 37.0).abs() <= 1e-9);
        assert!((r.distance_pif - r.lower).abs() <= 1e-12);
        assert!(r.verdict.is_pass() && r.identity_holds);
    }

    #[test]
    fn star_attains_lower_bound() {
        let (a, f) = setup("star:4");
        let u = uniform_vector(4).unwrap();
        let pi = oracle_pi(&a, 0.85, &u);
        let r = check_theorem(&a, 0.85, &u, &f, &pi, DEFAULT_SLACK).unwrap();
        assert!((r.distance_vf - 0.5).abs() < 1e-15);
        assert!((r.distance_pif - 3.0 / 74.0).abs() <= 1e-9);
        assert!((r.lower - 3.0 / 74.0).abs() <= 1e-12);
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn degree_personalization_collapses_bounds() {
        let (a, f) = setup("cycle:7");
        let pi = pagerank_power(&a, &PageRankConfig::default(), &f).unwrap().pi;
        let r = check_theorem(&a, 0.85, &f, &f, &pi, DEFAULT_SLACK).unwrap();
        assert_eq!((r.lower, r.upper), (0.0, 0.0));
        assert!(r.distance_pif <= DEFAULT_SLACK && r.verdict.is_pass());
    }

    #[test]
    fn violated_bound_is_reported() {
        let (a, f) = setup("star:4");
        let u = uniform_vector(4).unwrap();
        let wrong = ProbabilityVector::point_mass(4, 1).unwrap();
        let r = check_theorem(&a, 0.85, &u, &f, &wrong, DEFAULT_SLACK).unwrap();
        assert!(!r.upper_holds && r.verdict == Verdict::Fail && !r.identity_holds);
    }

    #[test]
    fn non_stationary_f_rejected() {
        let (a, _) = setup("star:4");
        let u = uniform_vector(4).unwrap();
        let err = check_theorem(&a, 0.85, &u, &u, &u, DEFAULT_SLACK).unwrap_err();
        assert!(matches!(err, Error::NotStationary { defect } if defect > 0.5));
    }

    #[test]
    fn norm_examples() {
        let (k3, _) = setup("complete:3");
        let r = norm_identities(&k3, 0.85).unwrap();
        assert!((r.norm_forward - 1.85).abs() <= 1e-10);
        assert!((r.norm_inverse - 1.0 / 0.15).abs() <= 1e-10);
        assert!(r.within(1e-10));
        let (p3, _) = setup("path:3");
        let r = norm_identities(&p3, 0.5).unwrap();
        assert!((r.norm_forward - 1.5).abs() <= 1e-12 && (r.norm_inverse - 2.0).abs() <= 1e-12);
        let (c9, _) = setup("cycle:9");
        let r = norm_identities(&c9, 0.99).unwrap();
        assert!((r.norm_inverse - 100.0).abs() / 100.0 <= 1e-6);
    }

    #[test]
    fn norm_rejects_large_or_looped() {
        let (a, _) = setup("cycle:80");
        assert!(matches!(norm_identities(&a, 0.5), Err(Error::DenseCapExceeded { .. })));
        let looped = RowStochasticMatrix::from_rows(&[vec![(0, 0.5), (1, 0.5)], vec![(0, 1.0)]]).unwrap();
        assert_eq!(norm_identities(&looped, 0.5), Err(Error::NonZeroDiagonal { row: 0 }));
    }

    #[test]
    fn identity_defect_examples() {
        let (a, f) = setup("star:4");
        let u = uniform_vector(4).unwrap();
        let c = 0.85;
        let exact = oracle_pi(&a, c, &u);
        assert!(difference_identity_defect(&a, c, &u, &f, &exact).unwrap() <= 1e-12);
        let power = pagerank_power(&a, &PageRankConfig::default(), &u).unwrap().pi;
        assert!(difference_identity_defect(&a, c, &u, &f, &power).unwrap() <= 1e-10);
        // pi := f turns the defect into (1-c)|v - f|_1.
        let d = difference_identity_defect(&a, c, &u, &f, &f).unwrap();
        assert!((d - (1.0 - c) * 0.5).abs() <= 1e-15);
    }

    #[test]
    fn report_json_field_names() {
        let (a, f) = setup("path:3");
        let r = check_theorem(&a, 0.5, &f, &f, &f, DEFAULT_SLACK).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        for key in ["c", "distance_vf", "distance_pif", "lower", "upper", "slack", "verdict"] {
            assert!(json.get(key).is_some(), "{key}");
        }
        assert_eq!(json["verdict"], "pass");
        let n = serde_json::to_value(norm_identities(&a, 0.5).unwrap()).unwrap();
        assert!(n.get("norm_forward").is_some() && n.get("expected_inverse").is_some());
    }
}
