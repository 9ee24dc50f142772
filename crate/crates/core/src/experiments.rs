//! Batch sweeps over graph families, damping constants and personalization
//! strategies, with CSV/JSON output.
//!
//! Instance seeds: the `k`-th generated graph (counting families in spec
//! order, then trials) uses `spec.seed ^ k`. Rows are emitted in the order
//! family, trial, c, strategy regardless of how instances are scheduled.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{check_theorem, DEFAULT_SLACK};
use crate::error::{Error, Result};
use crate::graph::{generate, GeneratorSpec, Graph};
use crate::solver::{check_damping, pagerank, Method, PageRankConfig, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::transition::{degree_distribution, transition_matrix, uniform_vector, ProbabilityVector};

/// How the personalization vector `v` is chosen for an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VStrategy {
    Uniform,
    Degree,
    PointMass(usize),
    /// Flat Dirichlet sample: `n` exponential variates, normalized.
    DirichletRandom(u64),
}

impl VStrategy {
    /// Builds `v` for graph `g`. `instance_seed` only affects
    /// `DirichletRandom`, whose generator is a `ChaCha8Rng` seeded with
    /// `seed ^ instance_seed`; entry `i` is `-ln(1 - u_i)` for the `i`-th
    /// draw `u_i = random::<f64>()`, then the vector is normalized.
    pub fn personalization(&self, g: &Graph, instance_seed: u64) -> Result<ProbabilityVector> {
        let n = g.n();
        match *self {
            VStrategy::Uniform => uniform_vector(n),
            VStrategy::Degree => degree_distribution(g),
            VStrategy::PointMass(vertex) => ProbabilityVector::point_mass(n, vertex),
            VStrategy::DirichletRandom(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ instance_seed);
                let draws = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
                ProbabilityVector::normalized(draws)
            }
        }
    }
}

impl fmt::Display for VStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VStrategy::Uniform => write!(f, "uniform"),
            VStrategy::Degree => write!(f, "degree"),
            VStrategy::PointMass(v) => write!(f, "point_mass:{v}"),
            VStrategy::DirichletRandom(s) => write!(f, "dirichlet_random:{s}"),
        }
    }
}

impl FromStr for VStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("unknown personalization strategy `{s}`"));
        let (name, arg) = match s.trim().split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s.trim(), None),
        };
        match (name, arg) {
            ("uniform", None) => Ok(VStrategy::Uniform),
            ("degree", None) => Ok(VStrategy::Degree),
            ("point_mass", Some(a)) => a.parse().map(VStrategy::PointMass).map_err(|_| bad()),
            ("point_mass", None) => Ok(VStrategy::PointMass(0)),
            ("dirichlet_random", Some(a)) => a.parse().map(VStrategy::DirichletRandom).map_err(|_| bad()),
            ("dirichlet_random", None) => Ok(VStrategy::DirichletRandom(0)),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub families: Vec<GeneratorSpec>,
    pub c_values: Vec<f64>,
    pub v_strategies: Vec<VStrategy>,
    pub trials: usize,
    pub seed: u64,
    pub slack: f64,
    pub tol: f64,
    pub max_iter: usize,
    pub method: Method,
}

impl Default for SweepSpec {
    /// The default corpus: paths, cycles, stars, complete graphs, 4-regular
    /// circulants and connected non-bipartite G(n, p) for n in {10, 50, 200},
    /// at c in {0.1, 0.5, 0.85, 0.99}, with every strategy and 5 trials.
    fn default() -> Self {
        let families = [
            "path:10",
            "path:50",
            "cycle:9",
            "cycle:50",
            "star:10",
            "star:50",
            "complete:10",
            "complete:30",
            "k_regular_circulant:20,4",
            "k_regular_circulant:99,4",
            "erdos_renyi:10,0.4,ergodic",
            "erdos_renyi:50,0.1,ergodic",
            "erdos_renyi:200,0.03,ergodic",
        ]
        .iter()
        .map(|s| s.parse().expect("default corpus specs are valid"))
        .collect();
        SweepSpec {
            families,
            c_values: vec![0.1, 0.5, 0.85, 0.99],
            v_strategies: vec![
                VStrategy::Uniform,
                VStrategy::Degree,
                VStrategy::PointMass(0),
                VStrategy::DirichletRandom(1),
            ],
            trials: 5,
            seed: 1,
            slack: DEFAULT_SLACK,
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
            method: Method::Linear,
        }
    }
}

/// On-disk form of a [`SweepSpec`]; every field is optional and falls back
/// to the default corpus.
#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepFile {
    families: Option<Vec<String>>,
    c_values: Option<Vec<f64>>,
    strategies: Option<Vec<String>>,
    trials: Option<usize>,
    seed: Option<u64>,
    slack: Option<f64>,
    tol: Option<f64>,
    max_iter: Option<usize>,
    method: Option<Method>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.families.is_empty() || self.c_values.is_empty() || self.v_strategies.is_empty() {
            return Err(Error::InvalidParameter(
                "sweep needs at least one family, c value and strategy".into(),
            ));
        }
        for f in &self.families {
            f.validate()?;
        }
        for &c in &self.c_values {
            check_damping(c)?;
        }
        if self.trials < 1 {
            return Err(Error::InvalidParameter("trials must be >= 1".into()));
        }
        if !(self.slack >= 0.0 && self.slack.is_finite()) {
            return Err(Error::InvalidParameter(format!("invalid slack {}", self.slack)));
        }
        PageRankConfig::new(0.5, self.tol, self.max_iter).map(|_| ())
    }

    /// Parses a TOML sweep file, e.g.
    ///
    /// ```toml
    /// families = ["path:3", "erdos_renyi:50,0.1,ergodic"]
    /// c_values = [0.85]
    /// strategies = ["uniform", "point_mass:0"]
    /// trials = 2
    /// ```
    pub fn from_toml(text: &str) -> Result<Self> {
        let file: SweepFile = toml::from_str(text).map_err(|e| Error::Parse {
            location: crate::Location::Unknown,
            message: format!("sweep spec: {e}"),
        })?;
        let mut spec = SweepSpec::default();
        if let Some(f) = file.families {
            spec.families = f.iter().map(|s| s.parse()).collect::<Result<_>>()?;
        }
        if let Some(c) = file.c_values {
            spec.c_values = c;
        }
        if let Some(s) = file.strategies {
            spec.v_strategies = s.iter().map(|s| s.parse()).collect::<Result<_>>()?;
        }
        spec.trials = file.trials.unwrap_or(spec.trials);
        spec.seed = file.seed.unwrap_or(spec.seed);
        spec.slack = file.slack.unwrap_or(spec.slack);
        spec.tol = file.tol.unwrap_or(spec.tol);
        spec.max_iter = file.max_iter.unwrap_or(spec.max_iter);
        spec.method = file.method.unwrap_or(spec.method);
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_toml(&self) -> String {
        let file = SweepFile {
            families: Some(self.families.iter().map(|f| f.to_string()).collect()),
            c_values: Some(self.c_values.clone()),
            strategies: Some(self.v_strategies.iter().map(|s| s.to_string()).collect()),
            trials: Some(self.trials),
            seed: Some(self.seed),
            slack: Some(self.slack),
            tol: Some(self.tol),
            max_iter: Some(self.max_iter),
            method: Some(self.method),
        };
        toml::to_string(&file).expect("sweep spec serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowVerdict {
    Pass,
    Fail,
    Skip,
}

impl RowVerdict {
    pub fn name(self) -> &'static str {
        match self {
            RowVerdict::Pass => "pass",
            RowVerdict::Fail => "fail",
            RowVerdict::Skip => "skip",
        }
    }
}

/// One (graph, c, strategy) instance. Numeric fields are `None` on skipped
/// rows.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub family: String,
    pub n: usize,
    pub seed: u64,
    pub c: f64,
    pub strategy: String,
    pub distance_vf: Option<f64>,
    pub distance_pif: Option<f64>,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    /// `distance_pif / distance_vf`, or 1 when `v = f`.
    pub tightness_ratio: Option<f64>,
    pub converged: Option<bool>,
    /// Pass iff the solve converged and both bounds hold within slack.
    pub verdict: RowVerdict,
    /// Why a row was skipped.
    #[serde(skip)]
    pub note: Option<String>,
}

pub const CSV_HEADER: &str =
    "family,n,seed,c,strategy,distance_vf,distance_pif,lower,upper,tightness_ratio,converged,verdict";

fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

impl SweepRow {
    fn skipped(family: &GeneratorSpec, seed: u64, c: f64, strategy: &VStrategy, note: String) -> Self {
        SweepRow {
            family: family.to_string(),
            n: family.n(),
            seed,
            c,
            strategy: strategy.to_string(),
            distance_vf: None,
            distance_pif: None,
            lower: None,
            upper: None,
            tightness_ratio: None,
            converged: None,
            verdict: RowVerdict::Skip,
            note: Some(note),
        }
    }

    fn csv_record(&self) -> [String; 12] {
        let opt = |x: Option<f64>| x.map(sig17).unwrap_or_default();
        [
            self.family.clone(),
            self.n.to_string(),
            self.seed.to_string(),
            sig17(self.c),
            self.strategy.clone(),
            opt(self.distance_vf),
            opt(self.distance_pif),
            opt(self.lower),
            opt(self.upper),
            opt(self.tightness_ratio),
            self.converged.map(|b| b.to_string()).unwrap_or_default(),
            self.verdict.name().to_string(),
        ]
    }

    /// One CSV line without the terminator.
    pub fn to_csv(&self) -> String {
        let mut out = rows_csv_bytes(std::slice::from_ref(self), false);
        out.pop();
        out
    }
}

fn rows_csv_bytes(rows: &[SweepRow], header: bool) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    if header {
        w.write_record(CSV_HEADER.split(',')).expect("in-memory write");
    }
    for r in rows {
        w.write_record(r.csv_record()).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

pub fn rows_to_csv(rows: &[SweepRow]) -> String {
    rows_csv_bytes(rows, true)
}

pub fn rows_to_json(rows: &[SweepRow]) -> String {
    serde_json::to_string_pretty(rows).expect("rows serialize")
}

fn instance_rows(spec: &SweepSpec, family: &GeneratorSpec, seed: u64) -> Vec<SweepRow> {
    let mut rows = Vec::with_capacity(spec.c_values.len() * spec.v_strategies.len());
    let skip_all = |note: String| {
        spec.c_values
            .iter()
            .flat_map(|&c| spec.v_strategies.iter().map(move |s| (c, s)))
            .map(|(c, s)| SweepRow::skipped(family, seed, c, s, note.clone()))
            .collect::<Vec<_>>()
    };
    let prepared = generate(family, seed).and_then(|g| {
        let a = transition_matrix(&g)?;
        let f = degree_distribution(&g)?;
        Ok((g, a, f))
    });
    let (g, a, f) = match prepared {
        Ok(p) => p,
        Err(e) => return skip_all(format!("{}: {e}", e.code())),
    };
    for &c in &spec.c_values {
        let cfg = PageRankConfig { c, tol: spec.tol, max_iter: spec.max_iter };
        for strategy in &spec.v_strategies {
            let outcome = strategy.personalization(&g, seed).and_then(|v| {
                let result = pagerank(&a, &cfg, &v, spec.method)?;
                let report = check_theorem(&a, c, &v, &f, &result.pi, spec.slack)?;
                Ok((result.converged, report))
            });
            let row = match outcome {
                Ok((converged, report)) => {
                    let ratio = if report.distance_vf == 0.0 {
                        1.0
                    } else {
                        report.distance_pif / report.distance_vf
                    };
                    let pass = converged && report.verdict.is_pass();
                    SweepRow {
                        family: family.to_string(),
                        n: g.n(),
                        seed,
                        c,
                        strategy: strategy.to_string(),
                        distance_vf: Some(report.distance_vf),
                        distance_pif: Some(report.distance_pif),
                        lower: Some(report.lower),
                        upper: Some(report.upper),
                        tightness_ratio: Some(ratio),
                        converged: Some(converged),
                        verdict: if pass { RowVerdict::Pass } else { RowVerdict::Fail },
                        note: None,
                    }
                }
                Err(e) => SweepRow::skipped(family, seed, c, strategy, format!("{}: {e}", e.code())),
            };
            rows.push(row);
        }
    }
    rows
}

/// Runs every instance of the sweep. Instances are solved in parallel;
/// row order is fixed.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let instances: Vec<(usize, &GeneratorSpec)> = spec
        .families
        .iter()
        .flat_map(|f| std::iter::repeat_n(f, spec.trials))
        .enumerate()
        .collect();
    let rows: Vec<Vec<SweepRow>> = instances
        .par_iter()
        .map(|&(counter, family)| instance_rows(spec, family, spec.seed ^ counter as u64))
        .collect();
    Ok(rows.into_iter().flatten().collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioStats {
    pub c: f64,
    pub count: usize,
    pub min: f64,
    pub median: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TightnessSummary {
    /// Ascending in `c`; skipped rows are left out.
    pub per_c: Vec<RatioStats>,
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

pub fn tightness_summary(rows: &[SweepRow]) -> Result<TightnessSummary> {
    if rows.is_empty() {
        return Err(Error::InvalidParameter("tightness summary needs at least one row".into()));
    }
    let count = |v: RowVerdict| rows.iter().filter(|r| r.verdict == v).count();
    let mut cs: Vec<f64> = rows.iter().map(|r| r.c).collect();
    cs.sort_by(f64::total_cmp);
    cs.dedup();
    let per_c = cs
        .into_iter()
        .filter_map(|c| {
            let mut ratios: Vec<f64> =
                rows.iter().filter(|r| r.c == c).filter_map(|r| r.tightness_ratio).collect();
            if ratios.is_empty() {
                return None;
            }
            ratios.sort_by(f64::total_cmp);
            let k = ratios.len();
            let median = if k % 2 == 1 {
                ratios[k / 2]
            } else {
                0.5 * (ratios[k / 2 - 1] + ratios[k / 2])
            };
            Some(RatioStats { c, count: k, min: ratios[0], median, max: ratios[k - 1] })
        })
        .collect();
    Ok(TightnessSummary {
        per_c,
        pass: count(RowVerdict::Pass),
        fail: count(RowVerdict::Fail),
        skip: count(RowVerdict::Skip),
    })
}
