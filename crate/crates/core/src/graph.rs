//! Simple undirected graphs: construction, edge-list ingestion, structural
//! predicates and deterministic generators.
//!
//! Edge-list text format: one edge per line as two whitespace-separated
//! 0-based vertex indices. Lines starting with `#` are comments and blank
//! lines are ignored. An optional `n <count>` line fixes the vertex count so
//! that trailing isolated vertices can be represented.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Location, Result};

/// Number of Erdős–Rényi resamples attempted before giving up on the
/// connected, non-bipartite requirement.
pub const ER_MAX_ATTEMPTS: usize = 1000;

/// A simple undirected graph on vertices `0..n`.
///
/// Edges are stored once as `(u, w)` with `u < w`, sorted lexicographically.
/// There are no self-loops and no parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from already validated vertex pairs. Duplicates,
    /// including reversed duplicates, are collapsed.
    fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let set: BTreeSet<(usize, usize)> = pairs
            .into_iter()
            .map(|(u, w)| if u < w { (u, w) } else { (w, u) })
            .collect();
        let edges: Vec<(usize, usize)> = set.into_iter().collect();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, w) in &edges {
            debug_assert!(u != w && w < n);
            adjacency[u].push(w);
            adjacency[w].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph { n, edges, adjacency }
    }

    /// Builds a graph from `usize` pairs, rejecting self-loops and
    /// out-of-range endpoints.
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("graph needs at least one vertex".into()));
        }
        for (i, &(u, w)) in pairs.iter().enumerate() {
            if u == w {
                return Err(Error::SelfLoop { location: Location::Pair(i), vertex: u as i64 });
            }
            if u >= n || w >= n {
                return Err(Error::InvalidParameter(format!(
                    "pair {i}: edge ({u}, {w}) out of range for n = {n}"
                )));
            }
        }
        Ok(Self::from_pairs(n, pairs.iter().copied()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn is_regular(&self) -> bool {
        let d0 = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == d0)
    }

    /// Renders the graph in edge-list text format with an `n` header.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for &(u, w) in &self.edges {
            out.push_str(&format!("{u} {w}\n"));
        }
        out
    }
}

/// Builds a graph from integer pairs.
///
/// The vertex count is `max(n_hint, 1 + largest index)`. Reversed and
/// repeated pairs collapse into one undirected edge.
pub fn from_edge_list(pairs: &[(i64, i64)], n_hint: Option<usize>) -> Result<Graph> {
    let located: Vec<(Location, i64, i64)> = pairs
        .iter()
        .enumerate()
        .map(|(i, &(u, w))| (Location::Pair(i), u, w))
        .collect();
    build_located(&located, n_hint)
}

fn build_located(pairs: &[(Location, i64, i64)], n_hint: Option<usize>) -> Result<Graph> {
    let mut max_index: Option<usize> = None;
    let mut clean = Vec::with_capacity(pairs.len());
    for &(location, u, w) in pairs {
        for value in [u, w] {
            if value < 0 {
                return Err(Error::NegativeIndex { location, value });
            }
        }
        if u == w {
            return Err(Error::SelfLoop { location, vertex: u });
        }
        let (u, w) = (u as usize, w as usize);
        max_index = Some(max_index.map_or(u.max(w), |m| m.max(u).max(w)));
        clean.push((u, w));
    }
    let n = n_hint.unwrap_or(0).max(max_index.map_or(0, |m| m + 1));
    if n == 0 {
        return Err(Error::InvalidParameter(
            "edge list is empty and no vertex count was given".into(),
        ));
    }
    Ok(Graph::from_pairs(n, clean))
}

/// Parses edge-list text.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut n_header: Option<usize> = None;
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let location = Location::Line(idx + 1);
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] == "n" {
            if tokens.len() != 2 {
                return Err(Error::Parse { location, message: "expected `n <count>`".into() });
            }
            if n_header.is_some() {
                return Err(Error::Parse { location, message: "duplicate `n` header".into() });
            }
            let count = tokens[1].parse::<usize>().map_err(|_| Error::Parse {
                location,
                message: format!("invalid vertex count `{}`", tokens[1]),
            })?;
            n_header = Some(count);
            continue;
        }
        if tokens.len() != 2 {
            return Err(Error::Parse {
                location,
                message: format!("expected two vertex indices, found {} tokens", tokens.len()),
            });
        }
        let parse = |t: &str| {
            t.parse::<i64>().map_err(|_| Error::Parse {
                location,
                message: format!("invalid vertex index `{t}`"),
            })
        };
        pairs.push((location, parse(tokens[0])?, parse(tokens[1])?));
    }
    build_located(&pairs, n_header)
}

/// Vertex degrees together with their total `2|E|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeVector {
    pub d: Vec<usize>,
    pub m2: usize,
}

pub fn degrees(g: &Graph) -> DegreeVector {
    let d: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    DegreeVector { m2: 2 * g.edge_count(), d }
}

/// Breadth-first search from vertex 0 reaches every vertex.
pub fn is_connected(g: &Graph) -> bool {
    let mut seen = vec![false; g.n()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    let mut reached = 1;
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                reached += 1;
                queue.push_back(w);
            }
        }
    }
    reached == g.n()
}

/// Breadth-first 2-coloring over every component.
pub fn is_bipartite(g: &Graph) -> bool {
    let mut color: Vec<Option<bool>> = vec![None; g.n()];
    for start in 0..g.n() {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].expect("colored before enqueue");
            for &w in g.neighbors(u) {
                match color[w] {
                    None => {
                        color[w] = Some(!cu);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cu => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Path,
    Cycle,
    Complete,
    Star,
    KRegularCirculant,
    ErdosRenyi,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::Star => "star",
            Family::KRegularCirculant => "k_regular_circulant",
            Family::ErdosRenyi => "erdos_renyi",
        }
    }
}

/// A generator family with its parameters.
///
/// Textual grammar (`family:params`):
///
/// | spec                          | graph                                   |
/// |-------------------------------|-----------------------------------------|
/// | `path:N`                      | path on N vertices                      |
/// | `cycle:N`                     | cycle on N >= 3 vertices                |
/// | `complete:N`                  | complete graph K_N                      |
/// | `star:N`                      | center 0, leaves 1..N-1 (N >= 2)        |
/// | `k_regular_circulant:N,K`     | circulant, every vertex of degree K     |
/// | `erdos_renyi:N,P`             | G(N, P)                                 |
/// | `erdos_renyi:N,P,ergodic`     | G(N, P) resampled until connected and non-bipartite |
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeneratorSpec {
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    Star { n: usize },
    KRegularCirculant { n: usize, k: usize },
    ErdosRenyi { n: usize, p: f64, ergodic: bool },
}

impl GeneratorSpec {
    pub fn family(&self) -> Family {
        match self {
            GeneratorSpec::Path { .. } => Family::Path,
            GeneratorSpec::Cycle { .. } => Family::Cycle,
            GeneratorSpec::Complete { .. } => Family::Complete,
            GeneratorSpec::Star { .. } => Family::Star,
            GeneratorSpec::KRegularCirculant { .. } => Family::KRegularCirculant,
            GeneratorSpec::ErdosRenyi { .. } => Family::ErdosRenyi,
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            GeneratorSpec::Path { n }
            | GeneratorSpec::Cycle { n }
            | GeneratorSpec::Complete { n }
            | GeneratorSpec::Star { n }
            | GeneratorSpec::KRegularCirculant { n, .. }
            | GeneratorSpec::ErdosRenyi { n, .. } => n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match *self {
            GeneratorSpec::Path { n } | GeneratorSpec::Complete { n } if n < 1 => {
                bad(format!("{}: n must be >= 1", self.family().name()))
            }
            GeneratorSpec::Cycle { n } if n < 3 => bad("cycle: n must be >= 3".into()),
            GeneratorSpec::Star { n } if n < 2 => bad("star: n must be >= 2".into()),
            GeneratorSpec::KRegularCirculant { n, k } if k == 0 || k >= n || (n * k) % 2 != 0 => {
                bad(format!("k_regular_circulant: need 0 < k < n and n*k even (n = {n}, k = {k})"))
            }
            GeneratorSpec::ErdosRenyi { n, p, .. } if n < 1 || !(0.0..=1.0).contains(&p) => {
                bad(format!("erdos_renyi: need n >= 1 and p in [0, 1] (n = {n}, p = {p})"))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.family().name();
        match *self {
            GeneratorSpec::Path { n }
            | GeneratorSpec::Cycle { n }
            | GeneratorSpec::Complete { n }
            | GeneratorSpec::Star { n } => write!(f, "{name}:{n}"),
            GeneratorSpec::KRegularCirculant { n, k } => write!(f, "{name}:{n},{k}"),
            GeneratorSpec::ErdosRenyi { n, p, ergodic } => {
                write!(f, "{name}:{n},{p}")?;
                if ergodic {
                    write!(f, ",ergodic")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidParameter(format!("generator spec `{s}`: {msg}"));
        let (name, params) = s.trim().split_once(':').ok_or_else(|| bad("expected family:params"))?;
        let params: Vec<&str> = params.split(',').map(str::trim).collect();
        let int = |t: &str| t.parse::<usize>().map_err(|_| bad(&format!("invalid integer `{t}`")));
        let arity = |k: usize| {
            if params.len() == k {
                Ok(())
            } else {
                Err(bad(&format!("expected {k} parameter(s)")))
            }
        };
        let spec = match name {
            "path" => {
                arity(1)?;
                GeneratorSpec::Path { n: int(params[0])? }
            }
            "cycle" => {
                arity(1)?;
                GeneratorSpec::Cycle { n: int(params[0])? }
            }
            "complete" => {
                arity(1)?;
                GeneratorSpec::Complete { n: int(params[0])? }
            }
            "star" => {
                arity(1)?;
                GeneratorSpec::Star { n: int(params[0])? }
            }
            "k_regular_circulant" => {
                arity(2)?;
                GeneratorSpec::KRegularCirculant { n: int(params[0])?, k: int(params[1])? }
            }
            "erdos_renyi" => {
                let ergodic = match params.len() {
                    2 => false,
                    3 if params[2] == "ergodic" => true,
                    _ => return Err(bad("expected N,P or N,P,ergodic")),
                };
                let p = params[1]
                    .parse::<f64>()
                    .map_err(|_| bad(&format!("invalid probability `{}`", params[1])))?;
                GeneratorSpec::ErdosRenyi { n: int(params[0])?, p, ergodic }
            }
            other => return Err(bad(&format!("unknown family `{other}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Generates a graph. Only `erdos_renyi` consumes the seed.
///
/// Erdős–Rényi sampling: a `ChaCha8Rng` seeded with `seed` visits the pairs
/// `(i, j)`, `i < j`, in lexicographic order and keeps each when one draw of
/// `random::<f64>()` is below `p`. With `ergodic` set, rejected samples are
/// redrawn from the continuing stream, at most [`ER_MAX_ATTEMPTS`] times.
pub fn generate(spec: &GeneratorSpec, seed: u64) -> Result<Graph> {
    spec.validate()?;
    let graph = match *spec {
        GeneratorSpec::Path { n } => Graph::from_pairs(n, (1..n).map(|i| (i - 1, i))),
        GeneratorSpec::Cycle { n } => Graph::from_pairs(n, (0..n).map(|i| (i, (i + 1) % n))),
        GeneratorSpec::Complete { n } => {
            Graph::from_pairs(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
        }
        GeneratorSpec::Star { n } => Graph::from_pairs(n, (1..n).map(|i| (0, i))),
        GeneratorSpec::KRegularCirculant { n, k } => {
            let mut pairs = Vec::with_capacity(n * k / 2);
            for i in 0..n {
                for offset in 1..=k / 2 {
                    pairs.push((i, (i + offset) % n));
                }
                if k % 2 == 1 {
                    // n is even here, so the antipodal chord is well defined.
                    pairs.push((i, (i + n / 2) % n));
                }
            }
            Graph::from_pairs(n, pairs)
        }
        GeneratorSpec::ErdosRenyi { n, p, ergodic } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut attempt = 0;
            loop {
                attempt += 1;
                let g = sample_gnp(n, p, &mut rng);
                if !ergodic || (is_connected(&g) && !is_bipartite(&g)) {
                    break g;
                }
                if attempt >= ER_MAX_ATTEMPTS {
                    return Err(Error::AssumptionUnsatisfiable { attempts: attempt });
                }
            }
        }
    };
    Ok(graph)
}

fn sample_gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < p {
                pairs.push((i, j));
            }
        }
    }
    Graph::from_pairs(n, pairs)
}
