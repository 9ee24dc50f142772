//! Solver outputs checked against routes that share no code with them:
//! closed forms from symmetric reductions, a dense Neumann-series sum built
//! straight from the edge list, and a re-implementation of the G(n, p)
//! sampler.

mod common;

use common::{corpus, l1};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use upr_core::graph::Graph;
use upr_core::*;

fn graph(s: &str) -> Graph {
    generate(&s.parse().unwrap(), 0).unwrap()
}

fn all_methods(g: &Graph, c: f64, v: &ProbabilityVector) -> Vec<(Method, Vec<f64>)> {
    let a = transition_matrix(g).unwrap();
    let cfg = PageRankConfig::with_damping(c).unwrap();
    [Method::Power, Method::Linear, Method::DenseOracle]
        .into_iter()
        .map(|m| (m, pagerank(&a, &cfg, v, m).unwrap().pi.into_inner()))
        .collect()
}

/// 3-path, uniform v. With pi_0 = pi_2 = x and pi_1 = y the system reduces to
/// x = c y / 2 + (1-c)/3 and y = 2 c x + (1-c)/3, so x = (1 + c/2) / (3 (1+c)).
fn path3_uniform(c: f64) -> [f64; 3] {
    let x = (1.0 + c / 2.0) / (3.0 * (1.0 + c));
    [x, 1.0 - 2.0 * x, x]
}

/// Star with center 0 and three leaves, uniform v:
/// center = (3c + 1) / (4 (1+c)), leaves share the rest.
fn star4_uniform(c: f64) -> [f64; 4] {
    let center = (3.0 * c + 1.0) / (4.0 * (1.0 + c));
    let leaf = (1.0 - center) / 3.0;
    [center, leaf, leaf, leaf]
}

/// K3 with v = e_0: pi_0 = (2-c)/(2+c), the other two split the rest.
fn triangle_point_mass(c: f64) -> [f64; 3] {
    let p0 = (2.0 - c) / (2.0 + c);
    let q = (1.0 - p0) / 2.0;
    [p0, q, q]
}

#[test]
fn frozen_closed_form_values() {
    let p = path3_uniform(0.85);
    assert!((p[0] - 19.0 / 74.0).abs() < 1e-15 && (p[1] - 36.0 / 74.0).abs() < 1e-15);
    assert!((p[0] - 0.256757).abs() < 1e-6 && (p[1] - 0.486486).abs() < 1e-6);
    let s = star4_uniform(0.85);
    assert!((s[0] - 0.8875 / 1.85).abs() < 1e-15);
    assert!((s[0] - 0.479730).abs() < 1e-6 && (s[1] - 0.173423).abs() < 1e-6);
    assert_eq!(triangle_point_mass(0.5), [0.6, 0.2, 0.2]);
    // |pi - f|_1 for both witnesses.
    assert!((l1(&p, &[0.25, 0.5, 0.25]) - 1.0 / 37.0).abs() < 1e-15);
    assert!((l1(&s, &[0.5, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0]) - 3.0 / 74.0).abs() < 1e-15);
}

#[test]
fn solvers_match_closed_forms() {
    for c in [0.1, 0.5, 0.85, 0.99] {
        for (m, pi) in all_methods(&graph("path:3"), c, &uniform_vector(3).unwrap()) {
            assert!(l1(&pi, &path3_uniform(c)) <= 1e-11, "path3 {m:?} c={c}");
        }
        for (m, pi) in all_methods(&graph("star:4"), c, &uniform_vector(4).unwrap()) {
            assert!(l1(&pi, &star4_uniform(c)) <= 1e-11, "star4 {m:?} c={c}");
        }
        let e0 = ProbabilityVector::point_mass(3, 0).unwrap();
        for (m, pi) in all_methods(&graph("complete:3"), c, &e0) {
            assert!(l1(&pi, &triangle_point_mass(c)) <= 1e-11, "K3 {m:?} c={c}");
        }
    }
}

/// `(1-c) sum_{k<terms} c^k (A^T)^k v` with A^T formed densely from the
/// edge list.
fn neumann_oracle(g: &Graph, c: f64, v: &[f64], terms: usize) -> Vec<f64> {
    let n = g.n();
    let mut deg = vec![0.0; n];
    for &(u, w) in g.edges() {
        deg[u] += 1.0;
        deg[w] += 1.0;
    }
    let mut at = vec![vec![0.0; n]; n];
    for &(u, w) in g.edges() {
        at[w][u] = 1.0 / deg[u];
        at[u][w] = 1.0 / deg[w];
    }
    let mut term: Vec<f64> = v.iter().map(|x| (1.0 - c) * x).collect();
    let mut sum = term.clone();
    for _ in 1..terms {
        term = (0..n).map(|i| c * (0..n).map(|j| at[i][j] * term[j]).sum::<f64>()).collect();
        for (s, t) in sum.iter_mut().zip(&term) {
            *s += t;
        }
    }
    sum
}

#[test]
fn solvers_match_neumann_series() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for g in corpus(25, 30, 5) {
        for c in [0.1f64, 0.5, 0.85] {
            // c^terms < 1e-15 ensures truncation is invisible.
            let terms = (1e-15f64.ln() / c.ln()).ceil() as usize + 1;
            let raw: Vec<f64> = (0..g.n()).map(|_| rng.random::<f64>()).collect();
            let v = ProbabilityVector::normalized(raw).unwrap();
            let expected = neumann_oracle(&g, c, &v, terms);
            for (m, pi) in all_methods(&g, c, &v) {
                let d = l1(&pi, &expected);
                assert!(d <= 1e-11, "{m:?} n={} c={c}: {d:e}", g.n());
            }
        }
    }
}

/// Independent re-implementation of the documented G(n, p) sampling order.
fn sample_gnp_reference(n: usize, p: f64, seed: u64, ergodic: bool) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let u: f64 = rng.random();
                if u < p {
                    edges.push((i, j));
                }
            }
        }
        let g = Graph::new(n, &edges).unwrap();
        if !ergodic || (is_connected(&g) && !is_bipartite(&g)) {
            return edges;
        }
    }
}

#[test]
fn erdos_renyi_sampling_order_is_reproducible() {
    let spec = GeneratorSpec::ErdosRenyi { n: 30, p: 0.2, ergodic: true };
    let g = generate(&spec, 42).unwrap();
    assert_eq!(g.edges(), sample_gnp_reference(30, 0.2, 42, true).as_slice());
    assert!(is_connected(&g) && !is_bipartite(&g));
    // Frozen from the reference sampler above.
    assert_eq!(g.edge_count(), ER_30_02_SEED42_EDGES);
    assert_eq!(&g.edges()[..3], ER_30_02_SEED42_FIRST);
    let plain = GeneratorSpec::ErdosRenyi { n: 50, p: 0.05, ergodic: false };
    assert_eq!(generate(&plain, 3).unwrap().edges(), sample_gnp_reference(50, 0.05, 3, false).as_slice());
}

const ER_30_02_SEED42_EDGES: usize = 95;
const ER_30_02_SEED42_FIRST: &[(usize, usize)] = &[(0, 4), (0, 7), (0, 9)];
