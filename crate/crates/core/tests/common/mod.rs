#![allow(dead_code)]

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use upr_core::graph::Graph;
use upr_core::solver::stationary_vector;
use upr_core::{ProbabilityVector, RowStochasticMatrix};

pub fn l1(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b).abs()).sum()
}

fn attach_isolated(n: usize, pairs: &mut Vec<(usize, usize)>, rng: &mut ChaCha8Rng, allowed: impl Fn(usize) -> Vec<usize>) {
    let mut deg = vec![0usize; n];
    for &(u, w) in pairs.iter() {
        deg[u] += 1;
        deg[w] += 1;
    }
    for v in 0..n {
        if deg[v] == 0 {
            let candidates = allowed(v);
            let u = *candidates.choose(rng).expect("a partner vertex exists");
            pairs.push((v, u));
            deg[v] += 1;
            deg[u] += 1;
        }
    }
}

fn gnp(offset: usize, n: usize, p: f64, rng: &mut ChaCha8Rng, pairs: &mut Vec<(usize, usize)>) {
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < p {
                pairs.push((offset + i, offset + j));
            }
        }
    }
}

/// Random simple graph without isolated vertices, cycling through five
/// shapes: sparse G(n,p), random bipartite, two disjoint components,
/// random tree, dense G(n,p).
pub fn random_graph(index: usize, max_n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut pairs = Vec::new();
    let n;
    match index % 5 {
        0 => {
            n = rng.random_range(2..=max_n);
            gnp(0, n, (4.0 / n as f64).min(1.0), rng, &mut pairs);
            attach_isolated(n, &mut pairs, rng, |v| (0..n).filter(|&u| u != v).collect());
        }
        1 => {
            n = rng.random_range(2..=max_n);
            let a = rng.random_range(1..n);
            let p = (3.0 / a.max(n - a) as f64).min(1.0);
            for i in 0..a {
                for j in a..n {
                    if rng.random::<f64>() < p {
                        pairs.push((i, j));
                    }
                }
            }
            attach_isolated(n, &mut pairs, rng, |v| if v < a { (a..n).collect() } else { (0..a).collect() });
        }
        2 => {
            n = rng.random_range(4..=max_n.max(4));
            let a = rng.random_range(2..=n - 2);
            gnp(0, a, (3.0 / a as f64).min(1.0), rng, &mut pairs);
            gnp(a, n - a, (3.0 / (n - a) as f64).min(1.0), rng, &mut pairs);
            attach_isolated(n, &mut pairs, rng, |v| {
                if v < a {
                    (0..a).filter(|&u| u != v).collect()
                } else {
                    (a..n).filter(|&u| u != v).collect()
                }
            });
        }
        3 => {
            n = rng.random_range(2..=max_n);
            for v in 1..n {
                pairs.push((v, rng.random_range(0..v)));
            }
        }
        _ => {
            n = rng.random_range(2..=max_n.min(40));
            gnp(0, n, 0.5, rng, &mut pairs);
            attach_isolated(n, &mut pairs, rng, |v| (0..n).filter(|&u| u != v).collect());
        }
    }
    Graph::new(n, &pairs).expect("corpus graphs are simple")
}

pub fn corpus(count: usize, max_n: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|i| random_graph(i, max_n, &mut rng)).collect()
}

/// Random row-stochastic matrix with random supports (diagonal allowed)
/// and exponential weights.
pub fn random_row_stochastic(n: usize, rng: &mut ChaCha8Rng) -> RowStochasticMatrix {
    let rows: Vec<Vec<(usize, f64)>> = (0..n)
        .map(|_| {
            let k = rng.random_range(1..=n.min(6));
            let mut cols: Vec<usize> = (0..n).collect();
            cols.shuffle(rng);
            cols.truncate(k);
            let w: Vec<f64> = (0..k).map(|_| -(1.0 - rng.random::<f64>()).ln() + 1e-3).collect();
            let s: f64 = w.iter().sum();
            cols.into_iter().zip(w).map(|(j, x)| (j, x / s)).collect()
        })
        .collect();
    RowStochasticMatrix::from_rows(&rows).expect("normalized rows are stochastic")
}

/// Synthetic matrices paired with a stationary `f`; instances whose
/// stationary iteration misses 1e-12 are skipped.
pub fn synthetic_instances(count: usize, max_n: usize, seed: u64) -> Vec<(RowStochasticMatrix, ProbabilityVector)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 20 * count {
        attempts += 1;
        let n = rng.random_range(2..=max_n);
        let a = random_row_stochastic(n, &mut rng);
        if let Ok(f) = stationary_vector(&a, 1e-13, 200_000) {
            let defect = l1(&a.apply_transposed(&f).unwrap(), &f);
            if defect <= 1e-12 {
                out.push((a, f));
            }
        }
    }
    out
}
