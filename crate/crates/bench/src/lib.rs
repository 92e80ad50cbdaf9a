//! Shared fixtures for the solver benchmarks.

use copic_core::diagonal::DiagonalInstance;
use copic_core::{Cost, FamilySpec, Graph, Instance, Interaction, Matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn costs(rng: &mut ChaCha8Rng, len: usize, lo: i64, hi: i64) -> Vec<Cost> {
    (0..len)
        .map(|_| Cost::int(rng.gen_range(lo..=hi)))
        .collect()
}

pub fn dense(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Matrix {
    Matrix::from_fn(m, n, |_, _| Cost::int(rng.gen_range(-9..=9)))
}

pub fn uniform(n: usize, k: usize) -> FamilySpec {
    FamilySpec::UniformMatroid { ground_size: n, k }
}

/// Dense uniform x uniform instance, the brute-force workload.
pub fn uniform_pair(seed: u64, n: usize, k: usize) -> Instance {
    let mut r = rng(seed);
    let q = dense(&mut r, n, n);
    let (c, d) = (costs(&mut r, n, -9, 9), costs(&mut r, n, -9, 9));
    Instance::new(Interaction::Dense(q), c, d, uniform(n, k), uniform(n, k)).unwrap()
}

pub fn diagonal_uniform(seed: u64, n: usize) -> DiagonalInstance {
    let mut r = rng(seed);
    let (a, c, d) = (
        costs(&mut r, n, -9, 9),
        costs(&mut r, n, -9, 9),
        costs(&mut r, n, -9, 9),
    );
    DiagonalInstance::new(a, c, d, uniform(n, n / 2), uniform(n, n / 3)).unwrap()
}

/// Both sides the spanning trees of `K_v`, `a ≥ 0`, `c = d`.
pub fn diagonal_trees(seed: u64, v: usize) -> DiagonalInstance {
    let mut r = rng(seed);
    let g = FamilySpec::GraphicMatroid {
        graph: Graph::complete(v),
    };
    let e = g.ground_size();
    let c = costs(&mut r, e, -9, 9);
    DiagonalInstance::new(costs(&mut r, e, 0, 9), c.clone(), c, g.clone(), g).unwrap()
}

/// Two paths between the ends of `K_v`.
pub fn diagonal_paths(seed: u64, v: usize) -> DiagonalInstance {
    let mut r = rng(seed);
    let p = FamilySpec::st_path(Graph::complete(v), 0, v - 1).unwrap();
    let e = p.ground_size();
    let c = costs(&mut r, e, 0, 9);
    DiagonalInstance::new(costs(&mut r, e, 0, 9), c.clone(), c, p.clone(), p).unwrap()
}

/// Rank-`rank` interaction with an unconstrained first side.
pub fn low_rank(seed: u64, m: usize, n: usize, rank: usize) -> Instance {
    let mut r = rng(seed);
    let us: Vec<Vec<i64>> = (0..rank)
        .map(|_| (0..m).map(|_| r.gen_range(-3..=3)).collect())
        .collect();
    let vs: Vec<Vec<i64>> = (0..rank)
        .map(|_| (0..n).map(|_| r.gen_range(-3..=3)).collect())
        .collect();
    let q = Matrix::from_fn(m, n, |i, j| {
        Cost::int((0..rank).map(|t| us[t][i] * vs[t][j]).sum())
    });
    let (c, d) = (costs(&mut r, m, -9, 9), costs(&mut r, n, -9, 9));
    Instance::new(
        Interaction::Dense(q),
        c,
        d,
        FamilySpec::Unconstrained { ground_size: m },
        uniform(n, n / 2),
    )
    .unwrap()
}
