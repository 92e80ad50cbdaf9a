#![allow(dead_code)]

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

pub fn dense(rng: &mut ChaCha8Rng, m: usize, n: usize, lo: i64, hi: i64) -> Matrix {
    Matrix::from_fn(m, n, |_, _| Cost::int(rng.gen_range(lo..=hi)))
}

/// Random multigraph without loops. Directed graphs only get forward arcs
/// `u < v`, so no cycles appear.
pub fn random_graph(rng: &mut ChaCha8Rng, vertices: usize, edges: usize, directed: bool) -> Graph {
    let mut list = Vec::with_capacity(edges);
    for _ in 0..edges {
        let u = rng.gen_range(0..vertices);
        let mut v = rng.gen_range(0..vertices - 1);
        if v >= u {
            v += 1;
        }
        list.push(if directed {
            (u.min(v), u.max(v))
        } else {
            (u, v)
        });
    }
    if directed {
        Graph::directed(vertices, list)
    } else {
        Graph::undirected(vertices, list)
    }
}

pub fn random_partition(rng: &mut ChaCha8Rng, n: usize) -> FamilySpec {
    let groups = rng.gen_range(1..=n.clamp(1, 3));
    let mut parts = vec![Vec::new(); groups];
    for e in 0..n {
        parts[rng.gen_range(0..groups)].push(e);
    }
    let quotas = parts.iter().map(|p| rng.gen_range(0..=p.len())).collect();
    FamilySpec::PartitionMatroid { parts, quotas }
}

/// A random family over exactly `n` elements. Path families run on
/// acyclic digraphs so negative weights stay admissible.
pub fn random_family(rng: &mut ChaCha8Rng, n: usize) -> FamilySpec {
    loop {
        match rng.gen_range(0..6) {
            0 => return FamilySpec::Unconstrained { ground_size: n },
            1 => {
                return FamilySpec::UniformMatroid {
                    ground_size: n,
                    k: rng.gen_range(0..=n),
                }
            }
            2 => return random_partition(rng, n),
            3 if n >= 1 => {
                let v = rng.gen_range(2..=5);
                return FamilySpec::GraphicMatroid {
                    graph: random_graph(rng, v, n, false),
                };
            }
            4 if n >= 1 => {
                let v = rng.gen_range(2..=5);
                let g = random_graph(rng, v, n, true);
                return FamilySpec::st_path(g, 0, v - 1).unwrap();
            }
            5 if n == 4 => return FamilySpec::BipartitePerfectMatching { side: 2 },
            5 if n == 1 => return FamilySpec::BipartitePerfectMatching { side: 1 },
            _ => {}
        }
    }
}

pub fn dense_instance(
    rng: &mut ChaCha8Rng,
    f1: FamilySpec,
    f2: FamilySpec,
    lo: i64,
    hi: i64,
) -> Instance {
    let (m, n) = (f1.ground_size(), f2.ground_size());
    let q = dense(rng, m, n, lo, hi);
    let c = costs(rng, m, lo, hi);
    let d = costs(rng, n, lo, hi);
    Instance::new(Interaction::Dense(q), c, d, f1, f2).unwrap()
}
