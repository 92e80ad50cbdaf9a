//! Seeded random instances for the `gen` command.

use std::str::FromStr;

use copic_core::{Cost, DiagonalCosts, FamilySpec, Graph, Instance, Interaction, Matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::CliError;

/// A family shorthand as accepted by `--families`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyToken {
    Unconstrained,
    Uniform(usize),
    /// Consecutive blocks of `size` elements, each with quota `min(quota, block length)`.
    Partition {
        size: usize,
        quota: usize,
    },
    /// Spanning trees of `K_v`.
    Complete(usize),
    Pm(usize),
    /// Simple paths from 0 to `v-1` in the undirected `K_v`.
    StpathComplete(usize),
    /// Simple paths from 0 to `v-1` in the acyclic tournament on `v` vertices.
    Dag(usize),
}

fn parse_num(token: &str, part: &str) -> Result<usize, CliError> {
    part.parse()
        .map_err(|_| CliError::Parse(format!("bad number {part:?} in family {token:?}")))
}

impl FromStr for FamilyToken {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |i: usize| parse_num(s, parts[i]);
        Ok(match (parts[0], parts.len()) {
            ("unconstrained", 1) => FamilyToken::Unconstrained,
            ("uniform", 2) => FamilyToken::Uniform(num(1)?),
            ("partition", 3) => FamilyToken::Partition {
                size: num(1)?,
                quota: num(2)?,
            },
            ("complete", 2) => FamilyToken::Complete(num(1)?),
            ("pm", 2) => FamilyToken::Pm(num(1)?),
            ("stpath-complete", 2) => FamilyToken::StpathComplete(num(1)?),
            ("dag", 2) => FamilyToken::Dag(num(1)?),
            _ => return Err(CliError::Parse(format!("unknown family {s:?}"))),
        })
    }
}

impl FamilyToken {
    /// Ground size fixed by the token itself, if any.
    pub fn implied_size(&self) -> Option<usize> {
        match *self {
            FamilyToken::Complete(v) | FamilyToken::StpathComplete(v) | FamilyToken::Dag(v) => {
                Some(v * v.saturating_sub(1) / 2)
            }
            FamilyToken::Pm(p) => Some(p * p),
            _ => None,
        }
    }

    pub fn build(&self, ground: usize) -> Result<FamilySpec, CliError> {
        Ok(match *self {
            FamilyToken::Unconstrained => FamilySpec::Unconstrained {
                ground_size: ground,
            },
            FamilyToken::Uniform(k) => {
                if k > ground {
                    return Err(CliError::Parse(format!(
                        "uniform:{k} needs at least {k} elements, got {ground}"
                    )));
                }
                FamilySpec::UniformMatroid {
                    ground_size: ground,
                    k,
                }
            }
            FamilyToken::Partition { size, quota } => {
                if size == 0 {
                    return Err(CliError::Parse(
                        "partition block size must be positive".into(),
                    ));
                }
                let parts: Vec<Vec<usize>> = (0..ground)
                    .step_by(size)
                    .map(|start| (start..(start + size).min(ground)).collect())
                    .collect();
                let quotas = parts.iter().map(|p| quota.min(p.len())).collect();
                FamilySpec::PartitionMatroid { parts, quotas }
            }
            FamilyToken::Complete(v) => FamilySpec::GraphicMatroid {
                graph: Graph::complete(v),
            },
            FamilyToken::Pm(p) => FamilySpec::BipartitePerfectMatching { side: p },
            FamilyToken::StpathComplete(v) | FamilyToken::Dag(v) => {
                if v < 2 {
                    return Err(CliError::Parse(
                        "path families need at least 2 vertices".into(),
                    ));
                }
                let graph = match self {
                    FamilyToken::Dag(_) => Graph::directed(v, Graph::complete(v).edges),
                    _ => Graph::complete(v),
                };
                FamilySpec::st_path(graph, 0, v - 1)?
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Structure {
    Random,
    Rank(usize),
    Diagonal,
    Linearizable,
}

impl FromStr for Structure {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "random" => Ok(Structure::Random),
            "diagonal" => Ok(Structure::Diagonal),
            "linearizable" => Ok(Structure::Linearizable),
            _ => match s.strip_prefix("rank:").map(str::parse) {
                Some(Ok(r)) => Ok(Structure::Rank(r)),
                _ => Err(CliError::Parse(format!("unknown structure {s:?}"))),
            },
        }
    }
}

/// Inclusive integer range written `lo:hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CostRange {
    pub lo: i64,
    pub hi: i64,
}

impl FromStr for CostRange {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let bad = || CliError::Parse(format!("cost range must look like lo:hi, got {s:?}"));
        let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
        let (lo, hi) = (
            lo.trim().parse().map_err(|_| bad())?,
            hi.trim().parse().map_err(|_| bad())?,
        );
        if lo > hi {
            return Err(bad());
        }
        Ok(CostRange { lo, hi })
    }
}

#[derive(Clone, Debug)]
pub struct GenOptions {
    pub families: [FamilyToken; 2],
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub range: CostRange,
    pub structure: Structure,
    pub seed: u64,
}

fn side_size(token: &FamilyToken, given: Option<usize>, flag: &str) -> Result<usize, CliError> {
    match (token.implied_size(), given) {
        (Some(a), Some(b)) if a != b => Err(CliError::Parse(format!(
            "incompatible flags: {flag} {b} but the family has {a} elements"
        ))),
        (Some(a), _) => Ok(a),
        (None, Some(b)) => Ok(b),
        (None, None) => Err(CliError::Parse(format!(
            "{flag} is required for this family"
        ))),
    }
}

/// A cost vector whose sum is the same over every member of `family`.
fn constant_objective_vector(
    rng: &mut ChaCha8Rng,
    family: &FamilySpec,
    range: CostRange,
) -> Vec<i64> {
    let n = family.ground_size();
    let draw = |rng: &mut ChaCha8Rng| rng.gen_range(range.lo..=range.hi);
    match family {
        FamilySpec::Unconstrained { .. } => vec![0; n],
        FamilySpec::UniformMatroid { k, .. } if *k == 0 || *k == n => {
            (0..n).map(|_| draw(rng)).collect()
        }
        FamilySpec::PartitionMatroid { parts, quotas } => {
            let mut v = vec![0; n];
            for (part, &quota) in parts.iter().zip(quotas) {
                let level = draw(rng);
                for &e in part {
                    // a part taken whole or not at all fixes its own sum
                    v[e] = if quota == 0 || quota == part.len() {
                        draw(rng)
                    } else {
                        level
                    };
                }
            }
            v
        }
        FamilySpec::BipartitePerfectMatching { side } => {
            let rows: Vec<i64> = (0..*side).map(|_| draw(rng)).collect();
            let cols: Vec<i64> = (0..*side).map(|_| draw(rng)).collect();
            (0..n).map(|e| rows[e / side] + cols[e % side]).collect()
        }
        FamilySpec::StPath { graph, .. } if graph.directed => {
            // potential differences telescope along any s-t path
            let pi: Vec<i64> = (0..graph.vertices).map(|_| draw(rng)).collect();
            graph.edges.iter().map(|&(u, v)| pi[v] - pi[u]).collect()
        }
        FamilySpec::StPath { .. } => vec![0; n],
        _ => vec![draw(rng); n],
    }
}

pub fn generate(opts: &GenOptions) -> Result<Instance, CliError> {
    let m = side_size(&opts.families[0], opts.m, "--m")?;
    let n = side_size(&opts.families[1], opts.n, "--n")?;
    let f1 = opts.families[0].build(m)?;
    let f2 = opts.families[1].build(n)?;
    let range = opts.range;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let draw = |rng: &mut ChaCha8Rng| rng.gen_range(range.lo..=range.hi);
    let q = match opts.structure {
        Structure::Random => {
            Interaction::Dense(Matrix::from_fn(m, n, |_, _| Cost::int(draw(&mut rng))))
        }
        Structure::Diagonal => {
            if m != n {
                return Err(CliError::Parse(format!(
                    "incompatible flags: diagonal structure needs m = n, got {m} and {n}"
                )));
            }
            Interaction::Diagonal(DiagonalCosts::new(
                (0..n).map(|_| Cost::int(draw(&mut rng))).collect(),
            ))
        }
        Structure::Rank(r) => {
            let mut q = vec![vec![0i64; n]; m];
            for _ in 0..r {
                let a: Vec<i64> = (0..m).map(|_| draw(&mut rng)).collect();
                let b: Vec<i64> = (0..n).map(|_| draw(&mut rng)).collect();
                for i in 0..m {
                    for j in 0..n {
                        q[i][j] += a[i] * b[j];
                    }
                }
            }
            Interaction::Dense(Matrix::from_fn(m, n, |i, j| Cost::int(q[i][j])))
        }
        Structure::Linearizable => {
            let cols: Vec<Vec<i64>> = (0..n)
                .map(|_| constant_objective_vector(&mut rng, &f1, range))
                .collect();
            let rows: Vec<Vec<i64>> = (0..m)
                .map(|_| constant_objective_vector(&mut rng, &f2, range))
                .collect();
            Interaction::Dense(Matrix::from_fn(m, n, |i, j| {
                Cost::int(cols[j][i] + rows[i][j])
            }))
        }
    };
    let c = (0..m).map(|_| Cost::int(draw(&mut rng))).collect();
    let d = (0..n).map(|_| Cost::int(draw(&mut rng))).collect();
    Ok(Instance::new(q, c, d, f1, f2)?)
}
