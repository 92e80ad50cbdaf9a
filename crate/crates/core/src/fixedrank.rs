//! Rank-r interaction matrices with an unconstrained first side.
//!
//! For fixed `λ_p = a_pᵀx` the best `x ∈ [0,1]^m` solves a box LP, so some
//! optimal `x` is the basic solution of a dual feasible basis structure.
//! Enumerating those structures (with both assignments for zero reduced
//! costs) gives a candidate set that contains an optimal `x`; each
//! candidate is completed by the second side's linear oracle.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::cost::{Cost, Rational};
use crate::error::{CopicError, Result};
use crate::families::{lcop_solve, FamilySpec};
use crate::instance::{evaluate_objective, Instance, Matrix, Solution, Subset};
use crate::linalg::{solve_square, IncrementalSystem};

pub const DEFAULT_CANDIDATE_CAP: u64 = 1 << 20;

/// `Q = Σ_p a_p b_pᵀ` with `r = rank(Q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankFactorization {
    pub r: usize,
    pub a_vectors: Vec<Vec<Rational>>,
    pub b_vectors: Vec<Vec<Rational>>,
}

impl RankFactorization {
    pub fn reconstruct(&self, m: usize, n: usize) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); n]; m];
        for (a, b) in self.a_vectors.iter().zip(&self.b_vectors) {
            for (i, ai) in a.iter().enumerate() {
                if ai.is_zero() {
                    continue;
                }
                for (j, bj) in b.iter().enumerate() {
                    out[i][j] += ai * bj;
                }
            }
        }
        out
    }

    /// Checks that the factors reproduce `q` and are linearly independent.
    pub fn validate(&self, q: &Matrix) -> Result<()> {
        let rows = finite_rows(q)?;
        if self.a_vectors.len() != self.r || self.b_vectors.len() != self.r {
            return Err(CopicError::Domain("factor count differs from r".into()));
        }
        if self.a_vectors.iter().any(|a| a.len() != q.rows())
            || self.b_vectors.iter().any(|b| b.len() != q.cols())
        {
            return Err(CopicError::Domain("factor lengths do not match Q".into()));
        }
        if self.reconstruct(q.rows(), q.cols()) != rows {
            return Err(CopicError::Domain(
                "factorization does not reproduce Q".into(),
            ));
        }
        if rank_of(&self.a_vectors) != self.r || rank_of(&self.b_vectors) != self.r {
            return Err(CopicError::Domain("factors are linearly dependent".into()));
        }
        Ok(())
    }

    pub fn transposed(&self) -> RankFactorization {
        RankFactorization {
            r: self.r,
            a_vectors: self.b_vectors.clone(),
            b_vectors: self.a_vectors.clone(),
        }
    }
}

fn rank_of(vectors: &[Vec<Rational>]) -> usize {
    let Some(width) = vectors.first().map(Vec::len) else {
        return 0;
    };
    let mut sys = IncrementalSystem::new(width);
    for (t, v) in vectors.iter().enumerate() {
        let _ = sys.push(t, v.clone(), Rational::zero());
    }
    sys.rank()
}

fn finite_rows(q: &Matrix) -> Result<Vec<Vec<Rational>>> {
    (0..q.rows())
        .map(|i| {
            q.row(i)
                .iter()
                .map(|c| {
                    c.finite()
                        .cloned()
                        .ok_or_else(|| CopicError::Domain("Q must be finite".into()))
                })
                .collect()
        })
        .collect()
}

/// Exact rank factorization by repeated rank-1 peeling with full pivoting:
/// the pivot is the entry of largest absolute value, ties to the smallest
/// row-major index.
pub fn factorize(q: &Matrix) -> Result<RankFactorization> {
    let mut res = finite_rows(q)?;
    let (m, n) = (q.rows(), q.cols());
    let mut fact = RankFactorization {
        r: 0,
        a_vectors: Vec::new(),
        b_vectors: Vec::new(),
    };
    loop {
        let mut pivot: Option<(usize, usize)> = None;
        for i in 0..m {
            for j in 0..n {
                if !res[i][j].is_zero()
                    && pivot.is_none_or(|(pi, pj)| res[i][j].abs() > res[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        let p = res[pi][pj].clone();
        let a: Vec<Rational> = (0..m).map(|i| res[i][pj].clone()).collect();
        let b: Vec<Rational> = res[pi].iter().map(|v| v / &p).collect();
        for i in 0..m {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                res[i][j] -= &a[i] * &b[j];
            }
        }
        fact.a_vectors.push(a);
        fact.b_vectors.push(b);
        fact.r += 1;
    }
    Ok(fact)
}

/// A partition `(B, L, U)` of `[m]`: `r` basic indices, nonbasic at 0, nonbasic at 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BasisStructure {
    pub basic: Vec<usize>,
    pub at_lower: Vec<usize>,
    pub at_upper: Vec<usize>,
}

/// Candidate first-side solutions, deduplicated, in subset order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateSet {
    pub m: usize,
    pub candidates: Vec<Subset>,
}

impl CandidateSet {
    pub fn contains(&self, s: &Subset) -> bool {
        self.candidates.binary_search(s).is_ok()
    }

    pub fn indicators(&self) -> Vec<Vec<bool>> {
        self.candidates
            .iter()
            .map(|s| s.indicator(self.m))
            .collect()
    }
}

fn combinations(m: usize, r: usize, f: &mut dyn FnMut(&[usize]) -> Result<()>) -> Result<()> {
    if r > m {
        return Ok(());
    }
    let mut cur: Vec<usize> = (0..r).collect();
    loop {
        f(&cur)?;
        let Some(p) = (0..r).rev().find(|&p| cur[p] < m - r + p) else {
            return Ok(());
        };
        cur[p] += 1;
        for q in p + 1..r {
            cur[q] = cur[q - 1] + 1;
        }
    }
}

fn costs_as_rationals(c: &[Cost]) -> Result<Vec<Rational>> {
    c.iter()
        .map(|x| {
            x.finite()
                .cloned()
                .ok_or_else(|| CopicError::Domain("linear costs must be finite".into()))
        })
        .collect()
}

/// Every dual feasible basis structure of `min cᵀx, a_pᵀx = λ_p, 0 ≤ x ≤ 1`.
/// A nonbasic index with zero reduced cost appears once in `L` and once in `U`.
pub fn basis_structures(
    c: &[Cost],
    fact: &RankFactorization,
    cap: u64,
) -> Result<Vec<BasisStructure>> {
    let c = costs_as_rationals(c)?;
    let (m, r) = (c.len(), fact.r);
    let mut out = Vec::new();
    combinations(m, r, &mut |basis| {
        let mat: Vec<Vec<Rational>> = basis
            .iter()
            .map(|&j| fact.a_vectors.iter().map(|a| a[j].clone()).collect())
            .collect();
        let rhs: Vec<Rational> = basis.iter().map(|&j| c[j].clone()).collect();
        let Some(y) = solve_square(&mat, &rhs) else {
            return Ok(());
        };
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        let mut free = Vec::new();
        for j in (0..m).filter(|j| !basis.contains(j)) {
            let reduced: Rational = &c[j]
                - fact
                    .a_vectors
                    .iter()
                    .zip(&y)
                    .map(|(a, yp)| &a[j] * yp)
                    .sum::<Rational>();
            if reduced.is_positive() {
                lower.push(j);
            } else if reduced.is_negative() {
                upper.push(j);
            } else {
                free.push(j);
            }
        }
        if free.len() >= 63 || (out.len() as u64).saturating_add(1u64 << free.len()) > cap {
            return Err(CopicError::ResourceLimit {
                what: "basis structures".into(),
                cap,
            });
        }
        for mask in 0u64..(1u64 << free.len()) {
            let mut l = lower.clone();
            let mut u = upper.clone();
            for (bit, &j) in free.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    u.push(j);
                } else {
                    l.push(j);
                }
            }
            l.sort_unstable();
            u.sort_unstable();
            out.push(BasisStructure {
                basic: basis.to_vec(),
                at_lower: l,
                at_upper: u,
            });
        }
        Ok(())
    })?;
    Ok(out)
}

/// Candidates of the rank-r method: for each dual feasible basis
/// structure, `U` plus every subset of the basic indices. With `r = 0` the
/// single candidate `{i : c_i < 0}`.
pub fn rankr_candidates(c: &[Cost], fact: &RankFactorization, cap: u64) -> Result<CandidateSet> {
    let m = c.len();
    if fact.r == 0 {
        let x = (0..m).filter(|&i| c[i].is_negative()).collect();
        return Ok(CandidateSet {
            m,
            candidates: vec![Subset::new(x)],
        });
    }
    let mut set = BTreeSet::new();
    let mut produced: u64 = 0;
    for bs in basis_structures(c, fact, cap)? {
        produced = produced.saturating_add(1 << bs.basic.len());
        if produced > cap {
            return Err(CopicError::ResourceLimit {
                what: "rank-r candidates".into(),
                cap,
            });
        }
        for mask in 0u64..(1 << bs.basic.len()) {
            let mut x = bs.at_upper.clone();
            x.extend(
                bs.basic
                    .iter()
                    .enumerate()
                    .filter(|(bit, _)| mask >> bit & 1 == 1)
                    .map(|(_, &j)| j),
            );
            set.insert(Subset::new(x));
        }
    }
    Ok(CandidateSet {
        m,
        candidates: set.into_iter().collect(),
    })
}

/// Candidates of the rank-1 threshold sweep over `μ`: `x_i = 1` iff
/// `c_i + μ a_i < 0`, one candidate per open interval between breakpoints
/// `μ = −c_i/a_i`, and every choice for the tied elements at each breakpoint.
pub fn rank1_candidates(c: &[Cost], a: &[Rational], cap: u64) -> Result<CandidateSet> {
    let c = costs_as_rationals(c)?;
    let m = c.len();
    let mut breaks: Vec<Rational> = (0..m)
        .filter(|&i| !a[i].is_zero())
        .map(|i| -&c[i] / &a[i])
        .collect();
    breaks.sort();
    breaks.dedup();
    let at = |mu: &Rational| -> (Vec<usize>, Vec<usize>) {
        let mut ones = Vec::new();
        let mut tied = Vec::new();
        for i in 0..m {
            let v = &c[i] + mu * &a[i];
            if v.is_negative() {
                ones.push(i);
            } else if v.is_zero() && !a[i].is_zero() {
                tied.push(i);
            }
        }
        (ones, tied)
    };
    let one = Rational::from_integer(1.into());
    let mut probes: Vec<Rational> = Vec::new();
    match (breaks.first(), breaks.last()) {
        (Some(lo), Some(hi)) => {
            probes.push(lo - &one);
            probes.push(hi + &one);
            for w in breaks.windows(2) {
                probes.push((&w[0] + &w[1]) / Rational::from_integer(2.into()));
            }
        }
        _ => probes.push(Rational::zero()),
    }
    let mut set = BTreeSet::new();
    for mu in &probes {
        set.insert(Subset::new(at(mu).0));
    }
    for mu in &breaks {
        let (ones, tied) = at(mu);
        if tied.len() >= 63 || (set.len() as u64).saturating_add(1 << tied.len()) > cap {
            return Err(CopicError::ResourceLimit {
                what: "rank-1 candidates".into(),
                cap,
            });
        }
        for mask in 0u64..(1 << tied.len()) {
            let mut x = ones.clone();
            x.extend(
                tied.iter()
                    .enumerate()
                    .filter(|(bit, _)| mask >> bit & 1 == 1)
                    .map(|(_, &j)| j),
            );
            set.insert(Subset::new(x));
        }
    }
    Ok(CandidateSet {
        m,
        candidates: set.into_iter().collect(),
    })
}

/// An α-approximate solver for the second side's linear problem, trusted
/// only on nonnegative weights.
pub trait LcopOracle: Sync {
    fn alpha(&self) -> Rational;
    fn solve(&self, family: &FamilySpec, w: &[Cost]) -> Result<Subset>;
}

/// The exact linear oracle (`α = 1`).
#[derive(Clone, Copy, Debug, Default)]
pub struct ExactOracle;

impl LcopOracle for ExactOracle {
    fn alpha(&self) -> Rational {
        Rational::from_integer(1.into())
    }
    fn solve(&self, family: &FamilySpec, w: &[Cost]) -> Result<Subset> {
        lcop_solve(family, w).map(|x| x.0)
    }
}

fn induced_weights(instance: &Instance, fact: &RankFactorization, x: &Subset) -> Vec<Cost> {
    let lambda: Vec<Rational> = fact
        .a_vectors
        .iter()
        .map(|a| x.iter().map(|i| &a[i]).sum())
        .collect();
    (0..instance.n)
        .map(|j| {
            let shift: Rational = fact
                .b_vectors
                .iter()
                .zip(&lambda)
                .map(|(b, l)| &b[j] * l)
                .sum();
            &instance.d[j] + &Cost::Finite(shift)
        })
        .collect()
}

fn best_completion(
    instance: &Instance,
    fact: &RankFactorization,
    candidates: &CandidateSet,
    complete: &(dyn Fn(&[Cost]) -> Result<Subset> + Sync),
) -> Result<Solution> {
    let results: Vec<Result<Solution>> = candidates
        .candidates
        .par_iter()
        .map(|x| {
            let w = induced_weights(instance, fact, x);
            let s2 = complete(&w)?;
            let objective = evaluate_objective(instance, x.as_slice(), s2.as_slice())?;
            Ok(Solution {
                s1: x.clone(),
                s2,
                objective,
            })
        })
        .collect();
    let mut best: Option<Solution> = None;
    for r in results {
        let sol = r?;
        if best.as_ref().is_none_or(|b| sol.objective < b.objective) {
            best = Some(sol);
        }
    }
    best.ok_or_else(|| CopicError::NoSolution("no candidate first-side solution".into()))
}

/// Brings the unconstrained side to position 1, transposing if needed.
fn oriented(
    instance: &Instance,
    fact: &RankFactorization,
) -> Result<Option<(Instance, RankFactorization)>> {
    let q = instance.q.to_matrix();
    fact.validate(&q)?;
    if matches!(instance.family1, FamilySpec::Unconstrained { .. }) {
        Ok(None)
    } else if matches!(instance.family2, FamilySpec::Unconstrained { .. }) {
        Ok(Some((instance.transposed(), fact.transposed())))
    } else {
        Err(CopicError::Precondition(
            "requires an unconstrained family on one side".into(),
        ))
    }
}

fn dispatch(
    instance: &Instance,
    fact: &RankFactorization,
    run: &dyn Fn(&Instance, &RankFactorization) -> Result<Solution>,
) -> Result<Solution> {
    match oriented(instance, fact)? {
        None => run(instance, fact),
        Some((inst, f)) => run(&inst, &f).map(Solution::flipped),
    }
}

/// Rank-1 interaction with one unconstrained side: threshold sweep.
pub fn solve_rank1_unconstrained_side(
    instance: &Instance,
    fact: &RankFactorization,
) -> Result<Solution> {
    if fact.r != 1 {
        return Err(CopicError::Precondition(format!(
            "requires rank 1, got rank {}",
            fact.r
        )));
    }
    dispatch(instance, fact, &|inst, f| {
        let cands = rank1_candidates(&inst.c, &f.a_vectors[0], DEFAULT_CANDIDATE_CAP)?;
        best_completion(inst, f, &cands, &|w| {
            lcop_solve(&inst.family2, w).map(|x| x.0)
        })
    })
}

/// Rank-r interaction with one unconstrained side: basis structure enumeration.
pub fn solve_rankr_unconstrained_side(
    instance: &Instance,
    fact: &RankFactorization,
    cap: u64,
) -> Result<Solution> {
    dispatch(instance, fact, &|inst, f| {
        let cands = rankr_candidates(&inst.c, f, cap)?;
        best_completion(inst, f, &cands, &|w| {
            lcop_solve(&inst.family2, w).map(|x| x.0)
        })
    })
}

/// As [`solve_rankr_unconstrained_side`], completing each candidate with an
/// approximate oracle. Every induced weight vector must be nonnegative.
/// The result is within `α` of the optimum when the optimum is nonnegative.
pub fn solve_rankr_with_approximate_oracle(
    instance: &Instance,
    fact: &RankFactorization,
    oracle: &dyn LcopOracle,
    cap: u64,
) -> Result<Solution> {
    dispatch(instance, fact, &|inst, f| {
        let cands = rankr_candidates(&inst.c, f, cap)?;
        best_completion(inst, f, &cands, &|w| {
            if w.iter().any(Cost::is_negative) {
                return Err(CopicError::Precondition(
                    "approximate oracle requires nonnegative induced weights".into(),
                ));
            }
            oracle.solve(&inst.family2, w)
        })
    })
}
