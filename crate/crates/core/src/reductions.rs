//! k-cardinality minimum directed cut on the complete bipartite digraph
//! `L → R`, solved as a sweep of uniform × uniform instances.
//!
//! A vertex set `S` cuts exactly the arcs from `S ∩ L` to `R ∖ S`, so with
//! `S1 = S ∩ L` and `S2 = R ∖ S` the cut is `S1 × S2` and its cost is the
//! interaction sum.

use crate::cost::Cost;
use crate::error::{CopicError, Result};
use crate::families::FamilySpec;
use crate::instance::{Instance, Interaction, Matrix, Solution, Subset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KCardCutInstance {
    pub m: usize,
    pub n: usize,
    pub q: Matrix,
    pub k: usize,
}

impl KCardCutInstance {
    pub fn new(q: Matrix, k: usize) -> Result<Self> {
        let (m, n) = (q.rows(), q.cols());
        if k == 0 || k > m * n {
            return Err(CopicError::Domain(format!("k = {k} outside 1..={}", m * n)));
        }
        if q.entries().any(Cost::is_inf) {
            return Err(CopicError::Domain("arc costs must be finite".into()));
        }
        Ok(KCardCutInstance { m, n, q, k })
    }
}

/// A cut given by its source side. Left vertex `i` is `i`, right vertex `j` is `m + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutResult {
    pub vertices: Subset,
    pub cost: Cost,
    pub k1: usize,
    pub k2: usize,
}

fn cut_from(inst: &KCardCutInstance, s1: &Subset, s2: &Subset, cost: Cost) -> CutResult {
    let mut vertices: Vec<usize> = s1.iter().collect();
    vertices.extend((0..inst.n).filter(|&j| !s2.contains(j)).map(|j| inst.m + j));
    CutResult {
        vertices: Subset::new(vertices),
        cost,
        k1: s1.len(),
        k2: s2.len(),
    }
}

/// Sweeps `k1 | k` with `k2 = k / k1`, solving each uniform(m,k1) ×
/// uniform(n,k2) instance with `solver`; keeps the cheapest cut (smallest
/// `k1` on ties).
pub fn solve_kcard_cut_via_copic(
    inst: &KCardCutInstance,
    solver: &dyn Fn(&Instance) -> Result<Solution>,
) -> Result<CutResult> {
    let mut best: Option<CutResult> = None;
    for k1 in 1..=inst.m {
        if !inst.k.is_multiple_of(k1) || inst.k / k1 > inst.n {
            continue;
        }
        let k2 = inst.k / k1;
        let copic = Instance::new(
            Interaction::Dense(inst.q.clone()),
            vec![Cost::zero(); inst.m],
            vec![Cost::zero(); inst.n],
            FamilySpec::UniformMatroid {
                ground_size: inst.m,
                k: k1,
            },
            FamilySpec::UniformMatroid {
                ground_size: inst.n,
                k: k2,
            },
        )?;
        let sol = solver(&copic)?;
        if best.as_ref().is_none_or(|b| sol.objective < b.cost) {
            best = Some(cut_from(inst, &sol.s1, &sol.s2, sol.objective));
        }
    }
    best.ok_or_else(|| {
        CopicError::NoSolution(format!(
            "no k1 * k2 = {} with k1 <= {}, k2 <= {}",
            inst.k, inst.m, inst.n
        ))
    })
}

/// Number of arcs and cost of the cut with source side `vertices`.
pub fn cut_of(inst: &KCardCutInstance, vertices: &Subset) -> (usize, Cost) {
    let left: Vec<usize> = vertices.iter().filter(|&v| v < inst.m).collect();
    let right_out: Vec<usize> = (0..inst.n)
        .filter(|&j| !vertices.contains(inst.m + j))
        .collect();
    let cost = left
        .iter()
        .flat_map(|&i| right_out.iter().map(move |&j| (i, j)))
        .map(|(i, j)| inst.q.get(i, j))
        .sum();
    (left.len() * right_out.len(), cost)
}

/// Reference solver: every vertex subset, keeping those with exactly `k` cut arcs.
pub fn enumerate_kcard_cuts(inst: &KCardCutInstance) -> Result<Option<(Subset, Cost)>> {
    let total = inst.m + inst.n;
    if total >= 26 {
        return Err(CopicError::EnumerationTooLarge { cap: 1 << 25 });
    }
    let mut best: Option<(Subset, Cost)> = None;
    for mask in 0u64..(1 << total) {
        let s = Subset::from_mask(mask);
        let (arcs, cost) = cut_of(inst, &s);
        if arcs == inst.k && best.as_ref().is_none_or(|(_, b)| cost < *b) {
            best = Some((s, cost));
        }
    }
    Ok(best)
}
