//! Polynomial solvers for diagonal instances, where both sides share one
//! ground set and `f(S1,S2) = Σ_{i∈S1∩S2} a_i + Σ_{i∈S1} c_i + Σ_{j∈S2} d_j`.
//!
//! Among optimal pairs each solver applies its own fixed local tie rule;
//! only the brute-force oracle promises the least pair in subset order.

use crate::cost::Cost;
use crate::error::{CopicError, Result};
use crate::families::{as_matroid_oracle, lcop_solve, FamilySpec, MatroidOracle};
use crate::graphkit::{min_cost_flow, min_weight_disjoint_bases, FlowNetwork, Graph};
use crate::instance::{evaluate_objective, DiagonalCosts, Instance, Interaction, Solution, Subset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalInstance {
    pub n: usize,
    pub a: DiagonalCosts,
    pub c: Vec<Cost>,
    pub d: Vec<Cost>,
    pub family1: FamilySpec,
    pub family2: FamilySpec,
}

impl DiagonalInstance {
    pub fn new(
        a: Vec<Cost>,
        c: Vec<Cost>,
        d: Vec<Cost>,
        family1: FamilySpec,
        family2: FamilySpec,
    ) -> Result<Self> {
        let inst = Instance::new(
            Interaction::Diagonal(DiagonalCosts::new(a)),
            c,
            d,
            family1,
            family2,
        )?;
        DiagonalInstance::from_instance(&inst)
    }

    /// Accepts a diagonal interaction, or a dense one that is zero off the diagonal.
    pub fn from_instance(inst: &Instance) -> Result<Self> {
        let a = inst.q.diagonal().ok_or_else(|| {
            CopicError::Precondition("requires a diagonal interaction matrix".into())
        })?;
        Ok(DiagonalInstance {
            n: inst.n,
            a: DiagonalCosts::new(a),
            c: inst.c.clone(),
            d: inst.d.clone(),
            family1: inst.family1.clone(),
            family2: inst.family2.clone(),
        })
    }

    pub fn to_instance(&self) -> Instance {
        Instance {
            m: self.n,
            n: self.n,
            q: Interaction::Diagonal(self.a.clone()),
            c: self.c.clone(),
            d: self.d.clone(),
            family1: self.family1.clone(),
            family2: self.family2.clone(),
        }
    }

    fn flipped(&self) -> DiagonalInstance {
        DiagonalInstance {
            n: self.n,
            a: self.a.clone(),
            c: self.d.clone(),
            d: self.c.clone(),
            family1: self.family2.clone(),
            family2: self.family1.clone(),
        }
    }

    fn finish(&self, s1: Subset, s2: Subset) -> Result<Solution> {
        let objective = evaluate_objective(&self.to_instance(), s1.as_slice(), s2.as_slice())?;
        if objective.is_inf() {
            return Err(CopicError::NoSolution(
                "every feasible pair overlaps on a forbidden element".into(),
            ));
        }
        Ok(Solution { s1, s2, objective })
    }
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(CopicError::Precondition(format!("requires {what}")))
    }
}

fn nonnegative(v: &[Cost]) -> bool {
    v.iter().all(|x| !x.is_negative())
}

fn is_unconstrained(f: &FamilySpec) -> bool {
    matches!(f, FamilySpec::Unconstrained { .. })
}

/// Both sides unconstrained: each element independently takes the cheapest
/// of none, `c`, `d`, `a+c+d` (earlier option on ties; `a = +inf` drops the last).
pub fn solve_diag_unconstrained_pair(inst: &DiagonalInstance) -> Result<Solution> {
    require(
        is_unconstrained(&inst.family1) && is_unconstrained(&inst.family2),
        "both families unconstrained",
    )?;
    let mut s1 = Vec::new();
    let mut s2 = Vec::new();
    for i in 0..inst.n {
        let options = [
            Cost::zero(),
            inst.c[i].clone(),
            inst.d[i].clone(),
            &inst.a.a[i] + &inst.c[i] + &inst.d[i],
        ];
        let best = (0..4)
            .min_by(|&x, &y| options[x].cmp(&options[y]).then(x.cmp(&y)))
            .unwrap();
        if best == 1 || best == 3 {
            s1.push(i);
        }
        if best == 2 || best == 3 {
            s2.push(i);
        }
    }
    inst.finish(Subset::new(s1), Subset::new(s2))
}

/// One side unconstrained: optimize the other side with
/// `f_i = min{c_i + d_i + a_i, c_i} − min{d_i, 0}`, then fill in the free side.
pub fn solve_diag_one_side_unconstrained(inst: &DiagonalInstance) -> Result<Solution> {
    if !is_unconstrained(&inst.family2) {
        require(is_unconstrained(&inst.family1), "one family unconstrained")?;
        return solve_diag_one_side_unconstrained(&inst.flipped()).map(Solution::flipped);
    }
    let zero = Cost::zero();
    let f: Vec<Cost> = (0..inst.n)
        .map(|i| {
            let both = &inst.c[i] + &inst.d[i] + &inst.a.a[i];
            both.min(inst.c[i].clone()) - inst.d[i].clone().min(zero.clone())
        })
        .collect();
    let (s1, _) = lcop_solve(&inst.family1, &f)?;
    let s2 = (0..inst.n)
        .filter(|&i| {
            if s1.contains(i) {
                &inst.c[i] + &inst.d[i] + &inst.a.a[i] <= inst.c[i]
            } else {
                inst.d[i].is_negative()
            }
        })
        .collect();
    inst.finish(s1, Subset::new(s2))
}

/// Uniform matroid on both sides: dynamic program over elements with state
/// (chosen into S1, chosen into S2).
pub fn solve_diag_uniform_pair(inst: &DiagonalInstance) -> Result<Solution> {
    let (FamilySpec::UniformMatroid { k: k1, .. }, FamilySpec::UniformMatroid { k: k2, .. }) =
        (&inst.family1, &inst.family2)
    else {
        return Err(CopicError::Precondition(
            "requires uniform matroids on both sides".into(),
        ));
    };
    let (k1, k2, n) = (*k1, *k2, inst.n);
    if k1 > n || k2 > n {
        return Err(CopicError::Domain(format!(
            "cardinalities ({k1},{k2}) exceed ground size {n}"
        )));
    }
    let width = k2 + 1;
    let cell = |x: usize, y: usize| x * width + y;
    let mut dp: Vec<Option<Cost>> = vec![None; (k1 + 1) * width];
    dp[0] = Some(Cost::zero());
    let mut choice: Vec<Vec<u8>> = Vec::with_capacity(n);
    for i in 0..n {
        let options = [
            (0usize, 0usize, Cost::zero()),
            (1, 0, inst.c[i].clone()),
            (0, 1, inst.d[i].clone()),
            (1, 1, &inst.a.a[i] + &inst.c[i] + &inst.d[i]),
        ];
        let mut next: Vec<Option<Cost>> = vec![None; dp.len()];
        let mut pick = vec![0u8; dp.len()];
        for x in 0..=k1 {
            for y in 0..=k2 {
                let Some(base) = &dp[cell(x, y)] else {
                    continue;
                };
                for (state, (dx, dy, cost)) in options.iter().enumerate() {
                    if x + dx > k1 || y + dy > k2 || cost.is_inf() {
                        continue;
                    }
                    let value = base + cost;
                    let target = cell(x + dx, y + dy);
                    if next[target].as_ref().is_none_or(|cur| value < *cur) {
                        next[target] = Some(value);
                        pick[target] = state as u8;
                    }
                }
            }
        }
        dp = next;
        choice.push(pick);
    }
    if dp[cell(k1, k2)].is_none() {
        return Err(CopicError::NoSolution(format!(
            "no {k1}-set and {k2}-set avoid every forbidden overlap"
        )));
    }
    let (mut x, mut y) = (k1, k2);
    let (mut s1, mut s2) = (Vec::new(), Vec::new());
    for i in (0..n).rev() {
        let state = choice[i][cell(x, y)];
        if state == 1 || state == 3 {
            s1.push(i);
            x -= 1;
        }
        if state == 2 || state == 3 {
            s2.push(i);
            y -= 1;
        }
    }
    inst.finish(Subset::new(s1), Subset::new(s2))
}

/// Removes cycles from a walk given as `(edge, head)` steps out of `start`.
fn loop_erase(start: usize, steps: &[(usize, usize)]) -> Vec<usize> {
    let mut vertices = vec![start];
    let mut edges: Vec<usize> = Vec::new();
    for &(e, head) in steps {
        if let Some(p) = vertices.iter().position(|&v| v == head) {
            vertices.truncate(p + 1);
            edges.truncate(p);
        } else {
            vertices.push(head);
            edges.push(e);
        }
    }
    edges
}

/// Uniform matroid against s-t paths with `a, d ≥ 0` and `c = 0`:
/// dynamic program over (vertex, walk length, edges designated into S1).
pub fn solve_diag_uniform_path(inst: &DiagonalInstance) -> Result<Solution> {
    if matches!(inst.family1, FamilySpec::StPath { .. })
        && matches!(inst.family2, FamilySpec::UniformMatroid { .. })
    {
        return solve_diag_uniform_path(&inst.flipped()).map(Solution::flipped);
    }
    let (FamilySpec::UniformMatroid { k, .. }, FamilySpec::StPath { graph, s, t }) =
        (&inst.family1, &inst.family2)
    else {
        return Err(CopicError::Precondition(
            "requires a uniform matroid against an s-t path family".into(),
        ));
    };
    require(nonnegative(&inst.a.a), "a >= 0")?;
    require(nonnegative(&inst.d), "d >= 0")?;
    require(inst.c.iter().all(Cost::is_zero), "c = 0")?;
    let (k, n, s, t) = (*k, inst.n, *s, *t);
    let v_count = graph.vertices;
    let adj = graph.adjacency();
    let idx = |v: usize, j: usize| v * (k + 1) + j;

    // layers[ℓ][(v, j)] = best cost of an s-v walk with ℓ edges, j of them designated.
    type Back = (usize, usize, usize, usize); // (prev vertex, prev j, edge, head)
    type Layer = Vec<Option<(Cost, Option<Back>)>>;
    let mut layers: Vec<Layer> = Vec::with_capacity(n + 1);
    let mut first = vec![None; v_count * (k + 1)];
    if k <= n {
        first[idx(s, 0)] = Some((Cost::zero(), None));
    }
    layers.push(first);
    for l in 0..n {
        let mut next: Vec<Option<(Cost, Option<Back>)>> = vec![None; v_count * (k + 1)];
        for v in 0..v_count {
            for j in 0..=k {
                let Some((base, _)) = &layers[l][idx(v, j)] else {
                    continue;
                };
                for &(e, w) in &adj[v] {
                    let plain = base + &inst.d[e];
                    let mut moves = vec![(j, plain.clone())];
                    if j < k && inst.a.a[e].is_finite() {
                        moves.push((j + 1, plain + &inst.a.a[e]));
                    }
                    for (j2, value) in moves {
                        if k - j2 > n - (l + 1) {
                            continue;
                        }
                        let slot = &mut next[idx(w, j2)];
                        if slot.as_ref().is_none_or(|(cur, _)| value < *cur) {
                            *slot = Some((value, Some((v, j, e, w))));
                        }
                    }
                }
            }
        }
        layers.push(next);
    }
    let mut best: Option<(Cost, usize, usize)> = None;
    for (l, layer) in layers.iter().enumerate() {
        for j in 0..=k {
            if let Some((value, _)) = &layer[idx(t, j)] {
                if best.as_ref().is_none_or(|(b, _, _)| value < b) {
                    best = Some((value.clone(), l, j));
                }
            }
        }
    }
    let (_, mut l, mut j) =
        best.ok_or_else(|| CopicError::NoSolution(format!("no feasible {s}-{t} path")))?;
    let mut v = t;
    let mut steps = Vec::with_capacity(l);
    while l > 0 {
        let (_, back) = layers[l][idx(v, j)].as_ref().expect("reachable state");
        let (pv, pj, e, head) = back.expect("predecessor");
        steps.push((e, head));
        v = pv;
        j = pj;
        l -= 1;
    }
    steps.reverse();
    let path = Subset::new(loop_erase(s, &steps));

    // Best S1 for this path: off-path elements are free, path elements pay a.
    let off: Vec<usize> = (0..n).filter(|&e| !path.contains(e)).collect();
    let needed = k.saturating_sub(off.len());
    let mut on: Vec<usize> = path.iter().filter(|&e| inst.a.a[e].is_finite()).collect();
    on.sort_by(|&x, &y| inst.a.a[x].cmp(&inst.a.a[y]).then(x.cmp(&y)));
    if on.len() < needed {
        return Err(CopicError::NoSolution(
            "path cannot host the required overlap".into(),
        ));
    }
    let mut s1: Vec<usize> = on[..needed].to_vec();
    s1.extend(off.iter().take(k - needed));
    inst.finish(Subset::new(s1), path)
}

/// Each element split into two parallel copies; copy 0 is a loop when the
/// element may not be shared.
struct Doubled {
    inner: Box<dyn MatroidOracle>,
    forbidden_first: Vec<bool>,
}

impl MatroidOracle for Doubled {
    fn ground_size(&self) -> usize {
        2 * self.inner.ground_size()
    }
    fn rank(&self) -> usize {
        self.inner.rank()
    }
    fn is_independent(&self, set: &[usize]) -> bool {
        let mut seen = vec![false; self.inner.ground_size()];
        let mut projected = Vec::with_capacity(set.len());
        for &x in set {
            let i = x / 2;
            if (x % 2 == 0 && self.forbidden_first[i]) || seen[i] {
                return false;
            }
            seen[i] = true;
            projected.push(i);
        }
        self.inner.is_independent(&projected)
    }
}

/// Matroid bases on both sides with `a ≥ 0` and `c = d`: minimum-weight
/// disjoint bases of the doubled matroids, copy weights `a+c` and `c`.
pub fn solve_diag_matroid_pair(inst: &DiagonalInstance) -> Result<Solution> {
    require(
        inst.family1.is_matroid() && inst.family2.is_matroid(),
        "matroid families on both sides",
    )?;
    require(nonnegative(&inst.a.a), "a >= 0")?;
    require(inst.c == inst.d, "c = d")?;
    let forbidden: Vec<bool> = inst.a.a.iter().map(Cost::is_inf).collect();
    let m1 = Doubled {
        inner: as_matroid_oracle(&inst.family1)?,
        forbidden_first: forbidden.clone(),
    };
    let m2 = Doubled {
        inner: as_matroid_oracle(&inst.family2)?,
        forbidden_first: forbidden,
    };
    let mut w = Vec::with_capacity(2 * inst.n);
    for i in 0..inst.n {
        let shared = if inst.a.a[i].is_inf() {
            inst.c[i].clone()
        } else {
            &inst.a.a[i] + &inst.c[i]
        };
        w.push(shared);
        w.push(inst.c[i].clone());
    }
    let pair = min_weight_disjoint_bases(&m1, &m2, &w)?.ok_or_else(|| {
        CopicError::NoSolution("no pair of bases avoids every forbidden overlap".into())
    })?;
    let project = |b: &Subset| Subset::new(b.iter().map(|x| x / 2).collect());
    inst.finish(project(&pair.b1), project(&pair.b2))
}

fn same_path_family(f1: &FamilySpec, f2: &FamilySpec) -> Option<(Graph, usize, usize)> {
    match (f1, f2) {
        (
            FamilySpec::StPath { graph, s, t },
            FamilySpec::StPath {
                graph: g2,
                s: s2,
                t: t2,
            },
        ) if graph == g2 && s == s2 && t == t2 => Some((graph.clone(), *s, *t)),
        _ => None,
    }
}

/// Two s-t paths with common terminals, `a ≥ 0`, `c = d ≥ 0`: a 2-unit
/// minimum-cost flow over two unit copies of every edge, costs `c` and `a+c`.
pub fn solve_diag_common_paths(inst: &DiagonalInstance) -> Result<Solution> {
    let (graph, s, t) = same_path_family(&inst.family1, &inst.family2).ok_or_else(|| {
        CopicError::Precondition("requires the same s-t path family on both sides".into())
    })?;
    require(nonnegative(&inst.a.a), "a >= 0")?;
    require(inst.c == inst.d, "c = d")?;
    require(nonnegative(&inst.c), "c >= 0")?;

    let mut net = FlowNetwork::new(graph.vertices);
    net.supplies[s] = 2;
    net.supplies[t] = -2;
    for (e, &(u, v)) in graph.edges.iter().enumerate() {
        if u == v {
            continue;
        }
        let mut copies = vec![inst.c[e].clone()];
        if inst.a.a[e].is_finite() {
            copies.push(&inst.a.a[e] + &inst.c[e]);
        }
        for cost in copies {
            net.add_arc(u, v, 1, cost.clone(), e);
            if !graph.directed {
                net.add_arc(v, u, 1, cost, e);
            }
        }
    }
    let flow = match min_cost_flow(&net) {
        Ok(f) => f,
        Err(CopicError::Infeasible(_)) => {
            return Err(CopicError::NoSolution(format!(
                "no two {s}-{t} paths respect the forbidden overlaps"
            )));
        }
        Err(other) => return Err(other),
    };

    // Net usage per edge; opposite traversals of an undirected edge cancel.
    let mut usage: Vec<i64> = vec![0; graph.edge_count()];
    for (arc, &f) in net.arcs.iter().zip(&flow.flow) {
        let (u, _) = graph.edges[arc.label];
        usage[arc.label] += if arc.tail == u { f } else { -f };
    }
    let mut remaining: Vec<(usize, usize, i64)> = graph
        .edges
        .iter()
        .zip(&usage)
        .map(|(&(u, v), &x)| if x >= 0 { (u, v, x) } else { (v, u, -x) })
        .collect();
    let mut paths = Vec::with_capacity(2);
    for _ in 0..2 {
        let mut at = s;
        let mut steps = Vec::new();
        while at != t {
            let e = (0..remaining.len())
                .find(|&e| remaining[e].0 == at && remaining[e].2 > 0)
                .ok_or_else(|| CopicError::Infeasible("flow decomposition stalled".into()))?;
            remaining[e].2 -= 1;
            at = remaining[e].1;
            steps.push((e, at));
        }
        paths.push(Subset::new(loop_erase(s, &steps)));
    }
    let s2 = paths.pop().unwrap();
    let s1 = paths.pop().unwrap();
    inst.finish(s1, s2)
}
