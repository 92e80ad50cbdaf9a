//! Feasible-solution families. Each family offers a membership test,
//! exhaustive enumeration (desk scale, capped), and a linear-cost oracle.

use std::collections::VecDeque;

use crate::cost::Cost;
use crate::error::{CopicError, Result};
use crate::graphkit::{self, Graph, UnionFind};
use crate::instance::{Matrix, Subset};

pub const DEFAULT_ENUM_CAP: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    /// Every subset of the ground set.
    Unconstrained { ground_size: usize },
    /// All `k`-subsets.
    UniformMatroid { ground_size: usize, k: usize },
    /// Sets meeting part `p` in exactly `quotas[p]` elements.
    PartitionMatroid {
        parts: Vec<Vec<usize>>,
        quotas: Vec<usize>,
    },
    /// Spanning forests (spanning trees when connected); ground set = edges.
    GraphicMatroid { graph: Graph },
    /// Edge sets of simple `s`-`t` paths.
    StPath { graph: Graph, s: usize, t: usize },
    /// Perfect matchings of `K_{p,p}`; edge `(i,j)` has index `i·p + j`.
    BipartitePerfectMatching { side: usize },
}

impl FamilySpec {
    pub fn st_path(graph: Graph, s: usize, t: usize) -> Result<Self> {
        let fam = FamilySpec::StPath { graph, s, t };
        let v = fam.validate();
        if v.is_empty() {
            Ok(fam)
        } else {
            Err(CopicError::Domain(v.join("; ")))
        }
    }

    pub fn ground_size(&self) -> usize {
        match self {
            FamilySpec::Unconstrained { ground_size }
            | FamilySpec::UniformMatroid { ground_size, .. } => *ground_size,
            FamilySpec::PartitionMatroid { parts, .. } => parts.iter().map(Vec::len).sum(),
            FamilySpec::GraphicMatroid { graph } | FamilySpec::StPath { graph, .. } => {
                graph.edge_count()
            }
            FamilySpec::BipartitePerfectMatching { side } => side * side,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            FamilySpec::Unconstrained { .. } => "unconstrained",
            FamilySpec::UniformMatroid { .. } => "uniform",
            FamilySpec::PartitionMatroid { .. } => "partition",
            FamilySpec::GraphicMatroid { .. } => "graphic",
            FamilySpec::StPath { .. } => "stpath",
            FamilySpec::BipartitePerfectMatching { .. } => "pm",
        }
    }

    pub fn is_matroid(&self) -> bool {
        matches!(
            self,
            FamilySpec::UniformMatroid { .. }
                | FamilySpec::PartitionMatroid { .. }
                | FamilySpec::GraphicMatroid { .. }
        )
    }

    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        match self {
            FamilySpec::Unconstrained { .. } | FamilySpec::BipartitePerfectMatching { .. } => {}
            FamilySpec::UniformMatroid { ground_size, k } => {
                if k > ground_size {
                    out.push(format!("uniform k = {k} exceeds ground size {ground_size}"));
                }
            }
            FamilySpec::PartitionMatroid { parts, quotas } => {
                if parts.len() != quotas.len() {
                    out.push("partition needs one quota per part".into());
                }
                let n = self.ground_size();
                let mut seen = vec![false; n];
                for part in parts {
                    for &e in part {
                        if e >= n {
                            out.push(format!("partition element {e} outside 0..{n}"));
                        } else if seen[e] {
                            out.push(format!("partition element {e} appears twice"));
                        } else {
                            seen[e] = true;
                        }
                    }
                }
                for (p, (part, &g)) in parts.iter().zip(quotas).enumerate() {
                    if g > part.len() {
                        out.push(format!(
                            "quota {g} of part {p} exceeds its size {}",
                            part.len()
                        ));
                    }
                }
            }
            FamilySpec::GraphicMatroid { graph } => {
                out.extend(graph.validate());
                if graph.directed {
                    out.push("graphic matroid needs an undirected graph".into());
                }
            }
            FamilySpec::StPath { graph, s, t } => {
                out.extend(graph.validate());
                if *s >= graph.vertices || *t >= graph.vertices {
                    out.push(format!("terminals ({s},{t}) outside 0..{}", graph.vertices));
                }
                if s == t {
                    out.push("s-t path needs s != t".into());
                }
            }
        }
        out
    }

    /// Rank for matroid families, fixed cardinality of a perfect matching.
    pub fn rank(&self) -> Option<usize> {
        match self {
            FamilySpec::UniformMatroid { k, .. } => Some(*k),
            FamilySpec::PartitionMatroid { quotas, .. } => Some(quotas.iter().sum()),
            FamilySpec::GraphicMatroid { graph } => Some(graphkit::forest_rank(graph)),
            FamilySpec::BipartitePerfectMatching { side } => Some(*side),
            _ => None,
        }
    }
}

fn part_index(parts: &[Vec<usize>], n: usize) -> Vec<usize> {
    let mut of = vec![usize::MAX; n];
    for (p, part) in parts.iter().enumerate() {
        for &e in part {
            if e < n {
                of[e] = p;
            }
        }
    }
    of
}

/// Membership test; `s` must be a subset of the ground set.
pub fn contains(family: &FamilySpec, s: &[usize]) -> bool {
    let set = Subset::new(s.to_vec());
    if set.len() != s.len() || set.iter().any(|e| e >= family.ground_size()) {
        return false;
    }
    let s = set.as_slice();
    match family {
        FamilySpec::Unconstrained { .. } => true,
        FamilySpec::UniformMatroid { k, .. } => s.len() == *k,
        FamilySpec::PartitionMatroid { parts, quotas } => {
            let of = part_index(parts, family.ground_size());
            let mut count = vec![0usize; parts.len()];
            for &e in s {
                count[of[e]] += 1;
            }
            count == *quotas
        }
        FamilySpec::GraphicMatroid { graph } => {
            s.len() == graphkit::forest_rank(graph) && graphkit::is_acyclic(graph, s)
        }
        FamilySpec::StPath { graph, s: src, t } => is_simple_path(graph, *src, *t, s),
        FamilySpec::BipartitePerfectMatching { side } => {
            let p = *side;
            let mut rows = vec![false; p];
            let mut cols = vec![false; p];
            for &e in s {
                let (i, j) = (e / p, e % p);
                if rows[i] || cols[j] {
                    return false;
                }
                rows[i] = true;
                cols[j] = true;
            }
            s.len() == p
        }
    }
}

fn is_simple_path(graph: &Graph, s: usize, t: usize, edges: &[usize]) -> bool {
    if edges.is_empty() {
        return false;
    }
    let mut used = vec![false; edges.len()];
    let mut visited = vec![false; graph.vertices];
    let mut at = s;
    visited[s] = true;
    for _ in 0..edges.len() {
        let mut next = None;
        for (k, &e) in edges.iter().enumerate() {
            if used[k] {
                continue;
            }
            let (u, v) = graph.edges[e];
            let other = if u == at {
                Some(v)
            } else if !graph.directed && v == at {
                Some(u)
            } else {
                None
            };
            if let Some(o) = other {
                if next.is_some() {
                    return false;
                }
                next = Some((k, o));
            }
        }
        let Some((k, o)) = next else { return false };
        if visited[o] {
            return false;
        }
        used[k] = true;
        visited[o] = true;
        at = o;
        if at == t {
            return used.iter().all(|&b| b);
        }
    }
    false
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

struct Collector {
    cap: u64,
    out: Vec<Subset>,
}

impl Collector {
    fn push(&mut self, items: Vec<usize>) -> Result<()> {
        if self.out.len() as u64 >= self.cap {
            return Err(CopicError::EnumerationTooLarge { cap: self.cap });
        }
        self.out.push(Subset::new(items));
        Ok(())
    }
}

fn combinations(
    items: &[usize],
    k: usize,
    f: &mut dyn FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    fn rec(
        items: &[usize],
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> Result<()>,
    ) -> Result<()> {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, f)?;
            cur.pop();
        }
        Ok(())
    }
    rec(items, k, 0, &mut Vec::with_capacity(k), f)
}

/// Every feasible set exactly once, in the binary order of [`Subset`].
/// Fails once more than `cap` sets would be produced.
pub fn enumerate(family: &FamilySpec, cap: u64) -> Result<Vec<Subset>> {
    let mut col = Collector {
        cap,
        out: Vec::new(),
    };
    match family {
        FamilySpec::Unconstrained { ground_size } => {
            let n = *ground_size;
            if n >= 63 || (1u64 << n) > cap {
                return Err(CopicError::EnumerationTooLarge { cap });
            }
            for mask in 0..(1u64 << n) {
                col.out.push(Subset::from_mask(mask));
            }
        }
        FamilySpec::UniformMatroid { ground_size, k } => {
            if binomial(*ground_size, *k) > cap as u128 {
                return Err(CopicError::EnumerationTooLarge { cap });
            }
            let items: Vec<usize> = (0..*ground_size).collect();
            combinations(&items, *k, &mut |c| col.push(c.to_vec()))?;
        }
        FamilySpec::PartitionMatroid { parts, quotas } => {
            let mut per_part: Vec<Vec<Vec<usize>>> = Vec::new();
            for (part, &g) in parts.iter().zip(quotas) {
                let mut choices = Vec::new();
                combinations(part, g, &mut |c| {
                    choices.push(c.to_vec());
                    Ok(())
                })?;
                per_part.push(choices);
            }
            let total = per_part
                .iter()
                .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
            if total > cap as u128 {
                return Err(CopicError::EnumerationTooLarge { cap });
            }
            let mut idx = vec![0usize; per_part.len()];
            if per_part.iter().all(|c| !c.is_empty()) {
                loop {
                    let set: Vec<usize> = idx
                        .iter()
                        .enumerate()
                        .flat_map(|(p, &i)| per_part[p][i].iter().copied())
                        .collect();
                    col.push(set)?;
                    let mut p = 0;
                    while p < idx.len() {
                        idx[p] += 1;
                        if idx[p] < per_part[p].len() {
                            break;
                        }
                        idx[p] = 0;
                        p += 1;
                    }
                    if p == idx.len() {
                        break;
                    }
                }
            }
        }
        FamilySpec::GraphicMatroid { graph } => {
            let rank = graphkit::forest_rank(graph);
            fn rec(
                graph: &Graph,
                rank: usize,
                next: usize,
                uf: &UnionFind,
                cur: &mut Vec<usize>,
                col: &mut Collector,
            ) -> Result<()> {
                if cur.len() == rank {
                    return col.push(cur.clone());
                }
                for e in next..graph.edge_count() {
                    if graph.edge_count() - e < rank - cur.len() {
                        break;
                    }
                    let (u, v) = graph.edges[e];
                    let mut uf2 = uf.clone();
                    if uf2.union(u, v) {
                        cur.push(e);
                        rec(graph, rank, e + 1, &uf2, cur, col)?;
                        cur.pop();
                    }
                }
                Ok(())
            }
            rec(
                graph,
                rank,
                0,
                &UnionFind::new(graph.vertices),
                &mut Vec::new(),
                &mut col,
            )?;
        }
        FamilySpec::StPath { graph, s, t } => {
            let adj = graph.adjacency();
            fn rec(
                adj: &[Vec<(usize, usize)>],
                at: usize,
                t: usize,
                on_path: &mut Vec<bool>,
                cur: &mut Vec<usize>,
                col: &mut Collector,
            ) -> Result<()> {
                if at == t {
                    return col.push(cur.clone());
                }
                for &(e, v) in &adj[at] {
                    if on_path[v] {
                        continue;
                    }
                    on_path[v] = true;
                    cur.push(e);
                    rec(adj, v, t, on_path, cur, col)?;
                    cur.pop();
                    on_path[v] = false;
                }
                Ok(())
            }
            let mut on_path = vec![false; graph.vertices];
            on_path[*s] = true;
            rec(&adj, *s, *t, &mut on_path, &mut Vec::new(), &mut col)?;
        }
        FamilySpec::BipartitePerfectMatching { side } => {
            let p = *side;
            fn rec(
                p: usize,
                row: usize,
                used: &mut Vec<bool>,
                cur: &mut Vec<usize>,
                col: &mut Collector,
            ) -> Result<()> {
                if row == p {
                    return col.push(cur.clone());
                }
                for j in 0..p {
                    if !used[j] {
                        used[j] = true;
                        cur.push(row * p + j);
                        rec(p, row + 1, used, cur, col)?;
                        cur.pop();
                        used[j] = false;
                    }
                }
                Ok(())
            }
            rec(p, 0, &mut vec![false; p], &mut Vec::new(), &mut col)?;
        }
    }
    let mut out = col.out;
    out.sort();
    out.dedup();
    Ok(out)
}

/// Minimizes `Σ_{i∈S} w_i` over the family. Weights must be finite.
///
/// Tie rules: unconstrained families leave zero-weight elements out;
/// cardinality families prefer smaller indices among equal weights;
/// perfect matchings return the lexicographically least permutation.
pub fn lcop_solve(family: &FamilySpec, w: &[Cost]) -> Result<(Subset, Cost)> {
    if w.len() != family.ground_size() {
        return Err(CopicError::Domain(format!(
            "weight vector has length {}, ground size is {}",
            w.len(),
            family.ground_size()
        )));
    }
    if w.iter().any(Cost::is_inf) {
        return Err(CopicError::Domain("linear costs must be finite".into()));
    }
    lcop_solve_avoiding(family, w)?.ok_or_else(|| {
        CopicError::NoSolution(format!("the {} family has no feasible set", family.kind()))
    })
}

/// Like [`lcop_solve`], but `+inf` weights mark forbidden elements.
/// `Ok(None)` when no feasible set avoids them.
pub fn lcop_solve_avoiding(family: &FamilySpec, w: &[Cost]) -> Result<Option<(Subset, Cost)>> {
    let n = family.ground_size();
    if w.len() != n {
        return Err(CopicError::Domain(format!(
            "weight vector has length {}, ground size is {n}",
            w.len()
        )));
    }
    let value = |s: &Subset| -> Cost { s.iter().map(|e| &w[e]).sum() };
    let by_weight =
        |items: &mut Vec<usize>| items.sort_by(|&a, &b| w[a].cmp(&w[b]).then(a.cmp(&b)));
    let chosen = match family {
        FamilySpec::Unconstrained { .. } => Some(Subset::new(
            (0..n).filter(|&i| w[i].is_negative()).collect(),
        )),
        FamilySpec::UniformMatroid { k, .. } => {
            let mut allowed: Vec<usize> = (0..n).filter(|&i| w[i].is_finite()).collect();
            by_weight(&mut allowed);
            (allowed.len() >= *k).then(|| Subset::new(allowed[..*k].to_vec()))
        }
        FamilySpec::PartitionMatroid { parts, quotas } => {
            let mut picked = Vec::new();
            let mut ok = true;
            for (part, &g) in parts.iter().zip(quotas) {
                let mut allowed: Vec<usize> =
                    part.iter().copied().filter(|&i| w[i].is_finite()).collect();
                by_weight(&mut allowed);
                if allowed.len() < g {
                    ok = false;
                    break;
                }
                picked.extend_from_slice(&allowed[..g]);
            }
            ok.then(|| Subset::new(picked))
        }
        FamilySpec::GraphicMatroid { graph } => {
            let forest = graphkit::mst(graph, w);
            (forest.len() == graphkit::forest_rank(graph)).then_some(forest)
        }
        FamilySpec::StPath { graph, s, t } => shortest_st_path(graph, *s, *t, w)?,
        FamilySpec::BipartitePerfectMatching { side } => matching_avoiding(*side, w)?,
    };
    Ok(chosen.map(|s| {
        let v = value(&s);
        (s, v)
    }))
}

fn shortest_st_path(graph: &Graph, s: usize, t: usize, w: &[Cost]) -> Result<Option<Subset>> {
    let negative = w.iter().any(Cost::is_negative);
    if !negative {
        let sp = graphkit::dijkstra(graph, s, w)?;
        return Ok(sp.path_to(t).map(Subset::new));
    }
    if !graph.directed {
        return Err(CopicError::Unsupported(
            "shortest s-t path with negative weights on an undirected graph".into(),
        ));
    }
    // Only the part of the graph lying on some s-t walk matters.
    let usable: Vec<bool> = w.iter().map(Cost::is_finite).collect();
    let from_s = reach(graph, s, &usable, false);
    let to_t = reach(graph, t, &usable, true);
    if !from_s[t] {
        return Ok(None);
    }
    let masked: Vec<Cost> = graph
        .edges
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| {
            if usable[e] && from_s[u] && to_t[v] {
                w[e].clone()
            } else {
                Cost::Inf
            }
        })
        .collect();
    let sp = graphkit::bellman_ford(graph, s, &masked)?;
    Ok(sp.path_to(t).map(Subset::new))
}

fn reach(graph: &Graph, start: usize, usable: &[bool], reverse: bool) -> Vec<bool> {
    let mut seen = vec![false; graph.vertices];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(x) = queue.pop_front() {
        for (e, &(u, v)) in graph.edges.iter().enumerate() {
            if !usable[e] {
                continue;
            }
            let (from, to) = if reverse { (v, u) } else { (u, v) };
            let mut step = |a: usize, b: usize| {
                if a == x && !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            };
            step(from, to);
            if !graph.directed {
                step(to, from);
            }
        }
    }
    seen
}

fn matching_avoiding(p: usize, w: &[Cost]) -> Result<Option<Subset>> {
    let finite_abs: crate::cost::Rational = w
        .iter()
        .filter_map(Cost::finite)
        .map(num_traits::Signed::abs)
        .sum();
    // Any matching through a forbidden cell costs more than every clean one.
    let big =
        Cost::Finite(finite_abs * crate::cost::Rational::from_integer(2.into())) + Cost::int(1);
    let m = Matrix::from_fn(p, p, |i, j| {
        if w[i * p + j].is_inf() {
            big.clone()
        } else {
            w[i * p + j].clone()
        }
    });
    let (perm, _) = graphkit::hungarian(&m)?;
    if perm.iter().enumerate().any(|(i, &j)| w[i * p + j].is_inf()) {
        return Ok(None);
    }
    Ok(Some(Subset::new(
        perm.iter().enumerate().map(|(i, &j)| i * p + j).collect(),
    )))
}

/// Independence oracle of a matroid.
pub trait MatroidOracle: Send + Sync {
    fn ground_size(&self) -> usize;
    fn rank(&self) -> usize;
    fn is_independent(&self, set: &[usize]) -> bool;
}

#[derive(Clone, Debug)]
pub struct UniformOracle {
    pub ground_size: usize,
    pub k: usize,
}

impl MatroidOracle for UniformOracle {
    fn ground_size(&self) -> usize {
        self.ground_size
    }
    fn rank(&self) -> usize {
        self.k
    }
    fn is_independent(&self, set: &[usize]) -> bool {
        set.len() <= self.k
    }
}

#[derive(Clone, Debug)]
pub struct PartitionOracle {
    part_of: Vec<usize>,
    quotas: Vec<usize>,
}

impl MatroidOracle for PartitionOracle {
    fn ground_size(&self) -> usize {
        self.part_of.len()
    }
    fn rank(&self) -> usize {
        self.quotas.iter().sum()
    }
    fn is_independent(&self, set: &[usize]) -> bool {
        let mut count = vec![0usize; self.quotas.len()];
        for &e in set {
            let p = self.part_of[e];
            count[p] += 1;
            if count[p] > self.quotas[p] {
                return false;
            }
        }
        true
    }
}

#[derive(Clone, Debug)]
pub struct GraphicOracle {
    graph: Graph,
    rank: usize,
}

impl MatroidOracle for GraphicOracle {
    fn ground_size(&self) -> usize {
        self.graph.edge_count()
    }
    fn rank(&self) -> usize {
        self.rank
    }
    fn is_independent(&self, set: &[usize]) -> bool {
        graphkit::is_acyclic(&self.graph, set)
    }
}

/// Matroid whose bases are exactly the family's feasible sets.
pub fn as_matroid_oracle(family: &FamilySpec) -> Result<Box<dyn MatroidOracle>> {
    match family {
        FamilySpec::UniformMatroid { ground_size, k } => Ok(Box::new(UniformOracle {
            ground_size: *ground_size,
            k: *k,
        })),
        FamilySpec::PartitionMatroid { parts, quotas } => Ok(Box::new(PartitionOracle {
            part_of: part_index(parts, family.ground_size()),
            quotas: quotas.clone(),
        })),
        FamilySpec::GraphicMatroid { graph } => Ok(Box::new(GraphicOracle {
            graph: graph.clone(),
            rank: graphkit::forest_rank(graph),
        })),
        other => Err(CopicError::Unsupported(format!(
            "the {} family is not a matroid",
            other.kind()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Cost> {
        v.iter().map(|&x| Cost::int(x)).collect()
    }

    fn sets(v: &[&[usize]]) -> Vec<Subset> {
        v.iter().map(|s| Subset::new(s.to_vec())).collect()
    }

    #[test]
    fn membership_examples() {
        assert!(contains(
            &FamilySpec::UniformMatroid {
                ground_size: 4,
                k: 2
            },
            &[0, 3]
        ));
        let k3 = FamilySpec::GraphicMatroid {
            graph: Graph::complete(3),
        };
        assert!(contains(&k3, &[0, 1]));
        assert!(!contains(&k3, &[0]));
        let two_cycle =
            FamilySpec::st_path(Graph::directed(2, vec![(0, 1), (1, 0)]), 0, 1).unwrap();
        assert!(!contains(&two_cycle, &[0, 1]));
        assert!(contains(&two_cycle, &[0]));
        let pm = FamilySpec::BipartitePerfectMatching { side: 2 };
        assert!(contains(&pm, &[1, 2]));
        assert!(!contains(&pm, &[0, 1]));
    }

    #[test]
    fn st_path_rejects_equal_terminals() {
        assert!(FamilySpec::st_path(Graph::directed(2, vec![(0, 1)]), 1, 1).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let un = enumerate(
            &FamilySpec::Unconstrained { ground_size: 2 },
            DEFAULT_ENUM_CAP,
        )
        .unwrap();
        assert_eq!(un, sets(&[&[], &[0], &[1], &[0, 1]]));
        let uni = enumerate(
            &FamilySpec::UniformMatroid {
                ground_size: 3,
                k: 2,
            },
            DEFAULT_ENUM_CAP,
        )
        .unwrap();
        assert_eq!(uni, sets(&[&[0, 1], &[0, 2], &[1, 2]]));
        let k4 = enumerate(
            &FamilySpec::GraphicMatroid {
                graph: Graph::complete(4),
            },
            DEFAULT_ENUM_CAP,
        )
        .unwrap();
        assert_eq!(k4.len(), 16);
        let pm = enumerate(
            &FamilySpec::BipartitePerfectMatching { side: 3 },
            DEFAULT_ENUM_CAP,
        )
        .unwrap();
        assert_eq!(pm.len(), 6);
    }

    #[test]
    fn enumeration_cap() {
        let err = enumerate(&FamilySpec::Unconstrained { ground_size: 10 }, 1000).unwrap_err();
        assert_eq!(err, CopicError::EnumerationTooLarge { cap: 1000 });
        let err = enumerate(
            &FamilySpec::GraphicMatroid {
                graph: Graph::complete(5),
            },
            100,
        )
        .unwrap_err();
        assert_eq!(err, CopicError::EnumerationTooLarge { cap: 100 });
    }

    #[test]
    fn lcop_examples() {
        let (s, v) = lcop_solve(
            &FamilySpec::Unconstrained { ground_size: 3 },
            &ints(&[1, -2, 0]),
        )
        .unwrap();
        assert_eq!((s, v), (Subset::from([1]), Cost::int(-2)));
        let (s, v) = lcop_solve(
            &FamilySpec::UniformMatroid {
                ground_size: 3,
                k: 2,
            },
            &ints(&[5, 1, 3]),
        )
        .unwrap();
        assert_eq!((s, v), (Subset::from([1, 2]), Cost::int(4)));
        let (s, v) = lcop_solve(
            &FamilySpec::GraphicMatroid {
                graph: Graph::complete(3),
            },
            &ints(&[1, 2, 3]),
        )
        .unwrap();
        assert_eq!((s, v), (Subset::from([0, 1]), Cost::int(3)));
    }

    #[test]
    fn lcop_path_errors() {
        let g = Graph::directed(3, vec![(0, 1), (1, 2), (2, 1)]);
        let fam = FamilySpec::st_path(g, 0, 2).unwrap();
        assert!(matches!(
            lcop_solve(&fam, &ints(&[1, -3, 1])),
            Err(CopicError::NegativeCycle { .. })
        ));
        let und = FamilySpec::st_path(Graph::undirected(2, vec![(0, 1)]), 0, 1).unwrap();
        assert!(matches!(
            lcop_solve(&und, &ints(&[-1])),
            Err(CopicError::Unsupported(_))
        ));
        let disconnected = FamilySpec::st_path(Graph::directed(2, vec![(1, 0)]), 0, 1).unwrap();
        assert!(matches!(
            lcop_solve(&disconnected, &ints(&[1])),
            Err(CopicError::NoSolution(_))
        ));
    }

    #[test]
    fn negative_cycle_off_the_route_is_ignored() {
        // 2 <-> 3 is a negative cycle that no 0-1 walk can use.
        let g = Graph::directed(4, vec![(0, 1), (2, 3), (3, 2)]);
        let fam = FamilySpec::st_path(g, 0, 1).unwrap();
        let (s, v) = lcop_solve(&fam, &ints(&[2, -5, 1])).unwrap();
        assert_eq!((s, v), (Subset::from([0]), Cost::int(2)));
    }

    #[test]
    fn avoiding_forbidden_elements() {
        let mut w = ints(&[1, 2, 3]);
        w[0] = Cost::Inf;
        let k3 = FamilySpec::GraphicMatroid {
            graph: Graph::complete(3),
        };
        assert_eq!(
            lcop_solve_avoiding(&k3, &w).unwrap().unwrap().0,
            Subset::from([1, 2])
        );
        w[1] = Cost::Inf;
        assert_eq!(lcop_solve_avoiding(&k3, &w).unwrap(), None);
        let pm = FamilySpec::BipartitePerfectMatching { side: 2 };
        let w = vec![Cost::Inf, Cost::int(5), Cost::int(5), Cost::int(0)];
        assert_eq!(
            lcop_solve_avoiding(&pm, &w).unwrap().unwrap().0,
            Subset::from([1, 2])
        );
    }

    #[test]
    fn oracle_examples() {
        let u = as_matroid_oracle(&FamilySpec::UniformMatroid {
            ground_size: 4,
            k: 2,
        })
        .unwrap();
        assert!(!u.is_independent(&[0, 1, 2]));
        let g = as_matroid_oracle(&FamilySpec::GraphicMatroid {
            graph: Graph::complete(3),
        })
        .unwrap();
        assert!(g.is_independent(&[0, 1]));
        assert!(!g.is_independent(&[0, 1, 2]));
        let p = as_matroid_oracle(&FamilySpec::PartitionMatroid {
            parts: vec![vec![0, 1], vec![2]],
            quotas: vec![1, 1],
        })
        .unwrap();
        assert!(!p.is_independent(&[0, 1]));
        assert!(as_matroid_oracle(&FamilySpec::Unconstrained { ground_size: 2 }).is_err());
    }
}
