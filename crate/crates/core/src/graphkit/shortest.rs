use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::Graph;
use crate::cost::Cost;
use crate::error::{CopicError, Result};

/// Single-source shortest path tree. `pred[v]` is the tree edge entering `v`
/// together with the vertex it comes from.
#[derive(Clone, Debug)]
pub struct ShortestPaths {
    pub source: usize,
    pub dist: Vec<Option<Cost>>,
    pub pred: Vec<Option<(usize, usize)>>,
}

impl ShortestPaths {
    /// Edge indices of the tree path from the source to `target`, in walking order.
    pub fn path_to(&self, target: usize) -> Option<Vec<usize>> {
        self.dist[target].as_ref()?;
        let mut edges = Vec::new();
        let mut v = target;
        while v != self.source {
            let (e, from) = self.pred[v]?;
            edges.push(e);
            v = from;
            if edges.len() > self.dist.len() {
                return None;
            }
        }
        edges.reverse();
        Some(edges)
    }
}

fn arcs(graph: &Graph) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::with_capacity(graph.edge_count() * 2);
    for (e, &(u, v)) in graph.edges.iter().enumerate() {
        out.push((e, u, v));
        if !graph.directed && u != v {
            out.push((e, v, u));
        }
    }
    out
}

/// Bellman-Ford over finite-weight edges. A negative cycle reachable from
/// `source` is reported with the vertices along it.
pub fn bellman_ford(graph: &Graph, source: usize, w: &[Cost]) -> Result<ShortestPaths> {
    let n = graph.vertices;
    let arcs: Vec<_> = arcs(graph)
        .into_iter()
        .filter(|&(e, _, _)| w[e].is_finite())
        .collect();
    let mut dist: Vec<Option<Cost>> = vec![None; n];
    let mut pred: Vec<Option<(usize, usize)>> = vec![None; n];
    dist[source] = Some(Cost::zero());
    let mut last_relaxed = None;
    for _round in 0..n {
        last_relaxed = None;
        for &(e, u, v) in &arcs {
            let Some(du) = &dist[u] else { continue };
            let cand = du + &w[e];
            if dist[v].as_ref().is_none_or(|dv| cand < *dv) {
                dist[v] = Some(cand);
                pred[v] = Some((e, u));
                last_relaxed = Some(v);
            }
        }
        if last_relaxed.is_none() {
            break;
        }
    }
    if let Some(mut v) = last_relaxed {
        for _ in 0..n {
            v = pred[v].expect("relaxed vertex has a predecessor").1;
        }
        let start = v;
        let mut cycle = vec![start];
        let mut x = pred[start].expect("cycle vertex has a predecessor").1;
        while x != start {
            cycle.push(x);
            x = pred[x].expect("cycle vertex has a predecessor").1;
        }
        cycle.reverse();
        return Err(CopicError::NegativeCycle { cycle });
    }
    Ok(ShortestPaths { source, dist, pred })
}

/// Dijkstra for nonnegative weights; `+inf` edges are skipped.
pub fn dijkstra(graph: &Graph, source: usize, w: &[Cost]) -> Result<ShortestPaths> {
    if w.iter().any(Cost::is_negative) {
        return Err(CopicError::Precondition(
            "dijkstra requires nonnegative weights".into(),
        ));
    }
    let n = graph.vertices;
    let adj = graph.adjacency();
    let mut dist: Vec<Option<Cost>> = vec![None; n];
    let mut pred: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[source] = Some(Cost::zero());
    heap.push(Reverse((Cost::zero(), source)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        for &(e, v) in &adj[u] {
            if !w[e].is_finite() || done[v] {
                continue;
            }
            let cand = &d + &w[e];
            if dist[v].as_ref().is_none_or(|dv| cand < *dv) {
                dist[v] = Some(cand.clone());
                pred[v] = Some((e, u));
                heap.push(Reverse((cand, v)));
            }
        }
    }
    Ok(ShortestPaths { source, dist, pred })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_distance() {
        let g = Graph::directed(3, vec![(0, 1), (1, 2)]);
        let w = vec![Cost::int(1), Cost::int(1)];
        let sp = bellman_ford(&g, 0, &w).unwrap();
        assert_eq!(sp.dist[2], Some(Cost::int(2)));
        assert_eq!(sp.path_to(2), Some(vec![0, 1]));
        let sp = dijkstra(&g, 0, &w).unwrap();
        assert_eq!(sp.dist[2], Some(Cost::int(2)));
    }

    #[test]
    fn negative_two_cycle() {
        let g = Graph::directed(2, vec![(0, 1), (1, 0)]);
        let w = vec![Cost::int(1), Cost::int(-2)];
        match bellman_ford(&g, 0, &w) {
            Err(CopicError::NegativeCycle { cycle }) => {
                let mut c = cycle.clone();
                c.sort();
                assert_eq!(c, vec![0, 1]);
            }
            other => panic!("expected negative cycle, got {other:?}"),
        }
    }

    #[test]
    fn unreachable_has_no_distance() {
        let g = Graph::directed(3, vec![(0, 1)]);
        let sp = dijkstra(&g, 0, &[Cost::int(4)]).unwrap();
        assert_eq!(sp.dist[2], None);
        assert_eq!(sp.path_to(2), None);
    }
}
