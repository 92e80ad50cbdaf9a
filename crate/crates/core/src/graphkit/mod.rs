//! Algorithmic kernels the solvers reduce to.

mod flow;
mod hungarian;
mod matroid_union;
mod shortest;
mod spanning;
mod union_find;

pub use flow::{min_cost_flow, FlowArc, FlowNetwork, FlowResult};
pub use hungarian::{hungarian, hungarian_value};
pub use matroid_union::{min_weight_disjoint_bases, DisjointBasePair};
pub use shortest::{bellman_ford, dijkstra, ShortestPaths};
pub use spanning::{forest_rank, is_acyclic, mst};
pub use union_find::UnionFind;

/// An edge-indexed multigraph. Edge `e` joins `edges[e].0` and `edges[e].1`;
/// in a directed graph it is the arc `edges[e].0 → edges[e].1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub directed: bool,
}

impl Graph {
    pub fn undirected(vertices: usize, edges: Vec<(usize, usize)>) -> Self {
        Graph {
            vertices,
            edges,
            directed: false,
        }
    }

    pub fn directed(vertices: usize, edges: Vec<(usize, usize)>) -> Self {
        Graph {
            vertices,
            edges,
            directed: true,
        }
    }

    /// `K_v` with edges listed as `(0,1), (0,2), …, (v-2,v-1)`.
    pub fn complete(vertices: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..vertices {
            for v in u + 1..vertices {
                edges.push((u, v));
            }
        }
        Graph::undirected(vertices, edges)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Recognises a simple undirected complete graph on its vertex set.
    pub fn is_complete_simple(&self) -> bool {
        if self.directed {
            return false;
        }
        let v = self.vertices;
        if self.edges.len() != v * v.saturating_sub(1) / 2 {
            return false;
        }
        let mut seen = vec![false; v * v];
        for &(a, b) in &self.edges {
            if a == b || a >= v || b >= v {
                return false;
            }
            let (lo, hi) = (a.min(b), a.max(b));
            if seen[lo * v + hi] {
                return false;
            }
            seen[lo * v + hi] = true;
        }
        true
    }

    /// Outgoing `(edge, neighbour)` pairs; undirected edges appear in both directions.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((e, v));
            if !self.directed && u != v {
                adj[v].push((e, u));
            }
        }
        adj
    }

    pub fn validate(&self) -> Vec<String> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &(u, v))| u >= self.vertices || v >= self.vertices)
            .map(|(e, &(u, v))| {
                format!(
                    "edge {e} = ({u},{v}) has an endpoint outside 0..{}",
                    self.vertices
                )
            })
            .collect()
    }
}
