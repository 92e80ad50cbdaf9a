use super::{Graph, UnionFind};
use crate::cost::Cost;
use crate::instance::Subset;

/// Whether the given edges of `graph` form a forest (loops count as cycles).
pub fn is_acyclic(graph: &Graph, edges: &[usize]) -> bool {
    let mut uf = UnionFind::new(graph.vertices);
    edges.iter().all(|&e| {
        let (u, v) = graph.edges[e];
        uf.union(u, v)
    })
}

/// Size of a spanning forest: vertices minus connected components.
pub fn forest_rank(graph: &Graph) -> usize {
    let mut uf = UnionFind::new(graph.vertices);
    graph.edges.iter().filter(|&&(u, v)| uf.union(u, v)).count()
}

/// Minimum spanning forest by Kruskal; equal weights are taken in edge-index order.
/// Edges weighted `+inf` are never used.
pub fn mst(graph: &Graph, w: &[Cost]) -> Subset {
    let mut order: Vec<usize> = (0..graph.edge_count())
        .filter(|&e| w[e].is_finite())
        .collect();
    order.sort_by(|&a, &b| w[a].cmp(&w[b]).then(a.cmp(&b)));
    let mut uf = UnionFind::new(graph.vertices);
    let chosen = order
        .into_iter()
        .filter(|&e| {
            let (u, v) = graph.edges[e];
            uf.union(u, v)
        })
        .collect();
    Subset::new(chosen)
}
