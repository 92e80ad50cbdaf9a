//! Integral minimum-cost flow by successive shortest augmenting paths.
//!
//! Potentials start from a Bellman-Ford pass so negative arc costs are
//! allowed as long as no negative-cost cycle has positive capacity.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::cost::Cost;
use crate::error::{CopicError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowArc {
    pub tail: usize,
    pub head: usize,
    pub capacity: i64,
    pub cost: Cost,
    /// Caller-defined tag used to map arcs back to problem elements.
    pub label: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FlowNetwork {
    pub vertices: usize,
    pub arcs: Vec<FlowArc>,
    /// Positive entries are sources, negative entries sinks; must sum to zero.
    pub supplies: Vec<i64>,
}

impl FlowNetwork {
    pub fn new(vertices: usize) -> Self {
        FlowNetwork {
            vertices,
            arcs: Vec::new(),
            supplies: vec![0; vertices],
        }
    }

    pub fn add_arc(
        &mut self,
        tail: usize,
        head: usize,
        capacity: i64,
        cost: Cost,
        label: usize,
    ) -> usize {
        self.arcs.push(FlowArc {
            tail,
            head,
            capacity,
            cost,
            label,
        });
        self.arcs.len() - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowResult {
    /// Flow on each arc of the input network, by arc index.
    pub flow: Vec<i64>,
    pub cost: Cost,
}

struct Residual {
    head: Vec<usize>,
    cap: Vec<i64>,
    cost: Vec<Cost>,
    adj: Vec<Vec<usize>>,
}

impl Residual {
    fn add(&mut self, u: usize, v: usize, cap: i64, cost: Cost) -> usize {
        let id = self.head.len();
        self.head.push(v);
        self.cap.push(cap);
        self.cost.push(cost.clone());
        self.adj[u].push(id);
        self.head.push(u);
        self.cap.push(0);
        self.cost.push(-cost);
        self.adj[v].push(id + 1);
        id
    }
}

pub fn min_cost_flow(net: &FlowNetwork) -> Result<FlowResult> {
    let n = net.vertices;
    if net.supplies.len() != n {
        return Err(CopicError::Domain(
            "supplies length must equal vertex count".into(),
        ));
    }
    if net.supplies.iter().sum::<i64>() != 0 {
        return Err(CopicError::Infeasible(
            "supplies do not balance to zero".into(),
        ));
    }
    for (k, arc) in net.arcs.iter().enumerate() {
        if arc.tail >= n || arc.head >= n {
            return Err(CopicError::Domain(format!(
                "arc {k} has an endpoint outside the network"
            )));
        }
        if arc.capacity < 0 {
            return Err(CopicError::Domain(format!("arc {k} has negative capacity")));
        }
        if !arc.cost.is_finite() {
            return Err(CopicError::Domain(format!("arc {k} has infinite cost")));
        }
    }

    let source = n;
    let sink = n + 1;
    let total = n + 2;
    let mut res = Residual {
        head: Vec::new(),
        cap: Vec::new(),
        cost: Vec::new(),
        adj: vec![Vec::new(); total],
    };
    let arc_ids: Vec<usize> = net
        .arcs
        .iter()
        .map(|a| res.add(a.tail, a.head, a.capacity, a.cost.clone()))
        .collect();
    let mut demand = 0i64;
    for (v, &b) in net.supplies.iter().enumerate() {
        if b > 0 {
            res.add(source, v, b, Cost::zero());
            demand += b;
        } else if b < 0 {
            res.add(v, sink, -b, Cost::zero());
        }
    }

    let mut potential = initial_potentials(&res, total)?;

    let mut sent = 0i64;
    while sent < demand {
        let (dist, pred) = reduced_dijkstra(&res, &potential, source);
        let Some(_) = &dist[sink] else {
            return Err(CopicError::Infeasible(format!(
                "only {sent} of {demand} supply units can be routed"
            )));
        };
        let reach_max = dist
            .iter()
            .flatten()
            .max()
            .cloned()
            .unwrap_or_else(Cost::zero);
        for v in 0..total {
            let shift = dist[v].clone().unwrap_or_else(|| reach_max.clone());
            potential[v] = &potential[v] + &shift;
        }
        let mut bottleneck = demand - sent;
        let mut v = sink;
        while v != source {
            let id = pred[v].expect("sink reachable");
            bottleneck = bottleneck.min(res.cap[id]);
            v = res.head[id ^ 1];
        }
        let mut v = sink;
        while v != source {
            let id = pred[v].expect("sink reachable");
            res.cap[id] -= bottleneck;
            res.cap[id ^ 1] += bottleneck;
            v = res.head[id ^ 1];
        }
        sent += bottleneck;
    }

    let flow: Vec<i64> = arc_ids.iter().map(|&id| res.cap[id ^ 1]).collect();
    let cost = net
        .arcs
        .iter()
        .zip(&flow)
        .filter(|(_, &f)| f != 0)
        .map(|(a, &f)| a.cost.scale(&crate::cost::Rational::from_integer(f.into())))
        .sum();
    Ok(FlowResult { flow, cost })
}

fn initial_potentials(res: &Residual, total: usize) -> Result<Vec<Cost>> {
    // Every vertex starts at distance 0, as if hung from a virtual root.
    let mut dist = vec![Cost::zero(); total];
    let mut pred: Vec<Option<usize>> = vec![None; total];
    let mut last = None;
    for _ in 0..=total {
        last = None;
        for u in 0..total {
            for &id in &res.adj[u] {
                if res.cap[id] <= 0 {
                    continue;
                }
                let v = res.head[id];
                let cand = &dist[u] + &res.cost[id];
                if cand < dist[v] {
                    dist[v] = cand;
                    pred[v] = Some(id);
                    last = Some(v);
                }
            }
        }
        if last.is_none() {
            return Ok(dist);
        }
    }
    let mut v = last.expect("relaxation in final round");
    for _ in 0..total {
        v = res.head[pred[v].expect("relaxed vertex has a predecessor") ^ 1];
    }
    let start = v;
    let mut cycle = vec![start];
    let mut x = res.head[pred[start].expect("cycle") ^ 1];
    while x != start {
        cycle.push(x);
        x = res.head[pred[x].expect("cycle") ^ 1];
    }
    cycle.reverse();
    Err(CopicError::NegativeCycle { cycle })
}

fn reduced_dijkstra(
    res: &Residual,
    potential: &[Cost],
    source: usize,
) -> (Vec<Option<Cost>>, Vec<Option<usize>>) {
    let total = potential.len();
    let mut dist: Vec<Option<Cost>> = vec![None; total];
    let mut pred: Vec<Option<usize>> = vec![None; total];
    let mut done = vec![false; total];
    let mut heap = BinaryHeap::new();
    dist[source] = Some(Cost::zero());
    heap.push(Reverse((Cost::zero(), source)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        for &id in &res.adj[u] {
            if res.cap[id] <= 0 {
                continue;
            }
            let v = res.head[id];
            if done[v] {
                continue;
            }
            let reduced = &(&res.cost[id] + &potential[u]) - &potential[v];
            debug_assert!(
                !reduced.is_negative(),
                "potentials keep reduced costs nonnegative"
            );
            let cand = &d + &reduced;
            if dist[v].as_ref().is_none_or(|dv| cand < *dv) {
                dist[v] = Some(cand.clone());
                pred[v] = Some(id);
                heap.push(Reverse((cand, v)));
            }
        }
    }
    (dist, pred)
}
