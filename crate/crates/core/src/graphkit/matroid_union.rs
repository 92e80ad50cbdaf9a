//! Minimum-weight pair of disjoint bases via greedy matroid union.
//!
//! Elements are scanned by ascending weight. An element is kept iff the
//! current set `X = X1 ⊎ X2` plus the element is still independent in
//! `M1 ∨ M2`, decided by a shortest augmenting path in the exchange digraph.

use std::collections::VecDeque;

use crate::cost::Cost;
use crate::error::{CopicError, Result};
use crate::families::MatroidOracle;
use crate::instance::Subset;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjointBasePair {
    pub b1: Subset,
    pub b2: Subset,
    pub total_weight: Cost,
}

struct Partition<'a> {
    oracles: [&'a dyn MatroidOracle; 2],
    sides: [Vec<usize>; 2],
    owner: Vec<Option<usize>>,
}

impl Partition<'_> {
    fn independent_with(&self, side: usize, add: usize, remove: Option<usize>) -> bool {
        let mut set: Vec<usize> = self.sides[side]
            .iter()
            .copied()
            .filter(|&x| Some(x) != remove)
            .collect();
        set.push(add);
        self.oracles[side].is_independent(&set)
    }

    /// Tries to insert `e`, rerouting elements between the sides along a
    /// shortest exchange path. Returns false (and changes nothing) if
    /// `X + e` is dependent in the union.
    fn augment(&mut self, e: usize) -> bool {
        let n = self.owner.len();
        let mut parent: Vec<Option<usize>> = vec![None; n];
        let mut visited = vec![false; n];
        let mut queue = VecDeque::new();
        visited[e] = true;
        queue.push_back(e);
        let mut terminal = None;
        'bfs: while let Some(u) = queue.pop_front() {
            for side in 0..2 {
                if self.owner[u] == Some(side) {
                    continue;
                }
                if self.independent_with(side, u, None) {
                    terminal = Some((u, side));
                    break 'bfs;
                }
                let members = self.sides[side].clone();
                for y in members {
                    if !visited[y] && self.independent_with(side, u, Some(y)) {
                        visited[y] = true;
                        parent[y] = Some(u);
                        queue.push_back(y);
                    }
                }
            }
        }
        let Some((last, last_side)) = terminal else {
            return false;
        };
        let mut path = vec![last];
        while let Some(p) = parent[*path.last().expect("nonempty")] {
            path.push(p);
        }
        path.reverse();
        // path[0] = e; each path[t] (t ≥ 1) hands its slot to path[t-1].
        let old_owner: Vec<Option<usize>> = path.iter().map(|&x| self.owner[x]).collect();
        for t in 1..path.len() {
            let side = old_owner[t].expect("interior path elements are placed");
            let slot = self.sides[side]
                .iter()
                .position(|&x| x == path[t])
                .expect("member");
            self.sides[side][slot] = path[t - 1];
            self.owner[path[t - 1]] = Some(side);
        }
        self.sides[last_side].push(last);
        self.owner[last] = Some(last_side);
        debug_assert!(self.oracles[0].is_independent(&self.sides[0]));
        debug_assert!(self.oracles[1].is_independent(&self.sides[1]));
        true
    }
}

/// Among all pairs `(B1, B2)` of disjoint bases of `m1` and `m2`, one of
/// minimum `w(B1) + w(B2)`; `None` when no disjoint pair exists.
pub fn min_weight_disjoint_bases(
    m1: &dyn MatroidOracle,
    m2: &dyn MatroidOracle,
    w: &[Cost],
) -> Result<Option<DisjointBasePair>> {
    let n = m1.ground_size();
    if m2.ground_size() != n || w.len() != n {
        return Err(CopicError::Domain(
            "matroids and weights must share one ground set".into(),
        ));
    }
    if w.iter().any(Cost::is_inf) {
        return Err(CopicError::Domain(
            "disjoint-base weights must be finite".into(),
        ));
    }
    let target = m1.rank() + m2.rank();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| w[a].cmp(&w[b]).then(a.cmp(&b)));
    let mut part = Partition {
        oracles: [m1, m2],
        sides: [Vec::new(), Vec::new()],
        owner: vec![None; n],
    };
    let mut size = 0;
    for e in order {
        if size == target {
            break;
        }
        if part.augment(e) {
            size += 1;
        }
    }
    if size < target {
        return Ok(None);
    }
    let [s1, s2] = part.sides;
    let total_weight = s1.iter().chain(s2.iter()).map(|&e| &w[e]).sum();
    Ok(Some(DisjointBasePair {
        b1: Subset::new(s1),
        b2: Subset::new(s2),
        total_weight,
    }))
}
