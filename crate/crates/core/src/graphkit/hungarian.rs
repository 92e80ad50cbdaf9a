//! Minimum-cost perfect matching on a square cost matrix.

use num_traits::Zero;

use crate::cost::{Cost, Rational};
use crate::error::{CopicError, Result};
use crate::instance::Matrix;

/// Shortest-augmenting-path Hungarian method with row/column potentials.
/// Returns `assign[row] = col` and the optimal value.
fn solve(costs: &[Vec<Rational>]) -> (Vec<usize>, Rational) {
    let n = costs.len();
    if n == 0 {
        return (Vec::new(), Rational::zero());
    }
    // 1-based bookkeeping; column 0 is a virtual column.
    let mut u = vec![Rational::zero(); n + 1];
    let mut v = vec![Rational::zero(); n + 1];
    let mut matched_row = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for row in 1..=n {
        matched_row[0] = row;
        let mut col0 = 0usize;
        let mut minv: Vec<Option<Rational>> = vec![None; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[col0] = true;
            let r0 = matched_row[col0];
            let mut delta: Option<Rational> = None;
            let mut col1 = 0usize;
            for col in 1..=n {
                if used[col] {
                    continue;
                }
                let cur = &costs[r0 - 1][col - 1] - &u[r0] - &v[col];
                if minv[col].as_ref().is_none_or(|m| cur < *m) {
                    minv[col] = Some(cur);
                    way[col] = col0;
                }
                let m = minv[col].as_ref().expect("set above");
                if delta.as_ref().is_none_or(|d| m < d) {
                    delta = Some(m.clone());
                    col1 = col;
                }
            }
            let delta = delta.expect("an unused column remains");
            for col in 0..=n {
                if used[col] {
                    u[matched_row[col]] += &delta;
                    v[col] -= &delta;
                } else if let Some(m) = minv[col].as_mut() {
                    *m -= &delta;
                }
            }
            col0 = col1;
            if matched_row[col0] == 0 {
                break;
            }
        }
        loop {
            let col1 = way[col0];
            matched_row[col0] = matched_row[col1];
            col0 = col1;
            if col0 == 0 {
                break;
            }
        }
    }
    let mut assign = vec![0usize; n];
    for col in 1..=n {
        assign[matched_row[col] - 1] = col - 1;
    }
    let value = assign
        .iter()
        .enumerate()
        .map(|(r, &c)| costs[r][c].clone())
        .sum();
    (assign, value)
}

fn finite_rows(costs: &Matrix) -> Result<Vec<Vec<Rational>>> {
    if costs.rows() != costs.cols() {
        return Err(CopicError::Domain(format!(
            "assignment needs a square matrix, got {}x{}",
            costs.rows(),
            costs.cols()
        )));
    }
    (0..costs.rows())
        .map(|i| {
            costs
                .row(i)
                .iter()
                .map(|c| {
                    c.finite()
                        .cloned()
                        .ok_or_else(|| CopicError::Domain("assignment costs must be finite".into()))
                })
                .collect()
        })
        .collect()
}

pub fn hungarian_value(costs: &Matrix) -> Result<Cost> {
    Ok(Cost::Finite(solve(&finite_rows(costs)?).1))
}

/// Optimal assignment as a permutation (`perm[row] = col`). Among optimal
/// permutations the lexicographically least one is returned.
pub fn hungarian(costs: &Matrix) -> Result<(Vec<usize>, Cost)> {
    let rows = finite_rows(costs)?;
    let n = rows.len();
    let (_, best) = solve(&rows);
    let mut perm = Vec::with_capacity(n);
    let mut free: Vec<usize> = (0..n).collect();
    let mut fixed = Rational::zero();
    for r in 0..n {
        let mut chosen = None;
        for (k, &col) in free.iter().enumerate() {
            let rest_cols: Vec<usize> = free.iter().copied().filter(|&c| c != col).collect();
            let sub: Vec<Vec<Rational>> = (r + 1..n)
                .map(|i| rest_cols.iter().map(|&c| rows[i][c].clone()).collect())
                .collect();
            let total = &fixed + &rows[r][col] + solve(&sub).1;
            if total == best {
                chosen = Some(k);
                break;
            }
        }
        let k = chosen.expect("some column extends an optimal assignment");
        let col = free.remove(k);
        fixed += &rows[r][col];
        perm.push(col);
    }
    Ok((perm, Cost::Finite(best)))
}
