//! Exact Gaussian elimination over the rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::cost::Rational;

/// A linear system kept in reduced row echelon form and grown one
/// equation at a time, so the first inconsistent equation can be reported
/// together with the combination of earlier equations that contradicts it.
#[derive(Clone, Debug)]
pub struct IncrementalSystem {
    vars: usize,
    rows: Vec<Row>,
}

#[derive(Clone, Debug)]
struct Row {
    pivot: usize,
    coeffs: Vec<Rational>,
    rhs: Rational,
    combo: BTreeMap<usize, Rational>,
}

/// `Σ λ_t·(equation t)` has an all-zero left side but right side `residual ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inconsistency {
    /// `(tag, λ_t)` pairs, by ascending tag.
    pub combination: Vec<(usize, Rational)>,
    pub residual: Rational,
}

fn axpy(
    target: &mut BTreeMap<usize, Rational>,
    factor: &Rational,
    source: &BTreeMap<usize, Rational>,
) {
    for (k, v) in source {
        let entry = target.entry(*k).or_insert_with(Rational::zero);
        *entry -= factor * v;
        if entry.is_zero() {
            target.remove(k);
        }
    }
}

impl IncrementalSystem {
    pub fn new(vars: usize) -> Self {
        IncrementalSystem {
            vars,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `coeffs · x = rhs`, tagged for witness reporting.
    pub fn push(
        &mut self,
        tag: usize,
        mut coeffs: Vec<Rational>,
        mut rhs: Rational,
    ) -> Result<(), Inconsistency> {
        assert_eq!(coeffs.len(), self.vars, "equation width");
        let mut combo = BTreeMap::from([(tag, Rational::one())]);
        for row in &self.rows {
            let f = coeffs[row.pivot].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in coeffs.iter_mut().zip(&row.coeffs) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            rhs -= &f * &row.rhs;
            axpy(&mut combo, &f, &row.combo);
        }
        let Some(pivot) = coeffs.iter().position(|x| !x.is_zero()) else {
            if rhs.is_zero() {
                return Ok(());
            }
            return Err(Inconsistency {
                combination: combo.into_iter().collect(),
                residual: rhs,
            });
        };
        let inv = coeffs[pivot].recip();
        for x in &mut coeffs {
            *x *= &inv;
        }
        rhs *= &inv;
        for v in combo.values_mut() {
            *v *= &inv;
        }
        for row in &mut self.rows {
            let f = row.coeffs[pivot].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in row.coeffs.iter_mut().zip(&coeffs) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            row.rhs -= &f * &rhs;
            axpy(&mut row.combo, &f, &combo);
        }
        self.rows.push(Row {
            pivot,
            coeffs,
            rhs,
            combo,
        });
        Ok(())
    }

    /// A solution with every free variable set to zero.
    pub fn solution(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.vars];
        for row in &self.rows {
            x[row.pivot] = row.rhs.clone();
        }
        x
    }
}

/// Solves the square system `a·x = b`; `None` when `a` is singular.
pub fn solve_square(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut sys = IncrementalSystem::new(n);
    for (t, (row, rhs)) in a.iter().zip(b).enumerate() {
        sys.push(t, row.clone(), rhs.clone()).ok()?;
    }
    (sys.rank() == n).then(|| sys.solution())
}
