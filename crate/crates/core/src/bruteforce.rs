//! Exhaustive reference solvers. Deliberately naive: they are the oracles
//! every other solver is checked against.

use rayon::prelude::*;

use crate::cost::{Cost, Rational};
use crate::error::{CopicError, Result};
use crate::families::{enumerate, lcop_solve_avoiding};
use crate::instance::{Instance, Interaction, Solution, Subset};
use crate::linalg::IncrementalSystem;
use crate::linearize::{LinearizabilityCertificate, Linearization, Witness, WitnessTerm};

pub const DEFAULT_PAIR_CAP: u64 = 10_000_000;

/// `Σ_{i∈s1, j∈s2} q_ij` only.
pub fn interaction_sum(q: &Interaction, s1: &Subset, s2: &Subset) -> Cost {
    match q {
        Interaction::Dense(m) => s1
            .iter()
            .flat_map(|i| s2.iter().map(move |j| m.get(i, j)))
            .sum(),
        Interaction::Diagonal(d) => s1.iter().filter(|&i| s2.contains(i)).map(|i| &d.a[i]).sum(),
    }
}

fn both_sides(instance: &Instance, cap: u64) -> Result<(Vec<Subset>, Vec<Subset>)> {
    let f1 = enumerate(&instance.family1, cap)?;
    let f2 = enumerate(&instance.family2, cap)?;
    if (f1.len() as u128) * (f2.len() as u128) > cap as u128 {
        return Err(CopicError::EnumerationTooLarge { cap });
    }
    Ok((f1, f2))
}

/// Minimum over every feasible pair. Ties go to the smallest `(s1, s2)`
/// in subset order; the result does not depend on the worker count.
pub fn solve_bruteforce(instance: &Instance, cap: u64) -> Result<Solution> {
    let (f1, f2) = both_sides(instance, cap)?;
    let best = f1
        .par_iter()
        .enumerate()
        .filter_map(|(i1, s1)| {
            // Column sums for this s1, then each s2 is a plain linear sum.
            let base: Cost = s1.iter().map(|i| &instance.c[i]).sum();
            let h: Vec<Cost> = (0..instance.n)
                .map(|j| match &instance.q {
                    Interaction::Dense(q) => {
                        s1.iter().map(|i| q.get(i, j)).sum::<Cost>() + &instance.d[j]
                    }
                    Interaction::Diagonal(d) => {
                        if s1.contains(j) {
                            &d.a[j] + &instance.d[j]
                        } else {
                            instance.d[j].clone()
                        }
                    }
                })
                .collect();
            f2.iter()
                .enumerate()
                .map(|(i2, s2)| (s2.iter().map(|j| &h[j]).sum::<Cost>() + &base, i1, i2))
                .filter(|(v, _, _)| v.is_finite())
                .min()
        })
        .min();
    let (objective, i1, i2) = best.ok_or_else(|| {
        CopicError::NoSolution(if f1.is_empty() || f2.is_empty() {
            "a family has no feasible set".into()
        } else {
            "every feasible pair has infinite cost".into()
        })
    })?;
    Ok(Solution {
        s1: f1[i1].clone(),
        s2: f2[i2].clone(),
        objective,
    })
}

/// Enumerates one side and completes each choice with the other side's
/// linear oracle on the induced weights `h_j = Σ_{i∈S1} q_ij + d_j`.
/// Columns made infinite by a forbidden overlap are excluded from the
/// completion instead of being passed to the oracle.
pub fn solve_by_side_enumeration(instance: &Instance, side: u8, cap: u64) -> Result<Solution> {
    match side {
        1 => side_one(instance, cap),
        2 => side_one(&instance.transposed(), cap).map(Solution::flipped),
        other => Err(CopicError::Domain(format!(
            "side must be 1 or 2, got {other}"
        ))),
    }
}

fn side_one(instance: &Instance, cap: u64) -> Result<Solution> {
    let f1 = enumerate(&instance.family1, cap)?;
    let results: Vec<Result<Option<(Cost, usize, Subset)>>> = f1
        .par_iter()
        .enumerate()
        .map(|(i1, s1)| {
            let h: Vec<Cost> = (0..instance.n)
                .map(|j| s1.iter().map(|i| instance.q(i, j)).sum::<Cost>() + &instance.d[j])
                .collect();
            let base: Cost = s1.iter().map(|i| &instance.c[i]).sum();
            Ok(lcop_solve_avoiding(&instance.family2, &h)?.map(|(s2, v)| (v + &base, i1, s2)))
        })
        .collect();
    let mut best: Option<(Cost, usize, Subset)> = None;
    for r in results {
        if let Some(cand) = r? {
            if best
                .as_ref()
                .is_none_or(|b| (&cand.0, cand.1) < (&b.0, b.1))
            {
                best = Some(cand);
            }
        }
    }
    let (objective, i1, s2) =
        best.ok_or_else(|| CopicError::NoSolution("no feasible pair of finite cost".into()))?;
    Ok(Solution {
        s1: f1[i1].clone(),
        s2,
        objective,
    })
}

/// Decides linearizability by solving
/// `Σ_{i∈S1} a_i + Σ_{j∈S2} b_j = Σ_{i∈S1,j∈S2} q_ij` over every feasible pair.
pub fn linearizable_bruteforce(
    instance: &Instance,
    cap: u64,
) -> Result<LinearizabilityCertificate> {
    if !instance.q.is_finite() {
        return Err(CopicError::Domain(
            "linearizability needs a finite interaction matrix".into(),
        ));
    }
    let (f1, f2) = both_sides(instance, cap)?;
    let (m, n) = (instance.m, instance.n);
    let mut sys = IncrementalSystem::new(m + n);
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (i1, s1) in f1.iter().enumerate() {
        for (i2, s2) in f2.iter().enumerate() {
            let mut row = vec![Rational::from_integer(0.into()); m + n];
            for i in s1.iter() {
                row[i] = Rational::from_integer(1.into());
            }
            for j in s2.iter() {
                row[m + j] = Rational::from_integer(1.into());
            }
            let rhs = interaction_sum(&instance.q, s1, s2).value().clone();
            let tag = pairs.len();
            pairs.push((i1, i2));
            if let Err(bad) = sys.push(tag, row, rhs) {
                let terms = bad
                    .combination
                    .into_iter()
                    .map(|(t, coefficient)| {
                        let (a, b) = pairs[t];
                        WitnessTerm {
                            coefficient,
                            s1: f1[a].clone(),
                            s2: f2[b].clone(),
                        }
                    })
                    .collect();
                return Ok(LinearizabilityCertificate::not_linearizable(
                    Witness::Combination {
                        terms,
                        residual: bad.residual,
                    },
                ));
            }
        }
    }
    let mut x = sys.solution();
    let b = x.split_off(m);
    Ok(LinearizabilityCertificate::linearizable(Linearization {
        a: x,
        b,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilySpec;
    use crate::instance::{DiagonalCosts, Matrix};

    fn ints(v: &[i64]) -> Vec<Cost> {
        v.iter().map(|&x| Cost::int(x)).collect()
    }

    fn uniform(n: usize, k: usize) -> FamilySpec {
        FamilySpec::UniformMatroid { ground_size: n, k }
    }

    #[test]
    fn single_element_unconstrained() {
        let inst = Instance::new(
            Interaction::Dense(Matrix::from_ints(&[&[-5]])),
            ints(&[1]),
            ints(&[1]),
            FamilySpec::Unconstrained { ground_size: 1 },
            FamilySpec::Unconstrained { ground_size: 1 },
        )
        .unwrap();
        let sol = solve_bruteforce(&inst, DEFAULT_PAIR_CAP).unwrap();
        assert_eq!(
            (sol.s1, sol.s2, sol.objective),
            (Subset::from([0]), Subset::from([0]), Cost::int(-3))
        );
    }

    #[test]
    fn diagonal_uniform_example() {
        let inst = Instance::new(
            Interaction::Diagonal(DiagonalCosts::new(ints(&[10, 10, 10]))),
            ints(&[1, 2, 3]),
            ints(&[3, 2, 1]),
            uniform(3, 1),
            uniform(3, 1),
        )
        .unwrap();
        let sol = solve_bruteforce(&inst, DEFAULT_PAIR_CAP).unwrap();
        assert_eq!(
            (sol.s1, sol.s2, sol.objective),
            (Subset::from([0]), Subset::from([2]), Cost::int(2))
        );
        let by_side = solve_by_side_enumeration(&inst, 2, DEFAULT_PAIR_CAP).unwrap();
        assert_eq!(by_side.objective, Cost::int(2));
    }

    #[test]
    fn cap_is_enforced() {
        let inst = Instance::new(
            Interaction::Dense(Matrix::zeros(4, 4)),
            ints(&[0; 4]),
            ints(&[0; 4]),
            FamilySpec::Unconstrained { ground_size: 4 },
            FamilySpec::Unconstrained { ground_size: 4 },
        )
        .unwrap();
        assert_eq!(
            solve_bruteforce(&inst, 100).unwrap_err(),
            CopicError::EnumerationTooLarge { cap: 100 }
        );
    }

    #[test]
    fn forbidden_overlap_everywhere_is_no_solution() {
        let inst = Instance::new(
            Interaction::Diagonal(DiagonalCosts::new(vec![Cost::Inf])),
            ints(&[0]),
            ints(&[0]),
            uniform(1, 1),
            uniform(1, 1),
        )
        .unwrap();
        assert!(matches!(
            solve_bruteforce(&inst, DEFAULT_PAIR_CAP),
            Err(CopicError::NoSolution(_))
        ));
        assert!(matches!(
            solve_by_side_enumeration(&inst, 1, DEFAULT_PAIR_CAP),
            Err(CopicError::NoSolution(_))
        ));
    }

    #[test]
    fn linearizability_examples() {
        let make = |rows: &[&[i64]]| {
            Instance::new(
                Interaction::Dense(Matrix::from_ints(rows)),
                ints(&[0, 0]),
                ints(&[0, 0]),
                uniform(2, 1),
                uniform(2, 1),
            )
            .unwrap()
        };
        let yes = linearizable_bruteforce(&make(&[&[1, 6], &[2, 7]]), DEFAULT_PAIR_CAP).unwrap();
        assert!(yes.is_linearizable());
        let no = linearizable_bruteforce(&make(&[&[0, 1], &[1, 0]]), DEFAULT_PAIR_CAP).unwrap();
        assert!(!no.is_linearizable());
        match no.witness.unwrap() {
            Witness::Combination { residual, .. } => {
                assert_ne!(residual, Rational::from_integer(0.into()))
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }
}
