mod common;

use copic_core::bruteforce::solve_bruteforce;
use copic_core::families::enumerate;
use copic_core::fixedrank::*;
use copic_core::{
    evaluate_objective, CopicError, Cost, FamilySpec, Instance, Interaction, Matrix, Rational,
    Subset,
};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const CAP: u64 = 1 << 20;

fn low_rank(rng: &mut ChaCha8Rng, m: usize, n: usize, r: usize) -> Matrix {
    let us: Vec<Vec<i64>> = (0..r)
        .map(|_| (0..m).map(|_| rng.gen_range(-3..=3)).collect())
        .collect();
    let vs: Vec<Vec<i64>> = (0..r)
        .map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect())
        .collect();
    Matrix::from_fn(m, n, |i, j| {
        Cost::int((0..r).map(|t| us[t][i] * vs[t][j]).sum())
    })
}

/// Rank-r instance with an unconstrained side, placed on either side.
fn instance(rng: &mut ChaCha8Rng, r: usize, lo: i64, hi: i64) -> Instance {
    let (m, n) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
    let other = common::random_family(rng, n);
    let q = low_rank(rng, m, n, r);
    let (c, d) = (common::costs(rng, m, lo, hi), common::costs(rng, n, lo, hi));
    let inst = Instance::new(
        Interaction::Dense(q),
        c,
        d,
        FamilySpec::Unconstrained { ground_size: m },
        other,
    )
    .unwrap();
    if rng.gen_bool(0.5) {
        inst.transposed()
    } else {
        inst
    }
}

fn same_outcome(
    a: copic_core::Result<copic_core::Solution>,
    b: copic_core::Result<copic_core::Solution>,
) -> bool {
    match (a, b) {
        (Ok(x), Ok(y)) => x.objective == y.objective,
        (Err(CopicError::NoSolution(_)), Err(CopicError::NoSolution(_))) => true,
        _ => false,
    }
}

fn q_of(inst: &Instance) -> Matrix {
    inst.q.to_matrix()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factorization_reproduces_q(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let (m, n, r) = (rng.gen_range(1..=6), rng.gen_range(1..=6), rng.gen_range(0..=3));
        let q = low_rank(&mut rng, m, n, r);
        let fact = factorize(&q).unwrap();
        prop_assert!(fact.r <= r);
        prop_assert!(fact.validate(&q).is_ok());
        prop_assert!(fact.transposed().validate(&q.transpose()).is_ok());
    }

    #[test]
    fn rankr_matches_bruteforce(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let r = rng.gen_range(0..=3);
        let inst = instance(&mut rng, r, -9, 9);
        let fact = factorize(&q_of(&inst)).unwrap();
        let got = solve_rankr_unconstrained_side(&inst, &fact, CAP);
        if let Ok(sol) = &got {
            prop_assert_eq!(evaluate_objective(&inst, sol.s1.as_slice(), sol.s2.as_slice()).unwrap(), sol.objective.clone());
        }
        prop_assert!(same_outcome(got, solve_bruteforce(&inst, CAP)));
        if fact.r == 1 {
            prop_assert!(same_outcome(
                solve_rank1_unconstrained_side(&inst, &fact),
                solve_rankr_unconstrained_side(&inst, &fact, CAP)
            ));
        }
    }

    #[test]
    fn candidates_cover_an_optimum(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let r = rng.gen_range(1..=3);
        let (m, n) = (rng.gen_range(1..=5), rng.gen_range(1..=4));
        let f2 = common::random_family(&mut rng, n);
        let q = low_rank(&mut rng, m, n, r);
        let c = common::costs(&mut rng, m, -9, 9);
        let d = common::costs(&mut rng, n, -9, 9);
        let inst = Instance::new(Interaction::Dense(q.clone()), c.clone(), d, FamilySpec::Unconstrained { ground_size: m }, f2).unwrap();
        let Ok(best) = solve_bruteforce(&inst, CAP) else { return Ok(()) };
        let fact = factorize(&q).unwrap();
        let cands = rankr_candidates(&c, &fact, CAP).unwrap();
        let members = enumerate(&inst.family2, CAP).unwrap();
        let optimal_s1: Vec<Subset> = (0u64..1 << m)
            .map(Subset::from_mask)
            .filter(|s1| members.iter().any(|s2| evaluate_objective(&inst, s1.as_slice(), s2.as_slice()).unwrap() == best.objective))
            .collect();
        prop_assert!(optimal_s1.iter().any(|s| cands.contains(s)));
    }

    #[test]
    fn candidates_ignore_factor_scaling(seed in any::<u64>(), num in 1i64..7, den in 1i64..7, flip in any::<bool>()) {
        let mut rng = common::rng(seed);
        let (m, n, r) = (rng.gen_range(1..=5), rng.gen_range(1..=4), rng.gen_range(1..=3));
        let q = low_rank(&mut rng, m, n, r);
        let c = common::costs(&mut rng, m, -9, 9);
        let fact = factorize(&q).unwrap();
        let lambda = Rational::new((if flip { -num } else { num }).into(), den.into());
        let scaled = RankFactorization {
            r: fact.r,
            a_vectors: fact.a_vectors.iter().map(|a| a.iter().map(|x| x * &lambda).collect()).collect(),
            b_vectors: fact.b_vectors.iter().map(|b| b.iter().map(|x| x / &lambda).collect()).collect(),
        };
        prop_assert!(scaled.validate(&q).is_ok());
        prop_assert_eq!(rankr_candidates(&c, &fact, CAP).unwrap(), rankr_candidates(&c, &scaled, CAP).unwrap());
    }

    #[test]
    fn exact_oracle_reproduces_the_optimum(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let (m, n) = (rng.gen_range(1..=5), rng.gen_range(1..=4));
        let f2 = common::random_family(&mut rng, n);
        let nonneg = |rng: &mut ChaCha8Rng, len| -> Vec<i64> { (0..len).map(|_| rng.gen_range(0..=3)).collect() };
        let (u, v) = (nonneg(&mut rng, m), nonneg(&mut rng, n));
        let q = Matrix::from_fn(m, n, |i, j| Cost::int(u[i] * v[j]));
        let inst = Instance::new(Interaction::Dense(q.clone()), common::costs(&mut rng, m, 0, 9),
            common::costs(&mut rng, n, 0, 9), FamilySpec::Unconstrained { ground_size: m }, f2).unwrap();
        let fact = factorize(&q).unwrap();
        prop_assume!(fact.a_vectors.iter().flatten().all(|x| *x >= Rational::from_integer(0.into())));
        prop_assert!(same_outcome(
            solve_rankr_with_approximate_oracle(&inst, &fact, &ExactOracle, CAP),
            solve_bruteforce(&inst, CAP)
        ));
    }
}

#[test]
fn rank_zero_has_one_candidate() {
    let c = vec![Cost::int(-1), Cost::int(2), Cost::zero(), Cost::int(-3)];
    let fact = factorize(&Matrix::zeros(4, 2)).unwrap();
    let cands = rankr_candidates(&c, &fact, CAP).unwrap();
    assert_eq!(cands.candidates, vec![Subset::from([0, 3])]);
}

#[test]
fn missing_unconstrained_side_is_a_precondition() {
    let u = |n| FamilySpec::UniformMatroid {
        ground_size: n,
        k: 1,
    };
    let q = Matrix::from_ints(&[&[1, 2], &[2, 4]]);
    let inst = Instance::new(
        Interaction::Dense(q.clone()),
        vec![Cost::zero(); 2],
        vec![Cost::zero(); 2],
        u(2),
        u(2),
    )
    .unwrap();
    let err = solve_rankr_unconstrained_side(&inst, &factorize(&q).unwrap(), CAP).unwrap_err();
    assert_eq!(
        err,
        CopicError::Precondition("requires an unconstrained family on one side".into())
    );
}
