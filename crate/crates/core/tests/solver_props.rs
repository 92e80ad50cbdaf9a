mod common;

use copic_core::bruteforce::{solve_bruteforce, solve_by_side_enumeration};
use copic_core::diagonal::*;
use copic_core::families::{contains, enumerate};
use copic_core::{
    evaluate_objective, CopicError, Cost, FamilySpec, Instance, Result, Solution, Subset,
};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const CAP: u64 = 1 << 20;

/// Lexicographically scans every feasible pair for the least optimum.
fn scan(inst: &Instance) -> Option<(Subset, Subset, Cost)> {
    let mut best: Option<(Subset, Subset, Cost)> = None;
    let (l1, l2) = (
        enumerate(&inst.family1, CAP).unwrap(),
        enumerate(&inst.family2, CAP).unwrap(),
    );
    for s1 in &l1 {
        for s2 in &l2 {
            let v = evaluate_objective(inst, s1.as_slice(), s2.as_slice()).unwrap();
            if v.is_finite() && best.as_ref().is_none_or(|b| v < b.2) {
                best = Some((s1.clone(), s2.clone(), v));
            }
        }
    }
    best
}

fn check_against_scan(
    inst: &Instance,
    got: Result<Solution>,
) -> std::result::Result<(), TestCaseError> {
    match (got, scan(inst)) {
        (Ok(sol), Some((_, _, best))) => {
            prop_assert!(contains(&inst.family1, sol.s1.as_slice()));
            prop_assert!(contains(&inst.family2, sol.s2.as_slice()));
            prop_assert_eq!(
                evaluate_objective(inst, sol.s1.as_slice(), sol.s2.as_slice()).unwrap(),
                sol.objective.clone()
            );
            prop_assert_eq!(sol.objective, best);
        }
        (Err(CopicError::NoSolution(_)), None) => {}
        (got, want) => prop_assert!(false, "solver {:?} vs scan {:?}", got, want),
    }
    Ok(())
}

fn maybe_inf(rng: &mut ChaCha8Rng, lo: i64, hi: i64, p_inf: f64) -> Cost {
    if rng.gen_bool(p_inf) {
        Cost::Inf
    } else {
        Cost::int(rng.gen_range(lo..=hi))
    }
}

fn diag_costs(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64, p_inf: f64) -> Vec<Cost> {
    (0..n).map(|_| maybe_inf(rng, lo, hi, p_inf)).collect()
}

fn path_family(rng: &mut ChaCha8Rng, n: usize) -> FamilySpec {
    let v = rng.gen_range(2..=5);
    let directed = rng.gen_bool(0.5);
    let g = common::random_graph(rng, v, n, directed);
    let (s, t) = if directed {
        (0, v - 1)
    } else {
        (rng.gen_range(0..v), 0)
    };
    let (s, t) = if s == t { (0, v - 1) } else { (s, t) };
    FamilySpec::st_path(g, s, t).unwrap()
}

fn random_matroid(rng: &mut ChaCha8Rng, n: usize) -> FamilySpec {
    match rng.gen_range(0..4) {
        0 => FamilySpec::UniformMatroid {
            ground_size: n,
            k: rng.gen_range(0..=n),
        },
        1 => common::random_partition(rng, n),
        2 => FamilySpec::Unconstrained { ground_size: n },
        _ => {
            let v = rng.gen_range(2..=4);
            FamilySpec::GraphicMatroid {
                graph: common::random_graph(rng, v, n, false),
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bruteforce_returns_least_optimal_pair(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let (m, n) = (rng.gen_range(0..=4), rng.gen_range(0..=4));
        let f1 = common::random_family(&mut rng, m);
        let f2 = common::random_family(&mut rng, n);
        let inst = common::dense_instance(&mut rng, f1, f2, -9, 9);
        let got = solve_bruteforce(&inst, CAP);
        match (&got, scan(&inst)) {
            (Ok(sol), Some((s1, s2, v))) => {
                prop_assert_eq!(&sol.s1, &s1);
                prop_assert_eq!(&sol.s2, &s2);
                prop_assert_eq!(&sol.objective, &v);
            }
            (Err(CopicError::NoSolution(_)), None) => {}
            (got, want) => prop_assert!(false, "{:?} vs {:?}", got, want),
        }
        for side in [1, 2] {
            let by_side = solve_by_side_enumeration(&inst, side, CAP);
            match (&got, by_side) {
                (Ok(a), Ok(b)) => prop_assert_eq!(&a.objective, &b.objective),
                (Err(CopicError::NoSolution(_)), Err(CopicError::NoSolution(_))) => {}
                (a, b) => prop_assert!(false, "side {}: {:?} vs {:?}", side, a, b),
            }
        }
    }

    #[test]
    fn unconstrained_pair_is_optimal(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let n = rng.gen_range(0..=6);
        let u = FamilySpec::Unconstrained { ground_size: n };
        let di = DiagonalInstance::new(diag_costs(&mut rng, n, -9, 9, 0.1), common::costs(&mut rng, n, -9, 9),
            common::costs(&mut rng, n, -9, 9), u.clone(), u).unwrap();
        check_against_scan(&di.to_instance(), solve_diag_unconstrained_pair(&di))?;
    }

    #[test]
    fn one_side_unconstrained_is_optimal(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let n = rng.gen_range(0..=6);
        let other = common::random_family(&mut rng, n);
        let u = FamilySpec::Unconstrained { ground_size: n };
        let (f1, f2) = if rng.gen_bool(0.5) { (other, u) } else { (u, other) };
        let di = DiagonalInstance::new(diag_costs(&mut rng, n, -9, 9, 0.1), common::costs(&mut rng, n, -9, 9),
            common::costs(&mut rng, n, -9, 9), f1, f2).unwrap();
        check_against_scan(&di.to_instance(), solve_diag_one_side_unconstrained(&di))?;
    }

    #[test]
    fn uniform_pair_is_optimal(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let n = rng.gen_range(0..=6);
        let f1 = FamilySpec::UniformMatroid { ground_size: n, k: rng.gen_range(0..=n) };
        let f2 = FamilySpec::UniformMatroid { ground_size: n, k: rng.gen_range(0..=n) };
        let di = DiagonalInstance::new(diag_costs(&mut rng, n, -9, 9, 0.1), common::costs(&mut rng, n, -9, 9),
            common::costs(&mut rng, n, -9, 9), f1, f2).unwrap();
        check_against_scan(&di.to_instance(), solve_diag_uniform_pair(&di))?;
    }

    #[test]
    fn uniform_path_is_optimal(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let n = rng.gen_range(1..=7);
        let path = path_family(&mut rng, n);
        let uni = FamilySpec::UniformMatroid { ground_size: n, k: rng.gen_range(0..=n) };
        let a = diag_costs(&mut rng, n, 0, 9, 0.1);
        let (f1, f2, c, d) = if rng.gen_bool(0.5) {
            (uni, path, vec![Cost::zero(); n], common::costs(&mut rng, n, 0, 9))
        } else {
            (path, uni, common::costs(&mut rng, n, 0, 9), vec![Cost::zero(); n])
        };
        let di = DiagonalInstance::new(a, c, d, f1, f2).unwrap();
        check_against_scan(&di.to_instance(), solve_diag_uniform_path(&di))?;
    }

    #[test]
    fn matroid_pair_is_optimal(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let n = rng.gen_range(0..=6);
        let (f1, f2) = (random_matroid(&mut rng, n), random_matroid(&mut rng, n));
        prop_assume!(!matches!(f1, FamilySpec::Unconstrained { .. }) && !matches!(f2, FamilySpec::Unconstrained { .. }));
        let c = common::costs(&mut rng, n, -9, 9);
        let di = DiagonalInstance::new(diag_costs(&mut rng, n, 0, 9, 0.15), c.clone(), c, f1, f2).unwrap();
        check_against_scan(&di.to_instance(), solve_diag_matroid_pair(&di))?;
    }

    #[test]
    fn common_paths_are_optimal(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let n = rng.gen_range(1..=7);
        let path = path_family(&mut rng, n);
        let c = common::costs(&mut rng, n, 0, 9);
        let di = DiagonalInstance::new(diag_costs(&mut rng, n, 0, 9, 0.15), c.clone(), c, path.clone(), path).unwrap();
        check_against_scan(&di.to_instance(), solve_diag_common_paths(&di))?;
    }

    #[test]
    fn raising_a_never_lowers_the_optimum(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let n = rng.gen_range(1..=6);
        let f1 = FamilySpec::UniformMatroid { ground_size: n, k: rng.gen_range(0..=n) };
        let f2 = FamilySpec::UniformMatroid { ground_size: n, k: rng.gen_range(0..=n) };
        let a = diag_costs(&mut rng, n, -9, 9, 0.0);
        let (c, d) = (common::costs(&mut rng, n, -9, 9), common::costs(&mut rng, n, -9, 9));
        let base = DiagonalInstance::new(a.clone(), c.clone(), d.clone(), f1.clone(), f2.clone()).unwrap();
        let mut raised = a;
        let e = rng.gen_range(0..n);
        raised[e] = if rng.gen_bool(0.3) { Cost::Inf } else { &raised[e] + &Cost::int(rng.gen_range(1..=5)) };
        let up = DiagonalInstance::new(raised, c, d, f1, f2).unwrap();
        let value = |r: Result<Solution>| r.ok().map(|s| s.objective).unwrap_or(Cost::Inf);
        prop_assert!(value(solve_diag_uniform_pair(&up)) >= value(solve_diag_uniform_pair(&base)));
    }
}

#[test]
fn full_uniform_pair_takes_everything() {
    let n = 5;
    let a: Vec<Cost> = (0..n as i64).map(|i| Cost::int(i - 2)).collect();
    let c: Vec<Cost> = (0..n as i64).map(|i| Cost::int(3 - i)).collect();
    let d = vec![Cost::int(1); n];
    let total: Cost = a.iter().chain(&c).chain(&d).sum();
    let full = FamilySpec::UniformMatroid {
        ground_size: n,
        k: n,
    };
    let di = DiagonalInstance::new(a, c, d, full.clone(), full).unwrap();
    let sol = solve_diag_uniform_pair(&di).unwrap();
    assert_eq!(sol.objective, total);
    assert_eq!(sol.s1, Subset::full(n));
}

#[test]
fn preconditions_are_reported() {
    let u = |n| FamilySpec::UniformMatroid {
        ground_size: n,
        k: 1,
    };
    let neg = DiagonalInstance::new(
        vec![Cost::int(-1)],
        vec![Cost::zero()],
        vec![Cost::zero()],
        u(1),
        u(1),
    )
    .unwrap();
    assert_eq!(
        solve_diag_matroid_pair(&neg).unwrap_err(),
        CopicError::Precondition("requires a >= 0".into())
    );
    let skew = DiagonalInstance::new(
        vec![Cost::int(1)],
        vec![Cost::int(1)],
        vec![Cost::zero()],
        u(1),
        u(1),
    )
    .unwrap();
    assert_eq!(
        solve_diag_matroid_pair(&skew).unwrap_err(),
        CopicError::Precondition("requires c = d".into())
    );
}
