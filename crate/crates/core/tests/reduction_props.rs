mod common;

use copic_core::bruteforce::solve_bruteforce;
use copic_core::reductions::{
    cut_of, enumerate_kcard_cuts, solve_kcard_cut_via_copic, KCardCutInstance,
};
use copic_core::CopicError;
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduction_matches_cut_enumeration(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let (m, n) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let q = common::dense(&mut rng, m, n, -9, 9);
        for k in 1..=m * n {
            let inst = KCardCutInstance::new(q.clone(), k).unwrap();
            let via = solve_kcard_cut_via_copic(&inst, &|i| solve_bruteforce(i, 1 << 20));
            match (via, enumerate_kcard_cuts(&inst).unwrap()) {
                (Ok(cut), Some((_, best))) => {
                    prop_assert_eq!(&cut.cost, &best);
                    prop_assert_eq!(cut.k1 * cut.k2, k);
                    prop_assert_eq!(cut_of(&inst, &cut.vertices), (k, best));
                }
                (Err(CopicError::NoSolution(_)), None) => {}
                (got, want) => prop_assert!(false, "k = {}: {:?} vs {:?}", k, got, want),
            }
        }
    }
}
