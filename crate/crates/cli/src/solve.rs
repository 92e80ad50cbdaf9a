//! Named solvers and the automatic dispatch table.

use copic_core::bruteforce::{solve_bruteforce, solve_by_side_enumeration, DEFAULT_PAIR_CAP};
use copic_core::diagonal::*;
use copic_core::families::DEFAULT_ENUM_CAP;
use copic_core::fixedrank::{
    factorize, solve_rank1_unconstrained_side, solve_rankr_unconstrained_side,
    DEFAULT_CANDIDATE_CAP,
};
use copic_core::{CopicError, FamilySpec, Instance, Result, Solution};

pub const SOLVERS: [&str; 10] = [
    "bruteforce",
    "side-enum",
    "diag-unconstrained",
    "diag-one-side",
    "diag-uniform",
    "diag-uniform-path",
    "diag-paths",
    "diag-matroid",
    "rank1",
    "rankr",
];

/// Diagonal solvers, most specific first.
const DIAGONAL_ORDER: [&str; 6] = [
    "diag-unconstrained",
    "diag-one-side",
    "diag-uniform",
    "diag-uniform-path",
    "diag-paths",
    "diag-matroid",
];

/// Limits forwarded to the core enumerators; `--cap` overrides all of them.
#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub enumeration: u64,
    pub pairs: u64,
    pub candidates: u64,
}

impl Caps {
    pub fn new(cap: Option<u64>) -> Self {
        match cap {
            Some(c) => Caps {
                enumeration: c,
                pairs: c,
                candidates: c,
            },
            None => Caps {
                enumeration: DEFAULT_ENUM_CAP,
                pairs: DEFAULT_PAIR_CAP,
                candidates: DEFAULT_CANDIDATE_CAP,
            },
        }
    }
}

fn has_unconstrained_side(inst: &Instance) -> bool {
    [&inst.family1, &inst.family2]
        .iter()
        .any(|f| matches!(f, FamilySpec::Unconstrained { .. }))
}

fn fixed_rank(inst: &Instance, name: &str, caps: Caps) -> Result<Solution> {
    if !inst.q.is_finite() {
        return Err(CopicError::Precondition(
            "requires a finite interaction matrix".into(),
        ));
    }
    let fact = factorize(&inst.q.to_matrix())?;
    if name == "rank1" {
        solve_rank1_unconstrained_side(inst, &fact)
    } else {
        solve_rankr_unconstrained_side(inst, &fact, caps.candidates)
    }
}

/// Enumerates the side with fewer elements, falling back to the other side.
fn side_enumeration(inst: &Instance, caps: Caps) -> Result<Solution> {
    let first = if inst.m <= inst.n { 1 } else { 2 };
    match solve_by_side_enumeration(inst, first, caps.enumeration) {
        Err(e) if !answers(&e) => solve_by_side_enumeration(inst, 3 - first, caps.enumeration),
        other => other,
    }
}

pub fn run_named(name: &str, inst: &Instance, caps: Caps) -> Result<Solution> {
    if name.starts_with("diag-") {
        let di = DiagonalInstance::from_instance(inst)?;
        return match name {
            "diag-unconstrained" => solve_diag_unconstrained_pair(&di),
            "diag-one-side" => solve_diag_one_side_unconstrained(&di),
            "diag-uniform" => solve_diag_uniform_pair(&di),
            "diag-uniform-path" => solve_diag_uniform_path(&di),
            "diag-paths" => solve_diag_common_paths(&di),
            "diag-matroid" => solve_diag_matroid_pair(&di),
            _ => Err(CopicError::Domain(format!("unknown solver {name:?}"))),
        };
    }
    match name {
        "bruteforce" => solve_bruteforce(inst, caps.pairs),
        "side-enum" => side_enumeration(inst, caps),
        "rank1" | "rankr" => fixed_rank(inst, name, caps),
        _ => Err(CopicError::Domain(format!(
            "unknown solver {name:?}; expected auto or one of {}",
            SOLVERS.join(", ")
        ))),
    }
}

/// Errors that settle the instance rather than rule out the solver.
fn answers(e: &CopicError) -> bool {
    matches!(
        e,
        CopicError::NoSolution(_) | CopicError::Infeasible(_) | CopicError::InvalidInstance(_)
    )
}

/// Tries solvers from most to least specific. Each rejection is recorded in
/// `log`; the returned name is the solver that produced the answer.
pub fn run_auto(inst: &Instance, caps: Caps, log: &mut Vec<String>) -> (String, Result<Solution>) {
    let mut order: Vec<&str> = Vec::new();
    if inst.q.diagonal().is_some() && inst.m == inst.n {
        order.extend(DIAGONAL_ORDER);
    } else {
        log.push("diagonal solvers: interaction matrix is not diagonal".into());
    }
    if has_unconstrained_side(inst) {
        order.extend(["rank1", "rankr"]);
    } else {
        log.push("rank1, rankr: no unconstrained side".into());
    }
    order.extend(["side-enum", "bruteforce"]);
    for name in order {
        match run_named(name, inst, caps) {
            Err(e) if !answers(&e) && name != "bruteforce" => log.push(format!("{name}: {e}")),
            res => return (name.to_string(), res),
        }
    }
    unreachable!("bruteforce closes the dispatch order")
}
