use std::fs;

use copic_core::bruteforce::{linearizable_bruteforce, solve_bruteforce};
use copic_core::linearize::{
    check_copic_linearizable, LinearizabilityCertificate, Verdict, Witness,
};
use copic_core::reductions::{enumerate_kcard_cuts, solve_kcard_cut_via_copic};
use copic_core::{CopicError, Instance, Rational, Solution, Subset};
use serde_json::{json, Value};

use crate::document::{InstanceDocument, KCardDocument};
use crate::error::CliError;
use crate::generate::{generate, GenOptions};
use crate::solve::{run_auto, run_named, Caps};

/// What a command writes: `stdout` text, extra `stderr` lines, and the exit code.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub stdout: String,
    pub notes: Vec<String>,
    pub code: i32,
}

fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_string(),
        source,
    })
}

pub fn load_instance(path: &str) -> Result<Instance, CliError> {
    InstanceDocument::parse(&read(path)?)?.to_instance()
}

fn rat(v: &Rational) -> String {
    copic_core::Cost::Finite(v.clone()).to_string()
}

fn subset(s: &Subset) -> Value {
    json!(s.as_slice())
}

fn is_no_solution(e: &CopicError) -> bool {
    matches!(e, CopicError::NoSolution(_) | CopicError::Infeasible(_))
}

/// `None` stands for an instance without feasible pairs.
fn objective_of(res: &Result<Solution, CopicError>) -> Option<String> {
    res.as_ref().ok().map(|s| s.objective.to_string())
}

pub fn cmd_solve(path: &str, solver: &str, verify: bool, caps: Caps) -> Result<Report, CliError> {
    let inst = load_instance(path)?;
    let mut notes = Vec::new();
    let (name, res) = if solver == "auto" {
        run_auto(&inst, caps, &mut notes)
    } else {
        (solver.to_string(), run_named(solver, &inst, caps))
    };
    let mut out = match &res {
        Ok(sol) => json!({
            "objective": sol.objective.to_string(),
            "s1": subset(&sol.s1),
            "s2": subset(&sol.s2),
            "solver": name,
        }),
        Err(e) if is_no_solution(e) => {
            notes.push(e.to_string());
            json!({ "objective": "inf", "s1": null, "s2": null, "solver": name })
        }
        Err(e) => return Err(e.clone().into()),
    };
    let mut code = 0;
    if verify {
        let reference = solve_bruteforce(&inst, caps.pairs);
        match &reference {
            Err(e) if !is_no_solution(e) => notes.push(format!("verification skipped: {e}")),
            _ => {
                let agree = objective_of(&reference) == objective_of(&res);
                out["verified"] = json!(agree);
                if !agree {
                    notes.push(format!(
                        "verification failed: {name} gives {}, brute force gives {}",
                        objective_of(&res).unwrap_or_else(|| "no solution".into()),
                        objective_of(&reference).unwrap_or_else(|| "no solution".into())
                    ));
                    code = 2;
                }
            }
        }
    }
    Ok(Report {
        stdout: format!("{out}\n"),
        notes,
        code,
    })
}

fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::Identity { indices, residual } => {
            json!({ "kind": "identity", "indices": indices, "residual": rat(residual) })
        }
        Witness::Combination { terms, residual } => json!({
            "kind": "combination",
            "terms": terms
                .iter()
                .map(|t| json!({ "coefficient": rat(&t.coefficient), "s1": subset(&t.s1), "s2": subset(&t.s2) }))
                .collect::<Vec<_>>(),
            "residual": rat(residual),
        }),
    }
}

fn certificate_json(cert: &LinearizabilityCertificate, method: &str) -> Value {
    let mut out = json!({ "verdict": match cert.verdict {
        Verdict::Linearizable => "linearizable",
        Verdict::NotLinearizable => "not-linearizable",
    } });
    if let Some(v) = &cert.vectors {
        out["a"] = json!(v.a.iter().map(rat).collect::<Vec<_>>());
        out["b"] = json!(v.b.iter().map(rat).collect::<Vec<_>>());
    }
    if let Some(w) = &cert.witness {
        out["witness"] = witness_json(w);
    }
    out["method"] = json!(method);
    out
}

pub fn cmd_lincheck(path: &str, method: &str, caps: Caps) -> Result<Report, CliError> {
    let inst = load_instance(path)?;
    let mut notes = Vec::new();
    let structural = match method {
        "structural" | "both" => match check_copic_linearizable(&inst, caps.enumeration) {
            Ok(cert) => Some(cert),
            Err(CopicError::Unsupported(why)) => {
                notes.push(format!(
                    "structural test unavailable ({why}); using brute force"
                ));
                None
            }
            Err(e) => return Err(e.into()),
        },
        "bruteforce" => None,
        _ => {
            return Err(CliError::Parse(format!(
                "unknown method {method:?}; expected structural, bruteforce or both"
            )))
        }
    };
    let brute = match (&structural, method) {
        (Some(_), "structural") => None,
        _ => Some(linearizable_bruteforce(&inst, caps.pairs)?),
    };
    let (cert, label) = match (&structural, &brute) {
        (Some(s), Some(b)) => {
            if s.verdict != b.verdict {
                return Err(CliError::Mismatch(format!(
                    "structural verdict {:?} disagrees with brute force {:?}",
                    s.verdict, b.verdict
                )));
            }
            (s, "both")
        }
        (Some(s), None) => (s, "structural"),
        (None, Some(b)) => (b, "bruteforce"),
        (None, None) => unreachable!("one of the methods always runs"),
    };
    Ok(Report {
        stdout: format!("{}\n", certificate_json(cert, label)),
        notes,
        code: 0,
    })
}

pub fn cmd_gen(opts: &GenOptions) -> Result<Report, CliError> {
    let inst = generate(opts)?;
    Ok(Report {
        stdout: format!("{}\n", InstanceDocument::from_instance(&inst).to_json()),
        ..Report::default()
    })
}

pub fn cmd_reduce_cut(
    path: &str,
    solver: &str,
    verify: bool,
    caps: Caps,
) -> Result<Report, CliError> {
    let inst = KCardDocument::parse(&read(path)?)?.to_instance()?;
    if !matches!(solver, "bruteforce" | "side-enum") {
        return Err(CliError::Parse(format!(
            "reduce-cut solves with bruteforce or side-enum, not {solver:?}"
        )));
    }
    let res = solve_kcard_cut_via_copic(&inst, &|i: &Instance| run_named(solver, i, caps));
    let mut notes = Vec::new();
    let mut out = match &res {
        Ok(cut) => json!({
            "cost": cut.cost.to_string(),
            "vertices": subset(&cut.vertices),
            "k1": cut.k1,
            "k2": cut.k2,
            "solver": solver,
        }),
        Err(e) if is_no_solution(e) => {
            notes.push(e.to_string());
            json!({ "cost": "inf", "vertices": null, "k1": null, "k2": null, "solver": solver })
        }
        Err(e) => return Err(e.clone().into()),
    };
    let mut code = 0;
    if verify {
        let reference = enumerate_kcard_cuts(&inst)?.map(|(_, c)| c.to_string());
        let agree = reference == res.as_ref().ok().map(|c| c.cost.to_string());
        out["verified"] = json!(agree);
        if !agree {
            notes.push("verification failed: cut enumeration disagrees".into());
            code = 2;
        }
    }
    Ok(Report {
        stdout: format!("{out}\n"),
        notes,
        code,
    })
}
