//! JSON schema for instance files. Costs travel as strings so rationals stay exact.

use copic_core::reductions::KCardCutInstance;
use copic_core::{Cost, DiagonalCosts, FamilySpec, Graph, Instance, Interaction, Matrix};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub m: usize,
    pub n: usize,
    pub family1: FamilyDocument,
    pub family2: FamilyDocument,
    pub q: InteractionDocument,
    pub c: Vec<String>,
    pub d: Vec<String>,
}

/// Ground sizes of `unconstrained`, `uniform` and `partition` come from `m`/`n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FamilyDocument {
    Unconstrained,
    Uniform {
        k: usize,
    },
    Partition {
        parts: Vec<Vec<usize>>,
        quotas: Vec<usize>,
    },
    Graphic {
        vertices: usize,
        edges: Vec<[usize; 2]>,
    },
    Stpath {
        vertices: usize,
        edges: Vec<[usize; 2]>,
        directed: bool,
        s: usize,
        t: usize,
    },
    Pm {
        p: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InteractionDocument {
    Dense(Vec<Vec<String>>),
    Diag(Vec<String>),
}

/// A k-cardinality cut problem on the complete bipartite digraph with arc costs `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KCardDocument {
    pub m: usize,
    pub n: usize,
    pub q: Vec<Vec<String>>,
    pub k: usize,
}

fn cost(s: &str) -> Result<Cost, CliError> {
    s.parse()
        .map_err(|e: copic_core::CopicError| CliError::Parse(e.to_string()))
}

fn costs(v: &[String]) -> Result<Vec<Cost>, CliError> {
    v.iter().map(|s| cost(s)).collect()
}

fn strings(v: &[Cost]) -> Vec<String> {
    v.iter().map(Cost::to_string).collect()
}

fn pairs(edges: &[[usize; 2]]) -> Vec<(usize, usize)> {
    edges.iter().map(|e| (e[0], e[1])).collect()
}

fn arrays(edges: &[(usize, usize)]) -> Vec<[usize; 2]> {
    edges.iter().map(|&(u, v)| [u, v]).collect()
}

fn dense(rows: &[Vec<String>]) -> Result<Matrix, CliError> {
    let rows = rows
        .iter()
        .map(|r| costs(r))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(rows)?)
}

impl FamilyDocument {
    pub fn to_spec(&self, ground_size: usize) -> Result<FamilySpec, CliError> {
        Ok(match self {
            FamilyDocument::Unconstrained => FamilySpec::Unconstrained { ground_size },
            FamilyDocument::Uniform { k } => FamilySpec::UniformMatroid { ground_size, k: *k },
            FamilyDocument::Partition { parts, quotas } => FamilySpec::PartitionMatroid {
                parts: parts.clone(),
                quotas: quotas.clone(),
            },
            FamilyDocument::Graphic { vertices, edges } => FamilySpec::GraphicMatroid {
                graph: Graph::undirected(*vertices, pairs(edges)),
            },
            FamilyDocument::Stpath {
                vertices,
                edges,
                directed,
                s,
                t,
            } => {
                let graph = if *directed {
                    Graph::directed(*vertices, pairs(edges))
                } else {
                    Graph::undirected(*vertices, pairs(edges))
                };
                FamilySpec::st_path(graph, *s, *t)?
            }
            FamilyDocument::Pm { p } => FamilySpec::BipartitePerfectMatching { side: *p },
        })
    }

    pub fn from_spec(spec: &FamilySpec) -> Self {
        match spec {
            FamilySpec::Unconstrained { .. } => FamilyDocument::Unconstrained,
            FamilySpec::UniformMatroid { k, .. } => FamilyDocument::Uniform { k: *k },
            FamilySpec::PartitionMatroid { parts, quotas } => FamilyDocument::Partition {
                parts: parts.clone(),
                quotas: quotas.clone(),
            },
            FamilySpec::GraphicMatroid { graph } => FamilyDocument::Graphic {
                vertices: graph.vertices,
                edges: arrays(&graph.edges),
            },
            FamilySpec::StPath { graph, s, t } => FamilyDocument::Stpath {
                vertices: graph.vertices,
                edges: arrays(&graph.edges),
                directed: graph.directed,
                s: *s,
                t: *t,
            },
            FamilySpec::BipartitePerfectMatching { side } => FamilyDocument::Pm { p: *side },
        }
    }
}

impl InstanceDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn to_instance(&self) -> Result<Instance, CliError> {
        if self.c.len() != self.m || self.d.len() != self.n {
            return Err(CliError::Parse(format!(
                "c and d must have lengths m = {} and n = {}, got {} and {}",
                self.m,
                self.n,
                self.c.len(),
                self.d.len()
            )));
        }
        let q = match &self.q {
            InteractionDocument::Dense(rows) => {
                if rows.len() != self.m || rows.iter().any(|r| r.len() != self.n) {
                    return Err(CliError::Parse(format!(
                        "dense q must be {} x {}",
                        self.m, self.n
                    )));
                }
                if self.m == 0 || self.n == 0 {
                    Interaction::Dense(Matrix::zeros(self.m, self.n))
                } else {
                    Interaction::Dense(dense(rows)?)
                }
            }
            InteractionDocument::Diag(a) => Interaction::Diagonal(DiagonalCosts::new(costs(a)?)),
        };
        let f1 = self.family1.to_spec(self.m)?;
        let f2 = self.family2.to_spec(self.n)?;
        Ok(Instance::new(q, costs(&self.c)?, costs(&self.d)?, f1, f2)?)
    }

    pub fn from_instance(inst: &Instance) -> Self {
        let q = match &inst.q {
            Interaction::Dense(mat) => {
                InteractionDocument::Dense(mat.to_rows().iter().map(|r| strings(r)).collect())
            }
            Interaction::Diagonal(diag) => InteractionDocument::Diag(strings(&diag.a)),
        };
        InstanceDocument {
            m: inst.m,
            n: inst.n,
            family1: FamilyDocument::from_spec(&inst.family1),
            family2: FamilyDocument::from_spec(&inst.family2),
            q,
            c: strings(&inst.c),
            d: strings(&inst.d),
        }
    }
}

impl KCardDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_instance(&self) -> Result<KCardCutInstance, CliError> {
        if self.q.len() != self.m
            || self.q.iter().any(|r| r.len() != self.n)
            || self.m == 0
            || self.n == 0
        {
            return Err(CliError::Parse(format!(
                "q must be a nonempty {} x {} matrix",
                self.m, self.n
            )));
        }
        Ok(KCardCutInstance::new(dense(&self.q)?, self.k)?)
    }
}
