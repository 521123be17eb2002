//! Rainbow matching solvers.
//!
//! [`exact_find`] and [`exact_max`] are a branch-and-bound oracle. The three
//! case solvers follow the greedy constructions that work on an oriented
//! critical graph, and [`pipeline_solve`] chains reduction, orientation,
//! classification and the case solvers, with the oracle as a last resort.

mod case1;
mod case2;
mod case3;
mod exact;
mod greedy;
mod pipeline;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, EdgeColoredGraph, Matching};
use crate::structure::{Case, StructureError};
use crate::weights::Weight;

pub use case1::{case1_solve, Case1Option, Case1Step};
pub use case2::{case2_solve, Case2Step};
pub use case3::{case3_solve, Case3Star};
pub use exact::{exact_find, exact_max, ExactMax};
pub use greedy::greedy_baseline;
pub use pipeline::{analyze, pipeline_solve, Analysis, Attempt, PipelineTrace};

/// Default node budget for the exact search.
pub const DEFAULT_BUDGET: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Exact,
    Greedy,
    Case1,
    Case2,
    Case3,
    Pipeline,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Exact,
        Algorithm::Greedy,
        Algorithm::Case1,
        Algorithm::Case2,
        Algorithm::Case3,
        Algorithm::Pipeline,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Exact => "exact",
            Algorithm::Greedy => "greedy",
            Algorithm::Case1 => "case1",
            Algorithm::Case2 => "case2",
            Algorithm::Case3 => "case3",
            Algorithm::Pipeline => "pipeline",
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}

/// Runs one algorithm by name. The case solvers run on the critical graph
/// built by [`analyze`] and fail with [`SolveError::CaseMismatch`] when
/// their inequality does not hold there.
pub fn solve_with(
    algorithm: Algorithm,
    g: &EdgeColoredGraph,
    k: usize,
    budget: u64,
    seed: u64,
) -> Result<SolveResult, SolveError> {
    let case = match algorithm {
        Algorithm::Exact => return exact_find(g, k, budget),
        Algorithm::Greedy => return Ok(greedy_baseline(g, k)),
        Algorithm::Pipeline => return pipeline_solve(g, k, budget, seed),
        Algorithm::Case1 => Case::Case1,
        Algorithm::Case2 => Case::Case2,
        Algorithm::Case3 => Case::Case3,
    };
    let a = analyze(g, k, seed)?;
    let (h, p) = (&a.critical, &a.partition);
    match case {
        Case::Case1 => case1_solve(h, p, &a.w1, k),
        Case::Case2 => case2_solve(h, p, &a.w2, k),
        _ if !a.label.case3_holds() => Err(SolveError::CaseMismatch { expected: Case::Case3 }),
        _ => case3_solve(h, p, &a.w3, k),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SolveTrace {
    Exact {
        nodes: u64,
        /// The search space was exhausted without reaching `k`.
        exhausted: bool,
    },
    Greedy {
        picks: Vec<Edge>,
    },
    Case1 {
        steps: Vec<Case1Step>,
        /// Step whose reconstruction found no extending edge.
        stuck_at: Option<usize>,
    },
    Case2 {
        steps: Vec<Case2Step>,
        #[serde(serialize_with = "crate::weights::ser_weight")]
        max_class_weight: Weight,
    },
    Case3 {
        vertex: usize,
        #[serde(serialize_with = "crate::weights::ser_weight")]
        w3: Weight,
        stars: Vec<Case3Star>,
        /// `|L ∩ V(S_l)| > l` for every `l >= 2`.
        chain_holds: bool,
        distinct_centers_and_colors: bool,
        picks: Vec<Edge>,
    },
    Pipeline(Box<PipelineTrace>),
}

impl SolveTrace {
    /// The matching the recorded picks build, in pick order.
    ///
    /// Returns `None` for the exact search, whose certificate is the
    /// matching itself.
    pub fn replay(&self) -> Option<Vec<Edge>> {
        match self {
            SolveTrace::Exact { .. } => None,
            SolveTrace::Greedy { picks } | SolveTrace::Case3 { picks, .. } => Some(picks.clone()),
            SolveTrace::Case1 { steps, .. } => Some(steps.iter().rev().filter_map(|s| s.picked).collect()),
            SolveTrace::Case2 { steps, .. } => Some(steps.iter().map(|s| s.edge).collect()),
            SolveTrace::Pipeline(p) => p.winning_trace().and_then(SolveTrace::replay),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub nodes: u64,
    pub steps: usize,
    pub depth: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveResult {
    pub algorithm: Algorithm,
    pub k: usize,
    pub size: usize,
    pub succeeded: bool,
    pub matching: Matching,
    pub trace: SolveTrace,
    pub stats: Stats,
}

impl SolveResult {
    pub fn new(algorithm: Algorithm, k: usize, matching: Matching, trace: SolveTrace, stats: Stats) -> Self {
        let size = matching.len();
        SolveResult { algorithm, k, size, succeeded: size >= k, matching, trace, stats }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("solve results serialize")
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("node budget of {budget} exceeded; best matching has {} edges", best.len())]
    BudgetExceeded { budget: u64, best: Matching },
    #[error("input is not in {expected:?}")]
    CaseMismatch { expected: Case },
    #[error("no vertex of L has w3 below 1")]
    NoWitness,
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// Connected components of the given edges, each sorted by edge index and
/// the list ordered by smallest edge index.
pub(crate) fn components(g: &EdgeColoredGraph, edges: &[usize]) -> Vec<Vec<usize>> {
    use std::collections::HashMap;

    fn find(parent: &mut HashMap<usize, usize>, x: usize) -> usize {
        let p = *parent.entry(x).or_insert(x);
        if p == x {
            return x;
        }
        let root = find(parent, p);
        parent.insert(x, root);
        root
    }

    let mut parent = HashMap::new();
    for &i in edges {
        let e = g.edge(i);
        let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
        if a != b {
            parent.insert(a, b);
        }
    }
    let mut sorted = edges.to_vec();
    sorted.sort_unstable();
    let mut by_root: Vec<(usize, Vec<usize>)> = Vec::new();
    for i in sorted {
        let r = find(&mut parent, g.edge(i).u);
        match by_root.iter_mut().find(|(root, _)| *root == r) {
            Some((_, comp)) => comp.push(i),
            None => by_root.push((r, vec![i])),
        }
    }
    by_root.into_iter().map(|(_, c)| c).collect()
}
