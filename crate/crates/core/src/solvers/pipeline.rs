use serde::Serialize;
use serde_json::{json, Value};

use crate::graph::{EdgeColoredGraph, Matching};
use crate::solvers::{
    case1_solve, case2_solve, case3_solve, exact_find, Algorithm, SolveError, SolveResult, SolveTrace, Stats,
};
use crate::structure::{
    classify_case, orient, partition, reduce_to_critical, star_decomposition, Case, CaseLabel, Deletion,
    Orientation, StarDecomposition, StructureError, VertexPartition,
};
use crate::weights::{compute_w1, compute_w2, compute_w3, W1Map, W2Map, W3Map};

/// Everything the case solvers see: the critical graph and the structures
/// derived from it.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub k: usize,
    pub critical: EdgeColoredGraph,
    pub deletions: Vec<Deletion>,
    pub decomposition: StarDecomposition,
    pub orientation: Orientation,
    pub partition: VertexPartition,
    pub label: CaseLabel,
    pub w1: W1Map,
    pub w2: W2Map,
    pub w3: W3Map,
}

impl Analysis {
    pub fn to_json(&self) -> Value {
        let g = &self.critical;
        let arcs: Vec<[usize; 3]> =
            self.orientation.arcs().zip(g.edges()).map(|((t, h), e)| [t, h, e.color as usize]).collect();
        json!({
            "k": self.k,
            "deletions": self.deletions,
            "critical": { "n": g.n(), "edges": g.edges() },
            "decomposition": self.decomposition,
            "orientation": {
                "arcs": arcs,
                "out_color_degree": self.orientation.out_color_degrees(),
                "moves_applied": self.orientation.moves_applied,
            },
            "partition": self.partition,
            "label": self.label,
            "w1": self.w1.to_json(g),
            "w2": self.w2.to_json(g),
            "w3": self.w3.to_json(),
        })
    }
}

/// Reduces `g` to a critical graph, orients it, partitions it and computes
/// the three weightings.
pub fn analyze(g: &EdgeColoredGraph, k: usize, seed: u64) -> Result<Analysis, StructureError> {
    let (critical, deletions) = reduce_to_critical(g, k)?;
    let decomposition = star_decomposition(&critical);
    let orientation = orient(&critical, &decomposition, seed)?;
    let partition = partition(&critical, &decomposition, &orientation);
    let label = classify_case(&partition, critical.n(), k);
    let w1 = compute_w1(&critical, &partition);
    let w2 = compute_w2(&critical, &decomposition, &orientation);
    let w3 = compute_w3(&partition);
    Ok(Analysis { k, critical, deletions, decomposition, orientation, partition, label, w1, w2, w3 })
}

/// One case solver run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Attempt {
    pub case: Case,
    pub size: usize,
    pub succeeded: bool,
    pub error: Option<String>,
    pub trace: Option<SolveTrace>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineTrace {
    pub seed: u64,
    pub deletions: Vec<Deletion>,
    pub critical_edges: usize,
    pub label: Option<CaseLabel>,
    pub attempts: Vec<Attempt>,
    pub fallback: bool,
    pub fallback_trace: Option<SolveTrace>,
}

impl PipelineTrace {
    /// Trace of the stage whose matching was returned.
    pub fn winning_trace(&self) -> Option<&SolveTrace> {
        if self.fallback {
            return self.fallback_trace.as_ref();
        }
        self.attempts.iter().find(|a| a.succeeded).and_then(|a| a.trace.as_ref())
    }

    /// Case of the successful constructive attempt, if any.
    pub fn winning_case(&self) -> Option<Case> {
        if self.fallback {
            return None;
        }
        self.attempts.iter().find(|a| a.succeeded).map(|a| a.case)
    }
}

fn run_case(a: &Analysis, case: Case) -> Result<SolveResult, SolveError> {
    let (g, p, k) = (&a.critical, &a.partition, a.k);
    match case {
        Case::Case1 => case1_solve(g, p, &a.w1, k),
        Case::Case2 => case2_solve(g, p, &a.w2, k),
        Case::Case3 => case3_solve(g, p, &a.w3, k),
        Case::NoCase => Err(SolveError::CaseMismatch { expected: Case::NoCase }),
    }
}

/// Reduce, orient, classify and try each applicable case solver in order;
/// if none reaches `k`, run the exact search on the original graph.
pub fn pipeline_solve(g: &EdgeColoredGraph, k: usize, budget: u64, seed: u64) -> Result<SolveResult, SolveError> {
    let mut trace = PipelineTrace {
        seed,
        deletions: Vec::new(),
        critical_edges: g.m(),
        label: None,
        attempts: Vec::new(),
        fallback: false,
        fallback_trace: None,
    };
    if k == 0 {
        let t = SolveTrace::Pipeline(Box::new(trace));
        return Ok(SolveResult::new(Algorithm::Pipeline, 0, Matching::default(), t, Stats::default()));
    }

    let a = analyze(g, k, seed)?;
    trace.deletions = a.deletions.clone();
    trace.critical_edges = a.critical.m();
    trace.label = Some(a.label.clone());

    let mut best = Matching::default();
    let mut steps = 0;
    for case in a.label.applicable() {
        let attempt = match run_case(&a, case) {
            Ok(r) => {
                steps += r.stats.steps;
                if r.size > best.len() {
                    best = r.matching.clone();
                }
                Attempt { case, size: r.size, succeeded: r.succeeded, error: None, trace: Some(r.trace) }
            }
            Err(e) => Attempt { case, size: 0, succeeded: false, error: Some(e.to_string()), trace: None },
        };
        let done = attempt.succeeded;
        trace.attempts.push(attempt);
        if done {
            let stats = Stats { nodes: 0, steps, depth: trace.attempts.len() };
            let t = SolveTrace::Pipeline(Box::new(trace));
            return Ok(SolveResult::new(Algorithm::Pipeline, k, best, t, stats));
        }
    }

    trace.fallback = true;
    let r = match exact_find(g, k, budget) {
        Ok(r) => r,
        Err(SolveError::BudgetExceeded { budget, best: b }) => {
            return Err(SolveError::BudgetExceeded { budget, best: if b.len() > best.len() { b } else { best } });
        }
        Err(e) => return Err(e),
    };
    if r.succeeded || r.size > best.len() {
        best = r.matching.clone();
    }
    let stats = Stats { nodes: r.stats.nodes, steps, depth: trace.attempts.len() + 1 };
    trace.fallback_trace = Some(r.trace);
    let t = SolveTrace::Pipeline(Box::new(trace));
    Ok(SolveResult::new(Algorithm::Pipeline, k, best, t, stats))
}
