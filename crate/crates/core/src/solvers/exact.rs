use std::collections::HashMap;

use crate::graph::{EdgeColoredGraph, Matching};
use crate::solvers::{Algorithm, SolveError, SolveResult, SolveTrace, Stats};

/// Include/exclude branching over edges in index order.
struct Search {
    /// `(u, v, dense color index)`
    edges: Vec<(usize, usize, usize)>,
    k: usize,
    budget: u64,
    nodes: u64,
    depth: usize,
    used_vertex: Vec<bool>,
    used_color: Vec<bool>,
    current: Vec<usize>,
    best: Vec<usize>,
    seen_color: Vec<u32>,
    seen_vertex: Vec<u32>,
    stamp: u32,
}

struct OutOfBudget;

impl Search {
    fn new(g: &EdgeColoredGraph, k: usize, budget: u64) -> Self {
        let mut dense: HashMap<u64, usize> = HashMap::new();
        let edges: Vec<_> = g
            .edges()
            .iter()
            .map(|e| {
                let next = dense.len();
                (e.u, e.v, *dense.entry(e.color).or_insert(next))
            })
            .collect();
        Search {
            edges,
            k,
            budget,
            nodes: 0,
            depth: 0,
            used_vertex: vec![false; g.n()],
            used_color: vec![false; dense.len()],
            current: Vec::new(),
            best: Vec::new(),
            seen_color: vec![0; dense.len()],
            seen_vertex: vec![0; g.n()],
            stamp: 0,
        }
    }

    fn eligible(&self, j: usize) -> bool {
        let (u, v, c) = self.edges[j];
        !self.used_vertex[u] && !self.used_vertex[v] && !self.used_color[c]
    }

    /// Upper bound on the matching size reachable from edge `from` onward:
    /// limited by the distinct colors and by half the vertices still
    /// available among eligible edges.
    fn bound(&mut self, from: usize) -> usize {
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.seen_color.fill(0);
            self.seen_vertex.fill(0);
            self.stamp = 1;
        }
        let (mut colors, mut vertices) = (0, 0);
        for j in from..self.edges.len() {
            if !self.eligible(j) {
                continue;
            }
            let (u, v, c) = self.edges[j];
            if self.seen_color[c] != self.stamp {
                self.seen_color[c] = self.stamp;
                colors += 1;
            }
            for x in [u, v] {
                if self.seen_vertex[x] != self.stamp {
                    self.seen_vertex[x] = self.stamp;
                    vertices += 1;
                }
            }
        }
        self.current.len() + colors.min(vertices / 2)
    }

    fn dfs(&mut self, from: usize) -> Result<bool, OutOfBudget> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(OutOfBudget);
        }
        self.depth = self.depth.max(self.current.len());
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        if self.current.len() >= self.k {
            return Ok(true);
        }
        let bound = self.bound(from);
        if bound <= self.best.len() {
            return Ok(false);
        }
        let Some(j) = (from..self.edges.len()).find(|&j| self.eligible(j)) else {
            return Ok(false);
        };
        let (u, v, c) = self.edges[j];
        self.used_vertex[u] = true;
        self.used_vertex[v] = true;
        self.used_color[c] = true;
        self.current.push(j);
        let found = self.dfs(j + 1)?;
        self.current.pop();
        self.used_vertex[u] = false;
        self.used_vertex[v] = false;
        self.used_color[c] = false;
        if found {
            return Ok(true);
        }
        self.dfs(j + 1)
    }
}

/// Decides whether `g` has a rainbow matching with `k` edges.
///
/// On success the returned matching has exactly `k` edges. When the search
/// space is exhausted the result carries a maximum rainbow matching and
/// `succeeded == false`.
pub fn exact_find(g: &EdgeColoredGraph, k: usize, budget: u64) -> Result<SolveResult, SolveError> {
    let mut s = Search::new(g, k, budget);
    let found = s.dfs(0).map_err(|_| SolveError::BudgetExceeded {
        budget,
        best: Matching::new(s.best.iter().map(|&j| g.edge(j)).collect()),
    })?;
    let matching = Matching::new(s.best.iter().map(|&j| g.edge(j)).collect());
    let trace = SolveTrace::Exact { nodes: s.nodes, exhausted: !found };
    let stats = Stats { nodes: s.nodes, steps: 0, depth: s.depth };
    Ok(SolveResult::new(Algorithm::Exact, k, matching, trace, stats))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMax {
    pub size: usize,
    pub matching: Matching,
    pub nodes: u64,
}

/// The largest rainbow matching size, found by asking [`exact_find`] for
/// `k = 1, 2, ..` until it exhausts. The budget is shared across calls.
pub fn exact_max(g: &EdgeColoredGraph, budget: u64) -> Result<ExactMax, SolveError> {
    let mut best = Matching::default();
    let mut nodes = 0u64;
    let mut k = 1;
    loop {
        let r = match exact_find(g, k, budget - nodes) {
            Err(SolveError::BudgetExceeded { best: b, .. }) => {
                let best = if b.len() > best.len() { b } else { best };
                return Err(SolveError::BudgetExceeded { budget, best });
            }
            other => other?,
        };
        nodes += r.stats.nodes;
        if !r.succeeded {
            return Ok(ExactMax { size: best.len(), matching: best, nodes });
        }
        k = r.size + 1;
        best = r.matching;
    }
}
