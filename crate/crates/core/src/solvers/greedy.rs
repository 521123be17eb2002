use crate::graph::{EdgeColoredGraph, Matching};
use crate::solvers::{Algorithm, SolveResult, SolveTrace, Stats};

/// Baseline: repeatedly take the eligible edge whose endpoints have the
/// smallest combined degree among eligible edges (ties by edge order), where
/// eligible means both endpoints free and color unused.
pub fn greedy_baseline(g: &EdgeColoredGraph, k: usize) -> SolveResult {
    let mut m = Matching::default();
    let mut steps = 0;
    while m.len() < k {
        let eligible: Vec<usize> = (0..g.m()).filter(|&i| m.accepts(&g.edge(i))).collect();
        if eligible.is_empty() {
            break;
        }
        let mut degree = vec![0usize; g.n()];
        for &i in &eligible {
            let e = g.edge(i);
            degree[e.u] += 1;
            degree[e.v] += 1;
        }
        let best = eligible
            .iter()
            .copied()
            .min_by_key(|&i| {
                let e = g.edge(i);
                (degree[e.u] + degree[e.v], i)
            })
            .expect("non-empty");
        m.push(g.edge(best));
        steps += 1;
    }
    let trace = SolveTrace::Greedy { picks: m.edges.clone() };
    SolveResult::new(Algorithm::Greedy, k, m, trace, Stats { nodes: 0, steps, depth: 0 })
}
