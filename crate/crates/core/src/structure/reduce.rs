use std::collections::HashMap;

use serde::Serialize;

use crate::graph::{Color, Edge, EdgeColoredGraph, Vertex};
use crate::structure::StructureError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeletionRule {
    /// The edge's color also appears at both endpoints.
    SharedColorBothEnds,
    /// Neither endpoint needs the edge to keep color degree `k`.
    Redundant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Deletion {
    pub edge: Edge,
    pub rule: DeletionRule,
    pub pass: usize,
}

/// Per-vertex color multiplicities, updated as edges are removed.
struct ColorCounts {
    counts: Vec<HashMap<Color, usize>>,
}

impl ColorCounts {
    fn new(g: &EdgeColoredGraph) -> Self {
        let mut counts = vec![HashMap::new(); g.n()];
        for e in g.edges() {
            *counts[e.u].entry(e.color).or_default() += 1;
            *counts[e.v].entry(e.color).or_default() += 1;
        }
        ColorCounts { counts }
    }

    fn mult(&self, v: Vertex, c: Color) -> usize {
        self.counts[v].get(&c).copied().unwrap_or(0)
    }

    fn color_degree(&self, v: Vertex) -> usize {
        self.counts[v].len()
    }

    fn remove(&mut self, e: &Edge) {
        for x in [e.u, e.v] {
            let slot = self.counts[x].get_mut(&e.color).expect("color present at endpoint");
            *slot -= 1;
            if *slot == 0 {
                self.counts[x].remove(&e.color);
            }
        }
    }
}

/// Deletes edges until no edge is removable without pushing a color degree
/// below `k`.
///
/// Each pass first removes every edge whose color repeats at both endpoints,
/// then every edge where each endpoint either has color degree above `k` or
/// sees the edge's color elsewhere. Passes repeat until neither rule fires.
///
/// At the fixpoint every color class is a star forest, and every edge has an
/// endpoint of color degree exactly `k` at which its color is unique.
pub fn reduce_to_critical(
    g: &EdgeColoredGraph,
    k: usize,
) -> Result<(EdgeColoredGraph, Vec<Deletion>), StructureError> {
    let min = g.min_color_degree();
    if min < k {
        return Err(StructureError::ColorDegreeTooSmall { min, k });
    }

    let mut counts = ColorCounts::new(g);
    let mut alive = vec![true; g.m()];
    let mut log = Vec::new();
    let mut pass = 0;
    loop {
        let before = log.len();
        for (i, e) in g.edges().iter().enumerate() {
            if alive[i] && counts.mult(e.u, e.color) >= 2 && counts.mult(e.v, e.color) >= 2 {
                alive[i] = false;
                counts.remove(e);
                log.push(Deletion { edge: *e, rule: DeletionRule::SharedColorBothEnds, pass });
            }
        }
        for (i, e) in g.edges().iter().enumerate() {
            let spare = |x: Vertex| counts.color_degree(x) > k || counts.mult(x, e.color) >= 2;
            if alive[i] && spare(e.u) && spare(e.v) {
                alive[i] = false;
                counts.remove(e);
                log.push(Deletion { edge: *e, rule: DeletionRule::Redundant, pass });
            }
        }
        if log.len() == before {
            break;
        }
        pass += 1;
    }

    Ok((g.filter_edges(|i, _| alive[i]), log))
}

/// Does `g` satisfy the fixpoint property of [`reduce_to_critical`] for `k`?
pub fn is_critical(g: &EdgeColoredGraph, k: usize) -> bool {
    let counts = ColorCounts::new(g);
    g.edges().iter().all(|e| {
        [e.u, e.v]
            .into_iter()
            .any(|x| counts.color_degree(x) == k && counts.mult(x, e.color) == 1)
    })
}
