use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::graph::{Color, Edge, EdgeColoredGraph, Matching};
use crate::solvers::{components, Algorithm, SolveError, SolveResult, SolveTrace, Stats};
use crate::structure::{Case, VertexPartition};
use crate::weights::{ser_weight, W2Map, Weight};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Case2Step {
    pub color: Color,
    /// Class weight when it was chosen.
    #[serde(serialize_with = "ser_weight")]
    pub weight: Weight,
    pub edge: Edge,
    /// Largest weight loss of any other color class in this step.
    #[serde(serialize_with = "ser_weight")]
    pub max_erosion: Weight,
}

/// Minimum-weight-color greedy for the case `|C| >= 7k^2/4`.
///
/// Each step takes the color whose remaining class has the least positive
/// `w2` weight (ties by color id), adds the first edge of that class's
/// largest component, and deletes every edge touching it or sharing its
/// color.
pub fn case2_solve(
    g: &EdgeColoredGraph,
    partition: &VertexPartition,
    w2: &W2Map,
    k: usize,
) -> Result<SolveResult, SolveError> {
    if 4 * partition.c.len() < 7 * k * k {
        return Err(SolveError::CaseMismatch { expected: Case::Case2 });
    }
    Ok(run(g, &w2.edge, k))
}

pub(crate) fn run(g: &EdgeColoredGraph, weight: &[Weight], k: usize) -> SolveResult {
    let mut alive = vec![true; g.m()];
    let class_weights = |alive: &[bool]| {
        let mut by: BTreeMap<Color, Weight> = BTreeMap::new();
        for (i, e) in g.edges().iter().enumerate() {
            if alive[i] {
                *by.entry(e.color).or_default() += weight[i];
            }
        }
        by
    };
    let max_class_weight = class_weights(&alive).values().copied().max().unwrap_or_else(Weight::zero);

    let mut m = Matching::default();
    let mut steps = Vec::new();
    while m.len() < k {
        let before = class_weights(&alive);
        let Some((&color, &w)) = before
            .iter()
            .filter(|(_, w)| **w > Weight::zero())
            .min_by(|a, b| a.1.cmp(b.1).then(a.0.cmp(b.0)))
        else {
            break;
        };
        let class: Vec<usize> = (0..g.m()).filter(|&i| alive[i] && g.edge(i).color == color).collect();
        let comp = components(g, &class)
            .into_iter()
            .max_by(|a, b| a.len().cmp(&b.len()).then(b[0].cmp(&a[0])))
            .expect("class is non-empty");
        let e = g.edge(comp[0]);
        m.push(e);
        for (i, f) in g.edges().iter().enumerate() {
            if f.color == color || f.shares_vertex(&e) {
                alive[i] = false;
            }
        }
        let after = class_weights(&alive);
        let max_erosion = before
            .iter()
            .filter(|(c, _)| **c != color)
            .map(|(c, w)| w - after.get(c).copied().unwrap_or_else(Weight::zero))
            .max()
            .unwrap_or_else(Weight::zero);
        steps.push(Case2Step { color, weight: w, edge: e, max_erosion });
    }
    let stats = Stats { nodes: 0, steps: steps.len(), depth: 0 };
    let trace = SolveTrace::Case2 { steps, max_class_weight };
    SolveResult::new(Algorithm::Case2, k, m, trace, stats)
}
