use std::collections::HashSet;

use serde::Serialize;

use crate::graph::{Color, Edge, EdgeColoredGraph, Matching, Vertex};
use crate::solvers::{Algorithm, SolveError, SolveResult, SolveTrace, Stats};
use crate::structure::{MonoStar, VertexPartition};
use crate::weights::{W3Map, Weight};

/// One of the stars at the chosen vertex, in processing order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Case3Star {
    pub color: Color,
    pub center: Vertex,
    /// `|L ∩ V(S)|`
    pub l_count: usize,
}

/// Sorted-star greedy for the case `|L| > |S*| + |E0*|/2`.
///
/// Takes the vertex `v` of `L` with least `w3` (ties by id), which must
/// have `w3(v) < 1`. Its maximal stars are sorted by how many `L` vertices
/// they hold (ties by color); the first contributes its edge at `v`, and
/// each later one an edge from its center to the lowest unused `L` vertex.
pub fn case3_solve(
    g: &EdgeColoredGraph,
    partition: &VertexPartition,
    w3: &W3Map,
    k: usize,
) -> Result<SolveResult, SolveError> {
    let (w, v) = partition
        .l
        .iter()
        .map(|&v| (w3.vertex[v], v))
        .min()
        .ok_or(SolveError::NoWitness)?;
    if w >= Weight::from_integer(1) {
        return Err(SolveError::NoWitness);
    }

    let mut stars: Vec<&MonoStar> = partition
        .s_star
        .iter()
        .chain(&partition.e0_star)
        .filter(|s| s.l_vertices.contains(&v))
        .collect();
    stars.sort_by_key(|s| (s.l_vertices.len(), s.color));
    stars.truncate(k);

    let chain_holds = stars.iter().enumerate().skip(1).all(|(idx, s)| s.l_vertices.len() > idx + 1);
    let centers: HashSet<Vertex> = stars.iter().map(|s| s.center).collect();
    let colors: HashSet<Color> = stars.iter().map(|s| s.color).collect();
    let distinct = centers.len() == stars.len() && colors.len() == stars.len();

    let mut m = Matching::default();
    for (idx, s) in stars.iter().enumerate() {
        let leaf = if idx == 0 {
            Some(v)
        } else {
            s.l_vertices.iter().copied().find(|&x| !m.covers(x))
        };
        let Some(edge) = leaf.map(|x| Edge::new(s.center, x, s.color)).filter(|e| m.accepts(e)) else {
            break;
        };
        debug_assert!(g.contains(&edge));
        m.push(edge);
    }

    let stars: Vec<Case3Star> = stars
        .iter()
        .map(|s| Case3Star { color: s.color, center: s.center, l_count: s.l_vertices.len() })
        .collect();
    let stats = Stats { nodes: 0, steps: m.len(), depth: 0 };
    let trace = SolveTrace::Case3 {
        vertex: v,
        w3: w,
        stars,
        chain_holds,
        distinct_centers_and_colors: distinct,
        picks: m.edges.clone(),
    };
    Ok(SolveResult::new(Algorithm::Case3, k, m, trace, stats))
}
