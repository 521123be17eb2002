use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::graph::{Color, EdgeColoredGraph, Vertex};

/// A monochromatic star with at least two leaves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Star {
    pub color: Color,
    pub center: Vertex,
    /// Leaves in ascending order.
    pub leaves: Vec<Vertex>,
    /// Edge indices, aligned with `leaves`.
    pub edges: Vec<usize>,
}

impl Star {
    /// Number of edges.
    pub fn size(&self) -> usize {
        self.edges.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeRole {
    /// Member of `stars[i]`.
    Star(usize),
    /// Its color appears on no adjacent edge.
    Single,
    /// Both endpoints carry another edge of the same color.
    Violation,
}

/// Maximal monochromatic stars, color-isolated edges, and the edges that
/// keep a color class from being a star forest.
///
/// An edge is a violation when both of its endpoints meet another edge of
/// its color. A class is a star forest exactly when it has no such edge.
/// `stars` and `e0` describe the color classes after violations are set
/// aside, so every edge has exactly one role.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarDecomposition {
    pub stars: Vec<Star>,
    pub e0: Vec<usize>,
    pub violations: Vec<usize>,
    #[serde(skip)]
    roles: Vec<EdgeRole>,
}

impl StarDecomposition {
    pub fn role(&self, edge: usize) -> EdgeRole {
        self.roles[edge]
    }

    pub fn is_single(&self, edge: usize) -> bool {
        self.roles[edge] == EdgeRole::Single
    }

    pub fn is_star_forest(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.roles.len()
    }
}

pub fn star_decomposition(g: &EdgeColoredGraph) -> StarDecomposition {
    let mut class_deg: HashMap<(Vertex, Color), usize> = HashMap::new();
    for e in g.edges() {
        *class_deg.entry((e.u, e.color)).or_default() += 1;
        *class_deg.entry((e.v, e.color)).or_default() += 1;
    }

    let mut roles = vec![EdgeRole::Single; g.m()];
    let mut violations = Vec::new();
    let mut residual: HashMap<(Vertex, Color), usize> = HashMap::new();
    for (i, e) in g.edges().iter().enumerate() {
        if class_deg[&(e.u, e.color)] >= 2 && class_deg[&(e.v, e.color)] >= 2 {
            roles[i] = EdgeRole::Violation;
            violations.push(i);
        } else {
            *residual.entry((e.u, e.color)).or_default() += 1;
            *residual.entry((e.v, e.color)).or_default() += 1;
        }
    }

    // Every remaining edge has an endpoint of class degree 1, so at most one
    // endpoint can be a center.
    let mut by_center: BTreeMap<(Vertex, Color), Vec<usize>> = BTreeMap::new();
    let mut e0 = Vec::new();
    for (i, e) in g.edges().iter().enumerate() {
        if roles[i] == EdgeRole::Violation {
            continue;
        }
        let (ru, rv) = (residual[&(e.u, e.color)], residual[&(e.v, e.color)]);
        match (ru >= 2, rv >= 2) {
            (false, false) => e0.push(i),
            (true, false) => by_center.entry((e.u, e.color)).or_default().push(i),
            (false, true) => by_center.entry((e.v, e.color)).or_default().push(i),
            (true, true) => unreachable!("edge {i} survived violation filtering"),
        }
    }

    let mut stars = Vec::with_capacity(by_center.len());
    for ((center, color), mut edges) in by_center {
        edges.sort_unstable_by_key(|&i| g.edge(i).other(center));
        for &i in &edges {
            roles[i] = EdgeRole::Star(stars.len());
        }
        let leaves = edges.iter().map(|&i| g.edge(i).other(center)).collect();
        stars.push(Star { color, center, leaves, edges });
    }

    StarDecomposition { stars, e0, violations, roles }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    #[test]
    fn disjoint_star_components() {
        // a=0 b=1 c=2 d=3 e=4
        let g = EdgeColoredGraph::new(
            5,
            [Edge::new(0, 1, 7), Edge::new(0, 2, 7), Edge::new(3, 4, 7)],
        )
        .unwrap();
        let d = star_decomposition(&g);
        assert_eq!(d.stars.len(), 1);
        assert_eq!(d.stars[0].center, 0);
        assert_eq!(d.stars[0].leaves, vec![1, 2]);
        assert_eq!(d.e0, vec![g.edge_index(3, 4).unwrap()]);
        assert!(d.is_star_forest());
    }

    #[test]
    fn path_of_three_flags_middle_edge() {
        // x=0 u=1 v=2 y=3
        let g = EdgeColoredGraph::new(
            4,
            [Edge::new(1, 2, 0), Edge::new(1, 0, 0), Edge::new(2, 3, 0)],
        )
        .unwrap();
        let d = star_decomposition(&g);
        assert_eq!(d.violations, vec![g.edge_index(1, 2).unwrap()]);
        assert!(!d.is_star_forest());
        assert_eq!(d.e0.len(), 2);
    }

    #[test]
    fn rainbow_triangle_is_all_singles() {
        let g = EdgeColoredGraph::new(3, [Edge::new(0, 1, 0), Edge::new(1, 2, 1), Edge::new(0, 2, 2)])
            .unwrap();
        let d = star_decomposition(&g);
        assert!(d.stars.is_empty());
        assert_eq!(d.e0, vec![0, 1, 2]);
    }

    #[test]
    fn monochromatic_triangle_is_all_violations() {
        let g = EdgeColoredGraph::new(3, [Edge::new(0, 1, 0), Edge::new(1, 2, 0), Edge::new(0, 2, 0)])
            .unwrap();
        let d = star_decomposition(&g);
        assert_eq!(d.violations.len(), 3);
        assert!(d.stars.is_empty() && d.e0.is_empty());
    }
}
