use num_traits::Zero;
use serde::Serialize;

use crate::graph::{Color, Edge, EdgeColoredGraph, Matching, Vertex};
use crate::solvers::{components, Algorithm, SolveError, SolveResult, SolveTrace, Stats};
use crate::structure::{Case, VertexPartition};
use crate::weights::{ser_opt_weight, ser_weight, W1Map, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Case1Option {
    /// Option 1: drop a heavy vertex.
    Vertex,
    /// Option 2: drop a color class with many components.
    Color,
    /// Option 3: drop both ends of an edge and its whole color class.
    Pair,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Case1Step {
    /// 1-based step number.
    pub step: usize,
    pub option: Case1Option,
    pub vertex: Option<Vertex>,
    pub color: Option<Color>,
    pub pair: Option<Edge>,
    #[serde(skip)]
    pub removed: Vec<usize>,
    /// Weight of the removed edges.
    #[serde(serialize_with = "ser_weight")]
    pub weight: Weight,
    /// `(k-1)/2 + 4(k-i)` for pair steps.
    #[serde(serialize_with = "ser_opt_weight")]
    pub bound: Option<Weight>,
    /// Edge contributed to the matching during reconstruction.
    pub picked: Option<Edge>,
}

impl Case1Step {
    /// Pair steps stay within `(k-1)/2 + 4(k-i)`; other steps trivially pass.
    pub fn within_bound(&self) -> bool {
        self.bound.map_or(true, |b| self.weight <= b)
    }
}

/// Working copy of the positive-weight subgraph.
struct Residual<'a> {
    g: &'a EdgeColoredGraph,
    weight: &'a [Weight],
    alive: Vec<bool>,
}

impl Residual<'_> {
    fn is_empty(&self) -> bool {
        !self.alive.iter().any(|&a| a)
    }

    fn vertex_weight(&self, v: Vertex) -> Weight {
        self.g.incident(v).iter().filter(|&&i| self.alive[i]).map(|&i| self.weight[i]).sum()
    }

    fn class(&self, c: Color) -> Vec<usize> {
        (0..self.g.m()).filter(|&i| self.alive[i] && self.g.edge(i).color == c).collect()
    }

    fn class_weight(&self, c: Color) -> Weight {
        self.class(c).iter().map(|&i| self.weight[i]).sum()
    }

    fn live_colors(&self) -> Vec<Color> {
        let mut cs: Vec<Color> =
            (0..self.g.m()).filter(|&i| self.alive[i]).map(|i| self.g.edge(i).color).collect();
        cs.sort_unstable();
        cs.dedup();
        cs
    }

    fn remove(&mut self, edges: &[usize]) -> Weight {
        let mut w = Weight::zero();
        for &i in edges {
            if std::mem::replace(&mut self.alive[i], false) {
                w += self.weight[i];
            }
        }
        w
    }

    fn at(&self, v: Vertex) -> Vec<usize> {
        self.g.incident(v).iter().copied().filter(|&i| self.alive[i]).collect()
    }
}

/// Runs the step loop on the edges of positive weight, then rebuilds the
/// matching from the last step backward.
pub(crate) fn run(g: &EdgeColoredGraph, weight: &[Weight], k: usize) -> (Matching, Vec<Case1Step>, Option<usize>) {
    let mut res = Residual { g, weight, alive: weight.iter().map(|w| !w.is_zero()).collect() };
    let mut steps: Vec<Case1Step> = Vec::new();

    while !res.is_empty() && steps.len() < k {
        let i = steps.len() + 1;
        let limit = Weight::from_integer(2 * (k - i) as i64);
        let mut step = Case1Step {
            step: i,
            option: Case1Option::Pair,
            vertex: None,
            color: None,
            pair: None,
            removed: Vec::new(),
            weight: Weight::zero(),
            bound: None,
            picked: None,
        };

        let heaviest = (0..g.n())
            .map(|v| (res.vertex_weight(v), v))
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
            .expect("non-empty residual has vertices");
        let widest = res
            .live_colors()
            .into_iter()
            .map(|c| (components(g, &res.class(c)).len(), c))
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
            .expect("non-empty residual has colors");

        if heaviest.0 > limit {
            step.option = Case1Option::Vertex;
            step.vertex = Some(heaviest.1);
            step.removed = res.at(heaviest.1);
        } else if widest.0 > 2 * (k - i) {
            step.option = Case1Option::Color;
            step.color = Some(widest.1);
            step.removed = res.class(widest.1);
        } else {
            let xy = (0..g.m())
                .filter(|&j| res.alive[j])
                .map(|j| {
                    let e = g.edge(j);
                    (res.vertex_weight(e.u) + res.vertex_weight(e.v) + res.class_weight(e.color), j)
                })
                .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
                .expect("non-empty residual has edges")
                .1;
            let e = g.edge(xy);
            let mut removed = res.at(e.u);
            removed.extend(res.at(e.v));
            removed.extend(res.class(e.color));
            removed.sort_unstable();
            removed.dedup();
            step.pair = Some(e);
            step.removed = removed;
            step.bound = Some(Weight::new(k as i64 - 1, 2) + Weight::from_integer(4 * (k - i) as i64));
        }
        step.weight = res.remove(&step.removed);
        steps.push(step);
    }

    let mut m = Matching::default();
    let mut stuck_at = None;
    for step in steps.iter_mut().rev() {
        let pick = match step.option {
            Case1Option::Vertex => step.removed.iter().map(|&j| g.edge(j)).find(|e| m.accepts(e)),
            Case1Option::Color => components(g, &step.removed)
                .into_iter()
                .find(|comp| comp.iter().all(|&j| !m.covers(g.edge(j).u) && !m.covers(g.edge(j).v)))
                .map(|comp| g.edge(comp[0]))
                .filter(|e| m.accepts(e)),
            Case1Option::Pair => step.pair.filter(|e| m.accepts(e)),
        };
        match pick {
            Some(e) => {
                step.picked = Some(e);
                m.push(e);
            }
            None => {
                stuck_at = Some(step.step);
                break;
            }
        }
    }
    (m, steps, stuck_at)
}

/// Greedy step loop for the case `|S*| + |E0*|/2 >= 5k^2/2`.
///
/// At step `i` it removes, in order of preference: a heaviest vertex if its
/// weight exceeds `2(k-i)`; a color class with at least `2(k-i)+1`
/// components; or both ends of the edge `xy` maximizing
/// `w(x) + w(y) + w(E[color(xy)])` together with that color class. A
/// matching is then rebuilt backward, one edge per step.
pub fn case1_solve(
    g: &EdgeColoredGraph,
    partition: &VertexPartition,
    w1: &W1Map,
    k: usize,
) -> Result<SolveResult, SolveError> {
    let k2 = Weight::from_integer((k * k) as i64);
    if partition.case1_mass < k2 * Weight::new(5, 2) {
        return Err(SolveError::CaseMismatch { expected: Case::Case1 });
    }
    let (m, steps, stuck_at) = run(g, &w1.edge, k);
    let stats = Stats { nodes: 0, steps: steps.len(), depth: 0 };
    let trace = SolveTrace::Case1 { steps, stuck_at };
    Ok(SolveResult::new(Algorithm::Case1, k, m, trace, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_rainbow_matching;

    fn half() -> Weight {
        Weight::new(1, 2)
    }

    #[test]
    fn empty_target_succeeds_immediately() {
        let g = EdgeColoredGraph::empty(0);
        let (m, steps, stuck) = run(&g, &[], 0);
        assert!(m.is_empty() && steps.is_empty() && stuck.is_none());
    }

    #[test]
    fn wide_color_class_is_removed_then_reused() {
        // k = 2: color 9 has 3 = 2k-1 components, everything else is a
        // single pendant edge of its own color.
        let edges = vec![
            Edge::new(0, 1, 9),
            Edge::new(2, 3, 9),
            Edge::new(4, 5, 9),
            Edge::new(0, 6, 1),
            Edge::new(2, 7, 2),
        ];
        let g = EdgeColoredGraph::new(8, edges).unwrap();
        let w = vec![half(); g.m()];
        let (m, steps, stuck) = run(&g, &w, 2);
        assert_eq!(steps[0].option, Case1Option::Color);
        assert_eq!(steps[0].color, Some(9));
        assert_eq!(steps[0].weight, Weight::new(3, 2));
        assert!(stuck.is_none());
        assert_eq!(m.len(), 2);
        assert!(is_rainbow_matching(&g, &m.edges));
        // The class-9 edge avoids the edge picked later.
        let nine = m.edges.iter().find(|e| e.color == 9).unwrap();
        assert!(m.edges.iter().filter(|e| e.color != 9).all(|e| !e.shares_vertex(nine)));
    }

    #[test]
    fn heavy_vertex_goes_first() {
        // k = 2, step 1 limit 2(k-1) = 2: vertex 0 carries 5 half-weight
        // edges of distinct colors.
        let mut edges: Vec<Edge> = (1..6).map(|l| Edge::new(0, l, l as u64)).collect();
        edges.push(Edge::new(6, 7, 6));
        let g = EdgeColoredGraph::new(8, edges).unwrap();
        let w = vec![half(); g.m()];
        let (m, steps, _) = run(&g, &w, 2);
        assert_eq!(steps[0].option, Case1Option::Vertex);
        assert_eq!(steps[0].vertex, Some(0));
        assert_eq!(steps[0].weight, Weight::new(5, 2));
        assert_eq!(m.len(), 2);
        assert!(is_rainbow_matching(&g, &m.edges));
    }

    #[test]
    fn weight_is_conserved_when_exhausted() {
        let edges = vec![Edge::new(0, 1, 0), Edge::new(2, 3, 1), Edge::new(4, 5, 2)];
        let g = EdgeColoredGraph::new(6, edges).unwrap();
        let w = vec![half(); 3];
        let (m, steps, _) = run(&g, &w, 5);
        let total: Weight = steps.iter().map(|s| s.weight).sum();
        assert_eq!(total, Weight::new(3, 2));
        assert_eq!(m.len(), 3);
        assert!(steps.iter().all(|s| s.option == Case1Option::Pair && s.within_bound()));
    }

    #[test]
    fn zero_weight_edges_are_ignored() {
        let g = EdgeColoredGraph::new(4, [Edge::new(0, 1, 0), Edge::new(2, 3, 1)]).unwrap();
        let w = vec![Weight::zero(), half()];
        let (m, _, _) = run(&g, &w, 2);
        assert_eq!(m.edges, vec![Edge::new(2, 3, 1)]);
    }
}
