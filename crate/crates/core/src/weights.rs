//! Exact-rational weightings of the oriented critical graph.
//!
//! * `w1` spreads one unit over each star with two or more `L` vertices and
//!   half a unit over each star with exactly one.
//! * `w2` gives every vertex of `C` one unit of out-weight, split evenly over
//!   its out-colors and then over the edges of each out-star.
//! * `w3` is `w1` seen from the `L` side: each vertex of `L` collects its
//!   share of every such star it belongs to.

use num_rational::Ratio;
use num_traits::Zero;
use serde::Serializer;
use serde_json::{json, Value};
use std::collections::BTreeMap;

use crate::graph::{Color, EdgeColoredGraph, Vertex};
use crate::structure::{EdgeRole, Orientation, StarDecomposition, VertexPartition};

pub type Weight = Ratio<i64>;

pub fn weight_json(w: &Weight) -> Value {
    json!([w.numer(), w.denom()])
}

pub(crate) fn ser_weight<S: Serializer>(w: &Weight, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq([*w.numer(), *w.denom()])
}

pub(crate) fn ser_opt_weight<S: Serializer>(w: &Option<Weight>, s: S) -> Result<S::Ok, S::Error> {
    match w {
        Some(w) => ser_weight(w, s),
        None => s.serialize_none(),
    }
}

fn vertex_json(ws: &[Weight]) -> Value {
    Value::Array(ws.iter().map(weight_json).collect())
}

fn edge_json(g: &EdgeColoredGraph, ws: &[Weight]) -> Value {
    Value::Array(
        g.edges()
            .iter()
            .zip(ws)
            .filter(|(_, w)| !w.is_zero())
            .map(|(e, w)| json!({ "edge": e, "weight": weight_json(w) }))
            .collect(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct W1Map {
    /// Per edge index.
    pub edge: Vec<Weight>,
    /// Sum of incident edge weights.
    pub vertex: Vec<Weight>,
    pub total: Weight,
}

impl W1Map {
    pub fn to_json(&self, g: &EdgeColoredGraph) -> Value {
        json!({
            "edges": edge_json(g, &self.edge),
            "vertices": vertex_json(&self.vertex),
            "total": weight_json(&self.total),
        })
    }
}

pub fn compute_w1(g: &EdgeColoredGraph, partition: &VertexPartition) -> W1Map {
    let mut edge = vec![Weight::zero(); g.m()];
    for s in &partition.s_star {
        let share = Weight::new(1, s.l_vertices.len() as i64);
        for (&leaf, &i) in s.leaves.iter().zip(&s.edges) {
            if partition.in_l(leaf) {
                edge[i] = share;
            }
        }
    }
    for s in &partition.e0_star {
        let (_, &i) = s
            .leaves
            .iter()
            .zip(&s.edges)
            .find(|(&leaf, _)| partition.in_l(leaf))
            .expect("member of E0* has an L vertex");
        edge[i] = Weight::new(1, 2);
    }
    let mut vertex = vec![Weight::zero(); g.n()];
    for (e, w) in g.edges().iter().zip(&edge) {
        vertex[e.u] += w;
        vertex[e.v] += w;
    }
    let total = edge.iter().sum();
    W1Map { edge, vertex, total }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct W2Map {
    /// Per edge index; the edge is read in its oriented direction.
    pub edge: Vec<Weight>,
    pub out: Vec<Weight>,
    pub into: Vec<Weight>,
    /// Total weight of each color class.
    pub class: BTreeMap<Color, Weight>,
}

impl W2Map {
    /// `w+(v) + w-(v)`
    pub fn vertex(&self, v: Vertex) -> Weight {
        self.out[v] + self.into[v]
    }

    pub fn total(&self) -> Weight {
        self.edge.iter().sum()
    }

    pub fn to_json(&self, g: &EdgeColoredGraph) -> Value {
        let class: BTreeMap<String, Value> =
            self.class.iter().map(|(c, w)| (c.to_string(), weight_json(w))).collect();
        json!({
            "edges": edge_json(g, &self.edge),
            "out": vertex_json(&self.out),
            "in": vertex_json(&self.into),
            "classes": class,
        })
    }
}

/// Out-edge `vw` weighs `1/d+(v)` when color-isolated and `1/(d+(v) |S|)`
/// when it lies in star `S`, where `|S|` counts edges and `d+` is the color
/// outdegree.
pub fn compute_w2(
    g: &EdgeColoredGraph,
    decomposition: &StarDecomposition,
    orientation: &Orientation,
) -> W2Map {
    let mut edge = Vec::with_capacity(g.m());
    let mut out = vec![Weight::zero(); g.n()];
    let mut into = vec![Weight::zero(); g.n()];
    let mut class: BTreeMap<Color, Weight> = BTreeMap::new();
    for (i, e) in g.edges().iter().enumerate() {
        let tail = orientation.tail(i);
        let d_out = orientation.out_color_degree(tail) as i64;
        let w = match decomposition.role(i) {
            EdgeRole::Star(s) => Weight::new(1, d_out * decomposition.stars[s].size() as i64),
            EdgeRole::Single => Weight::new(1, d_out),
            EdgeRole::Violation => panic!("w2 needs a star-forest coloring"),
        };
        edge.push(w);
        out[tail] += w;
        into[orientation.head(i)] += w;
        *class.entry(e.color).or_default() += w;
    }
    W2Map { edge, out, into, class }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct W3Map {
    /// Indexed by vertex; zero outside `L`.
    pub vertex: Vec<Weight>,
    pub total: Weight,
}

impl W3Map {
    pub fn to_json(&self) -> Value {
        json!({ "vertices": vertex_json(&self.vertex), "total": weight_json(&self.total) })
    }
}

pub fn compute_w3(partition: &VertexPartition) -> W3Map {
    let mut vertex = vec![Weight::zero(); partition.n()];
    for s in &partition.s_star {
        let share = Weight::new(1, s.l_vertices.len() as i64);
        for &x in &s.l_vertices {
            vertex[x] += share;
        }
    }
    for s in &partition.e0_star {
        vertex[s.l_vertices[0]] += Weight::new(1, 2);
    }
    let total = vertex.iter().sum();
    W3Map { vertex, total }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_cayley;
    use crate::graph::Edge;
    use crate::structure::{orient, partition, star_decomposition};

    struct Built {
        g: EdgeColoredGraph,
        d: StarDecomposition,
        o: Orientation,
        p: VertexPartition,
    }

    fn build(g: EdgeColoredGraph) -> Built {
        let d = star_decomposition(&g);
        let o = orient(&g, &d, 0).unwrap();
        let p = partition(&g, &d, &o);
        Built { g, d, o, p }
    }

    fn w(n: i64, d: i64) -> Weight {
        Weight::new(n, d)
    }

    #[test]
    fn w1_three_leaf_star() {
        let b = build(EdgeColoredGraph::new(4, (1..4).map(|l| Edge::new(0, l, 3))).unwrap());
        let w1 = compute_w1(&b.g, &b.p);
        assert_eq!(w1.edge, vec![w(1, 3); 3]);
        assert_eq!(w1.total, w(1, 1));
        assert_eq!(w1.vertex[0], w(1, 1));
    }

    #[test]
    fn w1_single_edge_and_inner_edge() {
        // Path 0-1-2 with colors 1, 2: vertex 1 is the double source and both
        // ends land in L.
        let b = build(EdgeColoredGraph::new(3, [Edge::new(0, 1, 1), Edge::new(1, 2, 2)]).unwrap());
        let w1 = compute_w1(&b.g, &b.p);
        assert_eq!(w1.edge, vec![w(1, 2), w(1, 2)]);

        // Cayley K_{2,2}: both rows stay sources, so each edge is a single
        // edge with one L vertex.
        let b = build(gen_cayley(2).unwrap());
        assert_eq!(b.p.l, vec![2, 3]);
        let w1 = compute_w1(&b.g, &b.p);
        assert_eq!(w1.edge, vec![w(1, 2); 4]);
        assert_eq!(w1.total, w(2, 1));

        // A directed triangle keeps every vertex in C: zero weight throughout.
        let g = EdgeColoredGraph::new(3, [Edge::new(0, 1, 0), Edge::new(1, 2, 1), Edge::new(0, 2, 2)])
            .unwrap();
        let d = star_decomposition(&g);
        let mut o = orient(&g, &d, 0).unwrap();
        for (i, t) in [(0, 0), (1, 2), (2, 1)] {
            if o.tail(i) != t {
                o.apply(&crate::structure::Move::ReverseEdge { edge: i });
            }
        }
        let p = partition(&g, &d, &o);
        assert!(p.l.is_empty());
        assert!(compute_w1(&g, &p).edge.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn w2_mixed_out_edges() {
        // Vertex 0: one isolated out-edge (color 1) and a 2-edge star (color 2).
        let b = build(
            EdgeColoredGraph::new(4, [Edge::new(0, 1, 1), Edge::new(0, 2, 2), Edge::new(0, 3, 2)]).unwrap(),
        );
        assert_eq!(b.o.out_color_degree(0), 2);
        let w2 = compute_w2(&b.g, &b.d, &b.o);
        assert_eq!(w2.edge, vec![w(1, 2), w(1, 4), w(1, 4)]);
        assert_eq!(w2.out[0], w(1, 1));
        assert!(w2.out[1].is_zero());
        assert_eq!(w2.class[&2], w(1, 2));
    }

    #[test]
    fn w2_total_on_cayley_is_c() {
        let b = build(gen_cayley(2).unwrap());
        let w2 = compute_w2(&b.g, &b.d, &b.o);
        assert_eq!(w2.total(), Weight::from_integer(b.p.c.len() as i64));
        for &v in &b.p.c {
            assert_eq!(w2.out[v], w(1, 1));
        }
    }

    #[test]
    fn w3_half_plus_half() {
        // Vertex 3 in L: leaf of star 0->{3,4} (two L leaves) and head of
        // the isolated edge 1->3.
        let g = EdgeColoredGraph::new(
            6,
            [Edge::new(0, 3, 7), Edge::new(0, 4, 7), Edge::new(1, 3, 8), Edge::new(1, 5, 9), Edge::new(0, 5, 6)],
        )
        .unwrap();
        let b = build(g);
        assert!(b.p.in_l(3) && b.p.in_l(4));
        let w3 = compute_w3(&b.p);
        assert_eq!(w3.vertex[3], w(1, 1));
        assert_eq!(w3.total, b.p.case1_mass);
    }

    #[test]
    fn w3_zero_without_stars() {
        let b = build(EdgeColoredGraph::empty(3));
        let w3 = compute_w3(&b.p);
        assert!(w3.vertex.iter().all(|x| x.is_zero()));
        assert!(w3.total.is_zero());
    }

    #[test]
    fn json_shapes() {
        let b = build(EdgeColoredGraph::new(3, [Edge::new(0, 1, 1), Edge::new(1, 2, 2)]).unwrap());
        let v = compute_w1(&b.g, &b.p).to_json(&b.g);
        assert_eq!(v["total"], json!([1, 1]));
        assert_eq!(v["edges"][0]["weight"], json!([1, 2]));
        assert_eq!(v["edges"][0]["edge"], json!([0, 1, 1]));
    }
}
