//! Edge-colored simple graphs, matchings and color degrees.
//!
//! Vertices are dense ids `0..n`. Colors are opaque `u64` ids kept exactly as
//! they appear in the input; only equality is ever used on them.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = usize;
pub type Color = u64;

/// An undirected colored edge, normalized so that `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[u64; 3]", try_from = "[u64; 3]")]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
    pub color: Color,
}

impl Edge {
    /// Builds a normalized edge. Endpoint order does not matter.
    pub fn new(a: Vertex, b: Vertex, color: Color) -> Self {
        let (u, v) = if a <= b { (a, b) } else { (b, a) };
        Edge { u, v, color }
    }

    pub fn touches(&self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`. `x` must be an endpoint.
    pub fn other(&self, x: Vertex) -> Vertex {
        debug_assert!(self.touches(x));
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    pub fn shares_vertex(&self, other: &Edge) -> bool {
        self.touches(other.u) || self.touches(other.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}:{}", self.u, self.v, self.color)
    }
}

impl From<Edge> for [u64; 3] {
    fn from(e: Edge) -> Self {
        [e.u as u64, e.v as u64, e.color]
    }
}

impl TryFrom<[u64; 3]> for Edge {
    type Error = String;

    fn try_from(t: [u64; 3]) -> Result<Self, Self::Error> {
        let u = usize::try_from(t[0]).map_err(|e| e.to_string())?;
        let v = usize::try_from(t[1]).map_err(|e| e.to_string())?;
        if u == v {
            return Err(format!("self-loop at vertex {u}"));
        }
        Ok(Edge::new(u, v, t[2]))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("self-loop at vertex {vertex}{}", at_line(*line))]
    SelfLoop { vertex: Vertex, line: Option<usize> },
    #[error("duplicate vertex pair {u}-{v}{}", at_line(*line))]
    DuplicatePair {
        u: Vertex,
        v: Vertex,
        line: Option<usize>,
    },
    #[error("vertex id {vertex} out of range for n = {n}{}", at_line(*line))]
    VertexOutOfRange {
        vertex: Vertex,
        n: usize,
        line: Option<usize>,
    },
}

fn at_line(line: Option<usize>) -> String {
    line.map(|l| format!(" at line {l}")).unwrap_or_default()
}

/// A simple undirected graph with a total edge coloring.
///
/// Edges are kept sorted by `(u, v)`; an edge's position in that order is its
/// index, which the rest of the crate uses to attach per-edge data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColoredGraph {
    n: usize,
    edges: Vec<Edge>,
    incident: Vec<Vec<usize>>,
    index: HashMap<(Vertex, Vertex), usize>,
}

impl EdgeColoredGraph {
    /// Builds a graph, validating simplicity and vertex ranges.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self, GraphError> {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        for e in &edges {
            if e.u == e.v {
                return Err(GraphError::SelfLoop { vertex: e.u, line: None });
            }
            if e.v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: e.v, n, line: None });
            }
        }
        edges.sort_unstable();
        for w in edges.windows(2) {
            if (w[0].u, w[0].v) == (w[1].u, w[1].v) {
                return Err(GraphError::DuplicatePair { u: w[0].u, v: w[0].v, line: None });
            }
        }
        Ok(Self::from_sorted(n, edges))
    }

    fn from_sorted(n: usize, edges: Vec<Edge>) -> Self {
        let mut incident = vec![Vec::new(); n];
        let mut index = HashMap::with_capacity(edges.len());
        for (i, e) in edges.iter().enumerate() {
            incident[e.u].push(i);
            incident[e.v].push(i);
            index.insert((e.u, e.v), i);
        }
        EdgeColoredGraph { n, edges, incident, index }
    }

    /// The empty graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> Edge {
        self.edges[idx]
    }

    /// Indices of the edges incident to `v`, ascending.
    pub fn incident(&self, v: Vertex) -> &[usize] {
        &self.incident[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.incident[v].len()
    }

    pub fn edge_index(&self, a: Vertex, b: Vertex) -> Option<usize> {
        let key = if a <= b { (a, b) } else { (b, a) };
        self.index.get(&key).copied()
    }

    /// Looks up an edge by endpoints and color.
    pub fn find(&self, e: &Edge) -> Option<usize> {
        self.edge_index(e.u, e.v).filter(|&i| self.edges[i].color == e.color)
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.find(e).is_some()
    }

    pub fn colors(&self) -> BTreeSet<Color> {
        self.edges.iter().map(|e| e.color).collect()
    }

    /// Distinct colors on edges at `v`.
    pub fn color_degree(&self, v: Vertex) -> usize {
        self.incident[v]
            .iter()
            .map(|&i| self.edges[i].color)
            .collect::<HashSet<_>>()
            .len()
    }

    pub fn color_degree_profile(&self) -> ColorDegreeProfile {
        ColorDegreeProfile::new((0..self.n).map(|v| self.color_degree(v)).collect())
    }

    /// Minimum color degree; `0` for the graph on zero vertices.
    pub fn min_color_degree(&self) -> usize {
        self.color_degree_profile().min
    }

    /// The subgraph keeping exactly the edges whose index satisfies `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(usize, &Edge) -> bool) -> Self {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, e)| keep(*i, e))
            .map(|(_, e)| *e)
            .collect();
        Self::from_sorted(self.n, edges)
    }
}

/// Per-vertex color degrees with their extremes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColorDegreeProfile {
    pub degrees: Vec<usize>,
    pub min: usize,
    pub max: usize,
}

impl ColorDegreeProfile {
    fn new(degrees: Vec<usize>) -> Self {
        let min = degrees.iter().copied().min().unwrap_or(0);
        let max = degrees.iter().copied().max().unwrap_or(0);
        ColorDegreeProfile { degrees, min, max }
    }
}

/// A set of edges drawn from some host graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Matching {
    pub edges: Vec<Edge>,
}

impl Matching {
    pub fn new(edges: Vec<Edge>) -> Self {
        Matching { edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn push(&mut self, e: Edge) {
        self.edges.push(e);
    }

    pub fn covers(&self, v: Vertex) -> bool {
        self.edges.iter().any(|e| e.touches(v))
    }

    pub fn uses_color(&self, c: Color) -> bool {
        self.edges.iter().any(|e| e.color == c)
    }

    /// Can `e` be added while keeping the matching rainbow?
    pub fn accepts(&self, e: &Edge) -> bool {
        !self.covers(e.u) && !self.covers(e.v) && !self.uses_color(e.color)
    }

    pub fn sorted(mut self) -> Self {
        self.edges.sort_unstable();
        self
    }
}

/// Why a candidate edge set is not a rainbow matching of its host graph.
#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MatchingViolation {
    #[error("unknown edge {edge}")]
    UnknownEdge { edge: Edge },
    #[error("shared vertex {vertex}: edges {first} and {second}")]
    SharedVertex { first: Edge, second: Edge, vertex: Vertex },
    #[error("repeated color {color}: edges {first} and {second}")]
    RepeatedColor { first: Edge, second: Edge, color: Color },
}

/// Checks that `m` is a rainbow matching of `g`, reporting the first violation.
///
/// Pairs are scanned in order `(0,1), (0,2), .., (1,2), ..`; a shared vertex
/// is reported before a repeated color for the same pair.
pub fn check_rainbow_matching(g: &EdgeColoredGraph, m: &[Edge]) -> Result<(), MatchingViolation> {
    if let Some(e) = m.iter().find(|e| !g.contains(e)) {
        return Err(MatchingViolation::UnknownEdge { edge: *e });
    }
    for (i, a) in m.iter().enumerate() {
        for b in &m[i + 1..] {
            if let Some(vertex) = [a.u, a.v].into_iter().find(|&x| b.touches(x)) {
                return Err(MatchingViolation::SharedVertex { first: *a, second: *b, vertex });
            }
            if a.color == b.color {
                return Err(MatchingViolation::RepeatedColor { first: *a, second: *b, color: a.color });
            }
        }
    }
    Ok(())
}

pub fn is_rainbow_matching(g: &EdgeColoredGraph, m: &[Edge]) -> bool {
    check_rainbow_matching(g, m).is_ok()
}
