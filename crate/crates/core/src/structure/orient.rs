use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::{EdgeColoredGraph, Vertex};
use crate::structure::{EdgeRole, StarDecomposition, StructureError};

/// A local move on the directions of color-isolated edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    /// Reverse one color-isolated edge.
    ReverseEdge { edge: usize },
    /// Reverse every color-isolated in-edge of a vertex.
    ReverseInEdges { vertex: Vertex, edges: Vec<usize> },
    /// Reverse two color-isolated in-edges of a vertex.
    ReversePair { vertex: Vertex, edges: [usize; 2] },
}

impl Move {
    fn edges(&self) -> &[usize] {
        match self {
            Move::ReverseEdge { edge } => std::slice::from_ref(edge),
            Move::ReverseInEdges { edges, .. } => edges,
            Move::ReversePair { edges, .. } => edges,
        }
    }
}

/// Directions for every edge of a star-forest-colored graph.
///
/// Star edges point from the center to the leaves. Color-isolated edges are
/// directed so that no [`Move`] lexicographically increases the descending
/// sequence of color outdegrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orientation {
    tails: Vec<Vertex>,
    heads: Vec<Vertex>,
    #[serde(skip)]
    single: Vec<bool>,
    out_color_degree: Vec<usize>,
    in_degree: Vec<usize>,
    /// Number of improving moves applied by the local search.
    pub moves_applied: usize,
}

/// Is the descending sequence improved when the values `old` are replaced by
/// `new`? Both lists describe the same vertices.
///
/// Comparing the two sorted replacement lists decides the comparison of the
/// full sequences, since the untouched values are common to both.
pub fn lex_improves(old: &mut [usize], new: &mut [usize]) -> bool {
    old.sort_unstable_by(|a, b| b.cmp(a));
    new.sort_unstable_by(|a, b| b.cmp(a));
    new > old
}

impl Orientation {
    pub fn tail(&self, edge: usize) -> Vertex {
        self.tails[edge]
    }

    pub fn head(&self, edge: usize) -> Vertex {
        self.heads[edge]
    }

    /// `(tail, head)` per edge index.
    pub fn arcs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.tails.iter().copied().zip(self.heads.iter().copied())
    }

    pub fn edge_count(&self) -> usize {
        self.tails.len()
    }

    pub fn out_color_degree(&self, v: Vertex) -> usize {
        self.out_color_degree[v]
    }

    pub fn out_color_degrees(&self) -> &[usize] {
        &self.out_color_degree
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.in_degree[v]
    }

    /// Color outdegrees sorted descending.
    pub fn sequence(&self) -> Vec<usize> {
        let mut s = self.out_color_degree.clone();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }

    pub fn in_edges<'a>(&'a self, g: &'a EdgeColoredGraph, v: Vertex) -> impl Iterator<Item = usize> + 'a {
        g.incident(v).iter().copied().filter(move |&i| self.heads[i] == v)
    }

    pub fn out_edges<'a>(&'a self, g: &'a EdgeColoredGraph, v: Vertex) -> impl Iterator<Item = usize> + 'a {
        g.incident(v).iter().copied().filter(move |&i| self.tails[i] == v)
    }

    fn reversible_in_edges(&self, g: &EdgeColoredGraph, v: Vertex) -> Vec<usize> {
        self.in_edges(g, v).filter(|&i| self.single[i]).collect()
    }

    /// The value changes `(vertex, old, new)` a move would cause.
    ///
    /// Reversing a color-isolated edge moves exactly one color from its tail
    /// to its head, because that color appears nowhere else at either end.
    fn deltas(&self, mv: &Move) -> Vec<(Vertex, usize, usize)> {
        let mut out: Vec<(Vertex, usize, usize)> = Vec::new();
        let mut bump = |v: Vertex, d: isize| match out.iter_mut().find(|(x, _, _)| *x == v) {
            Some(slot) => slot.2 = (slot.2 as isize + d) as usize,
            None => {
                let old = self.out_color_degree[v];
                out.push((v, old, (old as isize + d) as usize));
            }
        };
        for &e in mv.edges() {
            bump(self.tails[e], -1);
            bump(self.heads[e], 1);
        }
        out
    }

    fn improves(&self, mv: &Move) -> bool {
        let d = self.deltas(mv);
        let mut old: Vec<usize> = d.iter().map(|x| x.1).collect();
        let mut new: Vec<usize> = d.iter().map(|x| x.2).collect();
        lex_improves(&mut old, &mut new)
    }

    /// The first improving move in scan order, if any.
    ///
    /// Vertices are scanned ascending. At each vertex the single reversals of
    /// its isolated in-edges come first (ascending edge index), then reversing
    /// all of them, then pairs in lexicographic order.
    pub fn improving_move(&self, g: &EdgeColoredGraph) -> Option<Move> {
        for v in 0..g.n() {
            let ins = self.reversible_in_edges(g, v);
            for &edge in &ins {
                let mv = Move::ReverseEdge { edge };
                if self.improves(&mv) {
                    return Some(mv);
                }
            }
            if ins.len() >= 2 {
                let mv = Move::ReverseInEdges { vertex: v, edges: ins.clone() };
                if self.improves(&mv) {
                    return Some(mv);
                }
            }
            if ins.len() >= 3 {
                for (a, &ea) in ins.iter().enumerate() {
                    for &eb in &ins[a + 1..] {
                        let mv = Move::ReversePair { vertex: v, edges: [ea, eb] };
                        if self.improves(&mv) {
                            return Some(mv);
                        }
                    }
                }
            }
        }
        None
    }

    pub fn apply(&mut self, mv: &Move) {
        for (v, _, new) in self.deltas(mv) {
            self.out_color_degree[v] = new;
        }
        for &e in mv.edges() {
            debug_assert!(self.single[e], "only isolated edges are reversible");
            self.in_degree[self.heads[e]] -= 1;
            self.in_degree[self.tails[e]] += 1;
            std::mem::swap(&mut self.tails[e], &mut self.heads[e]);
        }
    }
}

/// Orients `g`: star edges away from their centers, isolated edges by local
/// search from a seeded start.
///
/// An isolated edge starts out of the endpoint with the larger color degree.
/// Ties go to the lower vertex id when `seed == 0` and to a seeded coin flip
/// otherwise.
pub fn orient(
    g: &EdgeColoredGraph,
    decomposition: &StarDecomposition,
    seed: u64,
) -> Result<Orientation, StructureError> {
    if decomposition.edge_count() != g.m() {
        return Err(StructureError::DecompositionMismatch);
    }
    if !decomposition.is_star_forest() {
        return Err(StructureError::NotStarForest { violations: decomposition.violations.len() });
    }

    let profile = g.color_degree_profile();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tails = Vec::with_capacity(g.m());
    let mut single = Vec::with_capacity(g.m());
    for (i, e) in g.edges().iter().enumerate() {
        let tail = match decomposition.role(i) {
            EdgeRole::Star(s) => decomposition.stars[s].center,
            EdgeRole::Single => {
                let (du, dv) = (profile.degrees[e.u], profile.degrees[e.v]);
                if du != dv {
                    if du > dv { e.u } else { e.v }
                } else if seed == 0 || rng.gen_bool(0.5) {
                    e.u
                } else {
                    e.v
                }
            }
            EdgeRole::Violation => unreachable!(),
        };
        tails.push(tail);
        single.push(decomposition.is_single(i));
    }
    let heads: Vec<Vertex> = g.edges().iter().zip(&tails).map(|(e, &t)| e.other(t)).collect();

    let mut out_colors = vec![std::collections::HashSet::new(); g.n()];
    let mut in_degree = vec![0; g.n()];
    for (i, e) in g.edges().iter().enumerate() {
        out_colors[tails[i]].insert(e.color);
        in_degree[heads[i]] += 1;
    }
    let out_color_degree = out_colors.iter().map(|s| s.len()).collect();

    let mut o = Orientation { tails, heads, single, out_color_degree, in_degree, moves_applied: 0 };
    while let Some(mv) = o.improving_move(g) {
        o.apply(&mv);
        o.moves_applied += 1;
    }
    Ok(o)
}
