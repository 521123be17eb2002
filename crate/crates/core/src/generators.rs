//! Instance generators: cyclic Latin-square colorings of `K_{n,n}`,
//! round-robin 1-factorizations of `K_{2m}`, and seeded random ensembles
//! repaired up to a minimum color degree.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Color, Edge, EdgeColoredGraph, Vertex};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("cannot raise vertex {vertex} to color degree {k}: no free partner")]
    Infeasible { vertex: Vertex, k: usize },
}

/// `K_{n,n}` with rows `0..n`, columns `n..2n`, and edge `(i, n+j)` colored
/// `(i + j) mod n`: the addition table of `Z_n`.
pub fn gen_cayley(n: usize) -> Result<EdgeColoredGraph, GenError> {
    if n == 0 {
        return Err(GenError::Invalid("cayley needs n >= 1".into()));
    }
    let edges = (0..n).flat_map(|i| (0..n).map(move |j| Edge::new(i, n + j, ((i + j) % n) as Color)));
    Ok(EdgeColoredGraph::new(2 * n, edges).expect("cayley graph is simple"))
}

/// `K_{2m}` properly colored with `2m - 1` colors by the circle method:
/// vertex `2m-1` stays fixed, color `r` pairs it with `r` and pairs
/// `r + i` with `r - i` (mod `2m-1`) for `i = 1..m`.
pub fn gen_onefactorization(m: usize) -> Result<EdgeColoredGraph, GenError> {
    if m < 2 {
        return Err(GenError::Invalid("onefactorization needs m >= 2".into()));
    }
    let rot = 2 * m - 1;
    let mut edges = Vec::with_capacity(m * rot);
    for r in 0..rot {
        edges.push(Edge::new(r, rot, r as Color));
        for i in 1..m {
            edges.push(Edge::new((r + i) % rot, (r + rot - i) % rot, r as Color));
        }
    }
    Ok(EdgeColoredGraph::new(2 * m, edges).expect("round robin is simple"))
}

fn check_random(n: usize, k: usize, p: f64) -> Result<(), GenError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GenError::Invalid(format!("edge probability {p} outside [0, 1]")));
    }
    if n <= k {
        // Color degree is at most n - 1.
        return Err(GenError::Infeasible { vertex: 0, k });
    }
    Ok(())
}

/// Growing edge set with per-vertex adjacency and color sets.
struct Builder {
    adj: Vec<Vec<bool>>,
    colors: Vec<BTreeSet<Color>>,
    edges: Vec<Edge>,
}

impl Builder {
    fn new(n: usize) -> Self {
        Builder { adj: vec![vec![false; n]; n], colors: vec![BTreeSet::new(); n], edges: Vec::new() }
    }

    fn add(&mut self, u: Vertex, v: Vertex, c: Color) {
        self.adj[u][v] = true;
        self.adj[v][u] = true;
        self.colors[u].insert(c);
        self.colors[v].insert(c);
        self.edges.push(Edge::new(u, v, c));
    }

    fn non_neighbors(&self, v: Vertex) -> Vec<Vertex> {
        (0..self.adj.len()).filter(|&u| u != v && !self.adj[v][u]).collect()
    }

    fn deficient(&self, k: usize) -> Option<Vertex> {
        self.colors.iter().position(|s| s.len() < k)
    }

    fn smallest_free(&self, u: Vertex, v: Vertex) -> Color {
        (0..).find(|c| !self.colors[u].contains(c) && !self.colors[v].contains(c)).unwrap()
    }

    fn finish(self) -> EdgeColoredGraph {
        let n = self.adj.len();
        EdgeColoredGraph::new(n, self.edges).expect("builder keeps the graph simple")
    }
}

/// `G(n, p)` with colors drawn uniformly from `0..q`, then repaired until
/// every vertex sees at least `k` colors.
///
/// Repair takes the lowest deficient vertex, joins it to a uniformly chosen
/// non-neighbor, and colors the new edge uniformly among colors missing at
/// both ends, or at the deficient end if none is missing at both.
pub fn gen_random_mindeg(n: usize, k: usize, q: usize, p: f64, seed: u64) -> Result<EdgeColoredGraph, GenError> {
    check_random(n, k, p)?;
    if q < k {
        return Err(GenError::Invalid(format!("q = {q} colors cannot give color degree {k}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = Builder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                let c = rng.gen_range(0..q) as Color;
                b.add(u, v, c);
            }
        }
    }
    while let Some(v) = b.deficient(k) {
        let &u = b.non_neighbors(v).choose(&mut rng).ok_or(GenError::Infeasible { vertex: v, k })?;
        let missing: Vec<Color> = (0..q as Color).filter(|c| !b.colors[v].contains(c)).collect();
        let both: Vec<Color> = missing.iter().copied().filter(|c| !b.colors[u].contains(c)).collect();
        let pool = if both.is_empty() { &missing } else { &both };
        let &c = pool.choose(&mut rng).expect("v misses at least one of q >= k colors");
        b.add(u, v, c);
    }
    Ok(b.finish())
}

/// `G(n, p)` greedily properly colored in edge order (smallest color free
/// at both ends), then repaired with properly colored edges until every
/// vertex has degree at least `k`.
pub fn gen_proper_random(n: usize, k: usize, p: f64, seed: u64) -> Result<EdgeColoredGraph, GenError> {
    check_random(n, k, p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = Builder::new(n);
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                pairs.push((u, v));
            }
        }
    }
    for (u, v) in pairs {
        let c = b.smallest_free(u, v);
        b.add(u, v, c);
    }
    while let Some(v) = b.deficient(k) {
        let &u = b.non_neighbors(v).choose(&mut rng).ok_or(GenError::Infeasible { vertex: v, k })?;
        let c = b.smallest_free(u, v);
        b.add(u, v, c);
    }
    Ok(b.finish())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Cayley,
    Onefactorization,
    Random,
    ProperRandom,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Cayley => "cayley",
            Family::Onefactorization => "onefactorization",
            Family::Random => "random",
            Family::ProperRandom => "proper-random",
        })
    }
}

/// A generator family with its parameters.
///
/// `n` is the family's size parameter: the side of `K_{n,n}` for `cayley`,
/// the half order `m` for `onefactorization`, and the vertex count otherwise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    pub k: usize,
    pub q: usize,
    pub p: f64,
    pub seed: u64,
}

impl GenSpec {
    pub fn generate(&self) -> Result<EdgeColoredGraph, GenError> {
        match self.family {
            Family::Cayley => gen_cayley(self.n),
            Family::Onefactorization => gen_onefactorization(self.n),
            Family::Random => gen_random_mindeg(self.n, self.k, self.q, self.p, self.seed),
            Family::ProperRandom => gen_proper_random(self.n, self.k, self.p, self.seed),
        }
    }

    /// One-line provenance record for instance file comments.
    pub fn describe(&self) -> String {
        match self.family {
            Family::Cayley | Family::Onefactorization => format!("gen family={} n={}", self.family, self.n),
            Family::Random => format!(
                "gen family=random n={} k={} q={} p={} seed={}",
                self.n, self.k, self.q, self.p, self.seed
            ),
            Family::ProperRandom => {
                format!("gen family=proper-random n={} k={} p={} seed={}", self.n, self.k, self.p, self.seed)
            }
        }
    }
}
