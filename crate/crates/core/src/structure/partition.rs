use serde::Serialize;

use crate::graph::{Color, EdgeColoredGraph, Vertex};
use crate::structure::{Orientation, StarDecomposition};
use crate::weights::{ser_weight, Weight};

/// A maximal monochromatic star with its direction fixed: either a star of
/// the decomposition or a color-isolated edge, centered at its tail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonoStar {
    pub color: Color,
    pub center: Vertex,
    pub leaves: Vec<Vertex>,
    /// Edge indices, aligned with `leaves`.
    pub edges: Vec<usize>,
    /// Leaves that lie in `L`. The center never does.
    pub l_vertices: Vec<Vertex>,
}

impl MonoStar {
    pub fn is_single_edge(&self) -> bool {
        self.edges.len() == 1
    }
}

/// `C` (positive color outdegree), `L` (the rest), and the maximal stars
/// classified by how many `L` vertices they contain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexPartition {
    pub c: Vec<Vertex>,
    pub l: Vec<Vertex>,
    /// Stars with at least two vertices in `L`.
    pub s_star: Vec<MonoStar>,
    /// Stars (possibly single edges) with exactly one vertex in `L`.
    pub e0_star: Vec<MonoStar>,
    /// `|s_star| + |e0_star| / 2`.
    #[serde(serialize_with = "ser_weight")]
    pub case1_mass: Weight,
    #[serde(skip)]
    in_l: Vec<bool>,
}

impl VertexPartition {
    pub fn in_l(&self, v: Vertex) -> bool {
        self.in_l[v]
    }

    pub fn in_c(&self, v: Vertex) -> bool {
        !self.in_l[v]
    }

    pub fn n(&self) -> usize {
        self.in_l.len()
    }
}

/// All maximal monochromatic stars of an oriented star-forest graph.
pub fn maximal_stars(
    g: &EdgeColoredGraph,
    decomposition: &StarDecomposition,
    orientation: &Orientation,
) -> Vec<MonoStar> {
    let stars = decomposition.stars.iter().map(|s| MonoStar {
        color: s.color,
        center: s.center,
        leaves: s.leaves.clone(),
        edges: s.edges.clone(),
        l_vertices: Vec::new(),
    });
    let singles = decomposition.e0.iter().map(|&i| MonoStar {
        color: g.edge(i).color,
        center: orientation.tail(i),
        leaves: vec![orientation.head(i)],
        edges: vec![i],
        l_vertices: Vec::new(),
    });
    stars.chain(singles).collect()
}

pub fn partition(
    g: &EdgeColoredGraph,
    decomposition: &StarDecomposition,
    orientation: &Orientation,
) -> VertexPartition {
    let in_l: Vec<bool> = (0..g.n()).map(|v| orientation.out_color_degree(v) == 0).collect();
    let (l, c): (Vec<Vertex>, Vec<Vertex>) = (0..g.n()).partition(|&v| in_l[v]);

    let mut s_star = Vec::new();
    let mut e0_star = Vec::new();
    for mut star in maximal_stars(g, decomposition, orientation) {
        debug_assert!(!in_l[star.center]);
        star.l_vertices = star.leaves.iter().copied().filter(|&x| in_l[x]).collect();
        match star.l_vertices.len() {
            0 => {}
            1 => e0_star.push(star),
            _ => s_star.push(star),
        }
    }
    let case1_mass = Weight::from_integer(s_star.len() as i64) + Weight::new(e0_star.len() as i64, 2);
    VertexPartition { c, l, s_star, e0_star, case1_mass, in_l }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Case {
    Case1,
    Case2,
    Case3,
    NoCase,
}

/// Which case applies, with the quantities that decided it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseLabel {
    pub case: Case,
    pub n: usize,
    pub k: usize,
    #[serde(serialize_with = "ser_weight")]
    pub case1_mass: Weight,
    pub c_size: usize,
    pub l_size: usize,
}

impl CaseLabel {
    fn k_squared(&self) -> Weight {
        Weight::from_integer((self.k * self.k) as i64)
    }

    /// `|S*| + |E0*|/2 >= 5k^2/2`
    pub fn case1_holds(&self) -> bool {
        self.case1_mass >= self.k_squared() * Weight::new(5, 2)
    }

    /// `|C| >= 7k^2/4`
    pub fn case2_holds(&self) -> bool {
        Weight::from_integer(self.c_size as i64) >= self.k_squared() * Weight::new(7, 4)
    }

    /// `|L| > |S*| + |E0*|/2`
    pub fn case3_holds(&self) -> bool {
        Weight::from_integer(self.l_size as i64) > self.case1_mass
    }

    /// Every case whose inequality holds, in order.
    pub fn applicable(&self) -> Vec<Case> {
        [
            (Case::Case1, self.case1_holds()),
            (Case::Case2, self.case2_holds()),
            (Case::Case3, self.case3_holds()),
        ]
        .into_iter()
        .filter_map(|(c, ok)| ok.then_some(c))
        .collect()
    }

    /// `n > 17k^2/4`, the vertex-count hypothesis.
    pub fn hypothesis_holds(&self) -> bool {
        above_threshold(self.n, self.k)
    }
}

/// Is `n > 4.25 k^2`?
pub fn above_threshold(n: usize, k: usize) -> bool {
    4 * n as u128 > 17 * (k as u128) * (k as u128)
}

/// The smallest `n` with `n > 4.25 k^2`, i.e. `floor(4.25 k^2) + 1`.
pub fn threshold_n(k: usize) -> usize {
    17 * k * k / 4 + 1
}

/// Picks the first case whose inequality holds, or [`Case::NoCase`].
///
/// `NoCase` is returned rather than raised; with `n > 4.25 k^2` it cannot
/// occur since `|C| + |L| = n`.
pub fn classify_case(partition: &VertexPartition, n: usize, k: usize) -> CaseLabel {
    let mut label = CaseLabel {
        case: Case::NoCase,
        n,
        k,
        case1_mass: partition.case1_mass,
        c_size: partition.c.len(),
        l_size: partition.l.len(),
    };
    label.case = label.applicable().first().copied().unwrap_or(Case::NoCase);
    label
}
