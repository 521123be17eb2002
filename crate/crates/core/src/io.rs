//! Plain-text instance format.
//!
//! ```text
//! # optional comment lines
//! n m
//! u v c      (exactly m of these)
//! ```
//!
//! All fields are base-10 and space separated. Blank lines and lines starting
//! with `#` are skipped. The writer emits edges sorted by `(u, v)`.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::graph::{Color, Edge, EdgeColoredGraph, GraphError, Vertex};

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_fields<const N: usize>(line: usize, s: &str) -> Result<[u64; N], GraphError> {
    let mut out = [0u64; N];
    let mut it = s.split_whitespace();
    for slot in out.iter_mut() {
        let tok = it.next().ok_or_else(|| GraphError::Parse {
            line,
            message: format!("expected {N} fields, got `{s}`"),
        })?;
        *slot = tok.parse().map_err(|_| GraphError::Parse {
            line,
            message: format!("`{tok}` is not a non-negative integer"),
        })?;
    }
    if it.next().is_some() {
        return Err(GraphError::Parse { line, message: format!("expected {N} fields, got `{s}`") });
    }
    Ok(out)
}

fn to_vertex(line: usize, x: u64, n: usize) -> Result<Vertex, GraphError> {
    match usize::try_from(x) {
        Ok(v) if v < n => Ok(v),
        _ => Err(GraphError::VertexOutOfRange { vertex: x as usize, n, line: Some(line) }),
    }
}

/// Parses `u v c` edge lines, validating them against a vertex count.
fn parse_edges<'a>(
    lines: impl Iterator<Item = (usize, &'a str)>,
    n: usize,
) -> Result<Vec<Edge>, GraphError> {
    let mut seen = HashSet::new();
    let mut edges = Vec::new();
    for (line, s) in lines {
        let [u, v, c] = parse_fields::<3>(line, s)?;
        let (u, v) = (to_vertex(line, u, n)?, to_vertex(line, v, n)?);
        if u == v {
            return Err(GraphError::SelfLoop { vertex: u, line: Some(line) });
        }
        let e = Edge::new(u, v, c as Color);
        if !seen.insert((e.u, e.v)) {
            return Err(GraphError::DuplicatePair { u: e.u, v: e.v, line: Some(line) });
        }
        edges.push(e);
    }
    Ok(edges)
}

pub fn load_instance(text: &str) -> Result<EdgeColoredGraph, GraphError> {
    let mut lines = data_lines(text);
    let (line, header) = lines
        .next()
        .ok_or(GraphError::Parse { line: 1, message: "missing `n m` header".into() })?;
    let [n, m] = parse_fields::<2>(line, header)?;
    let n = usize::try_from(n).map_err(|_| GraphError::Parse { line, message: "n too large".into() })?;
    let m = m as usize;
    let rest: Vec<_> = lines.collect();
    if rest.len() != m {
        let line = rest.get(m).map(|(l, _)| *l).unwrap_or(line + rest.len() + 1);
        return Err(GraphError::Parse {
            line,
            message: format!("header declares {m} edges, found {}", rest.len()),
        });
    }
    let edges = parse_edges(rest.into_iter(), n)?;
    EdgeColoredGraph::new(n, edges)
}

pub fn save_instance(g: &EdgeColoredGraph) -> String {
    save_instance_with_comment(g, None)
}

/// Writes the instance, optionally preceded by one `#` comment line.
pub fn save_instance_with_comment(g: &EdgeColoredGraph, comment: Option<&str>) -> String {
    let mut out = String::with_capacity(16 + 12 * g.m());
    if let Some(c) = comment {
        for l in c.lines() {
            let _ = writeln!(out, "# {l}");
        }
    }
    let _ = writeln!(out, "{} {}", g.n(), g.m());
    for e in g.edges() {
        let _ = writeln!(out, "{} {} {}", e.u, e.v, e.color);
    }
    out
}

/// Parses a matching file: one `u v c` row per edge, `#` comments allowed.
///
/// Only the row syntax is checked here; membership in a host graph is the
/// job of [`crate::graph::check_rainbow_matching`].
pub fn load_edge_list(text: &str) -> Result<Vec<Edge>, GraphError> {
    let mut edges = Vec::new();
    for (line, s) in data_lines(text) {
        let [u, v, c] = parse_fields::<3>(line, s)?;
        if u == v {
            return Err(GraphError::SelfLoop { vertex: u as usize, line: Some(line) });
        }
        edges.push(Edge::new(u as usize, v as usize, c));
    }
    Ok(edges)
}
