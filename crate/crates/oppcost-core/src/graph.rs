//! Undirected weighted graphs with labeled vertices: edge-list parsing,
//! exhaustive simple-path enumeration, and path utilities.
//!
//! This is the arena shared by the path-analysis and spanning-tree modules.
//! Graphs are immutable after construction and all operations here are pure,
//! so values can be shared freely across threads.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Default ceiling on vertex count for exhaustive path enumeration.
///
/// Enumerating simple paths is exponential in the worst case; the cap turns a
/// silent blowup into an explicit [`GraphError::TooLarge`].
pub const DEFAULT_VERTEX_CAP: usize = 15;

/// An undirected edge with a non-negative utility weight.
///
/// Endpoints are stored canonically with `u < v` (lexicographically).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Edge {
    pub u: String,
    pub v: String,
    pub weight: f64,
}

impl Edge {
    /// Whether this edge joins `a` and `b` (in either order).
    pub fn joins(&self, a: &str, b: &str) -> bool {
        (self.u == a && self.v == b) || (self.u == b && self.v == a)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// A simple path through a graph together with its exact utility
/// (the sum of traversed edge weights).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathRecord {
    pub vertices: Vec<String>,
    pub utility: f64,
}

impl PathRecord {
    /// First edge of the path as `(from, to)`, or `None` for a zero-length path.
    pub fn first_edge(&self) -> Option<(&str, &str)> {
        match self.vertices.as_slice() {
            [a, b, ..] => Some((a, b)),
            _ => None,
        }
    }
}

impl fmt::Display for PathRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.vertices.join("-"))
    }
}

/// Errors from graph construction, parsing, and path operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid edge: {0}")]
    InvalidEdge(String),
    #[error("vertex {0:?} is not in the graph")]
    UnknownVertex(String),
    #[error(
        "graph has {vertices} vertices, above the cap of {cap}: \
         instance too large for exhaustive enumeration"
    )]
    TooLarge { vertices: usize, cap: usize },
    #[error("no edge joins {from:?} and {to:?}")]
    MissingEdge { from: String, to: String },
    #[error("vertex {0:?} repeats; not a simple path")]
    RepeatedVertex(String),
    #[error("empty vertex sequence is not a path")]
    EmptyPath,
}

/// An undirected graph with string-labeled vertices and weighted edges.
///
/// Invariants enforced at construction: no self-loops, at most one edge per
/// unordered vertex pair, all weights finite and non-negative, and every edge
/// endpoint present in the vertex set.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    adjacency: BTreeMap<String, Vec<(String, f64)>>,
}

impl Graph {
    /// Builds a graph from `(u, v, weight)` triples.
    pub fn from_edges<I, S>(edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (S, S, f64)>,
        S: Into<String>,
    {
        let mut builder = Builder::default();
        for (u, v, w) in edges {
            builder
                .add_edge(&u.into(), &v.into(), w)
                .map_err(GraphError::InvalidEdge)?;
        }
        Ok(builder.build())
    }

    /// Parses the edge-list text format.
    ///
    /// Each non-empty, non-comment line is either `<vertex> <vertex> <weight>`
    /// or a lone `<vertex>` declaring an isolated vertex. `#` starts a comment
    /// that runs to end of line. Errors name the offending 1-based line.
    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        let mut builder = Builder::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            match tokens.as_slice() {
                [label] => builder.add_vertex(label),
                [u, v, w] => {
                    let weight: f64 = w.parse().map_err(|_| GraphError::Parse {
                        line,
                        message: format!("invalid weight {w:?}"),
                    })?;
                    builder
                        .add_edge(u, v, weight)
                        .map_err(|message| GraphError::Parse { line, message })?;
                }
                _ => {
                    return Err(GraphError::Parse {
                        line,
                        message: format!(
                            "expected \"<vertex> <vertex> <weight>\" or \"<vertex>\", got {content:?}"
                        ),
                    })
                }
            }
        }
        Ok(builder.build())
    }

    /// Serializes back to the edge-list text format.
    ///
    /// Parsing the result reproduces this graph exactly.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let mut covered: BTreeSet<&str> = BTreeSet::new();
        for e in &self.edges {
            out.push_str(&format!("{} {} {}\n", e.u, e.v, e.weight));
            covered.insert(&e.u);
            covered.insert(&e.v);
        }
        for v in &self.vertices {
            if !covered.contains(v.as_str()) {
                out.push_str(v);
                out.push('\n');
            }
        }
        out
    }

    /// Vertex labels in sorted order.
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// Edges in canonical order (sorted by endpoint pair).
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_vertex(&self, label: &str) -> bool {
        self.adjacency.contains_key(label)
    }

    /// Neighbors of `label` with edge weights, sorted by neighbor label.
    /// Empty for unknown or isolated vertices.
    pub fn neighbors(&self, label: &str) -> &[(String, f64)] {
        self.adjacency.get(label).map_or(&[], Vec::as_slice)
    }

    /// Weight of the edge joining `a` and `b`, if present.
    pub fn edge_weight(&self, a: &str, b: &str) -> Option<f64> {
        self.neighbors(a)
            .iter()
            .find(|(n, _)| n == b)
            .map(|&(_, w)| w)
    }

    pub fn is_connected(&self) -> bool {
        self.disconnected_pair().is_none()
    }

    /// Two vertices in different components, if the graph is disconnected.
    ///
    /// A graph with zero or one vertex counts as connected.
    pub fn disconnected_pair(&self) -> Option<(String, String)> {
        let start = self.vertices.first()?;
        let mut seen: BTreeSet<&str> = BTreeSet::new();
        let mut stack = vec![start.as_str()];
        seen.insert(start);
        while let Some(v) = stack.pop() {
            for (n, _) in self.neighbors(v) {
                if seen.insert(n) {
                    stack.push(n);
                }
            }
        }
        self.vertices
            .iter()
            .find(|v| !seen.contains(v.as_str()))
            .map(|v| (start.clone(), v.clone()))
    }

    fn check_vertex(&self, label: &str) -> Result<(), GraphError> {
        if self.contains_vertex(label) {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(label.to_string()))
        }
    }
}

#[derive(Default)]
struct Builder {
    vertices: BTreeSet<String>,
    edges: BTreeMap<(String, String), f64>,
}

impl Builder {
    fn add_vertex(&mut self, label: &str) {
        self.vertices.insert(label.to_string());
    }

    fn add_edge(&mut self, u: &str, v: &str, weight: f64) -> Result<(), String> {
        if u == v {
            return Err(format!("self-loop {u}-{v}"));
        }
        if !weight.is_finite() {
            return Err(format!("weight {weight} is not finite"));
        }
        if weight < 0.0 {
            return Err(format!("negative weight {weight} on edge {u}-{v}"));
        }
        let key = if u < v {
            (u.to_string(), v.to_string())
        } else {
            (v.to_string(), u.to_string())
        };
        if self.edges.contains_key(&key) {
            return Err(format!("duplicate edge {}-{}", key.0, key.1));
        }
        self.vertices.insert(u.to_string());
        self.vertices.insert(v.to_string());
        self.edges.insert(key, weight);
        Ok(())
    }

    fn build(self) -> Graph {
        let vertices: Vec<String> = self.vertices.into_iter().collect();
        let edges: Vec<Edge> = self
            .edges
            .into_iter()
            .map(|((u, v), weight)| Edge { u, v, weight })
            .collect();
        let mut adjacency: BTreeMap<String, Vec<(String, f64)>> = vertices
            .iter()
            .map(|v| (v.clone(), Vec::new()))
            .collect();
        for e in &edges {
            adjacency
                .get_mut(&e.u)
                .unwrap()
                .push((e.v.clone(), e.weight));
            adjacency
                .get_mut(&e.v)
                .unwrap()
                .push((e.u.clone(), e.weight));
        }
        for list in adjacency.values_mut() {
            list.sort_by(|a, b| a.0.cmp(&b.0));
        }
        Graph {
            vertices,
            edges,
            adjacency,
        }
    }
}

/// Enumerates every simple path from `source` to `target`, with exact
/// utilities, in lexicographic order of the vertex sequence.
///
/// `source == target` yields the single zero-length path with utility 0;
/// vertices in different components yield an empty list. Graphs with more
/// than `vertex_cap` vertices are rejected rather than enumerated.
pub fn enumerate_simple_paths(
    g: &Graph,
    source: &str,
    target: &str,
    vertex_cap: usize,
) -> Result<Vec<PathRecord>, GraphError> {
    g.check_vertex(source)?;
    g.check_vertex(target)?;
    if g.vertex_count() > vertex_cap {
        return Err(GraphError::TooLarge {
            vertices: g.vertex_count(),
            cap: vertex_cap,
        });
    }
    if source == target {
        return Ok(vec![PathRecord {
            vertices: vec![source.to_string()],
            utility: 0.0,
        }]);
    }

    // Iterative depth-first walk; neighbor lists are sorted, so paths come
    // out in lexicographic order of vertex sequence.
    let mut paths = Vec::new();
    let mut trail: Vec<&str> = vec![source];
    let mut on_trail: BTreeSet<&str> = BTreeSet::from([source]);
    let mut utilities: Vec<f64> = vec![0.0];
    let mut pending = vec![g.neighbors(source).iter()];

    while let Some(neighbors) = pending.last_mut() {
        if let Some((next, weight)) = neighbors.next() {
            if on_trail.contains(next.as_str()) {
                continue;
            }
            let utility = utilities.last().unwrap() + weight;
            if next == target {
                let mut vertices: Vec<String> = trail.iter().map(|s| s.to_string()).collect();
                vertices.push(next.clone());
                paths.push(PathRecord { vertices, utility });
            } else {
                trail.push(next);
                on_trail.insert(next);
                utilities.push(utility);
                pending.push(g.neighbors(next).iter());
            }
        } else {
            pending.pop();
            utilities.pop();
            if let Some(v) = trail.pop() {
                on_trail.remove(v);
            }
        }
    }
    Ok(paths)
}

/// Sum of edge weights along a vertex sequence that must form a simple path.
pub fn path_utility<S: AsRef<str>>(g: &Graph, vertices: &[S]) -> Result<f64, GraphError> {
    if vertices.is_empty() {
        return Err(GraphError::EmptyPath);
    }
    let mut seen: BTreeSet<&str> = BTreeSet::new();
    for v in vertices {
        let v = v.as_ref();
        g.check_vertex(v)?;
        if !seen.insert(v) {
            return Err(GraphError::RepeatedVertex(v.to_string()));
        }
    }
    let mut total = 0.0;
    for pair in vertices.windows(2) {
        let (from, to) = (pair[0].as_ref(), pair[1].as_ref());
        total += g
            .edge_weight(from, to)
            .ok_or_else(|| GraphError::MissingEdge {
                from: from.to_string(),
                to: to.to_string(),
            })?;
    }
    Ok(total)
}
