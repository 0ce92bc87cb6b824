use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use crate::error::{invalid, Error, Result};

/// A lattice point `(x, y)`.
pub type Vertex = (i32, i32);

const STEPS: [(i32, i32); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

/// A finite induced subgraph of the square lattice. Edges are implicit: two
/// vertices are adjacent iff they are at distance one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GridGraph {
    vertices: BTreeSet<Vertex>,
}

impl GridGraph {
    /// Rejects repeated vertices.
    pub fn new(vertices: impl IntoIterator<Item = Vertex>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for v in vertices {
            if !set.insert(v) {
                return Err(Error::Schema(format!("duplicate vertex ({}, {})", v.0, v.1)));
            }
        }
        Ok(GridGraph { vertices: set })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    /// Vertices sorted by `x`, then `y`.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices.iter().copied()
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        STEPS
            .iter()
            .map(move |&(dx, dy)| (v.0 + dx, v.1 + dy))
            .filter(|w| self.vertices.contains(w))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).count()
    }

    pub fn is_adjacent(a: Vertex, b: Vertex) -> bool {
        (a.0 - b.0).abs() + (a.1 - b.1).abs() == 1
    }

    /// Each edge once, with the smaller endpoint first.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for v in self.vertices() {
            for w in [(v.0 + 1, v.1), (v.0, v.1 + 1)] {
                if self.contains(w) {
                    out.push((v, w));
                }
            }
        }
        out
    }

    pub fn with_vertices(&self, extra: &[Vertex]) -> Result<Self> {
        GridGraph::new(self.vertices().chain(extra.iter().copied()))
    }

    /// Adjacency lists over the given vertex order.
    pub(crate) fn adjacency(&self, order: &[Vertex]) -> Vec<Vec<usize>> {
        order
            .iter()
            .map(|&a| {
                order
                    .iter()
                    .enumerate()
                    .filter(|&(_, &b)| GridGraph::is_adjacent(a, b))
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    vertices: Vec<Vertex>,
}

impl Serialize for GridGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphDoc {
            vertices: self.vertices().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GridGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = GraphDoc::deserialize(d)?;
        GridGraph::new(doc.vertices).map_err(serde::de::Error::custom)
    }
}

/// Parses `{"vertices":[[x,y],...]}`.
pub fn parse_grid_graph(document: &str) -> Result<GridGraph> {
    serde_json::from_str(document).map_err(|e| Error::Schema(e.to_string()))
}

/// A grid graph with two distinguished vertices that every Hamiltonian path
/// is promised to join.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PromiseGridInstance {
    pub graph: GridGraph,
    pub s: Vertex,
    pub t: Vertex,
}

impl PromiseGridInstance {
    pub fn new(graph: GridGraph, s: Vertex, t: Vertex) -> Result<Self> {
        if s == t {
            return Err(invalid("s and t must be distinct"));
        }
        for v in [s, t] {
            if !graph.contains(v) {
                return Err(invalid(format!("({}, {}) is not a vertex of the graph", v.0, v.1)));
            }
        }
        Ok(PromiseGridInstance { graph, s, t })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PromiseDoc {
    vertices: Vec<Vertex>,
    s: Vertex,
    t: Vertex,
}

impl Serialize for PromiseGridInstance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PromiseDoc {
            vertices: self.graph.vertices().collect(),
            s: self.s,
            t: self.t,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PromiseGridInstance {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = PromiseDoc::deserialize(d)?;
        GridGraph::new(doc.vertices)
            .and_then(|g| PromiseGridInstance::new(g, doc.s, doc.t))
            .map_err(serde::de::Error::custom)
    }
}

/// Attaches two pendant paths above the top-left corner so that Hamiltonian
/// cycles of `g` correspond to Hamiltonian paths between the new degree-one
/// vertices.
///
/// With `u` the leftmost vertex of the top row and `u' = u + (1, 0)`, the
/// added vertices are `a = u + (0, 1)`, `v = u + (-1, 1)`, `b = u' + (0, 1)`
/// and `v' = u' + (0, 2)`. Any Hamiltonian path must run
/// `v, a, u, ..., u', b, v'`.
pub fn cycle_to_path(g: &GridGraph) -> Result<PromiseGridInstance> {
    if g.is_empty() {
        return Err(invalid("graph has no vertices"));
    }
    if let Some(v) = g.vertices().find(|&v| g.degree(v) == 1) {
        return Err(invalid(format!("vertex ({}, {}) has degree 1", v.0, v.1)));
    }
    let top = g.vertices().map(|v| v.1).max().expect("nonempty");
    let u = g
        .vertices()
        .filter(|v| v.1 == top)
        .min()
        .expect("top row is nonempty");
    let u2 = (u.0 + 1, u.1);
    if !g.contains(u2) {
        return Err(invalid(format!(
            "top-left vertex ({}, {}) has no right neighbor",
            u.0, u.1
        )));
    }
    let a = (u.0, u.1 + 1);
    let v = (u.0 - 1, u.1 + 1);
    let b = (u2.0, u2.1 + 1);
    let v2 = (u2.0, u2.1 + 2);
    let graph = g.with_vertices(&[a, v, b, v2])?;
    PromiseGridInstance::new(graph, v, v2)
}
