//! Finite directed graphs and their incidence data.
//!
//! Vertex and edge order is part of a graph's value: it fixes the row and
//! column order of every matrix derived from it, and every such matrix
//! carries the corresponding id labels.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::intlin::IntMatrix;

mod moves;
mod predicates;

pub use predicates::{PisFailure, PisReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    DuplicateId(String),
    UnknownVertex(String),
    /// `source_eliminate` was asked to remove a vertex that is not a source,
    /// or is a sink.
    NotAnEliminableSource(String),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::DuplicateId(id) => write!(f, "duplicate id `{id}`"),
            GraphError::UnknownVertex(id) => write!(f, "unknown vertex `{id}`"),
            GraphError::NotAnEliminableSource(id) => {
                write!(f, "vertex `{id}` is not a source that emits edges")
            }
        }
    }
}

/// An edge, with endpoints given as vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    pub src: usize,
    pub dst: usize,
}

/// A finite directed graph `s, r: E¹ ⇉ E⁰`.
///
/// Vertex ids and edge ids share one namespace and are pairwise distinct.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

/// Sinks, sources, regular and singular vertices, as vertex indices in
/// graph order. For finite graphs the singular vertices are the sinks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexClassification {
    pub sinks: Vec<usize>,
    pub sources: Vec<usize>,
    pub regular: Vec<usize>,
    pub singular: Vec<usize>,
}

impl Graph {
    /// Builds a graph from vertex ids and `(edge id, source id, range id)`
    /// triples.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(GraphError::DuplicateId(v.clone()));
            }
        }
        let mut seen: BTreeSet<String> = BTreeSet::new();
        let mut out = Vec::new();
        for (id, s, r) in edges {
            if index.contains_key(&id) || !seen.insert(id.clone()) {
                return Err(GraphError::DuplicateId(id));
            }
            let src = *index.get(&s).ok_or(GraphError::UnknownVertex(s))?;
            let dst = *index.get(&r).ok_or(GraphError::UnknownVertex(r))?;
            out.push(Edge { id, src, dst });
        }
        Ok(Graph { vertices, edges: out })
    }

    /// Shorthand for tests and examples: `edges` as `(id, src, dst)` string
    /// slices.
    pub fn from_strs(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Self, GraphError> {
        Self::new(
            vertices.iter().copied(),
            edges.iter().map(|(e, s, r)| (String::from(*e), String::from(*s), String::from(*r))),
        )
    }

    /// Graph from index-based data; ids are assumed valid and distinct.
    pub(crate) fn from_parts(vertices: Vec<String>, edges: Vec<Edge>) -> Self {
        debug_assert!(edges.iter().all(|e| e.src < vertices.len() && e.dst < vertices.len()));
        Graph { vertices, edges }
    }

    /// The graph with one vertex and `n` loops `e1, …, en`.
    pub fn rose(n: usize) -> Self {
        let edges = (1..=n)
            .map(|i| Edge {
                id: alloc::format!("e{i}"),
                src: 0,
                dst: 0,
            })
            .collect();
        Graph::from_parts(alloc::vec![String::from("v")], edges)
    }

    /// Builds a graph on vertices `v0, v1, …` from a square matrix of edge
    /// multiplicities; edges are named `e<i>_<j>_<k>`.
    pub fn from_adjacency(a: &[Vec<u32>]) -> Self {
        let n = a.len();
        let vertices = (0..n).map(|i| alloc::format!("v{i}")).collect();
        let mut edges = Vec::new();
        for (i, row) in a.iter().enumerate() {
            assert_eq!(row.len(), n, "adjacency matrix must be square");
            for (j, &k) in row.iter().enumerate() {
                for c in 0..k {
                    edges.push(Edge {
                        id: alloc::format!("e{i}_{j}_{c}"),
                        src: i,
                        dst: j,
                    });
                }
            }
        }
        Graph::from_parts(vertices, edges)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    /// Whether `id` is used by a vertex or an edge.
    pub fn has_id(&self, id: &str) -> bool {
        self.vertex_index(id).is_some() || self.edge_index(id).is_some()
    }

    /// Indices of the edges emitted by `v`, in edge order.
    pub fn out_edges(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].src == v).collect()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.src == v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.dst == v).count()
    }

    pub fn classify_vertices(&self) -> VertexClassification {
        let n = self.num_vertices();
        let sinks: Vec<usize> = (0..n).filter(|&v| self.out_degree(v) == 0).collect();
        let sources = (0..n).filter(|&v| self.in_degree(v) == 0).collect();
        let regular = (0..n).filter(|&v| self.out_degree(v) > 0).collect();
        VertexClassification {
            singular: sinks.clone(),
            sinks,
            sources,
            regular,
        }
    }

    pub fn regular_vertices(&self) -> Vec<usize> {
        (0..self.num_vertices()).filter(|&v| self.out_degree(v) > 0).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.num_vertices()).filter(|&v| self.out_degree(v) == 0).collect()
    }

    /// No sinks.
    pub fn is_regular(&self) -> bool {
        (0..self.num_vertices()).all(|v| self.out_degree(v) > 0)
    }

    /// No sinks and no sources.
    pub fn is_essential(&self) -> bool {
        (0..self.num_vertices()).all(|v| self.out_degree(v) > 0 && self.in_degree(v) > 0)
    }

    fn labels(&self, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|&i| self.vertices[i].clone()).collect()
    }

    /// Edge multiplicity matrix over all vertices, `E⁰ × E⁰`, unlabeled.
    pub fn adjacency_matrix(&self) -> IntMatrix {
        let n = self.num_vertices();
        let mut a = IntMatrix::zeros(n, n);
        for e in &self.edges {
            a[(e.src, e.dst)] += 1;
        }
        a
    }

    /// Reduced incidence matrix `A_E`: rows are the regular vertices,
    /// columns all vertices, entry `(v, w)` the number of edges `v → w`.
    pub fn incidence_matrix(&self) -> IntMatrix {
        let reg = self.regular_vertices();
        let mut pos = alloc::vec![usize::MAX; self.num_vertices()];
        for (r, &v) in reg.iter().enumerate() {
            pos[v] = r;
        }
        let mut a = IntMatrix::zeros(reg.len(), self.num_vertices());
        for e in &self.edges {
            a[(pos[e.src], e.dst)] += 1;
        }
        a.with_labels(Some(self.labels(&reg)), Some(self.vertices.clone()))
    }

    /// `I − A_Eᵗ`, rows indexed by `E⁰`, columns by the regular vertices;
    /// `I` is the identity with the singular columns removed.
    pub fn bf_matrix(&self) -> IntMatrix {
        let reg = self.regular_vertices();
        let mut m = self.incidence_matrix().transpose().neg();
        for (c, &v) in reg.iter().enumerate() {
            m[(v, c)] += BigInt::from(1);
        }
        m
    }

    /// `Iᵗ − A_E`, rows indexed by the regular vertices, columns by `E⁰`.
    pub fn bf_dual_matrix(&self) -> IntMatrix {
        self.bf_matrix().transpose()
    }

    /// Graphs with identical vertex and edge ids and the same endpoints for
    /// each edge id, regardless of order.
    pub fn same_ids_as(&self, other: &Graph) -> bool {
        let vs: BTreeSet<&String> = self.vertices.iter().collect();
        let ws: BTreeSet<&String> = other.vertices.iter().collect();
        if vs != ws || self.edges.len() != other.edges.len() {
            return false;
        }
        let es: BTreeMap<&str, (&str, &str)> = self
            .edges
            .iter()
            .map(|e| (e.id.as_str(), (self.vertices[e.src].as_str(), self.vertices[e.dst].as_str())))
            .collect();
        other.edges.iter().all(|e| {
            es.get(e.id.as_str())
                == Some(&(other.vertices[e.src].as_str(), other.vertices[e.dst].as_str()))
        })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph {{ vertices: {:?}, edges: [", self.vertices)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}: {} -> {}", e.id, self.vertices[e.src], self.vertices[e.dst])?;
        }
        write!(f, "] }}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn upsilon() -> Graph {
        Graph::from_strs(&["v1", "v2"], &[("l", "v1", "v1"), ("a", "v1", "v2"), ("b", "v2", "v1")]).unwrap()
    }

    #[test]
    fn rejects_bad_ids() {
        assert_eq!(
            Graph::from_strs(&["v", "v"], &[]).unwrap_err(),
            GraphError::DuplicateId("v".into())
        );
        assert_eq!(
            Graph::from_strs(&["v"], &[("v", "v", "v")]).unwrap_err(),
            GraphError::DuplicateId("v".into())
        );
        assert_eq!(
            Graph::from_strs(&["v"], &[("e", "v", "w")]).unwrap_err(),
            GraphError::UnknownVertex("w".into())
        );
    }

    #[test]
    fn classification() {
        let c = Graph::rose(2).classify_vertices();
        assert!(c.sinks.is_empty());
        assert_eq!(c.regular, [0]);

        let c = Graph::from_strs(&["v"], &[]).unwrap().classify_vertices();
        assert_eq!(c.sinks, [0]);
        assert_eq!(c.sources, [0]);
        assert_eq!(c.singular, [0]);

        let c = upsilon().classify_vertices();
        assert!(c.sinks.is_empty() && c.sources.is_empty());
    }

    #[test]
    fn incidence_matrices() {
        assert_eq!(Graph::rose(2).incidence_matrix(), IntMatrix::from_rows(&[[2]]).with_labels(
            Some(alloc::vec!["v".into()]),
            Some(alloc::vec!["v".into()])
        ));
        assert_eq!(upsilon().incidence_matrix().without_labels(), IntMatrix::from_rows(&[[1, 1], [1, 0]]));
        let g = Graph::from_adjacency(&[alloc::vec![1, 3], alloc::vec![1, 1]]);
        assert_eq!(g.incidence_matrix().without_labels(), IntMatrix::from_rows(&[[1, 3], [1, 1]]));
    }

    #[test]
    fn bf_matrices() {
        assert_eq!(Graph::rose(2).bf_matrix().without_labels(), IntMatrix::from_rows(&[[-1]]));
        assert_eq!(upsilon().bf_matrix().without_labels(), IntMatrix::from_rows(&[[0, -1], [-1, 1]]));
        let sink = Graph::from_strs(&["v"], &[]).unwrap().bf_matrix();
        assert_eq!(sink.shape(), (1, 0));
    }

    #[test]
    fn bf_matrix_columns_are_regular_vertices() {
        let g = Graph::from_strs(&["a", "b", "c"], &[("x", "a", "a"), ("y", "a", "b"), ("z", "a", "b"), ("w", "c", "c"), ("u", "c", "c")])
            .unwrap();
        let m = g.bf_matrix();
        assert_eq!(m.col_labels().unwrap(), ["a", "c"]);
        assert_eq!(m[(0, 0)], BigInt::from(0));
        assert_eq!(m[(2, 1)], BigInt::from(-1));
        assert_eq!(m[(1, 0)], BigInt::from(-2));
    }
}
