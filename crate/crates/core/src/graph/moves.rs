//! Graph moves: source elimination, out-splitting, duals, the Cuntz splice,
//! the double cover and the square graph.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::intlin::IntMatrix;

use super::{Edge, Graph, GraphError};

/// Hands out ids unused so far, priming with a suffix when the natural
/// choice is taken.
struct IdPool(BTreeSet<String>);

impl IdPool {
    fn new() -> Self {
        IdPool(BTreeSet::new())
    }

    fn of(g: &Graph) -> Self {
        let mut pool = IdPool::new();
        pool.0.extend(g.vertices().iter().cloned());
        pool.0.extend(g.edges().iter().map(|e| e.id.clone()));
        pool
    }

    fn fresh(&mut self, base: String) -> String {
        let mut id = base;
        while self.0.contains(&id) {
            id.push('\'');
        }
        self.0.insert(id.clone());
        id
    }
}

impl Graph {
    /// Removes the source `v` and the edges it emits.
    pub fn source_eliminate(&self, v: &str) -> Result<Graph, GraphError> {
        let vi = self.vertex_index(v).ok_or_else(|| GraphError::UnknownVertex(v.into()))?;
        if self.in_degree(vi) != 0 || self.out_degree(vi) == 0 {
            return Err(GraphError::NotAnEliminableSource(v.into()));
        }
        let shift = |w: usize| if w > vi { w - 1 } else { w };
        let vertices = self.vertices().iter().enumerate().filter(|&(i, _)| i != vi).map(|(_, v)| v.clone()).collect();
        let edges = self
            .edges()
            .iter()
            .filter(|e| e.src != vi)
            .map(|e| Edge { id: e.id.clone(), src: shift(e.src), dst: shift(e.dst) })
            .collect();
        Ok(Graph::from_parts(vertices, edges))
    }

    /// The matrices `B` (rows `E¹`, columns `E¹ ⊔ sink(E)`) and `J`
    /// (rows `E¹ ⊔ sink(E)`, columns `E¹`) with `coker(J − Bᵗ) ≅ BF(E)`.
    ///
    /// `B` has a one at `(e, x)` when `x` is an edge starting at `r(e)` or
    /// the sink `r(e)`. `J` is the identity on `E¹` and vanishes on sinks,
    /// so that `J − Bᵗ` is the Bowen–Franks matrix of the out-split graph.
    pub fn out_split_matrices(&self) -> (IntMatrix, IntMatrix) {
        let sinks = self.sinks();
        let m = self.num_edges();
        let cols = m + sinks.len();
        let mut b = IntMatrix::zeros(m, cols);
        let mut j = IntMatrix::zeros(cols, m);
        for (ei, e) in self.edges().iter().enumerate() {
            for (xi, x) in self.edges().iter().enumerate() {
                if e.dst == x.src {
                    b[(ei, xi)] += 1;
                }
            }
            if let Some(k) = sinks.iter().position(|&s| s == e.dst) {
                b[(ei, m + k)] += 1;
            }
            j[(ei, ei)] += 1;
        }
        let edge_ids: Vec<String> = self.edges().iter().map(|e| e.id.clone()).collect();
        let mut col_ids = edge_ids.clone();
        col_ids.extend(sinks.iter().map(|&s| self.vertices()[s].clone()));
        (
            b.with_labels(Some(edge_ids.clone()), Some(col_ids.clone())),
            j.with_labels(Some(col_ids), Some(edge_ids)),
        )
    }

    /// The out-split graph: vertices `E¹ ⊔ sink(E)` (named by the old ids)
    /// and one edge `e → x` for each one of `B`, named `e.x`.
    pub fn out_split_graph(&self) -> Graph {
        let (b, _) = self.out_split_matrices();
        let mut vertices: Vec<String> = self.edges().iter().map(|e| e.id.clone()).collect();
        vertices.extend(self.sinks().into_iter().map(|s| self.vertices()[s].clone()));
        let mut pool = IdPool::new();
        pool.0.extend(vertices.iter().cloned());
        let mut edges = Vec::new();
        for r in 0..b.rows() {
            for c in 0..b.cols() {
                if b[(r, c)] != 0.into() {
                    let id = pool.fresh(format!("{}.{}", vertices[r], vertices[c]));
                    edges.push(Edge { id, src: r, dst: c });
                }
            }
        }
        Graph::from_parts(vertices, edges)
    }

    /// Same ids with source and range swapped.
    pub fn dual_graph(&self) -> Graph {
        let edges = self
            .edges()
            .iter()
            .map(|e| Edge { id: e.id.clone(), src: e.dst, dst: e.src })
            .collect();
        Graph::from_parts(self.vertices().to_vec(), edges)
    }

    /// Attaches vertices `v#1`, `v#2` and the edges `v → v#1`, `v#1 → v`,
    /// `v#1 → v#1`, `v#1 → v#2`, `v#2 → v#1`, `v#2 → v#2`, named
    /// `v#e1` through `v#e6`.
    pub fn cuntz_splice(&self, v: &str) -> Result<Graph, GraphError> {
        let vi = self.vertex_index(v).ok_or_else(|| GraphError::UnknownVertex(v.into()))?;
        let mut pool = IdPool::of(self);
        let mut vertices = self.vertices().to_vec();
        let v1 = vertices.len();
        let v2 = v1 + 1;
        vertices.push(pool.fresh(format!("{v}#1")));
        vertices.push(pool.fresh(format!("{v}#2")));
        let mut edges = self.edges().to_vec();
        for (k, (src, dst)) in [(vi, v1), (v1, vi), (v1, v1), (v1, v2), (v2, v1), (v2, v2)].into_iter().enumerate() {
            let id = pool.fresh(format!("{v}#e{}", k + 1));
            edges.push(Edge { id, src, dst });
        }
        Ok(Graph::from_parts(vertices, edges))
    }

    /// The double cover `Ê`: vertices `v@0` for all `v`, then `v@1`; edges
    /// `e@i` from `s(e)@i` to `r(e)@(i+1)`.
    pub fn double_cover(&self) -> Graph {
        let n = self.num_vertices();
        let mut pool = IdPool::new();
        let mut vertices = Vec::with_capacity(2 * n);
        for level in 0..2 {
            for v in self.vertices() {
                vertices.push(pool.fresh(format!("{v}@{level}")));
            }
        }
        let mut edges = Vec::with_capacity(2 * self.num_edges());
        for level in 0..2 {
            for e in self.edges() {
                let id = pool.fresh(format!("{}@{level}", e.id));
                edges.push(Edge {
                    id,
                    src: e.src + level * n,
                    dst: e.dst + (1 - level) * n,
                });
            }
        }
        Graph::from_parts(vertices, edges)
    }

    /// The graph with the same vertices whose edges are the paths of length
    /// two, `ef` named `e.f`.
    pub fn square_graph(&self) -> Graph {
        let mut pool = IdPool::new();
        pool.0.extend(self.vertices().iter().cloned());
        let mut edges = Vec::new();
        for e in self.edges() {
            for f in self.edges().iter().filter(|f| f.src == e.dst) {
                let id = pool.fresh(format!("{}.{}", e.id, f.id));
                edges.push(Edge { id, src: e.src, dst: f.dst });
            }
        }
        Graph::from_parts(self.vertices().to_vec(), edges)
    }
}
