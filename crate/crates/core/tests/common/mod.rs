#![allow(dead_code)]

use leavitt_core::terms::{Monomial, Path, PathAlgebra, PathVector, Term};
use leavitt_core::{BigInt, Graph, IntMatrix};
use rand::Rng;

pub fn upsilon() -> Graph {
    Graph::from_strs(&["v1", "v2"], &[("l", "v1", "v1"), ("a", "v1", "v2"), ("b", "v2", "v1")]).unwrap()
}

/// Adjacency `[[1, 3], [1, 1]]`.
pub fn remark_graph() -> Graph {
    Graph::from_adjacency(&[vec![1, 3], vec![1, 1]])
}

pub fn r2_minus() -> Graph {
    Graph::rose(2).cuntz_splice("v").unwrap()
}

pub fn random_graph<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> Graph {
    let n = rng.gen_range(1..=max_vertices);
    let mut a = vec![vec![0u32; n]; n];
    for _ in 0..rng.gen_range(0..=max_edges) {
        a[rng.gen_range(0..n)][rng.gen_range(0..n)] += 1;
    }
    Graph::from_adjacency(&a)
}

/// A graph whose adjacency entries lie in `0..=max_entry`, every row nonzero.
pub fn random_regular_graph<R: Rng>(rng: &mut R, max_vertices: usize, max_entry: u32) -> Graph {
    let n = rng.gen_range(1..=max_vertices);
    let mut a = vec![vec![0u32; n]; n];
    for row in a.iter_mut() {
        while row.iter().all(|&x| x == 0) {
            for x in row.iter_mut() {
                *x = rng.gen_range(0..=max_entry);
            }
        }
    }
    Graph::from_adjacency(&a)
}

pub fn random_matrix<R: Rng>(rng: &mut R, max_dim: usize, bound: i64) -> IntMatrix {
    let (r, c) = (rng.gen_range(1..=max_dim), rng.gen_range(1..=max_dim));
    IntMatrix::from_vec(r, c, (0..r * c).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect())
}

/// Adds a vertex with edges into random existing vertices.
pub fn add_source<R: Rng>(rng: &mut R, g: &Graph) -> Graph {
    let mut vertices: Vec<String> = g.vertices().to_vec();
    let mut s = String::from("src");
    while g.has_id(&s) {
        s.push('\'');
    }
    vertices.push(s.clone());
    let mut edges: Vec<(String, String, String)> = g
        .edges()
        .iter()
        .map(|e| (e.id.clone(), g.vertices()[e.src].clone(), g.vertices()[e.dst].clone()))
        .collect();
    for k in 0..rng.gen_range(1..=2) {
        let mut id = format!("{s}_e{k}");
        while g.has_id(&id) {
            id.push('\'');
        }
        let target = g.vertices()[rng.gen_range(0..g.num_vertices())].clone();
        edges.push((id, s.clone(), target));
    }
    Graph::new(vertices, edges).unwrap()
}

pub fn random_path<R: Rng>(rng: &mut R, g: &Graph, max_len: usize) -> Path {
    let start = rng.gen_range(0..g.num_vertices());
    let mut edges = Vec::new();
    let mut at = start;
    for _ in 0..rng.gen_range(0..=max_len) {
        let out = g.out_edges(at);
        if out.is_empty() {
            break;
        }
        let e = out[rng.gen_range(0..out.len())];
        edges.push(e);
        at = g.edges()[e].dst;
    }
    Path::new(g, start, edges).unwrap()
}

/// A path ending at `v`, found by walking backwards.
pub fn random_path_into<R: Rng>(rng: &mut R, g: &Graph, v: usize, max_len: usize) -> Path {
    let mut rev = Vec::new();
    let mut at = v;
    for _ in 0..rng.gen_range(0..=max_len) {
        let into: Vec<usize> = (0..g.num_edges()).filter(|&e| g.edges()[e].dst == at).collect();
        if into.is_empty() {
            break;
        }
        let e = into[rng.gen_range(0..into.len())];
        rev.push(e);
        at = g.edges()[e].src;
    }
    rev.reverse();
    Path::new(g, at, rev).unwrap()
}

pub fn random_monomial<R: Rng>(rng: &mut R, g: &Graph, max_len: usize) -> Monomial {
    let alpha = random_path(rng, g, max_len);
    let beta = random_path_into(rng, g, alpha.range(g), max_len);
    Monomial { alpha, beta }
}

pub fn random_term<'g, R: Rng>(rng: &mut R, alg: &PathAlgebra<'g>, max_terms: usize, max_len: usize) -> Term<'g> {
    let mut t = alg.zero();
    for _ in 0..rng.gen_range(1..=max_terms) {
        let m = random_monomial(rng, alg.graph(), max_len);
        let c = BigInt::from(rng.gen_range(-3i64..=3));
        t = t.add(&alg.monomial(m, c)).unwrap();
    }
    t
}

pub fn random_vector<R: Rng>(rng: &mut R, g: &Graph, max_len: usize) -> PathVector {
    let mut v = PathVector::new();
    for _ in 0..rng.gen_range(1..=3) {
        let c = BigInt::from(rng.gen_range(1i64..=3));
        *v.entry(random_path(rng, g, max_len)).or_default() += c;
    }
    v
}
