//! Seeded randomized consistency checks, reachable from the hidden
//! `selftest` subcommand.

use leavitt_core::intlin::{cokernel, smith};
use leavitt_core::invariants::{bf, bf_twisted};
use leavitt_core::{BigInt, Graph, IntMatrix};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A graph on at most `max_vertices` vertices with at most `max_edges`
/// edges, parallel edges and loops allowed.
pub fn random_graph<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> Graph {
    let n = rng.gen_range(1..=max_vertices);
    let mut a = vec![vec![0u32; n]; n];
    for _ in 0..rng.gen_range(0..=max_edges) {
        a[rng.gen_range(0..n)][rng.gen_range(0..n)] += 1;
    }
    Graph::from_adjacency(&a)
}

pub fn random_matrix<R: Rng>(rng: &mut R, max_dim: usize, bound: i64) -> IntMatrix {
    let (r, c) = (rng.gen_range(1..=max_dim), rng.gen_range(1..=max_dim));
    IntMatrix::from_vec(r, c, (0..r * c).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect())
}

#[derive(Debug, Default)]
pub struct SelftestSummary {
    pub checks: usize,
    pub failures: Vec<String>,
}

pub fn run(seed: u64, count: usize) -> SelftestSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = SelftestSummary::default();
    let mut check = |ok: bool, what: String| {
        s.checks += 1;
        if !ok {
            s.failures.push(what);
        }
    };
    for i in 0..count {
        let g = random_graph(&mut rng, 4, 8);
        let b = bf(&g).group;
        check(
            bf_twisted(&g).module.underlying().is_isomorphic_to(&bf(&g.double_cover()).group),
            format!("case {i}: twisted group differs from the double cover's"),
        );
        check(
            bf(&g.out_split_graph()).group.is_isomorphic_to(&b),
            format!("case {i}: out-splitting changed BF"),
        );
        let m = random_matrix(&mut rng, 5, 9);
        let sm = smith(&m);
        check(
            sm.u.mul(&m).mul(&sm.v) == sm.d && sm.u.is_unimodular() && sm.v.is_unimodular(),
            format!("case {i}: Smith witnesses do not reproduce D"),
        );
        if m.is_square() && !m.det().is_zero() {
            check(
                cokernel(&m).order() == Some(m.det().magnitude().clone().into()),
                format!("case {i}: cokernel order differs from |det|"),
            );
        }
    }
    s
}
