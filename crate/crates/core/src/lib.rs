//! Exact invariants for Leavitt path algebras of finite graphs.
//!
//! The crate is `no_std` (it only needs `alloc`) and every computation is
//! exact: integers are arbitrary precision and no floating point is used.
//!
//! * [`graph`]: finite directed graphs, incidence matrices, predicates and moves.
//! * [`intlin`]: integer normal forms with witnesses, kernels, cokernels,
//!   finitely generated abelian groups and their homomorphisms.
//! * [`sigma`]: modules over the group ring `Z[σ]`, `σ² = 1`.
//! * [`invariants`]: Bowen–Franks groups (plain, twisted, dual) and the
//!   determinant criteria built on them.
//! * [`homology`]: end terms of the long exact sequences for `KH^h`.
//! * [`lifting`]: chain-map certificates realizing Bowen–Franks isomorphisms.
//! * [`classify`]: hypothesis checks for classification and the graded
//!   homomorphism obstruction.
//! * [`terms`]: term arithmetic in Cohn and Leavitt path algebras.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod classify;
pub mod graph;
pub mod homology;
pub mod intlin;
pub mod invariants;
pub mod lifting;
pub mod sigma;
pub mod terms;

pub use num_bigint::BigInt;

pub use graph::Graph;
pub use intlin::{FgAbelianGroup, GroupHom, IntMatrix};
pub use sigma::{SigmaMatrix, SigmaModule, SigmaScalar};
pub use terms::{Ambient, PathAlgebra, Term};
