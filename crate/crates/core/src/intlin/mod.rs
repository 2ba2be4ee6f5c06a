//! Exact linear algebra over the integers.

use core::fmt;

mod group;
mod hom;
mod matrix;
mod normal_form;

pub use group::{cokernel, kernel_basis, lattice_basis, presented_kernel, solve, solve_matrix, FgAbelianGroup, GroupHom, Subquotient};
pub use hom::{hom_exists_with_value, hom_group, iso_with_element_constraint, tensor_group, HomSpace};
pub use matrix::IntMatrix;
pub use normal_form::{hnf, rank, smith, snf, Smith};

/// Exhaustive searches refuse groups larger than this.
pub const SEARCH_LIMIT: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// An operation that enumerates group elements was given an infinite group.
    UnsupportedInfiniteGroup,
    /// The group exceeds [`SEARCH_LIMIT`].
    GroupTooLarge,
    /// A matrix does not send the domain's relations to zero.
    NotWellDefined,
    NotAnIsomorphism,
    DimensionMismatch,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnsupportedInfiniteGroup => write!(f, "operation requires a finite group"),
            Error::GroupTooLarge => write!(f, "group exceeds the search limit of {SEARCH_LIMIT} elements"),
            Error::NotWellDefined => write!(f, "matrix does not define a homomorphism"),
            Error::NotAnIsomorphism => write!(f, "homomorphism is not an isomorphism"),
            Error::DimensionMismatch => write!(f, "matrix dimensions do not match the groups"),
        }
    }
}
