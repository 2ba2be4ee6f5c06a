//! Bowen–Franks groups of a graph, plain and twisted, with their duals, and
//! the determinant criteria built on them.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::graph::Graph;
use crate::intlin::{cokernel, FgAbelianGroup, IntMatrix};
use crate::sigma::{coker_sigma, SigmaMatrix, SigmaModule, SigmaScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvariantsError {
    NotRegular,
}

impl fmt::Display for InvariantsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantsError::NotRegular => write!(f, "graph has a sink"),
        }
    }
}

/// Which presentation a Bowen–Franks group was computed from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BfSource {
    /// `I − Aᵗ`, rows `E⁰`.
    Plain,
    /// `Iᵗ − A`, rows `reg(E)`.
    Dual,
}

/// A Bowen–Franks group with the class of the sum of all row basis vectors.
#[derive(Clone, Debug)]
pub struct BfData {
    pub group: FgAbelianGroup,
    pub unit_class: Vec<BigInt>,
    pub source: BfSource,
}

/// A twisted Bowen–Franks module with the class of `Σ χ_v` placed in the
/// `1`-part.
#[derive(Clone, Debug)]
pub struct TwistedBfData {
    pub module: SigmaModule,
    pub unit_class: Vec<BigInt>,
    pub source: BfSource,
}

/// The decomposition data `(s, r − s, [d_i + 1])` of `BF(E) = Z^r ⊕ ⊕ Z/d_i`
/// with `s` singular vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructDescriptor {
    pub singular: usize,
    pub free_rest: usize,
    pub cycle_sizes: Vec<BigInt>,
}

/// Coefficient ring for the vanishing test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Z,
    ZSigma,
}

/// Outcome of the determinant criterion `det(I + A) = ±1`,
/// `det(I − A) ∉ {0, ±1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfolbfCriterion {
    pub det_plus: BigInt,
    pub det_minus: BigInt,
    pub det_plus_unit: bool,
    pub det_minus_nonunit_nonzero: bool,
    pub holds: bool,
}

/// `I` with the singular columns removed: rows `E⁰`, columns `reg(E)`.
pub fn identity_on_regular(g: &Graph) -> IntMatrix {
    let reg = g.regular_vertices();
    let mut m = IntMatrix::zeros(g.num_vertices(), reg.len());
    for (c, &v) in reg.iter().enumerate() {
        m[(v, c)] = BigInt::one();
    }
    m
}

/// `I − σAᵗ` over `Z[σ]`.
pub fn twisted_bf_matrix(g: &Graph) -> SigmaMatrix {
    let at = g.incidence_matrix().transpose().without_labels();
    SigmaMatrix::minus_sigma(identity_on_regular(g), &at).expect("shapes agree")
}

/// `Iᵗ − σA` over `Z[σ]`.
pub fn twisted_bf_dual_matrix(g: &Graph) -> SigmaMatrix {
    let a = g.incidence_matrix().without_labels();
    SigmaMatrix::minus_sigma(identity_on_regular(g).transpose(), &a).expect("shapes agree")
}

fn with_unit(m: &IntMatrix, source: BfSource) -> BfData {
    let group = cokernel(&m.clone().without_labels());
    let ones = vec![BigInt::one(); m.rows()];
    BfData { unit_class: group.project(&ones), group, source }
}

fn twisted_with_unit(m: &SigmaMatrix, source: BfSource) -> TwistedBfData {
    let module = coker_sigma(m);
    let rows = m.shape().0;
    let mut v = vec![BigInt::one(); rows];
    v.extend(core::iter::repeat_with(BigInt::zero).take(rows));
    TwistedBfData { unit_class: module.underlying().project(&v), module, source }
}

/// `BF(E) = coker(I − Aᵗ)` with `[1]_E`.
pub fn bf(g: &Graph) -> BfData {
    with_unit(&g.bf_matrix(), BfSource::Plain)
}

/// `BF^∨(E) = coker(Iᵗ − A)`.
pub fn bf_dual(g: &Graph) -> BfData {
    with_unit(&g.bf_dual_matrix(), BfSource::Dual)
}

/// The twisted group `coker(I − σAᵗ)`.
pub fn bf_twisted(g: &Graph) -> TwistedBfData {
    twisted_with_unit(&twisted_bf_matrix(g), BfSource::Plain)
}

/// The twisted dual `coker(Iᵗ − σA)`.
pub fn bf_twisted_dual(g: &Graph) -> TwistedBfData {
    twisted_with_unit(&twisted_bf_dual_matrix(g), BfSource::Dual)
}

/// `det(I − Aᵗ)` for a regular graph.
pub fn det_bf(g: &Graph) -> Result<BigInt, InvariantsError> {
    if !g.is_regular() {
        return Err(InvariantsError::NotRegular);
    }
    Ok(g.bf_matrix().without_labels().det())
}

/// `det(I − σAᵗ)` for a regular graph.
pub fn det_bf_twisted(g: &Graph) -> Result<SigmaScalar, InvariantsError> {
    if !g.is_regular() {
        return Err(InvariantsError::NotRegular);
    }
    Ok(twisted_bf_matrix(g).det_sigma().expect("regular graphs give square matrices"))
}

/// Whether the plain and the twisted Leavitt path algebra vanish in the
/// bivariant theory, decided by units of the coefficient ring: `(plain,
/// twisted)`.
pub fn jh_vanishes(g: &Graph, coeff: Coefficients) -> (bool, bool) {
    if !g.is_regular() {
        return (false, false);
    }
    let d = det_bf(g).expect("regular");
    let ds = det_bf_twisted(g).expect("regular");
    let plain = d.abs().is_one();
    let twisted = match coeff {
        Coefficients::Z => ds.eval_plus().abs().is_one(),
        Coefficients::ZSigma => ds.is_unit(),
    };
    (plain, twisted)
}

pub fn canonical_form(g: &Graph) -> StructDescriptor {
    let group = bf(g).group;
    let singular = g.sinks().len();
    let free_rest = group
        .rank()
        .checked_sub(singular)
        .expect("each sink contributes a free generator");
    StructDescriptor {
        singular,
        free_rest,
        cycle_sizes: group.invariant_factors().iter().map(|d| d + 1).collect(),
    }
}

pub fn bfolbf_criterion(g: &Graph) -> Result<BfolbfCriterion, InvariantsError> {
    if !g.is_regular() {
        return Err(InvariantsError::NotRegular);
    }
    let a = g.incidence_matrix().without_labels();
    let i = IntMatrix::identity(a.rows());
    let det_plus = i.add(&a).det();
    let det_minus = i.sub(&a).det();
    let det_plus_unit = det_plus.abs().is_one();
    let det_minus_nonunit_nonzero = !det_minus.is_zero() && !det_minus.abs().is_one();
    Ok(BfolbfCriterion {
        holds: det_plus_unit && det_minus_nonunit_nonzero,
        det_plus,
        det_minus,
        det_plus_unit,
        det_minus_nonunit_nonzero,
    })
}
