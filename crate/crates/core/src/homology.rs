//! End terms of the short exact sequences computing hermitian `KH` of
//! Leavitt path algebras with coefficients, and of the universal
//! coefficient sequence.

use alloc::collections::BTreeMap;
use core::fmt;

use num_traits::Zero;

use crate::graph::Graph;
use crate::intlin::{hom_group, presented_kernel, tensor_group, FgAbelianGroup, IntMatrix};
use crate::invariants::{bf, bf_dual, bf_twisted, bf_twisted_dual, identity_on_regular};
use crate::sigma::{hom_sigma, tensor_sigma, SigmaModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomologyError {
    MissingDegree(i64),
}

impl fmt::Display for HomologyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomologyError::MissingDegree(n) => write!(f, "no coefficient module in degree {n}"),
        }
    }
}

/// The groups `KH^h_n(R)` with their `σ`-actions, by degree.
#[derive(Clone, Debug, Default)]
pub struct CoefficientData {
    kh: BTreeMap<i64, SigmaModule>,
}

impl CoefficientData {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, degree: i64, module: SigmaModule) -> Self {
        self.kh.insert(degree, module);
        self
    }

    /// `KH_0 = Z[σ]`, `KH_{−1} = 0`: a field of characteristic not two whose
    /// hermitian `K_0` is the group ring.
    pub fn field_like() -> Self {
        Self::new()
            .with(0, SigmaModule::free_rank_one())
            .with(-1, SigmaModule::trivial_action(FgAbelianGroup::trivial()))
    }

    pub fn get(&self, degree: i64) -> Result<&SigmaModule, HomologyError> {
        self.kh.get(&degree).ok_or(HomologyError::MissingDegree(degree))
    }

    pub fn degrees(&self) -> impl Iterator<Item = (&i64, &SigmaModule)> {
        self.kh.iter()
    }
}

/// How the middle term was, or was not, determined.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extension {
    LeftZero,
    RightZero,
    RightFree,
    Ambiguous,
}

impl fmt::Display for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Extension::LeftZero => "left end vanishes",
            Extension::RightZero => "right end vanishes",
            Extension::RightFree => "splits: right end is free",
            Extension::Ambiguous => "extension ambiguous",
        })
    }
}

/// `0 → left → middle → right → 0`, with `middle` present only when the
/// ends force it.
#[derive(Clone, Debug)]
pub struct SequenceEnds {
    pub left: FgAbelianGroup,
    pub right: FgAbelianGroup,
    pub middle: Option<FgAbelianGroup>,
    pub split_reason: Extension,
}

impl SequenceEnds {
    pub fn new(left: FgAbelianGroup, right: FgAbelianGroup) -> Self {
        let (middle, split_reason) = if left.is_trivial() {
            (Some(right.clone()), Extension::LeftZero)
        } else if right.is_trivial() {
            (Some(left.clone()), Extension::RightZero)
        } else if right.invariant_factors().is_empty() {
            (Some(left.direct_sum(&right)), Extension::RightFree)
        } else {
            (None, Extension::Ambiguous)
        };
        SequenceEnds { left, right, middle, split_reason }
    }
}

/// Kernel of `(P + σQ) ⊗ M : M^cols → M^rows` for a `Z[σ]`-module `M`.
fn tensor_kernel(p: &IntMatrix, q: &IntMatrix, m: &SigmaModule) -> FgAbelianGroup {
    let k = m.underlying().num_gens();
    let s = m.sigma_action().matrix();
    let map = p.kron(&IntMatrix::identity(k)).add(&q.kron(s));
    let moduli = m.underlying().moduli();
    let rel = |copies: usize| {
        let mut d = IntMatrix::zeros(copies * k, 0);
        for c in 0..copies {
            for (i, x) in moduli.iter().enumerate() {
                if !x.is_zero() {
                    let mut col = IntMatrix::zeros(copies * k, 1);
                    col[(c * k + i, 0)] = x.clone();
                    d = d.hstack(&col);
                }
            }
        }
        d
    };
    presented_kernel(&map, &rel(p.cols()), &rel(p.rows())).group
}

/// Ends of `0 → BF(E) ⊗ KH_n(R) → KH_n(L(E) ⊗ R) → ker((I − Aᵗ) ⊗ KH_{n−1}(R)) → 0`,
/// or of its twisted version over `Z[σ]` when `twisted` is set.
pub fn kh_ends(g: &Graph, coeff: &CoefficientData, n: i64, twisted: bool) -> Result<SequenceEnds, HomologyError> {
    let kh_n = coeff.get(n)?;
    let kh_prev = coeff.get(n - 1)?;
    let id = identity_on_regular(g);
    let at = g.incidence_matrix().transpose().without_labels();
    let (left, right) = if twisted {
        let left = tensor_sigma(&bf_twisted(g).module, kh_n);
        (left, tensor_kernel(&id, &at.neg(), kh_prev))
    } else {
        let left = tensor_group(&bf(g).group, kh_n.underlying());
        let zero = IntMatrix::zeros(at.rows(), at.cols());
        (left, tensor_kernel(&id.sub(&at), &zero, kh_prev))
    };
    Ok(SequenceEnds::new(left, right))
}

/// Ends of `0 → KH_1(R) ⊗ BF^∨(E) → kk^h(L(E), R) → Hom(BF(E), KH_0(R)) → 0`,
/// or of its twisted version.
pub fn uct_ends(g: &Graph, coeff: &CoefficientData, twisted: bool) -> Result<SequenceEnds, HomologyError> {
    let kh0 = coeff.get(0)?;
    let kh1 = coeff.get(1)?;
    let (left, right) = if twisted {
        (
            tensor_sigma(kh1, &bf_twisted_dual(g).module),
            hom_sigma(&bf_twisted(g).module, kh0),
        )
    } else {
        (
            tensor_group(kh1.underlying(), &bf_dual(g).group),
            hom_group(&bf(g).group, kh0.underlying()),
        )
    };
    Ok(SequenceEnds::new(left, right))
}
