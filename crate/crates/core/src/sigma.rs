//! Modules over the group ring `Z[σ]`, `σ² = 1`.
//!
//! A module is stored as a finitely generated abelian group together with
//! the action of `σ`; a matrix over `Z[σ]` is a pair `P + σQ` of integer
//! matrices. Every question about `Z[σ]`-modules is answered through
//! restriction of scalars ([`SigmaMatrix::double`]).

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::intlin::{self, cokernel, FgAbelianGroup, GroupHom, HomSpace, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SigmaError {
    NonSquare,
    ShapeMismatch,
    /// The proposed action does not square to the identity.
    NotAnInvolution,
    Group(intlin::Error),
}

impl From<intlin::Error> for SigmaError {
    fn from(e: intlin::Error) -> Self {
        SigmaError::Group(e)
    }
}

impl fmt::Display for SigmaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigmaError::NonSquare => write!(f, "matrix is not square"),
            SigmaError::ShapeMismatch => write!(f, "P and Q have different shapes"),
            SigmaError::NotAnInvolution => write!(f, "sigma action does not square to the identity"),
            SigmaError::Group(e) => e.fmt(f),
        }
    }
}

/// The element `a + bσ` of `Z[σ]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SigmaScalar {
    pub a: BigInt,
    pub b: BigInt,
}

impl SigmaScalar {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        SigmaScalar { a: a.into(), b: b.into() }
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn sigma() -> Self {
        Self::new(0, 1)
    }

    /// Image under `σ ↦ 1`.
    pub fn eval_plus(&self) -> BigInt {
        &self.a + &self.b
    }

    /// Image under `σ ↦ −1`.
    pub fn eval_minus(&self) -> BigInt {
        &self.a - &self.b
    }

    /// `(a + b)(a − b)`, the determinant of multiplication by `a + bσ`.
    pub fn norm(&self) -> BigInt {
        self.eval_plus() * self.eval_minus()
    }

    /// Whether `self ∈ {±1, ±σ}`.
    pub fn is_unit(&self) -> bool {
        self.eval_plus().abs().is_one() && self.eval_minus().abs().is_one()
    }

    /// Recovers `a + bσ` from its two evaluations; `None` if they have
    /// different parity.
    pub fn from_evaluations(plus: &BigInt, minus: &BigInt) -> Option<Self> {
        let s = plus + minus;
        let d = plus - minus;
        if s.is_odd() {
            return None;
        }
        Some(SigmaScalar { a: s / 2, b: d / 2 })
    }

    pub fn mul(&self, other: &SigmaScalar) -> SigmaScalar {
        SigmaScalar {
            a: &self.a * &other.a + &self.b * &other.b,
            b: &self.a * &other.b + &self.b * &other.a,
        }
    }

    pub fn add(&self, other: &SigmaScalar) -> SigmaScalar {
        SigmaScalar { a: &self.a + &other.a, b: &self.b + &other.b }
    }

    pub fn sub(&self, other: &SigmaScalar) -> SigmaScalar {
        SigmaScalar { a: &self.a - &other.a, b: &self.b - &other.b }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl fmt::Display for SigmaScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if !self.a.is_zero() {
            write!(f, "{}{}", self.a, if self.b.is_negative() { "-" } else { "+" })?;
        } else if self.b.is_negative() {
            f.write_str("-")?;
        }
        let b = self.b.abs();
        if b.is_one() {
            f.write_str("s")
        } else {
            write!(f, "{b}*s")
        }
    }
}

/// A matrix `P + σQ` over `Z[σ]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaMatrix {
    p: IntMatrix,
    q: IntMatrix,
}

impl SigmaMatrix {
    pub fn new(p: IntMatrix, q: IntMatrix) -> Result<Self, SigmaError> {
        if p.shape() != q.shape() {
            return Err(SigmaError::ShapeMismatch);
        }
        Ok(SigmaMatrix { p, q })
    }

    pub fn identity(n: usize) -> Self {
        SigmaMatrix { p: IntMatrix::identity(n), q: IntMatrix::zeros(n, n) }
    }

    /// `P − σQ`, the shape of twisted Bowen–Franks matrices `I − σAᵗ`.
    pub fn minus_sigma(p: IntMatrix, q: &IntMatrix) -> Result<Self, SigmaError> {
        Self::new(p, q.neg())
    }

    pub fn p(&self) -> &IntMatrix {
        &self.p
    }

    pub fn q(&self) -> &IntMatrix {
        &self.q
    }

    pub fn shape(&self) -> (usize, usize) {
        self.p.shape()
    }

    pub fn entry(&self, i: usize, j: usize) -> SigmaScalar {
        SigmaScalar { a: self.p[(i, j)].clone(), b: self.q[(i, j)].clone() }
    }

    pub fn mul(&self, other: &SigmaMatrix) -> SigmaMatrix {
        SigmaMatrix {
            p: self.p.mul(&other.p).add(&self.q.mul(&other.q)),
            q: self.p.mul(&other.q).add(&self.q.mul(&other.p)),
        }
    }

    /// Restriction of scalars: the integer matrix `[[P, Q], [Q, P]]` in the
    /// basis of all `1`-parts followed by all `σ`-parts.
    pub fn double(&self) -> IntMatrix {
        IntMatrix::block(&self.p, &self.q, &self.q, &self.p)
    }

    /// Determinant in `Z[σ]`.
    ///
    /// `Z[σ]` embeds into `Z × Z` by the two evaluations `σ ↦ ±1`, so the
    /// determinant is read off from `det(P + Q)` and `det(P − Q)`.
    pub fn det_sigma(&self) -> Result<SigmaScalar, SigmaError> {
        if !self.p.is_square() {
            return Err(SigmaError::NonSquare);
        }
        let plus = self.p.add(&self.q).det();
        let minus = self.p.sub(&self.q).det();
        Ok(SigmaScalar::from_evaluations(&plus, &minus).expect("evaluations of a Z[σ] element agree mod 2"))
    }
}

/// The block swap exchanging `1`-parts and `σ`-parts of `Z[σ]^n`.
pub fn swap_matrix(n: usize) -> IntMatrix {
    let z = IntMatrix::zeros(n, n);
    let i = IntMatrix::identity(n);
    IntMatrix::block(&z, &i, &i, &z)
}

/// A finitely generated `Z[σ]`-module: a group and an involutive
/// automorphism.
#[derive(Clone, Debug)]
pub struct SigmaModule {
    underlying: FgAbelianGroup,
    sigma: GroupHom,
}

impl SigmaModule {
    /// `action` is a matrix in canonical coordinates of `underlying`.
    pub fn new(underlying: FgAbelianGroup, action: IntMatrix) -> Result<Self, SigmaError> {
        let sigma = GroupHom::new(underlying.clone(), underlying.clone(), action)?;
        if !sigma.compose(&sigma).same_map(&GroupHom::identity(&underlying)) {
            return Err(SigmaError::NotAnInvolution);
        }
        Ok(SigmaModule { underlying, sigma })
    }

    /// `σ` acting as the identity.
    pub fn trivial_action(group: FgAbelianGroup) -> Self {
        let sigma = GroupHom::identity(&group);
        SigmaModule { underlying: group, sigma }
    }

    /// `Z[σ]` itself, on the basis `1, σ`.
    pub fn free_rank_one() -> Self {
        SigmaModule::new(FgAbelianGroup::free(2), swap_matrix(1)).expect("swap is an involution")
    }

    pub fn underlying(&self) -> &FgAbelianGroup {
        &self.underlying
    }

    pub fn sigma_action(&self) -> &GroupHom {
        &self.sigma
    }

    pub fn is_trivial(&self) -> bool {
        self.underlying.is_trivial()
    }

    /// The coinvariants `M / (σ − 1)M`.
    pub fn mod_sigma_minus_one(&self) -> FgAbelianGroup {
        let k = self.underlying.num_gens();
        let gens = self.sigma.matrix().sub(&IntMatrix::identity(k));
        self.underlying.quotient(&gens)
    }

    /// The invariants `{m : σm = m}` as a subgroup, with its basis in
    /// canonical coordinates.
    pub fn invariants(&self) -> intlin::Subquotient {
        let k = self.underlying.num_gens();
        let diff = self.sigma.matrix().sub(&IntMatrix::identity(k));
        let h = GroupHom::new(self.underlying.clone(), self.underlying.clone(), diff).expect("difference of endomorphisms");
        h.kernel()
    }

    /// Whether `h` intertwines the two actions.
    pub fn is_equivariant(&self, other: &SigmaModule, h: &GroupHom) -> bool {
        h.compose(&self.sigma).same_map(&other.sigma.compose(h))
    }
}

/// `coker(M)` as a `Z[σ]`-module, with `σ` induced by the block swap.
pub fn coker_sigma(m: &SigmaMatrix) -> SigmaModule {
    let d = m.double();
    let group = cokernel(&d);
    let rows = m.shape().0;
    let action = group.proj().mul(&swap_matrix(rows)).mul(group.section());
    SigmaModule::new(group, action).expect("swap descends to an involution of the cokernel")
}

/// `Hom_{Z[σ]}(M, N)`: homomorphisms of the underlying groups commuting
/// with `σ`.
pub fn hom_sigma_space(m: &SigmaModule, n: &SigmaModule) -> HomSpace {
    HomSpace::equivariant(m.underlying(), n.underlying(), m.sigma.matrix(), n.sigma.matrix())
}

pub fn hom_sigma(m: &SigmaModule, n: &SigmaModule) -> FgAbelianGroup {
    hom_sigma_space(m, n).group().clone()
}

/// `M ⊗_{Z[σ]} N = (M ⊗ N) / (σx ⊗ y − x ⊗ σy)`.
pub fn tensor_sigma(m: &SigmaModule, n: &SigmaModule) -> FgAbelianGroup {
    let km = m.underlying.num_gens();
    let kn = n.underlying.num_gens();
    let mm = m.underlying.moduli();
    let mn = n.underlying.moduli();
    let sm = m.sigma.matrix();
    let sn = n.sigma.matrix();
    let idx = |i: usize, j: usize| i * kn + j;
    let mut cols: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..km {
        for j in 0..kn {
            for modulus in [&mm[i], &mn[j]] {
                if !modulus.is_zero() {
                    let mut v = alloc::vec![BigInt::zero(); km * kn];
                    v[idx(i, j)] = modulus.clone();
                    cols.push(v);
                }
            }
            let mut v = alloc::vec![BigInt::zero(); km * kn];
            for k in 0..km {
                v[idx(k, j)] += &sm[(k, i)];
            }
            for l in 0..kn {
                v[idx(i, l)] -= &sn[(l, j)];
            }
            cols.push(v);
        }
    }
    let mut rel = IntMatrix::zeros(km * kn, cols.len());
    for (c, v) in cols.into_iter().enumerate() {
        for (r, x) in v.into_iter().enumerate() {
            rel[(r, c)] = x;
        }
    }
    cokernel(&rel)
}

/// An isomorphism of finite `Z[σ]`-modules, if one exists, found by
/// enumerating all equivariant homomorphisms.
pub fn sigma_iso_decide(m: &SigmaModule, n: &SigmaModule) -> Result<Option<GroupHom>, SigmaError> {
    if !m.underlying.is_isomorphic_to(&n.underlying) {
        return Ok(None);
    }
    if !m.underlying.is_finite() {
        return Err(intlin::Error::UnsupportedInfiniteGroup.into());
    }
    let space = hom_sigma_space(m, n);
    for e in space.group().elements()? {
        let h = space.hom_at(&e);
        if h.is_isomorphism() {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    /// Cofactor expansion over `Z[σ]`.
    fn det_cofactor(a: &SigmaMatrix) -> SigmaScalar {
        let n = a.shape().0;
        if n == 0 {
            return SigmaScalar::one();
        }
        let mut acc = SigmaScalar::new(0, 0);
        for j in 0..n {
            let keep: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let mut p = IntMatrix::zeros(n - 1, n - 1);
            let mut q = IntMatrix::zeros(n - 1, n - 1);
            for r in 1..n {
                for (c, &k) in keep.iter().enumerate() {
                    p[(r - 1, c)] = a.p[(r, k)].clone();
                    q[(r - 1, c)] = a.q[(r, k)].clone();
                }
            }
            let minor = det_cofactor(&SigmaMatrix::new(p, q).unwrap());
            let term = a.entry(0, j).mul(&minor);
            acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    fn twisted(a: &IntMatrix) -> SigmaMatrix {
        SigmaMatrix::minus_sigma(IntMatrix::identity(a.rows()), &a.transpose()).unwrap()
    }

    #[test]
    fn scalars() {
        assert_eq!(SigmaScalar::new(1, -2).to_string(), "1-2*s");
        assert_eq!(SigmaScalar::new(0, -1).to_string(), "-s");
        assert_eq!(SigmaScalar::new(3, 0).to_string(), "3");
        assert_eq!(SigmaScalar::new(-1, 1).to_string(), "-1+s");
        assert!(SigmaScalar::new(0, -1).is_unit());
        assert!(SigmaScalar::one().is_unit());
        assert!(!SigmaScalar::new(1, -2).is_unit());
        assert_eq!(SigmaScalar::sigma().mul(&SigmaScalar::sigma()), SigmaScalar::one());
    }

    #[test]
    fn doubling() {
        let r2 = twisted(&m(&[&[2]]));
        assert_eq!(r2.double(), m(&[&[1, -2], &[-2, 1]]));
        assert_eq!(r2.double().det(), BigInt::from(-3));
        assert!(SigmaMatrix::identity(3).double().is_identity());
    }

    #[test]
    fn determinants() {
        let upsilon = twisted(&m(&[&[1, 1], &[1, 0]]));
        assert_eq!(upsilon.entry(0, 0), SigmaScalar::new(1, -1));
        assert_eq!(upsilon.det_sigma().unwrap(), SigmaScalar::new(0, -1));
        assert_eq!(det_cofactor(&upsilon), SigmaScalar::new(0, -1));
        assert_eq!(SigmaMatrix::identity(2).det_sigma().unwrap(), SigmaScalar::one());
        assert_eq!(twisted(&m(&[&[2]])).det_sigma().unwrap(), SigmaScalar::new(1, -2));
        let rect = SigmaMatrix::new(IntMatrix::zeros(1, 2), IntMatrix::zeros(1, 2)).unwrap();
        assert_eq!(rect.det_sigma(), Err(SigmaError::NonSquare));
    }

    #[test]
    fn twisted_cokernels() {
        let r2 = coker_sigma(&twisted(&m(&[&[2]])));
        assert!(r2.underlying().is_isomorphic_to(&FgAbelianGroup::cyclic(3)));
        // σ acts on Z/3 as multiplication by 2.
        let g = r2.underlying().generator(0);
        assert_eq!(r2.sigma_action().apply(&g), r2.underlying().scale(&g, &BigInt::from(2)));
        assert!(r2.mod_sigma_minus_one().is_trivial());

        let spliced = m(&[&[2, 1, 0], &[1, 1, 1], &[0, 1, 1]]);
        let r2m = coker_sigma(&twisted(&spliced));
        assert!(r2m.underlying().is_isomorphic_to(&FgAbelianGroup::cyclic(7)));

        assert!(coker_sigma(&SigmaMatrix::identity(2)).is_trivial());
    }

    #[test]
    fn coinvariants() {
        let g = FgAbelianGroup::cyclic(5);
        assert!(SigmaModule::trivial_action(g.clone()).mod_sigma_minus_one().is_isomorphic_to(&g));
        let r = coker_sigma(&twisted(&m(&[&[1, 3], &[1, 1]])));
        assert!(r.mod_sigma_minus_one().is_isomorphic_to(&FgAbelianGroup::cyclic(3)));
    }

    #[test]
    fn rejects_non_involutions() {
        let g = FgAbelianGroup::cyclic(5);
        assert_eq!(SigmaModule::new(g, m(&[&[2]])).unwrap_err(), SigmaError::NotAnInvolution);
    }

    #[test]
    fn equivariant_isomorphisms() {
        let z3 = FgAbelianGroup::cyclic(3);
        let triv = SigmaModule::trivial_action(z3.clone());
        let twist = SigmaModule::new(z3, m(&[&[2]])).unwrap();
        assert!(sigma_iso_decide(&triv, &triv).unwrap().is_some());
        assert!(sigma_iso_decide(&twist, &triv).unwrap().is_none());

        let a = m(&[&[1, 3], &[1, 1]]);
        let tw = coker_sigma(&twisted(&a));
        let plain = SigmaModule::trivial_action(cokernel(&IntMatrix::identity(2).sub(&a.transpose())));
        let h = sigma_iso_decide(&tw, &plain).unwrap().expect("isomorphic");
        assert!(tw.is_equivariant(&plain, &h));

        let free = SigmaModule::free_rank_one();
        assert!(matches!(
            sigma_iso_decide(&free, &free),
            Err(SigmaError::Group(intlin::Error::UnsupportedInfiniteGroup))
        ));
    }

    #[test]
    fn hom_and_tensor() {
        let z3 = FgAbelianGroup::cyclic(3);
        let triv = SigmaModule::trivial_action(z3.clone());
        let twist = SigmaModule::new(z3.clone(), m(&[&[2]])).unwrap();
        assert!(hom_sigma(&twist, &triv).is_trivial());
        assert!(hom_sigma(&triv, &triv).is_isomorphic_to(&z3));

        let z = SigmaModule::trivial_action(FgAbelianGroup::free(1));
        assert!(tensor_sigma(&twist, &z).is_isomorphic_to(&twist.mod_sigma_minus_one()));
        assert!(tensor_sigma(&triv, &z).is_isomorphic_to(&z3));
        // Z[σ] ⊗ M = M.
        let free = SigmaModule::free_rank_one();
        assert!(tensor_sigma(&free, &twist).is_isomorphic_to(&z3));
        assert!(hom_sigma(&free, &twist).is_isomorphic_to(&z3));
        let g = FgAbelianGroup::from_cyclic_orders(&[BigInt::from(4), BigInt::from(6)]);
        let h = FgAbelianGroup::cyclic(8);
        let a = SigmaModule::trivial_action(g.clone());
        let b = SigmaModule::trivial_action(h.clone());
        assert!(hom_sigma(&a, &b).is_isomorphic_to(&intlin::hom_group(&g, &h)));
    }
}
