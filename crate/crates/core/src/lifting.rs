//! Chain maps between two-term complexes `Z^{m1} → Z^{m0}` realizing a given
//! isomorphism of cokernels, with the data needed to check them.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::graph::Graph;
use crate::intlin::{cokernel, rank, smith, solve, solve_matrix, FgAbelianGroup, GroupHom, IntMatrix};
use crate::invariants::twisted_bf_matrix;
use crate::sigma::{coker_sigma, sigma_iso_decide, swap_matrix, SigmaError, SigmaMatrix, SigmaModule};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftError {
    /// The kernels of the two differentials have different ranks.
    RankMismatch,
    NotAnIsomorphism,
    /// A doubled differential is not injective.
    KernelNonzero,
    NotEquivariant,
    /// `ξ0` does not go between the cokernels of the given matrices.
    WrongGroups,
    Sigma(SigmaError),
}

impl From<SigmaError> for LiftError {
    fn from(e: SigmaError) -> Self {
        LiftError::Sigma(e)
    }
}

impl fmt::Display for LiftError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LiftError::RankMismatch => write!(f, "kernels have different ranks"),
            LiftError::NotAnIsomorphism => write!(f, "map on cokernels is not an isomorphism"),
            LiftError::KernelNonzero => write!(f, "differential is not injective over Z[σ]"),
            LiftError::NotEquivariant => write!(f, "map on cokernels does not commute with σ"),
            LiftError::WrongGroups => write!(f, "map does not go between the given cokernels"),
            LiftError::Sigma(e) => e.fmt(f),
        }
    }
}

/// A commuting square
///
/// ```text
/// Z^{m1} --A--> Z^{m0}
///   |f1           |f0
/// Z^{n1} --M--> Z^{n0}
/// ```
///
/// inducing `ξ0` on cokernels and `ξ1` on kernels. `ξ1` is written in the
/// coordinates of `kernel_a` and `kernel_m`, whose columns are bases of the
/// two kernels.
#[derive(Clone, Debug)]
pub struct ChainMapCertificate {
    pub mat_a: IntMatrix,
    pub mat_m: IntMatrix,
    pub f0: IntMatrix,
    pub f1: IntMatrix,
    pub xi0: GroupHom,
    pub xi1: GroupHom,
    pub kernel_a: IntMatrix,
    pub kernel_m: IntMatrix,
}

/// Why a certificate failed verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyFailure {
    Shapes,
    NotCommuting,
    CokernelMap,
    KernelMap,
    NotQuasiIsomorphism,
}

impl fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerifyFailure::Shapes => "matrix shapes do not fit",
            VerifyFailure::NotCommuting => "square does not commute",
            VerifyFailure::CokernelMap => "f0 does not induce xi0",
            VerifyFailure::KernelMap => "f1 does not induce xi1",
            VerifyFailure::NotQuasiIsomorphism => "induced maps are not isomorphisms",
        })
    }
}

/// Lifts an isomorphism `ξ0: coker(A) → coker(M)` to a quasi-isomorphism.
///
/// `f0` sends each basis vector to the chosen lift of the image of its
/// class; `ξ1` sends the kernel basis of `A` to that of `M` in order, and
/// `f1(x) = ξ1(x − s(Ax)) + t(f0(Ax))` with `s`, `t` the sections of
/// `A` and `M` onto their images read off the Smith forms.
pub fn lift_iso(mat_a: &IntMatrix, mat_m: &IntMatrix, xi0: &GroupHom) -> Result<ChainMapCertificate, LiftError> {
    let a = mat_a.clone().without_labels();
    let m = mat_m.clone().without_labels();
    let coker_a = cokernel(&a);
    let coker_m = cokernel(&m);
    if xi0.domain().num_gens() != coker_a.num_gens()
        || !xi0.domain().is_isomorphic_to(&coker_a)
        || !xi0.codomain().is_isomorphic_to(&coker_m)
    {
        return Err(LiftError::WrongGroups);
    }
    if !xi0.is_isomorphism() {
        return Err(LiftError::NotAnIsomorphism);
    }
    let sa = smith(&a);
    let sm = smith(&m);
    let k = a.cols() - sa.rank;
    if k != m.cols() - sm.rank {
        return Err(LiftError::RankMismatch);
    }

    let f0 = coker_m.section().mul(xi0.matrix()).mul(coker_a.proj());

    // Kernel part: coordinates of x along ker(A), sent basis to basis.
    let kernel_a = sa.v.slice(0..a.cols(), sa.rank..a.cols());
    let kernel_m = sm.v.slice(0..m.cols(), sm.rank..m.cols());
    let kernel_coords = sa.v_inv.slice(sa.rank..a.cols(), 0..a.cols());
    let mut f1 = kernel_m.mul(&kernel_coords);

    // Image part: t(f0·A·x) through the Smith form of M.
    let c = sm.u.mul(&f0.mul(&a));
    let mut y = IntMatrix::zeros(m.cols(), a.cols());
    for i in 0..sm.rank {
        let d = &sm.d[(i, i)];
        for j in 0..a.cols() {
            let (q, r) = c[(i, j)].div_rem(d);
            debug_assert!(r.is_zero(), "f0 maps the image of A into the image of M");
            y[(i, j)] = q;
        }
    }
    f1 = f1.add(&sm.v.mul(&y));

    let free = FgAbelianGroup::free(k);
    let xi1 = GroupHom::new(free.clone(), free, IntMatrix::identity(k)).expect("identity");
    let cert = ChainMapCertificate {
        mat_a: a,
        mat_m: m,
        f0,
        f1,
        xi0: xi0.clone(),
        xi1,
        kernel_a,
        kernel_m,
    };
    debug_assert_eq!(verify(&cert), Ok(()));
    Ok(cert)
}

/// Re-checks a certificate from scratch: the square commutes, `f0` induces
/// `ξ0` on freshly computed cokernels, `f1` carries the kernel basis of `A`
/// to the kernel of `M` with coordinates `ξ1`, and both induced maps are
/// isomorphisms.
pub fn verify(c: &ChainMapCertificate) -> Result<(), VerifyFailure> {
    let (m0, m1) = c.mat_a.shape();
    let (n0, n1) = c.mat_m.shape();
    if c.f0.shape() != (n0, m0) || c.f1.shape() != (n1, m1) {
        return Err(VerifyFailure::Shapes);
    }
    if c.f0.mul(&c.mat_a) != c.mat_m.mul(&c.f1) {
        return Err(VerifyFailure::NotCommuting);
    }
    let coker_a = cokernel(&c.mat_a);
    let coker_m = cokernel(&c.mat_m);
    if !coker_a.is_isomorphic_to(c.xi0.domain()) || !coker_m.is_isomorphic_to(c.xi0.codomain()) {
        return Err(VerifyFailure::CokernelMap);
    }
    for j in 0..coker_a.num_gens() {
        let g = coker_a.generator(j);
        let image = coker_m.project(&c.f0.mul_vec(&coker_a.lift(&g)));
        if image != c.xi0.apply(&g) {
            return Err(VerifyFailure::CokernelMap);
        }
    }
    // Each kernel basis must lie in the kernel, have full rank and span a
    // saturated lattice, so that it is a basis of the whole kernel.
    for (mat, basis) in [(&c.mat_a, &c.kernel_a), (&c.mat_m, &c.kernel_m)] {
        let expected = mat.cols() - rank(mat);
        if !mat.mul(basis).is_zero()
            || basis.cols() != expected
            || rank(basis) != expected
            || !cokernel(basis).invariant_factors().is_empty()
        {
            return Err(VerifyFailure::KernelMap);
        }
    }
    match solve_matrix(&c.kernel_m, &c.f1.mul(&c.kernel_a)) {
        Some(x) if x == *c.xi1.matrix() => {}
        _ => return Err(VerifyFailure::KernelMap),
    }
    if !c.xi0.is_isomorphism() || !c.xi1.matrix().is_unimodular() {
        return Err(VerifyFailure::NotQuasiIsomorphism);
    }
    Ok(())
}

/// Solves `h·A = I − g1·f1` and `A·h = I − g0·f0` for an integer
/// `h: Z^{m0} → Z^{m1}`, where `f` goes out of the complex of `A` and `g`
/// comes back into it.
pub fn homotopy(f: &ChainMapCertificate, g: &ChainMapCertificate) -> Option<IntMatrix> {
    let a = &f.mat_a;
    let (m0, m1) = a.shape();
    let lhs1 = IntMatrix::identity(m1).sub(&g.f1.mul(&f.f1));
    let lhs0 = IntMatrix::identity(m0).sub(&g.f0.mul(&f.f0));
    let unknowns = m1 * m0;
    let var = |i: usize, j: usize| i * m0 + j;
    let neq = m1 * m1 + m0 * m0;
    let mut system = IntMatrix::zeros(neq, unknowns);
    let mut rhs = Vec::with_capacity(neq);
    // (h·A)[i][l] = Σ_j h[i][j]·A[j][l]
    for i in 0..m1 {
        for l in 0..m1 {
            let r = rhs.len();
            for j in 0..m0 {
                system[(r, var(i, j))] += &a[(j, l)];
            }
            rhs.push(lhs1[(i, l)].clone());
        }
    }
    // (A·h)[p][q] = Σ_i A[p][i]·h[i][q]
    for p in 0..m0 {
        for q in 0..m0 {
            let r = rhs.len();
            for i in 0..m1 {
                system[(r, var(i, q))] += &a[(p, i)];
            }
            rhs.push(lhs0[(p, q)].clone());
        }
    }
    let sol = solve(&system, &rhs)?;
    Some(IntMatrix::from_vec(m1, m0, sol))
}

/// A certificate together with one in the opposite direction built from
/// `ξ0⁻¹`, and homotopies on both sides.
#[derive(Clone, Debug)]
pub struct HomotopyInverse {
    pub backward: ChainMapCertificate,
    /// `h` on the source complex: `h·A = I − g1·f1`, `A·h = I − g0·f0`.
    pub h_source: IntMatrix,
    /// The same on the target complex, with the roles of `f` and `g` exchanged.
    pub h_target: IntMatrix,
}

/// Builds the backward certificate and the two homotopies.
pub fn certify_inverse(f: &ChainMapCertificate) -> Result<HomotopyInverse, LiftError> {
    let inv = f.xi0.inverse().map_err(|_| LiftError::NotAnIsomorphism)?;
    let g = lift_iso(&f.mat_m, &f.mat_a, &inv)?;
    let h_source = homotopy(f, &g).ok_or(LiftError::NotAnIsomorphism)?;
    let h_target = homotopy(&g, f).ok_or(LiftError::NotAnIsomorphism)?;
    Ok(HomotopyInverse { backward: g, h_source, h_target })
}

/// The twisted analogue of [`ChainMapCertificate`], for injective
/// differentials over `Z[σ]`; there are no kernels to track.
#[derive(Clone, Debug)]
pub struct SigmaChainMapCertificate {
    pub mat_a: SigmaMatrix,
    pub mat_m: SigmaMatrix,
    pub f0: SigmaMatrix,
    pub f1: SigmaMatrix,
    pub xi0: GroupHom,
}

fn injective(m: &IntMatrix) -> bool {
    rank(m) == m.cols()
}

/// Lifts a `σ`-equivariant isomorphism `ξ0: coker(A) → coker(M)` of
/// `Z[σ]`-modules to a `Z[σ]`-linear chain map; `ξ0` is written in the
/// canonical coordinates of [`coker_sigma`].
pub fn lift_iso_sigma(
    mat_a: &SigmaMatrix,
    mat_m: &SigmaMatrix,
    xi0: &GroupHom,
) -> Result<SigmaChainMapCertificate, LiftError> {
    let da = mat_a.double();
    let dm = mat_m.double();
    if !injective(&da) || !injective(&dm) {
        return Err(LiftError::KernelNonzero);
    }
    let ma = coker_sigma(mat_a);
    let mm = coker_sigma(mat_m);
    if xi0.domain().num_gens() != ma.underlying().num_gens()
        || !xi0.domain().is_isomorphic_to(ma.underlying())
        || !xi0.codomain().is_isomorphic_to(mm.underlying())
    {
        return Err(LiftError::WrongGroups);
    }
    if !ma.is_equivariant(&mm, xi0) {
        return Err(LiftError::NotEquivariant);
    }
    if !xi0.is_isomorphism() {
        return Err(LiftError::NotAnIsomorphism);
    }
    let (m0, m1) = mat_a.shape();
    let (n0, n1) = mat_m.shape();
    let mut p = IntMatrix::zeros(n0, m0);
    let mut q = IntMatrix::zeros(n0, m0);
    for v in 0..m0 {
        let mut e = alloc::vec![BigInt::zero(); 2 * m0];
        e[v] = 1.into();
        let lift = mm.underlying().lift(&xi0.apply(&ma.underlying().project(&e)));
        for i in 0..n0 {
            p[(i, v)] = lift[i].clone();
            q[(i, v)] = lift[n0 + i].clone();
        }
    }
    let f0 = SigmaMatrix::new(p, q)?;
    let big = solve_matrix(&dm, &f0.double().mul(&da)).ok_or(LiftError::NotAnIsomorphism)?;
    let f1 = SigmaMatrix::new(big.slice(0..n1, 0..m1), big.slice(n1..2 * n1, 0..m1))?;
    debug_assert_eq!(f1.double(), big);
    let cert = SigmaChainMapCertificate {
        mat_a: mat_a.clone(),
        mat_m: mat_m.clone(),
        f0,
        f1,
        xi0: xi0.clone(),
    };
    debug_assert_eq!(verify_sigma(&cert), Ok(()));
    Ok(cert)
}

/// Re-checks a twisted certificate: the square commutes over `Z[σ]`, `f0`
/// induces `ξ0`, and `ξ0` is an equivariant isomorphism.
pub fn verify_sigma(c: &SigmaChainMapCertificate) -> Result<(), VerifyFailure> {
    let (m0, m1) = c.mat_a.shape();
    let (n0, n1) = c.mat_m.shape();
    if c.f0.shape() != (n0, m0) || c.f1.shape() != (n1, m1) {
        return Err(VerifyFailure::Shapes);
    }
    if c.f0.mul(&c.mat_a) != c.mat_m.mul(&c.f1) {
        return Err(VerifyFailure::NotCommuting);
    }
    let ma = coker_sigma(&c.mat_a);
    let mm = coker_sigma(&c.mat_m);
    let d0 = c.f0.double();
    let ga = ma.underlying();
    for j in 0..ga.num_gens() {
        let g = ga.generator(j);
        if mm.underlying().project(&d0.mul_vec(&ga.lift(&g))) != c.xi0.apply(&g) {
            return Err(VerifyFailure::CokernelMap);
        }
    }
    // Doubling commutes with the swap, so f0 is Z[σ]-linear by construction;
    // check it anyway on the integer level.
    let s = swap_matrix(m0);
    if swap_matrix(n0).mul(&d0) != d0.mul(&s) {
        return Err(VerifyFailure::CokernelMap);
    }
    if !ma.is_equivariant(&mm, &c.xi0) || !c.xi0.is_isomorphism() {
        return Err(VerifyFailure::NotQuasiIsomorphism);
    }
    Ok(())
}

/// Why no isomorphism was produced.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug)]
pub enum Absence {
    SingularCountMismatch { source: usize, target: usize },
    BowenFranksMismatch { source: FgAbelianGroup, target: FgAbelianGroup },
    NoEquivariantIsomorphism,
}

impl fmt::Display for Absence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Absence::SingularCountMismatch { source, target } => {
                write!(f, "singular vertex counts differ ({source} vs {target})")
            }
            Absence::BowenFranksMismatch { source, target } => {
                write!(f, "Bowen-Franks groups differ ({source} vs {target})")
            }
            Absence::NoEquivariantIsomorphism => write!(f, "no Z[σ]-module isomorphism exists"),
        }
    }
}

/// Outcome of an existence procedure.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug)]
pub enum Decision<C> {
    Iso(C),
    NotIso(Absence),
}

impl<C> Decision<C> {
    pub fn certificate(&self) -> Option<&C> {
        match self {
            Decision::Iso(c) => Some(c),
            Decision::NotIso(_) => None,
        }
    }
}

/// The isomorphism of canonical forms: both cokernels have the same
/// invariant factors, so the identity in canonical coordinates is one.
fn canonical_identity(a: &FgAbelianGroup, b: &FgAbelianGroup) -> GroupHom {
    GroupHom::new(a.clone(), b.clone(), IntMatrix::identity(a.num_gens())).expect("same invariant factors")
}

/// Equal numbers of singular vertices and isomorphic Bowen–Franks groups
/// give a quasi-isomorphism between `I − A_Eᵗ` and `I − A_Fᵗ`.
pub fn kk_iso_exists(e: &Graph, f: &Graph) -> Decision<ChainMapCertificate> {
    let (se, sf) = (e.sinks().len(), f.sinks().len());
    if se != sf {
        return Decision::NotIso(Absence::SingularCountMismatch { source: se, target: sf });
    }
    let a = e.bf_matrix().without_labels();
    let m = f.bf_matrix().without_labels();
    let (ga, gm) = (cokernel(&a), cokernel(&m));
    if !ga.is_isomorphic_to(&gm) {
        return Decision::NotIso(Absence::BowenFranksMismatch { source: ga, target: gm });
    }
    let xi0 = canonical_identity(&ga, &gm);
    Decision::Iso(lift_iso(&a, &m, &xi0).expect("equal singular counts force equal kernel ranks"))
}

/// The twisted version: requires both doubled matrices to be injective and
/// searches for a `Z[σ]`-module isomorphism before lifting it.
pub fn kk_iso_exists_twisted(e: &Graph, f: &Graph) -> Result<Decision<SigmaChainMapCertificate>, LiftError> {
    let a = twisted_bf_matrix(e);
    let m = twisted_bf_matrix(f);
    if !injective(&a.double()) || !injective(&m.double()) {
        return Err(LiftError::KernelNonzero);
    }
    let (ma, mm) = (coker_sigma(&a), coker_sigma(&m));
    if !ma.underlying().is_isomorphic_to(mm.underlying()) {
        return Ok(Decision::NotIso(Absence::BowenFranksMismatch {
            source: ma.underlying().clone(),
            target: mm.underlying().clone(),
        }));
    }
    match sigma_iso_decide(&ma, &mm)? {
        Some(xi0) => Ok(Decision::Iso(lift_iso_sigma(&a, &m, &xi0)?)),
        None => Ok(Decision::NotIso(Absence::NoEquivariantIsomorphism)),
    }
}

/// A quasi-isomorphism from `I − Aᵗ` to its Smith form, the chain-level
/// content of the decomposition into `L_0^s ⊕ L_1^{r−s} ⊕ ⊕ L_{d_i+1}`.
pub fn structure_certificate(g: &Graph) -> ChainMapCertificate {
    let a = g.bf_matrix().without_labels();
    let d = smith(&a).d;
    let (ga, gd) = (cokernel(&a), cokernel(&d));
    lift_iso(&a, &d, &canonical_identity(&ga, &gd)).expect("a matrix and its Smith form have the same homology")
}

/// Equivariance helper for callers holding a module pair.
pub fn is_sigma_iso(m: &SigmaModule, n: &SigmaModule, h: &GroupHom) -> bool {
    m.is_equivariant(n, h) && h.is_isomorphism()
}
