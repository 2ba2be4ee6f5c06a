use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::normal_form::{hnf, smith};
use super::{Error, IntMatrix};

/// A finitely generated abelian group `Z^r ⊕ Z/d_1 ⊕ … ⊕ Z/d_n` with
/// `2 ≤ d_1 | d_2 | … | d_n`, remembered together with the presentation it
/// came from.
///
/// Elements are written in *canonical coordinates*: `r` free coordinates
/// followed by one coordinate per invariant factor, the `i`-th torsion
/// coordinate reduced into `[0, d_i)`. `proj` maps the presentation's
/// ambient lattice onto canonical coordinates and `section` lifts each
/// canonical generator back to the ambient lattice.
#[derive(Clone, Debug)]
pub struct FgAbelianGroup {
    rank: usize,
    invariant_factors: Vec<BigInt>,
    presentation: IntMatrix,
    proj: IntMatrix,
    section: IntMatrix,
}

impl FgAbelianGroup {
    /// The group `Z^rank ⊕ ⊕ Z/d_i` with its standard diagonal presentation.
    ///
    /// `factors` must already form a divisibility chain of integers `≥ 2`;
    /// use [`FgAbelianGroup::from_cyclic_orders`] for arbitrary input.
    pub fn canonical(rank: usize, factors: Vec<BigInt>) -> Self {
        debug_assert!(factors.iter().all(|d| *d >= BigInt::from(2)));
        debug_assert!(factors.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        let k = rank + factors.len();
        let mut presentation = IntMatrix::zeros(k, factors.len());
        for (i, d) in factors.iter().enumerate() {
            presentation[(rank + i, i)] = d.clone();
        }
        FgAbelianGroup {
            rank,
            invariant_factors: factors,
            presentation,
            proj: IntMatrix::identity(k),
            section: IntMatrix::identity(k),
        }
    }

    pub fn trivial() -> Self {
        Self::canonical(0, Vec::new())
    }

    pub fn free(rank: usize) -> Self {
        Self::canonical(rank, Vec::new())
    }

    pub fn cyclic(order: impl Into<BigInt>) -> Self {
        Self::from_cyclic_orders(&[order.into()])
    }

    /// `⊕ Z/n_i`, where an order of `0` stands for a copy of `Z`.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Self {
        cokernel(&IntMatrix::diagonal(orders))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn presentation(&self) -> &IntMatrix {
        &self.presentation
    }

    /// Ambient lattice → canonical coordinates.
    pub fn proj(&self) -> &IntMatrix {
        &self.proj
    }

    /// Canonical generators → ambient lattice.
    pub fn section(&self) -> &IntMatrix {
        &self.section
    }

    /// Number of canonical coordinates.
    pub fn num_gens(&self) -> usize {
        self.rank + self.invariant_factors.len()
    }

    /// Dimension of the ambient lattice of the presentation.
    pub fn ambient_dim(&self) -> usize {
        self.presentation.rows()
    }

    /// Order of each canonical coordinate, `0` for free coordinates.
    pub fn moduli(&self) -> Vec<BigInt> {
        let mut m = vec![BigInt::zero(); self.rank];
        m.extend(self.invariant_factors.iter().cloned());
        m
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.num_gens() == 0
    }

    /// Group order, `None` when the group is infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.invariant_factors.iter().product())
    }

    /// Same rank and invariant factors, i.e. isomorphic.
    pub fn is_isomorphic_to(&self, other: &FgAbelianGroup) -> bool {
        self.rank == other.rank && self.invariant_factors == other.invariant_factors
    }

    pub fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.num_gens()]
    }

    /// The `i`-th canonical generator.
    pub fn generator(&self, i: usize) -> Vec<BigInt> {
        let mut e = self.zero();
        e[i] = BigInt::one();
        e
    }

    /// Reduces arbitrary canonical coordinates into normal range.
    pub fn reduce(&self, elem: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(elem.len(), self.num_gens(), "element has wrong length");
        elem.iter()
            .zip(self.moduli())
            .map(|(x, m)| if m.is_zero() { x.clone() } else { x.mod_floor(&m) })
            .collect()
    }

    pub fn is_zero_elem(&self, elem: &[BigInt]) -> bool {
        self.reduce(elem).iter().all(Zero::is_zero)
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&s)
    }

    pub fn scale(&self, a: &[BigInt], c: &BigInt) -> Vec<BigInt> {
        let s: Vec<BigInt> = a.iter().map(|x| x * c).collect();
        self.reduce(&s)
    }

    /// Class of an ambient vector in canonical coordinates.
    pub fn project(&self, ambient: &[BigInt]) -> Vec<BigInt> {
        self.reduce(&self.proj.mul_vec(ambient))
    }

    /// Some ambient representative of a canonical element.
    pub fn lift(&self, elem: &[BigInt]) -> Vec<BigInt> {
        self.section.mul_vec(elem)
    }

    /// Order of an element, `None` when it has infinite order.
    pub fn element_order(&self, elem: &[BigInt]) -> Option<BigInt> {
        let e = self.reduce(elem);
        let mut order = BigInt::one();
        for (x, m) in e.iter().zip(self.moduli()) {
            if x.is_zero() {
                continue;
            }
            if m.is_zero() {
                return None;
            }
            order = order.lcm(&(&m / x.gcd(&m)));
        }
        Some(order)
    }

    /// All elements of a finite group in mixed-radix order (first torsion
    /// coordinate varies fastest).
    pub fn elements(&self) -> Result<Vec<Vec<BigInt>>, Error> {
        if !self.is_finite() {
            return Err(Error::UnsupportedInfiniteGroup);
        }
        let order = self.order().unwrap_or_default();
        if order > BigInt::from(super::SEARCH_LIMIT) {
            return Err(Error::GroupTooLarge);
        }
        let moduli = self.moduli();
        let n = order.to_usize().unwrap_or(0);
        let mut out = Vec::with_capacity(n);
        let mut cur = self.zero();
        for _ in 0..n {
            out.push(cur.clone());
            for (x, m) in cur.iter_mut().zip(&moduli) {
                *x += 1;
                if x < &mut m.clone() {
                    break;
                }
                *x = BigInt::zero();
            }
        }
        Ok(out)
    }

    /// `self ⊕ other` in canonical form.
    pub fn direct_sum(&self, other: &FgAbelianGroup) -> FgAbelianGroup {
        let mut orders = self.moduli();
        orders.extend(other.moduli());
        Self::from_cyclic_orders(&orders)
    }

    /// Quotient by the subgroup generated by the given canonical elements
    /// (one per column).
    pub fn quotient(&self, gens: &IntMatrix) -> FgAbelianGroup {
        let relations = IntMatrix::diagonal(&self.moduli()).hstack(gens);
        cokernel(&relations)
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut first = true;
        if self.rank > 0 {
            if self.rank == 1 {
                write!(f, "Z")?;
            } else {
                write!(f, "Z^{}", self.rank)?;
            }
            first = false;
        }
        for d in &self.invariant_factors {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "Z/{d}")?;
            first = false;
        }
        Ok(())
    }
}

/// Cokernel of `M`, viewed as a map from the column lattice into the row
/// lattice.
pub fn cokernel(m: &IntMatrix) -> FgAbelianGroup {
    let s = smith(m);
    let rows = m.rows();
    let diag = s.diagonal();
    // Free coordinates first, then torsion in ascending order.
    let mut coords: Vec<usize> = (s.rank..rows).collect();
    let free = coords.len();
    let mut factors = Vec::new();
    for (i, d) in diag.iter().enumerate() {
        if !d.is_one() {
            coords.push(i);
            factors.push(d.clone());
        }
    }
    let mut proj = IntMatrix::zeros(coords.len(), rows);
    let mut section = IntMatrix::zeros(rows, coords.len());
    for (c, &i) in coords.iter().enumerate() {
        for j in 0..rows {
            proj[(c, j)] = if c < free {
                s.u[(i, j)].clone()
            } else {
                s.u[(i, j)].mod_floor(&factors[c - free])
            };
            section[(j, c)] = s.u_inv[(j, i)].clone();
        }
    }
    FgAbelianGroup {
        rank: free,
        invariant_factors: factors,
        presentation: m.clone(),
        proj,
        section,
    }
}

/// Basis (as columns) of the integer kernel `{x : M·x = 0}`. The lattice it
/// spans is saturated.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let s = smith(m);
    let cols: Vec<usize> = (s.rank..m.cols()).collect();
    s.v.select_cols(&cols)
}

/// Some integer solution of `M·x = b`, or `None` if none exists.
pub fn solve(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let rhs = IntMatrix::column(b);
    solve_matrix(m, &rhs).map(|x| x.col(0))
}

/// Integer `X` with `M·X = B`, solved column by column against a single
/// Smith decomposition.
pub fn solve_matrix(m: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(m.rows(), b.rows(), "right-hand side has wrong height");
    let s = smith(m);
    let c = s.u.mul(b);
    let mut y = IntMatrix::zeros(m.cols(), b.cols());
    for j in 0..b.cols() {
        for i in 0..m.rows() {
            let ci = &c[(i, j)];
            if i < s.rank {
                let (q, r) = ci.div_rem(&s.d[(i, i)]);
                if !r.is_zero() {
                    return None;
                }
                y[(i, j)] = q;
            } else if !ci.is_zero() {
                return None;
            }
        }
    }
    Some(s.v.mul(&y))
}

/// A basis (as columns) of the lattice spanned by the columns of `gens`.
pub fn lattice_basis(gens: &IntMatrix) -> IntMatrix {
    let (h, _) = hnf(&gens.transpose().without_labels());
    let nonzero: Vec<usize> = (0..h.rows())
        .filter(|&i| h.row(i).iter().any(|e| !e.is_zero()))
        .collect();
    let mut out = IntMatrix::zeros(gens.rows(), nonzero.len());
    for (c, &i) in nonzero.iter().enumerate() {
        for j in 0..gens.rows() {
            out[(j, c)] = h[(i, j)].clone();
        }
    }
    out
}

/// Kernel of the map `Z^n / D → Z^m / C` induced by `T`, where the columns
/// of `D` and `C` generate the relations. Elements are written in `Z^n`.
pub fn presented_kernel(t: &IntMatrix, domain_rel: &IntMatrix, codomain_rel: &IntMatrix) -> Subquotient {
    let n = t.cols();
    let k = kernel_basis(&t.hstack(&codomain_rel.neg()));
    let lattice = lattice_basis(&k.slice(0..n, 0..k.cols()));
    Subquotient::new(&lattice, domain_rel)
}

/// The quotient `L / R` of two lattices in `Z^N` with `R ⊆ L`, where `L` is
/// given by a basis and `R` by generators.
#[derive(Clone, Debug)]
pub struct Subquotient {
    /// Basis of `L`, one column per coordinate.
    pub basis: IntMatrix,
    /// `L / R`, presented in `L`-coordinates.
    pub group: FgAbelianGroup,
}

impl Subquotient {
    /// `L` given by spanning columns, `R` by generating columns.
    pub fn new(l_gens: &IntMatrix, r_gens: &IntMatrix) -> Self {
        let basis = lattice_basis(l_gens);
        let rel = if r_gens.cols() == 0 {
            IntMatrix::zeros(basis.cols(), 0)
        } else {
            solve_matrix(&basis, r_gens).expect("relation lattice is not contained in the lattice")
        };
        Subquotient { group: cokernel(&rel), basis }
    }

    /// Vector in `Z^N` representing a canonical element.
    pub fn represent(&self, elem: &[BigInt]) -> Vec<BigInt> {
        self.basis.mul_vec(&self.group.lift(elem))
    }

    /// Canonical class of a vector lying in `L`; `None` if it is not in `L`.
    pub fn classify(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        solve(&self.basis, v).map(|x| self.group.project(&x))
    }
}

/// A homomorphism between finitely generated abelian groups, written as a
/// matrix from the domain's canonical coordinates to the codomain's.
#[derive(Clone, Debug)]
pub struct GroupHom {
    domain: FgAbelianGroup,
    codomain: FgAbelianGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    /// Builds the map, reducing entries and checking that every relation of
    /// the domain is sent to zero.
    pub fn new(domain: FgAbelianGroup, codomain: FgAbelianGroup, matrix: IntMatrix) -> Result<Self, Error> {
        if matrix.shape() != (codomain.num_gens(), domain.num_gens()) {
            return Err(Error::DimensionMismatch);
        }
        let mut reduced = IntMatrix::zeros(matrix.rows(), matrix.cols());
        for j in 0..matrix.cols() {
            let col = codomain.reduce(&matrix.col(j));
            for (i, x) in col.into_iter().enumerate() {
                reduced[(i, j)] = x;
            }
        }
        let h = GroupHom {
            domain,
            codomain,
            matrix: reduced,
        };
        if !h.is_well_defined() {
            return Err(Error::NotWellDefined);
        }
        Ok(h)
    }

    pub fn identity(group: &FgAbelianGroup) -> Self {
        GroupHom {
            domain: group.clone(),
            codomain: group.clone(),
            matrix: IntMatrix::identity(group.num_gens()),
        }
    }

    pub fn zero(domain: &FgAbelianGroup, codomain: &FgAbelianGroup) -> Self {
        GroupHom {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix: IntMatrix::zeros(codomain.num_gens(), domain.num_gens()),
        }
    }

    pub fn domain(&self) -> &FgAbelianGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FgAbelianGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, elem: &[BigInt]) -> Vec<BigInt> {
        self.codomain.reduce(&self.matrix.mul_vec(elem))
    }

    /// Each torsion generator of order `d` must go to an element killed by `d`.
    pub fn is_well_defined(&self) -> bool {
        let moduli = self.domain.moduli();
        moduli.iter().enumerate().all(|(j, d)| {
            d.is_zero() || self.codomain.is_zero_elem(&self.matrix.col(j).iter().map(|x| x * d).collect::<Vec<_>>())
        })
    }

    pub fn compose(&self, first: &GroupHom) -> GroupHom {
        assert!(first.codomain.is_isomorphic_to(&self.domain), "incompatible composition");
        let m = self.matrix.mul(&first.matrix);
        GroupHom::new(first.domain.clone(), self.codomain.clone(), m).expect("composite of homomorphisms")
    }

    pub fn is_surjective(&self) -> bool {
        let relations = IntMatrix::diagonal(&self.codomain.moduli());
        cokernel(&self.matrix.hstack(&relations)).is_trivial()
    }

    pub fn is_injective(&self) -> bool {
        let k = self.kernel_lattice();
        let moduli = self.domain.moduli();
        {
            (0..k.cols()).all(|c| {
                (0..k.rows()).all(|i| {
                    let x = &k[(i, c)];
                    if moduli[i].is_zero() {
                        x.is_zero()
                    } else {
                        x.is_multiple_of(&moduli[i])
                    }
                })
            })
        }
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// `{x ∈ Z^k_A : matrix·x ∈ relations of the codomain}`, as a basis.
    fn kernel_lattice(&self) -> IntMatrix {
        let ka = self.domain.num_gens();
        let relations = IntMatrix::diagonal(&self.codomain.moduli());
        let k = kernel_basis(&self.matrix.hstack(&relations.neg()));
        lattice_basis(&k.slice(0..ka, 0..k.cols()))
    }

    /// Kernel as a group, with elements represented in domain coordinates.
    pub fn kernel(&self) -> Subquotient {
        let rel = IntMatrix::diagonal(&self.domain.moduli());
        Subquotient::new(&self.kernel_lattice(), &rel)
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Result<GroupHom, Error> {
        if !self.is_isomorphism() {
            return Err(Error::NotAnIsomorphism);
        }
        let kb = self.codomain.num_gens();
        let ka = self.domain.num_gens();
        let relations = IntMatrix::diagonal(&self.codomain.moduli());
        let system = self.matrix.hstack(&relations);
        let sol = solve_matrix(&system, &IntMatrix::identity(kb)).ok_or(Error::NotAnIsomorphism)?;
        GroupHom::new(self.codomain.clone(), self.domain.clone(), sol.slice(0..ka, 0..kb))
    }

    /// Same domain/codomain structure and the same map.
    pub fn same_map(&self, other: &GroupHom) -> bool {
        self.domain.is_isomorphic_to(&other.domain)
            && self.codomain.is_isomorphic_to(&other.codomain)
            && (0..self.domain.num_gens()).all(|j| {
                let a = self.apply(&self.domain.generator(j));
                let b = other.apply(&other.domain.generator(j));
                a == b
            })
    }
}
