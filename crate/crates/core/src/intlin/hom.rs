//! Hom and tensor of finitely generated abelian groups, and searches for
//! homomorphisms with prescribed values.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::group::{kernel_basis, solve, Subquotient};
use super::{Error, FgAbelianGroup, GroupHom, IntMatrix, SEARCH_LIMIT};

/// `Hom(A, B)` from invariant factors: `Hom(Z, Z) = Z`, `Hom(Z, Z/b) = Z/b`,
/// `Hom(Z/a, Z) = 0`, `Hom(Z/a, Z/b) = Z/gcd(a, b)`.
pub fn hom_group(a: &FgAbelianGroup, b: &FgAbelianGroup) -> FgAbelianGroup {
    let mut orders = Vec::new();
    for x in a.moduli() {
        for y in b.moduli() {
            match (x.is_zero(), y.is_zero()) {
                (true, _) => orders.push(y.clone()),
                (false, true) => {}
                (false, false) => orders.push(x.gcd(&y)),
            }
        }
    }
    FgAbelianGroup::from_cyclic_orders(&orders)
}

/// `A ⊗ B` from invariant factors.
pub fn tensor_group(a: &FgAbelianGroup, b: &FgAbelianGroup) -> FgAbelianGroup {
    let mut orders = Vec::new();
    for x in a.moduli() {
        for y in b.moduli() {
            // gcd(0, y) = y covers the free cases.
            orders.push(x.gcd(&y));
        }
    }
    FgAbelianGroup::from_cyclic_orders(&orders)
}

/// The group of homomorphisms `A → B`, optionally restricted to those
/// intertwining two endomorphisms (`h∘σ_A = σ_B∘h`), computed as a lattice
/// of integer matrices modulo the matrices that vanish in `B`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    domain: FgAbelianGroup,
    codomain: FgAbelianGroup,
    space: Subquotient,
}

impl HomSpace {
    pub fn new(domain: &FgAbelianGroup, codomain: &FgAbelianGroup) -> Self {
        Self::build(domain, codomain, None)
    }

    /// Homomorphisms commuting with the given endomorphisms, which are
    /// matrices in canonical coordinates of `domain` and `codomain`.
    pub fn equivariant(
        domain: &FgAbelianGroup,
        codomain: &FgAbelianGroup,
        sigma_domain: &IntMatrix,
        sigma_codomain: &IntMatrix,
    ) -> Self {
        Self::build(domain, codomain, Some((sigma_domain, sigma_codomain)))
    }

    fn build(a: &FgAbelianGroup, b: &FgAbelianGroup, sigma: Option<(&IntMatrix, &IntMatrix)>) -> Self {
        let ka = a.num_gens();
        let kb = b.num_gens();
        let ma = a.moduli();
        let mb = b.moduli();
        let ny = ka * kb;
        let y_idx = |i: usize, j: usize| j * kb + i;

        // Unknowns: Y (ny), then one slack per equation row.
        let mut rows: Vec<(Vec<(usize, BigInt)>, BigInt)> = Vec::new();
        for (j, d) in ma.iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            for (i, b) in mb.iter().enumerate().take(kb) {
                rows.push((alloc::vec![(y_idx(i, j), d.clone())], b.clone()));
            }
        }
        if let Some((sa, sb)) = sigma {
            for i in 0..kb {
                for j in 0..ka {
                    let mut eq = Vec::new();
                    for k in 0..kb {
                        if !sb[(i, k)].is_zero() {
                            eq.push((y_idx(k, j), sb[(i, k)].clone()));
                        }
                    }
                    for k in 0..ka {
                        if !sa[(k, j)].is_zero() {
                            eq.push((y_idx(i, k), -sa[(k, j)].clone()));
                        }
                    }
                    rows.push((eq, mb[i].clone()));
                }
            }
        }
        let nslack = rows.len();
        let mut system = IntMatrix::zeros(rows.len(), ny + nslack);
        for (r, (eq, modulus)) in rows.iter().enumerate() {
            for (c, v) in eq {
                system[(r, *c)] += v;
            }
            system[(r, ny + r)] = -modulus.clone();
        }
        let l_gens = if rows.is_empty() {
            IntMatrix::identity(ny)
        } else {
            let k = kernel_basis(&system);
            k.slice(0..ny, 0..k.cols())
        };
        let mut r_cols = Vec::new();
        for j in 0..ka {
            for (i, m) in mb.iter().enumerate() {
                if !m.is_zero() {
                    let mut v = alloc::vec![BigInt::zero(); ny];
                    v[y_idx(i, j)] = m.clone();
                    r_cols.push(v);
                }
            }
        }
        let mut r_gens = IntMatrix::zeros(ny, r_cols.len());
        for (c, v) in r_cols.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                r_gens[(i, c)] = x.clone();
            }
        }
        HomSpace {
            domain: a.clone(),
            codomain: b.clone(),
            space: Subquotient::new(&l_gens, &r_gens),
        }
    }

    /// The hom group itself.
    pub fn group(&self) -> &FgAbelianGroup {
        &self.space.group
    }

    /// The homomorphism corresponding to an element of [`HomSpace::group`].
    pub fn hom_at(&self, elem: &[BigInt]) -> GroupHom {
        let kb = self.codomain.num_gens();
        let ka = self.domain.num_gens();
        let v = self.space.represent(elem);
        let mut m = IntMatrix::zeros(kb, ka);
        for j in 0..ka {
            for i in 0..kb {
                m[(i, j)] = v[j * kb + i].clone();
            }
        }
        GroupHom::new(self.domain.clone(), self.codomain.clone(), m).expect("hom space element is well defined")
    }
}

/// A homomorphism `h: A → B` with `h(a) = b`, if one exists.
///
/// Decided exactly by integer solvability of the relations of both groups
/// together with the value constraint.
pub fn hom_exists_with_value(
    a_group: &FgAbelianGroup,
    a: &[BigInt],
    b_group: &FgAbelianGroup,
    b: &[BigInt],
) -> Option<GroupHom> {
    let ka = a_group.num_gens();
    let kb = b_group.num_gens();
    let ma = a_group.moduli();
    let mb = b_group.moduli();
    let a = a_group.reduce(a);
    let b = b_group.reduce(b);
    let ny = ka * kb;
    let y_idx = |i: usize, j: usize| j * kb + i;

    let torsion_cols: Vec<usize> = (0..ka).filter(|&j| !ma[j].is_zero()).collect();
    let neq = torsion_cols.len() * kb + kb;
    let nvars = ny + neq;
    let mut system = IntMatrix::zeros(neq, nvars);
    let mut rhs = alloc::vec![BigInt::zero(); neq];
    let mut r = 0;
    for &j in &torsion_cols {
        for i in 0..kb {
            system[(r, y_idx(i, j))] = ma[j].clone();
            system[(r, ny + r)] = -mb[i].clone();
            r += 1;
        }
    }
    for i in 0..kb {
        for j in 0..ka {
            system[(r, y_idx(i, j))] = a[j].clone();
        }
        system[(r, ny + r)] = -mb[i].clone();
        rhs[r] = b[i].clone();
        r += 1;
    }
    let sol = solve(&system, &rhs)?;
    let mut m = IntMatrix::zeros(kb, ka);
    for j in 0..ka {
        for i in 0..kb {
            m[(i, j)] = sol[y_idx(i, j)].clone();
        }
    }
    let h = GroupHom::new(a_group.clone(), b_group.clone(), m).expect("solution respects relations");
    debug_assert_eq!(h.apply(&a), b);
    Some(h)
}

/// An isomorphism `h: A → B` of finite groups with `h(a) = b`, found by
/// exhaustive search over generator images (first hit in enumeration
/// order), or `None` if there is none.
pub fn iso_with_element_constraint(
    a_group: &FgAbelianGroup,
    a: &[BigInt],
    b_group: &FgAbelianGroup,
    b: &[BigInt],
) -> Result<Option<GroupHom>, Error> {
    if !a_group.is_finite() || !b_group.is_finite() {
        return Err(Error::UnsupportedInfiniteGroup);
    }
    if !a_group.is_isomorphic_to(b_group) {
        return Ok(None);
    }
    let a = a_group.reduce(a);
    let b = b_group.reduce(b);
    let elements = b_group.elements()?;
    // An isomorphism preserves element orders, so generator g_j can only go
    // to elements of the same order.
    let candidates: Vec<Vec<&Vec<BigInt>>> = a_group
        .invariant_factors()
        .iter()
        .map(|d| {
            elements
                .iter()
                .filter(|e| b_group.element_order(e).as_ref() == Some(d))
                .collect()
        })
        .collect();
    let total: f64 = candidates.iter().map(|c| c.len() as f64).product();
    if total > (SEARCH_LIMIT as f64) * 100.0 {
        return Err(Error::GroupTooLarge);
    }
    let k = a_group.num_gens();
    let mut choice = alloc::vec![0usize; k];
    if candidates.iter().any(Vec::is_empty) && k > 0 {
        return Ok(None);
    }
    loop {
        let mut m = IntMatrix::zeros(k, k);
        for j in 0..k {
            for (i, x) in candidates[j][choice[j]].iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        let h = GroupHom::new(a_group.clone(), b_group.clone(), m).expect("orders match");
        if h.apply(&a) == b && h.is_injective() {
            return Ok(Some(h));
        }
        // Advance the mixed-radix counter.
        let mut pos = 0;
        loop {
            if pos == k {
                return Ok(None);
            }
            choice[pos] += 1;
            if choice[pos] < candidates[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hom_examples() {
        assert!(hom_group(&FgAbelianGroup::cyclic(3), &FgAbelianGroup::cyclic(7)).is_trivial());
        assert!(hom_group(&FgAbelianGroup::free(1), &FgAbelianGroup::free(1)).is_isomorphic_to(&FgAbelianGroup::free(1)));
        assert!(hom_group(&FgAbelianGroup::cyclic(6), &FgAbelianGroup::cyclic(4)).is_isomorphic_to(&FgAbelianGroup::cyclic(2)));
    }

    #[test]
    fn tensor_examples() {
        assert!(tensor_group(&FgAbelianGroup::cyclic(3), &FgAbelianGroup::cyclic(7)).is_trivial());
        let b = FgAbelianGroup::from_cyclic_orders(&bi(&[0, 4, 6]));
        assert!(tensor_group(&FgAbelianGroup::free(1), &b).is_isomorphic_to(&b));
        assert!(tensor_group(&FgAbelianGroup::cyclic(6), &FgAbelianGroup::cyclic(4)).is_isomorphic_to(&FgAbelianGroup::cyclic(2)));
    }

    #[test]
    fn hom_space_matches_formula() {
        for (x, y) in [(&[3i64][..], &[7i64][..]), (&[6], &[4]), (&[0, 2], &[0, 4]), (&[2, 4], &[2, 2, 0])] {
            let a = FgAbelianGroup::from_cyclic_orders(&bi(x));
            let b = FgAbelianGroup::from_cyclic_orders(&bi(y));
            let space = HomSpace::new(&a, &b);
            assert!(space.group().is_isomorphic_to(&hom_group(&a, &b)), "{a} -> {b}");
        }
    }

    #[test]
    fn value_constrained_homs() {
        let z3 = FgAbelianGroup::cyclic(3);
        let z7 = FgAbelianGroup::cyclic(7);
        assert!(hom_exists_with_value(&z3, &bi(&[1]), &z7, &bi(&[1])).is_none());
        let h = hom_exists_with_value(&z3, &bi(&[1]), &z7, &bi(&[0])).unwrap();
        assert!(h.matrix().is_zero());
        let z = FgAbelianGroup::free(1);
        let b = FgAbelianGroup::from_cyclic_orders(&bi(&[0, 6]));
        let h = hom_exists_with_value(&z, &bi(&[1]), &b, &bi(&[-4, 5])).unwrap();
        assert_eq!(h.apply(&bi(&[1])), bi(&[-4, 5]));
    }

    #[test]
    fn constrained_isomorphisms() {
        let z3 = FgAbelianGroup::cyclic(3);
        let h = iso_with_element_constraint(&z3, &bi(&[1]), &z3, &bi(&[2])).unwrap().unwrap();
        assert_eq!(h.apply(&bi(&[1])), bi(&[2]));
        let z4 = FgAbelianGroup::cyclic(4);
        assert!(iso_with_element_constraint(&z4, &bi(&[1]), &z4, &bi(&[2])).unwrap().is_none());
        let t = FgAbelianGroup::trivial();
        let h = iso_with_element_constraint(&t, &[], &t, &[]).unwrap().unwrap();
        assert!(h.is_isomorphism());
        assert_eq!(
            iso_with_element_constraint(&FgAbelianGroup::free(1), &bi(&[1]), &FgAbelianGroup::free(1), &bi(&[1])).unwrap_err(),
            Error::UnsupportedInfiniteGroup
        );
    }
}
