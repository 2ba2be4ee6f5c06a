//! Hermite and Smith normal forms with unimodular witnesses.
//!
//! Pivots are chosen by smallest nonzero absolute value, ties broken in
//! row-major order, so the witnesses are reproducible.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Smith decomposition `U·M·V = D` together with the inverses of both
/// witnesses.
#[derive(Clone, Debug)]
pub struct Smith {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

impl Smith {
    /// The nonzero diagonal entries `d_1 | d_2 | … | d_rank`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Working state for elimination: the reduced matrix plus left and right
/// witnesses and their inverses, kept in sync by every elementary move.
struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn new(m: &IntMatrix) -> Self {
        let (r, c) = m.shape();
        Reducer {
            a: m.clone().without_labels(),
            u: IntMatrix::identity(r),
            u_inv: IntMatrix::identity(r),
            v: IntMatrix::identity(c),
            v_inv: IntMatrix::identity(c),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// `row[dst] += c·row[src]`
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_row_multiple(dst, src, c);
        self.u.add_row_multiple(dst, src, c);
        self.u_inv.add_col_multiple(src, dst, &-c);
    }

    /// `col[dst] += c·col[src]`
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_col_multiple(dst, src, c);
        self.v.add_col_multiple(dst, src, c);
        self.v_inv.add_row_multiple(src, dst, &-c);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    fn negate_col(&mut self, j: usize) {
        self.a.negate_col(j);
        self.v.negate_col(j);
        self.v_inv.negate_row(j);
    }

    /// Smallest nonzero entry (by absolute value) in the window
    /// `rows × cols`, first in row-major order among ties.
    fn min_pivot(
        &self,
        rows: core::ops::Range<usize>,
        cols: core::ops::Range<usize>,
    ) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in rows {
            for j in cols.clone() {
                let e = &self.a[(i, j)];
                if e.is_zero() {
                    continue;
                }
                let abs = e.abs();
                if best.as_ref().is_none_or(|(_, _, b)| abs < *b) {
                    best = Some((i, j, abs));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

/// Hermite normal form under row operations: returns `(H, U)` with `U`
/// unimodular and `U·M = H`, where `H` is in row echelon form, every pivot
/// is positive and the entries above a pivot lie in `[0, pivot)`.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (h, u, _) = hnf_with_inverse(m);
    (h, u)
}

pub(crate) fn hnf_with_inverse(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (rows, cols) = m.shape();
    let mut st = Reducer::new(m);
    let mut r = 0;
    for j in 0..cols {
        if r == rows {
            break;
        }
        while let Some((pi, _)) = st.min_pivot(r..rows, j..j + 1) {
            st.swap_rows(r, pi);
            let mut clean = true;
            for i in r + 1..rows {
                if st.a[(i, j)].is_zero() {
                    continue;
                }
                let q = st.a[(i, j)].div_floor(&st.a[(r, j)]);
                st.add_row(i, r, &-q);
                if !st.a[(i, j)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if st.a[(r, j)].is_zero() {
            continue;
        }
        if st.a[(r, j)].is_negative() {
            st.negate_row(r);
        }
        for i in 0..r {
            let q = st.a[(i, j)].div_floor(&st.a[(r, j)]);
            st.add_row(i, r, &-q);
        }
        r += 1;
    }
    (st.a, st.u, st.u_inv)
}

/// Smith normal form: `(D, U, V)` with `U·M·V = D`.
pub fn snf(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let s = smith(m);
    (s.d, s.u, s.v)
}

/// Smith normal form with inverse witnesses.
pub fn smith(m: &IntMatrix) -> Smith {
    let (rows, cols) = m.shape();
    let mut st = Reducer::new(m);
    let mut rank = 0;
    for t in 0..rows.min(cols) {
        while let Some((pi, pj)) = st.min_pivot(t..rows, t..cols) {
            st.swap_rows(t, pi);
            st.swap_cols(t, pj);
            let mut clean = true;
            for i in t + 1..rows {
                if st.a[(i, t)].is_zero() {
                    continue;
                }
                let q = &st.a[(i, t)] / &st.a[(t, t)];
                st.add_row(i, t, &-q);
                clean &= st.a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if st.a[(t, j)].is_zero() {
                    continue;
                }
                let q = &st.a[(t, j)] / &st.a[(t, t)];
                st.add_col(j, t, &-q);
                clean &= st.a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // Pivot row and column are clear; enforce the divisibility chain.
            let bad_row = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !st.a[(i, j)].is_multiple_of(&st.a[(t, t)])));
            match bad_row {
                Some(i) => st.add_row(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if st.a[(t, t)].is_zero() {
            break;
        }
        // Fixing the sign on the right keeps `U` free of spurious negations.
        if st.a[(t, t)].is_negative() {
            st.negate_col(t);
        }
        rank += 1;
    }
    Smith {
        d: st.a,
        u: st.u,
        v: st.v,
        u_inv: st.u_inv,
        v_inv: st.v_inv,
        rank,
    }
}

/// Rank of an integer matrix.
pub fn rank(m: &IntMatrix) -> usize {
    let (h, _) = hnf(m);
    (0..h.rows()).filter(|&i| h.row(i).iter().any(|e| !e.is_zero())).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check_smith(m: &IntMatrix) -> Smith {
        let s = smith(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert!(s.u.mul(&s.u_inv).is_identity());
        assert!(s.v.mul(&s.v_inv).is_identity());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn snf_of_diag_6_4() {
        let s = check_smith(&IntMatrix::from_rows(&[[6, 0], [0, 4]]));
        assert_eq!(s.diagonal(), [BigInt::from(2), BigInt::from(12)]);
    }

    #[test]
    fn snf_of_2_4_6_8() {
        let s = check_smith(&IntMatrix::from_rows(&[[2, 4], [6, 8]]));
        assert_eq!(s.diagonal(), [BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn snf_of_unimodular_is_identity() {
        let s = check_smith(&IntMatrix::from_rows(&[[2, 3], [1, 2]]));
        assert!(s.d.is_identity());
    }

    #[test]
    fn snf_handles_empty_and_zero() {
        let s = check_smith(&IntMatrix::zeros(1, 0));
        assert_eq!(s.rank, 0);
        let s = check_smith(&IntMatrix::zeros(2, 3));
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn hnf_examples() {
        let m = IntMatrix::from_rows(&[[2, 4], [6, 8]]);
        let (h, u) = hnf(&m);
        assert_eq!(u.mul(&m), h);
        assert!(u.is_unimodular());
        assert_eq!(h[(0, 0)], BigInt::from(2));
        assert_eq!(h, IntMatrix::from_rows(&[[2, 0], [0, 4]]));

        let (h, u) = hnf(&IntMatrix::identity(3));
        assert!(h.is_identity() && u.is_identity());

        let z = IntMatrix::zeros(2, 2);
        let (h, u) = hnf(&z);
        assert!(h.is_zero() && u.is_identity());
    }

    #[test]
    fn hnf_inverse_tracks() {
        let m = IntMatrix::from_rows(&[[3, 5, 7], [2, 4, 6], [1, 1, 1]]);
        let (h, u, ui) = hnf_with_inverse(&m);
        assert_eq!(u.mul(&m), h);
        assert!(u.mul(&ui).is_identity());
        assert!(u.det().abs().is_one());
    }

    #[test]
    fn rank_counts() {
        assert_eq!(rank(&IntMatrix::from_rows(&[[1, 2], [2, 4]])), 1);
        assert_eq!(rank(&IntMatrix::from_rows(&[[1, 2], [2, 5]])), 2);
    }
}
