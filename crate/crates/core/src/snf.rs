//! Smith normal form and the exact solvers built on it.
//!
//! Pivot rule: smallest Euclidean norm in the remaining submatrix, ties
//! broken by lowest (row, col). This pins the output for the golden tests.

use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::matrix::Matrix;
use crate::ring::Elem;

#[derive(Debug, Clone)]
pub struct Smith {
    pub u: Matrix,
    pub d: Matrix,
    pub v: Matrix,
}

impl Smith {
    pub fn diag(&self) -> Vec<Elem> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i).clone()).collect()
    }
}

fn find_pivot(d: &Matrix, k: usize) -> Option<(usize, usize)> {
    let ring = d.ring();
    let mut best: Option<(BigUint, usize, usize)> = None;
    for r in k..d.rows() {
        for c in k..d.cols() {
            let e = d.get(r, c);
            if ring.is_zero(e) {
                continue;
            }
            let n = ring.norm(e);
            match &best {
                Some((bn, _, _)) if *bn <= n => {}
                _ => best = Some((n, r, c)),
            }
        }
    }
    best.map(|(_, r, c)| (r, c))
}

/// U * A * V = D with U, V invertible and D diagonal with a divisibility
/// chain of canonical associates.
pub fn smith(a: &Matrix) -> Smith {
    let ring = a.ring().clone();
    let mut d = a.clone();
    let mut u = Matrix::identity(&ring, a.rows());
    let mut v = Matrix::identity(&ring, a.cols());

    let steps = a.rows().min(a.cols());
    for k in 0..steps {
        'pivot: loop {
            let Some((pr, pc)) = find_pivot(&d, k) else {
                break 'pivot; // submatrix is zero
            };
            d.swap_rows(k, pr);
            u.swap_rows(k, pr);
            d.swap_cols(k, pc);
            v.swap_cols(k, pc);

            let mut dirty = false;
            for i in k + 1..d.rows() {
                if ring.is_zero(d.get(i, k)) {
                    continue;
                }
                let (q, r) = ring.div_rem(d.get(i, k), d.get(k, k));
                let nq = ring.neg(&q);
                d.add_row_multiple(i, k, &nq);
                u.add_row_multiple(i, k, &nq);
                if !ring.is_zero(&r) {
                    dirty = true;
                }
            }
            for j in k + 1..d.cols() {
                if ring.is_zero(d.get(k, j)) {
                    continue;
                }
                let (q, r) = ring.div_rem(d.get(k, j), d.get(k, k));
                let nq = ring.neg(&q);
                d.add_col_multiple(j, k, &nq);
                v.add_col_multiple(j, k, &nq);
                if !ring.is_zero(&r) {
                    dirty = true;
                }
            }
            if dirty {
                continue 'pivot;
            }
            // divisibility chain: pivot must divide the rest of the submatrix
            let mut fixed = true;
            'scan: for i in k + 1..d.rows() {
                for j in k + 1..d.cols() {
                    if !ring.divides(d.get(k, k), d.get(i, j)) {
                        let one = ring.one();
                        d.add_row_multiple(k, i, &one);
                        u.add_row_multiple(k, i, &one);
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break 'pivot;
            }
        }
        // normalize the associate
        if !ring.is_zero(d.get(k, k)) {
            let (c, unit) = ring.canonical_associate(d.get(k, k));
            if !ring.eq(&unit, &ring.one()) {
                d.scale_row(k, &unit);
                u.scale_row(k, &unit);
            }
            debug_assert!(ring.eq(d.get(k, k), &c));
        }
    }
    Smith { u, d, v }
}

/// A particular solution X of A X = B, if any (deterministic: the Smith
/// route with all free coordinates set to zero).
pub fn solve(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    assert_eq!(a.rows(), b.rows(), "solve shape");
    let ring = a.ring();
    let s = smith(a);
    let c = s.u.mul(b);
    let diag = s.diag();
    let mut y = Matrix::zeros(ring, a.cols(), b.cols());
    for col in 0..b.cols() {
        for i in 0..a.rows() {
            let ci = c.get(i, col);
            if i < diag.len() {
                if ring.is_zero(&diag[i]) {
                    if !ring.is_zero(ci) {
                        return None;
                    }
                } else {
                    match ring.exact_div(ci, &diag[i]) {
                        Some(q) => y.set(i, col, q),
                        None => return None,
                    }
                }
            } else if !ring.is_zero(ci) {
                return None;
            }
        }
    }
    Some(s.v.mul(&y))
}

/// Columns generating ker(A) as a submodule of the column space. Over a PID
/// the output is a saturated basis (columns of an invertible matrix).
pub fn kernel(a: &Matrix) -> Matrix {
    let ring = a.ring();
    let s = smith(a);
    let diag = s.diag();
    let mut cols: Vec<Matrix> = Vec::new();
    for j in 0..a.cols() {
        if j >= diag.len() || ring.is_zero(&diag[j]) {
            let mut e = Matrix::zeros(ring, a.cols(), 1);
            e.set(j, 0, ring.one());
            cols.push(e);
        } else if let Some(ann) = ring.annihilator(&diag[j]) {
            if !ring.is_zero(&ann) {
                let mut e = Matrix::zeros(ring, a.cols(), 1);
                e.set(j, 0, ann);
                cols.push(e);
            }
        }
    }
    let mut k = Matrix::zeros(ring, a.cols(), 0);
    for c in &cols {
        k = k.hstack(c);
    }
    s.v.mul(&k)
}

/// Is every column of b in the column span of a?
pub fn in_span(a: &Matrix, b: &Matrix) -> bool {
    solve(a, b).is_some()
}

/// Do the columns of a and b span the same submodule?
pub fn same_span(a: &Matrix, b: &Matrix) -> bool {
    in_span(a, b) && in_span(b, a)
}

/// Inverse of a square matrix with unit determinant; None otherwise.
pub fn inverse(a: &Matrix) -> Option<Matrix> {
    if a.rows() != a.cols() {
        return None;
    }
    let id = Matrix::identity(a.ring(), a.rows());
    let inv = solve(a, &id)?;
    if a.mul(&inv) == id && inv.mul(a) == id {
        Some(inv)
    } else {
        None
    }
}

/// Invertibility over the ring (all Smith diagonal entries units).
pub fn is_invertible(a: &Matrix) -> bool {
    if a.rows() != a.cols() {
        return false;
    }
    let ring = a.ring();
    let s = smith(a);
    let diag = s.diag();
    diag.len() == a.rows() && diag.iter().all(|d| ring.is_unit(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn check_smith(a: &Matrix) -> Smith {
        let ring = a.ring();
        let s = smith(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d, "U A V = D");
        assert!(is_invertible(&s.u), "U invertible");
        assert!(is_invertible(&s.v), "V invertible");
        let diag = s.diag();
        for w in diag.windows(2) {
            if !ring.is_zero(&w[1]) {
                assert!(ring.divides(&w[0], &w[1]), "divisibility chain");
            }
        }
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(ring.is_zero(s.d.get(i, j)), "off-diagonal zero");
                }
            }
        }
        s
    }

    #[test]
    fn smith_diag_2_3() {
        let z = Ring::integers();
        let a = Matrix::from_int_rows(&z, &[&[2, 0], &[0, 3]]);
        let s = check_smith(&a);
        assert_eq!(s.diag(), alloc::vec![z.from_i64(1), z.from_i64(6)]);
    }

    #[test]
    fn smith_zero_matrix() {
        let z = Ring::integers();
        let a = Matrix::zeros(&z, 2, 3);
        let s = check_smith(&a);
        assert_eq!(s.d, a);
        assert_eq!(s.u, Matrix::identity(&z, 2));
        assert_eq!(s.v, Matrix::identity(&z, 3));
    }

    #[test]
    fn smith_mod12() {
        let r = Ring::integers_mod(12).unwrap();
        let a = Matrix::from_int_rows(&r, &[&[4]]);
        let s = check_smith(&a);
        assert_eq!(s.diag(), alloc::vec![r.from_i64(4)]);
    }

    #[test]
    fn kernel_saturated() {
        let z = Ring::integers();
        let a = Matrix::from_int_rows(&z, &[&[2, -1]]);
        let k = kernel(&a);
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero());
        // saturation: invariant factors of the basis are units
        let s = smith(&k);
        for d in s.diag() {
            assert!(z.is_unit(&d));
        }
        // up to sign the kernel of (2,-1) is (1,2)
        let v0 = z.int_abs(k.get(0, 0)).unwrap();
        let v1 = z.int_abs(k.get(1, 0)).unwrap();
        assert_eq!((v0, v1), (1u32.into(), 2u32.into()));
    }

    #[test]
    fn kernel_identity_empty() {
        let z = Ring::integers();
        let k = kernel(&Matrix::identity(&z, 3));
        assert_eq!(k.cols(), 0);
    }

    #[test]
    fn kernel_mod6() {
        // ker(3: Z/6 -> Z/6) is generated by 2
        let r = Ring::integers_mod(6).unwrap();
        let a = Matrix::from_int_rows(&r, &[&[3]]);
        let k = kernel(&a);
        assert!(a.mul(&k).is_zero());
        assert!(same_span(&k, &Matrix::from_int_rows(&r, &[&[2]])));
    }

    #[test]
    fn solve_particular() {
        let z = Ring::integers();
        let a = Matrix::from_int_rows(&z, &[&[2, 4], &[0, 3]]);
        let b = Matrix::from_int_rows(&z, &[&[6], &[3]]);
        let x = solve(&a, &b).unwrap();
        assert_eq!(a.mul(&x), b);
        assert!(solve(&a, &Matrix::from_int_rows(&z, &[&[1], &[0]])).is_none());
    }

    #[test]
    fn smith_cyclotomic() {
        let r = Ring::cyclotomic(4).unwrap();
        let a = Matrix::from_fn(&r, 2, 2, |i, j| match (i, j) {
            (0, 0) => r.cyc_elem(1.into(), 1.into()),
            (0, 1) => r.from_i64(2),
            (1, 0) => r.from_i64(0),
            (1, 1) => r.cyc_elem(0.into(), 3.into()),
            _ => unreachable!(),
        });
        check_smith(&a);
    }

    #[test]
    fn smith_localized() {
        let r = Ring::localized_integers(&[2]).unwrap();
        // determinant 12*6 - 5*8 = 32 is a unit in Z[1/2], so both invariant
        // factors are units
        let a = Matrix::from_int_rows(&r, &[&[12, 5], &[8, 6]]);
        let s = check_smith(&a);
        assert!(s.diag().iter().all(|d| r.is_unit(d)));
        assert!(is_invertible(&a));
    }
}
