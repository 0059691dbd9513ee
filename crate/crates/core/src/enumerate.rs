//! Exhaustive enumeration oracle over finite rings (Z/m and F_p).
//!
//! This is the independent route used to pin derived expected values: it
//! never touches Smith normal form. Modules are enumerated as literal sets
//! of vectors and classified by order counting.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::matrix::Matrix;
use crate::module::CanonicalFg;
use crate::ring::{Elem, Ring};

fn ring_size(ring: &Ring) -> u64 {
    ring.cardinality()
        .and_then(|c| c.to_u64())
        .expect("enumeration oracle needs a small finite ring")
}

fn elem_to_u64(ring: &Ring, e: &Elem) -> u64 {
    ring.int_abs(e).and_then(|x| x.to_u64()).expect("finite ring element")
}

type Vect = Vec<u64>;

fn add_vec(m: u64, a: &Vect, b: &Vect) -> Vect {
    a.iter().zip(b).map(|(x, y)| (x + y) % m).collect()
}

fn mat_cols(ring: &Ring, a: &Matrix) -> Vec<Vect> {
    (0..a.cols())
        .map(|c| (0..a.rows()).map(|r| elem_to_u64(ring, a.get(r, c))).collect())
        .collect()
}

/// The subgroup of (Z/m)^n generated by the given columns, as a vector set.
pub fn span_set(a: &Matrix) -> BTreeSet<Vect> {
    let ring = a.ring();
    let m = ring_size(ring);
    let gens = mat_cols(ring, a);
    let zero: Vect = alloc::vec![0; a.rows()];
    let mut set = BTreeSet::new();
    set.insert(zero.clone());
    let mut frontier = alloc::vec![zero];
    while let Some(v) = frontier.pop() {
        for g in &gens {
            let w = add_vec(m, &v, g);
            if set.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    set
}

fn scalar_mul(m: u64, k: u64, v: &Vect) -> Vect {
    v.iter().map(|x| (x * k) % m).collect()
}

fn prime_power_split(x: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut x = x;
    let mut p = 2;
    while p * p <= x {
        if x % p == 0 {
            let mut e = 0;
            while x % p == 0 {
                x /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if x > 1 {
        out.push((x, 1));
    }
    out
}

/// Multiset of prime-power cyclic orders of the finite quotient
/// span(num)/span(den), recovered purely by order counting: the sizes of
/// the kernels of multiplication by p^k determine the p-group profiles.
pub fn quotient_profile(num: &Matrix, den: &Matrix) -> Vec<u64> {
    let ring = num.ring();
    let m = ring_size(ring);
    let nset = span_set(num);
    let dset = span_set(den);
    for d in &dset {
        assert!(nset.contains(d), "denominator escapes numerator span");
    }
    let order = (nset.len() / dset.len()) as u64;
    if order == 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (p, _) in prime_power_split(order) {
        // counts[k] = #{x in quotient : p^k x = 0} = p^{sum_i min(k, e_i)}
        let mut counts: Vec<u64> = Vec::new();
        let mut k = 0u32;
        loop {
            let pk = (0..k).fold(1u64, |a, _| (a * p) % m);
            let killed = nset.iter().filter(|v| dset.contains(&scalar_mul(m, pk, v))).count()
                as u64
                / dset.len() as u64;
            counts.push(killed);
            if k > 0 && counts[k as usize] == counts[k as usize - 1] {
                break;
            }
            k += 1;
        }
        // ge[k] = #exponents >= k, from consecutive ratios
        let mut ge: Vec<u32> = Vec::new();
        for k in 1..counts.len() {
            let mut ratio = counts[k] / counts[k - 1];
            let mut c = 0u32;
            while ratio > 1 {
                ratio /= p;
                c += 1;
            }
            ge.push(c);
        }
        for (k, &g) in ge.iter().enumerate() {
            let next = ge.get(k + 1).copied().unwrap_or(0);
            for _ in 0..(g - next) {
                out.push(p.pow((k + 1) as u32));
            }
        }
    }
    out.sort();
    out
}

/// Abelian-group profile (prime-power cyclic orders, sorted) of a finite
/// classification; None when the group is infinite.
pub fn abelian_profile(class: &CanonicalFg) -> Option<Vec<BigUint>> {
    let ring = &class.ring;
    let mut orders: Vec<BigUint> = Vec::new();
    for d in &class.invariant_factors {
        orders.push(ring.cyclic_cardinality(d)?);
    }
    for _ in 0..class.free_rank {
        orders.push(ring.cardinality()?);
    }
    let mut out: Vec<BigUint> = Vec::new();
    for c in orders {
        let mut c = c;
        if c.is_one() {
            continue;
        }
        for p in crate::ring::factor_primes(&c.clone()) {
            let mut pe = BigUint::one();
            while (&c % &p).is_zero() {
                c /= &p;
                pe *= &p;
            }
            if !pe.is_one() {
                out.push(pe);
            }
        }
    }
    out.sort();
    Some(out)
}

/// Compare a classification against the enumerated profile of
/// span(num)/span(den) over a finite ring.
pub fn matches_classification(num: &Matrix, den: &Matrix, class: &CanonicalFg) -> bool {
    let got: Vec<BigUint> = quotient_profile(num, den).into_iter().map(BigUint::from).collect();
    match abelian_profile(class) {
        Some(expected) => expected == got,
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::subquotient;

    #[test]
    fn enumerated_profiles() {
        let r = Ring::integers_mod(12).unwrap();
        // Z/12 / <4> = Z/4
        let num = Matrix::identity(&r, 1);
        let den = Matrix::from_int_rows(&r, &[&[4]]);
        assert_eq!(quotient_profile(&num, &den), alloc::vec![4]);
        // <2> inside Z/12 is Z/6 = Z/2 x Z/3
        let den0 = Matrix::zeros(&r, 1, 0);
        let num2 = Matrix::from_int_rows(&r, &[&[2]]);
        assert_eq!(quotient_profile(&num2, &den0), alloc::vec![2, 3]);
    }

    #[test]
    fn subquotient_matches_enumeration() {
        // spec invariant: subquotient agrees with exhaustive enumeration over
        // Z/m for ambient rank <= 3, m <= 12 (sampled grid)
        for m in [4u64, 6, 8, 9, 12] {
            let r = Ring::integers_mod(m).unwrap();
            let cases: Vec<(Matrix, Matrix)> = alloc::vec![
                (Matrix::identity(&r, 2), Matrix::from_int_rows(&r, &[&[2, 0], &[0, 3]])),
                (
                    Matrix::from_int_rows(&r, &[&[2, 1], &[0, 3], &[1, 1]]),
                    Matrix::from_int_rows(&r, &[&[4, 2], &[6, 0], &[2, 2]]),
                ),
                (
                    Matrix::from_int_rows(&r, &[&[3], &[6]]),
                    Matrix::from_int_rows(&r, &[&[6], &[12]])
                ),
            ];
            for (num, den) in cases {
                if !crate::snf::in_span(&num, &den) {
                    continue;
                }
                let s = subquotient(&r, num.rows(), &num, &den).unwrap();
                assert!(
                    matches_classification(&num, &den, &s.class),
                    "mismatch over Z/{m}: {:?} vs enumeration {:?}",
                    s.class,
                    quotient_profile(&num, &den)
                );
            }
        }
    }
}
