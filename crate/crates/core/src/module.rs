//! Finitely presented modules, their classification, subquotients, and
//! induced maps. Everything higher up reduces to this layer.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

use crate::err::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{Elem, Ring};
use crate::snf::{self, smith};

/// Canonical form of a finitely generated module over a Euclidean ring:
/// free part plus a divisibility chain of invariant factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalFg {
    pub ring: Ring,
    pub free_rank: usize,
    pub invariant_factors: Vec<Elem>,
}

impl CanonicalFg {
    pub fn zero(ring: &Ring) -> CanonicalFg {
        CanonicalFg { ring: ring.clone(), free_rank: 0, invariant_factors: Vec::new() }
    }

    pub fn free(ring: &Ring, rank: usize) -> CanonicalFg {
        CanonicalFg { ring: ring.clone(), free_rank: rank, invariant_factors: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn cardinality(&self) -> Option<BigUint> {
        let mut n = BigUint::one();
        if self.free_rank > 0 {
            let c = self.ring.cardinality()?;
            for _ in 0..self.free_rank {
                n *= &c;
            }
        }
        for d in &self.invariant_factors {
            n *= self.ring.cyclic_cardinality(d)?;
        }
        Some(n)
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let base = match self.ring.kind() {
            crate::ring::RingKind::Integers => "Z".into(),
            _ => self.ring.name(),
        };
        let mut parts = Vec::new();
        if self.free_rank == 1 {
            parts.push(base.clone());
        } else if self.free_rank > 1 {
            parts.push(format!("{base}^{}", self.free_rank));
        }
        for d in &self.invariant_factors {
            parts.push(format!("{base}/{}", self.ring.fmt_elem(d)));
        }
        parts.join(" + ")
    }
}

/// Cokernel of the column span of `a` inside the free module R^rows.
pub fn classify_cokernel(a: &Matrix) -> CanonicalFg {
    let ring = a.ring();
    let s = smith(a);
    let mut factors = Vec::new();
    let mut nonzero = 0usize;
    for d in s.diag() {
        if ring.is_zero(&d) {
            continue;
        }
        nonzero += 1;
        if !ring.is_unit(&d) {
            factors.push(d);
        }
    }
    CanonicalFg { ring: ring.clone(), free_rank: a.rows() - nonzero, invariant_factors: factors }
}

/// A finitely presented module R^gens / colspan(rel). Classification is
/// computed eagerly so it is always cached and consistent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpModule {
    ring: Ring,
    gens: usize,
    rel: Matrix,
    class: CanonicalFg,
}

impl FpModule {
    pub fn new(ring: &Ring, gens: usize, rel: Matrix) -> FpModule {
        assert_eq!(rel.rows(), gens, "relation matrix must have one row per generator");
        assert_eq!(rel.ring(), ring);
        let class = classify_cokernel(&rel);
        FpModule { ring: ring.clone(), gens, rel, class }
    }

    pub fn free(ring: &Ring, rank: usize) -> FpModule {
        Self::new(ring, rank, Matrix::zeros(ring, rank, 0))
    }

    pub fn zero(ring: &Ring) -> FpModule {
        Self::free(ring, 0)
    }

    /// R/(d).
    pub fn cyclic(ring: &Ring, d: &Elem) -> FpModule {
        let mut rel = Matrix::zeros(ring, 1, 1);
        rel.set(0, 0, d.clone());
        Self::new(ring, 1, rel)
    }

    /// Smith-shaped module: free part plus given torsion factors.
    pub fn from_parts(ring: &Ring, free: usize, factors: &[Elem]) -> FpModule {
        let g = free + factors.len();
        let mut rel = Matrix::zeros(ring, g, factors.len());
        for (i, d) in factors.iter().enumerate() {
            rel.set(i, i, d.clone());
        }
        Self::new(ring, g, rel)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }
    pub fn gens(&self) -> usize {
        self.gens
    }
    pub fn rel(&self) -> &Matrix {
        &self.rel
    }
    pub fn class(&self) -> &CanonicalFg {
        &self.class
    }
    pub fn is_zero_module(&self) -> bool {
        self.class.is_zero()
    }

    pub fn direct_sum(ring: &Ring, parts: &[&FpModule]) -> (FpModule, Vec<usize>) {
        let mut offsets = Vec::with_capacity(parts.len());
        let mut acc = 0;
        for p in parts {
            offsets.push(acc);
            acc += p.gens;
        }
        let rels: Vec<&Matrix> = parts.iter().map(|p| &p.rel).collect();
        let rel = Matrix::block_diag(ring, &rels);
        (FpModule::new(ring, acc, rel), offsets)
    }

    /// (U, U^{-1}, diagonal) with M iso to R^g / diag via y = U x.
    pub fn smith_coords(&self) -> (Matrix, Matrix, Vec<Elem>) {
        let s = smith(&self.rel);
        let uinv = snf::inverse(&s.u).expect("U invertible");
        let mut diag = s.diag();
        diag.resize(self.gens, self.ring.zero());
        (s.u, uinv, diag)
    }
}

/// A subquotient span(num)/span(den) of a free module R^ambient, presented
/// as R^{num.cols}/pres_rel with classification attached.
#[derive(Debug, Clone)]
pub struct Subquotient {
    pub ambient: usize,
    pub num: Matrix,
    pub den: Matrix,
    pub pres_rel: Matrix,
    pub class: CanonicalFg,
}

impl Subquotient {
    pub fn gens(&self) -> usize {
        self.num.cols()
    }

    pub fn pres_module(&self) -> FpModule {
        FpModule::new(self.num.ring(), self.gens(), self.pres_rel.clone())
    }

    /// Coordinates of ambient columns in the presentation (any lift).
    pub fn coords_of(&self, v: &Matrix) -> Option<Matrix> {
        let both = self.num.hstack(&self.den);
        let sol = snf::solve(&both, v)?;
        Some(sol.take_rows(0..self.gens()))
    }

    pub fn zero(ring: &Ring, ambient: usize) -> Subquotient {
        Subquotient {
            ambient,
            num: Matrix::zeros(ring, ambient, 0),
            den: Matrix::zeros(ring, ambient, 0),
            pres_rel: Matrix::zeros(ring, 0, 0),
            class: CanonicalFg::zero(ring),
        }
    }
}

/// span(num)/span(den) inside R^ambient. Errors when den escapes span(num).
pub fn subquotient(_ring: &Ring, ambient: usize, num: &Matrix, den: &Matrix) -> Result<Subquotient> {
    assert_eq!(num.rows(), ambient);
    assert_eq!(den.rows(), ambient);
    if !snf::in_span(num, den) {
        return Err(Error::ContainmentViolation { degree: None });
    }
    // relations: y with num*y in span(den)
    let stacked = num.hstack(den);
    let ker = snf::kernel(&stacked);
    let pres_rel = ker.take_rows(0..num.cols());
    let class = classify_cokernel(&pres_rel);
    Ok(Subquotient { ambient, num: num.clone(), den: den.clone(), pres_rel, class })
}

/// Generators of {v : f(v) in span(rel_tgt)} — the preimage of the target
/// relations, i.e. the kernel of the induced map on modules read in ambient
/// coordinates of the source.
pub fn kernel_mod(f: &Matrix, rel_tgt: &Matrix) -> Matrix {
    let stacked = f.hstack(rel_tgt);
    let ker = snf::kernel(&stacked);
    ker.take_rows(0..f.cols())
}

/// Does f send span(rel_src) into span(rel_tgt)? (well-definedness of the
/// induced map on the presented modules)
pub fn respects_relations(f: &Matrix, rel_src: &Matrix, rel_tgt: &Matrix) -> bool {
    snf::in_span(rel_tgt, &f.mul(rel_src))
}

/// Behaviour of a presentation-coordinate map R^a/rel_src -> R^b/rel_tgt.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MapAnalysis {
    pub zero: bool,
    pub injective: bool,
    pub surjective: bool,
}

impl MapAnalysis {
    pub fn iso(&self) -> bool {
        self.injective && self.surjective
    }
}

pub fn analyze_pres_map(g: &Matrix, rel_src: &Matrix, rel_tgt: &Matrix) -> MapAnalysis {
    let zero = snf::in_span(rel_tgt, g);
    let ker = kernel_mod(g, rel_tgt);
    let injective = snf::in_span(rel_src, &ker);
    let surjective = classify_cokernel(&g.hstack(rel_tgt)).is_zero();
    MapAnalysis { zero, injective, surjective }
}

/// The map induced on subquotient presentations by an ambient map f.
/// Errors if f does not map numerator into numerator span or fails to
/// descend.
pub fn induced_map(src: &Subquotient, tgt: &Subquotient, f: &Matrix) -> Result<Matrix> {
    let mapped = f.mul(&src.num);
    let g = tgt
        .coords_of(&mapped)
        .ok_or_else(|| Error::Shape("image escapes target numerator span".into()))?;
    if !respects_relations(&g, &src.pres_rel, &tgt.pres_rel) {
        return Err(Error::Shape("induced map does not respect presentations".into()));
    }
    Ok(g)
}

/// Hom(src, tgt) of finitely presented modules, presented as a module with
/// a chosen basis of homomorphisms (matrices tgt.gens x src.gens).
#[derive(Debug, Clone)]
pub struct HomModule {
    pub src_gens: usize,
    pub tgt_gens: usize,
    pub subq: Subquotient,
    pub module: FpModule,
}

impl HomModule {
    /// The c-th generating homomorphism as a matrix.
    pub fn basis(&self, c: usize) -> Matrix {
        Matrix::unvec_cols(&self.subq.num.col(c), self.tgt_gens, self.src_gens)
    }

    /// Presentation coordinates of a concrete homomorphism matrix.
    pub fn express(&self, f: &Matrix) -> Option<Matrix> {
        self.subq.coords_of(&f.vec_cols())
    }

    /// Evaluate a presentation-coordinate column back to a matrix.
    pub fn realize(&self, coords: &Matrix) -> Matrix {
        Matrix::unvec_cols(&self.subq.num.mul(coords), self.tgt_gens, self.src_gens)
    }
}

pub fn hom_module(src: &FpModule, tgt: &FpModule) -> HomModule {
    let ring = src.ring();
    assert_eq!(ring, tgt.ring());
    let (g, h) = (src.gens(), tgt.gens());
    // constraints: F * rel_src = rel_tgt * W, i.e.
    // kron(rel_src^T, I_h) vec(F) - kron(I_k, rel_tgt) vec(W) = 0
    let k = src.rel().cols();
    let lhs = src.rel().transpose().kron(&Matrix::identity(ring, h));
    let rhs = Matrix::identity(ring, k).kron(tgt.rel()).neg();
    let sys = lhs.hstack(&rhs);
    let ker = snf::kernel(&sys);
    let solutions = ker.take_rows(0..g * h);
    // trivial homs: F with all columns in span(rel_tgt)
    let triv = Matrix::identity(ring, g).kron(tgt.rel());
    let subq = subquotient(ring, g * h, &solutions, &triv)
        .expect("trivial homs are solutions");
    let module = subq.pres_module();
    HomModule { src_gens: g, tgt_gens: h, subq, module }
}

/// src tensor tgt with generator (i, j) at index i*tgt.gens + j.
pub fn tensor_module(a: &FpModule, b: &FpModule) -> FpModule {
    let ring = a.ring();
    assert_eq!(ring, b.ring());
    let rel_a = a.rel().kron(&Matrix::identity(ring, b.gens()));
    let rel_b = Matrix::identity(ring, a.gens()).kron(b.rel());
    FpModule::new(ring, a.gens() * b.gens(), rel_a.hstack(&rel_b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    #[test]
    fn classify_basics() {
        let z = Ring::integers();
        let a = Matrix::from_int_rows(&z, &[&[2]]);
        let c = classify_cokernel(&a);
        assert_eq!(c.free_rank, 0);
        assert_eq!(c.invariant_factors, alloc::vec![z.from_i64(2)]);
        assert_eq!(c.render(), "Z/2");

        let a = Matrix::from_int_rows(&z, &[&[1, 2], &[0, 0]]);
        let c = classify_cokernel(&a);
        assert_eq!(c.free_rank, 1);
        assert!(c.invariant_factors.is_empty());

        // empty matrix: the zero module
        let a = Matrix::zeros(&z, 0, 0);
        assert!(classify_cokernel(&a).is_zero());
    }

    #[test]
    fn classify_invariant_under_row_col_ops() {
        let z = Ring::integers();
        let a = Matrix::from_int_rows(&z, &[&[4, 6, 0], &[2, 0, 8]]);
        let p = Matrix::from_int_rows(&z, &[&[1, 3], &[0, -1]]);
        let q = Matrix::from_int_rows(&z, &[&[1, 0, 2], &[0, 1, 0], &[0, -1, 1]]);
        assert!(snf::is_invertible(&p) && snf::is_invertible(&q));
        assert_eq!(classify_cokernel(&a), classify_cokernel(&p.mul(&a).mul(&q)));
    }

    #[test]
    fn subquotient_examples() {
        let z = Ring::integers();
        // all of Z^1 over image of [2] -> Z/2
        let num = Matrix::identity(&z, 1);
        let den = Matrix::from_int_rows(&z, &[&[2]]);
        let s = subquotient(&z, 1, &num, &den).unwrap();
        assert_eq!(s.class.render(), "Z/2");

        // (1,2)Z / (2,4)Z inside Z^2 -> Z/2
        let num = Matrix::from_int_rows(&z, &[&[1], &[2]]);
        let den = Matrix::from_int_rows(&z, &[&[2], &[4]]);
        let s = subquotient(&z, 2, &num, &den).unwrap();
        assert_eq!(s.class.render(), "Z/2");

        // containment violation
        let num = Matrix::from_int_rows(&z, &[&[2], &[0]]);
        let den = Matrix::from_int_rows(&z, &[&[0], &[1]]);
        assert!(matches!(
            subquotient(&z, 2, &num, &den),
            Err(Error::ContainmentViolation { .. })
        ));
    }

    #[test]
    fn hom_groups() {
        let z = Ring::integers();
        let z4 = FpModule::cyclic(&z, &z.from_i64(4));
        let z6 = FpModule::cyclic(&z, &z.from_i64(6));
        let h = hom_module(&z4, &z6);
        assert_eq!(h.module.class().render(), "Z/2");
        // Hom(Z/4, Z) = 0
        let zz = FpModule::free(&z, 1);
        assert!(hom_module(&z4, &zz).module.is_zero_module());
        // Hom(Z, M) = M
        let h = hom_module(&zz, &z6);
        assert_eq!(h.module.class().render(), "Z/6");
        // Hom(Z^2, Z^3) = Z^6
        let h = hom_module(&FpModule::free(&z, 2), &FpModule::free(&z, 3));
        assert_eq!(h.module.class().free_rank, 6);
    }

    #[test]
    fn hom_express_roundtrip() {
        let z = Ring::integers();
        let z4 = FpModule::cyclic(&z, &z.from_i64(4));
        let z6 = FpModule::cyclic(&z, &z.from_i64(6));
        let h = hom_module(&z4, &z6);
        // the hom 3: Z/4 -> Z/6 exists (3*4 = 12 = 0 mod 6)
        let f = Matrix::from_int_rows(&z, &[&[3]]);
        let coords = h.express(&f).unwrap();
        let back = h.realize(&coords);
        // back and f agree modulo trivial homs (multiples of 6)
        let diff = back.sub(&f);
        assert!(snf::in_span(z6.rel(), &diff));
    }

    #[test]
    fn tensor_groups() {
        let z = Ring::integers();
        let z4 = FpModule::cyclic(&z, &z.from_i64(4));
        let z6 = FpModule::cyclic(&z, &z.from_i64(6));
        assert_eq!(tensor_module(&z4, &z6).class().render(), "Z/2");
        let m = FpModule::from_parts(&z, 1, &[z.from_i64(4)]);
        // (Z + Z/4) tensor Z/6 = Z/6 + Z/2, divisibility chain order 2 | 6
        let t = tensor_module(&m, &z6);
        assert_eq!(t.class().render(), "Z/2 + Z/6");
    }

    #[test]
    fn analyze_maps() {
        let z = Ring::integers();
        let rel2 = Matrix::from_int_rows(&z, &[&[2]]);
        let rel4 = Matrix::from_int_rows(&z, &[&[4]]);
        // Z/4 ->2 Z/4: not injective, not surjective, not zero
        let g = Matrix::from_int_rows(&z, &[&[2]]);
        let an = analyze_pres_map(&g, &rel4, &rel4);
        assert!(!an.zero && !an.injective && !an.surjective);
        // Z/2 -> Z/4 by 2: injective not surjective
        let an = analyze_pres_map(&g, &rel2, &rel4);
        assert!(an.injective && !an.surjective);
        // Z/4 -> Z/2 by 1: surjective not injective
        let g = Matrix::identity(&z, 1);
        let an = analyze_pres_map(&g, &rel4, &rel2);
        assert!(!an.injective && an.surjective);
    }
}
