//! The N-complex data model and its calculus: amplitude cohomology, disks,
//! suspension, mapping cones, homotopies, quasi-isomorphisms, truncations,
//! and the long exact sequence verifier.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::err::{Error, Result};
use crate::matrix::Matrix;
use crate::module::{
    self, analyze_pres_map, kernel_mod, respects_relations, subquotient, CanonicalFg, FpModule,
    MapAnalysis, Subquotient,
};
use crate::ring::{Elem, Ring};
use crate::snf;

/// A bounded N-complex: modules in degrees lo..=hi, degree +1 differentials
/// acting on chosen generators, every N-fold composite zero modulo
/// relations. Zero outside the support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NComplex {
    n: u32,
    ring: Ring,
    lo: i64,
    modules: Vec<FpModule>,
    diffs: Vec<Matrix>,
}

impl NComplex {
    pub fn new(n: u32, ring: &Ring, lo: i64, modules: Vec<FpModule>, diffs: Vec<Matrix>) -> NComplex {
        assert!(n >= 2, "N >= 2");
        if modules.is_empty() {
            assert!(diffs.is_empty());
        } else {
            assert_eq!(diffs.len(), modules.len() - 1, "one differential between consecutive degrees");
        }
        for (i, d) in diffs.iter().enumerate() {
            assert_eq!(d.cols(), modules[i].gens(), "differential domain at degree {}", lo + i as i64);
            assert_eq!(d.rows(), modules[i + 1].gens(), "differential codomain at degree {}", lo + i as i64);
        }
        NComplex { n, ring: ring.clone(), lo, modules, diffs }
    }

    pub fn zero(n: u32, ring: &Ring) -> NComplex {
        NComplex { n, ring: ring.clone(), lo: 0, modules: Vec::new(), diffs: Vec::new() }
    }

    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn ring(&self) -> &Ring {
        &self.ring
    }
    pub fn lo(&self) -> i64 {
        self.lo
    }
    pub fn hi(&self) -> i64 {
        self.lo + self.modules.len() as i64 - 1
    }
    pub fn is_zero_complex(&self) -> bool {
        self.modules.iter().all(|m| m.is_zero_module())
    }

    pub fn in_support(&self, deg: i64) -> bool {
        !self.modules.is_empty() && deg >= self.lo && deg <= self.hi()
    }

    pub fn gens_at(&self, deg: i64) -> usize {
        if self.in_support(deg) {
            self.modules[(deg - self.lo) as usize].gens()
        } else {
            0
        }
    }

    pub fn module_at(&self, deg: i64) -> FpModule {
        if self.in_support(deg) {
            self.modules[(deg - self.lo) as usize].clone()
        } else {
            FpModule::zero(&self.ring)
        }
    }

    pub fn rel_at(&self, deg: i64) -> Matrix {
        if self.in_support(deg) {
            self.modules[(deg - self.lo) as usize].rel().clone()
        } else {
            Matrix::zeros(&self.ring, 0, 0)
        }
    }

    /// The differential out of `deg` (zero-shaped outside support).
    pub fn diff_at(&self, deg: i64) -> Matrix {
        if self.in_support(deg) && self.in_support(deg + 1) {
            self.diffs[(deg - self.lo) as usize].clone()
        } else {
            Matrix::zeros(&self.ring, self.gens_at(deg + 1), self.gens_at(deg))
        }
    }

    /// Composite of `len` differentials starting at `deg` (identity for 0).
    pub fn composite(&self, deg: i64, len: u32) -> Matrix {
        let mut acc = Matrix::identity(&self.ring, self.gens_at(deg));
        for k in 0..len {
            acc = self.diff_at(deg + k as i64).mul(&acc);
        }
        acc
    }

    /// Drop zero modules at both ends of the support.
    pub fn trim(&self) -> NComplex {
        let mut lo_i = 0usize;
        let mut hi_i = self.modules.len();
        while lo_i < hi_i && self.modules[lo_i].is_zero_module() {
            lo_i += 1;
        }
        while hi_i > lo_i && self.modules[hi_i - 1].is_zero_module() {
            hi_i -= 1;
        }
        if lo_i >= hi_i {
            return NComplex::zero(self.n, &self.ring);
        }
        NComplex::new(
            self.n,
            &self.ring,
            self.lo + lo_i as i64,
            self.modules[lo_i..hi_i].to_vec(),
            self.diffs[lo_i..hi_i - 1].to_vec(),
        )
    }

    pub fn direct_sum(a: &NComplex, b: &NComplex) -> NComplex {
        assert_eq!(a.n, b.n);
        assert_eq!(a.ring, b.ring);
        if a.modules.is_empty() {
            return b.clone();
        }
        if b.modules.is_empty() {
            return a.clone();
        }
        let lo = a.lo.min(b.lo);
        let hi = a.hi().max(b.hi());
        let mut modules = Vec::new();
        let mut diffs = Vec::new();
        for deg in lo..=hi {
            let (m, _) = FpModule::direct_sum(&a.ring, &[&a.module_at(deg), &b.module_at(deg)]);
            modules.push(m);
            if deg < hi {
                diffs.push(Matrix::block_diag(&a.ring, &[&a.diff_at(deg), &b.diff_at(deg)]));
            }
        }
        NComplex::new(a.n, &a.ring, lo, modules, diffs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    RelationsNotRespected { degree: i64 },
    PowerNotZero { degree: i64 },
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

/// Check that differentials respect relations and that every N-fold
/// composite vanishes modulo relations. Never aborts; reports the violating
/// degrees.
pub fn validate(x: &NComplex) -> ValidationReport {
    let mut violations = Vec::new();
    if !x.modules.is_empty() {
        for deg in x.lo()..x.hi() {
            let d = x.diff_at(deg);
            if !respects_relations(&d, &x.rel_at(deg), &x.rel_at(deg + 1)) {
                violations.push(Violation::RelationsNotRespected { degree: deg });
            }
        }
        for deg in x.lo()..=x.hi() {
            if deg + x.n() as i64 > x.hi() {
                continue; // composite leaves the support: zero map
            }
            let c = x.composite(deg, x.n());
            if !snf::in_span(&x.rel_at(deg + x.n() as i64), &c) {
                violations.push(Violation::PowerNotZero { degree: deg });
            }
        }
    }
    ValidationReport { ok: violations.is_empty(), violations }
}

/// The amplitude cohomology H^deg_t = Z^deg_t / B^deg_{N-t} as a presented
/// subquotient of the degree module's generator space.
pub fn cohomology(x: &NComplex, deg: i64, t: u32) -> Result<Subquotient> {
    assert!(t >= 1 && t < x.n(), "amplitude 1..N-1");
    let ring = x.ring();
    if !x.in_support(deg) {
        return Ok(Subquotient::zero(ring, 0));
    }
    let g = x.gens_at(deg);
    let z = if deg + t as i64 > x.hi() {
        Matrix::identity(ring, g)
    } else {
        kernel_mod(&x.composite(deg, t), &x.rel_at(deg + t as i64))
    };
    let nt = x.n() - t;
    let src = deg - nt as i64;
    let b = if src < x.lo() {
        Matrix::zeros(ring, g, 0)
    } else {
        x.composite(src, nt)
    };
    let den = b.hstack(&x.rel_at(deg));
    subquotient(ring, g, &z, &den).map_err(|e| match e {
        Error::ContainmentViolation { .. } => Error::ContainmentViolation { degree: Some(deg) },
        e => e,
    })
}

pub fn cohomology_class(x: &NComplex, deg: i64, t: u32) -> Result<CanonicalFg> {
    Ok(cohomology(x, deg, t)?.class)
}

/// All nonzero H^n_t over the support, keyed by (degree, t).
pub fn h_table(x: &NComplex) -> Result<BTreeMap<(i64, u32), CanonicalFg>> {
    let mut out = BTreeMap::new();
    if x.modules.is_empty() {
        return Ok(out);
    }
    for deg in x.lo()..=x.hi() {
        for t in 1..x.n() {
            let c = cohomology_class(x, deg, t)?;
            if !c.is_zero() {
                out.insert((deg, t), c);
            }
        }
    }
    Ok(out)
}

pub fn is_acyclic(x: &NComplex) -> Result<bool> {
    Ok(h_table(x)?.is_empty())
}

/// The disk D^j_t(M): t copies of M in degrees j-t+1..=j with identity
/// differentials.
pub fn disk(m: &FpModule, j: i64, t: u32, n: u32) -> NComplex {
    assert!(t >= 1 && t <= n, "disk amplitude 1..N");
    let ring = m.ring().clone();
    let modules = alloc::vec![m.clone(); t as usize];
    let diffs = alloc::vec![Matrix::identity(&ring, m.gens()); (t - 1) as usize];
    NComplex::new(n, &ring, j - t as i64 + 1, modules, diffs)
}

/// Suspension: (SX)^n = X^{n+1} + ... + X^{n+N-1} with the block
/// differential [[0,1,..],[..],[-d^{N-1},...,-d]]; direction -1 builds the
/// inverse suspension display.
pub fn suspend(x: &NComplex, direction: i32) -> NComplex {
    assert!(direction == 1 || direction == -1);
    let n = x.n();
    let ring = x.ring().clone();
    if x.modules.is_empty() {
        return NComplex::zero(n, &ring);
    }
    let w = (n - 1) as i64;
    let (lo, hi) = if direction == 1 {
        (x.lo() - w, x.hi() - 1)
    } else {
        (x.lo() + 1, x.hi() + w)
    };
    if lo > hi {
        return NComplex::zero(n, &ring);
    }
    // block k (1-based) of degree `deg` houses X^{deg+k} (dir +1) or
    // X^{deg-N+k} (dir -1)
    let block_deg = |deg: i64, k: u32| -> i64 {
        if direction == 1 {
            deg + k as i64
        } else {
            deg - n as i64 + k as i64
        }
    };
    let mut modules = Vec::new();
    for deg in lo..=hi {
        let parts: Vec<FpModule> = (1..n).map(|k| x.module_at(block_deg(deg, k))).collect();
        let refs: Vec<&FpModule> = parts.iter().collect();
        modules.push(FpModule::direct_sum(&ring, &refs).0);
    }
    let mut diffs = Vec::new();
    for deg in lo..hi {
        let src_gens: Vec<usize> = (1..n).map(|k| x.gens_at(block_deg(deg, k))).collect();
        let tgt_gens: Vec<usize> = (1..n).map(|k| x.gens_at(block_deg(deg + 1, k))).collect();
        let mut m = Matrix::zeros(&ring, tgt_gens.iter().sum(), src_gens.iter().sum());
        let col_off =
            |k: u32| -> usize { src_gens[..(k - 1) as usize].iter().sum() };
        let row_off =
            |k: u32| -> usize { tgt_gens[..(k - 1) as usize].iter().sum() };
        if direction == 1 {
            // rows i=1..N-2: identity from source block i+1; row N-1: -d^{N-k}
            for i in 1..n - 1 {
                let g = x.gens_at(block_deg(deg + 1, i));
                // target block i at deg+1 is X^{deg+1+i} = source block i+1
                m.paste(row_off(i), col_off(i + 1), &Matrix::identity(&ring, g));
            }
            for k in 1..n {
                let c = x.composite(block_deg(deg, k), n - k).neg();
                m.paste(row_off(n - 1), col_off(k), &c);
            }
        } else {
            // row i: -d^i from source block 1, identity from source block i+1
            for i in 1..n {
                let c = x.composite(block_deg(deg, 1), i).neg();
                m.paste(row_off(i), col_off(1), &c);
                if i + 1 < n {
                    let g = x.gens_at(block_deg(deg + 1, i));
                    m.paste(row_off(i), col_off(i + 1), &Matrix::identity(&ring, g));
                }
            }
        }
        diffs.push(m);
    }
    NComplex::new(n, &ring, lo, modules, diffs).trim()
}

/// A degreewise-matrix morphism of N-complexes; commutation and relation
/// compatibility are verified at construction.
#[derive(Debug, Clone)]
pub struct ChainMap {
    pub src: NComplex,
    pub tgt: NComplex,
    comps: BTreeMap<i64, Matrix>,
}

impl ChainMap {
    pub fn new(src: NComplex, tgt: NComplex, comps: BTreeMap<i64, Matrix>) -> Result<ChainMap> {
        let f = ChainMap { src, tgt, comps };
        f.check()?;
        Ok(f)
    }

    fn check(&self) -> Result<()> {
        for (&deg, m) in &self.comps {
            if m.rows() != self.tgt.gens_at(deg) || m.cols() != self.src.gens_at(deg) {
                return Err(Error::Shape(format!("component shape at degree {deg}")));
            }
        }
        let lo = self.src.lo().min(self.tgt.lo());
        let hi = self.src.hi().max(self.tgt.hi());
        for deg in lo..=hi {
            let f = self.comp_at(deg);
            if !respects_relations(&f, &self.src.rel_at(deg), &self.tgt.rel_at(deg)) {
                return Err(Error::Shape(format!("relations not respected at degree {deg}")));
            }
            // f^{n+1} d = d f^n modulo target relations
            let lhs = self.comp_at(deg + 1).mul(&self.src.diff_at(deg));
            let rhs = self.tgt.diff_at(deg).mul(&f);
            if !snf::in_span(&self.tgt.rel_at(deg + 1), &lhs.sub(&rhs)) {
                return Err(Error::Shape(format!("not a chain map at degree {deg}")));
            }
        }
        Ok(())
    }

    pub fn comp_at(&self, deg: i64) -> Matrix {
        self.comps.get(&deg).cloned().unwrap_or_else(|| {
            Matrix::zeros(self.src.ring(), self.tgt.gens_at(deg), self.src.gens_at(deg))
        })
    }

    pub fn identity(x: &NComplex) -> ChainMap {
        let comps = (x.lo()..=x.hi())
            .map(|d| (d, Matrix::identity(x.ring(), x.gens_at(d))))
            .collect();
        ChainMap { src: x.clone(), tgt: x.clone(), comps }
    }

    pub fn zero(src: &NComplex, tgt: &NComplex) -> ChainMap {
        ChainMap { src: src.clone(), tgt: tgt.clone(), comps: BTreeMap::new() }
    }

    /// Multiplication by a ring scalar as a chain self-map.
    pub fn scalar(x: &NComplex, s: &Elem) -> ChainMap {
        let comps = (x.lo()..=x.hi())
            .map(|d| (d, Matrix::scalar(x.ring(), x.gens_at(d), s)))
            .collect();
        ChainMap { src: x.clone(), tgt: x.clone(), comps }
    }

    pub fn compose(late: &ChainMap, early: &ChainMap) -> Result<ChainMap> {
        if early.tgt != late.src {
            return Err(Error::Shape("compose: middle complexes differ".into()));
        }
        let lo = early.src.lo().min(late.tgt.lo());
        let hi = early.src.hi().max(late.tgt.hi());
        let comps = (lo..=hi)
            .map(|d| (d, late.comp_at(d).mul(&early.comp_at(d))))
            .collect();
        Ok(ChainMap { src: early.src.clone(), tgt: late.tgt.clone(), comps })
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.src != other.src || self.tgt != other.tgt {
            return Err(Error::Shape("add: complex mismatch".into()));
        }
        let lo = self.src.lo().min(self.tgt.lo());
        let hi = self.src.hi().max(self.tgt.hi());
        let comps = (lo..=hi)
            .map(|d| (d, self.comp_at(d).add(&other.comp_at(d))))
            .collect();
        Ok(ChainMap { src: self.src.clone(), tgt: self.tgt.clone(), comps })
    }

    pub fn scale(&self, s: &Elem) -> ChainMap {
        let comps = self.comps.iter().map(|(&d, m)| (d, m.scale(s))).collect();
        ChainMap { src: self.src.clone(), tgt: self.tgt.clone(), comps }
    }

    /// Unchecked constructor for maps already known to commute.
    pub fn from_parts(src: NComplex, tgt: NComplex, comps: BTreeMap<i64, Matrix>) -> ChainMap {
        ChainMap { src, tgt, comps }
    }
}

/// The mapping cone C(f) = Y + SX with the block differential
/// [[d, f, 0...], [0, 0, 1, ...], ..., [0, -d^{N-1}, ..., -d]].
pub fn cone(f: &ChainMap) -> NComplex {
    let x = &f.src;
    let y = &f.tgt;
    let n = x.n();
    let ring = x.ring().clone();
    let sx = suspend(x, 1);
    if y.is_zero_complex() && sx.is_zero_complex() {
        return NComplex::zero(n, &ring);
    }
    let lo = if y.modules.is_empty() { sx.lo() } else { y.lo().min(x.lo() - (n as i64 - 1)) };
    let hi = if y.modules.is_empty() { sx.hi() } else { y.hi().max(x.hi() - 1) };
    let block_deg = |deg: i64, k: u32| deg + k as i64; // SX block k of cone degree deg
    let mut modules = Vec::new();
    for deg in lo..=hi {
        let mut parts: Vec<FpModule> = alloc::vec![y.module_at(deg)];
        for k in 1..n {
            parts.push(x.module_at(block_deg(deg, k)));
        }
        let refs: Vec<&FpModule> = parts.iter().collect();
        modules.push(FpModule::direct_sum(&ring, &refs).0);
    }
    let mut diffs = Vec::new();
    for deg in lo..hi {
        let src_sizes: Vec<usize> = core::iter::once(y.gens_at(deg))
            .chain((1..n).map(|k| x.gens_at(block_deg(deg, k))))
            .collect();
        let tgt_sizes: Vec<usize> = core::iter::once(y.gens_at(deg + 1))
            .chain((1..n).map(|k| x.gens_at(block_deg(deg + 1, k))))
            .collect();
        let col_off = |b: usize| -> usize { src_sizes[..b].iter().sum() };
        let row_off = |b: usize| -> usize { tgt_sizes[..b].iter().sum() };
        let mut m = Matrix::zeros(&ring, tgt_sizes.iter().sum(), src_sizes.iter().sum());
        // row 0: d_Y then f^{deg+1} from SX block 1
        m.paste(0, 0, &y.diff_at(deg));
        m.paste(0, col_off(1), &f.comp_at(deg + 1));
        // SX rows: identities then the composite row
        for i in 1..(n - 1) as usize {
            let g = x.gens_at(block_deg(deg + 1, i as u32));
            m.paste(row_off(i), col_off(i + 1), &Matrix::identity(&ring, g));
        }
        for k in 1..n {
            let c = x.composite(block_deg(deg, k), n - k).neg();
            m.paste(row_off((n - 1) as usize), col_off(k as usize), &c);
        }
        diffs.push(m);
    }
    NComplex::new(n, &ring, lo, modules, diffs).trim()
}

/// The canonical inclusion Y -> C(f).
pub fn cone_inclusion(f: &ChainMap) -> ChainMap {
    let c = cone(f);
    let y = &f.tgt;
    let ring = y.ring();
    let comps = (y.lo()..=y.hi())
        .map(|deg| {
            let mut m = Matrix::zeros(ring, c.gens_at(deg), y.gens_at(deg));
            if c.in_support(deg) {
                m.paste(0, 0, &Matrix::identity(ring, y.gens_at(deg)));
            }
            (deg, m)
        })
        .collect();
    ChainMap::from_parts(y.clone(), c, comps)
}

/// The canonical projection C(f) -> SX.
pub fn cone_projection(f: &ChainMap) -> ChainMap {
    let c = cone(f);
    let sx = suspend(&f.src, 1);
    let ring = f.src.ring();
    let n = f.src.n();
    let comps = (c.lo()..=c.hi())
        .map(|deg| {
            let mut m = Matrix::zeros(ring, sx.gens_at(deg), c.gens_at(deg));
            if sx.in_support(deg) {
                let ygens = f.tgt.gens_at(deg);
                let total: usize = (1..n).map(|k| f.src.gens_at(deg + k as i64)).sum();
                m.paste(0, ygens, &Matrix::identity(ring, total));
            }
            (deg, m)
        })
        .collect();
    ChainMap::from_parts(c, sx, comps)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TruncFlavor {
    Stupid,
    Smart,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TruncSide {
    Above,
    Below,
}

/// Stupid truncations cut hard; smart truncations use the kernel/cokernel
/// boundary modules. `Above` keeps high degrees, `Below` keeps low ones.
pub fn truncate(x: &NComplex, flavor: TruncFlavor, side: TruncSide, idx: i64) -> Result<NComplex> {
    let n = x.n();
    let ring = x.ring().clone();
    if x.modules.is_empty() {
        return Ok(NComplex::zero(n, &ring));
    }
    match (flavor, side) {
        (TruncFlavor::Stupid, TruncSide::Above) => {
            // tau_{>idx}: degrees > idx
            let lo = x.lo().max(idx + 1);
            if lo > x.hi() {
                return Ok(NComplex::zero(n, &ring));
            }
            let modules = (lo..=x.hi()).map(|d| x.module_at(d)).collect();
            let diffs = (lo..x.hi()).map(|d| x.diff_at(d)).collect();
            Ok(NComplex::new(n, &ring, lo, modules, diffs))
        }
        (TruncFlavor::Stupid, TruncSide::Below) => {
            // tau_{<=idx}
            let hi = x.hi().min(idx);
            if hi < x.lo() {
                return Ok(NComplex::zero(n, &ring));
            }
            let modules = (x.lo()..=hi).map(|d| x.module_at(d)).collect();
            let diffs = (x.lo()..hi).map(|d| x.diff_at(d)).collect();
            Ok(NComplex::new(n, &ring, x.lo(), modules, diffs))
        }
        (TruncFlavor::Smart, TruncSide::Below) => {
            // sigma_{<=idx}: ..., X^{idx-N+1}, Z^{idx-N+2}_{N-1}, ..., Z^{idx}_1, 0
            let hi = x.hi().min(idx);
            if hi < x.lo() {
                return Ok(NComplex::zero(n, &ring));
            }
            // submodule presentations for the kernel window
            let mut subqs: BTreeMap<i64, Subquotient> = BTreeMap::new();
            for deg in (idx - n as i64 + 2).max(x.lo())..=hi {
                let t = (idx - deg + 1) as u32; // 1..=N-1
                let g = x.gens_at(deg);
                let z = if deg + t as i64 > x.hi() {
                    Matrix::identity(&ring, g)
                } else {
                    kernel_mod(&x.composite(deg, t), &x.rel_at(deg + t as i64))
                };
                subqs.insert(deg, subquotient(&ring, g, &z, &x.rel_at(deg))?);
            }
            let mut modules = Vec::new();
            let mut diffs = Vec::new();
            for deg in x.lo()..=hi {
                match subqs.get(&deg) {
                    Some(s) => modules.push(s.pres_module()),
                    None => modules.push(x.module_at(deg)),
                }
                if deg < hi {
                    let d = x.diff_at(deg);
                    let m = match (subqs.get(&deg), subqs.get(&(deg + 1))) {
                        (None, None) => d,
                        (None, Some(st)) => st
                            .coords_of(&d)
                            .ok_or_else(|| Error::Shape("truncation lift failed".into()))?,
                        (Some(ss), Some(st)) => st
                            .coords_of(&d.mul(&ss.num))
                            .ok_or_else(|| Error::Shape("truncation lift failed".into()))?,
                        (Some(_), None) => unreachable!("kernel window is upward closed"),
                    };
                    diffs.push(m);
                }
            }
            Ok(NComplex::new(n, &ring, x.lo(), modules, diffs).trim())
        }
        (TruncFlavor::Smart, TruncSide::Above) => {
            // sigma_{>=idx}: 0, C^{idx}_1, C^{idx+1}_2, ..., C^{idx+N-2}_{N-1}, X^{idx+N-1}, ...
            let lo = x.lo().max(idx);
            if lo > x.hi() {
                return Ok(NComplex::zero(n, &ring));
            }
            let mut modules = Vec::new();
            let mut diffs = Vec::new();
            for deg in lo..=x.hi() {
                let in_window = deg <= idx + n as i64 - 2;
                if in_window {
                    let t = (deg - idx + 1) as u32;
                    let src = deg - t as i64;
                    let b = if src < x.lo() {
                        Matrix::zeros(&ring, x.gens_at(deg), 0)
                    } else {
                        x.composite(src, t)
                    };
                    modules.push(FpModule::new(
                        &ring,
                        x.gens_at(deg),
                        x.rel_at(deg).hstack(&b),
                    ));
                } else {
                    modules.push(x.module_at(deg));
                }
                if deg < x.hi() {
                    diffs.push(x.diff_at(deg)); // quotients keep the same generators
                }
            }
            Ok(NComplex::new(n, &ring, lo, modules, diffs).trim())
        }
    }
}

/// A homotopy witness {s^n : X^n -> Y^{n-N+1}} for g - f.
#[derive(Debug, Clone)]
pub struct Homotopy {
    pub maps: BTreeMap<i64, Matrix>,
}

/// Verify g - f = sum_i d^{N-1-i} s^{n+i} d^i modulo target relations.
pub fn verify_homotopy(f: &ChainMap, g: &ChainMap, h: &Homotopy) -> bool {
    let x = &f.src;
    let y = &f.tgt;
    let n = x.n();
    let ring = x.ring();
    let s_at = |deg: i64| -> Matrix {
        h.maps
            .get(&deg)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(ring, y.gens_at(deg - n as i64 + 1), x.gens_at(deg)))
    };
    for deg in x.lo()..=x.hi() {
        if y.gens_at(deg) == 0 {
            continue;
        }
        let mut acc = Matrix::zeros(ring, y.gens_at(deg), x.gens_at(deg));
        for i in 0..n {
            let pre = x.composite(deg, i); // X^deg -> X^{deg+i}
            let mid = s_at(deg + i as i64); // -> Y^{deg+i-N+1}
            let post = y.composite(deg + i as i64 - n as i64 + 1, n - 1 - i); // -> Y^deg
            acc = acc.add(&post.mul(&mid).mul(&pre));
        }
        let target = g.comp_at(deg).sub(&f.comp_at(deg));
        if !snf::in_span(&y.rel_at(deg), &acc.sub(&target)) {
            return false;
        }
    }
    true
}

/// Solve the homotopy equation g - f = sum d^{N-1-i} s d^i exactly. The
/// returned witness (if any) satisfies well-definedness modulo relations;
/// absence of a solution is definitive over these rings.
pub fn homotopy_between(f: &ChainMap, g: &ChainMap) -> Option<Homotopy> {
    let x = &f.src;
    let y = &f.tgt;
    let n = x.n();
    let ring = x.ring().clone();

    // unknowns: vec(S_deg) for every degree with nonzero source and target
    let mut s_degs: Vec<i64> = Vec::new();
    if !x.modules.is_empty() {
        for deg in x.lo()..=x.hi() {
            if x.gens_at(deg) > 0 && y.gens_at(deg - n as i64 + 1) > 0 {
                s_degs.push(deg);
            }
        }
    }
    let s_shape = |deg: i64| (y.gens_at(deg - n as i64 + 1), x.gens_at(deg));
    let mut s_off: BTreeMap<i64, usize> = BTreeMap::new();
    let mut total = 0usize;
    for &d in &s_degs {
        s_off.insert(d, total);
        let (r, c) = s_shape(d);
        total += r * c;
    }

    // slack unknowns: per-equation relation coefficients, appended per row
    // block as we build. Rows: homotopy equations + well-definedness.
    struct RowBlock {
        coeff: Matrix,  // rows x total (S-unknowns part)
        slack: Matrix,  // rows x (its own slack cols)
        rhs: Matrix,    // rows x 1
    }
    let mut blocks: Vec<RowBlock> = Vec::new();

    let lo = x.lo().min(y.lo());
    let hi = x.hi().max(y.hi());
    for deg in lo..=hi {
        let rows = y.gens_at(deg) * x.gens_at(deg);
        if rows == 0 {
            continue;
        }
        let mut coeff = Matrix::zeros(&ring, rows, total);
        for i in 0..n {
            let sdeg = deg + i as i64;
            let Some(&off) = s_off.get(&sdeg) else { continue };
            let pre = x.composite(deg, i);
            let post = y.composite(sdeg - n as i64 + 1, n - 1 - i);
            // vec(post * S * pre) = (pre^T kron post) vec(S)
            let block = pre.transpose().kron(&post);
            coeff.paste(0, off, &block);
        }
        let relcols = y.rel_at(deg).cols() * x.gens_at(deg);
        let slack = Matrix::identity(&ring, x.gens_at(deg)).kron(&y.rel_at(deg));
        debug_assert_eq!(slack.cols(), relcols);
        let rhs = g.comp_at(deg).sub(&f.comp_at(deg)).vec_cols();
        blocks.push(RowBlock { coeff, slack, rhs });
    }
    // well-definedness: S_deg * rel_X(deg) = rel_Y(deg-N+1) * W
    for &sdeg in &s_degs {
        let (r, _) = s_shape(sdeg);
        let relx = x.rel_at(sdeg);
        if relx.cols() == 0 {
            continue;
        }
        let rows = r * relx.cols();
        let mut coeff = Matrix::zeros(&ring, rows, total);
        let block = relx.transpose().kron(&Matrix::identity(&ring, r));
        coeff.paste(0, s_off[&sdeg], &block);
        let rely = y.rel_at(sdeg - n as i64 + 1);
        let slack = Matrix::identity(&ring, relx.cols()).kron(&rely);
        let rhs = Matrix::zeros(&ring, rows, 1);
        blocks.push(RowBlock { coeff, slack, rhs });
    }

    // assemble [coeff | -slack-diag] u = rhs
    let total_rows: usize = blocks.iter().map(|b| b.coeff.rows()).sum();
    let total_slack: usize = blocks.iter().map(|b| b.slack.cols()).sum();
    let mut a = Matrix::zeros(&ring, total_rows, total + total_slack);
    let mut b = Matrix::zeros(&ring, total_rows, 1);
    let mut r0 = 0usize;
    let mut c0 = total;
    for blk in &blocks {
        a.paste(r0, 0, &blk.coeff);
        a.paste(r0, c0, &blk.slack.neg());
        b.paste(r0, 0, &blk.rhs);
        r0 += blk.coeff.rows();
        c0 += blk.slack.cols();
    }
    let sol = snf::solve(&a, &b)?;
    let mut maps = BTreeMap::new();
    for &d in &s_degs {
        let (r, c) = s_shape(d);
        let off = s_off[&d];
        let v = sol.take_rows(off..off + r * c);
        maps.insert(d, Matrix::unvec_cols(&v, r, c));
    }
    let h = Homotopy { maps };
    debug_assert!(verify_homotopy(f, g, &h));
    Some(h)
}

pub fn null_homotopy(f: &ChainMap) -> Option<Homotopy> {
    homotopy_between(&ChainMap::zero(&f.src, &f.tgt), f)
}

/// Generators of the module of chain maps X -> Y (matrix families
/// commuting with d and respecting relations).
pub fn chain_map_space(x: &NComplex, y: &NComplex) -> Vec<ChainMap> {
    let ring = x.ring().clone();
    let mut f_degs: Vec<i64> = Vec::new();
    if !x.modules.is_empty() && !y.modules.is_empty() {
        for deg in x.lo().max(y.lo())..=x.hi().min(y.hi()) {
            if x.gens_at(deg) > 0 && y.gens_at(deg) > 0 {
                f_degs.push(deg);
            }
        }
    }
    let mut off: BTreeMap<i64, usize> = BTreeMap::new();
    let mut total = 0usize;
    for &d in &f_degs {
        off.insert(d, total);
        total += y.gens_at(d) * x.gens_at(d);
    }
    if total == 0 {
        return Vec::new();
    }
    struct RowBlock {
        coeff: Matrix,
        slack: Matrix,
    }
    let mut blocks: Vec<RowBlock> = Vec::new();
    let lo = x.lo().min(y.lo());
    let hi = x.hi().max(y.hi());
    // commutation rows at each degree: F_{deg+1} d - d F_deg = rel_Y * W
    for deg in lo..=hi {
        let rows = y.gens_at(deg + 1) * x.gens_at(deg);
        if rows == 0 {
            continue;
        }
        let mut coeff = Matrix::zeros(&ring, rows, total);
        if let Some(&o) = off.get(&(deg + 1)) {
            let block = x.diff_at(deg).transpose().kron(&Matrix::identity(&ring, y.gens_at(deg + 1)));
            coeff.paste(0, o, &block);
        }
        if let Some(&o) = off.get(&deg) {
            let block = Matrix::identity(&ring, x.gens_at(deg)).kron(&y.diff_at(deg)).neg();
            coeff.paste(0, o, &block);
        }
        if coeff.is_zero() {
            continue;
        }
        let slack = Matrix::identity(&ring, x.gens_at(deg)).kron(&y.rel_at(deg + 1));
        blocks.push(RowBlock { coeff, slack });
    }
    // relation rows: F_deg rel_X = rel_Y * W
    for &deg in &f_degs {
        let relx = x.rel_at(deg);
        if relx.cols() == 0 {
            continue;
        }
        let rows = y.gens_at(deg) * relx.cols();
        let mut coeff = Matrix::zeros(&ring, rows, total);
        let block = relx.transpose().kron(&Matrix::identity(&ring, y.gens_at(deg)));
        coeff.paste(0, off[&deg], &block);
        let slack = Matrix::identity(&ring, relx.cols()).kron(&y.rel_at(deg));
        blocks.push(RowBlock { coeff, slack });
    }
    let total_rows: usize = blocks.iter().map(|b| b.coeff.rows()).sum();
    let total_slack: usize = blocks.iter().map(|b| b.slack.cols()).sum();
    let mut a = Matrix::zeros(&ring, total_rows, total + total_slack);
    let mut r0 = 0usize;
    let mut c0 = total;
    for blk in &blocks {
        a.paste(r0, 0, &blk.coeff);
        a.paste(r0, c0, &blk.slack.neg());
        r0 += blk.coeff.rows();
        c0 += blk.slack.cols();
    }
    let ker = snf::kernel(&a);
    let mut out = Vec::new();
    for c in 0..ker.cols() {
        let col = ker.col(c);
        let mut comps = BTreeMap::new();
        let mut nonzero = false;
        for &d in &f_degs {
            let (r, cc) = (y.gens_at(d), x.gens_at(d));
            let o = off[&d];
            let m = Matrix::unvec_cols(&col.take_rows(o..o + r * cc), r, cc);
            if !m.is_zero() {
                nonzero = true;
            }
            comps.insert(d, m);
        }
        if !nonzero {
            continue;
        }
        if let Ok(f) = ChainMap::new(x.clone(), y.clone(), comps) {
            out.push(f);
        }
    }
    out
}

/// Quasi-isomorphism verdict with both routes: induced isomorphisms on
/// every H^i_t, and N-acyclicity of the cone. The two must agree.
#[derive(Debug, Clone)]
pub struct QuasiIsoReport {
    pub verdict: bool,
    pub by_h: bool,
    pub by_cone: bool,
    pub failing_slot: Option<(i64, u32)>,
}

pub fn is_quasi_iso(f: &ChainMap) -> Result<QuasiIsoReport> {
    let n = f.src.n();
    let mut by_h = true;
    let mut failing = None;
    let lo = f.src.lo().min(f.tgt.lo());
    let hi = f.src.hi().max(f.tgt.hi());
    'outer: for deg in lo..=hi {
        for t in 1..n {
            let hs = cohomology(&f.src, deg, t)?;
            let ht = cohomology(&f.tgt, deg, t)?;
            if hs.class.is_zero() && ht.class.is_zero() {
                continue;
            }
            let g = induced_on_h(f, &hs, &ht, deg)?;
            let an = analyze_pres_map(&g, &hs.pres_rel, &ht.pres_rel);
            if !an.iso() {
                by_h = false;
                failing = Some((deg, t));
                break 'outer;
            }
        }
    }
    let by_cone = is_acyclic(&cone(f))?;
    Ok(QuasiIsoReport { verdict: by_h, by_h, by_cone, failing_slot: failing })
}

/// The induced map on cohomology presentations at a fixed degree.
pub fn induced_on_h(
    f: &ChainMap,
    h_src: &Subquotient,
    h_tgt: &Subquotient,
    deg: i64,
) -> Result<Matrix> {
    module::induced_map(h_src, h_tgt, &f.comp_at(deg))
}

/// Map behaviour on a single cohomology slot.
pub fn induced_analysis(f: &ChainMap, deg: i64, t: u32) -> Result<MapAnalysis> {
    let hs = cohomology(&f.src, deg, t)?;
    let ht = cohomology(&f.tgt, deg, t)?;
    let g = induced_on_h(f, &hs, &ht, deg)?;
    Ok(analyze_pres_map(&g, &hs.pres_rel, &ht.pres_rel))
}

#[derive(Debug, Clone)]
pub struct LesNode {
    pub deg: i64,
    pub t: u32,
    pub member: u8, // 0 = X, 1 = Y, 2 = Z
    pub exact: bool,
}

#[derive(Debug, Clone)]
pub struct LesReport {
    pub t: u32,
    pub nodes: Vec<LesNode>,
    pub pass: bool,
}

fn check_degreewise_ses(alpha: &ChainMap, beta: &ChainMap) -> Result<()> {
    if alpha.tgt != beta.src {
        return Err(Error::NotExactInput("middle complexes differ".into()));
    }
    let (x, y, z) = (&alpha.src, &alpha.tgt, &beta.tgt);
    let lo = x.lo().min(y.lo()).min(z.lo());
    let hi = x.hi().max(y.hi()).max(z.hi());
    for deg in lo..=hi {
        let a = alpha.comp_at(deg);
        let b = beta.comp_at(deg);
        // alpha injective
        let ker = kernel_mod(&a, &y.rel_at(deg));
        if !snf::in_span(&x.rel_at(deg), &ker) {
            return Err(Error::NotExactInput(format!("first map not injective at {deg}")));
        }
        // beta surjective
        if !module::classify_cokernel(&b.hstack(&z.rel_at(deg))).is_zero() {
            return Err(Error::NotExactInput(format!("second map not surjective at {deg}")));
        }
        // im alpha = ker beta
        let kerb = kernel_mod(&b, &z.rel_at(deg));
        let im = a.hstack(&y.rel_at(deg));
        if !snf::in_span(&im, &kerb) || !snf::in_span(&kerb.hstack(&y.rel_at(deg)), &a) {
            return Err(Error::NotExactInput(format!("not exact in the middle at {deg}")));
        }
    }
    Ok(())
}

/// Connecting map H^m_s(Z) -> H^{m+s}_{N-s}(X) by deterministic
/// representative chase.
fn connecting_map(
    alpha: &ChainMap,
    beta: &ChainMap,
    deg: i64,
    s: u32,
    h_z: &Subquotient,
    h_x_next: &Subquotient,
) -> Result<Matrix> {
    let (x, y) = (&alpha.src, &alpha.tgt);
    let ring = x.ring();
    let tgt_deg = deg + s as i64;
    let mut cols = Matrix::zeros(ring, h_x_next.gens(), 0);
    for c in 0..h_z.gens() {
        let zrep = h_z.num.col(c);
        // lift through beta
        let lift = snf::solve(&beta.comp_at(deg).hstack(&beta.tgt.rel_at(deg)), &zrep)
            .ok_or_else(|| Error::Shape("connecting: lift through surjection failed".into()))?;
        let yrep = lift.take_rows(0..y.gens_at(deg));
        let mid = y.composite(deg, s).mul(&yrep);
        // pull back through alpha
        let back = snf::solve(&alpha.comp_at(tgt_deg).hstack(&y.rel_at(tgt_deg)), &mid)
            .ok_or_else(|| Error::Shape("connecting: pullback through injection failed".into()))?;
        let xrep = back.take_rows(0..x.gens_at(tgt_deg));
        let coords = h_x_next
            .coords_of(&xrep)
            .ok_or_else(|| Error::Shape("connecting: representative not a cocycle".into()))?;
        cols = cols.hstack(&coords);
    }
    if !respects_relations(&cols, &h_z.pres_rel, &h_x_next.pres_rel) {
        return Err(Error::Shape("connecting map does not descend".into()));
    }
    Ok(cols)
}

/// Verify the long exact sequence
/// ... -> H^{n-(N-t)}_{N-t}(Z) -> H^n_t(X) -> H^n_t(Y) -> H^n_t(Z) -> H^{n+t}_{N-t}(X) -> ...
/// at every node over the support window, for the given amplitude t.
pub fn les_report(alpha: &ChainMap, beta: &ChainMap, t: u32) -> Result<LesReport> {
    check_degreewise_ses(alpha, beta)?;
    let (x, y, z) = (&alpha.src, &alpha.tgt, &beta.tgt);
    let n = x.n();
    assert!(t >= 1 && t < n);
    let lo = x.lo().min(y.lo()).min(z.lo()) - n as i64;
    let hi = x.hi().max(y.hi()).max(z.hi()) + n as i64;

    // cached cohomology presentations
    let mut cache: BTreeMap<(u8, i64, u32), Subquotient> = BTreeMap::new();
    let cxs = [x, y, z];
    let mut get = |m: u8, deg: i64, s: u32| -> Result<Subquotient> {
        if let Some(h) = cache.get(&(m, deg, s)) {
            return Ok(h.clone());
        }
        let h = cohomology(cxs[m as usize], deg, s)?;
        cache.insert((m, deg, s), h.clone());
        Ok(h)
    };

    // maps around a node (member, deg, s): incoming and outgoing
    let mut nodes = Vec::new();
    let mut pass = true;
    let amps: Vec<u32> = if t == n - t { alloc::vec![t] } else { alloc::vec![t, n - t] };
    for deg in lo..=hi {
        for &s in &amps {
            for member in 0u8..3 {
                let here = get(member, deg, s)?;
                // incoming map
                let (in_map, in_rel): (Matrix, Matrix) = match member {
                    0 => {
                        // delta from H^{deg-(N-s)}_{N-s}(Z)
                        let pdeg = deg - (n - s) as i64;
                        let hz = get(2, pdeg, n - s)?;
                        let m = connecting_map(alpha, beta, pdeg, n - s, &hz, &here)?;
                        (m, hz.pres_rel.clone())
                    }
                    1 => {
                        let hx = get(0, deg, s)?;
                        (induced_on_h(alpha, &hx, &here, deg)?, hx.pres_rel.clone())
                    }
                    _ => {
                        let hy = get(1, deg, s)?;
                        (induced_on_h(beta, &hy, &here, deg)?, hy.pres_rel.clone())
                    }
                };
                let _ = in_rel;
                // outgoing map
                let out_map: Matrix = match member {
                    0 => {
                        let hy = get(1, deg, s)?;
                        induced_on_h(alpha, &here, &hy, deg)?
                    }
                    1 => {
                        let hz = get(2, deg, s)?;
                        induced_on_h(beta, &here, &hz, deg)?
                    }
                    _ => {
                        let hx = get(0, deg + s as i64, n - s)?;
                        connecting_map(alpha, beta, deg, s, &here, &hx)?
                    }
                };
                let out_rel = match member {
                    0 => get(1, deg, s)?.pres_rel,
                    1 => get(2, deg, s)?.pres_rel,
                    _ => get(0, deg + s as i64, n - s)?.pres_rel,
                };
                // exactness at the node: ker(out) = im(in) inside `here`
                let ker = kernel_mod(&out_map, &out_rel);
                let im = in_map.hstack(&here.pres_rel);
                let exact = snf::in_span(&im, &ker)
                    && snf::in_span(&ker.hstack(&here.pres_rel), &in_map);
                if !exact {
                    pass = false;
                }
                if !here.class.is_zero() || !exact {
                    nodes.push(LesNode { deg, t: s, member, exact });
                }
            }
        }
    }
    Ok(LesReport { t, nodes, pass })
}

/// Convenience: H-tables as (degree, t) -> rendered classification.
pub fn h_table_rendered(x: &NComplex) -> Result<BTreeMap<(i64, u32), String>> {
    Ok(h_table(x)?.into_iter().map(|(k, v)| (k, v.render())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn z() -> Ring {
        Ring::integers()
    }

    /// 0 -> R ->1 ... ->1 R ->x R -> 0 in degrees -N+1..=0 (hand-built).
    fn koszul1(ring: &Ring, x: i64, n: u32) -> NComplex {
        let m = FpModule::free(ring, 1);
        let modules = alloc::vec![m; n as usize];
        let mut diffs = alloc::vec![Matrix::identity(ring, 1); (n - 1) as usize];
        let last = diffs.len() - 1;
        diffs[last] = Matrix::from_int_rows(ring, &[&[x]]);
        NComplex::new(n, ring, -(n as i64) + 1, modules, diffs)
    }

    #[test]
    fn validate_disk_and_bad_complex() {
        let ring = z();
        let z4 = FpModule::cyclic(&ring, &ring.from_i64(4));
        let d = disk(&z4, 0, 1, 3);
        assert!(validate(&d).ok);

        // 0 -> Z ->1 Z ->1 Z ->1 Z -> 0 is not a 3-complex
        let m = FpModule::free(&ring, 1);
        let bad = NComplex::new(
            3,
            &ring,
            0,
            alloc::vec![m.clone(), m.clone(), m.clone(), m],
            alloc::vec![Matrix::identity(&ring, 1); 3],
        );
        let rep = validate(&bad);
        assert!(!rep.ok);
        assert_eq!(rep.violations, alloc::vec![Violation::PowerNotZero { degree: 0 }]);
    }

    #[test]
    fn koszul1_is_valid_and_h_values() {
        let ring = z();
        let k = koszul1(&ring, 2, 3);
        assert!(validate(&k).ok);
        // H^0_1 = H^0_2 = Z/2, H^{-1}_1 = (0:2) = 0, middle slots zero
        assert_eq!(cohomology_class(&k, 0, 1).unwrap().render(), "Z/2");
        assert_eq!(cohomology_class(&k, 0, 2).unwrap().render(), "Z/2");
        assert!(cohomology_class(&k, -1, 1).unwrap().is_zero());
        assert!(cohomology_class(&k, -2, 2).unwrap().is_zero());
        assert!(cohomology_class(&k, -2, 1).unwrap().is_zero());
        assert!(cohomology_class(&k, -1, 2).unwrap().is_zero());
    }

    #[test]
    fn full_disk_is_acyclic() {
        let ring = Ring::integers_mod(4).unwrap();
        let m = FpModule::free(&ring, 1); // Z/4 as a module over itself
        for n in [2u32, 3, 4, 5] {
            let d = disk(&m, 3, n, n);
            assert!(is_acyclic(&d).unwrap(), "D^3_{n} not acyclic for N={n}");
        }
    }

    #[test]
    fn disk_h_window() {
        // frozen closed form: H^n_s(D^j_t(M)) = M exactly for
        // max(j-s+1, j-t+1) <= n <= min(j, j+N-s-t)
        let ring = z();
        let m = FpModule::cyclic(&ring, &ring.from_i64(2));
        for n in [3u32, 4] {
            for t in 1..=n {
                let d = disk(&m, 0, t, n);
                for ndeg in -(n as i64)..=1 {
                    for s in 1..n {
                        let got = cohomology_class(&d, ndeg, s).unwrap();
                        let lo = (1 - s as i64).max(1 - t as i64);
                        let hi = (0i64).min(n as i64 - s as i64 - t as i64);
                        let expect_m = ndeg >= lo && ndeg <= hi;
                        assert_eq!(
                            !got.is_zero(),
                            expect_m,
                            "disk table N={n} t={t} deg={ndeg} s={s}"
                        );
                        if expect_m {
                            assert_eq!(got.render(), "Z/2");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cone_of_identity_acyclic() {
        let ring = z();
        for n in [2u32, 3, 4, 5] {
            let m = FpModule::from_parts(&ring, 1, &[ring.from_i64(4)]);
            let x = disk(&m, 0, 1, n);
            let c = cone(&ChainMap::identity(&x));
            assert!(validate(&c).ok);
            assert!(is_acyclic(&c).unwrap(), "cone of identity not acyclic N={n}");
        }
    }

    #[test]
    fn cone_of_mult_is_koszul() {
        let ring = z();
        for n in [3u32, 4] {
            let d = disk(&FpModule::free(&ring, 1), 0, 1, n);
            let f = ChainMap::scalar(&d, &ring.from_i64(2));
            let c = cone(&f);
            let k = koszul1(&ring, 2, n);
            assert_eq!(c, k, "cone(x) = Koszul for N={n}");
        }
    }

    #[test]
    fn suspension_round_trip_h() {
        let ring = z();
        let k = koszul1(&ring, 2, 3);
        let s = suspend(&k, 1);
        assert!(validate(&s).ok);
        let sinv = suspend(&k, -1);
        assert!(validate(&sinv).ok);
        // H^n_t(Sigma X) = H^{n+t}_{N-t}(X)
        for deg in s.lo()..=s.hi() {
            for t in 1..3 {
                let a = cohomology_class(&s, deg, t).unwrap();
                let b = cohomology_class(&k, deg + t as i64, 3 - t).unwrap();
                assert_eq!(a.render(), b.render(), "shift law at ({deg},{t})");
            }
        }
        // round trip preserves H
        let rt = suspend(&s, -1);
        assert!(validate(&rt).ok);
        assert_eq!(
            h_table_rendered(&rt).unwrap(),
            h_table_rendered(&k).unwrap(),
            "Sigma^-1 Sigma preserves H-tables"
        );
    }

    #[test]
    fn homotopy_solver() {
        let ring = z();
        let k = koszul1(&ring, 2, 3);
        // f = 0 has the zero homotopy
        let zmap = ChainMap::zero(&k, &k);
        assert!(null_homotopy(&zmap).is_some());
        // multiplication by x on K(x;R) is null-homotopic
        for n in [3u32, 4] {
            let kk = koszul1(&ring, 2, n);
            let f = ChainMap::scalar(&kk, &ring.from_i64(2));
            let h = null_homotopy(&f);
            assert!(h.is_some(), "mult by 2 on K(2;Z) null-homotopic, N={n}");
            assert!(verify_homotopy(&ChainMap::zero(&kk, &kk), &f, &h.unwrap()));
        }
        // identity on D^0_1(Z/2) is not null-homotopic
        let m = FpModule::cyclic(&ring, &ring.from_i64(2));
        let d = disk(&m, 0, 1, 3);
        assert!(null_homotopy(&ChainMap::identity(&d)).is_none());
    }

    #[test]
    fn quasi_iso_routes_agree() {
        let ring = z();
        let k = koszul1(&ring, 2, 3);
        // identity is a quasi-iso
        let r = is_quasi_iso(&ChainMap::identity(&k)).unwrap();
        assert!(r.verdict && r.by_h && r.by_cone);
        // augmentation K(2;Z) -> D^0_1(Z/2) is a quasi-iso
        let m = FpModule::cyclic(&ring, &ring.from_i64(2));
        let d = disk(&m, 0, 1, 3);
        let mut comps = BTreeMap::new();
        comps.insert(0, Matrix::identity(&ring, 1));
        let aug = ChainMap::new(k.clone(), d.clone(), comps).unwrap();
        let r = is_quasi_iso(&aug).unwrap();
        assert!(r.verdict && r.by_h == r.by_cone && r.by_cone);
        // zero map between complexes with nonzero H is not
        let r = is_quasi_iso(&ChainMap::zero(&k, &k)).unwrap();
        assert!(!r.verdict && r.by_h == r.by_cone);
    }

    #[test]
    fn stupid_truncation_ses_exact() {
        let ring = z();
        let k = koszul1(&ring, 2, 3);
        let top = truncate(&k, TruncFlavor::Stupid, TruncSide::Above, -1).unwrap();
        let bot = truncate(&k, TruncFlavor::Stupid, TruncSide::Below, -1).unwrap();
        // tau_{>hi} = 0
        assert!(truncate(&k, TruncFlavor::Stupid, TruncSide::Above, 0)
            .unwrap()
            .is_zero_complex());
        // inclusion and projection form a degreewise SES; check the LES
        let mut inc = BTreeMap::new();
        for deg in top.lo()..=top.hi() {
            inc.insert(deg, Matrix::identity(&ring, 1));
        }
        let alpha = ChainMap::new(top.clone(), k.clone(), inc).unwrap();
        let mut prj = BTreeMap::new();
        for deg in bot.lo()..=bot.hi() {
            prj.insert(deg, Matrix::identity(&ring, 1));
        }
        let beta = ChainMap::new(k.clone(), bot.clone(), prj).unwrap();
        for t in 1..3 {
            let rep = les_report(&alpha, &beta, t).unwrap();
            assert!(rep.pass, "LES fails at t={t}: {:?}", rep.nodes);
        }
    }

    #[test]
    fn split_ses_connecting_zero() {
        let ring = z();
        let m = FpModule::cyclic(&ring, &ring.from_i64(4));
        let x = disk(&m, 0, 1, 3);
        let zc = koszul1(&ring, 3, 3);
        let y = NComplex::direct_sum(&x, &zc);
        let mut inc = BTreeMap::new();
        for deg in x.lo()..=x.hi() {
            let mut mm = Matrix::zeros(&ring, y.gens_at(deg), x.gens_at(deg));
            mm.paste(0, 0, &Matrix::identity(&ring, x.gens_at(deg)));
            inc.insert(deg, mm);
        }
        let alpha = ChainMap::new(x.clone(), y.clone(), inc).unwrap();
        let mut prj = BTreeMap::new();
        for deg in y.lo()..=y.hi() {
            let mut mm = Matrix::zeros(&ring, zc.gens_at(deg), y.gens_at(deg));
            let off = x.gens_at(deg);
            mm.paste(0, off, &Matrix::identity(&ring, zc.gens_at(deg)));
            prj.insert(deg, mm);
        }
        let beta = ChainMap::new(y.clone(), zc.clone(), prj).unwrap();
        for t in 1..3 {
            assert!(les_report(&alpha, &beta, t).unwrap().pass);
        }
    }

    #[test]
    fn smart_truncations_valid() {
        let ring = z();
        let k = koszul1(&ring, 2, 3);
        for idx in -3..=1 {
            let below = truncate(&k, TruncFlavor::Smart, TruncSide::Below, idx).unwrap();
            assert!(validate(&below).ok, "sigma_<= {idx} invalid");
            let above = truncate(&k, TruncFlavor::Smart, TruncSide::Above, idx).unwrap();
            assert!(validate(&above).ok, "sigma_>= {idx} invalid");
        }
        // sigma_{<=n} of an N-acyclic complex is N-acyclic in degrees < n-N+2
        let ac = cone(&ChainMap::identity(&k));
        for idx in [-2i64, 0] {
            let tr = truncate(&ac, TruncFlavor::Smart, TruncSide::Below, idx).unwrap();
            for deg in tr.lo()..=tr.hi() {
                if deg < idx - 3 + 2 {
                    for t in 1..3 {
                        assert!(
                            cohomology_class(&tr, deg, t).unwrap().is_zero(),
                            "sigma_<={idx} H^{deg}_{t} nonzero"
                        );
                    }
                }
            }
        }
    }
}
