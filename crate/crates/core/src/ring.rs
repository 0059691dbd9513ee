//! Coefficient rings and exact element arithmetic.
//!
//! All supported rings are Euclidean (the integers, Z/m, prime fields, the
//! four Euclidean cyclotomic integer rings, localizations of Z), so Smith
//! normal form and exact solving work uniformly through the division
//! interface here.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::err::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingKind {
    Integers,
    /// Z/m for m >= 2.
    IntegersMod(BigUint),
    /// F_p, optionally with a designated root of unity for q-structures.
    PrimeField { p: BigUint, root: Option<BigUint> },
    /// Z[zeta_N] for N in {2,3,4,6}: exactly the Euclidean cases.
    CyclotomicIntegers(u32),
    /// Z with a finite set of primes inverted (stored as the radical primes
    /// of the inverted integers).
    LocalizedIntegers { inverted: Vec<BigUint>, primes: Vec<BigUint> },
}

/// A coefficient ring. Cheap to clone; element operations live here so the
/// element type can stay a plain enum.
#[derive(Clone)]
pub struct Ring {
    kind: Arc<RingKind>,
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}
impl Eq for Ring {}

/// A ring element. Interpretation depends on the ring:
/// `Int` for Z, Z/m (canonical lift in 0..m) and F_p (0..p);
/// `Cyc(a, b)` is a + b*zeta; `Frac(n, d)` is n/d over a localization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Elem {
    Int(BigInt),
    Cyc(BigInt, BigInt),
    Frac(BigInt, BigUint),
}

fn trial_factor(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut p = BigUint::from(2u32);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            let mut e = 0u32;
            while (&n % &p).is_zero() {
                n /= &p;
                e += 1;
            }
            out.push((p.clone(), e));
        }
        p += 1u32;
    }
    if n > BigUint::one() {
        out.push((n, 1));
    }
    out
}

pub fn factor_primes(n: &BigUint) -> Vec<BigUint> {
    trial_factor(n).into_iter().map(|(p, _)| p).collect()
}

fn is_prime(n: &BigUint) -> bool {
    if *n < BigUint::from(2u32) {
        return false;
    }
    let fs = trial_factor(n);
    fs.len() == 1 && fs[0].1 == 1
}

/// Nearest-integer division, round-half-up: q = floor((2a + b) / (2b)) for b > 0.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    debug_assert!(b.is_positive());
    let two = BigInt::from(2);
    (a * &two + b).div_floor(&(b * &two))
}

impl Ring {
    pub fn integers() -> Ring {
        Ring { kind: Arc::new(RingKind::Integers) }
    }

    pub fn integers_mod(m: u64) -> Result<Ring> {
        Self::integers_mod_big(BigUint::from(m))
    }

    pub fn integers_mod_big(m: BigUint) -> Result<Ring> {
        if m < BigUint::from(2u32) {
            return Err(Error::Unsupported("IntegersMod needs m >= 2".into()));
        }
        Ok(Ring { kind: Arc::new(RingKind::IntegersMod(m)) })
    }

    pub fn prime_field(p: u64) -> Result<Ring> {
        let p = BigUint::from(p);
        if !is_prime(&p) {
            return Err(Error::Unsupported(format!("{p} is not prime")));
        }
        Ok(Ring { kind: Arc::new(RingKind::PrimeField { p, root: None }) })
    }

    /// Prime field with a designated root of unity; primitivity for a given N
    /// is checked by `QContext`, here only q^? nonzero mod p.
    pub fn prime_field_with_root(p: u64, q: u64) -> Result<Ring> {
        let pb = BigUint::from(p);
        if !is_prime(&pb) {
            return Err(Error::Unsupported(format!("{p} is not prime")));
        }
        let qb = BigUint::from(q) % &pb;
        if qb.is_zero() {
            return Err(Error::Unsupported("designated root must be nonzero".into()));
        }
        Ok(Ring { kind: Arc::new(RingKind::PrimeField { p: pb, root: Some(qb) }) })
    }

    pub fn cyclotomic(n: u32) -> Result<Ring> {
        match n {
            2 | 3 | 4 | 6 => Ok(Ring { kind: Arc::new(RingKind::CyclotomicIntegers(n)) }),
            _ => Err(Error::Unsupported(format!(
                "CyclotomicIntegers({n}): only N in {{2,3,4,6}} is Euclidean"
            ))),
        }
    }

    pub fn localized_integers(inverted: &[i64]) -> Result<Ring> {
        if inverted.is_empty() {
            return Err(Error::Unsupported("LocalizedIntegers needs a nonempty set".into()));
        }
        let mut inv = Vec::new();
        let mut primes: Vec<BigUint> = Vec::new();
        for &x in inverted {
            if x == 0 {
                return Err(Error::Unsupported("cannot invert 0".into()));
            }
            let a = BigUint::from(x.unsigned_abs());
            for p in factor_primes(&a) {
                if !primes.contains(&p) {
                    primes.push(p);
                }
            }
            inv.push(a);
        }
        primes.sort();
        inv.sort();
        inv.dedup();
        Ok(Ring { kind: Arc::new(RingKind::LocalizedIntegers { inverted: inv, primes }) })
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    pub fn name(&self) -> String {
        match self.kind() {
            RingKind::Integers => "Z".to_string(),
            RingKind::IntegersMod(m) => format!("Z/{m}"),
            RingKind::PrimeField { p, root: None } => format!("F{p}"),
            RingKind::PrimeField { p, root: Some(q) } => format!("F{p}(q={q})"),
            RingKind::CyclotomicIntegers(n) => format!("Z[zeta{n}]"),
            RingKind::LocalizedIntegers { inverted, .. } => {
                let parts: Vec<String> = inverted.iter().map(|x| format!("1/{x}")).collect();
                format!("Z[{}]", parts.join(","))
            }
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self.kind(), RingKind::PrimeField { .. })
    }

    pub fn is_domain(&self) -> bool {
        !matches!(self.kind(), RingKind::IntegersMod(_))
    }

    /// All supported domains are PIDs (Euclidean even); Z/m is not a domain.
    pub fn is_pid(&self) -> bool {
        self.is_domain()
    }

    fn cyc_n(&self) -> u32 {
        match self.kind() {
            RingKind::CyclotomicIntegers(n) => *n,
            _ => unreachable!(),
        }
    }

    fn loc_primes(&self) -> &[BigUint] {
        match self.kind() {
            RingKind::LocalizedIntegers { primes, .. } => primes,
            _ => unreachable!(),
        }
    }

    // ---- element construction ----

    pub fn zero(&self) -> Elem {
        self.from_bigint(BigInt::zero())
    }

    pub fn one(&self) -> Elem {
        self.from_bigint(BigInt::one())
    }

    pub fn from_i64(&self, x: i64) -> Elem {
        self.from_bigint(BigInt::from(x))
    }

    pub fn from_bigint(&self, x: BigInt) -> Elem {
        match self.kind() {
            RingKind::Integers => Elem::Int(x),
            RingKind::IntegersMod(m) | RingKind::PrimeField { p: m, .. } => {
                Elem::Int(x.mod_floor(&BigInt::from(m.clone())))
            }
            RingKind::CyclotomicIntegers(_) => Elem::Cyc(x, BigInt::zero()),
            RingKind::LocalizedIntegers { .. } => Elem::Frac(x, BigUint::one()),
        }
    }

    pub fn cyc_elem(&self, a: BigInt, b: BigInt) -> Elem {
        match self.kind() {
            RingKind::CyclotomicIntegers(2) => {
                // zeta_2 = -1 lives inside Z
                Elem::Cyc(a - b, BigInt::zero())
            }
            RingKind::CyclotomicIntegers(_) => Elem::Cyc(a, b),
            _ => unreachable!("cyc_elem on non-cyclotomic ring"),
        }
    }

    pub fn frac_elem(&self, num: BigInt, den: BigInt) -> Result<Elem> {
        match self.kind() {
            RingKind::LocalizedIntegers { primes, .. } => {
                if den.is_zero() {
                    return Err(Error::Unsupported("zero denominator".into()));
                }
                let mut n = if den.is_negative() { -num } else { num };
                let mut d = den.abs().to_biguint().unwrap();
                let g = n.abs().to_biguint().unwrap().gcd(&d);
                if !g.is_one() && !g.is_zero() {
                    n /= BigInt::from(g.clone());
                    d /= &g;
                }
                if n.is_zero() {
                    d = BigUint::one();
                }
                // reduced denominator must be supported on the inverted primes
                let mut rest = d.clone();
                for p in primes {
                    while (&rest % p).is_zero() {
                        rest /= p;
                    }
                }
                if !rest.is_one() {
                    return Err(Error::Unsupported(format!(
                        "denominator {d} is not invertible in {}",
                        self.name()
                    )));
                }
                Ok(Elem::Frac(n, d))
            }
            _ => Err(Error::RingMismatch("frac_elem on non-localized ring".into())),
        }
    }

    /// The adjoined root of unity, where one exists by construction.
    pub fn designated_root(&self) -> Option<Elem> {
        match self.kind() {
            RingKind::PrimeField { root: Some(q), .. } => {
                Some(Elem::Int(BigInt::from(q.clone())))
            }
            RingKind::CyclotomicIntegers(2) => Some(Elem::Cyc(BigInt::from(-1), BigInt::zero())),
            RingKind::CyclotomicIntegers(_) => Some(Elem::Cyc(BigInt::zero(), BigInt::one())),
            _ => None,
        }
    }

    // ---- arithmetic ----

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Int(x), Elem::Int(y)) => self.from_bigint(x + y),
            (Elem::Cyc(xa, xb), Elem::Cyc(ya, yb)) => Elem::Cyc(xa + ya, xb + yb),
            (Elem::Frac(xn, xd), Elem::Frac(yn, yd)) => {
                let xd_i = BigInt::from(xd.clone());
                let yd_i = BigInt::from(yd.clone());
                self.frac_elem(xn * &yd_i + yn * &xd_i, xd_i * yd_i).unwrap()
            }
            _ => unreachable!("mixed element kinds"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match a {
            Elem::Int(x) => self.from_bigint(-x),
            Elem::Cyc(xa, xb) => Elem::Cyc(-xa, -xb),
            Elem::Frac(n, d) => Elem::Frac(-n, d.clone()),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Int(x), Elem::Int(y)) => self.from_bigint(x * y),
            (Elem::Cyc(a0, a1), Elem::Cyc(b0, b1)) => {
                // zeta^2 rewriting per cyclotomic polynomial
                let (c0, c1) = match self.cyc_n() {
                    2 => (a0 * b0, BigInt::zero()),
                    3 => (a0 * b0 - a1 * b1, a0 * b1 + a1 * b0 - a1 * b1),
                    4 => (a0 * b0 - a1 * b1, a0 * b1 + a1 * b0),
                    6 => (a0 * b0 - a1 * b1, a0 * b1 + a1 * b0 + a1 * b1),
                    _ => unreachable!(),
                };
                Elem::Cyc(c0, c1)
            }
            (Elem::Frac(xn, xd), Elem::Frac(yn, yd)) => {
                self.frac_elem(xn * yn, BigInt::from(xd * yd)).unwrap()
            }
            _ => unreachable!("mixed element kinds"),
        }
    }

    pub fn pow(&self, a: &Elem, k: u32) -> Elem {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Int(x) => x.is_zero(),
            Elem::Cyc(x, y) => x.is_zero() && y.is_zero(),
            Elem::Frac(n, _) => n.is_zero(),
        }
    }

    pub fn eq(&self, a: &Elem, b: &Elem) -> bool {
        a == b
    }

    fn cyc_conj(&self, a: &Elem) -> Elem {
        let (x, y) = match a {
            Elem::Cyc(x, y) => (x.clone(), y.clone()),
            _ => unreachable!(),
        };
        match self.cyc_n() {
            2 => Elem::Cyc(x, y),
            3 => Elem::Cyc(x - &y, -y),
            4 => Elem::Cyc(x, -y),
            6 => Elem::Cyc(x + &y, -y),
            _ => unreachable!(),
        }
    }

    fn cyc_norm_int(&self, a: &Elem) -> BigInt {
        let (x, y) = match a {
            Elem::Cyc(x, y) => (x, y),
            _ => unreachable!(),
        };
        match self.cyc_n() {
            2 => x * x,
            3 => x * x - x * y + y * y,
            4 => x * x + y * y,
            6 => x * x + x * y + y * y,
            _ => unreachable!(),
        }
    }

    /// Split a localized element into (sign*smooth-part unit, coprime part >= 0).
    fn loc_split(&self, a: &Elem) -> (BigInt, BigUint, BigUint) {
        // returns (sign (+-1), smooth part of |num|, coprime part of |num|); den separate
        let (n, _) = match a {
            Elem::Frac(n, d) => (n, d),
            _ => unreachable!(),
        };
        let sign = if n.is_negative() { BigInt::from(-1) } else { BigInt::one() };
        let mut abs = n.abs().to_biguint().unwrap();
        let mut smooth = BigUint::one();
        for p in self.loc_primes() {
            while !abs.is_zero() && (&abs % p).is_zero() {
                abs /= p;
                smooth *= p;
            }
        }
        (sign, smooth, abs)
    }

    /// Euclidean norm used by the pivot rule. norm(0) = 0; units have the
    /// minimal nonzero norm in each ring.
    pub fn norm(&self, a: &Elem) -> BigUint {
        if self.is_zero(a) {
            return BigUint::zero();
        }
        match self.kind() {
            RingKind::Integers => match a {
                Elem::Int(x) => x.abs().to_biguint().unwrap(),
                _ => unreachable!(),
            },
            RingKind::IntegersMod(m) => match a {
                Elem::Int(x) => x.to_biguint().unwrap().gcd(m),
                _ => unreachable!(),
            },
            RingKind::PrimeField { .. } => BigUint::one(),
            RingKind::CyclotomicIntegers(_) => self.cyc_norm_int(a).to_biguint().unwrap(),
            RingKind::LocalizedIntegers { .. } => self.loc_split(a).2,
        }
    }

    pub fn is_unit(&self, a: &Elem) -> bool {
        if self.is_zero(a) {
            return false;
        }
        self.norm(a).is_one()
    }

    /// Inverse of a unit.
    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if !self.is_unit(a) {
            return Err(Error::Unsupported(format!("not a unit: {}", self.fmt_elem(a))));
        }
        Ok(match self.kind() {
            RingKind::Integers => a.clone(),
            RingKind::IntegersMod(m) | RingKind::PrimeField { p: m, .. } => {
                let x = match a {
                    Elem::Int(x) => x,
                    _ => unreachable!(),
                };
                let mi = BigInt::from(m.clone());
                let e = x.extended_gcd(&mi);
                debug_assert!(e.gcd.is_one());
                Elem::Int(e.x.mod_floor(&mi))
            }
            RingKind::CyclotomicIntegers(_) => self.cyc_conj(a),
            RingKind::LocalizedIntegers { .. } => match a {
                Elem::Frac(n, d) => {
                    let s = if n.is_negative() { -1 } else { 1 };
                    self.frac_elem(BigInt::from(s) * BigInt::from(d.clone()), n.abs()).unwrap()
                }
                _ => unreachable!(),
            },
        })
    }

    /// Does d divide a (is a in the ideal (d))?
    pub fn divides(&self, d: &Elem, a: &Elem) -> bool {
        if self.is_zero(a) {
            return true;
        }
        if self.is_zero(d) {
            return false;
        }
        match self.kind() {
            RingKind::Integers => match (d, a) {
                (Elem::Int(d), Elem::Int(a)) => a.is_multiple_of(d),
                _ => unreachable!(),
            },
            RingKind::IntegersMod(m) => {
                let (d, a) = match (d, a) {
                    (Elem::Int(d), Elem::Int(a)) => (d, a),
                    _ => unreachable!(),
                };
                let g = d.to_biguint().unwrap().gcd(m);
                a.is_multiple_of(&BigInt::from(g))
            }
            RingKind::PrimeField { .. } => true,
            RingKind::CyclotomicIntegers(_) => {
                let num = self.mul(a, &self.cyc_conj(d));
                let nd = self.cyc_norm_int(d);
                match num {
                    Elem::Cyc(x, y) => x.is_multiple_of(&nd) && y.is_multiple_of(&nd),
                    _ => unreachable!(),
                }
            }
            RingKind::LocalizedIntegers { .. } => {
                let cd = self.loc_split(d).2;
                let ca = self.loc_split(a).2;
                ca.is_multiple_of(&cd)
            }
        }
    }

    /// A solution x of d*x = a, when one exists.
    pub fn exact_div(&self, a: &Elem, d: &Elem) -> Option<Elem> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        if self.is_zero(d) {
            return None;
        }
        if !self.divides(d, a) {
            return None;
        }
        Some(match self.kind() {
            RingKind::Integers => match (a, d) {
                (Elem::Int(a), Elem::Int(d)) => Elem::Int(a / d),
                _ => unreachable!(),
            },
            RingKind::IntegersMod(m) => {
                let (ai, di) = match (a, d) {
                    (Elem::Int(a), Elem::Int(d)) => (a, d),
                    _ => unreachable!(),
                };
                let g = di.to_biguint().unwrap().gcd(m);
                let w = self.unit_association(di, &g);
                let winv = self.inv(&Elem::Int(w)).unwrap();
                self.mul(&winv, &Elem::Int(ai / BigInt::from(g)))
            }
            RingKind::PrimeField { .. } => self.mul(a, &self.inv(d).unwrap()),
            RingKind::CyclotomicIntegers(_) => {
                let num = self.mul(a, &self.cyc_conj(d));
                let nd = self.cyc_norm_int(d);
                match num {
                    Elem::Cyc(x, y) => Elem::Cyc(x / &nd, y / &nd),
                    _ => unreachable!(),
                }
            }
            RingKind::LocalizedIntegers { .. } => match (a, d) {
                (Elem::Frac(an, ad), Elem::Frac(dn, dd)) => self
                    .frac_elem(an * BigInt::from(dd.clone()), dn * BigInt::from(ad.clone()))
                    .unwrap(),
                _ => unreachable!(),
            },
        })
    }

    /// In Z/m: a unit w with d = w * g (mod m), where g = gcd(d, m).
    fn unit_association(&self, d: &BigInt, g: &BigUint) -> BigInt {
        let m = match self.kind() {
            RingKind::IntegersMod(m) => m,
            _ => unreachable!(),
        };
        let mi = BigInt::from(m.clone());
        let gi = BigInt::from(g.clone());
        let base = (d / &gi).mod_floor(&mi);
        let step = &mi / &gi;
        let mut w = base;
        loop {
            if w.to_biguint().unwrap().gcd(m).is_one() {
                return w;
            }
            w = (w + &step).mod_floor(&mi);
        }
    }

    /// Euclidean division a = q*b + r with r = 0 or norm(r) < norm(b).
    pub fn div_rem(&self, a: &Elem, b: &Elem) -> (Elem, Elem) {
        debug_assert!(!self.is_zero(b));
        match self.kind() {
            RingKind::Integers => {
                let (a, b) = match (a, b) {
                    (Elem::Int(a), Elem::Int(b)) => (a, b),
                    _ => unreachable!(),
                };
                let bp = b.abs();
                let mut q = round_div(a, &bp);
                if b.is_negative() {
                    q = -q;
                }
                let r = a - &q * b;
                (Elem::Int(q), Elem::Int(r))
            }
            RingKind::IntegersMod(m) => {
                let (ai, bi) = match (a, b) {
                    (Elem::Int(a), Elem::Int(b)) => (a, b),
                    _ => unreachable!(),
                };
                let g = bi.to_biguint().unwrap().gcd(m);
                let gi = BigInt::from(g.clone());
                let r = ai.mod_floor(&gi);
                let w = self.unit_association(bi, &g);
                let winv = self.inv(&Elem::Int(w)).unwrap();
                let q = self.mul(&winv, &self.from_bigint((ai - &r) / &gi));
                (q, self.from_bigint(r))
            }
            RingKind::PrimeField { .. } => {
                (self.mul(a, &self.inv(b).unwrap()), self.zero())
            }
            RingKind::CyclotomicIntegers(_) => {
                let num = self.mul(a, &self.cyc_conj(b));
                let nd = self.cyc_norm_int(b);
                let (x, y) = match &num {
                    Elem::Cyc(x, y) => (x, y),
                    _ => unreachable!(),
                };
                let q = Elem::Cyc(round_div(x, &nd), round_div(y, &nd));
                let r = self.sub(a, &self.mul(&q, b));
                (q, r)
            }
            RingKind::LocalizedIntegers { .. } => {
                let (sa, pa, ca) = self.loc_split(a);
                let (_, _, cb) = self.loc_split(b);
                let ad = match a {
                    Elem::Frac(_, d) => d.clone(),
                    _ => unreachable!(),
                };
                // a = u_a * ca with unit u_a = sa*pa/ad; integer-divide the coprime parts
                let cai = BigInt::from(ca);
                let cbi = BigInt::from(cb);
                let q0 = round_div(&cai, &cbi);
                let r0 = &cai - &q0 * &cbi;
                let ua = self.frac_elem(&sa * BigInt::from(pa), BigInt::from(ad)).unwrap();
                let binv_times_cb = self.exact_div(&self.from_bigint(cbi), b).unwrap(); // cb/b, a unit
                // q = u_a * q0 * (cb / b), r = u_a * r0
                let q = self.mul(&self.mul(&ua, &self.from_bigint(q0)), &binv_times_cb);
                let r = self.mul(&ua, &self.from_bigint(r0));
                (q, r)
            }
        }
    }

    /// Canonical associate: returns (c, u) with c = u*a, u a unit, and c the
    /// canonical representative of the associate class (positive over Z,
    /// gcd(a, m) over Z/m, 1 over fields, the max-real associate over
    /// cyclotomic rings, the positive coprime part over localizations).
    pub fn canonical_associate(&self, a: &Elem) -> (Elem, Elem) {
        if self.is_zero(a) {
            return (self.zero(), self.one());
        }
        match self.kind() {
            RingKind::Integers => match a {
                Elem::Int(x) if x.is_negative() => (Elem::Int(-x), self.from_i64(-1)),
                _ => (a.clone(), self.one()),
            },
            RingKind::IntegersMod(m) => {
                let x = match a {
                    Elem::Int(x) => x,
                    _ => unreachable!(),
                };
                let g = x.to_biguint().unwrap().gcd(m);
                let w = self.unit_association(x, &g); // a = w*g
                let u = self.inv(&Elem::Int(w)).unwrap();
                (self.from_bigint(BigInt::from(g)), u)
            }
            RingKind::PrimeField { .. } => (self.one(), self.inv(a).unwrap()),
            RingKind::CyclotomicIntegers(n) => {
                let units: Vec<Elem> = match n {
                    2 => vec![self.one(), self.from_i64(-1)],
                    4 => vec![
                        Elem::Cyc(BigInt::one(), BigInt::zero()),
                        Elem::Cyc(-BigInt::one(), BigInt::zero()),
                        Elem::Cyc(BigInt::zero(), BigInt::one()),
                        Elem::Cyc(BigInt::zero(), -BigInt::one()),
                    ],
                    3 | 6 => {
                        let z = self.designated_root().unwrap();
                        let mut us = Vec::new();
                        let mut cur = self.one();
                        for _ in 0..6 {
                            cur = match n {
                                3 => self.mul(&cur, &z),
                                _ => self.mul(&cur, &z),
                            };
                            if !us.contains(&cur) {
                                us.push(cur.clone());
                            }
                            let nc = self.neg(&cur);
                            if !us.contains(&nc) {
                                us.push(nc);
                            }
                        }
                        us
                    }
                    _ => unreachable!(),
                };
                // canonical associate: maximal real part, then minimal |imag|,
                // then nonnegative imag
                let key = |e: &Elem| -> (BigInt, core::cmp::Reverse<BigInt>, bool) {
                    match e {
                        Elem::Cyc(x, y) => {
                            (x.clone(), core::cmp::Reverse(y.abs()), !y.is_negative())
                        }
                        _ => unreachable!(),
                    }
                };
                let mut best: Option<(Elem, Elem)> = None;
                for u in &units {
                    let cand = self.mul(a, u);
                    let better = match &best {
                        None => true,
                        Some((b, _)) => key(&cand) > key(b),
                    };
                    if better {
                        best = Some((cand, u.clone()));
                    }
                }
                best.unwrap()
            }
            RingKind::LocalizedIntegers { .. } => {
                let (_, _, ca) = self.loc_split(a);
                let c = self.from_bigint(BigInt::from(ca));
                let u = self.exact_div(&c, a).unwrap();
                (c, u)
            }
        }
    }

    /// Generator of the annihilator ideal (0 : d); None when it is zero.
    pub fn annihilator(&self, d: &Elem) -> Option<Elem> {
        if self.is_zero(d) {
            return Some(self.one());
        }
        match self.kind() {
            RingKind::IntegersMod(m) => {
                let x = match d {
                    Elem::Int(x) => x,
                    _ => unreachable!(),
                };
                let g = x.to_biguint().unwrap().gcd(m);
                let a = m / &g;
                if &a == m {
                    None
                } else {
                    Some(self.from_bigint(BigInt::from(a)))
                }
            }
            _ => None,
        }
    }

    pub fn fmt_elem(&self, a: &Elem) -> String {
        match a {
            Elem::Int(x) => format!("{x}"),
            Elem::Cyc(x, y) => {
                if y.is_zero() {
                    format!("{x}")
                } else if x.is_zero() {
                    format!("{y}w")
                } else {
                    format!("{x}{}{}w", if y.is_negative() { "" } else { "+" }, y)
                }
            }
            Elem::Frac(n, d) => {
                if d.is_one() {
                    format!("{n}")
                } else {
                    format!("{n}/{d}")
                }
            }
        }
    }

    /// Parse helper used by tests and the CLI matrix literals: integers,
    /// cyclotomic coefficient pairs, and [num, den] fractions are produced by
    /// the dedicated constructors instead; this covers plain integers.
    pub fn elem_from_str_int(&self, s: &str) -> Result<Elem> {
        let x: BigInt = s
            .parse()
            .map_err(|_| Error::Unsupported(format!("bad integer literal {s:?}")))?;
        Ok(self.from_bigint(x))
    }

    /// The sign data of a BigInt as a ring element of Z-like rings.
    pub fn bigint_of(&self, a: &Elem) -> Option<BigInt> {
        match a {
            Elem::Int(x) => Some(x.clone()),
            Elem::Frac(n, d) if d.is_one() => Some(n.clone()),
            _ => None,
        }
    }

    /// Cardinality of the ring, when finite.
    pub fn cardinality(&self) -> Option<BigUint> {
        match self.kind() {
            RingKind::IntegersMod(m) => Some(m.clone()),
            RingKind::PrimeField { p, .. } => Some(p.clone()),
            _ => None,
        }
    }

    /// Cardinality of the cyclic module R/(d), when finite.
    pub fn cyclic_cardinality(&self, d: &Elem) -> Option<BigUint> {
        if self.is_zero(d) {
            return self.cardinality();
        }
        match self.kind() {
            RingKind::Integers => Some(self.norm(d)),
            RingKind::IntegersMod(_) | RingKind::PrimeField { .. } => Some(self.norm(d)),
            RingKind::CyclotomicIntegers(_) => Some(self.norm(d)),
            RingKind::LocalizedIntegers { .. } => Some(self.norm(d)),
        }
    }

    /// Positive-integer content of an element of Z (helper for Z-side code).
    pub fn int_abs(&self, a: &Elem) -> Option<BigUint> {
        self.bigint_of(a).map(|x| x.abs().to_biguint().unwrap())
    }
}

pub fn bigint_sign(x: &BigInt) -> Sign {
    x.sign()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zmod_division() {
        let r = Ring::integers_mod(12).unwrap();
        // 8 = 5 * 4 mod 12 with 5 a unit
        let b = r.from_i64(8);
        let (c, u) = r.canonical_associate(&b);
        assert_eq!(c, r.from_i64(4));
        assert_eq!(r.mul(&u, &b), c);
        // division: 10 by 8: gcd(8,12)=4, r = 10 mod 4 = 2
        let (q, rem) = r.div_rem(&r.from_i64(10), &b);
        assert_eq!(rem, r.from_i64(2));
        assert_eq!(r.add(&r.mul(&q, &b), &rem), r.from_i64(10));
        assert!(r.norm(&rem) < r.norm(&b));
    }

    #[test]
    fn zmod_annihilator() {
        let r = Ring::integers_mod(6).unwrap();
        assert_eq!(r.annihilator(&r.from_i64(3)), Some(r.from_i64(2)));
        assert_eq!(r.annihilator(&r.from_i64(5)), None);
        assert_eq!(r.annihilator(&r.from_i64(0)), Some(r.from_i64(1)));
    }

    #[test]
    fn gaussian_division() {
        let r = Ring::cyclotomic(4).unwrap();
        let a = r.cyc_elem(BigInt::from(7), BigInt::from(3));
        let b = r.cyc_elem(BigInt::from(2), BigInt::from(-1));
        let (q, rem) = r.div_rem(&a, &b);
        assert_eq!(r.add(&r.mul(&q, &b), &rem), a);
        assert!(r.norm(&rem) < r.norm(&b));
    }

    #[test]
    fn eisenstein_units_and_associates() {
        let r = Ring::cyclotomic(3).unwrap();
        let z = r.designated_root().unwrap();
        assert_eq!(r.pow(&z, 3), r.one());
        assert!(r.pow(&z, 1) != r.one() && r.pow(&z, 2) != r.one());
        let (c, u) = r.canonical_associate(&r.from_i64(-2));
        assert_eq!(c, r.from_i64(2));
        assert_eq!(r.mul(&u, &r.from_i64(-2)), c);
        // the root itself normalizes to 1
        let (c2, _) = r.canonical_associate(&z);
        assert_eq!(c2, r.one());
    }

    #[test]
    fn zeta6_arithmetic() {
        let r = Ring::cyclotomic(6).unwrap();
        let z = r.designated_root().unwrap();
        assert_eq!(r.pow(&z, 6), r.one());
        for k in 1..6 {
            assert!(r.pow(&z, k) != r.one(), "zeta6^{k} = 1");
        }
        let a = r.cyc_elem(BigInt::from(5), BigInt::from(-4));
        let b = r.cyc_elem(BigInt::from(1), BigInt::from(2));
        let (q, rem) = r.div_rem(&a, &b);
        assert_eq!(r.add(&r.mul(&q, &b), &rem), a);
        assert!(r.norm(&rem) < r.norm(&b));
    }

    #[test]
    fn localized_normal_form() {
        let r = Ring::localized_integers(&[2]).unwrap();
        let a = r.frac_elem(BigInt::from(12), BigInt::from(8)).unwrap();
        assert_eq!(a, Elem::Frac(BigInt::from(3), BigUint::from(2u32)));
        assert!(r.is_unit(&r.from_i64(4)));
        assert!(!r.is_unit(&r.from_i64(6)));
        let (c, u) = r.canonical_associate(&r.from_i64(-12));
        assert_eq!(c, r.from_i64(3));
        assert_eq!(r.mul(&u, &r.from_i64(-12)), c);
        // division by a non-unit
        let (q, rem) = r.div_rem(&r.from_i64(10), &r.from_i64(6));
        assert_eq!(r.add(&r.mul(&q, &r.from_i64(6)), &rem), r.from_i64(10));
        assert!(r.norm(&rem) < r.norm(&r.from_i64(6)));
    }

    #[test]
    fn cyclotomic_two_is_integers() {
        let r = Ring::cyclotomic(2).unwrap();
        let m1 = r.designated_root().unwrap();
        assert_eq!(r.mul(&m1, &m1), r.one());
        assert_eq!(r.pow(&m1, 2), r.one());
        assert!(m1 != r.one());
    }
}
