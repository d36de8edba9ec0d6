use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Integer polynomial, lowest degree first.
pub type ZPoly = Vec<BigInt>;

fn mobius(mut n: u64) -> i32 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

fn zpoly_mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic polynomial.
fn zpoly_div_monic(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let dq = a.len() - 1 - db;
    let mut q = vec![BigInt::zero(); dq + 1];
    for k in (0..=dq).rev() {
        let c = rem[k + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    q
}

/// The n-th cyclotomic polynomial via the Möbius quotient formula.
pub fn cyclotomic_poly(n: u64) -> ZPoly {
    let xd_minus_1 = |d: u64| {
        let mut v = vec![BigInt::zero(); d as usize + 1];
        v[0] = BigInt::from(-1);
        v[d as usize] = BigInt::one();
        v
    };
    let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    let mut num: ZPoly = vec![BigInt::one()];
    let mut den: ZPoly = vec![BigInt::one()];
    for &d in &divisors {
        match mobius(n / d) {
            1 => num = zpoly_mul(&num, &xd_minus_1(d)),
            -1 => den = zpoly_mul(&den, &xd_minus_1(d)),
            _ => {}
        }
    }
    zpoly_div_monic(&num, &den)
}

/// Cached data for Q(ζ_{4r}).
#[derive(Debug)]
pub struct CycField {
    pub r: u32,
    pub order: u32,
    pub phi: usize,
    pub modulus: ZPoly,
    /// x^k mod Φ for 0 ≤ k < order.
    pow_table: Vec<ZPoly>,
}

impl CycField {
    fn build(r: u32) -> CycField {
        let order = 4 * r;
        let modulus = cyclotomic_poly(order as u64);
        let phi = modulus.len() - 1;
        let mut pow_table = Vec::with_capacity(order as usize);
        let mut cur = vec![BigInt::zero(); phi];
        cur[0] = BigInt::one();
        for _ in 0..order {
            pow_table.push(cur.clone());
            // multiply by x
            let top = cur[phi - 1].clone();
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigInt::zero();
            if !top.is_zero() {
                for i in 0..phi {
                    cur[i] -= &top * &modulus[i];
                }
            }
        }
        CycField { r, order, phi, modulus, pow_table }
    }

    pub fn get(r: u32) -> Arc<CycField> {
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
        guard
            .entry(r)
            .or_insert_with(|| Arc::new(CycField::build(r)))
            .clone()
    }

    fn pow(&self, k: i64) -> &ZPoly {
        &self.pow_table[k.rem_euclid(self.order as i64) as usize]
    }
}

/// Exact element of Q(ζ_{4r}), stored as an integer vector over a common positive denominator.
#[derive(Clone)]
pub struct CycScalar {
    field: Arc<CycField>,
    num: ZPoly,
    den: BigInt,
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.r == other.field.r && self.den == other.den && self.num == other.num
    }
}
impl Eq for CycScalar {}

impl std::hash::Hash for CycScalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.r.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl CycScalar {
    fn raw(field: Arc<CycField>, num: ZPoly, den: BigInt) -> CycScalar {
        let mut s = CycScalar { field, num, den };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in self.num.iter_mut() {
                *c = -&*c;
            }
        }
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if !c.is_zero() {
                g = g.gcd(c);
                if g.is_one() {
                    return;
                }
            }
        }
        self.den = &self.den / &g;
        for c in self.num.iter_mut() {
            *c = &*c / &g;
        }
    }

    pub fn zero(r: u32) -> CycScalar {
        let field = CycField::get(r);
        let num = vec![BigInt::zero(); field.phi];
        CycScalar { field, num, den: BigInt::one() }
    }

    pub fn one(r: u32) -> CycScalar {
        Self::from_int(r, 1)
    }

    pub fn from_int(r: u32, v: i64) -> CycScalar {
        Self::from_bigint(r, &BigInt::from(v))
    }

    pub fn from_bigint(r: u32, v: &BigInt) -> CycScalar {
        let mut s = Self::zero(r);
        s.num[0] = v.clone();
        s
    }

    pub fn from_rational(r: u32, v: &BigRational) -> CycScalar {
        let mut s = Self::zero(r);
        s.num[0] = v.numer().clone();
        s.den = v.denom().clone();
        s.normalize();
        s
    }

    /// t^k with t = ζ_{4r}.
    pub fn t_pow(r: u32, k: i64) -> CycScalar {
        let field = CycField::get(r);
        let num = field.pow(k).clone();
        CycScalar { field, num, den: BigInt::one() }
    }

    /// Builds an element from power-basis coefficients of arbitrary length (reduced mod Φ).
    pub fn from_coeffs(r: u32, coeffs: &[BigRational]) -> CycScalar {
        let field = CycField::get(r);
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let mut num = vec![BigInt::zero(); field.phi];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let scaled = c.numer() * (&den / c.denom());
            for (i, p) in field.pow(k as i64).iter().enumerate() {
                if !p.is_zero() {
                    num[i] += &scaled * p;
                }
            }
        }
        Self::raw(field, num, den)
    }

    pub fn r(&self) -> u32 {
        self.field.r
    }

    pub fn phi(&self) -> usize {
        self.field.phi
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// Coefficients as "num/den" strings.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs()
            .iter()
            .map(|c| format!("{}/{}", c.numer(), c.denom()))
            .collect()
    }

    pub fn parse_coeff_strings(r: u32, strs: &[String]) -> Result<CycScalar> {
        let mut v = Vec::with_capacity(strs.len());
        for s in strs {
            v.push(super::rational::parse_rational(s)?);
        }
        Ok(Self::from_coeffs(r, &v))
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn check(&self, other: &CycScalar) {
        if self.field.r != other.field.r {
            panic!("{}", Error::FieldMismatch(self.field.r, other.field.r));
        }
    }

    pub fn try_add(&self, other: &CycScalar) -> Result<CycScalar> {
        if self.field.r != other.field.r {
            return Err(Error::FieldMismatch(self.field.r, other.field.r));
        }
        Ok(self.add_impl(other, false))
    }

    fn add_impl(&self, other: &CycScalar, negate: bool) -> CycScalar {
        self.check(other);
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other.clone() } else { other.clone() };
        }
        let (num, den) = if self.den == other.den {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if negate { a - b } else { a + b })
                .collect();
            (num, self.den.clone())
        } else {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| {
                    let x = a * &other.den;
                    let y = b * &self.den;
                    if negate {
                        x - y
                    } else {
                        x + y
                    }
                })
                .collect();
            (num, &self.den * &other.den)
        };
        Self::raw(self.field.clone(), num, den)
    }

    fn mul_impl(&self, other: &CycScalar) -> CycScalar {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field.r);
        }
        let phi = self.field.phi;
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut num: ZPoly = prod[..phi].to_vec();
        for (k, c) in prod.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            for (i, p) in self.field.pow(k as i64).iter().enumerate() {
                if !p.is_zero() {
                    num[i] += c * p;
                }
            }
        }
        Self::raw(self.field.clone(), num, &self.den * &other.den)
    }

    pub fn scale_int(&self, k: &BigInt) -> CycScalar {
        let num = self.num.iter().map(|c| c * k).collect();
        Self::raw(self.field.clone(), num, self.den.clone())
    }

    pub fn scale_rational(&self, q: &BigRational) -> CycScalar {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        Self::raw(self.field.clone(), num, &self.den * q.denom())
    }

    /// Multiplicative inverse by the extended Euclidean algorithm in Q[x].
    pub fn inv(&self) -> Option<CycScalar> {
        if self.is_zero() {
            return None;
        }
        let to_q = |v: &[BigInt], d: &BigInt| -> Vec<BigRational> {
            v.iter().map(|c| BigRational::new(c.clone(), d.clone())).collect()
        };
        let a = trim(to_q(&self.num, &self.den));
        let m = trim(to_q(&self.field.modulus, &BigInt::one()));
        // s·a ≡ g (mod m)
        let (g, s) = qpoly_ext_gcd(&a, &m);
        // g is a nonzero constant since Φ is irreducible
        debug_assert_eq!(g.len(), 1);
        let ginv = g[0].recip();
        let coeffs: Vec<BigRational> = s.iter().map(|c| c * &ginv).collect();
        Some(Self::from_coeffs(self.field.r, &coeffs))
    }

    pub fn pow(&self, e: i64) -> CycScalar {
        let base = if e < 0 {
            self.inv().expect("zero has no negative powers")
        } else {
            self.clone()
        };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.field.r);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        acc
    }

    /// Complex conjugation t ↦ t^{-1}.
    pub fn conj(&self) -> CycScalar {
        let f = &self.field;
        let mut num = vec![BigInt::zero(); f.phi];
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, p) in f.pow(-(k as i64)).iter().enumerate() {
                if !p.is_zero() {
                    num[i] += c * p;
                }
            }
        }
        Self::raw(f.clone(), num, self.den.clone())
    }

    pub(crate) fn num_den(&self) -> (&[BigInt], &BigInt) {
        (&self.num, &self.den)
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn qpoly_sub_mul(a: &[BigRational], q: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(q.len() + b.len() - 1);
    let mut out = vec![BigRational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, x) in q.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] -= x * y;
        }
    }
    trim(out)
}

fn qpoly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if a.len() < b.len() {
        return (vec![BigRational::zero()], trim(rem));
    }
    let lead = b[db].clone();
    let mut q = vec![BigRational::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = &rem[k + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    rem.truncate(db.max(1));
    (trim(q), trim(rem))
}

/// Returns (g, s) with s·a ≡ g modulo m.
fn qpoly_ext_gcd(a: &[BigRational], m: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let is_zero = |v: &[BigRational]| v.iter().all(|c| c.is_zero());
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    let (mut s0, mut s1) = (vec![BigRational::zero()], vec![BigRational::one()]);
    while !is_zero(&r1) {
        let (q, r) = qpoly_divrem(&r0, &r1);
        let s2 = qpoly_sub_mul(&s0, &q, &s1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycScalar(r={}, {})", self.field.r, self)
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "({})·t", c)?,
                _ => write!(f, "({})·t^{}", c, k)?,
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a, 'b> $tr<&'b CycScalar> for &'a CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: &'b CycScalar) -> CycScalar {
                let f: fn(&CycScalar, &CycScalar) -> CycScalar = $body;
                f(self, rhs)
            }
        }
        impl $tr<CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: CycScalar) -> CycScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'b> $tr<&'b CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: &'b CycScalar) -> CycScalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<CycScalar> for &'a CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: CycScalar) -> CycScalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, false));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));
forward_binop!(Div, div, |a, b| a.mul_impl(&b.inv().expect("division by zero")));

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(mut self) -> CycScalar {
        for c in self.num.iter_mut() {
            *c = -&*c;
        }
        self
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -self.clone()
    }
}
