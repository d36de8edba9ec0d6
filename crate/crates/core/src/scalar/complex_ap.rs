use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float, Integer};

pub const DEFAULT_PREC_BITS: u32 = 128;

/// Default working precision, overridable through THETAFORGE_PREC_BITS.
pub fn default_prec_bits() -> u32 {
    std::env::var("THETAFORGE_PREC_BITS")
        .ok()
        .and_then(|v| v.trim().parse::<u32>().ok())
        .filter(|&p| p >= 16)
        .unwrap_or(DEFAULT_PREC_BITS)
}

pub(crate) fn bigint_to_integer(v: &BigInt) -> Integer {
    let (sign, digits) = v.to_u32_digits();
    let mut i = Integer::from_digits(&digits, rug::integer::Order::Lsf);
    if sign == Sign::Minus {
        i = -i;
    }
    i
}

/// Arbitrary-precision complex number.
#[derive(Clone, PartialEq)]
pub struct ComplexAP(Complex);

impl ComplexAP {
    pub fn new(prec: u32, re: f64, im: f64) -> Self {
        ComplexAP(Complex::with_val(prec, (re, im)))
    }

    pub fn zero(prec: u32) -> Self {
        Self::new(prec, 0.0, 0.0)
    }

    pub fn one(prec: u32) -> Self {
        Self::new(prec, 1.0, 0.0)
    }

    pub fn i(prec: u32) -> Self {
        Self::new(prec, 0.0, 1.0)
    }

    pub fn from_floats(re: Float, im: Float) -> Self {
        let prec = re.prec().max(im.prec());
        ComplexAP(Complex::with_val(prec, (re, im)))
    }

    pub fn from_bigint(prec: u32, v: &BigInt) -> Self {
        ComplexAP(Complex::with_val(prec, (bigint_to_integer(v), 0)))
    }

    pub fn from_ratio(prec: u32, num: &BigInt, den: &BigInt) -> Self {
        let n = Float::with_val(prec, bigint_to_integer(num));
        let d = Float::with_val(prec, bigint_to_integer(den));
        ComplexAP(Complex::with_val(prec, (n / d, 0)))
    }

    pub fn pi(prec: u32) -> Float {
        Float::with_val(prec, Constant::Pi)
    }

    /// e^{iπ·num/den}
    pub fn exp_i_pi(prec: u32, num: i64, den: i64) -> Self {
        let x = Self::pi(prec + 16) * Float::with_val(prec + 16, num) / Float::with_val(prec + 16, den);
        let (s, c) = x.sin_cos(Float::new(prec + 16));
        ComplexAP(Complex::with_val(prec, (c, s)))
    }

    pub fn inner(&self) -> &Complex {
        &self.0
    }

    pub fn from_inner(c: Complex) -> Self {
        ComplexAP(c)
    }

    pub fn prec(&self) -> u32 {
        self.0.prec().0.max(self.0.prec().1)
    }

    pub fn re(&self) -> &Float {
        self.0.real()
    }

    pub fn im(&self) -> &Float {
        self.0.imag()
    }

    pub fn re_f64(&self) -> f64 {
        self.0.real().to_f64()
    }

    pub fn im_f64(&self) -> f64 {
        self.0.imag().to_f64()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re_f64(), self.im_f64())
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.0.abs_ref())
    }

    pub fn abs_f64(&self) -> f64 {
        self.abs().to_f64()
    }

    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.0.arg_ref())
    }

    pub fn conj(&self) -> Self {
        ComplexAP(Complex::with_val(self.prec(), self.0.conj_ref()))
    }

    pub fn exp(&self) -> Self {
        ComplexAP(Complex::with_val(self.prec(), self.0.exp_ref()))
    }

    /// Principal square root (argument in (−π/2, π/2]).
    pub fn sqrt(&self) -> Self {
        ComplexAP(Complex::with_val(self.prec(), self.0.sqrt_ref()))
    }

    pub fn recip(&self) -> Self {
        ComplexAP(Complex::with_val(self.prec(), self.0.recip_ref()))
    }

    pub fn powi(&self, e: i32) -> Self {
        ComplexAP(Complex::with_val(self.prec(), (&self.0).pow(e)))
    }

    pub fn scale_f(&self, f: &Float) -> Self {
        ComplexAP(Complex::with_val(self.prec(), &self.0 * f))
    }

    pub fn is_exact_zero(&self) -> bool {
        self.0.real().is_zero() && self.0.imag().is_zero()
    }

    fn prec2(a: &Self, b: &Self) -> u32 {
        a.prec().max(b.prec())
    }
}

impl fmt::Debug for ComplexAP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for ComplexAP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64_pair();
        write!(f, "{re:.15e}{}{:.15e}i", if im < 0.0 { "-" } else { "+" }, im.abs())
    }
}

macro_rules! cap_binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl<'a, 'b> $tr<&'b ComplexAP> for &'a ComplexAP {
            type Output = ComplexAP;
            fn $m(self, rhs: &'b ComplexAP) -> ComplexAP {
                ComplexAP(Complex::with_val(ComplexAP::prec2(self, rhs), &self.0 $op &rhs.0))
            }
        }
        impl $tr<ComplexAP> for ComplexAP {
            type Output = ComplexAP;
            fn $m(self, rhs: ComplexAP) -> ComplexAP {
                (&self).$m(&rhs)
            }
        }
        impl<'b> $tr<&'b ComplexAP> for ComplexAP {
            type Output = ComplexAP;
            fn $m(self, rhs: &'b ComplexAP) -> ComplexAP {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<ComplexAP> for &'a ComplexAP {
            type Output = ComplexAP;
            fn $m(self, rhs: ComplexAP) -> ComplexAP {
                self.$m(&rhs)
            }
        }
    };
}

cap_binop!(Add, add, +);
cap_binop!(Sub, sub, -);
cap_binop!(Mul, mul, *);
cap_binop!(Div, div, /);

impl Neg for ComplexAP {
    type Output = ComplexAP;
    fn neg(self) -> ComplexAP {
        ComplexAP(-self.0)
    }
}

impl Neg for &ComplexAP {
    type Output = ComplexAP;
    fn neg(self) -> ComplexAP {
        -self.clone()
    }
}
