use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Ring;

/// Integer polynomial in x, lowest degree first, with no trailing zeros (zero is empty).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly(pub Vec<BigInt>);

impl IntPoly {
    pub fn from_i64(v: &[i64]) -> Self {
        Self(v.iter().map(|&c| BigInt::from(c)).collect()).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.0.len().max(other.0.len());
        let get = |p: &IntPoly, i: usize| p.0.get(i).cloned().unwrap_or_default();
        IntPoly((0..n).map(|i| get(self, i) - get(other, i)).collect()).trimmed()
    }

    /// x·self − other
    fn x_times_minus(&self, other: &IntPoly) -> IntPoly {
        let mut v = vec![BigInt::zero(); (self.0.len() + 1).max(other.0.len())];
        for (i, c) in self.0.iter().enumerate() {
            v[i + 1] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
            v[i] -= c;
        }
        IntPoly(v).trimmed()
    }

    /// Horner evaluation in any ring.
    pub fn eval<R: Ring>(&self, x: &R) -> R {
        let mut acc = x.zero_like();
        for c in self.0.iter().rev() {
            acc = acc.rmul(x).radd(&x.from_int_like(c));
        }
        acc
    }
}

/// Chebyshev polynomial of the second kind, S_0 = 1, S_1 = x, S_{n+1} = xS_n − S_{n−1},
/// with S_{−1} = 0 and S_{−2} = −1.
pub fn cheb_s(n: i64) -> Result<IntPoly> {
    if n < -2 {
        return Err(Error::InvalidArgument(format!("cheb_s needs n >= -2, got {n}")));
    }
    let (mut prev, mut cur) = (IntPoly::from_i64(&[-1]), IntPoly::from_i64(&[])); // S_{-2}, S_{-1}
    if n == -2 {
        return Ok(prev);
    }
    for _ in -1..n {
        let next = cur.x_times_minus(&prev);
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// Chebyshev polynomial of the first kind, T_0 = 2, T_1 = x.
pub fn cheb_t(n: i64) -> Result<IntPoly> {
    if n < 0 {
        return Err(Error::InvalidArgument(format!("cheb_t needs n >= 0, got {n}")));
    }
    let (mut prev, mut cur) = (IntPoly::from_i64(&[2]), IntPoly::from_i64(&[0, 1]));
    if n == 0 {
        return Ok(prev);
    }
    for _ in 1..n {
        let next = cur.x_times_minus(&prev);
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}
