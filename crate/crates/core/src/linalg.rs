//! Dense matrices over generic rings and exact elimination over fields.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{ComplexAP, CycScalar, LaurentPoly};

/// Minimal ring interface. Constants are produced from an existing element so that
/// context such as the cyclotomic order or precision carries over.
pub trait Ring: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn radd(&self, o: &Self) -> Self;
    fn rsub(&self, o: &Self) -> Self;
    fn rmul(&self, o: &Self) -> Self;
    fn rneg(&self) -> Self;
    fn from_int_like(&self, k: &BigInt) -> Self;
}

/// A ring whose zero test is exact and whose nonzero elements are invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;
}

impl Ring for CycScalar {
    fn zero_like(&self) -> Self {
        CycScalar::zero(self.r())
    }
    fn one_like(&self) -> Self {
        CycScalar::one(self.r())
    }
    fn is_zero(&self) -> bool {
        CycScalar::is_zero(self)
    }
    fn radd(&self, o: &Self) -> Self {
        self + o
    }
    fn rsub(&self, o: &Self) -> Self {
        self - o
    }
    fn rmul(&self, o: &Self) -> Self {
        self * o
    }
    fn rneg(&self) -> Self {
        -self
    }
    fn from_int_like(&self, k: &BigInt) -> Self {
        CycScalar::from_bigint(self.r(), k)
    }
}

impl Field for CycScalar {
    fn inv(&self) -> Option<Self> {
        CycScalar::inv(self)
    }
}

impl Ring for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn radd(&self, o: &Self) -> Self {
        self + o
    }
    fn rsub(&self, o: &Self) -> Self {
        self - o
    }
    fn rmul(&self, o: &Self) -> Self {
        self * o
    }
    fn rneg(&self) -> Self {
        -self
    }
    fn from_int_like(&self, k: &BigInt) -> Self {
        BigRational::from_integer(k.clone())
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Ring for LaurentPoly {
    fn zero_like(&self) -> Self {
        LaurentPoly::zero()
    }
    fn one_like(&self) -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn radd(&self, o: &Self) -> Self {
        self + o
    }
    fn rsub(&self, o: &Self) -> Self {
        self - o
    }
    fn rmul(&self, o: &Self) -> Self {
        self * o
    }
    fn rneg(&self) -> Self {
        -self
    }
    fn from_int_like(&self, k: &BigInt) -> Self {
        LaurentPoly::constant(BigRational::from_integer(k.clone()))
    }
}

impl Ring for ComplexAP {
    fn zero_like(&self) -> Self {
        ComplexAP::zero(self.prec())
    }
    fn one_like(&self) -> Self {
        ComplexAP::one(self.prec())
    }
    fn is_zero(&self) -> bool {
        self.is_exact_zero()
    }
    fn radd(&self, o: &Self) -> Self {
        self + o
    }
    fn rsub(&self, o: &Self) -> Self {
        self - o
    }
    fn rmul(&self, o: &Self) -> Self {
        self * o
    }
    fn rneg(&self) -> Self {
        -self
    }
    fn from_int_like(&self, k: &BigInt) -> Self {
        ComplexAP::from_bigint(self.prec(), k)
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Display> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.data[i * self.cols + j].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<T> Mat<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Mat { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<T: Clone> Mat<T> {
    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }
}

impl<T: Ring> Mat<T> {
    pub fn zeros(rows: usize, cols: usize, sample: &T) -> Self {
        let z = sample.zero_like();
        Mat::from_fn(rows, cols, |_, _| z.clone())
    }

    pub fn identity(n: usize, sample: &T) -> Self {
        let (z, o) = (sample.zero_like(), sample.one_like());
        Mat::from_fn(n, n, |i, j| if i == j { o.clone() } else { z.clone() })
    }

    pub fn diag(entries: &[T]) -> Self {
        let z = entries[0].zero_like();
        Mat::from_fn(entries.len(), entries.len(), |i, j| if i == j { entries[i].clone() } else { z.clone() })
    }

    fn sample(&self) -> &T {
        &self.data[0]
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix product dimensions");
        let z = self.sample().zero_like();
        let mut out = vec![z; self.rows * o.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let idx = i * o.cols + j;
                        out[idx] = out[idx].radd(&a.rmul(b));
                    }
                }
            }
        }
        Mat { rows: self.rows, cols: o.cols, data: out }
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = self.sample().zero_like();
                for (k, x) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.radd(&a.rmul(x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.radd(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.rsub(b)).collect() }
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|a| a.rmul(c))
    }

    pub fn neg(&self) -> Self {
        self.map(|a| a.rneg())
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Mat::identity(self.rows, self.sample());
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    /// Scalar c with self = c·Id, if any.
    pub fn as_scalar_multiple_of_identity(&self) -> Option<T>
    where
        T: PartialEq,
    {
        if !self.is_square() {
            return None;
        }
        let c = self.get(0, 0).clone();
        let z = c.zero_like();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want = if i == j { &c } else { &z };
                if self.get(i, j) != want {
                    return None;
                }
            }
        }
        Some(c)
    }
}

/// Square matrices form a ring (dimension taken from the sample).
impl<T: Ring> Ring for Mat<T> {
    fn zero_like(&self) -> Self {
        Mat::zeros(self.rows, self.cols, self.sample())
    }
    fn one_like(&self) -> Self {
        Mat::identity(self.rows, self.sample())
    }
    fn is_zero(&self) -> bool {
        self.is_zero_matrix()
    }
    fn radd(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn rsub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn rmul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn rneg(&self) -> Self {
        self.neg()
    }
    fn from_int_like(&self, k: &BigInt) -> Self {
        Mat::identity(self.rows, self.sample()).scale(&self.sample().from_int_like(k))
    }
}

/// Incrementally built row-echelon basis of a subspace of T^n.
#[derive(Clone, Debug)]
pub struct Echelon<T> {
    n: usize,
    /// (pivot column, row normalized to 1 at the pivot)
    rows: Vec<(usize, Vec<T>)>,
}

impl<T: Field> Echelon<T> {
    pub fn new(n: usize) -> Self {
        Echelon { n, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    /// Reduces v against the basis.
    pub fn reduce(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.n);
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    v[j] = v[j].rsub(&f.rmul(x));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds v; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[T]) -> bool {
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().expect("nonzero pivot");
        let w: Vec<T> = w.iter().map(|x| if x.is_zero() { x.clone() } else { x.rmul(&inv) }).collect();
        // keep existing rows reduced at the new pivot so reduce() stays a single pass
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (j, x) in w.iter().enumerate() {
                if !x.is_zero() {
                    row[j] = row[j].rsub(&f.rmul(x));
                }
            }
        }
        self.rows.push((p, w));
        true
    }
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref<T: Field>(m: &Mat<T>) -> (Mat<T>, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = a.get(r, c).inv().expect("nonzero pivot");
        let support: Vec<usize> = (c..cols).filter(|&j| !a.get(r, j).is_zero()).collect();
        for &j in &support {
            let v = a.get(r, j).rmul(&inv);
            a.set(r, j, v);
        }
        for i in 0..rows {
            if i == r || a.get(i, c).is_zero() {
                continue;
            }
            let f = a.get(i, c).clone();
            for &j in &support {
                let v = a.get(i, j).rsub(&f.rmul(a.get(r, j)));
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank<T: Field>(m: &Mat<T>) -> usize {
    rref(m).1.len()
}

/// Basis of {x : m·x = 0}.
pub fn nullspace<T: Field>(m: &Mat<T>) -> Vec<Vec<T>> {
    let (a, pivots) = rref(m);
    let sample = &a.data[0];
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![sample.zero_like(); a.cols];
            x[f] = sample.one_like();
            for (i, &p) in pivots.iter().enumerate() {
                x[p] = a.get(i, f).rneg();
            }
            x
        })
        .collect()
}

/// Solves m·x = b; None when inconsistent. Free variables are set to zero.
pub fn solve<T: Field>(m: &Mat<T>, b: &[T]) -> Option<Vec<T>> {
    assert_eq!(m.rows, b.len());
    let aug = Mat::from_fn(m.rows, m.cols + 1, |i, j| if j < m.cols { m.get(i, j).clone() } else { b[i].clone() });
    let (a, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let sample = &m.data[0];
    let mut x = vec![sample.zero_like(); m.cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = a.get(i, m.cols).clone();
    }
    Some(x)
}

pub fn det<T: Field>(m: &Mat<T>) -> Result<T> {
    if !m.is_square() {
        return Err(Error::Dimension("determinant of a non-square matrix".into()));
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut acc = m.data[0].one_like();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
            return Ok(acc.zero_like());
        };
        if p != c {
            for j in 0..n {
                a.data.swap(p * n + j, c * n + j);
            }
            acc = acc.rneg();
        }
        let piv = a.get(c, c).clone();
        acc = acc.rmul(&piv);
        let inv = piv.inv().expect("nonzero pivot");
        for i in c + 1..n {
            if a.get(i, c).is_zero() {
                continue;
            }
            let f = a.get(i, c).rmul(&inv);
            for j in c..n {
                let v = a.get(i, j).rsub(&f.rmul(a.get(c, j)));
                a.set(i, j, v);
            }
        }
    }
    Ok(acc)
}

pub fn inverse<T: Field>(m: &Mat<T>) -> Option<Mat<T>> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows;
    let one = m.data[0].one_like();
    let zero = one.zero_like();
    let aug = Mat::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m.get(i, j).clone()
        } else if j - n == i {
            one.clone()
        } else {
            zero.clone()
        }
    });
    let (a, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(Mat::from_fn(n, n, |i, j| a.get(i, n + j).clone()))
}

/// Dimension of the span of a family of equally sized matrices.
pub fn span_dimension<T: Field>(mats: &[Mat<T>]) -> usize {
    let Some(first) = mats.first() else { return 0 };
    let mut e = Echelon::new(first.rows * first.cols);
    for m in mats {
        e.insert(m.data());
    }
    e.rank()
}

/// Basis of {M : A·M = M·B for every pair (A, B)}; A is m×m and B is n×n, M is m×n.
pub fn intertwiners<T: Field>(pairs: &[(Mat<T>, Mat<T>)]) -> Vec<Mat<T>> {
    let (m, n) = (pairs[0].0.rows, pairs[0].1.rows);
    let sample = pairs[0].0.data[0].clone();
    let zero = sample.zero_like();
    // unknown M_{ij} ↦ i*n + j; one equation per entry (i, j) of A·M − M·B
    let mut eqs = Vec::new();
    for (a, b) in pairs {
        for i in 0..m {
            for j in 0..n {
                let mut row = vec![zero.clone(); m * n];
                for k in 0..m {
                    let aik = a.get(i, k);
                    if !aik.is_zero() {
                        row[k * n + j] = row[k * n + j].radd(aik);
                    }
                }
                for k in 0..n {
                    let bkj = b.get(k, j);
                    if !bkj.is_zero() {
                        row[i * n + k] = row[i * n + k].rsub(bkj);
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    eqs.push(row);
                }
            }
        }
    }
    if eqs.is_empty() {
        return (0..m * n)
            .map(|p| {
                let mut v = vec![zero.clone(); m * n];
                v[p] = sample.one_like();
                Mat::from_vec(m, n, v)
            })
            .collect();
    }
    let rows = eqs.len();
    let sys = Mat::from_vec(rows, m * n, eqs.concat());
    nullspace(&sys).into_iter().map(|v| Mat::from_vec(m, n, v)).collect()
}

/// Basis of the commutant {X : XA = AX for all A in gens}.
pub fn commutant<T: Field>(gens: &[Mat<T>]) -> Vec<Mat<T>> {
    let pairs: Vec<_> = gens.iter().map(|g| (g.clone(), g.clone())).collect();
    intertwiners(&pairs)
}

/// Dimension of the unital algebra generated by square matrices.
pub fn generated_algebra<T: Field>(gens: &[Mat<T>]) -> Echelon<T> {
    let n = gens[0].rows;
    let sample = gens[0].data[0].clone();
    let mut e = Echelon::new(n * n);
    let id = Mat::identity(n, &sample);
    e.insert(id.data());
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for g in gens {
                let p = g.mul(w);
                if e.insert(p.data()) {
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    e
}
