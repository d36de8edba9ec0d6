//! High-precision complex matrices for the checks that involve square roots.

use rug::ops::Pow;
use rug::Float;

use crate::linalg::Mat;
use crate::scalar::{embed, ComplexAP, CycScalar};

pub type CMat = Mat<ComplexAP>;

pub fn embed_mat(m: &Mat<CycScalar>, prec: u32) -> CMat {
    m.map(|x| embed(x, prec))
}

pub fn conj_transpose(m: &CMat) -> CMat {
    Mat::from_fn(m.cols(), m.rows(), |i, j| m.get(j, i).conj())
}

pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    assert_eq!((a.rows(), a.cols()), (b.rows(), b.cols()));
    a.data().iter().zip(b.data()).map(|(x, y)| (x - y).abs_f64()).fold(0.0, f64::max)
}

pub fn max_abs(a: &CMat) -> f64 {
    a.data().iter().map(|x| x.abs_f64()).fold(0.0, f64::max)
}

/// max |U U^* − Id|
pub fn unitarity_defect(u: &CMat) -> f64 {
    let p = u.mul(&conj_transpose(u));
    let id = Mat::identity(u.rows(), u.get(0, 0));
    max_abs_diff(&p, &id)
}

/// Gauss–Jordan inverse with partial pivoting.
pub fn inverse(m: &CMat) -> Option<CMat> {
    let n = m.rows();
    let prec = m.get(0, 0).prec();
    let mut a: Vec<Vec<ComplexAP>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut inv: Vec<Vec<ComplexAP>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { ComplexAP::one(prec) } else { ComplexAP::zero(prec) }).collect())
        .collect();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().partial_cmp(&a[j][c].abs()).unwrap())?;
        if a[p][c].abs_f64() == 0.0 {
            return None;
        }
        a.swap(p, c);
        inv.swap(p, c);
        let pinv = a[c][c].recip();
        for j in 0..n {
            a[c][j] = &a[c][j] * &pinv;
            inv[c][j] = &inv[c][j] * &pinv;
        }
        for i in 0..n {
            if i == c {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..n {
                a[i][j] = &a[i][j] - &(&f * &a[c][j]);
                inv[i][j] = &inv[i][j] - &(&f * &inv[c][j]);
            }
        }
    }
    Some(Mat::from_vec(n, n, inv.concat()))
}

pub fn frobenius_inner(a: &CMat, b: &CMat) -> ComplexAP {
    let prec = a.get(0, 0).prec();
    a.data().iter().zip(b.data()).fold(ComplexAP::zero(prec), |acc, (x, y)| acc + x.conj() * y)
}

/// Best c with b ≈ c·a, and the residual max |b − c·a|.
pub fn proportionality(a: &CMat, b: &CMat) -> (ComplexAP, f64) {
    let c = frobenius_inner(a, b) / frobenius_inner(a, a);
    let ca = a.map(|x| x * &c);
    (c.clone(), max_abs_diff(b, &ca))
}

/// Scales m by a unit so that its Frobenius norm equals √n (a unitary has that norm).
pub fn normalize_to_unitary_scale(m: &CMat) -> CMat {
    let prec = m.get(0, 0).prec();
    let norm2 = frobenius_inner(m, m);
    let n = Float::with_val(prec, m.rows() as u32);
    let s = (n / Float::with_val(prec, norm2.re())).sqrt();
    m.map(|x| x.scale_f(&s))
}

pub fn to_f64_rows(m: &CMat) -> Vec<Vec<(f64, f64)>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_f64_pair()).collect()).collect()
}

/// norm^{−power/2}·exact, where norm is a positive real element of the field. Keeps the
/// algebraic part exact while square roots are applied only on evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledMat {
    pub exact: Mat<CycScalar>,
    pub norm: CycScalar,
    pub power: u32,
}

impl ScaledMat {
    pub fn unscaled(exact: Mat<CycScalar>) -> Self {
        let norm = CycScalar::one(exact.get(0, 0).r());
        ScaledMat { exact, norm, power: 0 }
    }

    pub fn mul(&self, o: &ScaledMat) -> ScaledMat {
        let norm = match (self.power, o.power) {
            (0, _) => o.norm.clone(),
            (_, 0) => self.norm.clone(),
            _ => {
                assert_eq!(self.norm, o.norm, "scaled matrices with different norms");
                self.norm.clone()
            }
        };
        ScaledMat { exact: self.exact.mul(&o.exact), norm, power: self.power + o.power }
    }

    pub fn scale_factor(&self, prec: u32) -> Float {
        let n = embed(&self.norm, prec + 16);
        let base = Float::with_val(prec + 16, n.re());
        let p = -(self.power as i32);
        let half = Float::with_val(prec + 16, p) / 2u32;
        Float::with_val(prec, base.pow(&half))
    }

    pub fn to_numeric(&self, prec: u32) -> CMat {
        let s = self.scale_factor(prec);
        embed_mat(&self.exact, prec).map(|x| x.scale_f(&s))
    }
}
