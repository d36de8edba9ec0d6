//! Exact scalars: cyclotomic field elements, Laurent polynomials, Chebyshev polynomials,
//! and a high-precision complex type used for embeddings.

pub mod cheb;
pub mod complex_ap;
pub mod cyclo;
pub mod laurent;
pub mod rational;

pub use cheb::{cheb_s, cheb_t, IntPoly};
pub use complex_ap::{default_prec_bits, ComplexAP};
pub use cyclo::CycScalar;
pub use laurent::LaurentPoly;
pub use rational::{parse_rational, rat, Rational};

use rug::Float;

/// Quantized integer [n] = (t^{2n} − t^{−2n})/(t² − t^{−2}) = Σ_{i=0}^{n−1} t^{2(n−1−2i)} for n ≥ 1.
pub fn qint(n: i64, r: u32) -> CycScalar {
    let m = n.abs();
    let mut acc = CycScalar::zero(r);
    for i in 0..m {
        acc = acc + CycScalar::t_pow(r, 2 * (m - 1 - 2 * i));
    }
    if n < 0 {
        -acc
    } else {
        acc
    }
}

/// Σ_{k=1}^{r−1} [jk][k] t^{−k²}
pub fn gauss_sum(j: i64, r: u32) -> CycScalar {
    let mut acc = CycScalar::zero(r);
    for k in 1..r as i64 {
        acc = acc + qint(j * k, r) * qint(k, r) * CycScalar::t_pow(r, -k * k);
    }
    acc
}

/// Evaluates s at t = e^{iπ/2r}.
pub fn embed(s: &CycScalar, precision_bits: u32) -> ComplexAP {
    let work = precision_bits + 32;
    let r = s.r() as i64;
    let t = ComplexAP::exp_i_pi(work, 1, 2 * r);
    let (num, den) = s.num_den();
    let mut acc = ComplexAP::zero(work);
    for c in num.iter().rev() {
        acc = &acc * &t + ComplexAP::from_bigint(work, c);
    }
    let d = Float::with_val(work, complex_ap::bigint_to_integer(den));
    let v = acc.scale_f(&d.recip());
    ComplexAP::from_inner(rug::Complex::with_val(precision_bits, v.inner()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn qint_examples() {
        assert!(qint(1, 5).is_one());
        for r in 3..=8 {
            assert!(qint(r as i64, r).is_zero());
        }
        let q2 = qint(2, 5);
        assert_eq!(q2, CycScalar::t_pow(5, 2) + CycScalar::t_pow(5, -2));
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((embed(&q2, 128).re_f64() - golden).abs() < 1e-14);
    }

    #[test]
    fn qint_matches_quotient_definition() {
        for r in 2..=9u32 {
            let den = CycScalar::t_pow(r, 2) - CycScalar::t_pow(r, -2);
            for n in -12..=12 {
                let num = CycScalar::t_pow(r, 2 * n) - CycScalar::t_pow(r, -2 * n);
                assert_eq!(qint(n, r), &num / &den, "n={n} r={r}");
            }
        }
    }

    #[test]
    fn qint_sine_oracle() {
        for r in 2..=10u32 {
            for n in 0..3 * r as i64 {
                let x = std::f64::consts::PI / r as f64;
                let expect = (n as f64 * x).sin() / x.sin();
                assert!((embed(&qint(n, r), 96).re_f64() - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn quantum_chebyshev_identity() {
        for r in 2..=12u32 {
            for n in 1..=2 * r as i64 {
                let lhs = qint(n + 1, r) * qint(n - 1, r);
                let rhs = qint(n, r) * qint(n, r) - CycScalar::one(r);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn embed_examples() {
        let one = embed(&qint(1, 5), 128);
        assert!((one.re_f64() - 1.0).abs() < 1e-30 && one.im_f64().abs() < 1e-30);
        let t = embed(&CycScalar::t_pow(3, 1), 128);
        let a = std::f64::consts::PI / 6.0;
        assert!((t.re_f64() - a.cos()).abs() < 1e-15 && (t.im_f64() - a.sin()).abs() < 1e-15);
        assert!((embed(&qint(2, 3), 128).re_f64() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn embed_error_bound_high_precision() {
        // [2] at r = 5 is the golden ratio; compare at 300 bits against an independent sqrt
        let prec = 300;
        let v = embed(&qint(2, 5), prec);
        let five = Float::with_val(prec, 5);
        let golden = (five.sqrt() + 1u32) / 2u32;
        let err = Float::with_val(prec, v.re() - &golden).abs();
        assert!(err < Float::with_val(prec, Float::i_exp(1, 8 - prec as i32)) * 3u32);
    }

    #[test]
    fn gauss_sum_examples() {
        for r in 2..=12 {
            assert!(gauss_sum(0, r).is_zero());
        }
        let r = 5;
        let base = gauss_sum(1, r) / (qint(1, r) * CycScalar::t_pow(r, 1));
        for j in 2..=4 {
            let ratio = gauss_sum(j, r) / (qint(j, r) * CycScalar::t_pow(r, j * j));
            assert_eq!(ratio, base);
        }
    }

    #[test]
    fn rational_embedding() {
        let half = CycScalar::from_rational(4, &rat(1, 2));
        assert!((embed(&half, 64).re_f64() - 0.5).abs() < 1e-18);
        assert!(!half.is_one() && (half.clone() + half).is_one());
        let _ = Rational::one();
    }
}
