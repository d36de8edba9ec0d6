//! Arbitrary-precision theta series θ_j^τ(z) and odd theta functions ζ_j = θ_j − θ_{−j}.

use rug::Float;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::numeric::{self, CMat};
use crate::scalar::{default_prec_bits, embed, ComplexAP, CycScalar};

#[derive(Clone, Debug)]
pub struct ModularParam {
    tau: ComplexAP,
}

impl ModularParam {
    pub fn new(tau: ComplexAP) -> Result<Self> {
        if tau.im_f64() <= 0.0 {
            return Err(Error::InvalidArgument(format!("Im(tau) must be positive, got {}", tau.im_f64())));
        }
        Ok(ModularParam { tau })
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Result<Self> {
        Self::new(ComplexAP::new(prec, re, im))
    }

    pub fn tau(&self) -> &ComplexAP {
        &self.tau
    }

    /// τ + 1
    pub fn shifted(&self) -> Self {
        let one = ComplexAP::one(self.tau.prec());
        ModularParam { tau: &self.tau + &one }
    }

    /// −1/τ
    pub fn inverted(&self) -> Self {
        ModularParam { tau: -self.tau.recip() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeriesConfig {
    pub truncation_radius: u32,
    pub precision_bits: u32,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig { truncation_radius: 30, precision_bits: default_prec_bits() }
    }
}

impl SeriesConfig {
    pub fn new(truncation_radius: u32, precision_bits: u32) -> Result<Self> {
        if truncation_radius < 1 {
            return Err(Error::InvalidArgument("truncation radius must be at least 1".into()));
        }
        Ok(SeriesConfig { truncation_radius, precision_bits })
    }
}

/// A truncated series value together with a bound on the omitted terms.
#[derive(Clone, Debug)]
pub struct SeriesValue {
    pub value: ComplexAP,
    pub tail_bound: f64,
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 || n % 2 != 0 {
        return Err(Error::InvalidArgument(format!("N must be a positive even integer, got {n}")));
    }
    Ok(())
}

/// Bound on Σ_{|n|>M} |e^{2πiN[τ/2(j/N+n)² + z(j/N+n)]}|.
///
/// With s = Im τ and c = Im z / s, each term is e^{πNsc²}·e^{−πNs(a+c)²}, a = j/N + n, and
/// |a+c| ≥ d + 1 + m for the m-th omitted term on either side, d = M − |j/N| − |c|.
pub fn tail_bound(j: i64, n: u32, tau: &ModularParam, z: &ComplexAP, radius: u32) -> f64 {
    let s = tau.tau().im_f64();
    let c = z.im_f64() / s;
    let jn = j.rem_euclid(n as i64) as f64 / n as f64;
    let d1 = radius as f64 - jn - c.abs() + 1.0;
    if d1 <= 0.0 {
        return f64::INFINITY;
    }
    let k = std::f64::consts::PI * n as f64 * s;
    let geo = 1.0 - (-2.0 * k * d1).exp();
    2.0 * (k * c * c - k * d1 * d1).exp() / geo
}

/// θ_j^τ(z) = Σ_{|n|≤M} e^{2πiN[τ/2(j/N+n)² + z(j/N+n)]}.
pub fn theta_eval(j: i64, tau: &ModularParam, z: &ComplexAP, n: u32, cfg: &SeriesConfig) -> Result<SeriesValue> {
    check_n(n)?;
    let prec = cfg.precision_bits;
    let j = j.rem_euclid(n as i64);
    let tau_c = ComplexAP::from_inner(rug::Complex::with_val(prec, tau.tau().inner()));
    let z_c = ComplexAP::from_inner(rug::Complex::with_val(prec, z.inner()));
    // iπN
    let ipin = ComplexAP::from_floats(Float::with_val(prec, 0), ComplexAP::pi(prec) * n);
    let m = cfg.truncation_radius as i64;
    let mut acc = ComplexAP::zero(prec);
    for k in -m..=m {
        let a = Float::with_val(prec, k * n as i64 + j) / n;
        let a2 = Float::with_val(prec, &a * &a);
        let two_a = Float::with_val(prec, &a * 2u32);
        let w = tau_c.scale_f(&a2) + z_c.scale_f(&two_a);
        acc = acc + (&ipin * &w).exp();
    }
    Ok(SeriesValue { value: acc, tail_bound: tail_bound(j, n, tau, z, cfg.truncation_radius) })
}

/// ζ_j^τ(z) = θ_j^τ(z) − θ_{−j}^τ(z) with N = 2r.
pub fn zeta_eval(j: i64, tau: &ModularParam, z: &ComplexAP, r: u32, cfg: &SeriesConfig) -> Result<SeriesValue> {
    let n = 2 * r;
    let a = theta_eval(j, tau, z, n, cfg)?;
    let b = theta_eval(-j, tau, z, n, cfg)?;
    Ok(SeriesValue { value: a.value - b.value, tail_bound: a.tail_bound + b.tail_bound })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaBasis {
    /// θ_0, …, θ_{N−1}
    Theta(u32),
    /// ζ_1, …, ζ_{r−1}
    Zeta(u32),
}

impl ThetaBasis {
    pub fn dim(&self) -> usize {
        match *self {
            ThetaBasis::Theta(n) => n as usize,
            ThetaBasis::Zeta(r) => r as usize - 1,
        }
    }

    /// N of the underlying theta series.
    pub fn level(&self) -> u32 {
        match *self {
            ThetaBasis::Theta(n) => n,
            ThetaBasis::Zeta(r) => 2 * r,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ThetaVector {
    pub basis: ThetaBasis,
    pub coeffs: Vec<ComplexAP>,
}

impl ThetaVector {
    pub fn new(basis: ThetaBasis, coeffs: Vec<ComplexAP>) -> Result<Self> {
        if coeffs.len() != basis.dim() {
            return Err(Error::Dimension(format!("{} coefficients for a basis of dimension {}", coeffs.len(), basis.dim())));
        }
        Ok(ThetaVector { basis, coeffs })
    }

    pub fn from_exact(basis: ThetaBasis, coeffs: &[CycScalar], prec: u32) -> Result<Self> {
        Self::new(basis, coeffs.iter().map(|c| embed(c, prec)).collect())
    }

    pub fn basis_vector(basis: ThetaBasis, j: usize, prec: u32) -> Result<Self> {
        if j >= basis.dim() {
            return Err(Error::InvalidArgument(format!("index {j} out of range")));
        }
        let coeffs = (0..basis.dim()).map(|i| if i == j { ComplexAP::one(prec) } else { ComplexAP::zero(prec) }).collect();
        Self::new(basis, coeffs)
    }

    /// Coefficients in θ_0..θ_{N−1}.
    pub fn theta_coeffs(&self) -> Vec<ComplexAP> {
        match self.basis {
            ThetaBasis::Theta(_) => self.coeffs.clone(),
            ThetaBasis::Zeta(r) => {
                let n = 2 * r as usize;
                let prec = self.coeffs.first().map(|c| c.prec()).unwrap_or(64);
                let mut out = vec![ComplexAP::zero(prec); n];
                for (i, c) in self.coeffs.iter().enumerate() {
                    let j = i + 1;
                    out[j] = &out[j] + c;
                    out[n - j] = &out[n - j] - c;
                }
                out
            }
        }
    }

    pub fn eval(&self, tau: &ModularParam, z: &ComplexAP, cfg: &SeriesConfig) -> Result<ComplexAP> {
        let n = self.basis.level();
        let mut acc = ComplexAP::zero(cfg.precision_bits);
        for (j, c) in self.theta_coeffs().iter().enumerate() {
            if c.is_exact_zero() {
                continue;
            }
            acc = acc + c * &theta_eval(j as i64, tau, z, n, cfg)?.value;
        }
        Ok(acc)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TPhase {
    /// e^{2πij²/N}
    Double,
    /// e^{πij²/N}
    Single,
}

#[derive(Clone, Debug)]
pub struct TTransformReport {
    pub ratio: ComplexAP,
    pub residual_double: f64,
    pub residual_single: f64,
    /// The candidate within 1e-10 of the ratio; when both are (e.g. j = 0) the single one is listed.
    pub matches: Option<TPhase>,
    /// z actually used (shifted when θ_j^τ(z) is too small to divide by).
    pub z_used: ComplexAP,
}

/// θ_j^{τ+1}(z)/θ_j^τ(z) compared with e^{2πij²/N} and e^{πij²/N}.
pub fn t_transform_check(j: i64, tau: &ModularParam, z: &ComplexAP, n: u32, cfg: &SeriesConfig) -> Result<TTransformReport> {
    check_n(n)?;
    let prec = cfg.precision_bits;
    let shift = ComplexAP::new(prec, 0.1, 0.07);
    let mut zz = z.clone();
    for _ in 0..8 {
        let den = theta_eval(j, tau, &zz, n, cfg)?.value;
        if den.abs_f64() > 1e-20 {
            let num = theta_eval(j, &tau.shifted(), &zz, n, cfg)?.value;
            let ratio = num / den;
            let jj = j * j;
            let two_n = 2 * n as i64;
            let double = ComplexAP::exp_i_pi(prec, 2 * jj % two_n, n as i64);
            let single = ComplexAP::exp_i_pi(prec, jj % two_n, n as i64);
            let residual_double = (&ratio - &double).abs_f64();
            let residual_single = (&ratio - &single).abs_f64();
            let matches = if residual_single < 1e-10 {
                Some(TPhase::Single)
            } else if residual_double < 1e-10 {
                Some(TPhase::Double)
            } else {
                None
            };
            return Ok(TTransformReport { ratio, residual_double, residual_single, matches, z_used: zz });
        }
        zz = &zz + &shift;
    }
    Err(Error::Verification("theta_j vanishes at every shifted sample point".into()))
}

#[derive(Clone, Debug)]
pub struct STransformReport {
    /// |(−iτ/N)^{1/2}e^{z²/2τ}θ_j^{−1/τ}(z/τ) − (iτ/N)^{1/2}Σ_k e^{−2πikj/N}θ_k^τ(z)|
    pub printed_residual: f64,
    /// |θ_j^{−1/τ}(z/τ) − (−iτ/N)^{1/2}e^{πiNz²/τ}Σ_k e^{−2πikj/N}θ_k^τ(z)|
    pub residual: f64,
}

/// Both sides of the inversion law τ ↦ −1/τ, in the displayed and the Poisson-summation form.
pub fn s_transform_check(j: i64, tau: &ModularParam, z: &ComplexAP, n: u32, cfg: &SeriesConfig) -> Result<STransformReport> {
    check_n(n)?;
    let prec = cfg.precision_bits;
    let t = tau.tau();
    let nf = Float::with_val(prec, n);
    let i = ComplexAP::i(prec);
    let minus_i_tau_n = (-(&i * t)).scale_f(&nf.clone().recip()).sqrt();
    let i_tau_n = (&i * t).scale_f(&nf.recip()).sqrt();
    let mut fourier = ComplexAP::zero(prec);
    for k in 0..n as i64 {
        let ph = ComplexAP::exp_i_pi(prec, (-2 * k * j).rem_euclid(2 * n as i64), n as i64);
        fourier = fourier + ph * theta_eval(k, tau, z, n, cfg)?.value;
    }
    let z_over_tau = z / t;
    let modular = theta_eval(j, &tau.inverted(), &z_over_tau, n, cfg)?.value;
    let z2 = z * z;
    let printed_lhs = &minus_i_tau_n * &(&z2 / &(t * &ComplexAP::new(prec, 2.0, 0.0))).exp() * &modular;
    let printed_rhs = &i_tau_n * &fourier;
    let ipin = ComplexAP::from_floats(Float::with_val(prec, 0), ComplexAP::pi(prec) * n);
    let corrected_rhs = &minus_i_tau_n * &(&ipin * &(&z2 / t)).exp() * &fourier;
    Ok(STransformReport { printed_residual: (printed_lhs - printed_rhs).abs_f64(), residual: (modular - corrected_rhs).abs_f64() })
}

#[derive(Clone, Debug)]
pub struct PeriodicityReport {
    /// max over the samples of |θ_j(z+m+nτ) − e^{−πiN(τn²+2nz)}θ_j(z)|
    pub residual: f64,
    /// same with the factor e^{−2πiN(τn²+2nz)}
    pub printed_residual: f64,
}

/// Quasi-periodicity of θ_j at the lattice shifts (m, n) ∈ {−1,0,1}².
pub fn periodicity_check(j: i64, tau: &ModularParam, z: &ComplexAP, n: u32, cfg: &SeriesConfig) -> Result<PeriodicityReport> {
    check_n(n)?;
    let prec = cfg.precision_bits;
    let base = theta_eval(j, tau, z, n, cfg)?.value;
    let pin = ComplexAP::from_floats(Float::with_val(prec, 0), ComplexAP::pi(prec) * n);
    let (mut residual, mut printed) = (0.0f64, 0.0f64);
    for m in -1..=1i64 {
        for k in -1..=1i64 {
            let shift = ComplexAP::new(prec, m as f64, 0.0) + tau.tau().scale_f(&Float::with_val(prec, k));
            let shifted = theta_eval(j, tau, &(z + &shift), n, cfg)?.value;
            // τn² + 2nz
            let e = tau.tau().scale_f(&Float::with_val(prec, k * k)) + z.scale_f(&Float::with_val(prec, 2 * k));
            let f1 = (-(&pin * &e)).exp();
            let f2 = (-(&pin * &e.scale_f(&Float::with_val(prec, 2)))).exp();
            residual = residual.max((&shifted - &(&f1 * &base)).abs_f64());
            printed = printed.max((&shifted - &(&f2 * &base)).abs_f64());
        }
    }
    Ok(PeriodicityReport { residual, printed_residual: printed })
}

/// (−iN(τ−τ̄))^{1/2} ∫₀¹∫₀¹ f ḡ e^{iN(τ−τ̄)πy²} dx dy with z = x + τy, by the trapezoid rule
/// on a grid×grid periodic lattice.
pub fn inner_product_numeric(
    f: &ThetaVector,
    g: &ThetaVector,
    tau: &ModularParam,
    grid: u32,
    cfg: &SeriesConfig,
) -> Result<ComplexAP> {
    if f.basis != g.basis {
        return Err(Error::InvalidArgument("vectors are over different bases".into()));
    }
    if grid < 64 {
        return Err(Error::InvalidArgument(format!("grid must be at least 64, got {grid}")));
    }
    let prec = cfg.precision_bits;
    let n = f.basis.level();
    let (fc, gc) = (f.theta_coeffs(), g.theta_coeffs());
    let active: Vec<usize> = (0..n as usize).filter(|&j| !fc[j].is_exact_zero() || !gc[j].is_exact_zero()).collect();
    // −iN(τ−τ̄) = 2N·Im τ; weight e^{−2πN·Im τ·y²}
    let two_ns = Float::with_val(prec, tau.tau().im() * (2 * n));
    let pref = Float::with_val(prec, two_ns.sqrt_ref());
    let pi = ComplexAP::pi(prec);
    let ipin = ComplexAP::from_floats(Float::with_val(prec, 0), pi.clone() * n);
    // e^{2πiNxa} at x = i/grid is ω^{(Nn+j)i} with ω = e^{2πi/grid}
    let omega: Vec<ComplexAP> = (0..grid as i64).map(|k| ComplexAP::exp_i_pi(prec, 2 * k, grid as i64)).collect();
    let m = cfg.truncation_radius as i64;
    let row = |iy: u32| -> ComplexAP {
        let y = Float::with_val(prec, iy) / grid;
        let w = Float::with_val(prec, -(two_ns.clone() * &pi) * Float::with_val(prec, &y * &y)).exp();
        let ty = tau.tau().scale_f(&y);
        // per active j: (coefficient e^{iπN(τa² + 2τya)}, exponent of ω per unit x step)
        let terms: Vec<Vec<(ComplexAP, i64)>> = active
            .iter()
            .map(|&j| {
                (-m..=m)
                    .map(|k| {
                        let a = Float::with_val(prec, k * n as i64 + j as i64) / n;
                        let a2 = Float::with_val(prec, &a * &a);
                        let two_a = Float::with_val(prec, &a * 2u32);
                        let e = tau.tau().scale_f(&a2) + ty.scale_f(&two_a);
                        ((&ipin * &e).exp(), (k * n as i64 + j as i64).rem_euclid(grid as i64))
                    })
                    .collect()
            })
            .collect();
        let mut acc = ComplexAP::zero(prec);
        for ix in 0..grid as i64 {
            let (mut fv, mut gv) = (ComplexAP::zero(prec), ComplexAP::zero(prec));
            for (t, &j) in terms.iter().zip(&active) {
                let theta = t.iter().fold(ComplexAP::zero(prec), |s, (c, e)| s + c * &omega[((e * ix) % grid as i64) as usize]);
                fv = fv + &fc[j] * &theta;
                gv = gv + &gc[j] * &theta;
            }
            acc = acc + fv * gv.conj();
        }
        acc.scale_f(&w)
    };
    let workers = std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1).min(grid as usize);
    let partial: Vec<ComplexAP> = std::thread::scope(|sc| {
        let handles: Vec<_> = (0..workers)
            .map(|wk| {
                let row = &row;
                sc.spawn(move || {
                    (wk as u32..grid).step_by(workers).fold(ComplexAP::zero(prec), |s, iy| s + row(iy))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("quadrature thread")).collect()
    });
    let total = partial.into_iter().fold(ComplexAP::zero(prec), |s, v| s + v);
    let area = Float::with_val(prec, grid) * grid;
    Ok(total.scale_f(&Float::with_val(prec, pref / area)))
}

/// Gram matrix of a basis under [`inner_product_numeric`].
pub fn gram_matrix(basis: ThetaBasis, tau: &ModularParam, grid: u32, cfg: &SeriesConfig) -> Result<CMat> {
    let prec = cfg.precision_bits;
    let d = basis.dim();
    let vecs: Vec<ThetaVector> = (0..d).map(|j| ThetaVector::basis_vector(basis, j, prec)).collect::<Result<_>>()?;
    let mut m = Mat::zeros(d, d, &ComplexAP::zero(prec));
    for i in 0..d {
        for j in 0..d {
            m.set(i, j, inner_product_numeric(&vecs[i], &vecs[j], tau, grid, cfg)?);
        }
    }
    Ok(m)
}

/// ‖G‖_F·‖G^{−1}‖_F, an upper bound for the spectral condition number.
pub fn condition_number(m: &CMat) -> f64 {
    let fro = |a: &CMat| a.data().iter().map(|x| x.abs_f64().powi(2)).sum::<f64>().sqrt();
    match numeric::inverse(m) {
        Some(inv) => fro(m) * fro(&inv),
        None => f64::INFINITY,
    }
}

/// (Op f)(z) for Op = rep(p,q,k), realized on functions:
/// exp(pP)f(z) = e^{πiτp²/N + 2πipz}f(z + pτ/N), exp(qQ)f(z) = f(z − q/N), and
/// rep(p,q,k) = e^{πi(k−pq)/N}·exp(pP)·exp(qQ).
pub fn heisenberg_action_numeric(
    p: i64,
    q: i64,
    k: i64,
    f: &ThetaVector,
    tau: &ModularParam,
    z: &ComplexAP,
    cfg: &SeriesConfig,
) -> Result<ComplexAP> {
    let prec = cfg.precision_bits;
    let n = f.basis.level();
    let nf = Float::with_val(prec, n);
    let t = tau.tau();
    let z1 = z + &t.scale_f(&Float::with_val(prec, p as f64 / n as f64));
    let z2 = &z1 - &ComplexAP::from_floats(Float::with_val(prec, q) / &nf, Float::with_val(prec, 0));
    let val = f.eval(tau, &z2, cfg)?;
    let ipi = ComplexAP::from_floats(Float::with_val(prec, 0), ComplexAP::pi(prec));
    let e = t.scale_f(&Float::with_val(prec, (p * p) as f64 / n as f64)) + z.scale_f(&Float::with_val(prec, 2 * p));
    let translation = (&ipi * &e).exp();
    let central = ComplexAP::exp_i_pi(prec, (k - p * q).rem_euclid(2 * n as i64), n as i64);
    Ok(central * translation * val)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisenberg::{heis_reduce, schrodinger_matrix, FiniteHeisElt, HeisElt};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cfg(m: u32) -> SeriesConfig {
        SeriesConfig::new(m, 128).unwrap()
    }

    fn tau_i() -> ModularParam {
        ModularParam::from_f64(128, 0.0, 1.0).unwrap()
    }

    fn zc(re: f64, im: f64) -> ComplexAP {
        ComplexAP::new(128, re, im)
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(ModularParam::from_f64(64, 0.3, 0.0).is_err());
        assert!(theta_eval(0, &tau_i(), &zc(0.0, 0.0), 3, &cfg(5)).is_err());
        assert!(SeriesConfig::new(0, 64).is_err());
    }

    #[test]
    fn index_is_periodic_bitwise() {
        let z = zc(0.31, -0.12);
        for n in [2u32, 4, 6] {
            for j in 0..n as i64 {
                let a = theta_eval(j, &tau_i(), &z, n, &cfg(20)).unwrap().value;
                let b = theta_eval(j + n as i64, &tau_i(), &z, n, &cfg(20)).unwrap().value;
                let c = theta_eval(j - 3 * n as i64, &tau_i(), &z, n, &cfg(20)).unwrap().value;
                assert_eq!(a.inner(), b.inner());
                assert_eq!(a.inner(), c.inner());
            }
        }
    }

    #[test]
    fn quasi_periodicity() {
        let z = zc(0.3, 0.2);
        for j in 0..4 {
            let rep = periodicity_check(j, &tau_i(), &z, 4, &cfg(30)).unwrap();
            assert!(rep.residual < 1e-10, "{rep:?}");
            assert!(rep.printed_residual > 1.0);
        }
    }

    #[test]
    fn theta_zero_at_i_matches_high_precision() {
        let lo = theta_eval(0, &tau_i(), &zc(0.0, 0.0), 2, &cfg(40)).unwrap().value;
        let hi_cfg = SeriesConfig::new(80, 512).unwrap();
        let tau = ModularParam::from_f64(512, 0.0, 1.0).unwrap();
        let hi = theta_eval(0, &tau, &ComplexAP::zero(512), 2, &hi_cfg).unwrap().value;
        let hi_lo = ComplexAP::from_inner(rug::Complex::with_val(128, hi.inner()));
        assert!((lo - hi_lo).abs_f64() < 1e-35);
    }

    #[test]
    fn theta_zero_closed_form() {
        // θ_0^i(0) at N = 2 is ϑ_3(0, e^{−2π}) = Σ e^{−2πn²}
        let v = theta_eval(0, &tau_i(), &zc(0.0, 0.0), 2, &cfg(10)).unwrap().value;
        let direct: f64 = (-10..=10).map(|n: i32| (-2.0 * std::f64::consts::PI * (n * n) as f64).exp()).sum();
        assert!((v.re_f64() - direct).abs() < 1e-15 && v.im_f64().abs() < 1e-30);
    }

    #[test]
    fn zeta_identities() {
        let z = zc(0.17, 0.09);
        for r in 2..=5u32 {
            assert!(zeta_eval(0, &tau_i(), &z, r, &cfg(20)).unwrap().value.abs_f64() < 1e-30);
            for j in 1..r as i64 {
                let a = zeta_eval(r as i64 - j, &tau_i(), &z, r, &cfg(20)).unwrap().value;
                let b = zeta_eval(r as i64 + j, &tau_i(), &z, r, &cfg(20)).unwrap().value;
                assert!((a + b).abs_f64() < 1e-10);
                let plus = zeta_eval(j, &tau_i(), &z, r, &cfg(20)).unwrap().value;
                let minus = zeta_eval(j, &tau_i(), &(-z.clone()), r, &cfg(20)).unwrap().value;
                assert!((plus + minus).abs_f64() < 1e-10);
            }
        }
    }

    #[test]
    fn t_transform_phase() {
        let z = zc(0.3, 0.2);
        let rep = t_transform_check(0, &tau_i(), &z, 4, &cfg(30)).unwrap();
        assert!(rep.residual_double < 1e-10 && rep.residual_single < 1e-10);
        let rep = t_transform_check(1, &tau_i(), &z, 4, &cfg(30)).unwrap();
        assert_eq!(rep.matches, Some(TPhase::Single));
        assert!(rep.residual_double > 0.1);
        for n in [2u32, 4, 6, 8] {
            for j in 0..n as i64 {
                let a = t_transform_check(j, &tau_i(), &z, n, &cfg(30)).unwrap();
                let b = t_transform_check(n as i64 - j, &tau_i(), &z, n, &cfg(30)).unwrap();
                assert_eq!(a.matches, Some(TPhase::Single));
                assert!((a.ratio - b.ratio).abs_f64() < 1e-10);
            }
        }
    }

    #[test]
    fn s_transform() {
        for n in [2u32, 4] {
            for z in [zc(0.0, 0.0), zc(0.2, 0.1), zc(-0.3, 0.25)] {
                for j in 0..n as i64 {
                    let rep = s_transform_check(j, &tau_i(), &z, n, &cfg(30)).unwrap();
                    assert!(rep.residual < 1e-8, "N={n} j={j} {rep:?}");
                }
            }
        }
        let rep = s_transform_check(0, &tau_i(), &zc(0.0, 0.0), 2, &cfg(30)).unwrap();
        assert!(rep.printed_residual > 0.1);
        // off the imaginary axis as well
        let tau = ModularParam::from_f64(128, 0.4, 0.8).unwrap();
        assert!(s_transform_check(1, &tau, &zc(0.1, 0.05), 4, &cfg(30)).unwrap().residual < 1e-8);
    }

    #[test]
    fn s_transform_commutes_with_zeta() {
        // θ_j^{−1/τ}(z/τ) − θ_{−j}^{−1/τ}(z/τ) against the difference of Fourier sums
        let (n, z) = (6u32, zc(0.11, 0.07));
        for j in 1..3 {
            let a = s_transform_check(j, &tau_i(), &z, n, &cfg(30)).unwrap();
            let b = s_transform_check(-j, &tau_i(), &z, n, &cfg(30)).unwrap();
            assert!(a.residual + b.residual < 1e-8);
        }
    }

    #[test]
    fn tail_bound_is_honest() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let n = 2 * rng.gen_range(1..=4u32);
            let j = rng.gen_range(0..n as i64);
            let tau = ModularParam::from_f64(128, rng.gen_range(-0.5..0.5), rng.gen_range(0.3..1.5)).unwrap();
            let z = zc(rng.gen_range(-1.0..1.0), rng.gen_range(-0.3..0.3));
            let m = rng.gen_range(2..=5);
            let a = theta_eval(j, &tau, &z, n, &cfg(m)).unwrap();
            let b = theta_eval(j, &tau, &z, n, &cfg(2 * m)).unwrap();
            assert!((a.value - b.value).abs_f64() <= a.tail_bound, "bound {}", a.tail_bound);
        }
    }

    #[test]
    fn inner_products() {
        let c = SeriesConfig::new(8, 64).unwrap();
        let tau = ModularParam::from_f64(64, 0.0, 1.0).unwrap();
        let b = ThetaBasis::Theta(2);
        let t0 = ThetaVector::basis_vector(b, 0, 64).unwrap();
        let t1 = ThetaVector::basis_vector(b, 1, 64).unwrap();
        let ip01 = inner_product_numeric(&t0, &t1, &tau, 256, &c).unwrap();
        let ip00 = inner_product_numeric(&t0, &t0, &tau, 256, &c).unwrap();
        assert!(ip01.abs_f64() < 1e-2);
        assert!((ip00 - ComplexAP::one(64)).abs_f64() < 2e-2);
        let f = ThetaVector::new(b, vec![ComplexAP::new(64, 0.3, -0.2), ComplexAP::new(64, 1.0, 0.5)]).unwrap();
        let g = ThetaVector::new(b, vec![ComplexAP::new(64, -0.7, 0.1), ComplexAP::new(64, 0.2, 0.9)]).unwrap();
        let fg = inner_product_numeric(&f, &g, &tau, 64, &c).unwrap();
        let gf = inner_product_numeric(&g, &f, &tau, 64, &c).unwrap();
        assert!((fg - gf.conj()).abs_f64() < 1e-15);
        assert!(inner_product_numeric(&f, &g, &tau, 32, &c).is_err());
    }

    #[test]
    fn zeta_gram_is_well_conditioned() {
        let c = SeriesConfig::new(8, 64).unwrap();
        let tau = ModularParam::from_f64(64, 0.0, 1.0).unwrap();
        for r in [2u32, 3] {
            let g = gram_matrix(ThetaBasis::Zeta(r), &tau, 64, &c).unwrap();
            assert!(condition_number(&g) < 1e3);
            // ‖ζ_j‖² = 2
            assert!((g.get(0, 0).re_f64() - 2.0).abs() < 1e-6);
        }
    }

    #[test]
    fn schrodinger_matches_function_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = cfg(30);
        let tau = ModularParam::from_f64(128, 0.2, 0.9).unwrap();
        for n in [2u32, 4] {
            for _ in 0..12 {
                let (p, q, k) = (rng.gen_range(-5..=5), rng.gen_range(-5..=5), rng.gen_range(-8..=8));
                let coeffs: Vec<ComplexAP> = (0..n).map(|_| zc(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
                let f = ThetaVector::new(ThetaBasis::Theta(n), coeffs.clone()).unwrap();
                let z = zc(rng.gen_range(-0.5..0.5), rng.gen_range(-0.2..0.2));
                let lhs = heisenberg_action_numeric(p, q, k, &f, &tau, &z, &c).unwrap();
                let e = heis_reduce(&HeisElt::new(p, q, k), n).unwrap();
                let m = numeric::embed_mat(&schrodinger_matrix(&FiniteHeisElt { n, ..e }), 128);
                let image = ThetaVector::new(ThetaBasis::Theta(n), m.mul_vec(&coeffs)).unwrap();
                let rhs = image.eval(&tau, &z, &c).unwrap();
                assert!((lhs - rhs).abs_f64() < 1e-8, "N={n} ({p},{q},{k})");
            }
        }
    }
}
