//! Weyl quantization of the pillow case on the odd theta functions ζ_1, …, ζ_{r−1}.

use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, Mat};
use crate::rt_torus::{curve_matrix, wilson_matrix};
use crate::scalar::{cheb_s, CycScalar};

/// f(x,y) = 2cos 2π(px+qy); (p,q) and (−p,−q) give the same function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosObservable {
    pub p: i64,
    pub q: i64,
}

impl CosObservable {
    pub fn new(p: i64, q: i64) -> Self {
        CosObservable { p, q }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        2.0 * (2.0 * std::f64::consts::PI * (self.p as f64 * x + self.q as f64 * y)).cos()
    }
}

fn check_r(r: u32) -> Result<()> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!("r must be at least 2, got {r}")));
    }
    Ok(())
}

/// ζ_j = sign·ζ_{j′} with j′ ∈ [1, r−1], from ζ_{−j} = −ζ_j and ζ_{j+2r} = ζ_j.
pub fn zeta_fold(j: i64, r: u32) -> Option<(i64, usize)> {
    let n = 2 * r as i64;
    let m = j.rem_euclid(n);
    // ζ_m with m ∈ [0, 2r); ζ_{2r−m} = ζ_{−m} = −ζ_m
    let (sign, idx) = if m <= r as i64 { (1, m) } else { (-1, n - m) };
    if idx == 0 || idx == r as i64 {
        None
    } else {
        Some((sign, idx as usize))
    }
}

/// Op(2cos 2π(px+qy))ζ_j = t^{−pq}(t^{2qj}ζ_{j−p} + t^{−2qj}ζ_{j+p}).
pub fn weyl_cos_matrix(obs: CosObservable, r: u32) -> Result<Mat<CycScalar>> {
    check_r(r)?;
    let (p, q) = (obs.p, obs.q);
    let n = r as usize - 1;
    let mut m = Mat::zeros(n, n, &CycScalar::zero(r));
    for j in 1..r as i64 {
        for (target, e) in [(j - p, -p * q + 2 * q * j), (j + p, -p * q - 2 * q * j)] {
            if let Some((sign, k)) = zeta_fold(target, r) {
                let c = CycScalar::t_pow(r, e);
                let cur = m.get(k - 1, j as usize - 1).clone();
                m.set(k - 1, j as usize - 1, if sign > 0 { cur + c } else { cur - c });
            }
        }
    }
    Ok(m)
}

/// W_{γ,n} = S_{n−1}(2cos θ) = constant + Σ_m 2cos(mθ) over 0 < m ≤ n−1, m ≡ n−1 mod 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WilsonExpansion {
    pub constant: i64,
    pub terms: Vec<(CosObservable, i64)>,
}

impl WilsonExpansion {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.constant as f64 + self.terms.iter().map(|(o, c)| *c as f64 * o.eval(x, y)).sum::<f64>()
    }

    pub fn matrix(&self, r: u32) -> Result<Mat<CycScalar>> {
        let n = r as usize - 1;
        let mut m = Mat::identity(n, &CycScalar::one(r)).scale(&CycScalar::from_int(r, self.constant));
        for (o, c) in &self.terms {
            m = m.add(&weyl_cos_matrix(*o, r)?.scale(&CycScalar::from_int(r, *c)));
        }
        Ok(m)
    }
}

/// Expands the Wilson line of color n along the primitive curve (p,q) in the cosine basis.
pub fn wilson_decompose(p: i64, q: i64, n: i64) -> Result<WilsonExpansion> {
    if (p, q) == (0, 0) {
        return Err(Error::InvalidArgument("(0,0) is not a curve".into()));
    }
    if n < 0 {
        return Err(Error::InvalidArgument(format!("color must be nonnegative, got {n}")));
    }
    let mut terms = Vec::new();
    let mut m = n - 1;
    while m > 0 {
        terms.push((CosObservable::new(m * p, m * q), 1));
        m -= 2;
    }
    terms.reverse();
    Ok(WilsonExpansion { constant: if n > 0 && (n - 1) % 2 == 0 { 1 } else { 0 }, terms })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub checked: usize,
    pub mismatches: Vec<(i64, i64)>,
}

/// Compares the Weyl matrices with the skein representation for |p|, |q| ≤ bound.
pub fn equivalence_check(r: u32, bound: i64) -> Result<EquivalenceReport> {
    check_r(r)?;
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for p in -bound..=bound {
        for q in -bound..=bound {
            checked += 1;
            if weyl_cos_matrix(CosObservable::new(p, q), r)? != curve_matrix(p, q, r) {
                mismatches.push((p, q));
            }
        }
    }
    Ok(EquivalenceReport { checked, mismatches })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SvnReport {
    pub algebra_dim: usize,
    pub commutant_dim: usize,
    /// For each ζ_j, the number of rounds of applying X and Y needed to span the space,
    /// or None if ζ_j is not cyclic.
    pub cyclic_depth: Vec<Option<usize>>,
}

impl SvnReport {
    pub fn irreducible(&self, r: u32) -> bool {
        let n = r as usize - 1;
        self.algebra_dim == n * n && self.commutant_dim == 1 && self.cyclic_depth.iter().all(|d| d.is_some())
    }
}

fn cyclic_depth(gens: &[Mat<CycScalar>], start: Vec<CycScalar>) -> Option<usize> {
    let n = start.len();
    let mut span = Echelon::new(n);
    span.insert(&start);
    let mut frontier = vec![start];
    let mut depth = 0;
    while span.rank() < n {
        let mut next = Vec::new();
        for v in &frontier {
            for g in gens {
                let w = g.mul_vec(v);
                if span.insert(&w) {
                    next.push(w);
                }
            }
        }
        if next.is_empty() {
            return None;
        }
        frontier = next;
        depth += 1;
    }
    Some(depth)
}

/// Irreducibility of the action generated by Op(2cos 2πx) and Op(2cos 2πy).
pub fn svn_irreducibility(r: u32) -> Result<SvnReport> {
    check_r(r)?;
    let n = r as usize - 1;
    let x = weyl_cos_matrix(CosObservable::new(1, 0), r)?;
    let y = weyl_cos_matrix(CosObservable::new(0, 1), r)?;
    let gens = [x, y];
    let algebra_dim = linalg::generated_algebra(&gens).rank();
    let commutant_dim = linalg::commutant(&gens).len();
    let cyclic_depth = (0..n)
        .map(|i| {
            let e: Vec<CycScalar> = (0..n).map(|k| if k == i { CycScalar::one(r) } else { CycScalar::zero(r) }).collect();
            cyclic_depth(&gens, e)
        })
        .collect();
    Ok(SvnReport { algebra_dim, commutant_dim, cyclic_depth })
}

/// W_{γ,n} through the expansion, for comparison with the skein side.
pub fn wilson_via_cosines(p: i64, q: i64, n: i64, r: u32) -> Result<Mat<CycScalar>> {
    wilson_decompose(p, q, n)?.matrix(r)
}

/// S_{n−1} applied to Op(2cos 2π(px+qy)) directly.
pub fn wilson_via_chebyshev(p: i64, q: i64, n: i64, r: u32) -> Result<Mat<CycScalar>> {
    Ok(cheb_s(n - 1)?.eval(&weyl_cos_matrix(CosObservable::new(p, q), r)?))
}

/// Same as [`wilson_matrix`] from the skein side; re-exported for symmetric call sites.
pub fn wilson_skein(p: i64, q: i64, n: i64, r: u32) -> Result<Mat<CycScalar>> {
    wilson_matrix(p, q, n, r)
}
