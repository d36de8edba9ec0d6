//! Representations of U_ħ(sl(2,C)) at t = e^{iπ/2r}, the duality map D, the
//! Clebsch–Gordan fusion ring and admissible colorings of trivalent graphs.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::linalg::{self, Mat, Ring};
use crate::rt_torus::eta;
use crate::scalar::{cheb_s, embed, qint, CycScalar};

fn check_k(k: u32, r: u32) -> Result<()> {
    if r < 2 || k < 1 || k > r - 1 {
        return Err(Error::InvalidArgument(format!("need 1 <= k <= r-1, got k = {k}, r = {r}")));
    }
    Ok(())
}

/// A k-dimensional representation on the weights j = −k_0..k_0. Weights are stored
/// doubled; basis index i corresponds to 2j = 2i − (k−1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QGroupRep {
    pub k: u32,
    pub r: u32,
    pub x: Mat<CycScalar>,
    pub y: Mat<CycScalar>,
    pub kmat: Mat<CycScalar>,
}

/// 2j for basis index i.
pub fn doubled_weight(i: usize, k: u32) -> i64 {
    2 * i as i64 - (k as i64 - 1)
}

fn index_of(w2: i64, k: u32) -> Option<usize> {
    let i = w2 + k as i64 - 1;
    if i < 0 || i % 2 != 0 || i / 2 >= k as i64 {
        None
    } else {
        Some((i / 2) as usize)
    }
}

/// Matrix with column j sending e_j to coeff(2j)·e_{j+shift}.
fn weight_matrix(k: u32, r: u32, shift2: i64, coeff: impl Fn(i64) -> CycScalar) -> Mat<CycScalar> {
    let n = k as usize;
    let mut m = Mat::zeros(n, n, &CycScalar::zero(r));
    for i in 0..n {
        let w = doubled_weight(i, k);
        if let Some(target) = index_of(w + shift2, k) {
            m.set(target, i, coeff(w));
        }
    }
    m
}

/// [a] for a given as a doubled half-integer 2a (always even here).
fn qint2(a2: i64, r: u32) -> CycScalar {
    debug_assert!(a2 % 2 == 0);
    qint(a2 / 2, r)
}

/// Xe_j = [k_0+j+1]e_{j+1}, Ye_j = [k_0−j+1]e_{j−1}, Ke_j = t^{2j}e_j.
pub fn irrep(k: u32, r: u32) -> Result<QGroupRep> {
    check_k(k, r)?;
    let k02 = k as i64 - 1;
    let x = weight_matrix(k, r, 2, |w| qint2(k02 + w + 2, r));
    let y = weight_matrix(k, r, -2, |w| qint2(k02 - w + 2, r));
    let kmat = weight_matrix(k, r, 0, |w| CycScalar::t_pow(r, w));
    Ok(QGroupRep { k, r, x, y, kmat })
}

/// Xe^j = −t²[k_0+j]e^{j−1}, Ye^j = −t^{−2}[k_0−j]e^{j+1}, Ke^j = t^{−2j}e^j.
pub fn dual_rep(k: u32, r: u32) -> Result<QGroupRep> {
    check_k(k, r)?;
    let k02 = k as i64 - 1;
    let x = weight_matrix(k, r, -2, |w| -(CycScalar::t_pow(r, 2) * qint2(k02 + w, r)));
    let y = weight_matrix(k, r, 2, |w| -(CycScalar::t_pow(r, -2) * qint2(k02 - w, r)));
    let kmat = weight_matrix(k, r, 0, |w| CycScalar::t_pow(r, -w));
    Ok(QGroupRep { k, r, x, y, kmat })
}

pub const RELATION_LABELS: [&str; 6] = ["KK^-1=Id", "KX=t^2XK", "KY=t^-2YK", "[X,Y]", "X^k=0,Y^k=0", "K^4r=Id"];

impl QGroupRep {
    /// Exact check of each defining relation, in the order of [`RELATION_LABELS`].
    pub fn relations(&self) -> Vec<bool> {
        let r = self.r;
        let n = self.k as usize;
        let one = CycScalar::one(r);
        let id = Mat::identity(n, &one);
        let kinv = match linalg::inverse(&self.kmat) {
            Some(m) => m,
            None => return vec![false; RELATION_LABELS.len()],
        };
        let t2 = CycScalar::t_pow(r, 2);
        let k2 = self.kmat.mul(&self.kmat);
        let km2 = kinv.mul(&kinv);
        let denom = (CycScalar::t_pow(r, 2) - CycScalar::t_pow(r, -2)).inv().expect("t^2 != t^-2");
        vec![
            self.kmat.mul(&kinv) == id,
            self.kmat.mul(&self.x) == self.x.mul(&self.kmat).scale(&t2),
            self.kmat.mul(&self.y) == self.y.mul(&self.kmat).scale(&t2.inv().unwrap()),
            self.x.commutator(&self.y) == k2.sub(&km2).scale(&denom),
            self.x.pow(n as u64).is_zero_matrix() && self.y.pow(n as u64).is_zero_matrix(),
            self.kmat.pow(4 * r as u64) == id,
        ]
    }
}

/// Square root ν of −t² used for (−t²)^j = ν^{2j}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// ν = i·t
    PlusIT,
    /// ν = −i·t
    MinusIT,
}

impl Branch {
    pub fn nu(self, r: u32) -> CycScalar {
        // i = t^r
        let v = CycScalar::t_pow(r, r as i64 + 1);
        match self {
            Branch::PlusIT => v,
            Branch::MinusIT => -v,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Branch::PlusIT => "nu=+i*t",
            Branch::MinusIT => "nu=-i*t",
        }
    }
}

fn qfact(n: i64, r: u32) -> CycScalar {
    (1..=n).fold(CycScalar::one(r), |acc, m| acc * qint(m, r))
}

/// D(e^j) = d_j·e_{−j} with d_j = ([k_0−j]![k_0+j]!/[2k_0]!)·ν^{2j}.
pub fn d_iso_matrix(k: u32, r: u32, branch: Branch) -> Result<Mat<CycScalar>> {
    check_k(k, r)?;
    let k02 = k as i64 - 1;
    let denom = qfact(k02, r).inv().ok_or_else(|| Error::Singular("[2k_0]! vanishes".into()))?;
    let nu = branch.nu(r);
    Ok(diag_flip(k, r, |w| qfact((k02 - w) / 2, r) * qfact((k02 + w) / 2, r) * denom.clone() * nu.pow(w)))
}

/// The displayed coefficient [k_0−j]⋯[1]/([2k_0]⋯[k_0−j+1]) = ([k_0−j]!)²/[2k_0]!, times ν^{2j}.
pub fn d_iso_matrix_printed(k: u32, r: u32, branch: Branch) -> Result<Mat<CycScalar>> {
    check_k(k, r)?;
    let k02 = k as i64 - 1;
    let denom = qfact(k02, r).inv().ok_or_else(|| Error::Singular("[2k_0]! vanishes".into()))?;
    let nu = branch.nu(r);
    Ok(diag_flip(k, r, |w| {
        let a = qfact((k02 - w) / 2, r);
        a.clone() * a * denom.clone() * nu.pow(w)
    }))
}

/// Matrix sending e^j (column of weight 2j = w) to coeff(w)·e_{−j}.
fn diag_flip(k: u32, r: u32, coeff: impl Fn(i64) -> CycScalar) -> Mat<CycScalar> {
    let n = k as usize;
    let mut m = Mat::zeros(n, n, &CycScalar::zero(r));
    for i in 0..n {
        let w = doubled_weight(i, k);
        m.set(n - 1 - i, i, coeff(w));
    }
    m
}

/// D·(dual action of g) = (standard action of g)·D for g ∈ {X, Y, K}.
pub fn intertwines(d: &Mat<CycScalar>, k: u32, r: u32) -> Result<bool> {
    let (std, dual) = (irrep(k, r)?, dual_rep(k, r)?);
    Ok(d.mul(&dual.x) == std.x.mul(d) && d.mul(&dual.y) == std.y.mul(d) && d.mul(&dual.kmat) == std.kmat.mul(d))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DIso {
    pub k: u32,
    pub r: u32,
    pub matrix: Mat<CycScalar>,
    /// First branch (in the order +i·t, −i·t) for which D intertwines.
    pub branch: Branch,
    /// Intertwining result for each branch, in the order +i·t, −i·t.
    pub branch_results: [(Branch, bool); 2],
    /// Same, for the displayed factorial coefficient.
    pub printed_results: [(Branch, bool); 2],
}

impl DIso {
    pub fn passing_branches(&self) -> usize {
        self.branch_results.iter().filter(|(_, ok)| *ok).count()
    }

    pub fn exactly_one_branch(&self) -> bool {
        self.passing_branches() == 1
    }
}

/// The duality isomorphism with both branch candidates tested.
pub fn d_iso(k: u32, r: u32) -> Result<DIso> {
    check_k(k, r)?;
    let branches = [Branch::PlusIT, Branch::MinusIT];
    let mut results = Vec::new();
    let mut printed = Vec::new();
    for b in branches {
        results.push((b, intertwines(&d_iso_matrix(k, r, b)?, k, r)?));
        printed.push((b, intertwines(&d_iso_matrix_printed(k, r, b)?, k, r)?));
    }
    let Some(&(branch, _)) = results.iter().find(|(_, ok)| *ok) else {
        return Err(Error::Verification(format!("D does not intertwine for either branch at k = {k}, r = {r}")));
    };
    Ok(DIso {
        k,
        r,
        matrix: d_iso_matrix(k, r, branch)?,
        branch,
        branch_results: [results[0], results[1]],
        printed_results: [printed[0], printed[1]],
    })
}

/// Element Σ c_n V^n of the fusion ring, n = 1..r−1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FusionElement {
    pub r: u32,
    pub coeffs: Vec<BigInt>,
}

impl FusionElement {
    pub fn zero(r: u32) -> Self {
        FusionElement { r, coeffs: vec![BigInt::from(0); r as usize - 1] }
    }

    /// V^n for 1 ≤ n ≤ r−1.
    pub fn basis(n: u32, r: u32) -> Result<Self> {
        if r < 2 || n < 1 || n > r - 1 {
            return Err(Error::InvalidArgument(format!("V^{n} is not a basis element at r = {r}")));
        }
        let mut e = Self::zero(r);
        e.coeffs[n as usize - 1] = BigInt::from(1);
        Ok(e)
    }

    pub fn unit(r: u32) -> Self {
        Self::basis(1, r).expect("r >= 2")
    }

    pub fn coeff(&self, n: u32) -> &BigInt {
        &self.coeffs[n as usize - 1]
    }

    pub fn coeffs_i64(&self) -> Vec<i64> {
        self.coeffs.iter().map(|c| i64::try_from(c).expect("fusion coefficient fits in i64")).collect()
    }
}

/// The p with V^m ⊗ V^n ⊇ V^p: m+n+p odd, |m−n|+1 ≤ p ≤ min(m+n−1, 2r−1−m−n).
pub fn fusion_channels(m: u32, n: u32, r: u32) -> Vec<u32> {
    let (m, n, r) = (m as i64, n as i64, r as i64);
    let hi = (m + n - 1).min(2 * r - 1 - m - n);
    ((m - n).abs() + 1..=hi).filter(|p| (m + n + p) % 2 == 1).map(|p| p as u32).collect()
}

pub fn fusion_mul(a: &FusionElement, b: &FusionElement) -> Result<FusionElement> {
    if a.r != b.r {
        return Err(Error::FieldMismatch(a.r, b.r));
    }
    Ok(a.rmul(b))
}

impl Ring for FusionElement {
    fn zero_like(&self) -> Self {
        Self::zero(self.r)
    }
    fn one_like(&self) -> Self {
        Self::unit(self.r)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c == &BigInt::from(0))
    }
    fn radd(&self, o: &Self) -> Self {
        FusionElement { r: self.r, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }
    fn rsub(&self, o: &Self) -> Self {
        FusionElement { r: self.r, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }
    fn rmul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.r);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a == &BigInt::from(0) {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b == &BigInt::from(0) {
                    continue;
                }
                for p in fusion_channels(i as u32 + 1, j as u32 + 1, self.r) {
                    out.coeffs[p as usize - 1] += a * b;
                }
            }
        }
        out
    }
    fn rneg(&self) -> Self {
        FusionElement { r: self.r, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
    fn from_int_like(&self, k: &BigInt) -> Self {
        let mut e = Self::zero(self.r);
        e.coeffs[0] = k.clone();
        e
    }
}

/// S_{n−1}(V²) evaluated in the fusion ring.
pub fn fusion_from_chebyshev(n: i64, r: u32) -> Result<FusionElement> {
    if n < 0 {
        return Err(Error::InvalidArgument(format!("n must be nonnegative, got {n}")));
    }
    if r < 3 {
        // V² does not exist; the ring is Z·V^1 and S_{n−1}(0) ∈ {0, ±1}
        let s = cheb_s(n - 1)?.0.first().cloned().unwrap_or_default();
        return Ok(FusionElement { r, coeffs: vec![s; r as usize - 1] });
    }
    Ok(cheb_s(n - 1)?.eval(&FusionElement::basis(2, r)?))
}

/// V^m·V^n computed in Z[x]/(S_{r−1}) with V^n = S_{n−1}(x), then read off in the basis S_0..S_{r−2}.
pub fn chebyshev_ring_product(m: u32, n: u32, r: u32) -> Result<FusionElement> {
    if r < 2 {
        return Err(Error::InvalidArgument("r must be at least 2".into()));
    }
    let poly = |d: i64| -> Result<Vec<BigInt>> { Ok(cheb_s(d)?.0) };
    let (a, b) = (poly(m as i64 - 1)?, poly(n as i64 - 1)?);
    let mut prod = vec![BigInt::from(0); a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] += x * y;
        }
    }
    // reduce modulo the monic S_{r−1}, then peel off monic S_d from the top
    let modulus = poly(r as i64 - 1)?;
    let dm = modulus.len() - 1;
    for d in (dm..prod.len()).rev() {
        let c = prod[d].clone();
        if c != BigInt::from(0) {
            for (i, s) in modulus.iter().enumerate() {
                prod[d - dm + i] -= &c * s;
            }
        }
    }
    let mut out = FusionElement::zero(r);
    for d in (0..dm.min(prod.len())).rev() {
        let c = prod[d].clone();
        if c != BigInt::from(0) {
            for (i, s) in poly(d as i64)?.iter().enumerate() {
                prod[i] -= &c * s;
            }
            out.coeffs[d] = c;
        }
    }
    Ok(out)
}

/// Matrix of multiplication by V^a in the basis V^1..V^{r−1}.
pub fn fusion_matrix(a: u32, r: u32) -> Result<Mat<BigInt>> {
    let va = FusionElement::basis(a, r)?;
    let n = r as usize - 1;
    let cols: Vec<FusionElement> = (1..r).map(|b| va.rmul(&FusionElement::basis(b, r).unwrap())).collect();
    Ok(Mat::from_fn(n, n, |i, j| cols[j].coeffs[i].clone()))
}

/// Whether ([1], …, [r−1]) is an eigenvector of N_a with eigenvalue [a].
pub fn quantum_dimension_eigen(a: u32, r: u32) -> Result<bool> {
    let na = fusion_matrix(a, r)?.map(|c| CycScalar::from_bigint(r, c));
    let v: Vec<CycScalar> = (1..r as i64).map(|j| qint(j, r)).collect();
    let lam = qint(a as i64, r);
    Ok(na.mul_vec(&v) == v.iter().map(|x| x.clone() * lam.clone()).collect::<Vec<_>>())
}

/// Connected graph with every vertex of degree 3 (a loop counts twice). With no vertices
/// the graph is a single circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivalentGraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl TrivalentGraph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let g = TrivalentGraph { vertices, edges };
        g.validate()?;
        Ok(g)
    }

    pub fn circle() -> Self {
        TrivalentGraph { vertices: 0, edges: vec![(0, 0)] }
    }

    pub fn theta() -> Self {
        TrivalentGraph { vertices: 2, edges: vec![(0, 1), (0, 1), (0, 1)] }
    }

    pub fn dumbbell() -> Self {
        TrivalentGraph { vertices: 2, edges: vec![(0, 0), (0, 1), (1, 1)] }
    }

    /// g loops joined in a chain by g−1 bridges.
    pub fn caterpillar(genus: u32) -> Result<Self> {
        match genus {
            0 => Err(Error::InvalidArgument("genus must be at least 1".into())),
            1 => Ok(Self::circle()),
            g => {
                let g = g as usize;
                // end loops at vertices 0 and 2g−3; interior loop i has vertices 2i−1, 2i
                let mut edges = vec![(0, 0)];
                let last = 2 * g - 3;
                for i in 1..g - 1 {
                    let (a, b) = (2 * i - 1, 2 * i);
                    edges.push((a - 1, a));
                    edges.push((a, b));
                    edges.push((a, b));
                }
                edges.push((last - 1, last));
                edges.push((last, last));
                Self::new(2 * g - 2, edges)
            }
        }
    }

    pub fn genus(&self) -> usize {
        if self.vertices == 0 {
            1
        } else {
            self.edges.len() + 1 - self.vertices
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.vertices == 0 {
            return if self.edges.len() == 1 {
                Ok(())
            } else {
                Err(Error::InvalidArgument("a graph without vertices must be a single circle".into()))
            };
        }
        let mut deg = vec![0usize; self.vertices];
        for &(a, b) in &self.edges {
            if a >= self.vertices || b >= self.vertices {
                return Err(Error::InvalidArgument(format!("edge ({a},{b}) has an endpoint out of range")));
            }
            deg[a] += 1;
            deg[b] += 1;
        }
        if let Some(v) = deg.iter().position(|&d| d != 3) {
            return Err(Error::InvalidArgument(format!("vertex {v} has degree {}, not 3", deg[v])));
        }
        let mut seen = vec![false; self.vertices];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidArgument("graph is not connected".into()));
        }
        Ok(())
    }
}

/// Edge index ↦ color in [1, r−1].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AdmissibleColoring {
    pub assignment: BTreeMap<usize, u32>,
}

impl AdmissibleColoring {
    pub fn colors(&self) -> Vec<u32> {
        self.assignment.values().copied().collect()
    }
}

/// m+n+p odd and |m−n|+1 ≤ p ≤ min(m+n−1, 2r−1−m−n).
pub fn admissible_triple(m: u32, n: u32, p: u32, r: u32) -> bool {
    fusion_channels(m, n, r).contains(&p)
}

pub fn admissible_colorings(g: &TrivalentGraph, r: u32) -> Result<(usize, Vec<AdmissibleColoring>)> {
    g.validate()?;
    if r < 2 {
        return Err(Error::InvalidArgument("r must be at least 2".into()));
    }
    let colors: Vec<u32> = (1..r).collect();
    if g.vertices == 0 {
        let list: Vec<_> = colors.iter().map(|&c| AdmissibleColoring { assignment: BTreeMap::from([(0, c)]) }).collect();
        return Ok((list.len(), list));
    }
    let incident: Vec<Vec<usize>> = (0..g.vertices)
        .map(|v| {
            let mut inc = Vec::new();
            for (e, &(a, b)) in g.edges.iter().enumerate() {
                if a == v {
                    inc.push(e);
                }
                if b == v {
                    inc.push(e);
                }
            }
            inc
        })
        .collect();
    // a vertex is checked once its last incident edge is assigned
    let mut check_at: Vec<Vec<usize>> = vec![Vec::new(); g.edges.len()];
    for (v, inc) in incident.iter().enumerate() {
        check_at[*inc.iter().max().unwrap()].push(v);
    }
    let ctx = Search { r, incident: &incident, check_at: &check_at, colors: &colors };
    let per_first: Vec<Vec<Vec<u32>>> = std::thread::scope(|s| {
        let handles: Vec<_> = colors
            .iter()
            .map(|&c| {
                let ctx = &ctx;
                s.spawn(move || {
                    let mut out = Vec::new();
                    let mut assign = vec![0u32; ctx.check_at.len()];
                    assign[0] = c;
                    if ctx.ok_at(0, &assign) {
                        ctx.extend(1, &mut assign, &mut out);
                    }
                    out
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("enumeration thread")).collect()
    });
    let list: Vec<AdmissibleColoring> = per_first
        .into_iter()
        .flatten()
        .map(|a| AdmissibleColoring { assignment: a.into_iter().enumerate().collect() })
        .collect();
    Ok((list.len(), list))
}

struct Search<'a> {
    r: u32,
    incident: &'a [Vec<usize>],
    check_at: &'a [Vec<usize>],
    colors: &'a [u32],
}

impl Search<'_> {
    fn ok_at(&self, e: usize, assign: &[u32]) -> bool {
        self.check_at[e].iter().all(|&v| {
            let c: Vec<u32> = self.incident[v].iter().map(|&x| assign[x]).collect();
            admissible_triple(c[0], c[1], c[2], self.r)
        })
    }

    fn extend(&self, e: usize, assign: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if e == assign.len() {
            out.push(assign.clone());
            return;
        }
        for &c in self.colors {
            assign[e] = c;
            if self.ok_at(e, assign) {
                self.extend(e + 1, assign, out);
            }
        }
        assign[e] = 0;
    }
}

/// Σ_{j=1}^{r−1} (η[j])^{2−2g}.
pub fn verlinde_numeric(genus: u32, r: u32, prec: u32) -> Result<Float> {
    if genus < 1 || r < 2 {
        return Err(Error::InvalidArgument(format!("need genus >= 1 and r >= 2, got {genus}, {r}")));
    }
    let e = eta(r, prec);
    let mut acc = Float::with_val(prec, 0);
    for j in 1..r as i64 {
        let qj = Float::with_val(prec, embed(&qint(j, r), prec).re());
        let base = Float::with_val(prec, &e * &qj);
        acc += base.pow(2 - 2 * genus as i32);
    }
    Ok(acc)
}
