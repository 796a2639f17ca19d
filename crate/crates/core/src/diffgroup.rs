//! Truncated formal reparametrizations `Diff_k`, their action on Laurent tails,
//! the cone-coordinate chart and the power map `nu_k`.
//!
//! Group law: `(f * h)(t) = h(f(t))`, truncated at degree `k`.
//!
//! Cone coordinates `(alpha; a_k, ..., a_1)` are related to polar parts by the
//! transport `rho = sum_l a_l alpha^l t^{-l}`. On `alpha != 0` this identifies the
//! cone action with the substitution action on tails; the same polynomial
//! expressions define it at `alpha = 0`, where it is trivial.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactalg::coeff_polys::{g_values, h_values};
use crate::exactalg::poly::write_term;
use crate::exactalg::rational::{int, pow, powi, rational_nth_root, Rational};
use crate::exactalg::{AlgebraError, TruncSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiffError {
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("order must be positive")]
    ZeroOrder,
    #[error("leading coefficient must be nonzero")]
    ZeroLeading,
    #[error("{value} has no rational {k}-th root; a witness exists only over an extension of Q")]
    NoRationalRoot { k: usize, value: Rational },
    #[error("chart violation: {0}")]
    Chart(String),
    #[error("root {root} does not satisfy root^{k} = {target}")]
    InvalidRoot { k: usize, root: Box<Rational>, target: Box<Rational> },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Principal part `a_1 t^{-1} + ... + a_k t^{-k}`; `k` is the length of the tail.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentTail {
    coeffs: Vec<Rational>,
}

impl LaurentTail {
    /// From `[a_1, ..., a_k]`.
    pub fn new(coeffs: Vec<Rational>) -> Result<Self, DiffError> {
        if coeffs.is_empty() {
            return Err(DiffError::ZeroOrder);
        }
        Ok(LaurentTail { coeffs })
    }

    /// From `[a_1, ..., a_k]`, requiring `a_k != 0`.
    pub fn of_order(coeffs: Vec<Rational>) -> Result<Self, DiffError> {
        let t = LaurentTail::new(coeffs)?;
        if !t.has_full_order() {
            return Err(DiffError::ZeroLeading);
        }
        Ok(t)
    }

    /// `t^{-k}`.
    pub fn pole(k: usize) -> Self {
        let mut c = vec![Rational::zero(); k];
        c[k - 1] = Rational::one();
        LaurentTail { coeffs: c }
    }

    pub fn k(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `t^{-l}`, `1 <= l`.
    pub fn a(&self, l: usize) -> Rational {
        self.coeffs.get(l - 1).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Largest `l` with `a_l != 0`.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero()).map(|i| i + 1)
    }

    pub fn has_full_order(&self) -> bool {
        self.order() == Some(self.k())
    }
}

impl fmt::Display for LaurentTail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if !c.is_zero() {
                write_term(&mut out, c, "t", -(i as i64 + 1));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// `alpha_0 t + alpha_1 t^2 + ... + alpha_{k-1} t^k` with `alpha_0 != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormalDiffeo {
    coeffs: Vec<Rational>,
}

impl FormalDiffeo {
    /// From `[alpha_0, ..., alpha_{k-1}]`.
    pub fn new(coeffs: Vec<Rational>) -> Result<Self, DiffError> {
        match coeffs.first() {
            None => Err(DiffError::ZeroOrder),
            Some(a0) if a0.is_zero() => Err(DiffError::ZeroLeading),
            Some(_) => Ok(FormalDiffeo { coeffs }),
        }
    }

    pub fn identity(k: usize) -> Self {
        FormalDiffeo::torus(k, Rational::one())
    }

    /// `theta_t(lambda) = lambda * t`.
    pub fn torus(k: usize, lambda: Rational) -> Self {
        assert!(k >= 1 && !lambda.is_zero());
        let mut c = vec![Rational::zero(); k];
        c[0] = lambda;
        FormalDiffeo { coeffs: c }
    }

    /// Reads a series with zero constant term as an element of `Diff_k`.
    pub fn from_series(s: &TruncSeries, k: usize) -> Result<Self, DiffError> {
        if !s.coeff(0).is_zero() {
            return Err(AlgebraError::NonzeroConstantTerm.into());
        }
        FormalDiffeo::new((1..=k).map(|i| s.coeff(i)).collect())
    }

    pub fn k(&self) -> usize {
        self.coeffs.len()
    }

    /// `alpha_i`, the coefficient of `t^{i+1}`.
    pub fn alpha(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> &Rational {
        &self.coeffs[0]
    }

    pub fn is_unipotent(&self) -> bool {
        self.coeffs[0].is_one()
    }

    /// The series of order `k` representing this element.
    pub fn as_series(&self) -> TruncSeries {
        let mut c = vec![Rational::zero()];
        c.extend(self.coeffs.iter().cloned());
        TruncSeries::new(c, self.k())
    }

    /// Splits `f = lambda * u(t)` with `u` unipotent.
    pub fn split_torus(&self) -> (Rational, FormalDiffeo) {
        let lambda = self.coeffs[0].clone();
        let inv = lambda.recip();
        let u = FormalDiffeo { coeffs: self.coeffs.iter().map(|c| c * &inv).collect() };
        (lambda, u)
    }

    /// Restriction to `Diff_k` for a smaller `k`.
    pub fn truncate(&self, k: usize) -> FormalDiffeo {
        assert!(k >= 1 && k <= self.k());
        FormalDiffeo { coeffs: self.coeffs[..k].to_vec() }
    }
}

impl fmt::Display for FormalDiffeo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.as_series().fmt(f)
    }
}

/// `(alpha; a_k, ..., a_1)` with `a_k != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConeCoord {
    pub alpha: Rational,
    /// `[a_1, ..., a_k]`
    coeffs: Vec<Rational>,
}

impl ConeCoord {
    /// From `alpha` and `[a_k, ..., a_1]` (top coefficient first).
    pub fn new(alpha: Rational, top_down: Vec<Rational>) -> Result<Self, DiffError> {
        if top_down.is_empty() {
            return Err(DiffError::ZeroOrder);
        }
        if top_down[0].is_zero() {
            return Err(DiffError::Chart("a_k must be nonzero".into()));
        }
        let mut coeffs = top_down;
        coeffs.reverse();
        Ok(ConeCoord { alpha, coeffs })
    }

    fn from_ascending(alpha: Rational, coeffs: Vec<Rational>) -> Self {
        debug_assert!(!coeffs.last().unwrap().is_zero());
        ConeCoord { alpha, coeffs }
    }

    pub fn k(&self) -> usize {
        self.coeffs.len()
    }

    /// `a_l`, `1 <= l <= k`.
    pub fn a(&self, l: usize) -> &Rational {
        &self.coeffs[l - 1]
    }

    /// `[a_k, ..., a_1]`.
    pub fn top_down(&self) -> Vec<Rational> {
        self.coeffs.iter().rev().cloned().collect()
    }

    /// The polar part `sum_l a_l alpha^l t^{-l}` this point stands for.
    pub fn polar_part(&self) -> LaurentTail {
        LaurentTail { coeffs: self.coeffs.iter().enumerate().map(|(i, a)| a * pow(&self.alpha, i + 1)).collect() }
    }

    /// Reads a tail back into the chart at a fixed invertible `alpha`.
    pub fn from_polar_part(alpha: Rational, tail: &LaurentTail) -> Result<Self, DiffError> {
        if alpha.is_zero() {
            return Err(DiffError::Chart("transport needs alpha != 0".into()));
        }
        if !tail.has_full_order() {
            return Err(DiffError::ZeroLeading);
        }
        let coeffs = tail.coeffs.iter().enumerate().map(|(i, b)| b * powi(&alpha, -(i as i64 + 1))).collect();
        Ok(ConeCoord { alpha, coeffs })
    }
}

impl fmt::Display for ConeCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.alpha, crate::exactalg::rational::format_rational_list(&self.top_down()))
    }
}

fn same_k(a: usize, b: usize) -> Result<(), DiffError> {
    if a == b {
        Ok(())
    } else {
        Err(DiffError::OrderMismatch { left: a, right: b })
    }
}

/// `f * h = h(f(t))`.
pub fn diff_compose(f: &FormalDiffeo, h: &FormalDiffeo) -> Result<FormalDiffeo, DiffError> {
    same_k(f.k(), h.k())?;
    let s = h.as_series().compose(&f.as_series())?;
    FormalDiffeo::from_series(&s, f.k())
}

/// Compositional inverse, two-sided in `Diff_k`.
pub fn diff_inverse(f: &FormalDiffeo) -> FormalDiffeo {
    let k = f.k();
    let fs = f.as_series();
    // powers f^m for m = 1..k
    let mut powers = vec![TruncSeries::one(k)];
    for m in 1..=k {
        powers.push(powers[m - 1].mul_trunc(&fs));
    }
    // g = sum g_m t^m with g(f(t)) = t, solved degree by degree
    let mut g = vec![Rational::zero(); k + 1];
    let a0_inv = f.leading().recip();
    g[1] = a0_inv.clone();
    for n in 2..=k {
        let mut s = Rational::zero();
        for (m, gm) in g.iter().enumerate().take(n).skip(1) {
            if !gm.is_zero() {
                s += gm * powers[m].coeff(n);
            }
        }
        g[n] = -s * pow(&a0_inv, n);
    }
    FormalDiffeo { coeffs: g[1..].to_vec() }
}

/// `f . rho = rho(f(t))_<`. `f` may live in a larger `Diff_K` (`K >= k`): the
/// principal part only sees `alpha_0..alpha_{k-1}`.
pub fn act_on_tail(f: &FormalDiffeo, rho: &LaurentTail) -> Result<LaurentTail, DiffError> {
    let k = rho.k();
    if f.k() < k {
        return Err(DiffError::OrderMismatch { left: f.k(), right: k });
    }
    let (lambda, u) = f.split_torus();
    // f(t) = lambda t w(t), w = 1 + (alpha_1/lambda) t + ...
    let w = TruncSeries::new(u.coeffs[..k].to_vec(), k - 1);
    let mut out = vec![Rational::zero(); k];
    for l in 1..=k {
        let a = rho.a(l);
        if a.is_zero() {
            continue;
        }
        let scale = a * powi(&lambda, -(l as i64));
        let wl = w.truncate(l - 1).powi(-(l as i64))?;
        // coefficient of t^{-m} receives [t^{l-m}] w^{-l}
        for m in 1..=l {
            let c = wl.coeff(l - m);
            if !c.is_zero() {
                out[m - 1] += &scale * c;
            }
        }
    }
    Ok(LaurentTail { coeffs: out })
}

/// Some `f` with `f . t^{-k} = rho`, when one exists over ℚ.
pub fn tail_orbit_witness(rho: &LaurentTail) -> Result<FormalDiffeo, DiffError> {
    if !rho.has_full_order() {
        return Err(DiffError::ZeroLeading);
    }
    let k = rho.k();
    let ak = rho.a(k);
    // alpha_0^{-k} = a_k
    let alpha0 =
        rational_nth_root(&ak.recip(), k as u32).ok_or_else(|| DiffError::NoRationalRoot { k, value: ak.recip() })?;
    // coefficient of t^{-(k-j)} is a_k H_{k,j}(beta), beta_i = alpha_i / alpha_0,
    // and H_{k,j} = -k beta_j + (terms in beta_1..beta_{j-1})
    let mut beta: Vec<Rational> = Vec::with_capacity(k - 1);
    let kk = int(k as i64);
    for j in 1..k {
        let mut trial = beta.clone();
        trial.push(Rational::zero());
        let lower = h_values(k as u32, &trial, j)[j].clone();
        let target = rho.a(k - j) / &ak;
        beta.push((lower - target) / &kk);
    }
    let mut coeffs = vec![alpha0.clone()];
    coeffs.extend(beta.iter().map(|b| b * &alpha0));
    FormalDiffeo::new(coeffs)
}

/// Rational torus elements fixing `t^{-k}`: the rational `k`-th roots of unity.
pub fn torus_stabilizer(k: usize) -> Vec<Rational> {
    if k.is_multiple_of(2) {
        vec![-Rational::one(), Rational::one()]
    } else {
        vec![Rational::one()]
    }
}

/// `Sigma_t`: `(x, lambda, u)` with `u` unipotent goes to
/// `(lambda^{-1} x; 1, H_{k,1}(u), ..., H_{k,k-1}(u))`.
pub fn sigma_t(x: &Rational, lambda: &Rational, u: &FormalDiffeo) -> Result<ConeCoord, DiffError> {
    if lambda.is_zero() {
        return Err(DiffError::ZeroLeading);
    }
    if !u.is_unipotent() {
        return Err(DiffError::Chart("sigma_t expects a unipotent part".into()));
    }
    let k = u.k();
    let hs = h_values(k as u32, &u.coeffs[1..], k - 1);
    // a_l = H_{k,k-l}
    let coeffs: Vec<Rational> = (1..=k).map(|l| hs[k - l].clone()).collect();
    Ok(ConeCoord::from_ascending(x / lambda, coeffs))
}

/// Inverse of [`sigma_t`] on the chart `a_k = 1`, for a chosen `lambda`.
pub fn sigma_t_inverse(c: &ConeCoord, lambda: &Rational) -> Result<(Rational, Rational, FormalDiffeo), DiffError> {
    if !c.a(c.k()).is_one() {
        return Err(DiffError::Chart("sigma_t chart requires a_k = 1".into()));
    }
    if lambda.is_zero() {
        return Err(DiffError::ZeroLeading);
    }
    let k = c.k();
    let kk = int(k as i64);
    let mut alphas: Vec<Rational> = Vec::with_capacity(k - 1);
    for j in 1..k {
        let mut trial = alphas.clone();
        trial.push(Rational::zero());
        let lower = h_values(k as u32, &trial, j)[j].clone();
        // a_{k-j} = -k alpha_j + lower
        alphas.push((lower - c.a(k - j)) / &kk);
    }
    let mut coeffs = vec![Rational::one()];
    coeffs.extend(alphas);
    Ok((&c.alpha * lambda, lambda.clone(), FormalDiffeo::new(coeffs)?))
}

/// Action of `Diff_k` on cone coordinates:
/// `alpha* = alpha / lambda`, `a*_l = sum_{m >= l} a_m (alpha/lambda)^{m-l} H_{m,m-l}(v)`
/// with `v_i = alpha_i / lambda`.
pub fn cone_action(g: &FormalDiffeo, c: &ConeCoord) -> Result<ConeCoord, DiffError> {
    same_k(g.k(), c.k())?;
    let k = c.k();
    let (lambda, u) = g.split_torus();
    let ratio = &c.alpha / &lambda;
    let v = &u.coeffs[1..];
    let mut out = vec![Rational::zero(); k];
    for m in 1..=k {
        let am = c.a(m);
        if am.is_zero() {
            continue;
        }
        let hs = h_values(m as u32, v, m - 1);
        for l in 1..=m {
            let h = &hs[m - l];
            if !h.is_zero() {
                out[l - 1] += am * pow(&ratio, m - l) * h;
            }
        }
    }
    Ok(ConeCoord::from_ascending(ratio, out))
}

/// `nu_k`: `b_j = G_{k,j}(a_1, ..., a_k)`, alpha unchanged.
pub fn nu_k(c: &ConeCoord) -> ConeCoord {
    let b = g_values(c.k(), &c.coeffs);
    ConeCoord::from_ascending(c.alpha.clone(), b)
}

/// Solves the triangular system `G_{k,j}(a) = b_j` with `a_k = root`.
pub fn nu_k_inverse(b: &ConeCoord, root: &Rational) -> Result<ConeCoord, DiffError> {
    let k = b.k();
    let bk = b.a(k);
    if pow(root, k) != *bk {
        return Err(DiffError::InvalidRoot { k, root: Box::new(root.clone()), target: Box::new(bk.clone()) });
    }
    // G_{k,j} = k a_k^{k-1} a_j + R_j(a_{j+1}, ..., a_k)
    let lead = int(k as i64) * pow(root, k - 1);
    let mut a = vec![Rational::zero(); k];
    a[k - 1] = root.clone();
    for j in (1..k).rev() {
        a[j - 1] = Rational::zero();
        let rest = g_values(k, &a)[j - 1].clone();
        a[j - 1] = (b.a(j) - rest) / &lead;
    }
    Ok(ConeCoord::from_ascending(b.alpha.clone(), a))
}
