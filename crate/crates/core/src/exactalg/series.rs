use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use super::poly::{write_term, Poly};
use super::rational::Rational;
use super::AlgebraError;

/// Power series `c_0 + c_1 t + ... + c_K t^K` modulo `t^{K+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    coeffs: Vec<Rational>,
}

impl TruncSeries {
    /// Pads or truncates `coeffs` to exactly `order + 1` entries.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        TruncSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncSeries::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        TruncSeries::new(vec![Rational::one()], order)
    }

    /// The series `t` (identity reparametrization).
    pub fn t(order: usize) -> Self {
        TruncSeries::new(vec![Rational::zero(), Rational::one()], order)
    }

    pub fn from_poly(p: &Poly, order: usize) -> Self {
        TruncSeries::new(p.coeffs().to_vec(), order)
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        TruncSeries::new(self.coeffs.clone(), order)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Product truncated at the smaller of the two orders.
    pub fn mul_trunc(&self, rhs: &Self) -> Self {
        let k = self.order().min(rhs.order());
        let mut out = vec![Rational::zero(); k + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(k + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(k + 1 - i) {
                out[i + j] += a * b;
            }
        }
        TruncSeries { coeffs: out }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = TruncSeries::one(self.order());
        for _ in 0..e {
            acc = acc.mul_trunc(self);
        }
        acc
    }

    /// Multiplicative inverse; requires an invertible constant term.
    pub fn reciprocal(&self) -> Result<Self, AlgebraError> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(AlgebraError::NotAUnit);
        }
        let inv0 = c0.recip();
        let k = self.order();
        let mut g = vec![Rational::zero(); k + 1];
        g[0] = inv0.clone();
        for n in 1..=k {
            let mut s = Rational::zero();
            for i in 1..=n {
                if !self.coeffs[i].is_zero() {
                    s += &self.coeffs[i] * &g[n - i];
                }
            }
            g[n] = -s * &inv0;
        }
        Ok(TruncSeries { coeffs: g })
    }

    /// `self^e` for an integer exponent (negative needs an invertible constant term).
    pub fn powi(&self, e: i64) -> Result<Self, AlgebraError> {
        if e >= 0 {
            Ok(self.pow(e as usize))
        } else {
            Ok(self.reciprocal()?.pow((-e) as usize))
        }
    }

    /// `self(inner(t))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self, AlgebraError> {
        if !inner.coeffs[0].is_zero() {
            return Err(AlgebraError::NonzeroConstantTerm);
        }
        let k = self.order().min(inner.order());
        let inner = inner.truncate(k);
        let mut acc = TruncSeries::zero(k);
        for c in self.coeffs.iter().take(k + 1).rev() {
            acc = acc.mul_trunc(&inner);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }
}

/// `h(f(t))` truncated at degree `order`. Both series must have zero constant term.
pub fn series_compose(f: &TruncSeries, h: &TruncSeries, order: usize) -> Result<TruncSeries, AlgebraError> {
    if !f.coeffs[0].is_zero() || !h.coeffs[0].is_zero() {
        return Err(AlgebraError::NonzeroConstantTerm);
    }
    if order > f.order() || order > h.order() {
        return Err(AlgebraError::OrderTooLarge { requested: order, available: f.order().min(h.order()) });
    }
    h.truncate(order).compose(&f.truncate(order))
}

pub fn series_reciprocal(f: &TruncSeries, order: usize) -> Result<TruncSeries, AlgebraError> {
    if order > f.order() {
        return Err(AlgebraError::OrderTooLarge { requested: order, available: f.order() });
    }
    f.truncate(order).reciprocal()
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                write_term(&mut out, c, "t", i as i64);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl Add<&TruncSeries> for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        let k = self.order().min(rhs.order());
        TruncSeries { coeffs: (0..=k).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect() }
    }
}

impl Sub<&TruncSeries> for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        let k = self.order().min(rhs.order());
        TruncSeries { coeffs: (0..=k).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect() }
    }
}

impl Mul<&TruncSeries> for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        self.mul_trunc(rhs)
    }
}
