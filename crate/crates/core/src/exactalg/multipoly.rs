use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{pow, Rational};

/// Exponent vector over `Y_1, Y_2, ...`; entry `i` is the power of `Y_{i+1}`.
/// Trailing zeros are always stripped so equal monomials compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    /// `Y_var` (1-based).
    pub fn var(var: usize) -> Self {
        assert!(var >= 1, "variables are 1-based");
        let mut e = vec![0; var];
        e[var - 1] = 1;
        Monomial(e)
    }

    /// Power of `Y_var` (1-based).
    pub fn exponent(&self, var: usize) -> u32 {
        self.0.get(var - 1).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Degree when `Y_q` has weight `q`.
    pub fn weighted_degree(&self) -> u32 {
        self.0.iter().enumerate().map(|(i, e)| (i as u32 + 1) * e).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        Monomial::new((0..n).map(|i| self.0.get(i).unwrap_or(&0) + other.0.get(i).unwrap_or(&0)).collect())
    }
}

/// Sparse polynomial in `Y_1, Y_2, ...` over ℚ. No zero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        MultiPoly::term(c, Monomial::one())
    }

    pub fn var(var: usize) -> Self {
        MultiPoly::term(Rational::one(), Monomial::var(var))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        MultiPoly::from_terms(self.terms.iter().map(|(m, v)| (m.clone(), v * c)))
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(MultiPoly::one(), |acc, _| &acc * self)
    }

    /// Highest variable index that occurs (0 for constants).
    pub fn num_vars(&self) -> usize {
        self.terms.keys().map(|m| m.0.len()).max().unwrap_or(0)
    }

    /// True if some monomial has a positive power of `Y_var`.
    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(var) > 0)
    }

    /// Evaluates with `Y_i = values[i-1]`; missing values count as zero.
    pub fn eval(&self, values: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        'terms: for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match values.get(i) {
                    Some(x) => v *= pow(x, e as usize),
                    None => continue 'terms,
                }
            }
            acc += v;
        }
        acc
    }

    /// Substitutes `Y_i -> weight(i) * Y_i`: each term is scaled by the product of powers.
    pub fn rescale_vars(&self, weight: impl Fn(usize) -> Rational) -> Self {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let mut v = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    v *= pow(&weight(i + 1), e as usize);
                }
            }
            (m.clone(), v)
        }))
    }

    /// Every monomial has weighted degree `deg` (`Y_q` of weight `q`).
    pub fn is_weighted_homogeneous(&self, deg: u32) -> bool {
        self.terms.keys().all(|m| m.weighted_degree() == deg)
    }

    pub fn is_homogeneous(&self, deg: u32) -> bool {
        self.terms.keys().all(|m| m.total_degree() == deg)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let mag = c.abs();
            if c.is_negative() {
                f.write_str(if first { "-" } else { " - " })?;
            } else if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let vars: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { format!("Y{}", i + 1) } else { format!("Y{}^{}", i + 1, e) })
                    .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::int;

    #[test]
    fn arithmetic_drops_cancelled_terms() {
        let y1 = MultiPoly::var(1);
        let y2 = MultiPoly::var(2);
        let p = &(&y1 + &y2) * &(&y1 - &y2);
        assert_eq!(p.len(), 2);
        assert_eq!(p.to_string(), "-Y2^2 + Y1^2");
        assert!((&p - &p).is_zero());
        assert_eq!(p.eval(&[int(3), int(1)]), int(8));
    }

    #[test]
    fn monomial_canonical_form() {
        assert_eq!(Monomial::new(vec![1, 0, 0]), Monomial::var(1));
        assert_eq!(Monomial::new(vec![2, 1]).weighted_degree(), 4);
    }
}
