use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::AlgebraError;

/// Exact rational scalar. Always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` reduced. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses the canonical `p/q` (or bare `p`) text form.
pub fn parse_rational(s: &str) -> Result<Rational, AlgebraError> {
    let s = s.trim();
    let bad = || AlgebraError::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(AlgebraError::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
    }
}

pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>, AlgebraError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_rational).collect()
}

pub fn format_rational_list(xs: &[Rational]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn integer_nth_root(n: &BigInt, k: u32) -> Option<BigInt> {
    let root = n.nth_root(k);
    if num_traits::pow(root.clone(), k as usize) == *n {
        Some(root)
    } else {
        None
    }
}

/// Exact `k`-th root in ℚ if one exists. For even `k` the positive root is returned.
pub fn rational_nth_root(x: &Rational, k: u32) -> Option<Rational> {
    assert!(k >= 1);
    if x.is_zero() {
        return Some(Rational::zero());
    }
    if x.is_negative() {
        if k.is_multiple_of(2) {
            return None;
        }
        return rational_nth_root(&-x, k).map(|r| -r);
    }
    let p = integer_nth_root(x.numer(), k)?;
    let q = integer_nth_root(x.denom(), k)?;
    Some(Rational::new(p, q))
}

pub fn pow(x: &Rational, e: usize) -> Rational {
    num_traits::pow(x.clone(), e)
}

/// `x^e` for a possibly negative exponent; `x` must be nonzero when `e < 0`.
pub fn powi(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        pow(x, e as usize)
    } else {
        pow(&x.recip(), (-e) as usize)
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `(2m-1)!!` with the convention `(-1)!! = 1`.
pub fn double_factorial_odd(m: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut i = 2 * m - 1;
    while i > 1 {
        acc *= BigInt::from(i);
        i -= 2;
    }
    acc
}

/// Least common multiple of the denominators.
pub fn denominator_lcm<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_text_form() {
        assert_eq!(rat(6, -4).to_string(), "-3/2");
        assert_eq!(int(24).to_string(), "24");
        assert_eq!(parse_rational(" -3/2 ").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("4/2").unwrap(), int(2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn nth_roots() {
        assert_eq!(rational_nth_root(&rat(1, 4), 2), Some(rat(1, 2)));
        assert_eq!(rational_nth_root(&rat(-8, 27), 3), Some(rat(-2, 3)));
        assert_eq!(rational_nth_root(&int(-4), 2), None);
        assert_eq!(rational_nth_root(&int(2), 2), None);
    }

    #[test]
    fn combinatorial_helpers() {
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(double_factorial_odd(0), BigInt::one());
        assert_eq!(double_factorial_odd(5), BigInt::from(945));
    }
}
