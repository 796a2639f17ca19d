//! Parser for univariate polynomial expressions such as `t + 1/2*t^2 - 3*t^3`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::{parse_rational, Rational};
use super::AlgebraError;

fn parse_term(term: &str, var: &str, params: &BTreeMap<String, Rational>) -> Result<(Rational, usize), AlgebraError> {
    let bad = || AlgebraError::Parse(format!("bad term {term:?} in variable {var}"));
    let mut coeff = Rational::one();
    let mut exp = 0usize;
    for factor in term.split('*') {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(bad());
        }
        if let Some(v) = params.get(factor) {
            coeff *= v;
        } else if let Some(rest) = factor.strip_prefix(var) {
            let e = match rest.strip_prefix('^') {
                Some(e) => e.trim().parse::<usize>().map_err(|_| bad())?,
                None if rest.is_empty() => 1,
                None => return Err(bad()),
            };
            exp += e;
        } else {
            coeff *= parse_rational(factor).map_err(|_| bad())?;
        }
    }
    Ok((coeff, exp))
}

/// Parses a sum of terms `c*var^e`; coefficients are exact rationals.
pub fn parse_poly(expr: &str, var: &str) -> Result<Poly, AlgebraError> {
    parse_poly_with(expr, var, &BTreeMap::new())
}

/// As [`parse_poly`], with named rational parameters allowed as factors.
pub fn parse_poly_with(expr: &str, var: &str, params: &BTreeMap<String, Rational>) -> Result<Poly, AlgebraError> {
    let compact: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(AlgebraError::Parse("empty expression".into()));
    }
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    let mut prev: Option<char> = None;
    for ch in compact.chars() {
        let sign_here = (ch == '+' || ch == '-') && !matches!(prev, None | Some('^') | Some('*'));
        if sign_here {
            terms.push((negative, std::mem::take(&mut current)));
            negative = ch == '-';
        } else if (ch == '-' || ch == '+') && prev.is_none() {
            negative = ch == '-';
        } else {
            current.push(ch);
        }
        prev = Some(ch);
    }
    terms.push((negative, current));
    let mut coeffs: Vec<Rational> = Vec::new();
    for (neg, t) in terms {
        let (c, e) = parse_term(&t, var, params)?;
        if coeffs.len() <= e {
            coeffs.resize(e + 1, Rational::zero());
        }
        coeffs[e] += if neg { -c } else { c };
    }
    Ok(Poly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, rat};

    #[test]
    fn parses_mixed_terms() {
        let p = parse_poly("t + 1/2*t^2 - 3*t^3", "t").unwrap();
        assert_eq!(p, Poly::new(vec![int(0), int(1), rat(1, 2), int(-3)]));
        assert_eq!(parse_poly("-z^2+1", "z").unwrap(), Poly::from_ints(&[1, 0, -1]));
        assert_eq!(parse_poly("t", "t").unwrap(), Poly::x());
        assert_eq!(parse_poly("2*t*t", "t").unwrap(), Poly::monomial(int(2), 2));
        assert!(parse_poly("t^", "t").is_err());
        assert!(parse_poly("x", "t").is_err());
    }

    #[test]
    fn named_parameters() {
        let params = BTreeMap::from([("a".to_string(), rat(-1, 3)), ("tau".to_string(), int(2))]);
        let p = parse_poly_with("t + a*t^2 - tau*a*t^3", "t", &params).unwrap();
        assert_eq!(p, Poly::new(vec![int(0), int(1), rat(-1, 3), rat(2, 3)]));
        assert!(parse_poly("t + a*t^2", "t").is_err());
    }

    #[test]
    fn round_trips_printed_form() {
        let p = Poly::new(vec![rat(-1, 3), int(0), int(5), rat(7, 2)]);
        assert_eq!(parse_poly(&p.to_expr("t"), "t").unwrap(), p);
    }
}
