//! Genus-0 maps from polar data and their branch polynomials.
//!
//! A polar datum is a list of distinct points of `P^1` with a principal part at
//! each and a constant; the map is `f = c + sum_i rho_i`, in `z - p_i` for finite
//! `p_i` and in `1/z` at infinity. Its finite branch values are the roots of a
//! degree `r = d + n - 2` polynomial read off from a resultant.

mod divisor;

pub use divisor::{
    admissible_branch_divisor, divisor_polynomial, map_branch_divisor, pushforward_divisor, AdmissibleDivisor,
    Contraction, MarkedTree, TreeDivisor, INFINITY_LABEL,
};

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diffgroup::LaurentTail;
use crate::exactalg::rational::{int, parse_rational, Rational};
use crate::exactalg::resultant::resultant_pencil;
use crate::exactalg::{AlgebraError, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BranchError {
    #[error("marked points coincide at {0}")]
    CoincidentPoints(String),
    #[error("{points} points but {tails} tails")]
    LengthMismatch { points: usize, tails: usize },
    #[error("tail at {point} has zero leading coefficient")]
    DegenerateTail { point: String },
    #[error("at least one marked point is required")]
    NoPoints,
    #[error("the map is constant")]
    ConstantMap,
    #[error("bad polar datum: {0}")]
    Parse(String),
    #[error("not a partition of {d}: {parts:?}")]
    NotAPartition { d: u32, parts: Vec<u32> },
    #[error("Riemann-Hurwitz gives no genus: total branching {total} for degree {d}")]
    NoGenus { total: i64, d: u32 },
    #[error("bad tree: {0}")]
    Tree(String),
    #[error("contraction undefined on vertex {0}")]
    Contraction(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Finite(Rational),
    Infinity,
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(p) => write!(f, "{p}"),
            Point::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for Point {
    type Err = BranchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Point::Infinity),
            other => parse_rational(other).map(Point::Finite).map_err(|e| BranchError::Parse(e.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarDatum {
    points: Vec<Point>,
    tails: Vec<LaurentTail>,
    pub constant: Rational,
}

impl PolarDatum {
    pub fn new(points: Vec<Point>, tails: Vec<LaurentTail>, constant: Rational) -> Result<Self, BranchError> {
        if points.is_empty() {
            return Err(BranchError::NoPoints);
        }
        if points.len() != tails.len() {
            return Err(BranchError::LengthMismatch { points: points.len(), tails: tails.len() });
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(BranchError::CoincidentPoints(p.to_string()));
            }
        }
        for (p, t) in points.iter().zip(&tails) {
            if !t.has_full_order() {
                return Err(BranchError::DegenerateTail { point: p.to_string() });
            }
        }
        Ok(PolarDatum { points, tails, constant })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn tails(&self) -> &[LaurentTail] {
        &self.tails
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// `d = sum k_i`.
    pub fn d(&self) -> usize {
        self.tails.iter().map(LaurentTail::k).sum()
    }

    pub fn r(&self) -> usize {
        self.d() + self.n() - 2
    }

    pub fn with_constant(&self, c: Rational) -> Self {
        PolarDatum { constant: c, ..self.clone() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolarDatumJson::from(self)).expect("plain strings serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, BranchError> {
        let raw: PolarDatumJson = serde_json::from_str(s).map_err(|e| BranchError::Parse(e.to_string()))?;
        raw.try_into()
    }
}

/// Wire form: `{"points": ["inf", "0"], "tails": [["0", "1"], ["1"]], "constant": "0"}`,
/// each tail listing `a_1, ..., a_k`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolarDatumJson {
    points: Vec<String>,
    tails: Vec<Vec<String>>,
    #[serde(default = "zero_string")]
    constant: String,
}

fn zero_string() -> String {
    "0".into()
}

impl From<&PolarDatum> for PolarDatumJson {
    fn from(pd: &PolarDatum) -> Self {
        PolarDatumJson {
            points: pd.points.iter().map(Point::to_string).collect(),
            tails: pd.tails.iter().map(|t| t.coeffs().iter().map(Rational::to_string).collect()).collect(),
            constant: pd.constant.to_string(),
        }
    }
}

impl TryFrom<PolarDatumJson> for PolarDatum {
    type Error = BranchError;

    fn try_from(raw: PolarDatumJson) -> Result<Self, Self::Error> {
        let bad = |e: AlgebraError| BranchError::Parse(e.to_string());
        let points = raw.points.iter().map(|p| p.parse()).collect::<Result<Vec<Point>, _>>()?;
        let mut tails = Vec::with_capacity(raw.tails.len());
        for t in &raw.tails {
            let coeffs = t.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>, _>>().map_err(bad)?;
            tails.push(LaurentTail::new(coeffs).map_err(|e| BranchError::Parse(e.to_string()))?);
        }
        let constant = parse_rational(&raw.constant).map_err(bad)?;
        PolarDatum::new(points, tails, constant)
    }
}

/// `N(z)/D(z)` in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMap {
    pub num: Poly,
    pub den: Poly,
}

impl RationalMap {
    pub fn new(num: Poly, den: Poly) -> Result<Self, BranchError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero.into());
        }
        let g = num.gcd(&den);
        let (num, den) =
            if g.degree().unwrap_or(0) > 0 { (num.div_exact(&g)?, den.div_exact(&g)?) } else { (num, den) };
        let lc = den.leading().expect("nonzero").clone();
        Ok(RationalMap { num: num.scale(&lc.recip()), den: den.monic() })
    }

    pub fn polynomial(p: Poly) -> Self {
        RationalMap { num: p, den: Poly::one() }
    }

    /// `max(deg N, deg D)`.
    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    /// Number of distinct poles in `P^1`.
    pub fn pole_count(&self) -> usize {
        let squarefree = self.den.div_exact(&self.den.gcd(&self.den.derivative())).expect("gcd divides");
        let finite = squarefree.degree().unwrap_or(0);
        finite + usize::from(self.pole_at_infinity())
    }

    pub fn pole_at_infinity(&self) -> bool {
        self.num.degree().unwrap_or(0) > self.den.degree().unwrap_or(0)
    }

    /// `f(infinity)` when it is finite.
    pub fn value_at_infinity(&self) -> Option<Rational> {
        let (dn, dd) = (self.num.degree(), self.den.degree().unwrap_or(0));
        match dn {
            None => Some(Rational::zero()),
            Some(dn) if dn < dd => Some(Rational::zero()),
            Some(dn) if dn == dd => Some(self.num.leading().expect("nonzero") / self.den.leading().expect("nonzero")),
            _ => None,
        }
    }

    pub fn eval(&self, z: &Rational) -> Option<Rational> {
        let dv = self.den.eval(z);
        (!dv.is_zero()).then(|| self.num.eval(z) / dv)
    }

    /// `f + c`.
    pub fn add_constant(&self, c: &Rational) -> Self {
        RationalMap { num: &self.num + &self.den.scale(c), den: self.den.clone() }
    }

    /// Wronskian `N' D - N D'`.
    pub fn wronskian(&self) -> Poly {
        &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative())
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            write!(f, "{}", self.num.to_expr("z"))
        } else {
            write!(f, "({})/({})", self.num.to_expr("z"), self.den.to_expr("z"))
        }
    }
}

/// `f = c + sum_i rho_i` as a single fraction.
pub fn assemble_map(pd: &PolarDatum) -> Result<RationalMap, BranchError> {
    let z = Poly::x();
    let factors: Vec<Option<Poly>> = pd
        .points
        .iter()
        .zip(&pd.tails)
        .map(|(p, t)| match p {
            Point::Finite(p) => Some((&z - &Poly::constant(p.clone())).pow(t.k())),
            Point::Infinity => None,
        })
        .collect();
    let den = factors.iter().flatten().fold(Poly::one(), |acc, f| &acc * f);

    let mut polynomial_part = Poly::constant(pd.constant.clone());
    for (p, t) in pd.points.iter().zip(&pd.tails) {
        if *p == Point::Infinity {
            let mut c = vec![Rational::zero()];
            c.extend(t.coeffs().iter().cloned());
            polynomial_part = &polynomial_part + &Poly::new(c);
        }
    }
    let mut num = &polynomial_part * &den;
    for (i, (p, t)) in pd.points.iter().zip(&pd.tails).enumerate() {
        let Point::Finite(p) = p else { continue };
        let k = t.k();
        let local = &z - &Poly::constant(p.clone());
        // sum_l a_l (z - p)^{k - l}, times the other denominators
        let mut part = Poly::zero();
        for l in 1..=k {
            part = &part + &local.pow(k - l).scale(&t.a(l));
        }
        let others = factors
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .filter_map(|(_, f)| f.as_ref())
            .fold(Poly::one(), |acc, f| &acc * f);
        num = &num + &(&part * &others);
    }
    Ok(RationalMap { num, den })
}

/// `P(t)` in `t`, of degree `r = d + n - 2`.
pub type BranchPolynomial = Poly;

/// Monic degree `d + n - 2` polynomial whose roots are the finite branch values.
///
/// Critical points away from the poles are the roots of `W / gcd(D, D')`. When
/// infinity is not a pole its ramification is not seen by that quotient and is
/// restored as a power of `t - f(infinity)`.
pub fn branch_polynomial(f: &RationalMap) -> Result<BranchPolynomial, BranchError> {
    let w = f.wronskian();
    if w.is_zero() {
        return Err(BranchError::ConstantMap);
    }
    let pole_part = f.den.gcd(&f.den.derivative());
    let b = w.div_exact(&pole_part)?;
    let res = resultant_pencil(&b, &f.num, &f.den)?.monic();
    let r = f.degree() + f.pole_count() - 2;
    let seen = res.degree().unwrap_or(0);
    match f.value_at_infinity() {
        Some(c) if r > seen => {
            let lin = Poly::new(vec![-c, Rational::one()]);
            Ok(&res * &lin.pow(r - seen))
        }
        _ => {
            debug_assert_eq!(seen, r);
            Ok(res)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedLift {
    pub datum: PolarDatum,
    /// Branch polynomial of the input.
    pub original: BranchPolynomial,
    /// The shift `a`; the new constant is `c - a`.
    pub shift: Rational,
    /// `Q(t) = P(t + a)`, with zero `t^{r-1}` coefficient.
    pub normalized: BranchPolynomial,
}

/// Shifts the constant so that the branch polynomial has zero subleading coefficient.
pub fn normalize_lift(pd: &PolarDatum) -> Result<NormalizedLift, BranchError> {
    let p = branch_polynomial(&assemble_map(pd)?)?;
    let r = p.degree().unwrap_or(0);
    if r == 0 {
        return Ok(NormalizedLift { datum: pd.clone(), original: p.clone(), shift: Rational::zero(), normalized: p });
    }
    let br = p.coeff(r);
    let a = -p.coeff(r - 1) / (int(r as i64) * br);
    let q = p.shift(&a);
    Ok(NormalizedLift { datum: pd.with_constant(&pd.constant - &a), original: p, shift: a, normalized: q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::rat;

    fn tail(cs: &[i64]) -> LaurentTail {
        LaurentTail::of_order(cs.iter().map(|&c| int(c)).collect()).unwrap()
    }

    fn at_infinity(cs: &[i64], c: i64) -> PolarDatum {
        PolarDatum::new(vec![Point::Infinity], vec![tail(cs)], int(c)).unwrap()
    }

    #[test]
    fn assemble_examples() {
        assert_eq!(assemble_map(&at_infinity(&[0, 1], 0)).unwrap().to_string(), "z^2");
        assert_eq!(assemble_map(&at_infinity(&[-3, 0, 1], 0)).unwrap().to_string(), "z^3 - 3*z");
        let pd = PolarDatum::new(vec![Point::Finite(int(0))], vec![tail(&[1])], int(5)).unwrap();
        assert_eq!(assemble_map(&pd).unwrap().to_string(), "(5*z + 1)/(z)");
    }

    #[test]
    fn branch_examples() {
        let bp = |pd: &PolarDatum| branch_polynomial(&assemble_map(pd).unwrap()).unwrap().to_expr("t");
        assert_eq!(bp(&at_infinity(&[0, 1], 0)), "t");
        assert_eq!(bp(&at_infinity(&[-3, 0, 1], 0)), "t^2 - 4");
        let pd = PolarDatum::new(vec![Point::Finite(int(0))], vec![tail(&[1])], int(5)).unwrap();
        assert_eq!(bp(&pd), "1");
        let pd = PolarDatum::new(vec![Point::Finite(int(0))], vec![tail(&[0, 1])], int(0)).unwrap();
        assert_eq!(bp(&pd), "t");
        assert_eq!(bp(&at_infinity(&[0, 0, 1], 0)), "t^2");
    }

    #[test]
    fn pole_at_zero_and_infinity() {
        // z + 1/z: critical points +-1, values +-2
        let pd = PolarDatum::new(vec![Point::Infinity, Point::Finite(int(0))], vec![tail(&[1]), tail(&[1])], int(0))
            .unwrap();
        let f = assemble_map(&pd).unwrap();
        assert_eq!(branch_polynomial(&f).unwrap().to_expr("t"), "t^2 - 4");
    }

    #[test]
    fn normalize_examples() {
        let n = normalize_lift(&at_infinity(&[0, 1], 1)).unwrap();
        assert_eq!(n.original.to_expr("t"), "t - 1");
        assert_eq!(n.shift, int(1));
        assert_eq!(n.normalized.to_expr("t"), "t");
        assert_eq!(n.datum.constant, int(0));

        let n = normalize_lift(&at_infinity(&[-3, 0, 1], 0)).unwrap();
        assert_eq!(n.shift, int(0));
        assert_eq!(n.normalized.to_expr("t"), "t^2 - 4");

        let pd = PolarDatum::new(vec![Point::Finite(int(0))], vec![tail(&[1])], int(5)).unwrap();
        let n = normalize_lift(&pd).unwrap();
        assert_eq!(n.normalized, Poly::one());
        assert_eq!(n.datum, pd);
    }

    #[test]
    fn datum_validation() {
        let dup = PolarDatum::new(vec![Point::Infinity, Point::Infinity], vec![tail(&[1]), tail(&[1])], int(0));
        assert_eq!(dup, Err(BranchError::CoincidentPoints("inf".into())));
        let zero = LaurentTail::new(vec![int(1), int(0)]).unwrap();
        assert!(matches!(
            PolarDatum::new(vec![Point::Infinity], vec![zero], int(0)),
            Err(BranchError::DegenerateTail { .. })
        ));
        assert!(PolarDatum::new(vec![], vec![], int(0)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let pd = PolarDatum::new(
            vec![Point::Infinity, Point::Finite(rat(1, 2))],
            vec![tail(&[0, 1]), LaurentTail::of_order(vec![rat(-2, 3)]).unwrap()],
            rat(5, 7),
        )
        .unwrap();
        let json = pd.to_json();
        assert_eq!(json, r#"{"points":["inf","1/2"],"tails":[["0","1"],["-2/3"]],"constant":"5/7"}"#);
        assert_eq!(PolarDatum::from_json(&json).unwrap(), pd);
        assert!(PolarDatum::from_json(r#"{"points":["0","0"],"tails":[["1"],["1"]]}"#).is_err());
    }
}
