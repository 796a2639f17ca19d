//! Exact arithmetic over ℚ: dense polynomials, truncated power series,
//! sparse multivariate polynomials, resultants and linear solves.

pub mod coeff_polys;
pub mod linear;
pub mod multipoly;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod resultant;
pub mod series;

pub use coeff_polys::{g_poly, h_poly};
pub use linear::{rank, solve_exact, LinearSolution};
pub use multipoly::{Monomial, MultiPoly};
pub use parse::{parse_poly, parse_poly_with};
pub use poly::Poly;
pub use rational::{int, parse_rational, rat, Rational};
pub use resultant::{resultant, resultant_euclid, resultant_pencil};
pub use series::{series_compose, series_reciprocal, TruncSeries};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("series is not a unit (zero constant term)")]
    NotAUnit,
    #[error("requested order {requested} exceeds available order {available}")]
    OrderTooLarge { requested: usize, available: usize },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial division is not exact")]
    InexactDivision,
    #[error("resultant of a zero polynomial is undefined")]
    DegenerateResultant,
    #[error("linear system has rank {rank} but {unknowns} unknowns")]
    RankDeficient { rank: usize, unknowns: usize },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("parse error: {0}")]
    Parse(String),
}
