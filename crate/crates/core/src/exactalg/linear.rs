//! Exact linear systems by fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::{denominator_lcm, Rational};
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    pub values: Vec<Rational>,
    pub rank: usize,
    /// `A x - b` for every input equation, in input order.
    pub residuals: Vec<Rational>,
}

impl LinearSolution {
    pub fn is_consistent(&self) -> bool {
        self.residuals.iter().all(Zero::is_zero)
    }
}

/// Integer row echelon form of an integer matrix; returns pivot columns.
/// Every intermediate entry is a minor of the input, so each division is exact.
fn bareiss_echelon(m: &mut [Vec<BigInt>], ncols: usize) -> Vec<usize> {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        for r in row + 1..nrows {
            for c in 0..m[r].len() {
                if c == col {
                    continue;
                }
                let v = (&m[row][col] * &m[r][c] - &m[r][col] * &m[row][c]) / &prev;
                m[r][c] = v;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[row][col].clone();
        pivots.push(col);
        row += 1;
    }
    pivots
}

fn integer_rows(a: &[Vec<Rational>], b: Option<&[Rational]>) -> Vec<Vec<BigInt>> {
    a.iter()
        .enumerate()
        .map(|(i, row)| {
            let rhs = b.map(|b| &b[i]);
            let scale = denominator_lcm(row.iter().chain(rhs));
            row.iter().chain(rhs).map(|x| (x * Rational::from_integer(scale.clone())).to_integer()).collect()
        })
        .collect()
}

/// Rank of a rational matrix.
pub fn rank(a: &[Vec<Rational>]) -> usize {
    let ncols = a.first().map_or(0, Vec::len);
    let mut m = integer_rows(a, None);
    bareiss_echelon(&mut m, ncols).len()
}

/// Solves `A x = b` exactly. Rows beyond the rank must be consistent for a zero
/// residual; consistency is reported, not enforced. Fails when `rank < #unknowns`.
pub fn solve_exact(a: &[Vec<Rational>], b: &[Rational]) -> Result<LinearSolution, AlgebraError> {
    assert_eq!(a.len(), b.len());
    let ncols = a.first().map_or(0, Vec::len);
    let mut m = integer_rows(a, Some(b));
    let pivots = bareiss_echelon(&mut m, ncols);
    let rank = pivots.len();
    if rank < ncols {
        return Err(AlgebraError::RankDeficient { rank, unknowns: ncols });
    }
    let mut x = vec![Rational::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate().rev() {
        let mut s = Rational::from_integer(m[r][ncols].clone());
        for j in c + 1..ncols {
            if !m[r][j].is_zero() {
                s -= Rational::from_integer(m[r][j].clone()) * &x[j];
            }
        }
        x[c] = s / Rational::from_integer(m[r][c].clone());
    }
    let residuals = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| row.iter().zip(&x).fold(Rational::zero(), |acc, (c, v)| acc + c * v) - rhs)
        .collect();
    Ok(LinearSolution { values: x, rank, residuals })
}
