//! Univariate resultants in the Sylvester-determinant convention
//! `res(p, q) = lc(p)^{deg q} * prod_{p(x)=0} q(x)`.

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::{int, pow, Rational};
use super::AlgebraError;

/// Sylvester matrix of `p` and `q` taken with formal degrees `dp`, `dq`
/// (leading coefficients may vanish).
pub fn sylvester_matrix(p: &Poly, q: &Poly, dp: usize, dq: usize) -> Vec<Vec<Rational>> {
    let n = dp + dq;
    let mut rows = Vec::with_capacity(n);
    for shift in 0..dq {
        let mut row = vec![Rational::zero(); n];
        for i in 0..=dp {
            row[shift + i] = p.coeff(dp - i);
        }
        rows.push(row);
    }
    for shift in 0..dp {
        let mut row = vec![Rational::zero(); n];
        for i in 0..=dq {
            row[shift + i] = q.coeff(dq - i);
        }
        rows.push(row);
    }
    rows
}

/// Determinant by Gaussian elimination over ℚ.
pub fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det *= &pivot;
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &pivot;
            let (top, bottom) = m.split_at_mut(r);
            for (x, y) in bottom[0][c..].iter_mut().zip(&top[c][c..]) {
                *x -= y * &f;
            }
        }
    }
    det
}

fn check_inputs(p: &Poly, q: &Poly) -> Result<(usize, usize), AlgebraError> {
    match (p.degree(), q.degree()) {
        (Some(dp), Some(dq)) => Ok((dp, dq)),
        _ => Err(AlgebraError::DegenerateResultant),
    }
}

/// `res(p, q)` as the determinant of the Sylvester matrix.
pub fn resultant(p: &Poly, q: &Poly) -> Result<Rational, AlgebraError> {
    let (dp, dq) = check_inputs(p, q)?;
    Ok(determinant(sylvester_matrix(p, q, dp, dq)))
}

/// `res(p, q)` via the Euclidean remainder sequence; independent of the determinant route.
pub fn resultant_euclid(p: &Poly, q: &Poly) -> Result<Rational, AlgebraError> {
    let (dp, dq) = check_inputs(p, q)?;
    if dq == 0 {
        return Ok(pow(&q.coeff(0), dp));
    }
    if dp == 0 {
        return Ok(pow(&p.coeff(0), dq));
    }
    if dp < dq {
        let sign = if (dp * dq) % 2 == 1 { -Rational::one() } else { Rational::one() };
        return Ok(sign * resultant_euclid(q, p)?);
    }
    // res(p, q) = (-1)^{dp dq} lc(q)^{dp - deg r} res(q, r),  r = p mod q
    let (_, r) = p.div_rem(q)?;
    let Some(dr) = r.degree() else {
        return Ok(Rational::zero());
    };
    let sign = if (dp * dq) % 2 == 1 { -Rational::one() } else { Rational::one() };
    Ok(sign * pow(q.leading().unwrap(), dp - dr) * resultant_euclid(q, &r)?)
}

/// `res_z(b(z), n(z) - t d(z))` as a polynomial in `t`.
///
/// The second argument is taken with formal degree `max(deg n, deg d)`, so the
/// result is the specialization-stable Sylvester determinant; it is recovered by
/// exact interpolation at `deg b + 1` integer nodes.
pub fn resultant_pencil(b: &Poly, n: &Poly, d: &Poly) -> Result<Poly, AlgebraError> {
    let db = b.degree().ok_or(AlgebraError::DegenerateResultant)?;
    let formal = match (n.degree(), d.degree()) {
        (None, None) => return Err(AlgebraError::DegenerateResultant),
        (a, c) => a.unwrap_or(0).max(c.unwrap_or(0)),
    };
    let nodes: Vec<Rational> = (0..=db as i64).map(int).collect();
    let values: Vec<Rational> = nodes
        .iter()
        .map(|t| {
            let q = n - &d.scale(t);
            determinant(sylvester_matrix(b, &q, db, formal))
        })
        .collect();
    Ok(interpolate(&nodes, &values))
}

/// Lagrange interpolation through distinct nodes.
pub fn interpolate(nodes: &[Rational], values: &[Rational]) -> Poly {
    assert_eq!(nodes.len(), values.len());
    let mut acc = Poly::zero();
    for (i, (xi, yi)) in nodes.iter().zip(values).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = Poly::one();
        let mut denom = Rational::one();
        for (j, xj) in nodes.iter().enumerate() {
            if i != j {
                basis = &basis * &Poly::linear_root(xj);
                denom *= xi - xj;
            }
        }
        acc = &acc + &basis.scale(&(yi / denom));
    }
    acc
}
