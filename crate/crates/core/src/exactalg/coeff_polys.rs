//! The coefficient-extraction polynomials `H_{l,j}` and `G_{k,j}`.
//!
//! `H_{l,j}(Y_1..Y_j)` is the `X^j` coefficient of `(1 + Y_1 X + Y_2 X^2 + ...)^{-l}`.
//! `G_{k,j}(Y_1..Y_k)` is the `X^{k(k-1)+j}` coefficient of `(Y_1 X + ... + Y_k X^k)^k`,
//! so that `G_{k,k} = Y_k^k` and `G_{k,j} = k Y_k^{k-1} Y_j + (terms in Y_{j+1}..Y_k)`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::multipoly::{Monomial, MultiPoly};
use super::rational::{binomial, Rational};
use super::series::TruncSeries;
use super::AlgebraError;

/// Product of two `X`-series with polynomial coefficients, truncated at `max_deg`.
fn series_mul(a: &[MultiPoly], b: &[MultiPoly], max_deg: usize) -> Vec<MultiPoly> {
    let mut out = vec![MultiPoly::zero(); max_deg + 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if i + j > max_deg {
                break;
            }
            if !bj.is_zero() {
                out[i + j] = &out[i + j] + &(ai * bj);
            }
        }
    }
    out
}

pub fn h_poly(l: u32, j: u32) -> MultiPoly {
    assert!(l >= 1, "H_{{l,j}} needs l >= 1");
    let j = j as usize;
    // (1 + u)^{-l} = sum_m (-1)^m C(l+m-1, m) u^m,  u = Y_1 X + ... + Y_j X^j
    let mut u = vec![MultiPoly::zero(); j + 1];
    for (q, slot) in u.iter_mut().enumerate().skip(1) {
        *slot = MultiPoly::var(q);
    }
    let mut u_pow = vec![MultiPoly::zero(); j + 1];
    u_pow[0] = MultiPoly::one();
    let mut total = MultiPoly::zero();
    for m in 0..=j {
        let c = binomial(l as u64 + m as u64 - 1, m as u64);
        let c = if m % 2 == 1 { -c } else { c };
        total = &total + &u_pow[j].scale(&Rational::from_integer(c));
        u_pow = series_mul(&u_pow, &u, j);
    }
    total
}

pub fn g_poly(k: u32, j: u32) -> Result<MultiPoly, AlgebraError> {
    if k == 0 || j == 0 || j > k {
        return Err(AlgebraError::IndexOutOfRange(format!("G_{{k,j}} needs 1 <= j <= k, got k={k}, j={j}")));
    }
    let k = k as usize;
    let top = k * k;
    let mut base = vec![MultiPoly::zero(); k + 1];
    for (m, slot) in base.iter_mut().enumerate().skip(1) {
        *slot = MultiPoly::var(m);
    }
    let mut acc = vec![MultiPoly::zero(); top + 1];
    acc[0] = MultiPoly::one();
    for _ in 0..k {
        acc = series_mul(&acc, &base, top);
    }
    Ok(acc.swap_remove(k * (k - 1) + j as usize))
}

/// Numerical values `H_{l,0}(y), ..., H_{l,jmax}(y)` for concrete `y = (Y_1, Y_2, ...)`.
pub fn h_values(l: u32, ys: &[Rational], jmax: usize) -> Vec<Rational> {
    let mut c = vec![Rational::from_integer(BigInt::from(1))];
    c.extend(ys.iter().take(jmax).cloned());
    let base = TruncSeries::new(c, jmax);
    base.powi(-(l as i64)).expect("constant term is 1").coeffs().to_vec()
}

/// Numerical values `G_{k,1}(a), ..., G_{k,k}(a)` where `a = (Y_1, ..., Y_k)`.
pub fn g_values(k: usize, a: &[Rational]) -> Vec<Rational> {
    assert_eq!(a.len(), k);
    let mut coeffs = vec![Rational::zero()];
    coeffs.extend(a.iter().cloned());
    let p = super::poly::Poly::new(coeffs).pow(k);
    (1..=k).map(|j| p.coeff(k * (k - 1) + j)).collect()
}

/// `k * Y_k^{k-1} * Y_j`, the leading part of `G_{k,j}` for `j < k`.
pub fn g_leading_term(k: u32, j: u32) -> MultiPoly {
    let mut e = vec![0u32; k as usize];
    e[k as usize - 1] += k - 1;
    e[j as usize - 1] += 1;
    MultiPoly::term(Rational::from_integer(BigInt::from(k)), Monomial::new(e))
}
