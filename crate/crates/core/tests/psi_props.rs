use elsvlab::exactalg::rational::int;
use elsvlab::psi::{PsiEngine, TauIndex};
use elsvlab::Rational;
use proptest::prelude::*;

/// Fills the memo with every stable index up to genus 3 and 5 points.
fn populated() -> PsiEngine {
    let e = PsiEngine::new();
    for g in 0..=3u32 {
        for n in 1..=5usize {
            let dim = 3 * g as i64 - 3 + n as i64;
            if dim < 0 || 2 * g as usize + n <= 2 {
                continue;
            }
            for a in sorted_vectors(n, dim as u32) {
                e.tau(g, &a);
            }
        }
    }
    e
}

fn sorted_vectors(n: usize, total: u32) -> Vec<Vec<u32>> {
    fn go(n: usize, total: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for x in min..=total {
            cur.push(x);
            go(n, total - x, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, total, 0, &mut Vec::new(), &mut out);
    out
}

#[test]
fn string_equation_over_the_cache() {
    let e = populated();
    let mut checked = 0;
    for (idx, value) in e.entries() {
        let a = idx.exponents();
        if a[0] != 0 || a.len() < 2 || !a[1..].iter().any(|&x| x >= 1) {
            continue;
        }
        let rest = &a[1..];
        if 2 * idx.g as usize + rest.len() <= 2 {
            continue;
        }
        let mut sum = Rational::from_integer(0.into());
        for j in 0..rest.len() {
            if rest[j] == 0 {
                continue;
            }
            let mut b = rest.to_vec();
            b[j] -= 1;
            sum += e.tau(idx.g, &b);
        }
        assert_eq!(value, sum, "string equation at {idx}");
        checked += 1;
    }
    assert!(checked > 10);
}

#[test]
fn dilaton_equation_over_the_cache() {
    let e = populated();
    let mut checked = 0;
    for (idx, value) in e.entries() {
        let a = idx.exponents();
        let Some(pos) = a.iter().position(|&x| x == 1) else { continue };
        let mut rest = a.to_vec();
        rest.remove(pos);
        if rest.is_empty() || 2 * idx.g as usize + rest.len() <= 2 {
            continue;
        }
        let factor = int(2 * idx.g as i64 - 2 + rest.len() as i64);
        assert_eq!(value, factor * e.tau(idx.g, &rest), "dilaton equation at {idx}");
        checked += 1;
    }
    assert!(checked > 10);
}

#[test]
fn nonzero_values_satisfy_the_dimension_constraint() {
    let e = PsiEngine::new();
    for g in 0..=2 {
        for a in [vec![0, 0, 0], vec![1], vec![2, 2], vec![4], vec![1, 1, 1], vec![0, 3]] {
            let idx = TauIndex::new(g, a).unwrap();
            if !idx.satisfies_dimension() {
                assert_eq!(e.tau_integral(&idx), int(0));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn order_of_exponents_is_irrelevant(g in 0u32..=3, a in proptest::collection::vec(0u32..=6, 1..=5), rot in 0usize..5) {
        let e = PsiEngine::new();
        let mut b = a.clone();
        let len = b.len();
        b.rotate_left(rot % len);
        b.reverse();
        prop_assert_eq!(e.tau(g, &a), e.tau(g, &b));
    }
}
