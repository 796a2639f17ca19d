//! Irreducible characters of `S_d` by the Murnaghan-Nakayama rule on beta-numbers.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::partition::{partitions, Partition};
use super::HurwitzError;
use crate::exactalg::rational::factorial;

fn beta_numbers(lambda: &Partition) -> Vec<u32> {
    let l = lambda.len() as u32;
    lambda.parts().iter().enumerate().map(|(i, &p)| p + l - 1 - i as u32).collect()
}

/// Removes rim hooks of lengths `mu[idx..]` from the bead configuration `beads`.
fn mn(beads: &mut Vec<u32>, mu: &[u32], idx: usize, memo: &mut HashMap<(Vec<u32>, usize), BigInt>) -> BigInt {
    if idx == mu.len() {
        return BigInt::one();
    }
    let key = (beads.clone(), idx);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let m = mu[idx];
    let mut total = BigInt::zero();
    for i in 0..beads.len() {
        let b = beads[i];
        if b < m || beads.contains(&(b - m)) {
            continue;
        }
        let between = beads.iter().filter(|&&c| c > b - m && c < b).count();
        beads[i] = b - m;
        let v = mn(beads, mu, idx + 1, memo);
        beads[i] = b;
        if between % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    memo.insert(key, total.clone());
    total
}

/// `chi^lambda(mu)`.
pub fn character_value(lambda: &Partition, mu: &Partition) -> Result<BigInt, HurwitzError> {
    if lambda.size() != mu.size() {
        return Err(HurwitzError::SizeMismatch { left: lambda.size(), right: mu.size() });
    }
    let mut beads = beta_numbers(lambda);
    Ok(mn(&mut beads, mu.parts(), 0, &mut HashMap::new()))
}

/// `z_mu = prod_m m^{a_m} a_m!`.
pub fn centralizer_order(mu: &Partition) -> BigInt {
    let mut acc = BigInt::one();
    let parts = mu.parts();
    let mut i = 0;
    while i < parts.len() {
        let j = parts[i..].iter().take_while(|&&x| x == parts[i]).count();
        acc *= num_traits::pow(BigInt::from(parts[i]), j) * factorial(j as u64);
        i += j;
    }
    acc
}

/// Size of the conjugacy class of cycle type `mu`.
pub fn class_size(mu: &Partition) -> BigInt {
    factorial(mu.size() as u64) / centralizer_order(mu)
}

/// Hook length formula.
pub fn dimension(lambda: &Partition) -> BigInt {
    let parts = lambda.parts();
    let mut hooks = BigInt::one();
    for (i, &row) in parts.iter().enumerate() {
        for j in 0..row {
            let leg = parts[i + 1..].iter().filter(|&&r| r > j).count() as u32;
            hooks *= BigInt::from(row - j + leg);
        }
    }
    factorial(lambda.size() as u64) / hooks
}

/// Full table for one `d`; rows and columns both indexed by `partitions(d)`.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub d: u32,
    pub classes: Vec<Partition>,
    values: Vec<Vec<BigInt>>,
}

impl CharacterTable {
    pub fn new(d: u32) -> Self {
        let classes = partitions(d);
        let values = classes
            .iter()
            .map(|l| classes.iter().map(|m| character_value(l, m).expect("same size")).collect())
            .collect();
        CharacterTable { d, classes, values }
    }

    pub fn value(&self, lambda: usize, mu: usize) -> &BigInt {
        &self.values[lambda][mu]
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.classes.iter().position(|c| c == p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(character_value(&part(&[2, 1]), &part(&[3])).unwrap(), BigInt::from(-1));
        assert_eq!(character_value(&part(&[1, 1]), &part(&[2])).unwrap(), BigInt::from(-1));
        assert_eq!(character_value(&part(&[2, 1]), &part(&[1, 1, 1])).unwrap(), BigInt::from(2));
        assert!(character_value(&part(&[2]), &part(&[1, 1, 1])).is_err());
    }

    #[test]
    fn identity_column_is_dimension() {
        for d in 1..=8 {
            for l in partitions(d) {
                assert_eq!(character_value(&l, &Partition::identity(d)).unwrap(), dimension(&l));
            }
        }
    }

    #[test]
    fn column_orthogonality() {
        for d in 1..=6 {
            let t = CharacterTable::new(d);
            let n = t.classes.len();
            for a in 0..n {
                for b in 0..n {
                    let s: BigInt = (0..n).map(|l| t.value(l, a) * t.value(l, b)).sum();
                    let expect = if a == b { centralizer_order(&t.classes[a]) } else { BigInt::zero() };
                    assert_eq!(s, expect, "d={d} {} {}", t.classes[a], t.classes[b]);
                }
            }
        }
    }

    #[test]
    fn transposition_value_matches_content_sum() {
        // chi(T) * |C_T| / dim equals the sum of contents
        for d in 2..=9 {
            for l in partitions(d) {
                let contents: i64 =
                    l.parts().iter().enumerate().flat_map(|(i, &r)| (0..r as i64).map(move |j| j - i as i64)).sum();
                let chi = character_value(&l, &Partition::transposition(d)).unwrap();
                assert_eq!(chi * class_size(&Partition::transposition(d)), dimension(&l) * contents);
            }
        }
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for d in 1..=10 {
            let s: BigInt = partitions(d).iter().map(class_size).sum();
            assert_eq!(s, factorial(d as u64));
        }
    }
}
