//! Hurwitz numbers from the Frobenius character formula, with the connected part
//! extracted by inclusion-exclusion over the component containing mark 1.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::characters::{character_value, class_size, dimension};
use super::partition::{partitions, Partition};
use super::{HurwitzError, Profile};
use crate::exactalg::rational::{binomial, factorial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CharacterBudget {
    pub max_d: u32,
}

impl Default for CharacterBudget {
    fn default() -> Self {
        CharacterBudget { max_d: 12 }
    }
}

fn labeling_count(parts: &[u32]) -> BigInt {
    let mut sorted = parts.to_vec();
    sorted.sort_unstable();
    let mut acc = BigInt::one();
    let mut i = 0;
    while i < sorted.len() {
        let j = sorted[i..].iter().take_while(|&&x| x == sorted[i]).count();
        acc *= factorial(j as u64);
        i += j;
    }
    acc
}

/// Labeled weight of all, possibly disconnected, covers: `prod mult! * N / d!`
/// with `N` the number of transposition `r`-tuples whose product has type `k`.
pub fn disconnected_count(k: &[u32], r: u32) -> Rational {
    let d: u32 = k.iter().sum();
    if d == 0 {
        return Rational::from_integer(BigInt::from((r == 0) as u32));
    }
    if d == 1 {
        return Rational::from_integer(BigInt::from((r == 0) as u32));
    }
    let mu = Partition::new(k.to_vec()).expect("positive parts");
    let t = Partition::transposition(d);
    let dfact = Rational::from_integer(factorial(d as u64));
    let mut sum = Rational::zero();
    for lambda in partitions(d) {
        let dim = dimension(&lambda);
        let chi_mu = character_value(&lambda, &mu).expect("same size");
        let chi_t = character_value(&lambda, &t).expect("same size");
        let num = chi_mu * num_traits::pow(chi_t, r as usize);
        sum += Rational::new(num * &dim, num_traits::pow(dim, r as usize));
    }
    let pref = Rational::from_integer(class_size(&mu) * num_traits::pow(class_size(&t), r as usize));
    let tuples = pref * sum / &dfact;
    tuples * Rational::from_integer(labeling_count(k)) / dfact
}

struct Connected {
    memo: HashMap<(Vec<u32>, u32), Rational>,
}

impl Connected {
    fn get(&mut self, k: &[u32], r: u32) -> Rational {
        let mut key_parts = k.to_vec();
        key_parts.sort_unstable();
        let key = (key_parts, r);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let mut value = disconnected_count(k, r);
        let n = k.len();
        // S always contains mark 0; enumerate the rest of S by bitmask over 1..n
        for mask in 0..(1u64 << (n - 1)) {
            if mask == (1u64 << (n - 1)) - 1 {
                continue;
            }
            let mut inside = vec![k[0]];
            let mut outside = Vec::new();
            for (i, &part) in k.iter().enumerate().skip(1) {
                if mask >> (i - 1) & 1 == 1 {
                    inside.push(part);
                } else {
                    outside.push(part);
                }
            }
            let ds: u32 = inside.iter().sum();
            let min = ds + inside.len() as u32 - 2;
            let mut rs = min;
            while rs <= r {
                let c = self.get(&inside, rs);
                if !c.is_zero() {
                    let rest = disconnected_count(&outside, r - rs);
                    value -= Rational::from_integer(binomial(r as u64, rs as u64)) * c * rest;
                }
                rs += 2;
            }
        }
        self.memo.insert(key, value.clone());
        value
    }
}

/// `mu_{g,k}` via characters.
pub fn hurwitz_character(p: &Profile, budget: &CharacterBudget) -> Result<Rational, HurwitzError> {
    if p.d() > budget.max_d {
        return Err(HurwitzError::CharacterBudgetExceeded { d: p.d(), max_d: budget.max_d });
    }
    let mut engine = Connected { memo: HashMap::new() };
    Ok(engine.get(p.parts(), p.r()))
}
