//! Single Hurwitz numbers from the symmetric group.
//!
//! Convention: `mu_{g,k} = (1/d!) * #{(tau_1..tau_r, sigma, labeling)}` where the
//! `tau_i` are transpositions, `sigma` has cycle type `k`, the labeling assigns
//! mark `i` to a `sigma`-cycle of length `k_i`, `tau_r ... tau_1 sigma = id`, and
//! the generated subgroup is transitive. Equivalently the unlabeled tuple count
//! times `prod_m mult_m!` over `d!`; this is the only place the convention lives.

mod brute;
mod characters;
mod frobenius;
mod partition;

pub use brute::{count_transitive_factorizations, hurwitz_brute, EnumerationBudget};
pub use characters::{centralizer_order, character_value, class_size, dimension, CharacterTable};
pub use frobenius::{disconnected_count, hurwitz_character, CharacterBudget};
pub use partition::{partitions, Partition};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exactalg::rational::{factorial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HurwitzError {
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("partition size mismatch: |lambda| = {left}, |mu| = {right}")]
    SizeMismatch { left: u32, right: u32 },
    #[error(
        "enumeration budget exceeded for d={d}, r={r}: about {estimated} tuples \
         (limits d <= {max_d}, r <= {max_r})"
    )]
    BudgetExceeded { d: u32, r: u32, max_d: u32, max_r: u32, estimated: BigInt },
    #[error("character route limited to d <= {max_d}, got d={d}")]
    CharacterBudgetExceeded { d: u32, max_d: u32 },
    #[error("time limit reached after {nodes} search nodes")]
    TimeLimit { nodes: u64 },
}

/// Ramification data `(g; k_1, ..., k_n)` over the marked point at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile {
    pub g: u32,
    parts: Vec<u32>,
}

impl Profile {
    pub fn new(g: u32, parts: Vec<u32>) -> Result<Self, HurwitzError> {
        if parts.is_empty() {
            return Err(HurwitzError::InvalidProfile("need at least one part".into()));
        }
        if parts.contains(&0) {
            return Err(HurwitzError::InvalidProfile("parts must be positive".into()));
        }
        Ok(Profile { g, parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn n(&self) -> u32 {
        self.parts.len() as u32
    }

    pub fn d(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of simple branch points `r = 2g - 2 + d + n`.
    pub fn r(&self) -> u32 {
        2 * self.g + self.d() + self.n() - 2
    }

    /// The same data with parts sorted decreasingly.
    pub fn sorted(&self) -> Profile {
        let mut parts = self.parts.clone();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Profile { g: self.g, parts }
    }

    /// `(g, n)` is one of the unstable types `(0,1)`, `(0,2)`.
    pub fn is_unstable(&self) -> bool {
        self.g == 0 && self.n() <= 2
    }

    /// `prod_m mult_m!`: the number of labelings of a fixed `sigma`.
    pub fn labeling_count(&self) -> BigInt {
        let mut sorted = self.parts.clone();
        sorted.sort_unstable();
        let mut acc = BigInt::from(1);
        let mut i = 0;
        while i < sorted.len() {
            let j = sorted[i..].iter().take_while(|&&x| x == sorted[i]).count();
            acc *= factorial(j as u64);
            i += j;
        }
        acc
    }

    /// Parses `"1,1,1"` for the given genus.
    pub fn parse(g: u32, parts: &str) -> Result<Self, HurwitzError> {
        let parsed: Result<Vec<u32>, _> = parts.split(',').map(|p| p.trim().parse::<u32>()).collect();
        let parsed = parsed.map_err(|_| HurwitzError::InvalidProfile(format!("bad parts list {parts:?}")))?;
        Profile::new(g, parsed)
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "g={};k=({})", self.g, parts.join(","))
    }
}

impl FromStr for Profile {
    type Err = HurwitzError;

    /// `"g;k1,k2,..."`
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (g, parts) = s
            .split_once(';')
            .ok_or_else(|| HurwitzError::InvalidProfile(format!("expected g;k1,k2,..., got {s:?}")))?;
        let g = g.trim().parse().map_err(|_| HurwitzError::InvalidProfile(format!("bad genus in {s:?}")))?;
        Profile::parse(g, parts)
    }
}

/// `r = 2g - 2 + sum k_i + n`.
pub fn branch_count(p: &Profile) -> u32 {
    p.r()
}

/// Converts an unlabeled transitive tuple count into `mu_{g,k}`.
pub(crate) fn labeled_weight(p: &Profile, tuples: BigInt) -> Rational {
    Rational::new(tuples * p.labeling_count(), factorial(p.d() as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branch_count_examples() {
        assert_eq!(branch_count(&Profile::new(0, vec![1, 1, 1]).unwrap()), 4);
        assert_eq!(branch_count(&Profile::new(1, vec![2]).unwrap()), 3);
        assert_eq!(branch_count(&Profile::new(2, vec![2]).unwrap()), 5);
    }

    #[test]
    fn profile_parsing() {
        let p: Profile = "1;2,1".parse().unwrap();
        assert_eq!(p, Profile::new(1, vec![2, 1]).unwrap());
        assert!(Profile::parse(0, "1,0").is_err());
        assert!(Profile::parse(0, "").is_err());
        assert_eq!(Profile::new(0, vec![1, 2, 1, 2, 2]).unwrap().labeling_count(), BigInt::from(12));
    }
}
