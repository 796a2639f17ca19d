//! Intersection numbers of psi classes, `<tau_{a_1} ... tau_{a_n}>_g`.
//!
//! Genus 0 has the closed form `(n-3)!/prod a_i!`. In general the values come
//! from the Dijkgraaf-Verlinde-Verlinde form of the Witten-Kontsevich recursion
//! starting from `<tau_0^3>_0 = 1` and `<tau_1>_1 = 1/24`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactalg::rational::{double_factorial_odd, factorial, parse_rational, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PsiError {
    #[error("a tau index needs at least one marked point")]
    NoPoints,
    #[error("malformed cache line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// `(g; a_1..a_n)` with exponents stored in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TauIndex {
    pub g: u32,
    a: Vec<u32>,
}

impl TauIndex {
    pub fn new(g: u32, mut a: Vec<u32>) -> Result<Self, PsiError> {
        if a.is_empty() {
            return Err(PsiError::NoPoints);
        }
        a.sort_unstable();
        Ok(TauIndex { g, a })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.a
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn is_stable(&self) -> bool {
        2 * self.g as usize + self.a.len() > 2
    }

    /// `sum a_i = 3g - 3 + n`.
    pub fn satisfies_dimension(&self) -> bool {
        let lhs: i64 = self.a.iter().map(|&x| x as i64).sum();
        lhs == 3 * self.g as i64 - 3 + self.a.len() as i64
    }
}

impl fmt::Display for TauIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.a.iter().map(u32::to_string).collect();
        write!(f, "{};{}", self.g, a.join(","))
    }
}

impl FromStr for TauIndex {
    type Err = PsiError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason: &str| PsiError::Parse { line: 0, reason: format!("{reason} in {s:?}") };
        let (g, a) = s.split_once(';').ok_or_else(|| bad("missing ';'"))?;
        let g = g.trim().parse().map_err(|_| bad("bad genus"))?;
        let a: Result<Vec<u32>, _> = a.split(',').map(|x| x.trim().parse()).collect();
        TauIndex::new(g, a.map_err(|_| bad("bad exponent"))?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TauWarning {
    /// `(g, n)` is `(0,1)` or `(0,2)`; no moduli space, value reported as 0.
    Unstable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauValue {
    pub value: Rational,
    pub warning: Option<TauWarning>,
}

/// `(n-3)!/prod a_i!` when `sum a = n - 3`, else 0.
pub fn tau_genus0(a: &[u32]) -> Rational {
    let n = a.len();
    if n < 3 || a.iter().map(|&x| x as usize).sum::<usize>() != n - 3 {
        return Rational::zero();
    }
    let den: BigInt = a.iter().map(|&x| factorial(x as u64)).product();
    Rational::new(factorial(n as u64 - 3), den)
}

fn dfo(m: i64) -> Rational {
    Rational::from_integer(double_factorial_odd(m))
}

pub type TauTable = BTreeMap<TauIndex, Rational>;

/// Memoized evaluator. Readers share the table; insertion takes the write lock
/// briefly after a value is fully computed.
#[derive(Debug, Default)]
pub struct PsiEngine {
    memo: RwLock<TauTable>,
}

impl PsiEngine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn tau(&self, g: u32, a: &[u32]) -> Rational {
        match TauIndex::new(g, a.to_vec()) {
            Ok(idx) => self.tau_integral(&idx),
            Err(_) => Rational::zero(),
        }
    }

    pub fn tau_integral(&self, idx: &TauIndex) -> Rational {
        self.tau_value(idx).value
    }

    pub fn tau_value(&self, idx: &TauIndex) -> TauValue {
        if !idx.is_stable() {
            return TauValue { value: Rational::zero(), warning: Some(TauWarning::Unstable) };
        }
        TauValue { value: self.eval(idx), warning: None }
    }

    fn lookup(&self, g: u32, a: Vec<u32>) -> Rational {
        let idx = TauIndex::new(g, a).expect("nonempty");
        if !idx.is_stable() {
            return Rational::zero();
        }
        self.eval(&idx)
    }

    fn eval(&self, idx: &TauIndex) -> Rational {
        if !idx.satisfies_dimension() {
            return Rational::zero();
        }
        if let Some(v) = self.memo.read().expect("psi memo poisoned").get(idx) {
            return v.clone();
        }
        let value = self.recurse(idx);
        self.memo.write().expect("psi memo poisoned").insert(idx.clone(), value.clone());
        value
    }

    fn recurse(&self, idx: &TauIndex) -> Rational {
        let g = idx.g;
        let a = idx.exponents();
        if g == 0 && a == [0, 0, 0] {
            return Rational::one();
        }
        if g == 1 && a == [1] {
            return rat(1, 24);
        }
        // exponents are sorted, so the last one is the largest and is >= 1 here
        let top = *a.last().expect("nonempty");
        debug_assert!(top >= 1);
        let k = top as i64 - 1;
        let s = &a[..a.len() - 1];
        let mut acc = Rational::zero();

        for j in 0..s.len() {
            let dj = s[j] as i64;
            let mut rest: Vec<u32> = s.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &x)| x).collect();
            rest.push((k + dj) as u32);
            let coeff = dfo(k + dj + 1) / dfo(dj);
            acc += coeff * self.lookup(g, rest);
        }

        let half = rat(1, 2);
        for r in 0..k {
            let sr = k - 1 - r;
            let w = dfo(r + 1) * dfo(sr + 1);
            if g >= 1 {
                let mut inner = s.to_vec();
                inner.push(r as u32);
                inner.push(sr as u32);
                acc += &half * &w * self.lookup(g - 1, inner);
            }
            let mut split = Rational::zero();
            for mask in 0..(1u64 << s.len()) {
                let mut left = vec![r as u32];
                let mut right = vec![sr as u32];
                for (i, &x) in s.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        left.push(x);
                    } else {
                        right.push(x);
                    }
                }
                for g1 in 0..=g {
                    let lv = self.lookup(g1, left.clone());
                    if lv.is_zero() {
                        continue;
                    }
                    split += lv * self.lookup(g - g1, right.clone());
                }
            }
            acc += &half * w * split;
        }
        acc / dfo(k + 2)
    }

    /// Snapshot of every memoized entry.
    pub fn entries(&self) -> Vec<(TauIndex, Rational)> {
        let memo = self.memo.read().expect("psi memo poisoned");
        memo.iter().map(|(k, v)| (k.clone(), v.clone())).collect()
    }

    pub fn len(&self) -> usize {
        self.memo.read().expect("psi memo poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Canonical cache text: one `g;a_1,...,a_n;p/q` line per entry, lines sorted.
    pub fn to_cache_text(&self) -> String {
        let mut lines: Vec<String> = self.entries().iter().map(|(k, v)| format!("{k};{v}")).collect();
        lines.sort();
        let mut out = lines.join("\n");
        if !out.is_empty() {
            out.push('\n');
        }
        out
    }

    /// Merges cache lines into the memo. Returns the number of lines read.
    pub fn load_cache_text(&self, text: &str) -> Result<usize, PsiError> {
        let mut parsed = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let err = |reason: String| PsiError::Parse { line: i + 1, reason };
            let (key, value) = line.rsplit_once(';').ok_or_else(|| err("missing value".into()))?;
            let idx: TauIndex = key.parse().map_err(|e: PsiError| err(e.to_string()))?;
            let value = parse_rational(value).map_err(|e| err(e.to_string()))?;
            if !idx.is_stable() || !idx.satisfies_dimension() {
                return Err(err(format!("index {idx} violates stability or dimension")));
            }
            parsed.push((idx, value));
        }
        let count = parsed.len();
        self.memo.write().expect("psi memo poisoned").extend(parsed);
        Ok(count)
    }
}
