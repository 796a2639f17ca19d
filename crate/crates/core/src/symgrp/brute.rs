//! Depth-first enumeration of transitive transposition factorizations.
//!
//! The tuple `(tau_1, ..., tau_r)` is built left to right while tracking the running
//! product `pi_i = tau_i ... tau_1`, its cycle count, and the orbit partition of the
//! generated subgroup (a relabeling union-find). A prefix is abandoned when the
//! remaining transpositions cannot reach `n` cycles while merging all orbits:
//! every orbit merge joins two cycles, so with `m` steps left from `c` cycles the
//! number of joins is `(m + c - n) / 2`, which must be at least `#orbits - 1`.
//!
//! Conjugation acts freely enough on the first transposition that the count is
//! `C(d,2)` times the count with `tau_1 = (0 1)`.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{labeled_weight, HurwitzError, Profile};
use crate::exactalg::rational::Rational;

const MAX_D: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_d: u32,
    pub max_r: u32,
    pub deadline: Option<Instant>,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget { max_d: 6, max_r: 8, deadline: None }
    }
}

impl EnumerationBudget {
    pub fn unlimited() -> Self {
        EnumerationBudget { max_d: MAX_D as u32, max_r: u32::MAX, deadline: None }
    }

    pub fn admits(&self, p: &Profile) -> bool {
        p.d() <= self.max_d && p.r() <= self.max_r && p.d() as usize <= MAX_D
    }

    /// `C(d,2)^r`, the size of the unpruned tuple space.
    pub fn estimate(p: &Profile) -> BigInt {
        let d = p.d() as u64;
        num_traits::pow(BigInt::from(d * d.saturating_sub(1) / 2), p.r() as usize)
    }
}

type Perm = [u8; MAX_D];

struct Search {
    d: usize,
    r: usize,
    n: usize,
    target: Vec<u32>,
    transpositions: Vec<(u8, u8)>,
    deadline: Option<Instant>,
    nodes: u64,
    timed_out: bool,
}

impl Search {
    fn same_cycle(&self, perm: &Perm, a: u8, b: u8) -> bool {
        let mut x = perm[a as usize];
        while x != a {
            if x == b {
                return true;
            }
            x = perm[x as usize];
        }
        false
    }

    fn cycle_type(&self, perm: &Perm) -> Vec<u32> {
        let mut seen = [false; MAX_D];
        let mut out = Vec::new();
        for s in 0..self.d {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = perm[x] as usize;
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    fn feasible(&self, depth: usize, cycles: usize, blocks: usize) -> bool {
        let rem = self.r - depth;
        if cycles.abs_diff(self.n) > rem {
            return false;
        }
        let joins = (rem + cycles - self.n) / 2;
        joins + 1 >= blocks
    }

    fn dfs(&mut self, depth: usize, perm: Perm, cycles: usize, comp: Perm, blocks: usize) -> u64 {
        self.nodes += 1;
        if self.nodes & 0xF_FFFF == 1 {
            if let Some(dl) = self.deadline {
                if Instant::now() >= dl {
                    self.timed_out = true;
                }
            }
        }
        if self.timed_out {
            return 0;
        }
        if depth == self.r {
            let ok = cycles == self.n && blocks == 1 && self.cycle_type(&perm) == self.target;
            return ok as u64;
        }
        let mut total = 0u64;
        for i in 0..self.transpositions.len() {
            let (a, b) = self.transpositions[i];
            let (next_perm, next_cycles, next_comp, next_blocks) = apply(self, &perm, cycles, &comp, blocks, a, b);
            if self.feasible(depth + 1, next_cycles, next_blocks) {
                total += self.dfs(depth + 1, next_perm, next_cycles, next_comp, next_blocks);
            }
        }
        total
    }
}

fn apply(
    s: &Search,
    perm: &Perm,
    cycles: usize,
    comp: &Perm,
    blocks: usize,
    a: u8,
    b: u8,
) -> (Perm, usize, Perm, usize) {
    let split = s.same_cycle(perm, a, b);
    let mut p = *perm;
    for x in p.iter_mut().take(s.d) {
        if *x == a {
            *x = b;
        } else if *x == b {
            *x = a;
        }
    }
    let cycles = if split { cycles + 1 } else { cycles - 1 };
    let mut c = *comp;
    let mut blocks = blocks;
    let (ca, cb) = (comp[a as usize], comp[b as usize]);
    if ca != cb {
        for x in c.iter_mut().take(s.d) {
            if *x == cb {
                *x = ca;
            }
        }
        blocks -= 1;
    }
    (p, cycles, c, blocks)
}

/// Number of transposition tuples `(tau_1..tau_r)` generating a transitive
/// subgroup whose product has cycle type `sorted(k)`.
pub fn count_transitive_factorizations(p: &Profile, budget: &EnumerationBudget) -> Result<BigInt, HurwitzError> {
    if !budget.admits(p) {
        return Err(HurwitzError::BudgetExceeded {
            d: p.d(),
            r: p.r(),
            max_d: budget.max_d.min(MAX_D as u32),
            max_r: budget.max_r,
            estimated: EnumerationBudget::estimate(p),
        });
    }
    let d = p.d() as usize;
    let r = p.r() as usize;
    let mut target = p.parts().to_vec();
    target.sort_unstable_by(|a, b| b.cmp(a));
    if r == 0 {
        // only the empty tuple; identity is transitive only on one point
        return Ok(BigInt::from((d == 1) as u32));
    }
    if d < 2 {
        return Ok(BigInt::zero());
    }
    let mut transpositions = Vec::new();
    for a in 0..d as u8 {
        for b in a + 1..d as u8 {
            transpositions.push((a, b));
        }
    }
    let mut search = Search {
        d,
        r,
        n: p.n() as usize,
        target,
        transpositions,
        deadline: budget.deadline,
        nodes: 0,
        timed_out: false,
    };
    let mut ident: Perm = [0; MAX_D];
    for (i, x) in ident.iter_mut().enumerate() {
        *x = i as u8;
    }
    let (perm, cycles, comp, blocks) = apply(&search, &ident, d, &ident, d, 0, 1);
    let fixed_first = if search.feasible(1, cycles, blocks) { search.dfs(1, perm, cycles, comp, blocks) } else { 0 };
    if search.timed_out {
        return Err(HurwitzError::TimeLimit { nodes: search.nodes });
    }
    let pairs = (d * (d - 1) / 2) as u64;
    Ok(BigInt::from(fixed_first) * BigInt::from(pairs))
}

/// `mu_{g,k}` by direct enumeration.
pub fn hurwitz_brute(p: &Profile, budget: &EnumerationBudget) -> Result<Rational, HurwitzError> {
    let tuples = count_transitive_factorizations(p, budget)?;
    Ok(labeled_weight(p, tuples))
}
