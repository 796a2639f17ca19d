//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use elsvlab::branch::{Point, PolarDatum};
use elsvlab::diffgroup::{FormalDiffeo, LaurentTail};
use elsvlab::exactalg::rational::rat;
use elsvlab::Rational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rational(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(-6..=6), rng.gen_range(1..=5))
}

pub fn nonzero_rational(rng: &mut impl Rng) -> Rational {
    loop {
        let x = rational(rng);
        if x != rat(0, 1) {
            return x;
        }
    }
}

pub fn diffeo(rng: &mut impl Rng, k: usize) -> FormalDiffeo {
    let mut c = vec![nonzero_rational(rng)];
    c.extend((1..k).map(|_| rational(rng)));
    FormalDiffeo::new(c).unwrap()
}

pub fn unipotent(rng: &mut impl Rng, k: usize) -> FormalDiffeo {
    let mut c = vec![rat(1, 1)];
    c.extend((1..k).map(|_| rational(rng)));
    FormalDiffeo::new(c).unwrap()
}

/// A tail of exact order `k`.
pub fn tail(rng: &mut impl Rng, k: usize) -> LaurentTail {
    let mut c: Vec<Rational> = (1..k).map(|_| rational(rng)).collect();
    c.push(nonzero_rational(rng));
    LaurentTail::of_order(c).unwrap()
}

/// Random polar datum with `n <= max_n` points and total order `d <= max_d`.
pub fn polar_datum(rng: &mut impl Rng, max_d: usize, max_n: usize) -> PolarDatum {
    let n = rng.gen_range(1..=max_n.min(max_d));
    let d = rng.gen_range(n..=max_d);
    // split d into n positive orders
    let mut cuts: Vec<usize> = (1..d).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(n - 1).collect();
    cuts.sort_unstable();
    let mut orders = Vec::with_capacity(n);
    let mut prev = 0;
    for c in cuts.into_iter().chain(std::iter::once(d)) {
        orders.push(c - prev);
        prev = c;
    }
    let mut pool: Vec<Point> = (-4..=4).map(|p| Point::Finite(rat(p, 2))).collect();
    pool.shuffle(rng);
    let mut points: Vec<Point> = pool.into_iter().take(n).collect();
    if rng.gen_bool(0.5) {
        points[0] = Point::Infinity;
    }
    let tails = orders.iter().map(|&k| tail(rng, k)).collect();
    PolarDatum::new(points, tails, rational(rng)).unwrap()
}

/// Random partition of `d`.
pub fn partition(rng: &mut impl Rng, d: u32) -> Vec<u32> {
    let mut rest = d;
    let mut out = Vec::new();
    while rest > 0 {
        let p = rng.gen_range(1..=rest);
        out.push(p);
        rest -= p;
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

pub mod strategies {
    use elsvlab::exactalg::rational::rat;
    use elsvlab::Rational;
    use proptest::prelude::*;

    pub fn rational() -> impl Strategy<Value = Rational> {
        (-6i64..=6, 1i64..=5).prop_map(|(n, d)| rat(n, d))
    }

    pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
        ((1i64..=6), any::<bool>(), 1i64..=5).prop_map(|(n, neg, d)| rat(if neg { -n } else { n }, d))
    }

    pub fn small_int() -> impl Strategy<Value = Rational> {
        (-2i64..=2).prop_map(|n| rat(n, 1))
    }
}
