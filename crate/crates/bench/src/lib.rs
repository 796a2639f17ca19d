//! Fixed inputs shared by the benchmarks.

use elsvlab::branch::{Point, PolarDatum};
use elsvlab::diffgroup::LaurentTail;
use elsvlab::exactalg::rational::{int, rat};
use elsvlab::symgrp::Profile;

/// Profiles the brute-force search handles within its default budget.
pub fn brute_profiles() -> Vec<Profile> {
    [(0, vec![1, 1, 1]), (0, vec![2, 2, 1]), (1, vec![2, 1, 1]), (2, vec![3]), (2, vec![4])]
        .into_iter()
        .map(|(g, k)| Profile::new(g, k).expect("positive parts"))
        .collect()
}

/// Profiles for the character route, up to degree 10.
pub fn character_profiles() -> Vec<Profile> {
    [(0, vec![3, 2, 1]), (1, vec![4, 2]), (2, vec![5, 3]), (3, vec![10])]
        .into_iter()
        .map(|(g, k)| Profile::new(g, k).expect("positive parts"))
        .collect()
}

/// Poles at infinity, 0 and 1 of orders 3, 2 and 1.
pub fn three_pole_datum() -> PolarDatum {
    let tails = vec![
        LaurentTail::of_order(vec![int(1), int(0), rat(1, 2)]).unwrap(),
        LaurentTail::of_order(vec![int(-1), int(2)]).unwrap(),
        LaurentTail::of_order(vec![rat(3, 2)]).unwrap(),
    ];
    PolarDatum::new(vec![Point::Infinity, Point::Finite(int(0)), Point::Finite(int(1))], tails, int(0)).unwrap()
}
