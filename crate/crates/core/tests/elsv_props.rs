use elsvlab::elsv::{elsv_evaluate, elsv_expand, genus0_closed_form, sweep_profiles, HodgeTable, Verifier};
use elsvlab::psi::PsiEngine;
use elsvlab::symgrp::{hurwitz_character, partitions, CharacterBudget, Profile};
use num_bigint::BigInt;
use proptest::prelude::*;

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn small_profiles_agree_with_both_counts() {
    let psi = PsiEngine::new();
    let mut verifier = Verifier::new(&psi);
    let mut against_brute = 0;
    for p in sweep_profiles(5, 1) {
        let report = verifier.verify(&p).unwrap();
        assert!(report.is_equal(), "{p}: {report:?}");
        assert!(report.psi_agrees && report.calibration_consistent, "{p}");
        if report.brute.is_some() {
            against_brute += 1;
        }
    }
    assert!(against_brute > 10);
}

#[test]
fn genus0_closed_law_up_to_six_points() {
    let budget = CharacterBudget::default();
    for d in 1..=8u32 {
        for l in partitions(d) {
            if l.parts().len() > 6 {
                continue;
            }
            let p = Profile::new(0, l.parts().to_vec()).unwrap();
            if p.is_unstable() {
                continue;
            }
            let closed = genus0_closed_form(&p);
            assert_eq!(hurwitz_character(&p, &budget).unwrap(), closed, "{p}");
            assert_eq!(elsv_evaluate(&p, &HodgeTable::genus0(p.n() as usize)).unwrap(), closed, "{p}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(80))]

    #[test]
    fn terms_have_top_degree_and_full_count(g in 0u32..=3, parts in proptest::collection::vec(1u32..=4, 1..=4)) {
        let p = Profile::new(g, parts.clone()).unwrap();
        prop_assume!(!p.is_unstable());
        let e = elsv_expand(&p).unwrap();
        let n = parts.len() as u64;
        let top = 3 * g as i64 - 3 + n as i64;
        let mut expected = 0;
        for j in 0..=g as i64 {
            if top - j >= 0 {
                expected += binomial((top - j) as u64 + n - 1, n - 1);
            }
        }
        prop_assert_eq!(e.terms.len() as u64, expected);
        for t in &e.terms {
            prop_assert_eq!(t.exponents.iter().sum::<u32>() as i64 + t.j as i64, top);
            prop_assert_eq!(t.sign, if t.j % 2 == 0 { 1 } else { -1 });
            let c: BigInt = parts.iter().zip(&t.exponents).map(|(&k, &a)| BigInt::from(k).pow(a)).product();
            prop_assert_eq!(&t.coefficient, &c);
        }
    }
}
