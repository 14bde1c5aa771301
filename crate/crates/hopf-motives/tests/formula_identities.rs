//! Algebraic identities between the closed-form motives, checked as exact
//! polynomial equalities for every twist exponent up to 64.

use hopf_motives::family::{self, FamilyId};
use hopf_motives::jordan::StratumId;
use hopf_motives::poly::MotivePoly;

fn add_all(parts: impl IntoIterator<Item = MotivePoly>) -> MotivePoly {
    parts
        .into_iter()
        .fold(MotivePoly::zero(), |acc, m| acc.add(&m).unwrap())
}

#[test]
fn built_in_identity_suite_holds_for_all_small_n() {
    let expected_names = [
        "gl2_strata_sum",
        "gl2_irr_red_split",
        "agl2_strata_sum",
        "char_red_irr_split",
        "substrata_sums",
        "n1_torus_specialization",
    ];
    for n in 1..=64 {
        let results = family::check_identities(n).unwrap();
        let names: Vec<&str> = results.iter().map(|i| i.name).collect();
        assert_eq!(names, expected_names, "identity catalogue at n={n}");
        for identity in results {
            assert!(identity.holds, "{} fails at n={n}", identity.name);
        }
    }
}

#[test]
fn strata_sum_to_totals_as_polynomials() {
    for n in 1..=64 {
        let gl2_sum = add_all(
            StratumId::ALL
                .into_iter()
                .map(|sid| family::motive(FamilyId::RepGl2Stratum(sid), n).unwrap()),
        );
        assert_eq!(
            gl2_sum,
            family::motive(FamilyId::RepGl2Total, n).unwrap(),
            "GL₂ strata at n={n}"
        );
        let agl2_sum = add_all(
            StratumId::ALL
                .into_iter()
                .map(|sid| family::motive(FamilyId::RepAgl2Stratum(sid), n).unwrap()),
        );
        assert_eq!(
            agl2_sum,
            family::motive(FamilyId::RepAgl2Total, n).unwrap(),
            "AGL₂ strata at n={n}"
        );
    }
}

#[test]
fn splits_sum_to_totals_as_polynomials() {
    for n in 1..=64 {
        let rep_split = family::motive(FamilyId::RepGl2Irr, n)
            .unwrap()
            .add(&family::motive(FamilyId::RepGl2Red, n).unwrap())
            .unwrap();
        assert_eq!(
            rep_split,
            family::motive(FamilyId::RepGl2Total, n).unwrap(),
            "representation split at n={n}"
        );
        let char_split = family::motive(FamilyId::CharGl2Irr, n)
            .unwrap()
            .add(&family::motive(FamilyId::CharGl2Red, n).unwrap())
            .unwrap();
        assert_eq!(
            char_split,
            family::motive(FamilyId::CharGl2Total, n).unwrap(),
            "character split at n={n}"
        );
    }
}

#[test]
fn substrata_sum_to_their_parents_as_polynomials() {
    for n in 1..=64 {
        let agl1_sum = add_all((0..3).map(|s| family::motive(FamilyId::RepAgl1Sub(s), n).unwrap()));
        assert_eq!(
            agl1_sum,
            family::motive(FamilyId::RepAgl1Total, n).unwrap(),
            "AGL₁ substrata at n={n}"
        );
        for sid in StratumId::ALL {
            let sub_sum =
                add_all((0..3).map(|s| family::motive(FamilyId::RepAgl2Sub(sid, s), n).unwrap()));
            assert_eq!(
                sub_sum,
                family::motive(FamilyId::RepAgl2Stratum(sid), n).unwrap(),
                "AGL₂ {sid} substrata at n={n}"
            );
        }
    }
}

#[test]
fn untwisted_case_collapses_to_commuting_pairs() {
    // At n = 1 the relation is plain commutation, the merge stratum is
    // empty, and every pair is reducible.
    let zero = family::motive(FamilyId::RepGl2Stratum(StratumId::new(2, 0).unwrap()), 1).unwrap();
    assert!(zero.is_zero());
    assert!(family::motive(FamilyId::RepGl2Irr, 1).unwrap().is_zero());
    assert_eq!(
        family::motive(FamilyId::RepGl2Red, 1).unwrap(),
        family::motive(FamilyId::RepGl2Total, 1).unwrap()
    );
}

#[test]
fn omega_is_independent_of_the_twist() {
    let reference = family::motive(FamilyId::Omega, 1).unwrap();
    for n in 2..=64 {
        assert_eq!(family::motive(FamilyId::Omega, n).unwrap(), reference);
    }
}
