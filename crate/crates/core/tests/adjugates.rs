use admcube::adjugates::{
    adjugate_cocube, cofactor_adjugate, dual_adjugate, main_theorem_check, patching_family_of,
    verify_adjugate,
};
use admcube::bue::relation_with_be;
use admcube::gen;
use admcube::linalg::Matrix;
use admcube::Ring;
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn scalar_adjugates_satisfy_the_main_theorem(s in any::<u64>(), n in 1usize..=3) {
        let mut rng = gen::rng(s);
        let rank = rng.gen_range(1..=2);
        let (x, a) = gen::scalar_adjugate_pair(&mut rng, n, rank).unwrap();
        prop_assert!(verify_adjugate(&x, &a, true).unwrap().valid);
        prop_assert!(adjugate_cocube(&x, &a).unwrap().is_valid());
        let r = main_theorem_check(&x, &a).unwrap();
        prop_assert!(r.hypotheses && r.conclusion && r.holds, "{r:?}");
        prop_assert_eq!(r.two_pullback_typical, Some(true));
        prop_assert_eq!(r.full_pullback_is_x, Some(true));
    }

    #[test]
    fn cofactor_adjugates_on_conjugated_free_cubes(s in any::<u64>(), n in 1usize..=3, r in 1usize..=3) {
        let mut rng = gen::rng(s);
        let x = gen::conjugated_free_cube(&mut rng, n, r).unwrap();
        let a = cofactor_adjugate(&x).unwrap();
        let rep = verify_adjugate(&x, &a, false).unwrap();
        prop_assert!(rep.axiom_i && rep.axiom_ii, "{rep:?}");
        let rel = relation_with_be(&x, &a).unwrap();
        prop_assert!(rel.equal_rank_free && rel.implication_ok, "{rel:?}");
    }

    #[test]
    fn dual_of_the_dual_is_the_original(s in any::<u64>()) {
        let (x, a) = gen::main_theorem_pair(&mut gen::rng(s)).unwrap();
        let (y, b) = dual_adjugate(&x, &a).unwrap();
        prop_assert!(verify_adjugate(&y, &b, false).unwrap().valid);
        let (z, c) = dual_adjugate(&y, &b).unwrap();
        prop_assert_eq!(z, x);
        prop_assert_eq!(c, a);
    }

    #[test]
    fn patching_identities_hold(s in any::<u64>()) {
        let (x, a) = gen::main_theorem_pair(&mut gen::rng(s)).unwrap();
        let p = patching_family_of(&x, &a).unwrap();
        prop_assert!(p.identities.all(), "{:?}", p.identities);
        prop_assert_eq!(p.family.len(), 1 << x.dim());
    }
}

#[test]
fn adjugate_of_a_two_by_two() {
    let z = Ring::Integers;
    let x = Matrix::from_i64(z, 2, 2, &[2, 1, 0, 3]);
    assert_eq!(
        admcube::linalg::adjugate(&x).unwrap(),
        Matrix::from_i64(z, 2, 2, &[3, -1, 0, 2])
    );
}
