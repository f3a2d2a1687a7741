use admcube::bue::{
    be_check, fitting_ideal, grade, grade_over_integers, BeMode, GradeValue, IdealRep,
};
use admcube::complexes::ChainComplex;
use admcube::fpmod::{FPModule, ModuleMorphism};
use admcube::gen;
use admcube::{Matrix, Ring, RingElement};
use proptest::prelude::*;
use rand::Rng;

const Z: Ring = Ring::Integers;

/// Grade through the Koszul complex on exactly the given generators.
fn koszul_grade(ring: Ring, gens: &[RingElement]) -> GradeValue {
    let ideal = IdealRep::new(ring, gens.to_vec());
    if ideal.is_zero() {
        return GradeValue::Finite(0);
    }
    if ideal.is_unit() {
        return GradeValue::Infinite;
    }
    let k = ChainComplex::koszul(&FPModule::free(ring, 1), gens);
    let top = (0..=gens.len())
        .rev()
        .find(|&i| !k.homology_shape(i as i64).is_zero())
        .unwrap_or(0);
    GradeValue::Finite(gens.len() - top)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exactness_matches_the_grade_condition(s in any::<u64>()) {
        let c = gen::be_complex(&mut gen::rng(s)).unwrap();
        let r = be_check(&c, BeMode::EquivalenceTest).unwrap();
        prop_assert_eq!(r.equivalent, Some(true), "{:?}", r);
    }

    #[test]
    fn grade_ignores_redundant_generators(s in any::<u64>(), len in 1usize..=3) {
        let mut rng = gen::rng(s);
        let base: Vec<i64> = (0..len).map(|_| rng.gen_range(-12..=12)).collect();
        let mut gens = gen::ints(Z, &base);
        let combo = base.iter().map(|&b| b * rng.gen_range(-3..=3)).sum::<i64>();
        gens.push(Z.from_i64(combo));
        let ideal = IdealRep::new(Z, gen::ints(Z, &base));
        prop_assert_eq!(grade(&ideal), koszul_grade(Z, &gens));
        prop_assert_eq!(Some(grade(&ideal)), grade_over_integers(&ideal));
    }

    #[test]
    fn fitting_ideals_descend(s in any::<u64>(), r in 1usize..=3, c in 1usize..=3) {
        let m = gen::random_matrix(&mut gen::rng(s), Z, r, c, 9);
        let phi = ModuleMorphism::new(FPModule::free(Z, c), FPModule::free(Z, r), m).unwrap();
        for t in 0..=r.min(c) {
            let big = fitting_ideal(&phi, t + 1).unwrap();
            let small = fitting_ideal(&phi, t).unwrap();
            prop_assert!(Z.divide(&big.canonical, &small.canonical).is_some());
        }
    }
}

#[test]
fn koszul_examples() {
    let k = |v: &[i64]| ChainComplex::koszul(&FPModule::free(Z, 1), &gen::ints(Z, v));
    let good = be_check(&k(&[2, 3]), BeMode::EquivalenceTest).unwrap();
    assert!(good.spherical && good.criterion);
    assert!(good.fitting.iter().all(IdealRep::is_unit));
    let bad = be_check(&k(&[2, 2]), BeMode::EquivalenceTest).unwrap();
    assert!(!bad.spherical && !bad.criterion);
    assert_eq!(bad.grades[1], Some(GradeValue::Finite(1)));
}

#[test]
fn grade_over_a_field() {
    let q = Ring::Rationals;
    assert_eq!(
        grade(&IdealRep::new(q, vec![q.from_i64(3)])),
        GradeValue::Infinite
    );
    assert_eq!(grade(&IdealRep::zero(q)), GradeValue::Finite(0));
    let m = Matrix::from_i64(Z, 1, 1, &[0]);
    let phi = ModuleMorphism::new(FPModule::free(Z, 1), FPModule::free(Z, 1), m).unwrap();
    assert!(fitting_ideal(&phi, 1).unwrap().is_zero());
}
