use admcube::gen;
use admcube::linalg::{
    adjugate, determinant, invariant_factors, minors, smith_normal_form, Matrix,
};
use admcube::rings::{Classification, Ring, RingElement};
use proptest::prelude::*;

fn ring_strategy() -> impl Strategy<Value = Ring> {
    prop_oneof![
        Just(Ring::Integers),
        Just(Ring::Rationals),
        prop::sample::select(vec![2u64, 3, 5, 7, 13]).prop_map(|p| Ring::prime_field(p).unwrap()),
        prop::sample::select(vec![4u64, 6, 12, 30]).prop_map(|m| Ring::integers_mod(m).unwrap()),
    ]
}

fn element(ring: Ring, seed: u64) -> RingElement {
    gen::random_element(&mut gen::rng(seed), ring, 40)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(ring in ring_strategy(), s in any::<u64>()) {
        let (a, b, c) = (element(ring, s), element(ring, s ^ 1), element(ring, s ^ 2));
        prop_assert_eq!(ring.mul(&a, &ring.mul(&b, &c)), ring.mul(&ring.mul(&a, &b), &c));
        prop_assert_eq!(ring.add(&a, &ring.add(&b, &c)), ring.add(&ring.add(&a, &b), &c));
        prop_assert_eq!(ring.mul(&a, &ring.add(&b, &c)), ring.add(&ring.mul(&a, &b), &ring.mul(&a, &c)));
        prop_assert_eq!(ring.mul(&a, &b), ring.mul(&b, &a));
        prop_assert_eq!(ring.add(&a, &b), ring.add(&b, &a));
        prop_assert_eq!(ring.sub(&a, &a), ring.zero());
    }

    #[test]
    fn classification_is_consistent(ring in ring_strategy(), s in any::<u64>()) {
        let a = element(ring, s);
        match ring.classify(&a) {
            Classification::Zero => prop_assert!(a.is_zero()),
            Classification::Unit(inv) => prop_assert_eq!(ring.mul(&a, &inv), ring.one()),
            Classification::NonUnitNonZero => match ring.modulus() {
                Some(m) => prop_assert!((0..m as i64).all(|b| ring.mul(&a, &ring.from_i64(b)) != ring.one())),
                None => prop_assert!(ring == Ring::Integers && !a.is_zero() && !a.is_one() && a != ring.from_i64(-1)),
            },
        }
    }

    #[test]
    fn snf_contract(ring in ring_strategy(), s in any::<u64>()) {
        let a = gen::snf_matrix(&mut gen::rng(s), ring, 6);
        let snf = smith_normal_form(&a);
        prop_assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.d.clone());
        prop_assert_eq!(snf.u.mul(&snf.u_inv), Matrix::identity(ring, a.rows()));
        prop_assert_eq!(snf.v_inv.mul(&snf.v), Matrix::identity(ring, a.cols()));
        let diag = snf.diagonal();
        prop_assert!(diag.windows(2).all(|w| ring.divide(&w[1], &w[0]).is_some()));
    }

    #[test]
    fn invariant_factors_ignore_scrambles(s in any::<u64>()) {
        let mut rng = gen::rng(s);
        let a = gen::random_matrix(&mut rng, Ring::Integers, 3, 4, 12);
        let (u, _) = gen::unimodular(&mut rng, 3, 5);
        let (v, _) = gen::unimodular(&mut rng, 4, 5);
        prop_assert_eq!(invariant_factors(&u.mul(&a).mul(&v)), invariant_factors(&a));
    }

    #[test]
    fn adjugate_identity(ring in ring_strategy(), s in any::<u64>(), n in 1usize..=5) {
        let x = gen::random_matrix(&mut gen::rng(s), ring, n, n, 9);
        let adj = adjugate(&x).unwrap();
        let det = Matrix::scalar(ring, n, &determinant(&x).unwrap());
        prop_assert_eq!(adj.mul(&x), det.clone());
        prop_assert_eq!(x.mul(&adj), det);
    }

    #[test]
    fn larger_minors_lie_in_smaller_minor_ideals(s in any::<u64>(), r in 1usize..=4, c in 1usize..=4) {
        let z = Ring::Integers;
        let x = gen::random_matrix(&mut gen::rng(s), z, r, c, 9);
        for t in 1..r.min(c) {
            let g = minors(&x, t).unwrap().iter().fold(z.zero(), |acc, m| z.ideal_sum(&acc, m));
            for m in minors(&x, t + 1).unwrap() {
                prop_assert!(z.divide(&m, &g).is_some());
            }
        }
    }
}

#[test]
fn snf_of_two_three() {
    let z = Ring::Integers;
    let a = Matrix::from_i64(z, 2, 2, &[2, 0, 0, 3]);
    assert_eq!(invariant_factors(&a), gen::ints(z, &[1, 6]));
}
