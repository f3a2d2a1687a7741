use admcube::complexes::ChainComplex;
use admcube::cubes::{
    cal_of_tot_check, cone_check, fib_char_check, h0_totds_check, ordering_check, totisom_check,
    AdmissibilityMethod, Cube, CubeIndex,
};
use admcube::fpmod::FPModule;
use admcube::gen::{self, CubeFlavor};
use admcube::io::{cube_from_file, InstanceFile};
use admcube::{Result, Ring};
use proptest::prelude::*;
use rand::Rng;

const Z: Ring = Ring::Integers;

fn flavored(s: u64) -> Cube {
    let mut rng = gen::rng(s);
    let flavor = [
        CubeFlavor::Admissible,
        CubeFlavor::MonicNonAdmissible,
        CubeFlavor::NonMonic,
    ][rng.gen_range(0..3)];
    gen::flavored_cube(&mut rng, flavor).unwrap()
}

fn squares_to_zero(c: &ChainComplex) -> bool {
    c.degrees()
        .skip(1)
        .all(|k| match (c.boundary(k), c.boundary(k + 1)) {
            (Some(d), Some(e)) => d.compose(e).unwrap().is_zero_map(),
            _ => true,
        })
}

fn load(name: &str) -> Result<Cube> {
    let path = format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"));
    match InstanceFile::parse(&std::fs::read_to_string(path).unwrap())? {
        InstanceFile::Cube(f) => cube_from_file(&f),
        other => panic!("unexpected {}", other.kind()),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn total_complex_is_a_complex(s in any::<u64>()) {
        let x = flavored(s);
        prop_assert!(squares_to_zero(&x.total_complex().unwrap()));
    }

    #[test]
    fn koszul_is_a_complex(s in any::<u64>(), len in 1usize..=4) {
        let mut rng = gen::rng(s);
        let fs = gen::ints(Z, &(0..len).map(|_| rng.gen_range(-9..=9)).collect::<Vec<_>>());
        let x = FPModule::free(Z, rng.gen_range(1..=2));
        prop_assert!(squares_to_zero(&ChainComplex::koszul(&x, &fs)));
    }

    #[test]
    fn admissibility_methods_agree(s in any::<u64>()) {
        let x = flavored(s);
        let verdicts: Vec<bool> = AdmissibilityMethod::ALL
            .iter()
            .map(|&m| x.is_admissible(m).unwrap().admissible)
            .collect();
        prop_assert!(verdicts.iter().all(|&v| v == verdicts[0]), "{verdicts:?}");
        if verdicts[0] {
            prop_assert!(x.is_monic());
        }
    }

    #[test]
    fn cone_and_long_exact_sequence(s in any::<u64>()) {
        let x = flavored(s);
        for label in x.index().labels().to_vec() {
            prop_assert!(cone_check(&x, &label).unwrap().agree);
            prop_assert!(cal_of_tot_check(&x, &label).unwrap().holds);
        }
    }

    #[test]
    fn h0_criterion_is_consistent_on_monic_cubes(s in any::<u64>()) {
        let x = flavored(s);
        prop_assume!(x.is_monic());
        for label in x.index().labels().to_vec() {
            let r = h0_totds_check(&x, &label).unwrap();
            prop_assert!(r.consistent, "{r:?}");
        }
    }

    #[test]
    fn admissible_cubes_have_spherical_totals(s in any::<u64>()) {
        let x = gen::flavored_cube(&mut gen::rng(s), CubeFlavor::Admissible).unwrap();
        let r = totisom_check(&x).unwrap();
        prop_assert!(r.admissible && r.holds, "{r:?}");
        prop_assert!(x.is_fibered().unwrap().fibered);
        prop_assert_eq!(ordering_check(&x).unwrap(), None);
    }

    #[test]
    fn fib_admissibility_matches_the_lattice(s in any::<u64>()) {
        let mut rng = gen::rng(s);
        let r = rng.gen_range(1..=3);
        let maps = gen::subgroup_family(&mut rng, r, 3, 4, false);
        let rep = fib_char_check(&CubeIndex::standard(3), &maps).unwrap();
        prop_assert!(rep.agree, "{rep:?}");
    }
}

#[test]
fn fibered_cube_that_is_not_admissible() {
    let x = load("fibered_not_admissible.json").unwrap();
    assert!(x.is_valid() && x.is_monic());
    assert!(x.is_fibered().unwrap().fibered);
    for m in AdmissibilityMethod::ALL {
        assert!(!x.is_admissible(m).unwrap().admissible);
    }
    assert!(!x.total_complex().unwrap().is_spherical(0).spherical);
}

#[test]
fn coprime_typical_cube_resolves_the_quotient() {
    let x = gen::typical(&[4, 9], 1);
    let r = totisom_check(&x).unwrap();
    assert!(r.admissible && r.holds);
    assert!(r.h0_tot.is_zero());
    let y = gen::typical(&[6], 1);
    assert_eq!(
        totisom_check(&y).unwrap().h0_tot.factor_strings(),
        vec!["6"]
    );
}
