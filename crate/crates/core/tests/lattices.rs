use admcube::cubes::{sequence_check, SequenceMode};
use admcube::fpmod::{FPModule, ModuleMorphism, Subobject};
use admcube::gen;
use admcube::lattices::{
    chain, diamond, family_class, pentagon, product, remark_univ_adm, subgroup_lattice, FamilyMode,
    FiniteLattice, LatticeOps, ModuleLattice,
};
use admcube::Ring;
use proptest::prelude::*;

const Z: Ring = Ring::Integers;

fn regular(fs: &[i64], m: &FPModule) -> bool {
    sequence_check(&gen::ints(Z, fs), m, SequenceMode::RegularOrdered)
        .unwrap()
        .holds
}

fn lattice_regular(fs: &[i64], m: &FPModule) -> bool {
    let l = ModuleLattice::new(m);
    let fam: Vec<Subobject> = gen::ints(Z, fs)
        .iter()
        .map(|f| Subobject::image_of(&ModuleMorphism::scalar(m, f)))
        .collect();
    family_class(
        &l,
        &fam,
        &FamilyMode::RegularSequence((0..fs.len()).collect()),
    )
    .unwrap()
    .holds
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_lattices_are_modular(s in any::<u64>()) {
        let l = gen::modular_lattice(&mut gen::rng(s)).unwrap();
        prop_assert!(l.is_modular().modular);
        prop_assert!(l.semi_modular_law_holds());
    }

    #[test]
    fn universally_admissible_remarks(s in any::<u64>(), k in 1usize..=4) {
        let mut rng = gen::rng(s);
        let l = gen::modular_lattice(&mut rng).unwrap();
        let fam = gen::lattice_family(&mut rng, &l, k);
        let r = remark_univ_adm(&l, &fam).unwrap();
        prop_assert!(r.restriction && r.small_families && r.recursive_characterisation && r.three_elements, "{r:?}");
    }

    #[test]
    fn regular_sequences_match_their_submodules(s in any::<u64>(), m in prop::sample::select(vec![0i64, 4, 12, 30, 36])) {
        let mut rng = gen::rng(s);
        let module = if m == 0 { FPModule::free(Z, 1) } else { FPModule::cyclic(Z, &Z.from_i64(m)) };
        let fs: Vec<i64> = (0..3).map(|_| gen::non_unit(&mut rng, 30)).collect();
        let pairwise = (0..3).all(|i| (0..3).all(|j| i == j || regular(&[fs[i], fs[j]], &module)));
        prop_assume!(pairwise);
        prop_assert_eq!(lattice_regular(&fs, &module), regular(&fs, &module), "{:?} on Z/{}", fs, m);
    }
}

#[test]
fn catalog_lattices() {
    for l in [chain(4), diamond(3), product(&chain(2), &chain(3))] {
        assert!(l.is_modular().modular);
        assert!(l.semi_modular_law_holds());
    }
    assert!(chain(5).is_distributive());
    assert!(!diamond(3).is_distributive());
    let n5 = pentagon();
    let r = n5.is_modular();
    assert!(!r.modular && r.witness.is_some());
    assert!(n5.semi_modular_law_holds());
}

#[test]
fn klein_four_group() {
    let l = subgroup_lattice(&[2, 2]).unwrap();
    assert_eq!(l.lattice.len(), 5);
    assert!(l.lattice.is_modular().modular);
    assert!(!l.lattice.is_distributive());
}

#[test]
fn three_lines_in_the_plane_are_not_admissible() {
    let p = FPModule::free(Z, 2);
    let l = ModuleLattice::new(&p);
    let line = |v: &[i64]| Subobject::new(&p, &admcube::Matrix::from_i64(Z, 2, 1, v)).unwrap();
    let fam = [line(&[1, 0]), line(&[0, 1]), line(&[1, 1])];
    assert!(
        !family_class(&l, &fam, &FamilyMode::Admissible)
            .unwrap()
            .holds
    );
    assert!(
        family_class(&l, &fam[..2], &FamilyMode::Admissible)
            .unwrap()
            .holds
    );
    assert!(l.leq(&fam[0], &l.top().unwrap()));
}

#[test]
fn finite_lattice_from_leq_table() {
    let t = vec![vec![true, true], vec![false, true]];
    let l = FiniteLattice::from_leq(vec!["0".into(), "1".into()], t).unwrap();
    assert_eq!(l.top_element(), 1);
    assert!(FiniteLattice::from_leq(
        vec!["a".into(), "b".into()],
        vec![vec![true, false], vec![false, true]]
    )
    .is_err());
}
