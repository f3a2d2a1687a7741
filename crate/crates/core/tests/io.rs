use admcube::gen::{self, CubeFlavor};
use admcube::io::{
    adjugate_from_file, adjugate_to_file, complex_from_file, complex_to_file, cube_from_file,
    cube_to_file, double_from_file, double_to_file, lattice_from_file, lattice_to_file, BundleFile,
    InstanceFile,
};
use proptest::prelude::*;

fn reparse(f: InstanceFile) -> InstanceFile {
    InstanceFile::parse(&f.to_json()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cubes_survive_json(s in any::<u64>()) {
        let x = gen::flavored_cube(&mut gen::rng(s), CubeFlavor::MonicNonAdmissible).unwrap();
        let InstanceFile::Cube(f) = reparse(InstanceFile::Cube(cube_to_file(&x))) else { panic!() };
        prop_assert_eq!(cube_from_file(&f).unwrap(), x);
    }

    #[test]
    fn complexes_survive_json(s in any::<u64>()) {
        let c = gen::be_complex(&mut gen::rng(s)).unwrap();
        let InstanceFile::BeComplex(f) = reparse(InstanceFile::BeComplex(complex_to_file(&c))) else { panic!() };
        prop_assert_eq!(complex_from_file(&f).unwrap(), c);
    }

    #[test]
    fn adjugate_bundles_and_patches_survive_json(s in any::<u64>()) {
        let (x, a) = gen::main_theorem_pair(&mut gen::rng(s)).unwrap();
        let bundle = BundleFile { cube: cube_to_file(&x), adjugate: Some(adjugate_to_file(&a)) };
        let InstanceFile::AdjugateBundle(b) = reparse(InstanceFile::AdjugateBundle(bundle)) else { panic!() };
        let y = cube_from_file(&b.cube).unwrap();
        prop_assert_eq!(&y, &x);
        prop_assert_eq!(adjugate_from_file(&y, b.adjugate.as_ref().unwrap()).unwrap(), a.clone());
        let pat = gen::dual_patch(&x, &a).unwrap();
        let InstanceFile::Double(d) = reparse(InstanceFile::Double(double_to_file(&pat))) else { panic!() };
        prop_assert_eq!(double_from_file(&d).unwrap(), pat);
    }

    #[test]
    fn lattices_survive_json(s in any::<u64>()) {
        let mut rng = gen::rng(s);
        let l = gen::modular_lattice(&mut rng).unwrap();
        let fam: Vec<(String, usize)> = gen::lattice_family(&mut rng, &l, 3)
            .into_iter()
            .enumerate()
            .map(|(i, e)| (format!("x{i}"), e))
            .collect();
        let InstanceFile::Lattice(f) = reparse(InstanceFile::Lattice(lattice_to_file(&l, &fam))) else { panic!() };
        let (back, back_fam) = lattice_from_file(&f).unwrap();
        prop_assert_eq!(back.leq_table(), l.leq_table());
        prop_assert_eq!(back_fam, fam);
    }
}

#[test]
fn wrong_kind_and_missing_fields_are_rejected() {
    assert!(InstanceFile::parse(r#"{"kind": "torus"}"#).is_err());
    assert!(InstanceFile::parse(r#"{"kind": "cube", "ring": "Z"}"#).is_err());
    assert!(InstanceFile::parse("not json").is_err());
}
