use admcube::fpmod::{pullback, FPModule, ModuleMorphism, ModuleShape, Subobject};
use admcube::gen::{self, GenRng};
use admcube::{Matrix, Ring};
use proptest::prelude::*;
use rand::Rng;

const Z: Ring = Ring::Integers;

fn random_module(rng: &mut GenRng) -> FPModule {
    match rng.gen_range(0..3) {
        0 => FPModule::free(Z, rng.gen_range(1..=3)),
        1 => {
            let fs: Vec<i64> = (0..rng.gen_range(1..=3))
                .map(|_| rng.gen_range(0..=12))
                .collect();
            FPModule::from_factors(Z, &gen::ints(Z, &fs)).unwrap()
        }
        _ => {
            let g = rng.gen_range(1..=3);
            let r = rng.gen_range(0..=2);
            FPModule::new(Z, g, gen::random_matrix(rng, Z, g, r, 6)).unwrap()
        }
    }
}

fn map_from_free(rng: &mut GenRng, k: usize, target: &FPModule) -> ModuleMorphism {
    let m = gen::random_matrix(rng, Z, target.gens(), k, 6);
    ModuleMorphism::new(FPModule::free(Z, k), target.clone(), m).unwrap()
}

fn random_subobject(rng: &mut GenRng, ambient: &FPModule) -> Subobject {
    let k = rng.gen_range(0..=2);
    Subobject::new(ambient, &gen::random_matrix(rng, Z, ambient.gens(), k, 6)).unwrap()
}

fn shape_sum(parts: &[FPModule]) -> ModuleShape {
    ModuleShape::sum(&parts.iter().map(FPModule::shape).collect::<Vec<_>>()).unwrap()
}

/// Free rank and, when the module is finite, its order.
fn size(shape: &ModuleShape) -> (usize, Option<i128>) {
    let rank = shape.factors.iter().filter(|f| f.is_zero()).count();
    let order = (rank == 0).then(|| {
        shape
            .factors
            .iter()
            .map(|f| f.to_string().parse::<i128>().unwrap().abs())
            .product()
    });
    (rank, order)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn kernel_and_cokernel_contracts(s in any::<u64>()) {
        let mut rng = gen::rng(s);
        let target = random_module(&mut rng);
        let k = rng.gen_range(1..=3);
        let f = map_from_free(&mut rng, k, &target);
        let ker = f.kernel();
        let cok = f.cokernel();
        prop_assert!(ker.map.is_mono());
        prop_assert!(cok.map.is_epi());
        prop_assert!(f.compose(&ker.map).unwrap().is_zero_map());
        prop_assert!(cok.map.compose(&f).unwrap().is_zero_map());
        let class = f.class();
        prop_assert_eq!(class.is_iso, class.is_mono && class.is_epi);
    }

    #[test]
    fn pullback_mediates_uniquely(s in any::<u64>()) {
        let mut rng = gen::rng(s);
        let c = random_module(&mut rng);
        let (ka, kb) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
        let f = map_from_free(&mut rng, ka, &c);
        let g = map_from_free(&mut rng, kb, &c);
        let p = pullback(&f, &g).unwrap();
        prop_assert!(f.compose(&p.to_f_source).unwrap().equals(&g.compose(&p.to_g_source).unwrap()));
        let w = map_from_free(&mut rng, 2, &p.module);
        let (a, b) = (p.to_f_source.compose(&w).unwrap(), p.to_g_source.compose(&w).unwrap());
        let m = p.mediate(&a, &b).unwrap();
        prop_assert!(m.equals(&w));
        prop_assert!(p.to_f_source.compose(&m).unwrap().equals(&a));
        prop_assert!(p.to_g_source.compose(&m).unwrap().equals(&b));
    }

    #[test]
    fn subquotient_exact_sequence(s in any::<u64>()) {
        let mut rng = gen::rng(s);
        let ambient = random_module(&mut rng);
        let b = random_subobject(&mut rng, &ambient);
        let d = random_subobject(&mut rng, &ambient);
        let a = b.meet(&random_subobject(&mut rng, &ambient)).unwrap();
        let c = d.meet(&random_subobject(&mut rng, &ambient)).unwrap();
        let lhs = shape_sum(&[
            b.meet(&d).unwrap().quotient(&a.meet(&c).unwrap()).unwrap(),
            b.join(&d).unwrap().quotient(&a.join(&c).unwrap()).unwrap(),
        ]);
        let rhs = shape_sum(&[b.quotient(&a).unwrap(), d.quotient(&c).unwrap()]);
        prop_assert_eq!(size(&lhs), size(&rhs));
    }

    #[test]
    fn subobjects_satisfy_the_modular_law(s in any::<u64>()) {
        let mut rng = gen::rng(s);
        let ambient = random_module(&mut rng);
        let c = random_subobject(&mut rng, &ambient);
        let a = c.meet(&random_subobject(&mut rng, &ambient)).unwrap();
        let b = random_subobject(&mut rng, &ambient);
        let lhs = a.join(&b.meet(&c).unwrap()).unwrap();
        let rhs = a.join(&b).unwrap().meet(&c).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn two_and_three_in_the_integers() {
    let z1 = FPModule::free(Z, 1);
    let two = Subobject::new(&z1, &Matrix::from_i64(Z, 1, 1, &[2])).unwrap();
    let three = Subobject::new(&z1, &Matrix::from_i64(Z, 1, 1, &[3])).unwrap();
    assert_eq!(
        two.meet(&three).unwrap(),
        Subobject::new(&z1, &Matrix::from_i64(Z, 1, 1, &[6])).unwrap()
    );
    assert_eq!(two.join(&three).unwrap(), Subobject::whole(&z1));
}
