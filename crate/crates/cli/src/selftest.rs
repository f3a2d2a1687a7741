//! Randomised invariant suites, each seeded from the master seed by name.

use admcube::adjugates::{app1_check, main_theorem_check};
use admcube::bue::{be_check, BeMode};
use admcube::cubes::{
    fib_char_check, totisom_check, x_sequence_lemma, AdmissibilityMethod, Cube, CubeIndex,
};
use admcube::doublecubes::{dct_check, DctVariant};
use admcube::fpmod::FPModule;
use admcube::gen::{self, CubeFlavor, GenRng};
use admcube::lattices::{remark_univ_adm, transfer_check, LatticeOps, TransferVariant};
use admcube::linalg::{adjugate, determinant, smith_normal_form, Matrix};
use admcube::par;
use admcube::{Result, Ring};
use rand::Rng;
use serde_json::{json, Value};

use crate::{CmdResult, Outcome, Size};

const Z: Ring = Ring::Integers;

type Suite = fn(&mut GenRng, usize) -> Result<usize>;

/// Each suite returns the number of failing instances out of `n`.
const SUITES: [(&str, Suite); 10] = [
    ("sequences", sequences),
    ("admissibility", admissibility),
    ("totisom", totisom),
    ("fibered", fibered),
    ("lattices", lattices),
    ("main_theorem", main_theorem),
    ("double_cubes", double_cubes),
    ("exactness", exactness),
    ("sequence_products", sequence_products),
    ("linear_algebra", linear_algebra),
];

/// Typical admissibility and the sequence condition agree, and a sequence
/// always gives an admissible family of submodules.
fn sequences(rng: &mut GenRng, n: usize) -> Result<usize> {
    let x = FPModule::free(Z, 1);
    let mut bad = 0;
    for _ in 0..n {
        let r = x_sequence_lemma(&gen::ints(Z, &gen::lemma_family(rng, 30)), &x)?;
        let forward = !r.x_sequence || (r.admissible_family && r.universally_admissible_family);
        bad += (r.typical_admissible != r.x_sequence || !forward) as usize;
    }
    Ok(bad)
}

fn admissibility(rng: &mut GenRng, n: usize) -> Result<usize> {
    let flavors = [
        CubeFlavor::Admissible,
        CubeFlavor::MonicNonAdmissible,
        CubeFlavor::NonMonic,
    ];
    let mut bad = 0;
    for i in 0..n {
        let x = gen::flavored_cube(rng, flavors[i % 3])?;
        let v: Vec<bool> = AdmissibilityMethod::ALL
            .iter()
            .map(|&m| x.is_admissible(m).map(|a| a.admissible))
            .collect::<Result<_>>()?;
        bad += v.iter().any(|&b| b != v[0]) as usize;
    }
    Ok(bad)
}

fn totisom(rng: &mut GenRng, n: usize) -> Result<usize> {
    let mut bad = 0;
    for _ in 0..n {
        let r = totisom_check(&gen::flavored_cube(rng, CubeFlavor::Admissible)?)?;
        bad += !(r.admissible && r.holds) as usize;
    }
    Ok(bad)
}

fn fibered(rng: &mut GenRng, n: usize) -> Result<usize> {
    let mut bad = 0;
    for _ in 0..n {
        let x = gen::flavored_cube(rng, CubeFlavor::Admissible)?;
        bad += !x.is_fibered()?.fibered as usize;
        let r = rng.gen_range(1..=3);
        let maps = gen::subgroup_family(rng, r, 3, 4, false);
        bad += !fib_char_check(&CubeIndex::standard(3), &maps)?.agree as usize;
    }
    Ok(bad)
}

fn lattices(rng: &mut GenRng, n: usize) -> Result<usize> {
    let variants = [
        TransferVariant::PropAdmSeqLem,
        TransferVariant::CorAdmSeqCor,
        TransferVariant::CorWithRemark,
    ];
    let mut bad = 0;
    for i in 0..n {
        let l = gen::modular_lattice(rng)?;
        bad += !(l.is_modular().modular && l.semi_modular_law_holds()) as usize;
        let k = rng.gen_range(1..=4);
        let fam = gen::lattice_family(rng, &l, k);
        let r = remark_univ_adm(&l, &fam)?;
        bad += !(r.restriction
            && r.small_families
            && r.recursive_characterisation
            && r.three_elements) as usize;
        let variant = variants[i % 3];
        let second = match variant {
            TransferVariant::PropAdmSeqLem => gen::lattice_family(rng, &l, 1),
            _ => {
                let c = gen::lattice_family(rng, &l, k);
                fam.iter().zip(&c).map(|(a, b)| l.meet(a, b)).collect()
            }
        };
        let reports = transfer_check(&l, variant, &fam, &second, true)?;
        bad += reports.iter().any(|r| !r.implication_ok) as usize;
    }
    Ok(bad)
}

fn main_theorem(rng: &mut GenRng, n: usize) -> Result<usize> {
    let mut bad = 0;
    for _ in 0..n {
        let (x, a) = gen::main_theorem_pair(rng)?;
        let r = main_theorem_check(&x, &a)?;
        bad += !(r.hypotheses && r.conclusion && r.holds) as usize;
    }
    Ok(bad)
}

fn double_cubes(rng: &mut GenRng, n: usize) -> Result<usize> {
    let mut bad = 0;
    for _ in 0..n {
        let (x, a) = gen::main_theorem_pair(rng)?;
        let pat = gen::dual_patch(&x, &a)?;
        let typ = Cube::typical(x.index().clone(), a.scalars(), x.vertex(x.index().full()))?;
        let ok = dct_check(&pat, DctVariant::Dct)?.implication_ok
            && dct_check(&pat, DctVariant::BigAdm)?.implication_ok
            && pat.pullback_two()? == typ;
        bad += !ok as usize;
    }
    Ok(bad)
}

fn exactness(rng: &mut GenRng, n: usize) -> Result<usize> {
    let mut bad = 0;
    for _ in 0..n {
        let r = be_check(&gen::be_complex(rng)?, BeMode::EquivalenceTest)?;
        bad += (r.equivalent != Some(true)) as usize;
    }
    Ok(bad)
}

fn sequence_products(rng: &mut GenRng, n: usize) -> Result<usize> {
    let m = FPModule::free(Z, 1);
    let mut bad = 0;
    for _ in 0..n {
        let (f, g) = gen::app1_pair(rng);
        let r = app1_check(&gen::ints(Z, &f), &gen::ints(Z, &g), &m)?;
        bad += !(r.hypotheses && r.agree && r.implication_ok) as usize;
    }
    Ok(bad)
}

fn linear_algebra(rng: &mut GenRng, n: usize) -> Result<usize> {
    let mut bad = 0;
    for _ in 0..n {
        let ring = gen::random_ring(rng);
        let a = gen::snf_matrix(rng, ring, 6);
        let s = smith_normal_form(&a);
        bad += (s.u.mul(&a).mul(&s.v) != s.d) as usize;
        let k = rng.gen_range(1..=4);
        let x = gen::random_matrix(rng, ring, k, k, 9);
        bad += (adjugate(&x)?.mul(&x) != Matrix::scalar(ring, k, &determinant(&x)?)) as usize;
    }
    Ok(bad)
}

pub fn run(seed: u64, size: Size) -> CmdResult {
    let n = match size {
        Size::Small => 10,
        Size::Medium => 50,
    };
    let results = par::map(par::default_execution(), &SUITES, |(name, suite)| {
        let mut rng = gen::rng(gen::derive_seed(seed, name));
        (*name, suite(&mut rng, n))
    });
    let mut passed = true;
    let mut suites = serde_json::Map::new();
    for (name, r) in results {
        let entry: Value = match r {
            Ok(failures) => {
                passed &= failures == 0;
                json!({ "instances": n, "failures": failures })
            }
            Err(e) => return Err(format!("suite {name}: {e}")),
        };
        suites.insert(name.into(), entry);
    }
    Ok(Outcome {
        passed,
        body: json!({ "seed": seed, "size": format!("{size:?}").to_lowercase(), "suites": suites }),
    })
}
