//! Acceptance suite: one line per criterion, exit status 1 if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use admcube::adjugates::{app1_check, main_theorem_check};
use admcube::bue::{be_check, fitting_ideal, BeMode, GradeValue, IdealRep};
use admcube::complexes::ChainComplex;
use admcube::cubes::{
    fib_char_check, totisom_check, x_sequence_lemma, AdmissibilityMethod, Cube, CubeIndex,
};
use admcube::doublecubes::{dct_check, DctVariant};
use admcube::fpmod::{FPModule, ModuleMorphism, Subobject};
use admcube::gen::{self, CubeFlavor, GenRng};
use admcube::lattices::{
    pentagon, remark_univ_adm, subgroup_lattice, FiniteLattice, LatticeOps, SubobjectLattice,
    TransferVariant,
};
use admcube::linalg::{adjugate, determinant, smith_normal_form, Matrix};
use admcube::{Result, Ring};
use rand::Rng;

const SEED: u64 = 20_240_601;
const Z: Ring = Ring::Integers;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        pass,
        detail: detail.into(),
    })
}

fn rng_for(name: &str) -> GenRng {
    gen::rng(gen::derive_seed(SEED, name))
}

fn c1_sequence_bridge() -> Result<Outcome> {
    let mut rng = rng_for("sequence-bridge");
    let x = FPModule::free(Z, 1);
    let (mut coprime, mut disagree, mut cube_vs_sequence) = (0, 0, 0);
    let mut first = None;
    for _ in 0..200 {
        let f = gen::lemma_family(&mut rng, 30);
        let r = x_sequence_lemma(&gen::ints(Z, &f), &x)?;
        coprime += r.x_sequence as usize;
        cube_vs_sequence += (r.typical_admissible != r.x_sequence) as usize;
        if !r.agree {
            disagree += 1;
            first.get_or_insert((f, r));
        }
    }
    let mut detail = format!(
        "200 families, {coprime} ℤ-sequences, {disagree} disagreements, {cube_vs_sequence} between (1) and (2)"
    );
    if let Some((f, r)) = first {
        detail += &format!(
            "; first {f:?}: (1)={} (2)={} (3)={} (4)={}",
            r.typical_admissible,
            r.x_sequence,
            r.admissible_family,
            r.universally_admissible_family
        );
    }
    outcome(disagree == 0, detail)
}

fn c2_admissibility_methods() -> Result<Outcome> {
    let mut rng = rng_for("admissibility-methods");
    let flavors = [
        CubeFlavor::Admissible,
        CubeFlavor::MonicNonAdmissible,
        CubeFlavor::NonMonic,
    ];
    let (mut adm, mut monic_non, mut non_monic, mut disagree) = (0, 0, 0, 0);
    for i in 0..100 {
        let x = gen::flavored_cube(&mut rng, flavors[i % 3])?;
        let verdicts: Vec<bool> = AdmissibilityMethod::ALL
            .iter()
            .map(|&m| x.is_admissible(m).map(|a| a.admissible))
            .collect::<Result<_>>()?;
        if verdicts.iter().any(|&v| v != verdicts[0]) {
            disagree += 1;
        }
        match (verdicts[0], x.is_monic()) {
            (true, _) => adm += 1,
            (false, true) => monic_non += 1,
            (false, false) => non_monic += 1,
        }
    }
    let covered = adm > 0 && monic_non > 0 && non_monic > 0;
    outcome(
        disagree == 0 && covered,
        format!("100 cubes ({adm} admissible, {monic_non} monic non-admissible, {non_monic} non-monic), {disagree} disagreements"),
    )
}

fn admissible_corpus(name: &str, count: usize) -> Result<Vec<Cube>> {
    let mut rng = rng_for(name);
    (0..count)
        .map(|_| gen::flavored_cube(&mut rng, CubeFlavor::Admissible))
        .collect()
}

fn c3_totisom() -> Result<Outcome> {
    let mut bad = 0;
    let mut not_adm = 0;
    for x in admissible_corpus("totisom", 100)? {
        let r = totisom_check(&x)?;
        not_adm += !r.admissible as usize;
        bad += !(r.admissible && r.holds) as usize;
    }
    outcome(
        bad == 0,
        format!("100 admissible cubes, {not_adm} not admissible, {bad} failures"),
    )
}

fn c4_fibered() -> Result<Outcome> {
    let mut not_fibered = 0;
    for x in admissible_corpus("fibered", 100)? {
        if x.admissible()? && !x.is_fibered()?.fibered {
            not_fibered += 1;
        }
    }
    let mut rng = rng_for("fib-char");
    let (mut disagree, mut fib_adm) = (0, 0);
    for _ in 0..100 {
        let r = rng.gen_range(1..=3);
        let maps = gen::subgroup_family(&mut rng, r, 3, 4, false);
        let rep = fib_char_check(&CubeIndex::standard(3), &maps)?;
        disagree += !rep.agree as usize;
        fib_adm += rep.fib_admissible as usize;
    }
    outcome(
        not_fibered == 0 && disagree == 0,
        format!(
            "admissible ⇒ fibered: {not_fibered} counterexamples; Fib families: 100 ({fib_adm} admissible), {disagree} disagreements"
        ),
    )
}

fn subobject_lattices(rng: &mut GenRng) -> Result<Vec<SubobjectLattice>> {
    let mut out = Vec::new();
    for orders in [&[2u64, 2][..], &[4, 2], &[3, 3], &[2, 2, 2], &[9, 3], &[12]] {
        out.push(subgroup_lattice(orders)?);
    }
    for _ in 0..20 {
        let r = rng.gen_range(1..=2);
        let ambient = FPModule::free(Z, r);
        let fam: Vec<Subobject> = gen::subgroup_family(rng, r, 2, 4, false)
            .iter()
            .map(Subobject::image_of)
            .collect();
        if let Ok(l) = SubobjectLattice::generated(&ambient, &fam) {
            out.push(l);
        }
    }
    Ok(out)
}

fn c5_lattices() -> Result<Outcome> {
    let mut rng = rng_for("lattices");
    let mut problems: Vec<String> = Vec::new();

    let mut lattices: Vec<FiniteLattice> = (0..40)
        .map(|_| gen::modular_lattice(&mut rng))
        .collect::<Result<_>>()?;
    lattices.push(pentagon());
    if !lattices.iter().all(FiniteLattice::semi_modular_law_holds) {
        problems.push("semi-modular law failed".into());
    }
    let subs = subobject_lattices(&mut rng)?;
    if !subs.iter().all(|s| s.lattice.is_modular().modular) {
        problems.push("a subobject lattice is not modular".into());
    }
    let n5 = pentagon().is_modular();
    if n5.modular || n5.witness.is_none() {
        problems.push("N5 not rejected with a witness".into());
    }

    let mut remark_runs = 0;
    for l in &lattices {
        for k in 1..=4 {
            let fam = gen::lattice_family(&mut rng, l, k);
            let r = remark_univ_adm(l, &fam)?;
            remark_runs += 1;
            if !(r.restriction
                && r.small_families
                && r.recursive_characterisation
                && r.three_elements)
            {
                problems.push(format!("remark failed on {fam:?}"));
            }
        }
    }

    let variants = [
        TransferVariant::PropAdmSeqLem,
        TransferVariant::CorAdmSeqCor,
        TransferVariant::CorWithRemark,
    ];
    let modular: Vec<FiniteLattice> = lattices
        .iter()
        .filter(|l| l.is_modular().modular)
        .cloned()
        .collect();
    let (mut satisfied, mut tries) = (0, 0);
    while satisfied < 500 && tries < 200_000 {
        tries += 1;
        let l = &modular[rng.gen_range(0..modular.len())];
        let variant = variants[rng.gen_range(0..3)];
        let n = rng.gen_range(1..=3);
        let first = gen::lattice_family(&mut rng, l, n);
        let second = match variant {
            TransferVariant::PropAdmSeqLem => gen::lattice_family(&mut rng, l, 1),
            _ => {
                let c = gen::lattice_family(&mut rng, l, n);
                first.iter().zip(&c).map(|(a, b)| l.meet(a, b)).collect()
            }
        };
        let reports = admcube::lattices::transfer_check(l, variant, &first, &second, true)?;
        if reports.iter().any(|r| !r.vacuous) {
            satisfied += 1;
        }
        if let Some(r) = reports.iter().find(|r| !r.implication_ok) {
            problems.push(format!(
                "{:?}/{:?} falsified on {first:?}, {second:?}",
                r.variant, r.strength
            ));
        }
    }
    if satisfied < 500 {
        problems.push(format!(
            "only {satisfied} hypothesis-satisfying transfer instances"
        ));
    }
    let detail = format!(
        "{} lattices, {} subobject lattices, {remark_runs} remark runs, {satisfied} transfer instances{}",
        lattices.len(),
        subs.len(),
        if problems.is_empty() { String::new() } else { format!("; {}", problems.join("; ")) }
    );
    outcome(problems.is_empty(), detail)
}

fn c6_main_theorem() -> Result<Outcome> {
    let mut rng = rng_for("main-theorem");
    let (mut bad, mut scalar, mut cofactor) = (0, 0, 0);
    for i in 0..100 {
        let n = rng.gen_range(1..=3);
        let (x, a) = if i % 2 == 0 {
            scalar += 1;
            let rank = rng.gen_range(1..=2);
            gen::scalar_adjugate_pair(&mut rng, n, rank)?
        } else {
            cofactor += 1;
            let rank = rng.gen_range(1..=3);
            gen::cofactor_pair(&mut rng, n, rank)?
        };
        let r = main_theorem_check(&x, &a)?;
        if !(r.hypotheses && r.conclusion && r.holds) || r.patched_admissible.len() != 1 << n {
            bad += 1;
        }
    }
    outcome(
        bad == 0,
        format!("100 pairs ({scalar} scalar, {cofactor} cofactor), {bad} failures"),
    )
}

fn c7_double_cubes() -> Result<Outcome> {
    let mut rng = rng_for("double-cubes");
    let (mut bad_dct, mut bad_big, mut bad_typ, mut dct_hyp) = (0, 0, 0, 0);
    for _ in 0..100 {
        let (x, a) = gen::main_theorem_pair(&mut rng)?;
        let pat = gen::dual_patch(&x, &a)?;
        let d = dct_check(&pat, DctVariant::Dct)?;
        let b = dct_check(&pat, DctVariant::BigAdm)?;
        bad_dct += !d.implication_ok as usize;
        bad_big += !b.implication_ok as usize;
        dct_hyp += d.hypotheses.values().all(|&v| v) as usize;
        let typ = Cube::typical(x.index().clone(), a.scalars(), x.vertex(x.index().full()))?;
        bad_typ += (pat.pullback_two()? != typ) as usize;
    }
    outcome(
        bad_dct + bad_big + bad_typ == 0,
        format!(
            "100 patched double cubes ({dct_hyp} with all DCT hypotheses), falsified: DCT {bad_dct}, BigAdm {bad_big}; 2*Pat ≠ Typ: {bad_typ}"
        ),
    )
}

fn c8_be() -> Result<Outcome> {
    let koszul = |v: &[i64]| ChainComplex::koszul(&FPModule::free(Z, 1), &gen::ints(Z, v));
    let k23 = be_check(&koszul(&[2, 3]), BeMode::EquivalenceTest)?;
    let k22 = be_check(&koszul(&[2, 2]), BeMode::EquivalenceTest)?;
    let examples = k23.fitting.iter().all(IdealRep::is_unit)
        && k23.grades == vec![Some(GradeValue::Infinite); 2]
        && k22.fitting[1].canonical == Z.from_i64(2)
        && k22.grades[1] == Some(GradeValue::Finite(1))
        && !k22.criterion;

    let mut rng = rng_for("be");
    let (mut exact, mut discrepancies) = (0, 0);
    for _ in 0..220 {
        let c = gen::be_complex(&mut rng)?;
        let r = be_check(&c, BeMode::EquivalenceTest)?;
        exact += r.spherical as usize;
        discrepancies += (r.equivalent != Some(true)) as usize;
    }
    outcome(
        examples && discrepancies == 0,
        format!(
            "220 complexes ({exact} exact), {discrepancies} discrepancies; worked examples {}",
            if examples { "match" } else { "differ" }
        ),
    )
}

fn c9_app1() -> Result<Outcome> {
    let mut rng = rng_for("app1");
    let m = FPModule::free(Z, 1);
    let mut bad = 0;
    for _ in 0..100 {
        let (f, g) = gen::app1_pair(&mut rng);
        let r = app1_check(&gen::ints(Z, &f), &gen::ints(Z, &g), &m)?;
        if !(r.hypotheses && r.agree && r.implication_ok && r.adjugate_pathway == Some(r.direct)) {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("100 pairs, {bad} mismatches"))
}

fn divides(ring: Ring, a: &admcube::RingElement, b: &admcube::RingElement) -> bool {
    ring.divide(b, a).is_some()
}

fn c10_linalg() -> Result<Outcome> {
    let mut rng = rng_for("linalg");
    let mut problems = Vec::new();
    for i in 0..500 {
        let ring = [
            Ring::Integers,
            Ring::Rationals,
            Ring::prime_field(7)?,
            Ring::integers_mod(12)?,
        ][i % 4];
        let a = gen::snf_matrix(&mut rng, ring, 8);
        let s = smith_normal_form(&a);
        let ok_product = s.u.mul(&a).mul(&s.v) == s.d;
        let ok_inverse = s.u.mul(&s.u_inv) == Matrix::identity(ring, a.rows())
            && s.v.mul(&s.v_inv) == Matrix::identity(ring, a.cols());
        let diag = s.diagonal();
        let off_diagonal_zero =
            (0..a.rows()).all(|r| (0..a.cols()).all(|c| r == c || s.d.get(r, c).is_zero()));
        let chain = diag.windows(2).all(|w| divides(ring, &w[0], &w[1]));
        if !(ok_product && ok_inverse && off_diagonal_zero && chain) {
            problems.push(format!("SNF over {ring} on {}x{}", a.rows(), a.cols()));
        }
    }
    for i in 0..200 {
        let ring = [
            Ring::Integers,
            Ring::Rationals,
            Ring::prime_field(5)?,
            Ring::integers_mod(6)?,
        ][i % 4];
        let n = rng.gen_range(1..=5);
        let x = gen::random_matrix(&mut rng, ring, n, n, 9);
        let lhs = adjugate(&x)?.mul(&x);
        let rhs = Matrix::scalar(ring, n, &determinant(&x)?);
        if lhs != rhs || x.mul(&adjugate(&x)?) != rhs {
            problems.push(format!("adjugate over {ring} on {n}x{n}"));
        }
    }
    for _ in 0..100 {
        let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let x = gen::random_matrix(&mut rng, Z, r, c, 9);
        let phi = ModuleMorphism::new(FPModule::free(Z, c), FPModule::free(Z, r), x)?;
        for t in 0..=r.min(c) {
            let (lo, hi) = (fitting_ideal(&phi, t)?, fitting_ideal(&phi, t + 1)?);
            if !divides(Z, &lo.canonical, &hi.canonical) {
                problems.push(format!("Fitting chain at t = {t}"));
            }
        }
    }
    let detail = if problems.is_empty() {
        "500 SNF, 200 adjugate, 100 Fitting chains".to_string()
    } else {
        format!("{} problems, first: {}", problems.len(), problems[0])
    };
    outcome(problems.is_empty(), detail)
}

type Criterion = (&'static str, fn() -> Result<Outcome>, Option<u64>);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("x-sequence bridge", c1_sequence_bridge, Some(30)),
        (
            "admissibility methods agree",
            c2_admissibility_methods,
            Some(60),
        ),
        ("total complex of admissible cubes", c3_totisom, None),
        ("fibered and Fib characterisation", c4_fibered, None),
        ("lattice suite", c5_lattices, Some(60)),
        ("main theorem", c6_main_theorem, Some(120)),
        ("double cube theorems", c7_double_cubes, None),
        ("exactness criterion", c8_be, None),
        ("corollary on products", c9_app1, None),
        ("linear algebra", c10_linalg, Some(30)),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let in_time = budget.is_none_or(|b| elapsed <= Duration::from_secs(b));
        let (pass, detail) = match result {
            Ok(o) => (o.pass && in_time, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        failed += !pass as usize;
        let budget = budget.map_or(String::new(), |b| format!(" / {b}s"));
        println!(
            "criterion {:>2} {}: {} ({}) [{:.2}s{budget}]",
            i + 1,
            name,
            if pass { "PASS" } else { "FAIL" },
            detail,
            elapsed.as_secs_f64()
        );
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
