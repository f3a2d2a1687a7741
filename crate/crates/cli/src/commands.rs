use admcube::adjugates::{
    adjugate_cocube, cofactor_adjugate, main_theorem_check, patching_family_of, verify_adjugate,
};
use admcube::bue::{be_check, BeMode};
use admcube::complexes::ChainComplex;
use admcube::cubes::{
    fib_char_check, fib_of_family, sequence_check, totisom_check, x_sequence_lemma,
    AdmissibilityMethod, Cube, SequenceMode,
};
use admcube::doublecubes::{
    dct_check, fib_describe_check, fibered_equivalence, DctVariant, DoubleCube,
};
use admcube::gen;
use admcube::io::{self, BundleFile, InstanceFile};
use admcube::lattices::{family_class, remark_univ_adm, FamilyMode};
use admcube::Error;
use serde::Serialize;
use serde_json::{json, Value};

use crate::{CmdResult, Outcome};

fn value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn err(e: Error) -> String {
    e.to_string()
}

fn wrong_kind(got: &InstanceFile, want: &str) -> String {
    format!("expected {want}, got a {} instance", got.kind())
}

fn cube_of(inst: &InstanceFile) -> Result<Cube, String> {
    match inst {
        InstanceFile::Cube(f) => io::cube_from_file(f).map_err(err),
        InstanceFile::AdjugateBundle(b) => io::cube_from_file(&b.cube).map_err(err),
        other => Err(wrong_kind(other, "a cube")),
    }
}

fn complex_of(inst: &InstanceFile) -> Result<ChainComplex, String> {
    match inst {
        InstanceFile::Complex(f) | InstanceFile::BeComplex(f) => {
            io::complex_from_file(f).map_err(err)
        }
        other => Err(wrong_kind(other, "a complex")),
    }
}

fn bundle_of(inst: &InstanceFile) -> Result<(Cube, admcube::adjugates::CubeAdjugate), String> {
    match inst {
        InstanceFile::AdjugateBundle(b) => {
            let x = io::cube_from_file(&b.cube).map_err(err)?;
            let f = b
                .adjugate
                .as_ref()
                .ok_or("the bundle has no adjugate section")?;
            let a = io::adjugate_from_file(&x, f).map_err(err)?;
            Ok((x, a))
        }
        other => Err(wrong_kind(other, "an adjugate bundle")),
    }
}

fn homology_list(c: &ChainComplex) -> Value {
    c.degrees()
        .map(|k| json!({ "degree": k, "homology": value(&c.homology_shape(k)) }))
        .collect()
}

pub fn check(inst: InstanceFile, method: AdmissibilityMethod) -> CmdResult {
    let x = cube_of(&inst)?;
    let validation = x.validate();
    if !validation.valid {
        return Err(format!(
            "not a cube: {}",
            serde_json::to_string(&validation.failing_square).expect("witnesses serialize")
        ));
    }
    let a = x.is_admissible(method).map_err(err)?;
    Ok(Outcome {
        passed: a.admissible,
        body: json!({
            "admissible": a.admissible,
            "method": value(&a.method),
            "monic": validation.monic,
            "witness": value(&a.witness),
        }),
    })
}

pub fn tot(inst: InstanceFile) -> CmdResult {
    let x = cube_of(&inst)?;
    let t = x.total_complex().map_err(err)?;
    let r = totisom_check(&x).map_err(err)?;
    Ok(Outcome {
        passed: r.holds,
        body: json!({ "homology": homology_list(&t), "totisom": value(&r) }),
    })
}

pub fn homology(inst: InstanceFile) -> CmdResult {
    let c = complex_of(&inst)?;
    Ok(Outcome {
        passed: true,
        body: json!({
            "homology": homology_list(&c),
            "spherical": value(&c.is_spherical(0)),
        }),
    })
}

pub fn koszul(inst: InstanceFile) -> CmdResult {
    let InstanceFile::Family(f) = &inst else {
        return Err(wrong_kind(&inst, "a family"));
    };
    let fam = io::family_from_file(f).map_err(err)?;
    let fs = fam
        .scalars
        .ok_or("koszul needs a family given by scalars")?;
    let k = ChainComplex::koszul(&fam.ambient, &fs);
    let lemma = x_sequence_lemma(&fs, &fam.ambient).map_err(err)?;
    let seq = sequence_check(&fs, &fam.ambient, SequenceMode::XSequence).map_err(err)?;
    Ok(Outcome {
        passed: seq.holds,
        body: json!({
            "homology": homology_list(&k),
            "lemma": value(&lemma),
            "sequence": value(&seq),
        }),
    })
}

pub fn fib(inst: InstanceFile) -> CmdResult {
    match &inst {
        InstanceFile::Family(f) => {
            let fam = io::family_from_file(f).map_err(err)?;
            let fc = fib_of_family(&fam.index, &fam.maps).map_err(err)?;
            let fibered = fc.cube.is_fibered().map_err(err)?;
            let admissible = fc.cube.admissible().map_err(err)?;
            let all_mono = fam.maps.iter().all(|m| m.is_mono());
            let characterisation = if all_mono {
                Some(fib_char_check(&fam.index, &fam.maps).map_err(err)?)
            } else {
                None
            };
            Ok(Outcome {
                passed: characterisation
                    .as_ref()
                    .map_or(fibered.fibered, |c| c.agree),
                body: json!({
                    "characterisation": value(&characterisation),
                    "fib_admissible": admissible,
                    "fibered": value(&fibered),
                }),
            })
        }
        _ => {
            let x = cube_of(&inst)?;
            let r = x.is_fibered().map_err(err)?;
            Ok(Outcome {
                passed: r.fibered,
                body: json!({ "fibered": value(&r) }),
            })
        }
    }
}

pub fn adjugate_verify(inst: InstanceFile) -> CmdResult {
    let (x, a) = bundle_of(&inst)?;
    let r = verify_adjugate(&x, &a, true).map_err(err)?;
    let axioms = r.axiom_i && r.axiom_ii;
    let cocube_valid = axioms && adjugate_cocube(&x, &a).is_ok();
    Ok(Outcome {
        passed: axioms,
        body: json!({ "cocube_valid": cocube_valid, "verification": value(&r) }),
    })
}

pub fn adjugate_construct(inst: InstanceFile) -> CmdResult {
    let x = cube_of(&inst)?;
    let a = cofactor_adjugate(&x).map_err(err)?;
    let r = verify_adjugate(&x, &a, true).map_err(err)?;
    let bundle = InstanceFile::AdjugateBundle(BundleFile {
        cube: io::cube_to_file(&x),
        adjugate: Some(io::adjugate_to_file(&a)),
    });
    Ok(Outcome {
        passed: r.axiom_i && r.axiom_ii,
        body: json!({ "bundle": value(&bundle), "verification": value(&r) }),
    })
}

pub fn main_theorem(inst: InstanceFile) -> CmdResult {
    let (x, a) = bundle_of(&inst)?;
    let r = main_theorem_check(&x, &a).map_err(err)?;
    let identities = if x.is_monic() && r.adjugate.axiom_i && r.adjugate.axiom_ii {
        Some(patching_family_of(&x, &a).map_err(err)?.identities)
    } else {
        None
    };
    let identities_ok = identities.as_ref().is_none_or(|i| i.all());
    Ok(Outcome {
        passed: r.holds && identities_ok,
        body: json!({ "patching_identities": value(&identities), "theorem": value(&r) }),
    })
}

pub fn dct(inst: InstanceFile) -> CmdResult {
    let (double, typical) = match &inst {
        InstanceFile::Double(f) => (io::double_from_file(f).map_err(err)?, None),
        InstanceFile::AdjugateBundle(_) => {
            let (x, a) = bundle_of(&inst)?;
            let pat = gen::dual_patch(&x, &a).map_err(err)?;
            let idx = x.index().clone();
            let typ = Cube::typical(idx.clone(), a.scalars(), x.vertex(idx.full())).map_err(err)?;
            let matches = pat.pullback_two().map_err(err)? == typ;
            (pat, Some(matches))
        }
        other => return Err(wrong_kind(other, "a double cube or an adjugate bundle")),
    };
    double_report(&double, typical)
}

fn double_report(x: &DoubleCube, typical: Option<bool>) -> CmdResult {
    let d = dct_check(x, DctVariant::Dct).map_err(err)?;
    let b = dct_check(x, DctVariant::BigAdm).map_err(err)?;
    let describe = fib_describe_check(x).map_err(err)?;
    let equivalence = fibered_equivalence(x).map_err(err)?;
    let passed = d.implication_ok
        && b.implication_ok
        && describe.implication_ok
        && equivalence.agree
        && typical != Some(false);
    Ok(Outcome {
        passed,
        body: json!({
            "big_adm": value(&b),
            "dct": value(&d),
            "fib_describe": value(&describe),
            "fibered_equivalence": value(&equivalence),
            "two_pullback_typical": typical,
        }),
    })
}

pub fn be(inst: InstanceFile) -> CmdResult {
    let c = complex_of(&inst)?;
    let r = be_check(&c, BeMode::EquivalenceTest).map_err(err)?;
    Ok(Outcome {
        passed: r.criterion && r.equivalent == Some(true),
        body: value(&r),
    })
}

pub fn lattice(inst: InstanceFile) -> CmdResult {
    let InstanceFile::Lattice(f) = &inst else {
        return Err(wrong_kind(&inst, "a lattice"));
    };
    let (l, family) = io::lattice_from_file(f).map_err(err)?;
    let modular = l.is_modular();
    let semi_modular = l.semi_modular_law_holds();
    let mut passed = modular.modular && semi_modular;
    let mut body = json!({
        "distributive": l.is_distributive(),
        "modular": value(&modular),
        "semi_modular": semi_modular,
    });
    if !family.is_empty() {
        let elems: Vec<usize> = family.iter().map(|(_, e)| *e).collect();
        let mut classes = serde_json::Map::new();
        for (name, mode) in [
            ("admissible", FamilyMode::Admissible),
            ("strictly_distributive", FamilyMode::StrictlyDistributive),
            ("universally_admissible", FamilyMode::UniversallyAdmissible),
        ] {
            classes.insert(
                name.into(),
                value(&family_class(&l, &elems, &mode).map_err(err)?),
            );
        }
        let remark = remark_univ_adm(&l, &elems).map_err(err)?;
        passed &= remark.restriction
            && remark.small_families
            && remark.recursive_characterisation
            && remark.three_elements;
        body["family"] = value(&family.iter().map(|(k, _)| k).collect::<Vec<_>>());
        body["classes"] = Value::Object(classes);
        body["remark"] = value(&remark);
    }
    Ok(Outcome { passed, body })
}
