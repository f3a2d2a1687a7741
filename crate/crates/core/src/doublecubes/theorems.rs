use std::collections::BTreeMap;

use serde::Serialize;

use crate::cubes::{fib_of_family, AdmissibilityMethod, Cube, CubeIndex, Mask};
use crate::error::Result;
use crate::fpmod::{factor_through_mono, ModuleMorphism, Subobject};

use super::{DoubleCube, DoubleIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DctVariant {
    Dct,
    BigAdm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DctReport {
    pub variant: DctVariant,
    pub hypotheses: BTreeMap<String, bool>,
    /// `e_S^* x` is admissible.
    pub conclusion: bool,
    pub implication_ok: bool,
    /// First failing hypothesis instance, when one fails.
    pub witness: Option<String>,
}

fn admissible(c: &Cube) -> Result<bool> {
    Ok(c.is_admissible(AdmissibilityMethod::Recursive)?.admissible)
}

fn set_key(index: &CubeIndex, m: Mask) -> String {
    format!("{{{}}}", index.key(m))
}

pub fn dct_check(x: &DoubleCube, variant: DctVariant) -> Result<DctReport> {
    let idx = x.index();
    let n = idx.len();
    let full = idx.full();
    let mut hyps = BTreeMap::new();
    let mut witness = None;
    let note = |w: &mut Option<String>, s: String| {
        if w.is_none() {
            *w = Some(s);
        }
    };

    let two = admissible(&x.pullback_two()?)?;
    if !two {
        note(&mut witness, "2^*x is not admissible".into());
    }
    hyps.insert("two_pullback_admissible".to_string(), two);

    let monic_edge = x
        .edge_keys()
        .into_iter()
        .find(|&(p, i)| !x.boundary(p, i).is_mono());
    if let Some((p, i)) = monic_edge {
        note(
            &mut witness,
            format!("boundary {}|{} is not mono", p.key(idx), idx.label(i)),
        );
    }
    hyps.insert("monic".to_string(), monic_edge.is_none());

    match variant {
        DctVariant::Dct => {
            let mut ok = true;
            if n >= 3 {
                'outer: for t in 0..full {
                    let c = x.pullback_et(t)?;
                    for k in 0..n {
                        for (side, face) in [
                            ("backside", c.backside_face(k)?),
                            ("frontside", c.frontside_face(k)?),
                        ] {
                            if !admissible(&face)? {
                                ok = false;
                                note(
                                    &mut witness,
                                    format!(
                                        "{side} {}-face of e_T^*x for T = {} is not admissible",
                                        idx.label(k),
                                        set_key(idx, t)
                                    ),
                                );
                                break 'outer;
                            }
                        }
                    }
                }
            }
            hyps.insert("proper_faces_admissible".to_string(), ok);
        }
        DctVariant::BigAdm => {
            let mut fibered = true;
            for t in 0..full {
                if !x.pullback_et(t)?.is_fibered()?.fibered {
                    fibered = false;
                    note(
                        &mut witness,
                        format!("e_T^*x is not fibered for T = {}", set_key(idx, t)),
                    );
                    break;
                }
            }
            hyps.insert("proper_pullbacks_fibered".to_string(), fibered);
            let failing = first_failing_tuple(x)?;
            if let Some(w) = &failing {
                note(&mut witness, w.clone());
            }
            hyps.insert("h0_tot_fib_mono".to_string(), failing.is_none());
        }
    }

    let conclusion = admissible(&x.pullback_et(full)?)?;
    let all = hyps.values().all(|&h| h);
    Ok(DctReport {
        variant,
        hypotheses: hyps,
        conclusion,
        implication_ok: !all || conclusion,
        witness,
    })
}

/// Condition (4) of the big-admissibility theorem over all tuples
/// `(W, U, V, s, v)`: `U, V` disjoint nonempty, `W ∪ U ≠ S`,
/// `s ∉ W ∪ U`, `v ∈ V`, `s ≠ v`.
fn first_failing_tuple(x: &DoubleCube) -> Result<Option<String>> {
    let idx = x.index();
    let full = idx.full();
    for w in 0..=full {
        for u in 1..=full {
            if (w | u) == full {
                continue;
            }
            let rest = full & !u;
            for v in 1..=full {
                if v & !rest != 0 {
                    continue;
                }
                for s in idx.members(full & !(w | u)) {
                    for vi in idx.members(v) {
                        if s == vi {
                            continue;
                        }
                        if !tuple_holds(x, w, u, v, s, vi)? {
                            return Ok(Some(format!(
                                "H_0 Tot d^s of Fib is not mono for W = {}, U = {}, V = {}, s = {}, v = {}",
                                set_key(idx, w),
                                set_key(idx, u),
                                set_key(idx, v),
                                idx.label(s),
                                idx.label(vi)
                            )));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

fn tuple_holds(x: &DoubleCube, w: Mask, u: Mask, v: Mask, s: usize, vi: usize) -> Result<bool> {
    let idx = x.index();
    let vp = v & !(1 << vi);
    let target = DoubleIndex { u: w & !vp, v: vp };
    let labels = u | 1 << s;
    let mut maps = Vec::new();
    for k in idx.members(labels) {
        let source = if k == s {
            DoubleIndex {
                u: (w | 1 << s) & !vp,
                v: vp,
            }
        } else {
            let vk = v | 1 << k;
            DoubleIndex { u: w & !vk, v: vk }
        };
        maps.push(x.morphism(target, source)?);
    }
    let sub = idx.sub_index(labels);
    let fib = fib_of_family(&sub, &maps)?;
    let pos = sub.position(idx.label(s))?;
    Ok(fib.cube.tot_direction_map(pos)?.h0().is_mono())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibDescribeReport {
    pub monic: bool,
    /// `𝟐^* x` and every proper `e_T^* x` are fibered.
    pub fibered: bool,
    pub vertices_match: bool,
    pub failing_vertex: Option<String>,
    pub implication_ok: bool,
}

/// Compares each `x_{U,V} ⊆ x_{∅,∅}` with `𝔞^{∧U} ∧ 𝔟^{∧V}`, where
/// `a_s = x_{{s},∅}` and `b_s = x_{∅,{s}}`.
pub fn fib_describe_check(x: &DoubleCube) -> Result<FibDescribeReport> {
    let idx = x.index();
    let n = idx.len();
    let base = DoubleIndex { u: 0, v: 0 };
    let image =
        |p: DoubleIndex| -> Result<Subobject> { Ok(Subobject::image_of(&x.morphism(base, p)?)) };
    let a: Vec<Subobject> = (0..n)
        .map(|s| image(DoubleIndex { u: 1 << s, v: 0 }))
        .collect::<Result<_>>()?;
    let b: Vec<Subobject> = (0..n)
        .map(|s| image(DoubleIndex { u: 0, v: 1 << s }))
        .collect::<Result<_>>()?;
    let mut failing_vertex = None;
    for p in x.points() {
        let mut m = Subobject::whole(x.vertex(base));
        for i in 0..n {
            match p.value(i) {
                1 => m = m.meet(&a[i])?,
                2 => m = m.meet(&b[i])?,
                _ => {}
            }
        }
        if image(p)? != m {
            failing_vertex = Some(p.key(idx));
            break;
        }
    }
    let monic = x.is_monic();
    let mut fibered = x.pullback_two()?.is_fibered()?.fibered;
    for t in 0..idx.full() {
        fibered = fibered && x.pullback_et(t)?.is_fibered()?.fibered;
    }
    let vertices_match = failing_vertex.is_none();
    Ok(FibDescribeReport {
        monic,
        fibered,
        vertices_match,
        failing_vertex,
        implication_ok: !(monic && fibered) || vertices_match,
    })
}

/// Conditions (i)–(v) characterising fibred double cubes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberedEquivalence {
    /// Every `e_T^* x` is fibered.
    pub all_pullbacks: bool,
    /// `𝟐^* x` and every proper `e_T^* x` are fibered.
    pub two_and_proper: bool,
    /// `C(x)` is an isomorphism.
    pub comparison_iso: bool,
    /// Every `e_T^* C(x)` is an isomorphism.
    pub comparison_on_pullbacks: bool,
    /// `𝟐^* C(x)` and every proper `e_T^* C(x)` are isomorphisms.
    pub comparison_on_two_and_proper: bool,
    pub agree: bool,
}

/// `C(x)_J : x_J → ∏_{x_{∅,∅}} x_{J(s)δ_s}` is an isomorphism.
fn comparison_at(x: &DoubleCube, p: DoubleIndex) -> Result<bool> {
    let idx = x.index();
    let support: Vec<usize> = (0..idx.len()).filter(|&i| p.value(i) > 0).collect();
    if support.len() <= 1 {
        return Ok(true);
    }
    let single = |i: usize| DoubleIndex {
        u: p.u & 1 << i,
        v: p.v & 1 << i,
    };
    let base = DoubleIndex { u: 0, v: 0 };
    let maps: Vec<ModuleMorphism> = support
        .iter()
        .map(|&i| x.morphism(base, single(i)))
        .collect::<Result<_>>()?;
    let mask = support.iter().fold(0, |m, &i| m | 1 << i);
    let sub = idx.sub_index(mask);
    let fib = fib_of_family(&sub, &maps)?;
    let comps: Vec<ModuleMorphism> = support
        .iter()
        .map(|&i| x.morphism(single(i), p))
        .collect::<Result<_>>()?;
    let refs: Vec<&ModuleMorphism> = comps.iter().collect();
    let stacked = ModuleMorphism::vstack(x.ring(), x.vertex(p), &refs);
    Ok(
        factor_through_mono(&fib.embeddings[sub.full() as usize], &stacked)
            .is_some_and(|k| k.is_iso()),
    )
}

pub fn fibered_equivalence(x: &DoubleCube) -> Result<FiberedEquivalence> {
    let idx = x.index();
    let full = idx.full();
    let mut iso = BTreeMap::new();
    for p in x.points() {
        iso.insert(p, comparison_at(x, p)?);
    }
    let on = |f: &dyn Fn(Mask) -> DoubleIndex| idx.masks().all(|u| iso[&f(u)]);
    let mut et_fibered = Vec::new();
    let mut et_iso = Vec::new();
    for t in idx.masks() {
        et_fibered.push(x.pullback_et(t)?.is_fibered()?.fibered);
        et_iso.push(on(&|u| DoubleIndex::e(t, u)));
    }
    let two_fibered = x.pullback_two()?.is_fibered()?.fibered;
    let two_iso = on(&DoubleIndex::two);
    let proper = |v: &[bool]| v[..full as usize].iter().all(|&b| b);
    let r = FiberedEquivalence {
        all_pullbacks: et_fibered.iter().all(|&b| b),
        two_and_proper: two_fibered && proper(&et_fibered),
        comparison_iso: iso.values().all(|&b| b),
        comparison_on_pullbacks: et_iso.iter().all(|&b| b),
        comparison_on_two_and_proper: two_iso && proper(&et_iso),
        agree: false,
    };
    let vals = [
        r.all_pullbacks,
        r.two_and_proper,
        r.comparison_iso,
        r.comparison_on_pullbacks,
        r.comparison_on_two_and_proper,
    ];
    Ok(FiberedEquivalence {
        agree: vals.iter().all(|&b| b == vals[0]),
        ..r
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpmod::FPModule;
    use crate::linalg::Matrix;
    use crate::rings::Ring;

    const Z: Ring = Ring::Integers;

    fn ideals(v: &[i64]) -> Vec<Subobject> {
        let z = FPModule::free(Z, 1);
        v.iter()
            .map(|&d| Subobject::new(&z, &Matrix::from_i64(Z, 1, 1, &[d])).unwrap())
            .collect()
    }

    #[test]
    fn chain_of_one_label() {
        let x = DoubleCube::from_subobjects(&CubeIndex::standard(1), &ideals(&[2]), &ideals(&[6]))
            .unwrap();
        for v in [DctVariant::Dct, DctVariant::BigAdm] {
            let r = dct_check(&x, v).unwrap();
            assert!(r.conclusion && r.implication_ok);
        }
    }

    #[test]
    fn coprime_ideal_families() {
        let idx = CubeIndex::standard(2);
        let x = DoubleCube::from_subobjects(&idx, &ideals(&[2, 3]), &ideals(&[10, 21])).unwrap();
        let r = dct_check(&x, DctVariant::Dct).unwrap();
        assert!(r.hypotheses.values().all(|&h| h) && r.conclusion);
        let f = fib_describe_check(&x).unwrap();
        assert!(f.monic && f.fibered && f.vertices_match);
        let e = fibered_equivalence(&x).unwrap();
        assert!(e.agree && e.comparison_iso);
    }

    #[test]
    fn shared_factors_and_non_monic() {
        let idx = CubeIndex::standard(2);
        let x = DoubleCube::from_subobjects(&idx, &ideals(&[2, 2]), &ideals(&[4, 4])).unwrap();
        let r = dct_check(&x, DctVariant::BigAdm).unwrap();
        assert!(r.hypotheses.values().all(|&h| h) && r.conclusion);

        let idx = CubeIndex::standard(1);
        let x = DoubleCube::from_subobjects(&idx, &ideals(&[2]), &ideals(&[6])).unwrap();
        let top = DoubleIndex { u: 0, v: 1 };
        let zero = ModuleMorphism::zero(x.vertex(top), x.vertex(DoubleIndex { u: 1, v: 0 }));
        let r = dct_check(&x.with_boundary(top, 0, zero).unwrap(), DctVariant::Dct).unwrap();
        assert!(!r.hypotheses["monic"] && r.implication_ok);
    }
}
