use std::collections::BTreeMap;

use serde::Serialize;

use crate::cubes::{sequence_check, Cube, CubeIndex, Mask, SequenceMode};
use crate::doublecubes::{DoubleCube, MAX_DOUBLE_LABELS};
use crate::error::{Error, Result};
use crate::fpmod::FPModule;
use crate::rings::RingElement;

use super::{adjugate_cocube, dual_adjugate, verify_adjugate, AdjugateReport, CubeAdjugate};

/// `(x^{𝔄,T}, 𝔄^T)`: `x^{𝔄,T}_U = x_{U⊖T}` with the boundary in direction
/// `u` taken from `x` when `u ∉ T` and from `𝔄` when `u ∈ T`; `𝔄^T` swaps
/// the roles.
pub fn adjugate_member(x: &Cube, a: &CubeAdjugate, t: Mask) -> Result<(Cube, CubeAdjugate)> {
    let index = x.index().clone();
    let cube = Cube::from_fn(
        index.clone(),
        x.variance(),
        |u| x.vertex(u ^ t).clone(),
        |u, i| {
            let w = u ^ t;
            Ok(if t & (1 << i) != 0 {
                a.star(w | 1 << i, i).clone()
            } else {
                x.boundary(w, i).clone()
            })
        },
    )?;
    let adj = CubeAdjugate::from_fn(index, a.scalars().to_vec(), |u, i| {
        let w = u ^ t;
        Ok(if t & (1 << i) != 0 {
            x.boundary(w | 1 << i, i).clone()
        } else {
            a.star(w, i).clone()
        })
    })?;
    Ok((cube, adj))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatchingIdentities {
    /// `x^{𝔄,∅} = x`.
    pub empty_is_x: bool,
    /// `x^{𝔄,S}` is the dual of the adjugate cocube.
    pub full_is_dual_cocube: bool,
    /// `x^{𝔄,T}|_U^V = (x|_U^V)^{𝔄|_U^V, T∩U}` whenever `T ⊆ U`, and
    /// `x^{𝔄,T}|_U^V = (x|_U^∅)^{𝔄|_U^∅, T∩U}` when `V ⊆ T` and `V = S∖U`.
    pub restriction_compatible: bool,
    /// Every `𝔄^T` is an adjugate of `x^{𝔄,T}`.
    pub member_adjugates: bool,
}

impl PatchingIdentities {
    pub fn all(&self) -> bool {
        self.empty_is_x
            && self.full_is_dual_cocube
            && self.restriction_compatible
            && self.member_adjugates
    }
}

#[derive(Clone, Debug)]
pub struct AdjugatePatching {
    /// `family[T] = x^{𝔄,T}`.
    pub family: Vec<Cube>,
    pub adjugates: Vec<CubeAdjugate>,
    /// `Pat 𝔓_𝔄`, built when `|S| ≤ 3`.
    pub double: Option<DoubleCube>,
    pub identities: PatchingIdentities,
}

fn restriction_compatible(x: &Cube, a: &CubeAdjugate, family: &[Cube]) -> Result<bool> {
    let idx = x.index();
    let full = idx.full();
    for u in idx.masks() {
        for v in idx.masks().filter(|v| v & u == 0) {
            let members = idx.members(u);
            for t in idx.masks() {
                let along = if t & !u == 0 {
                    v
                } else if v & !t == 0 && v == full & !u {
                    0
                } else {
                    continue;
                };
                let lhs = family[t as usize].restrict(u, v)?;
                let (xr, ar) = (x.restrict(u, along)?, a.restrict(u, along)?);
                let (rhs, _) = adjugate_member(&xr, &ar, CubeIndex::gather(&members, t & u))?;
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The patching family `𝔓_𝔄 = {x^{𝔄,T}}_T` of a monic cube with an adjugate,
/// its patch, and the identities relating it to `x`, the adjugate cocube and
/// restriction.
pub fn patching_family_of(x: &Cube, a: &CubeAdjugate) -> Result<AdjugatePatching> {
    if !x.is_monic() {
        return Err(Error::InvalidCube(
            "the patching family of an adjugate needs a monic cube".into(),
        ));
    }
    let report = verify_adjugate(x, a, false)?;
    if !report.valid {
        return Err(Error::InvalidCube(format!(
            "not an adjugate: {:?}",
            report.witness
        )));
    }
    let idx = x.index();
    let (family, adjugates): (Vec<Cube>, Vec<CubeAdjugate>) = idx
        .masks()
        .map(|t| adjugate_member(x, a, t))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .unzip();
    for c in &family {
        c.ensure_valid()?;
    }
    let member_adjugates = family
        .iter()
        .zip(&adjugates)
        .map(|(c, b)| verify_adjugate(c, b, false).map(|r| r.valid))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|v| v);
    let identities = PatchingIdentities {
        empty_is_x: family[0] == *x,
        full_is_dual_cocube: family[idx.full() as usize] == adjugate_cocube(x, a)?.dual(),
        restriction_compatible: restriction_compatible(x, a, &family)?,
        member_adjugates,
    };
    let double = if idx.len() <= MAX_DOUBLE_LABELS {
        Some(DoubleCube::patch(idx, &family)?)
    } else {
        None
    };
    Ok(AdjugatePatching {
        family,
        adjugates,
        double,
        identities,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MainTheoremReport {
    pub adjugate: AdjugateReport,
    pub monic: bool,
    /// Admissibility of `x^{𝔄,T}`, keyed by `T`.
    pub patched_admissible: BTreeMap<String, bool>,
    /// `𝟐^*(Pat 𝔓_{𝔄*}) = Typ(𝔞; x_S)`, exact equality.
    pub two_pullback_typical: Option<bool>,
    /// `e_S^*(Pat 𝔓_{𝔄*}) = x`, exact equality.
    pub full_pullback_is_x: Option<bool>,
    /// The adjugate is a regular adjugate.
    pub hypotheses: bool,
    /// `x` is monic and every `x^{𝔄,T}` is admissible.
    pub conclusion: bool,
    pub holds: bool,
}

/// A regular adjugate forces `x` monic and every `x^{𝔄,T}` admissible.
pub fn main_theorem_check(x: &Cube, a: &CubeAdjugate) -> Result<MainTheoremReport> {
    let adjugate = verify_adjugate(x, a, true)?;
    let monic = x.is_monic();
    let idx = x.index();
    let mut patched_admissible = BTreeMap::new();
    let mut two_pullback_typical = None;
    let mut full_pullback_is_x = None;
    if monic && adjugate.axiom_i && adjugate.axiom_ii {
        for t in idx.masks() {
            let (c, _) = adjugate_member(x, a, t)?;
            patched_admissible.insert(idx.key(t), c.admissible()?);
        }
        let (y, b) = dual_adjugate(x, a)?;
        if idx.len() <= MAX_DOUBLE_LABELS && y.is_monic() {
            let family: Vec<Cube> = idx
                .masks()
                .map(|t| adjugate_member(&y, &b, t).map(|p| p.0))
                .collect::<Result<_>>()?;
            let pat = DoubleCube::patch(idx, &family)?;
            let typ = Cube::typical(idx.clone(), a.scalars(), x.vertex(idx.full()))?;
            two_pullback_typical = Some(pat.pullback_two()? == typ);
            full_pullback_is_x = Some(pat.pullback_et(idx.full())? == *x);
        }
    }
    let hypotheses = adjugate.valid;
    let conclusion =
        monic && !patched_admissible.is_empty() && patched_admissible.values().all(|&v| v);
    Ok(MainTheoremReport {
        adjugate,
        monic,
        patched_admissible,
        two_pullback_typical,
        full_pullback_is_x,
        hypotheses,
        conclusion,
        holds: !hypotheses || conclusion,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct App1Report {
    pub h: Vec<String>,
    pub h_sequence: bool,
    pub f_nonunit: bool,
    pub hypotheses: bool,
    /// Conclusion of the main theorem for `Typ(f; M)` with the adjugate
    /// `(h, g)`; only meaningful under the hypotheses.
    pub adjugate_pathway: Option<bool>,
    /// `f` is an `M`-sequence, checked directly.
    pub direct: bool,
    pub agree: bool,
    pub implication_ok: bool,
}

/// With `h_s = f_s g_s` an `M`-sequence and every `f_s` a non-unit, `f` is
/// an `M`-sequence. Runs both the adjugate route and the direct check.
pub fn app1_check(f: &[RingElement], g: &[RingElement], m: &FPModule) -> Result<App1Report> {
    if f.len() != g.len() || f.is_empty() {
        return Err(Error::Dimension(
            "f and g need the same positive length".into(),
        ));
    }
    let ring = m.ring();
    let h: Vec<RingElement> = f.iter().zip(g).map(|(a, b)| ring.mul(a, b)).collect();
    let h_sequence = sequence_check(&h, m, SequenceMode::XSequence)?.holds;
    let f_nonunit = f.iter().all(|a| !ring.is_unit(a));
    let hypotheses = h_sequence && f_nonunit;
    let x = Cube::typical(CubeIndex::standard(f.len()), f, m)?;
    let adj = CubeAdjugate::scalar_stars(&x, h.clone(), g)?;
    let adjugate_pathway = if hypotheses {
        Some(main_theorem_check(&x, &adj)?.conclusion)
    } else {
        None
    };
    let direct = sequence_check(f, m, SequenceMode::XSequence)?.holds;
    Ok(App1Report {
        h: h.iter().map(|e| ring.format_element(e)).collect(),
        h_sequence,
        f_nonunit,
        hypotheses,
        adjugate_pathway,
        direct,
        agree: adjugate_pathway.is_none_or(|p| p == direct),
        implication_ok: !hypotheses || direct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adjugates::cofactor_adjugate;
    use crate::doublecubes::{dct_check, DctVariant};
    use crate::rings::Ring;

    const Z: Ring = Ring::Integers;

    fn zs(v: &[i64]) -> Vec<RingElement> {
        v.iter().map(|&a| Z.from_i64(a)).collect()
    }

    fn typ(f: &[i64]) -> Cube {
        Cube::typical(CubeIndex::standard(f.len()), &zs(f), &FPModule::free(Z, 1)).unwrap()
    }

    #[test]
    fn full_member_of_typical_cube() {
        let x = typ(&[2, 3]);
        let a = CubeAdjugate::scalar_stars(&x, zs(&[6, 6]), &zs(&[3, 2])).unwrap();
        let p = patching_family_of(&x, &a).unwrap();
        assert!(p.identities.all());
        assert_eq!(p.family[3], typ(&[3, 2]));
        assert_eq!(p.family[0], x);
    }

    #[test]
    fn regular_adjugate_on_typical_cube() {
        let x = typ(&[2, 3]);
        let a = CubeAdjugate::scalar_stars(&x, zs(&[10, 21]), &zs(&[5, 7])).unwrap();
        let r = main_theorem_check(&x, &a).unwrap();
        assert!(r.hypotheses && r.conclusion);
        assert_eq!(r.patched_admissible.len(), 4);
        assert_eq!(r.two_pullback_typical, Some(true));
        assert_eq!(r.full_pullback_is_x, Some(true));
    }

    #[test]
    fn non_regular_adjugate_is_vacuous() {
        let x = typ(&[2, 2]);
        let a = CubeAdjugate::scalar_stars(&x, zs(&[2, 2]), &zs(&[1, 1])).unwrap();
        let r = main_theorem_check(&x, &a).unwrap();
        assert!(!r.hypotheses && !r.conclusion && r.holds);
    }

    #[test]
    fn three_label_patch_satisfies_dct() {
        let x = typ(&[2, 3, 5]);
        let a = CubeAdjugate::scalar_stars(&x, zs(&[2, 3, 5]), &zs(&[1, 1, 1])).unwrap();
        let (y, b) = crate::adjugates::dual_adjugate(&x, &a).unwrap();
        let p = patching_family_of(&y, &b).unwrap();
        assert!(p.identities.all());
        let d = p.double.unwrap();
        for v in [DctVariant::Dct, DctVariant::BigAdm] {
            let r = dct_check(&d, v).unwrap();
            assert!(r.implication_ok && r.conclusion);
        }
        assert_eq!(d.pullback_et(7).unwrap(), x);
    }

    #[test]
    fn cofactor_adjugate_of_free_cube() {
        let x = typ(&[2, 3]);
        let a = cofactor_adjugate(&x).unwrap();
        let r = main_theorem_check(&x, &a).unwrap();
        assert!(r.hypotheses && r.holds);
    }

    #[test]
    fn corollary_examples() {
        let one = FPModule::free(Z, 1);
        let r = app1_check(&zs(&[2, 3]), &zs(&[5, 7]), &one).unwrap();
        assert!(r.hypotheses && r.direct && r.agree && r.adjugate_pathway == Some(true));
        let r = app1_check(&zs(&[2, 2]), &zs(&[3, 5]), &one).unwrap();
        assert!(!r.h_sequence && !r.direct && r.implication_ok);
    }
}
