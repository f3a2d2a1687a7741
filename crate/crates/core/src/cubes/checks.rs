use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fpmod::{ModuleMorphism, ModuleShape, Subobject};
use crate::lattices::{family_class, is_distributive_pair, FamilyMode, ModuleLattice};

use super::{fib_of_family, AdmissibilityMethod, Cube, CubeIndex, Mask};

/// Homology of `Tot x` next to that of `Cone(Tot d^s)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeReport {
    pub label: String,
    pub tot: Vec<ModuleShape>,
    pub cone: Vec<ModuleShape>,
    pub agree: bool,
}

/// Homology of `Tot x` compared with the long-exact-sequence prediction
/// from direction `s`, when the frontside `s`-face is 0-spherical.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CalReport {
    pub label: String,
    pub front_spherical: bool,
    pub h0: bool,
    pub h1: bool,
    pub higher: bool,
    pub holds: bool,
}

/// `H_0 Tot d^s` injective, computed directly and through subobjects of `x_∅`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H0TotdsReport {
    pub label: String,
    pub direct: bool,
    /// `(∨_{t≠s} im x_t) ∧ im x_s = ∨_{t≠s} im x_{st}` in `P(x_∅)`.
    pub lattice_identity: bool,
    /// `({im x_t}_{t≠s}, im x_s)` is a distributive pair.
    pub distributive: bool,
    pub fibered: bool,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TotisomReport {
    pub admissible: bool,
    pub higher_vanish: bool,
    pub h0_tot: ModuleShape,
    pub h0_s: ModuleShape,
    pub holds: bool,
}

/// `Fib 𝔵` admissible against `𝔵` universally admissible in `P(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibCharReport {
    pub fib_admissible: bool,
    pub universally_admissible: bool,
    pub agree: bool,
}

fn shapes(c: &crate::complexes::ChainComplex, hi: i64) -> Vec<ModuleShape> {
    (0..=hi).map(|k| c.homology_shape(k)).collect()
}

fn label_index(x: &Cube, s: &str) -> Result<usize> {
    x.index().position(s)
}

/// `H_k Cone(Tot d^{s,x}) ≅ H_k Tot x` for every `k`.
pub fn cone_check(x: &Cube, s: &str) -> Result<ConeReport> {
    let k = label_index(x, s)?;
    let n = x.dim() as i64;
    let tot = shapes(&x.total_complex()?, n);
    let cone = shapes(&x.tot_direction_map(k)?.mapping_cone(), n);
    Ok(ConeReport {
        label: s.to_string(),
        agree: tot == cone,
        tot,
        cone,
    })
}

pub fn cal_of_tot_check(x: &Cube, s: &str) -> Result<CalReport> {
    let k = label_index(x, s)?;
    let n = x.dim() as i64;
    let map = x.tot_direction_map(k)?;
    let front_spherical = map.target.is_spherical(0).spherical;
    let tot = x.total_complex()?;
    let h0d = map.h0();
    let h0 = tot.homology_shape(0) == h0d.cokernel().module.shape();
    let h1 = tot.homology_shape(1) == h0d.kernel().module.shape();
    let higher = (2..=n).all(|p| tot.homology_shape(p) == map.source.homology_shape(p - 1));
    Ok(CalReport {
        label: s.to_string(),
        front_spherical,
        h0,
        h1,
        higher,
        holds: !front_spherical || (h0 && h1 && higher),
    })
}

/// Compares both sides of the `H_0 Tot d^s` criterion on a monic cube.
pub fn h0_totds_check(x: &Cube, s: &str) -> Result<H0TotdsReport> {
    let k = label_index(x, s)?;
    let direct = x.tot_direction_map(k)?.h0().is_mono();
    let im = |t: Mask| Subobject::image_of(&x.hom(t, 0));
    let others: Vec<usize> = (0..x.dim()).filter(|&t| t != k).collect();
    let l = ModuleLattice::new(x.vertex(0));
    let xs = im(1 << k);
    let (lattice_identity, distributive) = if others.is_empty() {
        (true, true)
    } else {
        let fam: Vec<Subobject> = others.iter().map(|&t| im(1 << t)).collect();
        let mut join = fam[0].clone();
        for f in &fam[1..] {
            join = join.join(f)?;
        }
        let lhs = join.meet(&xs)?;
        let mut rhs = im(1 << others[0] | 1 << k);
        for &t in &others[1..] {
            rhs = rhs.join(&im(1 << t | 1 << k))?;
        }
        (lhs == rhs, is_distributive_pair(&l, &fam, &xs)?)
    };
    let fibered = x.is_fibered()?.fibered;
    Ok(H0TotdsReport {
        label: s.to_string(),
        direct,
        lattice_identity,
        distributive,
        fibered,
        consistent: direct == lattice_identity && (!fibered || distributive == lattice_identity),
    })
}

/// For admissible `x`: `H_p Tot x = 0` for `p ≥ 1` and `H_0 Tot x ≅ H_0^S x`.
pub fn totisom_check(x: &Cube) -> Result<TotisomReport> {
    let admissible = x.is_admissible(AdmissibilityMethod::Recursive)?.admissible;
    let tot = x.total_complex()?;
    let higher_vanish = (1..=x.dim() as i64).all(|p| tot.homology_shape(p).is_zero());
    let h0_tot = tot.homology_shape(0);
    let h0_s = x.h0_total()?.shape();
    let holds = !admissible || (higher_vanish && h0_tot == h0_s);
    Ok(TotisomReport {
        admissible,
        higher_vanish,
        h0_tot,
        h0_s,
        holds,
    })
}

/// For admissible `x`, iterated `H_0` over any two orderings of the same
/// labels gives vertexwise isomorphic cubes. Returns the first ordering that
/// disagrees with the sorted one.
pub fn ordering_check(x: &Cube) -> Result<Option<Vec<String>>> {
    if !x.admissible()? {
        return Ok(None);
    }
    let labels: Vec<&str> = x.index().labels().iter().map(String::as_str).collect();
    for r in 1..=labels.len() {
        for subset in labels.iter().copied().combinations(r) {
            let reference: Vec<ModuleShape> = x
                .h0_iterated(&subset)?
                .vertices()
                .iter()
                .map(|m| m.shape())
                .collect();
            for perm in subset.iter().copied().permutations(r) {
                let got: Vec<ModuleShape> = x
                    .h0_iterated(&perm)?
                    .vertices()
                    .iter()
                    .map(|m| m.shape())
                    .collect();
                if got != reference {
                    return Ok(Some(perm.iter().map(|s| s.to_string()).collect()));
                }
            }
        }
    }
    Ok(None)
}

/// Compares admissibility of `Fib 𝔵` with universal admissibility of the
/// images of `𝔵`. Every member must be a monomorphism.
pub fn fib_char_check(index: &CubeIndex, maps: &[ModuleMorphism]) -> Result<FibCharReport> {
    if let Some(i) = maps.iter().position(|f| !f.is_mono()) {
        return Err(Error::InvalidCube(format!(
            "member {} is not a monomorphism",
            index.label(i)
        )));
    }
    let fib = fib_of_family(index, maps)?;
    let fib_admissible = fib
        .cube
        .is_admissible(AdmissibilityMethod::Recursive)?
        .admissible;
    let l = ModuleLattice::new(maps[0].target());
    let fam: Vec<Subobject> = maps.iter().map(Subobject::image_of).collect();
    let universally_admissible = family_class(&l, &fam, &FamilyMode::UniversallyAdmissible)?.holds;
    Ok(FibCharReport {
        fib_admissible,
        universally_admissible,
        agree: fib_admissible == universally_admissible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubes::CubeIndex;
    use crate::fpmod::FPModule;
    use crate::rings::Ring;

    const Z: Ring = Ring::Integers;

    fn typ(v: &[i64]) -> Cube {
        let fs: Vec<_> = v.iter().map(|&a| Z.from_i64(a)).collect();
        Cube::typical(CubeIndex::standard(v.len()), &fs, &FPModule::free(Z, 1)).unwrap()
    }

    #[test]
    fn typical_cubes() {
        for v in [&[2, 3][..], &[2, 2], &[6, 10, 15], &[4, 6, 9]] {
            let x = typ(v);
            for s in ["1", "2"] {
                assert!(cone_check(&x, s).unwrap().agree);
                assert!(cal_of_tot_check(&x, s).unwrap().holds);
                assert!(h0_totds_check(&x, s).unwrap().consistent);
            }
            assert!(totisom_check(&x).unwrap().holds);
            assert_eq!(ordering_check(&x).unwrap(), None);
        }
    }

    #[test]
    fn fib_char_on_plane_lines() {
        // three lines through the origin of ℤ²: the family is not admissible
        let f1 = FPModule::free(Z, 1);
        let f2 = FPModule::free(Z, 2);
        let line = |a, b| {
            ModuleMorphism::new(
                f1.clone(),
                f2.clone(),
                crate::linalg::Matrix::from_i64(Z, 2, 1, &[a, b]),
            )
            .unwrap()
        };
        let maps = vec![line(1, 0), line(0, 1), line(1, 1)];
        let r = fib_char_check(&CubeIndex::standard(3), &maps).unwrap();
        assert!(r.agree && !r.fib_admissible);
        let r = fib_char_check(&CubeIndex::standard(2), &maps[..2]).unwrap();
        assert!(r.agree && r.fib_admissible);
    }

    #[test]
    fn h0_totds_on_non_coprime_pair() {
        let r = h0_totds_check(&typ(&[2, 2]), "1").unwrap();
        assert!(!r.direct && !r.lattice_identity && !r.fibered);
    }
}
