//! Fitting ideals, grade and the exactness criterion for complexes of free
//! modules.

use serde::{Serialize, Serializer};

use crate::adjugates::{verify_adjugate, CubeAdjugate};
use crate::complexes::ChainComplex;
use crate::cubes::Cube;
use crate::error::{Error, Result};
use crate::fpmod::{FPModule, ModuleMorphism};
use crate::linalg::minors;
use crate::rings::{Ring, RingElement};

/// A finitely generated ideal with its canonical generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealRep {
    pub ring: Ring,
    pub generators: Vec<RingElement>,
    pub canonical: RingElement,
}

impl IdealRep {
    pub fn new(ring: Ring, generators: Vec<RingElement>) -> IdealRep {
        let canonical = generators
            .iter()
            .fold(ring.zero(), |acc, g| ring.ideal_sum(&acc, g));
        IdealRep {
            ring,
            generators,
            canonical,
        }
    }

    pub fn unit(ring: Ring) -> IdealRep {
        IdealRep::new(ring, vec![ring.one()])
    }

    pub fn zero(ring: Ring) -> IdealRep {
        IdealRep::new(ring, vec![])
    }

    pub fn is_unit(&self) -> bool {
        self.ring.is_unit(&self.canonical)
    }

    pub fn is_zero(&self) -> bool {
        self.canonical.is_zero()
    }

    /// A subset of the generators spanning the same ideal, picked greedily.
    pub fn spanning_subset(&self) -> Vec<RingElement> {
        let mut acc = self.ring.zero();
        let mut out = Vec::new();
        for g in &self.generators {
            let next = self.ring.ideal_sum(&acc, g);
            if next != acc {
                out.push(g.clone());
                acc = next;
            }
        }
        out
    }
}

impl Serialize for IdealRep {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.ring.format_element(&self.canonical))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum GradeValue {
    Finite(usize),
    Infinite,
}

impl GradeValue {
    pub fn at_least(self, i: usize) -> bool {
        match self {
            GradeValue::Finite(g) => g >= i,
            GradeValue::Infinite => true,
        }
    }
}

impl Serialize for GradeValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            GradeValue::Finite(g) => s.serialize_u64(*g as u64),
            GradeValue::Infinite => s.serialize_str("inf"),
        }
    }
}

fn require_free(m: &FPModule) -> Result<usize> {
    if m.is_free_presentation() {
        Ok(m.gens())
    } else {
        Err(Error::NotFree("Fitting ideals need free modules".into()))
    }
}

/// `I_t(φ)`: the ideal of `t`-minors; `(1)` for `t = 0`, `(0)` above the
/// smaller dimension.
pub fn fitting_ideal(phi: &ModuleMorphism, t: usize) -> Result<IdealRep> {
    let rows = require_free(phi.target())?;
    let cols = require_free(phi.source())?;
    let ring = phi.ring();
    if t == 0 {
        return Ok(IdealRep::unit(ring));
    }
    if t > rows.min(cols) {
        return Ok(IdealRep::zero(ring));
    }
    Ok(IdealRep::new(ring, minors(phi.matrix(), t)?))
}

/// Grade of `I` in the ring: `0` for `(0)`, `∞` for `(1)`, otherwise
/// `n − max{i : H_i(K(g_1, …, g_n)) ≠ 0}` for a generating set `g`.
pub fn grade(ideal: &IdealRep) -> GradeValue {
    if ideal.is_zero() {
        return GradeValue::Finite(0);
    }
    if ideal.is_unit() {
        return GradeValue::Infinite;
    }
    let gens = ideal.spanning_subset();
    let k = ChainComplex::koszul(&FPModule::free(ideal.ring, 1), &gens);
    let n = gens.len();
    let top = (0..=n)
        .rev()
        .find(|&i| !k.homology_shape(i as i64).is_zero())
        .unwrap_or(0);
    GradeValue::Finite(n - top)
}

/// Closed form over ℤ: `(0) ↦ 0`, `(1) ↦ ∞`, anything else `↦ 1`.
pub fn grade_over_integers(ideal: &IdealRep) -> Option<GradeValue> {
    (ideal.ring == Ring::Integers).then(|| {
        if ideal.is_zero() {
            GradeValue::Finite(0)
        } else if ideal.is_unit() {
            GradeValue::Infinite
        } else {
            GradeValue::Finite(1)
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BeMode {
    CriterionOnly,
    EquivalenceTest,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BeReport {
    /// `r_i` for `i = 1, …, s`.
    pub r: Vec<i64>,
    /// `I_{r_i}(φ_i)`, canonical generators.
    pub fitting: Vec<IdealRep>,
    pub grades: Vec<Option<GradeValue>>,
    /// Indices `i` with `r_i < 0`; these count as failures.
    pub negative_ranks: Vec<usize>,
    /// `F` is 0-spherical.
    pub spherical: bool,
    /// `grade I_{r_i}(φ_i) ≥ i` for every `i`.
    pub criterion: bool,
    /// First `i` where the grade condition fails.
    pub witness: Option<usize>,
    pub equivalent: Option<bool>,
}

/// Evaluates both sides of the exactness criterion on a complex of free
/// modules `0 → F_s → … → F_0 → 0`.
pub fn be_check(f: &ChainComplex, mode: BeMode) -> Result<BeReport> {
    if f.is_empty() {
        return Ok(BeReport {
            r: vec![],
            fitting: vec![],
            grades: vec![],
            negative_ranks: vec![],
            spherical: true,
            criterion: true,
            witness: None,
            equivalent: (mode == BeMode::EquivalenceTest).then_some(true),
        });
    }
    if f.lo() < 0 {
        return Err(Error::Dimension(
            "the complex must live in degrees ≥ 0".into(),
        ));
    }
    let s = f.hi();
    let ranks: Vec<i64> = (0..=s)
        .map(|k| require_free(&f.module(k)).map(|r| r as i64))
        .collect::<Result<_>>()?;
    let mut r = Vec::new();
    let mut fitting = Vec::new();
    let mut grades = Vec::new();
    let mut negative_ranks = Vec::new();
    let mut witness = None;
    for i in 1..=s {
        let ri: i64 = (i..=s)
            .map(|j| {
                if (j - i) % 2 == 0 {
                    ranks[j as usize]
                } else {
                    -ranks[j as usize]
                }
            })
            .sum();
        r.push(ri);
        let ok = if ri < 0 {
            negative_ranks.push(i as usize);
            fitting.push(IdealRep::zero(f.ring()));
            grades.push(None);
            false
        } else {
            let ideal = fitting_ideal(&f.boundary_or_zero(i), ri as usize)?;
            let g = grade(&ideal);
            fitting.push(ideal);
            grades.push(Some(g));
            g.at_least(i as usize)
        };
        if !ok && witness.is_none() {
            witness = Some(i as usize);
        }
    }
    let spherical = f.is_spherical(0).spherical;
    let criterion = witness.is_none();
    Ok(BeReport {
        r,
        fitting,
        grades,
        negative_ranks,
        spherical,
        criterion,
        witness,
        equivalent: (mode == BeMode::EquivalenceTest).then_some(spherical == criterion),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub equal_rank_free: bool,
    pub regular_adjugate: bool,
    pub criterion: bool,
    pub implication_ok: bool,
}

/// For a cube of free modules of one rank with a regular adjugate, `Tot x`
/// satisfies the grade condition.
pub fn relation_with_be(x: &Cube, a: &CubeAdjugate) -> Result<RelationReport> {
    let rank = x.vertex(0).gens();
    let equal_rank_free = x
        .vertices()
        .iter()
        .all(|m| m.is_free_presentation() && m.gens() == rank);
    let regular_adjugate = verify_adjugate(x, a, true)?.valid;
    let criterion = if equal_rank_free {
        be_check(&x.total_complex()?, BeMode::CriterionOnly)?.criterion
    } else {
        false
    };
    Ok(RelationReport {
        equal_rank_free,
        regular_adjugate,
        criterion,
        implication_ok: !(equal_rank_free && regular_adjugate) || criterion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    const Z: Ring = Ring::Integers;

    fn zs(v: &[i64]) -> Vec<RingElement> {
        v.iter().map(|&a| Z.from_i64(a)).collect()
    }

    fn koszul(v: &[i64]) -> ChainComplex {
        ChainComplex::koszul(&FPModule::free(Z, 1), &zs(v))
    }

    #[test]
    fn fitting_ideals_of_diagonal_matrix() {
        let f2 = FPModule::free(Z, 2);
        let phi =
            ModuleMorphism::new(f2.clone(), f2, Matrix::from_i64(Z, 2, 2, &[2, 0, 0, 3])).unwrap();
        assert_eq!(fitting_ideal(&phi, 1).unwrap().canonical, Z.from_i64(1));
        assert_eq!(fitting_ideal(&phi, 2).unwrap().canonical, Z.from_i64(6));
        assert!(fitting_ideal(&phi, 0).unwrap().is_unit());
        assert!(fitting_ideal(&phi, 3).unwrap().is_zero());
    }

    #[test]
    fn grades_over_integers() {
        assert_eq!(grade(&IdealRep::new(Z, zs(&[4, 6]))), GradeValue::Finite(1));
        assert_eq!(grade(&IdealRep::new(Z, zs(&[2, 3]))), GradeValue::Infinite);
        assert_eq!(grade(&IdealRep::zero(Z)), GradeValue::Finite(0));
        let zm = Ring::integers_mod(12).unwrap();
        assert_eq!(
            grade(&IdealRep::new(zm, vec![zm.from_i64(4)])),
            GradeValue::Finite(0)
        );
    }

    #[test]
    fn koszul_complexes() {
        let r = be_check(&koszul(&[2, 3]), BeMode::EquivalenceTest).unwrap();
        assert_eq!(r.r, vec![1, 1]);
        assert!(r.fitting.iter().all(IdealRep::is_unit));
        assert_eq!(r.grades, vec![Some(GradeValue::Infinite); 2]);
        assert!(r.spherical && r.criterion && r.equivalent == Some(true));

        let r = be_check(&koszul(&[2, 2]), BeMode::EquivalenceTest).unwrap();
        assert_eq!(r.fitting[1].canonical, Z.from_i64(2));
        assert_eq!(r.grades[1], Some(GradeValue::Finite(1)));
        assert!(!r.spherical && !r.criterion && r.witness == Some(2));

        let r = be_check(&ChainComplex::zero(Z), BeMode::EquivalenceTest).unwrap();
        assert!(r.spherical && r.criterion);
    }
}
