use std::collections::HashMap;
use std::sync::Mutex;

use itertools::Itertools;
use serde::Serialize;

use crate::error::Result;
use crate::fpmod::{FPModule, ModuleMorphism, Subobject};
use crate::lattices::{family_class, FamilyMode, ModuleLattice};
use crate::rings::RingElement;

use super::{AdmissibilityMethod, Cube, CubeIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceMode {
    /// The given order only.
    RegularOrdered,
    /// Every order.
    XSequence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceReport {
    pub holds: bool,
    pub mode: SequenceMode,
    /// First ordering (as input positions) that is not regular.
    pub failing_order: Option<Vec<usize>>,
    /// Position within that ordering where regularity breaks.
    pub failing_step: Option<usize>,
    /// Set when the failure is a unit rather than a zero divisor.
    pub unit: bool,
    /// `Typ(f; x)` admissible; filled in `XSequence` mode.
    pub typical_admissible: Option<bool>,
}

/// Memo of `(f_j)` acting on `x/(f_T)`, keyed by `(T, j)`.
struct Quotients<'a> {
    x: &'a FPModule,
    fs: &'a [RingElement],
    mono: Mutex<HashMap<(u32, usize), bool>>,
}

impl Quotients<'_> {
    fn is_mono(&self, t: u32, j: usize) -> bool {
        if let Some(&b) = self.mono.lock().expect("memo lock").get(&(t, j)) {
            return b;
        }
        let gens: Vec<RingElement> = (0..self.fs.len())
            .filter(|i| t & (1 << i) != 0)
            .map(|i| self.fs[i].clone())
            .collect();
        let q = self.x.quotient_by_scalars(&gens);
        let b = ModuleMorphism::scalar(&q, &self.fs[j]).is_mono();
        self.mono.lock().expect("memo lock").insert((t, j), b);
        b
    }

    /// First failing step of the ordering, with whether it failed on a unit.
    fn first_failure(&self, order: &[usize]) -> Option<(usize, bool)> {
        let ring = self.x.ring();
        let mut t = 0u32;
        for (step, &j) in order.iter().enumerate() {
            if ring.is_unit(&self.fs[j]) {
                return Some((step, true));
            }
            if !self.is_mono(t, j) {
                return Some((step, false));
            }
            t |= 1 << j;
        }
        None
    }
}

/// Whether `fs` is an `x`-regular sequence (in the given order) or an
/// `x`-sequence (in every order).
pub fn sequence_check(
    fs: &[RingElement],
    x: &FPModule,
    mode: SequenceMode,
) -> Result<SequenceReport> {
    let memo = Quotients {
        x,
        fs,
        mono: Mutex::new(HashMap::new()),
    };
    let n = fs.len();
    let orders: Vec<Vec<usize>> = match mode {
        SequenceMode::RegularOrdered => vec![(0..n).collect()],
        SequenceMode::XSequence => (0..n).permutations(n).collect(),
    };
    let failure = orders.iter().find_map(|o| {
        memo.first_failure(o)
            .map(|(step, unit)| (o.clone(), step, unit))
    });
    let typical_admissible = match mode {
        SequenceMode::RegularOrdered => None,
        SequenceMode::XSequence if n <= super::MAX_LABELS => {
            let typ = Cube::typical(CubeIndex::standard(n), fs, x)?;
            Some(
                typ.is_admissible(AdmissibilityMethod::Recursive)?
                    .admissible,
            )
        }
        SequenceMode::XSequence => None,
    };
    Ok(SequenceReport {
        holds: failure.is_none(),
        mode,
        unit: failure.as_ref().is_some_and(|f| f.2),
        failing_step: failure.as_ref().map(|f| f.1),
        failing_order: failure.map(|f| f.0),
        typical_admissible,
    })
}

/// The four conditions relating `Typ(f_S; x)` and the family of subobjects
/// `f_s x ⊆ x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XSequenceLemma {
    /// `Typ(f_S; x)` is admissible.
    pub typical_admissible: bool,
    /// `f_S` is an `x`-sequence.
    pub x_sequence: bool,
    /// Every `(f_s)_x` is mono and `{f_s x}` is admissible.
    pub admissible_family: bool,
    /// Every `(f_s)_x` is mono and `{f_s x}` is universally admissible.
    pub universally_admissible_family: bool,
    pub agree: bool,
}

pub fn x_sequence_lemma(fs: &[RingElement], x: &FPModule) -> Result<XSequenceLemma> {
    let typ = Cube::typical(CubeIndex::standard(fs.len()), fs, x)?;
    let typical_admissible = typ
        .is_admissible(AdmissibilityMethod::Recursive)?
        .admissible;
    let x_sequence = sequence_check(fs, x, SequenceMode::XSequence)?.holds;
    let maps: Vec<ModuleMorphism> = fs.iter().map(|f| ModuleMorphism::scalar(x, f)).collect();
    let mono = maps.iter().all(ModuleMorphism::is_mono);
    let l = ModuleLattice::new(x);
    let fam: Vec<Subobject> = maps.iter().map(Subobject::image_of).collect();
    let admissible_family = mono && family_class(&l, &fam, &FamilyMode::Admissible)?.holds;
    let universally_admissible_family =
        mono && family_class(&l, &fam, &FamilyMode::UniversallyAdmissible)?.holds;
    let agree = [x_sequence, admissible_family, universally_admissible_family]
        .iter()
        .all(|&b| b == typical_admissible);
    Ok(XSequenceLemma {
        typical_admissible,
        x_sequence,
        admissible_family,
        universally_admissible_family,
        agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::Ring;

    fn zs(r: Ring, v: &[i64]) -> Vec<RingElement> {
        v.iter().map(|&a| r.from_i64(a)).collect()
    }

    #[test]
    fn worked_examples() {
        let z = Ring::Integers;
        let a = FPModule::free(z, 1);
        let r = sequence_check(&zs(z, &[2, 3]), &a, SequenceMode::XSequence).unwrap();
        assert!(r.holds);
        assert_eq!(r.typical_admissible, Some(true));
        let r = sequence_check(&zs(z, &[2, 2]), &a, SequenceMode::XSequence).unwrap();
        assert!(!r.holds);
        assert_eq!(r.failing_step, Some(1));
        assert_eq!(r.typical_admissible, Some(false));
        let m = FPModule::cyclic(z, &z.from_i64(10));
        let r = sequence_check(&zs(z, &[5]), &m, SequenceMode::RegularOrdered).unwrap();
        assert!(!r.holds);
        let r = sequence_check(&zs(z, &[-1, 2]), &a, SequenceMode::RegularOrdered).unwrap();
        assert!(r.unit && !r.holds);
    }

    #[test]
    fn lemma_conditions() {
        let z = Ring::Integers;
        let a = FPModule::free(z, 1);
        for (v, expect) in [(&[2, 3][..], true), (&[2, 3, 5], true), (&[0, 3], false)] {
            let r = x_sequence_lemma(&zs(z, v), &a).unwrap();
            assert!(r.agree, "{v:?}");
            assert_eq!(r.x_sequence, expect, "{v:?}");
        }
        // subgroups of ℤ form a distributive lattice, so the lattice side
        // holds for any nonzero family while the cube side does not
        for v in [&[2, 2][..], &[6, 10, 15]] {
            let r = x_sequence_lemma(&zs(z, v), &a).unwrap();
            assert!(!r.typical_admissible && !r.x_sequence, "{v:?}");
            assert!(
                r.admissible_family && r.universally_admissible_family && !r.agree,
                "{v:?}"
            );
        }
        // a unit entry: the typical cube is admissible, the sequence is not
        let r = x_sequence_lemma(&zs(z, &[1, 2]), &a).unwrap();
        assert!(r.typical_admissible && !r.x_sequence && !r.agree);
    }
}
