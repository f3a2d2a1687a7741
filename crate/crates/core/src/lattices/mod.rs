//! Lattice-theoretic conditions on families of elements: distributive pairs,
//! strictly distributive, admissible and universally admissible families,
//! regular sequences, and the modular law.
//!
//! All checks are written against [`LatticeOps`] so they run unchanged on
//! explicit finite lattices and on subobject lattices of a module.

mod catalog;
mod finite;
mod transfer;

pub use catalog::{chain, diamond, pentagon, product, subgroup_lattice};
pub use finite::{FiniteLattice, ModularReport, SubobjectLattice, SUBOBJECT_CAP};
pub use transfer::{
    ideal_map_check, remark_univ_adm, transfer_check, IdealMapReport, RemarkReport, Strength,
    TransferReport, TransferVariant,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fpmod::{FPModule, Subobject};
use crate::par::{self, Execution};

/// Join, meet and order on some carrier.
pub trait LatticeOps: Sync {
    type Elem: Clone + PartialEq + Send + Sync + std::fmt::Debug;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    /// The maximum element, when the lattice has one.
    fn top(&self) -> Option<Self::Elem>;
}

/// The lattice `P(x)` of all submodules of a fixed module.
#[derive(Clone, Debug)]
pub struct ModuleLattice {
    ambient: FPModule,
}

impl ModuleLattice {
    pub fn new(ambient: &FPModule) -> ModuleLattice {
        ModuleLattice {
            ambient: ambient.clone(),
        }
    }
    pub fn ambient(&self) -> &FPModule {
        &self.ambient
    }
}

impl LatticeOps for ModuleLattice {
    type Elem = Subobject;
    fn join(&self, a: &Subobject, b: &Subobject) -> Subobject {
        a.join(b).expect("subobjects of one ambient")
    }
    fn meet(&self, a: &Subobject, b: &Subobject) -> Subobject {
        a.meet(b).expect("subobjects of one ambient")
    }
    fn leq(&self, a: &Subobject, b: &Subobject) -> bool {
        a.leq(b).expect("subobjects of one ambient")
    }
    fn top(&self) -> Option<Subobject> {
        Some(Subobject::whole(&self.ambient))
    }
}

/// Which family condition to test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyMode {
    StrictlyDistributive,
    Admissible,
    UniversallyAdmissible,
    /// The family in the given order of positions.
    RegularSequence(Vec<usize>),
}

/// The failing quantifier tuple. Positions refer to the family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassWitness {
    /// `(𝔵_T, x_t)` is not distributive.
    Pair { subset: Vec<usize>, element: usize },
    /// `(𝔵_U, 𝔵^{∧V})` is not distributive.
    Split { u: Vec<usize>, v: Vec<usize> },
    /// `({z_j}_{j<i}, z_i)` is not distributive.
    Step { i: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub holds: bool,
    pub witness: Option<ClassWitness>,
}

pub(crate) fn members(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask & (1 << i) != 0).collect()
}

/// `𝔵^{∨T}` for nonempty `T`.
pub fn join_over<L: LatticeOps>(l: &L, fam: &[L::Elem], t: u32) -> Result<L::Elem> {
    members(t, fam.len())
        .into_iter()
        .map(|i| fam[i].clone())
        .reduce(|a, b| l.join(&a, &b))
        .ok_or_else(|| Error::Lattice("join over the empty subset".into()))
}

/// `𝔵^{∧T}`; the empty meet is the top element.
pub fn meet_over<L: LatticeOps>(l: &L, fam: &[L::Elem], t: u32) -> Result<L::Elem> {
    match members(t, fam.len())
        .into_iter()
        .map(|i| fam[i].clone())
        .reduce(|a, b| l.meet(&a, &b))
    {
        Some(m) => Ok(m),
        None => l
            .top()
            .ok_or_else(|| Error::Lattice("empty meet in a lattice without a maximum".into())),
    }
}

/// `𝔵 ∧ y`.
pub fn meet_with<L: LatticeOps>(l: &L, fam: &[L::Elem], y: &L::Elem) -> Vec<L::Elem> {
    fam.iter().map(|x| l.meet(x, y)).collect()
}

/// `(𝔵, y)` is distributive: `𝔵^{∨S} ∧ y ≤ (𝔵 ∧ y)^{∨S}`.
pub fn is_distributive_pair<L: LatticeOps>(l: &L, fam: &[L::Elem], y: &L::Elem) -> Result<bool> {
    let full = (1u32 << fam.len()) - 1;
    let lhs = l.meet(&join_over(l, fam, full)?, y);
    let rhs = join_over(l, &meet_with(l, fam, y), full)?;
    Ok(l.leq(&lhs, &rhs))
}

fn sub<E: Clone>(fam: &[E], t: u32) -> Vec<E> {
    members(t, fam.len())
        .into_iter()
        .map(|i| fam[i].clone())
        .collect()
}

pub fn family_class<L: LatticeOps>(
    l: &L,
    fam: &[L::Elem],
    mode: &FamilyMode,
) -> Result<ClassReport> {
    family_class_with(l, fam, mode, Execution::Sequential)
}

/// Brute force over the quantifier range of `mode`.
pub fn family_class_with<L: LatticeOps>(
    l: &L,
    fam: &[L::Elem],
    mode: &FamilyMode,
    exec: Execution,
) -> Result<ClassReport> {
    let n = fam.len();
    if n == 0 {
        return Err(Error::Lattice("families must be nonempty".into()));
    }
    if n > 16 {
        return Err(Error::Lattice(format!(
            "family of {n} elements is too large for brute force"
        )));
    }
    let full: u32 = (1 << n) - 1;
    let witness = match mode {
        FamilyMode::StrictlyDistributive => {
            if n <= 1 {
                None
            } else {
                let ts: Vec<usize> = (0..n).collect();
                first_failure(exec, &ts, |&t| {
                    let rest = full & !(1 << t);
                    Ok(
                        (!is_distributive_pair(l, &sub(fam, rest), &fam[t])?).then(|| {
                            ClassWitness::Pair {
                                subset: members(rest, n),
                                element: t,
                            }
                        }),
                    )
                })?
            }
        }
        FamilyMode::Admissible => admissible_witness(l, fam, exec)?,
        FamilyMode::UniversallyAdmissible => {
            let mut splits = Vec::new();
            for u in 1..full {
                let rest = full & !u;
                let mut v = rest;
                while v != 0 {
                    splits.push((u, v));
                    v = (v - 1) & rest;
                }
            }
            splits.sort();
            first_failure(exec, &splits, |&(u, v)| {
                let y = meet_over(l, fam, v)?;
                Ok(
                    (!is_distributive_pair(l, &sub(fam, u), &y)?).then(|| ClassWitness::Split {
                        u: members(u, n),
                        v: members(v, n),
                    }),
                )
            })?
        }
        FamilyMode::RegularSequence(order) => {
            let mut sorted = order.clone();
            sorted.sort();
            if sorted != (0..n).collect::<Vec<_>>() {
                return Err(Error::Lattice(
                    "the ordering must be a permutation of the family".into(),
                ));
            }
            let z: Vec<L::Elem> = order.iter().map(|&i| fam[i].clone()).collect();
            let steps: Vec<usize> = (1..n).collect();
            first_failure(exec, &steps, |&i| {
                Ok((!is_distributive_pair(l, &z[..i], &z[i])?)
                    .then_some(ClassWitness::Step { i: i + 1 }))
            })?
        }
    };
    Ok(ClassReport {
        holds: witness.is_none(),
        witness,
    })
}

fn admissible_witness<L: LatticeOps>(
    l: &L,
    fam: &[L::Elem],
    exec: Execution,
) -> Result<Option<ClassWitness>> {
    let n = fam.len();
    if n <= 1 {
        return Ok(None);
    }
    let full: u32 = (1 << n) - 1;
    let mut pairs = Vec::new();
    for t in 1..full {
        for s in members(full & !t, n) {
            pairs.push((t, s));
        }
    }
    first_failure(exec, &pairs, |&(t, s)| {
        Ok(
            (!is_distributive_pair(l, &sub(fam, t), &fam[s])?).then(|| ClassWitness::Pair {
                subset: members(t, n),
                element: s,
            }),
        )
    })
}

fn first_failure<T, W, F>(exec: Execution, items: &[T], f: F) -> Result<Option<W>>
where
    T: Sync,
    W: Send,
    F: Fn(&T) -> Result<Option<W>> + Sync + Send,
{
    par::find_first(exec, items, |it| f(it).transpose()).transpose()
}
