use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fpmod::{FPModule, Subobject};

use super::LatticeOps;

/// Maximum size of a generated subobject lattice.
pub const SUBOBJECT_CAP: usize = 512;

/// A finite lattice given by its order relation, with join and meet tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    names: Vec<String>,
    leq: Vec<bool>,
    join: Vec<usize>,
    meet: Vec<usize>,
    top: usize,
    bottom: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModularReport {
    pub modular: bool,
    /// `(a, b, c)` with `a ≤ c` and `a∨(b∧c) ≠ (a∨b)∧c`.
    pub witness: Option<(String, String, String)>,
    /// Condition (2): `a ≤ b`, `a∨c = b∨c`, `a∧c = b∧c` force `a = b`.
    pub cancellation: bool,
    pub cancellation_witness: Option<(String, String, String)>,
}

impl FiniteLattice {
    /// `leq[i][j]` means element `i` lies below element `j`.
    pub fn from_leq(names: Vec<String>, leq: Vec<Vec<bool>>) -> Result<FiniteLattice> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Lattice(
                "a lattice needs at least one element".into(),
            ));
        }
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::Lattice(format!("order table must be {n}x{n}")));
        }
        let le = |i: usize, j: usize| leq[i][j];
        for i in 0..n {
            if !le(i, i) {
                return Err(Error::Lattice(format!("{} is not below itself", names[i])));
            }
            for j in 0..n {
                if i != j && le(i, j) && le(j, i) {
                    return Err(Error::Lattice(format!(
                        "{} and {} are mutually below",
                        names[i], names[j]
                    )));
                }
                for k in 0..n {
                    if le(i, j) && le(j, k) && !le(i, k) {
                        return Err(Error::Lattice(format!(
                            "order not transitive on {}, {}, {}",
                            names[i], names[j], names[k]
                        )));
                    }
                }
            }
        }
        let bound = |i: usize, j: usize, upper: bool| -> Option<usize> {
            let cands: Vec<usize> = (0..n)
                .filter(|&k| {
                    if upper {
                        le(i, k) && le(j, k)
                    } else {
                        le(k, i) && le(k, j)
                    }
                })
                .collect();
            cands.iter().copied().find(|&c| {
                cands
                    .iter()
                    .all(|&d| if upper { le(c, d) } else { le(d, c) })
            })
        };
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                join[i * n + j] = bound(i, j, true).ok_or_else(|| {
                    Error::Lattice(format!("{} and {} have no join", names[i], names[j]))
                })?;
                meet[i * n + j] = bound(i, j, false).ok_or_else(|| {
                    Error::Lattice(format!("{} and {} have no meet", names[i], names[j]))
                })?;
            }
        }
        let top = (0..n)
            .find(|&t| (0..n).all(|i| le(i, t)))
            .expect("finite lattices have a maximum");
        let bottom = (0..n)
            .find(|&b| (0..n).all(|i| le(b, i)))
            .expect("finite lattices have a minimum");
        Ok(FiniteLattice {
            names,
            leq: leq.concat(),
            join,
            meet,
            top,
            bottom,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::Lattice(format!("unknown element {name:?}")))
    }
    pub fn top_element(&self) -> usize {
        self.top
    }
    pub fn bottom_element(&self) -> usize {
        self.bottom
    }
    pub fn leq_table(&self) -> Vec<Vec<bool>> {
        self.leq.chunks(self.len()).map(<[bool]>::to_vec).collect()
    }

    /// `a∨(b∧c) ≤ (a∨b)∧c` whenever `a ≤ c`; holds in every lattice.
    pub fn semi_modular_law_holds(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    !self.leq(&a, &c)
                        || self.leq(
                            &self.join(&a, &self.meet(&b, &c)),
                            &self.meet(&self.join(&a, &b), &c),
                        )
                })
            })
        })
    }

    pub fn is_modular(&self) -> ModularReport {
        let n = self.len();
        let name = |i: usize| self.names[i].clone();
        let mut witness = None;
        'outer: for a in 0..n {
            for c in 0..n {
                if !self.leq(&a, &c) {
                    continue;
                }
                for b in 0..n {
                    if self.join(&a, &self.meet(&b, &c)) != self.meet(&self.join(&a, &b), &c) {
                        witness = Some((name(a), name(b), name(c)));
                        break 'outer;
                    }
                }
            }
        }
        let mut cancellation_witness = None;
        'outer2: for a in 0..n {
            for b in 0..n {
                if a == b || !self.leq(&a, &b) {
                    continue;
                }
                for c in 0..n {
                    if self.join(&a, &c) == self.join(&b, &c)
                        && self.meet(&a, &c) == self.meet(&b, &c)
                    {
                        cancellation_witness = Some((name(a), name(b), name(c)));
                        break 'outer2;
                    }
                }
            }
        }
        ModularReport {
            modular: witness.is_none(),
            witness,
            cancellation: cancellation_witness.is_none(),
            cancellation_witness,
        }
    }

    /// Standard distributive law on every triple.
    pub fn is_distributive(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    self.meet(&a, &self.join(&b, &c))
                        == self.join(&self.meet(&a, &b), &self.meet(&a, &c))
                })
            })
        })
    }

    /// Closure of `gens` under join and meet.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut set: Vec<usize> = gens.to_vec();
        set.sort();
        set.dedup();
        loop {
            let mut next = set.clone();
            for &a in &set {
                for &b in &set {
                    next.push(self.join(&a, &b));
                    next.push(self.meet(&a, &b));
                }
            }
            next.sort();
            next.dedup();
            if next == set {
                return set;
            }
            set = next;
        }
    }

    /// Distributivity of the sublattice on `elems` (assumed closed).
    pub fn is_distributive_on(&self, elems: &[usize]) -> bool {
        elems.iter().all(|a| {
            elems.iter().all(|b| {
                elems.iter().all(|c| {
                    self.meet(a, &self.join(b, c)) == self.join(&self.meet(a, b), &self.meet(a, c))
                })
            })
        })
    }
}

impl LatticeOps for FiniteLattice {
    type Elem = usize;
    fn join(&self, a: &usize, b: &usize) -> usize {
        self.join[a * self.len() + b]
    }
    fn meet(&self, a: &usize, b: &usize) -> usize {
        self.meet[a * self.len() + b]
    }
    fn leq(&self, a: &usize, b: &usize) -> bool {
        self.leq[a * self.len() + b]
    }
    fn top(&self) -> Option<usize> {
        Some(self.top)
    }
}

/// The sublattice `𝒫(𝔵)` of submodules generated by a family and the
/// ambient module, as an explicit finite lattice.
#[derive(Clone, Debug)]
pub struct SubobjectLattice {
    pub ambient: FPModule,
    pub elements: Vec<Subobject>,
    pub lattice: FiniteLattice,
    /// Position of each generator in `elements`.
    pub generators: Vec<usize>,
}

impl SubobjectLattice {
    pub fn generated(ambient: &FPModule, family: &[Subobject]) -> Result<SubobjectLattice> {
        SubobjectLattice::generated_with_cap(ambient, family, SUBOBJECT_CAP)
    }

    pub fn generated_with_cap(
        ambient: &FPModule,
        family: &[Subobject],
        cap: usize,
    ) -> Result<SubobjectLattice> {
        if family.iter().any(|s| s.ambient() != ambient) {
            return Err(Error::Lattice(
                "family members live in a different ambient module".into(),
            ));
        }
        let mut elements: Vec<Subobject> = Vec::new();
        let mut pos: HashMap<Subobject, usize> = HashMap::new();
        let mut add = |s: Subobject, elements: &mut Vec<Subobject>| -> Result<usize> {
            if let Some(&i) = pos.get(&s) {
                return Ok(i);
            }
            if elements.len() >= cap {
                return Err(Error::Lattice(format!(
                    "subobject lattice exceeds {cap} elements"
                )));
            }
            pos.insert(s.clone(), elements.len());
            elements.push(s);
            Ok(elements.len() - 1)
        };
        let generators = family
            .iter()
            .map(|s| add(s.clone(), &mut elements))
            .collect::<Result<Vec<usize>>>()?;
        add(Subobject::whole(ambient), &mut elements)?;
        let mut done = 0;
        while done < elements.len() {
            let frontier = elements.len();
            for i in 0..frontier {
                for j in done.max(i)..frontier {
                    let (a, b) = (elements[i].clone(), elements[j].clone());
                    add(a.join(&b)?, &mut elements)?;
                    add(a.meet(&b)?, &mut elements)?;
                }
            }
            done = frontier;
        }
        let n = elements.len();
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                leq[i][j] = elements[i].leq(&elements[j])?;
            }
        }
        let names = (0..n).map(|i| format!("e{i}")).collect();
        let lattice = FiniteLattice::from_leq(names, leq)?;
        Ok(SubobjectLattice {
            ambient: ambient.clone(),
            elements,
            lattice,
            generators,
        })
    }
}
