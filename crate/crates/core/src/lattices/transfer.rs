use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

use super::{
    family_class, is_distributive_pair, meet_over, meet_with, members, FamilyMode, LatticeOps,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strength {
    Admissible,
    UniversallyAdmissible,
}

impl Strength {
    pub const BOTH: [Strength; 2] = [Strength::Admissible, Strength::UniversallyAdmissible];

    fn mode(self) -> FamilyMode {
        match self {
            Strength::Admissible => FamilyMode::Admissible,
            Strength::UniversallyAdmissible => FamilyMode::UniversallyAdmissible,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TransferVariant {
    /// `𝔵` (universally) admissible plus a distributivity side condition
    /// give `𝔵 ∧ y` (universally) admissible.
    PropAdmSeqLem,
    /// For `a_s ≥ b_s`: `𝔟` (universally) admissible plus side conditions
    /// give `𝔟 ∧ 𝔞^{∧S}` (universally) admissible.
    CorAdmSeqCor,
    /// The same with the side-condition quantifiers narrowed: `s ≠ u`
    /// (admissible), `s ≠ v` (universal), and in modular lattices also
    /// `W ∪ U ≠ S` and `s ∉ U` (universal).
    CorWithRemark,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransferReport {
    pub variant: TransferVariant,
    pub strength: Strength,
    pub hypotheses: BTreeMap<String, bool>,
    pub conclusion: bool,
    pub implication_ok: bool,
    /// Some hypothesis failed, so the implication holds vacuously.
    pub vacuous: bool,
    pub modular_relaxation: bool,
}

fn report(
    variant: TransferVariant,
    strength: Strength,
    hypotheses: BTreeMap<String, bool>,
    conclusion: bool,
    modular_relaxation: bool,
) -> TransferReport {
    let all = hypotheses.values().all(|&h| h);
    TransferReport {
        variant,
        strength,
        hypotheses,
        conclusion,
        implication_ok: !all || conclusion,
        vacuous: !all,
        modular_relaxation,
    }
}

fn sub<E: Clone>(fam: &[E], t: u32) -> Vec<E> {
    members(t, fam.len())
        .into_iter()
        .map(|i| fam[i].clone())
        .collect()
}

/// Disjoint nonempty `(U, V)` pairs of an `n`-set.
fn disjoint_pairs(n: usize) -> Vec<(u32, u32)> {
    let full: u32 = (1 << n) - 1;
    let mut out = Vec::new();
    for u in 1..=full {
        let rest = full & !u;
        let mut v = rest;
        while v != 0 {
            out.push((u, v));
            v = (v - 1) & rest;
        }
    }
    out.sort();
    out
}

/// Proposition-level transfer: hypotheses on `(𝔵, y)`, conclusion on `𝔵 ∧ y`.
pub fn transfer_prop<L: LatticeOps>(
    l: &L,
    x: &[L::Elem],
    y: &L::Elem,
    strength: Strength,
) -> Result<TransferReport> {
    let n = x.len();
    if n == 0 {
        return Err(Error::Lattice("families must be nonempty".into()));
    }
    let full: u32 = (1 << n) - 1;
    let mut hyps = BTreeMap::new();
    hyps.insert(
        "family".to_string(),
        family_class(l, x, &strength.mode())?.holds,
    );
    let side = match strength {
        Strength::Admissible => {
            let mut ok = true;
            'outer: for s in 0..n {
                let rest = full & !(1 << s);
                let mut u = rest;
                while u != 0 {
                    let fam = meet_with(l, &sub(x, u), &x[s]);
                    if !is_distributive_pair(l, &fam, y)? {
                        ok = false;
                        break 'outer;
                    }
                    u = (u - 1) & rest;
                }
            }
            ok
        }
        Strength::UniversallyAdmissible => {
            let mut ok = true;
            'outer2: for (u, v) in disjoint_pairs(n) {
                if v.count_ones() < 2 {
                    continue;
                }
                let xv = meet_over(l, x, v)?;
                let fam = meet_with(l, &sub(x, u), &xv);
                for vi in members(v, n) {
                    let rhs = l.meet(&meet_over(l, x, v & !(1 << vi))?, y);
                    if !is_distributive_pair(l, &fam, &rhs)? {
                        ok = false;
                        break 'outer2;
                    }
                }
            }
            ok
        }
    };
    hyps.insert("distributive_side_condition".to_string(), side);
    let conclusion = family_class(l, &meet_with(l, x, y), &strength.mode())?.holds;
    Ok(report(
        TransferVariant::PropAdmSeqLem,
        strength,
        hyps,
        conclusion,
        false,
    ))
}

/// Corollary-level transfer for `a_s ≥ b_s`. With `remark` the side
/// condition is narrowed; `modular` enables the extra narrowing available in
/// modular lattices.
pub fn transfer_cor<L: LatticeOps>(
    l: &L,
    a: &[L::Elem],
    b: &[L::Elem],
    strength: Strength,
    remark: bool,
    modular: bool,
) -> Result<TransferReport> {
    let n = a.len();
    if n == 0 || b.len() != n {
        return Err(Error::Lattice(format!(
            "families of sizes {} and {} do not match",
            a.len(),
            b.len()
        )));
    }
    if let Some(s) = (0..n).find(|&s| !l.leq(&b[s], &a[s])) {
        return Err(Error::Lattice(format!("a_s ≥ b_s fails at position {s}")));
    }
    let full: u32 = (1 << n) - 1;
    let mut hyps = BTreeMap::new();
    hyps.insert(
        "family".to_string(),
        family_class(l, b, &strength.mode())?.holds,
    );
    let relax_modular = remark && modular && strength == Strength::UniversallyAdmissible;
    let mut side = true;
    if n >= 2 {
        'w: for w in 0..full {
            let aw = meet_over(l, a, w)?;
            match strength {
                Strength::Admissible => {
                    for u in 1..=full {
                        if u.count_ones() < 2 {
                            continue;
                        }
                        for ui in members(u, n) {
                            let rest = u & !(1 << ui);
                            let bu_aw = l.meet(&b[ui], &aw);
                            let fam = meet_with(l, &sub(b, rest), &bu_aw);
                            for s in members(full & !w, n) {
                                if remark && s == ui {
                                    continue;
                                }
                                if !is_distributive_pair(l, &fam, &a[s])? {
                                    side = false;
                                    break 'w;
                                }
                            }
                        }
                    }
                }
                Strength::UniversallyAdmissible => {
                    for (u, v) in disjoint_pairs(n) {
                        if v.count_ones() < 2 || (relax_modular && (w | u) == full) {
                            continue;
                        }
                        let bv = meet_over(l, b, v)?;
                        let fam = meet_with(l, &sub(b, u), &l.meet(&bv, &aw));
                        for s in members(full & !w, n) {
                            if relax_modular && u & (1 << s) != 0 {
                                continue;
                            }
                            let aws = meet_over(l, a, w | 1 << s)?;
                            for vi in members(v, n) {
                                if remark && s == vi {
                                    continue;
                                }
                                let rhs = l.meet(&meet_over(l, b, v & !(1 << vi))?, &aws);
                                if !is_distributive_pair(l, &fam, &rhs)? {
                                    side = false;
                                    break 'w;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    hyps.insert("distributive_side_condition".to_string(), side);
    let a_all = meet_over(l, a, full)?;
    let conclusion = family_class(l, &meet_with(l, b, &a_all), &strength.mode())?.holds;
    let variant = if remark {
        TransferVariant::CorWithRemark
    } else {
        TransferVariant::CorAdmSeqCor
    };
    Ok(report(variant, strength, hyps, conclusion, relax_modular))
}

/// Runs `variant` in both strengths. For the proposition `first` is `𝔵` and
/// `second` holds the single element `y`; for the corollaries they are `𝔞`
/// and `𝔟`.
pub fn transfer_check<L: LatticeOps>(
    l: &L,
    variant: TransferVariant,
    first: &[L::Elem],
    second: &[L::Elem],
    modular: bool,
) -> Result<Vec<TransferReport>> {
    Strength::BOTH
        .iter()
        .map(|&st| match variant {
            TransferVariant::PropAdmSeqLem => {
                let [y] = second else {
                    return Err(Error::Lattice(
                        "the proposition takes a single element y".into(),
                    ));
                };
                transfer_prop(l, first, y, st)
            }
            TransferVariant::CorAdmSeqCor => transfer_cor(l, first, second, st, false, modular),
            TransferVariant::CorWithRemark => transfer_cor(l, first, second, st, true, modular),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealMapReport {
    /// The sublattice generated by `𝔵` is distributive.
    pub assertion1: bool,
    /// `I ↦ ∨_{V∈I} 𝔵^{∧V}` preserves meets on up-closed ideals of `𝒫(S)`.
    pub assertion2: bool,
    /// `{𝔵^{∧V}}_V` is admissible.
    pub assertion3: bool,
    pub universally_admissible: bool,
    pub implications_ok: bool,
}

fn closure<L: LatticeOps>(l: &L, gens: &[L::Elem]) -> Vec<L::Elem> {
    let mut set: Vec<L::Elem> = Vec::new();
    for g in gens {
        if !set.contains(g) {
            set.push(g.clone());
        }
    }
    let mut done = 0;
    while done < set.len() {
        let frontier = set.len();
        for i in 0..frontier {
            for j in done.max(i)..frontier {
                for e in [l.join(&set[i], &set[j]), l.meet(&set[i], &set[j])] {
                    if !set.contains(&e) {
                        set.push(e);
                    }
                }
            }
        }
        done = frontier;
    }
    set
}

/// Up-closed subsets of `𝒫(S)`, as bit sets over masks.
fn up_sets(n: usize) -> Vec<u64> {
    let m = 1usize << n;
    (0..1u64 << m)
        .filter(|&i| {
            (0..m).all(|x| i & (1 << x) == 0 || (0..m).all(|y| (x & !y) != 0 || i & (1 << y) != 0))
        })
        .collect()
}

/// Evaluates the three assertions on ideals of `𝒫(S)` for `|S| ≤ 4`.
pub fn ideal_map_check<L: LatticeOps>(
    l: &L,
    fam: &[L::Elem],
    bottom: &L::Elem,
) -> Result<IdealMapReport> {
    let n = fam.len();
    if n == 0 || n > 4 {
        return Err(Error::Lattice(format!(
            "ideal enumeration needs 1 ≤ |S| ≤ 4, got {n}"
        )));
    }
    let gen = closure(l, fam);
    let dist = |a: &L::Elem, b: &L::Elem, c: &L::Elem| {
        l.meet(a, &l.join(b, c)) == l.join(&l.meet(a, b), &l.meet(a, c))
    };
    let assertion1 = gen
        .iter()
        .all(|a| gen.iter().all(|b| gen.iter().all(|c| dist(a, b, c))));
    let meets: Vec<L::Elem> = (0..1u32 << n)
        .map(|v| meet_over(l, fam, v))
        .collect::<Result<_>>()?;
    let phi = |ideal: u64| -> L::Elem {
        (0..1usize << n)
            .filter(|&v| ideal & (1 << v) != 0)
            .map(|v| meets[v].clone())
            .reduce(|a, b| l.join(&a, &b))
            .unwrap_or_else(|| bottom.clone())
    };
    let ideals = up_sets(n);
    let images: Vec<L::Elem> = ideals.iter().map(|&i| phi(i)).collect();
    let assertion2 = ideals.iter().enumerate().all(|(p, &i)| {
        ideals
            .iter()
            .enumerate()
            .all(|(q, &j)| phi(i & j) == l.meet(&images[p], &images[q]))
    });
    let mut distinct: Vec<L::Elem> = Vec::new();
    for m in meets {
        if !distinct.contains(&m) {
            distinct.push(m);
        }
    }
    let assertion3 = family_class(l, &distinct, &FamilyMode::Admissible)?.holds;
    let universally_admissible = family_class(l, fam, &FamilyMode::UniversallyAdmissible)?.holds;
    let implications_ok = assertion1 == assertion2
        && (!assertion2 || assertion3)
        && (!assertion3 || universally_admissible);
    Ok(IdealMapReport {
        assertion1,
        assertion2,
        assertion3,
        universally_admissible,
        implications_ok,
    })
}

/// Statements (1)–(4) about universally admissible families, each true when
/// it holds (or is vacuous) on the given family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemarkReport {
    pub restriction: bool,
    pub small_families: bool,
    pub recursive_characterisation: bool,
    pub three_elements: bool,
}

pub fn remark_univ_adm<L: LatticeOps>(l: &L, fam: &[L::Elem]) -> Result<RemarkReport> {
    let n = fam.len();
    if n == 0 {
        return Err(Error::Lattice("families must be nonempty".into()));
    }
    let full: u32 = (1 << n) - 1;
    let adm = family_class(l, fam, &FamilyMode::Admissible)?.holds;
    let univ = family_class(l, fam, &FamilyMode::UniversallyAdmissible)?.holds;
    let mut restriction = true;
    for t in 1..full {
        let ft = sub(fam, t);
        if adm && !family_class(l, &ft, &FamilyMode::Admissible)?.holds {
            restriction = false;
        }
        if univ && !family_class(l, &ft, &FamilyMode::UniversallyAdmissible)?.holds {
            restriction = false;
        }
    }
    let small_families = n > 2 || univ;
    let recursive_characterisation = if n >= 3 {
        let mut rhs = adm;
        for s in 0..n {
            let f = meet_with(l, &sub(fam, full & !(1 << s)), &fam[s]);
            rhs = rhs && family_class(l, &f, &FamilyMode::UniversallyAdmissible)?.holds;
        }
        univ == rhs
    } else {
        true
    };
    let three_elements = n != 3 || univ == adm;
    Ok(RemarkReport {
        restriction,
        small_families,
        recursive_characterisation,
        three_elements,
    })
}
