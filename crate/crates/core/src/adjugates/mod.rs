//! Adjugates of cubes: scalars `a_s` with reverse maps
//! `d^{t*}_T : x_{T∖t} → x_T` such that `d d* = d* d = a_t` and the mixed
//! squares commute.

mod patching;

pub use patching::{
    adjugate_member, app1_check, main_theorem_check, patching_family_of, AdjugatePatching,
    App1Report, MainTheoremReport, PatchingIdentities,
};

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::cubes::{sequence_check, Cube, CubeIndex, FibCube, Mask, SequenceMode, Variance};
use crate::error::{Error, Result};
use crate::fpmod::{factor_through_mono, pullback, FPModule, ModuleMorphism};
use crate::linalg::{adjugate, determinant, Matrix};
use crate::par;
use crate::rings::RingElement;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeAdjugate {
    index: CubeIndex,
    scalars: Vec<RingElement>,
    /// `stars[T * n + t] = d^{t*}_T`, present iff `t ∈ T`.
    stars: Vec<Option<ModuleMorphism>>,
}

impl CubeAdjugate {
    pub fn new(
        index: CubeIndex,
        scalars: Vec<RingElement>,
        stars: BTreeMap<(Mask, usize), ModuleMorphism>,
    ) -> Result<CubeAdjugate> {
        let n = index.len();
        if scalars.len() != n {
            return Err(Error::Dimension(format!(
                "{} scalars for {n} labels",
                scalars.len()
            )));
        }
        let mut slots = vec![None; (1 << n) * n];
        for t in index.masks() {
            for i in index.members(t) {
                let d = stars.get(&(t, i)).ok_or_else(|| {
                    Error::Dimension(format!(
                        "missing adjugate map at {{{}}} in direction {}",
                        index.key(t),
                        index.label(i)
                    ))
                })?;
                slots[t as usize * n + i] = Some(d.clone());
            }
        }
        if stars.len()
            != index
                .masks()
                .map(|t| t.count_ones() as usize)
                .sum::<usize>()
        {
            return Err(Error::Dimension("adjugate map outside the cube".into()));
        }
        Ok(CubeAdjugate {
            index,
            scalars,
            stars: slots,
        })
    }

    pub fn from_fn<F>(
        index: CubeIndex,
        scalars: Vec<RingElement>,
        mut star: F,
    ) -> Result<CubeAdjugate>
    where
        F: FnMut(Mask, usize) -> Result<ModuleMorphism>,
    {
        let mut m = BTreeMap::new();
        for t in index.masks() {
            for i in index.members(t) {
                m.insert((t, i), star(t, i)?);
            }
        }
        CubeAdjugate::new(index, scalars, m)
    }

    /// `d^{t*}_T = (g_t)` on a cube whose boundaries in direction `t` run
    /// between equal modules, e.g. `Typ(f_S; M)` with `a_t = f_t g_t`.
    pub fn scalar_stars(
        x: &Cube,
        scalars: Vec<RingElement>,
        gs: &[RingElement],
    ) -> Result<CubeAdjugate> {
        if gs.len() != x.dim() {
            return Err(Error::Dimension(format!(
                "{} scalars for {} labels",
                gs.len(),
                x.dim()
            )));
        }
        CubeAdjugate::from_fn(x.index().clone(), scalars, |t, i| {
            let src = x.vertex(t & !(1 << i));
            ModuleMorphism::new(
                src.clone(),
                x.vertex(t).clone(),
                Matrix::scalar(x.ring(), src.gens(), &gs[i]),
            )
        })
    }

    pub fn index(&self) -> &CubeIndex {
        &self.index
    }
    pub fn scalars(&self) -> &[RingElement] {
        &self.scalars
    }
    pub fn scalar(&self, i: usize) -> &RingElement {
        &self.scalars[i]
    }

    /// `d^{t*}_T`; panics unless `t ∈ T`.
    pub fn star(&self, t: Mask, i: usize) -> &ModuleMorphism {
        self.stars[t as usize * self.index.len() + i]
            .as_ref()
            .expect("direction inside T")
    }

    pub fn star_keys(&self) -> Vec<(Mask, usize)> {
        self.index
            .masks()
            .flat_map(|t| self.index.members(t).into_iter().map(move |i| (t, i)))
            .collect()
    }

    /// `𝔄|_U^V`: scalars on `U`, maps `d^{t*}_{V⊔T}` for `T ⊆ U`.
    pub fn restrict(&self, u: Mask, v: Mask) -> Result<CubeAdjugate> {
        let sub = self.index.sub_index(u);
        let members = self.index.members(u);
        let scalars = members.iter().map(|&i| self.scalars[i].clone()).collect();
        CubeAdjugate::from_fn(sub, scalars, |a, j| {
            Ok(self
                .star(CubeIndex::spread(&members, a) | v, members[j])
                .clone())
        })
    }
}

/// The first adjugate condition that fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjugateWitness {
    /// `"i"`, `"ii"` or `"regular"`.
    pub condition: String,
    pub set: String,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjugateReport {
    pub axiom_i: bool,
    pub axiom_ii: bool,
    /// Filled when regularity was requested.
    pub regular: Option<bool>,
    pub witness: Option<AdjugateWitness>,
    pub valid: bool,
}

fn check_shapes(x: &Cube, a: &CubeAdjugate) -> Result<()> {
    if x.variance() != Variance::Cube {
        return Err(Error::Unsupported("adjugates are defined for cubes".into()));
    }
    if x.index() != a.index() {
        return Err(Error::Index(
            "adjugate and cube have different labels".into(),
        ));
    }
    for (t, i) in a.star_keys() {
        let d = a.star(t, i);
        if d.source() != x.vertex(t & !(1 << i)) || d.target() != x.vertex(t) {
            return Err(Error::Dimension(format!(
                "adjugate map at {{{}}} in direction {} has the wrong ends",
                x.index().key(t),
                x.index().label(i)
            )));
        }
    }
    Ok(())
}

fn axiom_i_failure(x: &Cube, a: &CubeAdjugate) -> Option<(Mask, usize)> {
    a.star_keys().into_iter().find(|&(t, i)| {
        let (d, ds, s) = (x.boundary(t, i), a.star(t, i), a.scalar(i));
        let left = d
            .compose_loose(ds)
            .equals(&ModuleMorphism::scalar(ds.source(), s));
        let right = ds
            .compose_loose(d)
            .equals(&ModuleMorphism::scalar(d.source(), s));
        !(left && right)
    })
}

fn axiom_ii_failure(x: &Cube, a: &CubeAdjugate) -> Option<(Mask, usize, usize)> {
    for t in x.index().masks() {
        let members = x.index().members(t);
        for &p in &members {
            for &q in &members {
                if p == q {
                    continue;
                }
                // d^q_T d^{p*}_T = d^{p*}_{T∖q} d^q_{T∖p}
                let lhs = x.boundary(t, q).compose_loose(a.star(t, p));
                let rhs = a
                    .star(t & !(1 << q), p)
                    .compose_loose(x.boundary(t & !(1 << p), q));
                if !lhs.equals(&rhs) {
                    return Some((t, p, q));
                }
            }
        }
    }
    None
}

/// Whether `𝔞` is an `x_T`-sequence for every `T`.
pub fn regularity(x: &Cube, scalars: &[RingElement]) -> Result<Option<Mask>> {
    let mut distinct: Vec<&FPModule> = Vec::new();
    let mut slot: HashMap<&FPModule, usize> = HashMap::new();
    for t in x.index().masks() {
        let m = x.vertex(t);
        if !slot.contains_key(m) {
            slot.insert(m, distinct.len());
            distinct.push(m);
        }
    }
    let verdicts = par::map(par::default_execution(), &distinct, |m| {
        sequence_check(scalars, m, SequenceMode::XSequence).map(|r| r.holds)
    });
    let verdicts: Vec<bool> = verdicts.into_iter().collect::<Result<_>>()?;
    Ok(x.index().masks().find(|&t| !verdicts[slot[x.vertex(t)]]))
}

/// Checks axioms (i) and (ii), both orientations of (ii), and optionally
/// regularity.
pub fn verify_adjugate(x: &Cube, a: &CubeAdjugate, regular: bool) -> Result<AdjugateReport> {
    check_shapes(x, a)?;
    let idx = x.index();
    let name = |i: usize| idx.label(i).to_string();
    let fail_i = axiom_i_failure(x, a);
    let fail_ii = axiom_ii_failure(x, a);
    let fail_reg = if regular {
        regularity(x, a.scalars())?
    } else {
        None
    };
    let witness = if let Some((t, i)) = fail_i {
        Some(AdjugateWitness {
            condition: "i".into(),
            set: idx.key(t),
            labels: vec![name(i)],
        })
    } else if let Some((t, p, q)) = fail_ii {
        Some(AdjugateWitness {
            condition: "ii".into(),
            set: idx.key(t),
            labels: vec![name(p), name(q)],
        })
    } else {
        fail_reg.map(|t| AdjugateWitness {
            condition: "regular".into(),
            set: idx.key(t),
            labels: vec![],
        })
    };
    let regular = regular.then_some(fail_reg.is_none());
    let (axiom_i, axiom_ii) = (fail_i.is_none(), fail_ii.is_none());
    Ok(AdjugateReport {
        axiom_i,
        axiom_ii,
        regular,
        witness,
        valid: axiom_i && axiom_ii && regular.unwrap_or(true),
    })
}

/// The adjugate cocube `x*` with `x*_T = x_T` and boundaries `d^{t*}_T`.
/// Errors when a square of adjugate maps does not commute.
pub fn adjugate_cocube(x: &Cube, a: &CubeAdjugate) -> Result<Cube> {
    check_shapes(x, a)?;
    let c = Cube::from_fn(
        x.index().clone(),
        Variance::CoCube,
        |t| x.vertex(t).clone(),
        |t, i| Ok(a.star(t, i).clone()),
    )?;
    c.ensure_valid()?;
    Ok(c)
}

/// `(x̂*, 𝔄*)`: the dual of the adjugate cocube, with the boundaries of `x`
/// as its adjugate maps.
pub fn dual_adjugate(x: &Cube, a: &CubeAdjugate) -> Result<(Cube, CubeAdjugate)> {
    let y = adjugate_cocube(x, a)?.dual();
    let full = x.index().full();
    let dual = CubeAdjugate::from_fn(x.index().clone(), a.scalars().to_vec(), |t, i| {
        Ok(x.boundary((full & !t) | 1 << i, i).clone())
    })?;
    Ok((y, dual))
}

/// Cofactor adjugate of a cube of free modules of one rank: `a_s` is a common
/// multiple of the determinants in direction `s` (the lcm where the ring has
/// one, the product otherwise) and `d^{s*}_T = (a_s / det X^s_T) · adj X^s_T`.
pub fn cofactor_adjugate(x: &Cube) -> Result<CubeAdjugate> {
    if x.variance() != Variance::Cube {
        return Err(Error::Unsupported(
            "cofactor adjugates are defined for cubes".into(),
        ));
    }
    let ring = x.ring();
    let rank = x.vertex(0).gens();
    if x.vertices()
        .iter()
        .any(|m| !m.is_free_presentation() || m.gens() != rank)
    {
        return Err(Error::NotFree(
            "cofactor adjugates need free vertices of one rank".into(),
        ));
    }
    let idx = x.index();
    let mut dets: BTreeMap<(Mask, usize), RingElement> = BTreeMap::new();
    for t in idx.masks() {
        for i in idx.members(t) {
            let d = determinant(x.boundary(t, i).matrix())?;
            if d.is_zero() {
                return Err(Error::NoSolution(format!(
                    "zero determinant at {{{}}} in direction {}",
                    idx.key(t),
                    idx.label(i)
                )));
            }
            dets.insert((t, i), d);
        }
    }
    let scalars: Vec<RingElement> = (0..idx.len())
        .map(|i| {
            dets.iter()
                .filter(|((_, j), _)| *j == i)
                .try_fold(ring.one(), |acc, (_, d)| {
                    Ok(match ring.gcd_lcm(&acc, d) {
                        Ok((_, l)) => l,
                        Err(_) => ring.mul(&acc, d),
                    })
                })
        })
        .collect::<Result<_>>()?;
    CubeAdjugate::from_fn(idx.clone(), scalars.clone(), |t, i| {
        let b = ring.divide(&scalars[i], &dets[&(t, i)]).ok_or_else(|| {
            Error::NoSolution(format!(
                "{} is not divisible by {}",
                scalars[i],
                dets[&(t, i)]
            ))
        })?;
        let m = adjugate(x.boundary(t, i).matrix())?.scale(&b);
        ModuleMorphism::new(x.vertex(t & !(1 << i)).clone(), x.vertex(t).clone(), m)
    })
}

/// The pullback `x' = x ×_y y'` of `f` along `phi` with its induced adjugate
/// `f'* : y' → x'`.
#[derive(Clone, Debug)]
pub struct InducedAdjugate {
    pub f_prime: ModuleMorphism,
    pub phi_prime: ModuleMorphism,
    pub f_prime_star: ModuleMorphism,
}

/// Induced adjugate of the pulled-back map. Requires `f* f = a`, `f f* = a`
/// and `phi` mono.
pub fn induced_adjugate(
    f: &ModuleMorphism,
    f_star: &ModuleMorphism,
    a: &RingElement,
    phi: &ModuleMorphism,
) -> Result<InducedAdjugate> {
    let is_adjugate = f_star
        .compose(f)?
        .equals(&ModuleMorphism::scalar(f.source(), a))
        && f.compose(f_star)?
            .equals(&ModuleMorphism::scalar(f.target(), a));
    if !is_adjugate {
        return Err(Error::NoSolution(
            "f* is not an adjugate of f for this scalar".into(),
        ));
    }
    if !phi.is_mono() {
        return Err(Error::NoSolution("phi is not a monomorphism".into()));
    }
    let pb = pullback(f, phi)?;
    let f_prime_star = pb.mediate(
        &f_star.compose(phi)?,
        &ModuleMorphism::scalar(phi.source(), a),
    )?;
    Ok(InducedAdjugate {
        f_prime: pb.to_g_source.clone(),
        phi_prime: pb.to_f_source.clone(),
        f_prime_star,
    })
}

/// The adjugate of `Fib 𝔵` induced from adjugates `(d_s^*, a_s)` of the
/// family members: `d^{t*}_T` is induced from `d^t_{T∖s}` along
/// `d^s_{T∖t}` for the least `s ∈ T∖t`.
pub fn fib_adjugate(
    fib: &FibCube,
    stars: &[ModuleMorphism],
    scalars: Vec<RingElement>,
) -> Result<CubeAdjugate> {
    let x = &fib.cube;
    let n = x.dim();
    if stars.len() != n {
        return Err(Error::Dimension(format!(
            "{} adjugates for {n} labels",
            stars.len()
        )));
    }
    let mut built: BTreeMap<(Mask, usize), ModuleMorphism> = BTreeMap::new();
    for t in x.index().masks() {
        for i in x.index().members(t) {
            let d = if t == 1 << i {
                stars[i].clone()
            } else {
                let s = x.index().members(t & !(1 << i))[0];
                let below = &built[&(t & !(1 << s), i)];
                let phi = x.boundary(t & !(1 << i), s);
                factor_through_mono(x.boundary(t, s), &below.compose_loose(phi))
                    .ok_or_else(|| Error::NoSolution("induced adjugate does not factor".into()))?
            };
            built.insert((t, i), d);
        }
    }
    CubeAdjugate::new(x.index().clone(), scalars, built)
}
