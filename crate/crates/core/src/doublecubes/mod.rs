//! Double `S`-cubes: contravariant functors on `[2]^S ≅ DP(S)`, the pullbacks
//! `e_T^*` and `𝟐^*` to ordinary cubes, restriction along disjoint systems,
//! and patching families of cubes into double cubes.

mod theorems;

pub use theorems::{
    dct_check, fib_describe_check, fibered_equivalence, DctReport, DctVariant, FibDescribeReport,
    FiberedEquivalence,
};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cubes::{Cube, CubeIndex, Mask, Variance};
use crate::error::{Error, Result};
use crate::fpmod::{factor_through_mono, FPModule, ModuleMorphism, Subobject};
use crate::rings::Ring;

/// Largest label set for double cubes (`3^3 = 27` vertices).
pub const MAX_DOUBLE_LABELS: usize = 3;

/// An element `(U, V)` of `DP(S)`, equivalently `χ_{U,V} ∈ [2]^S`: labels in
/// `U` carry 1, labels in `V` carry 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DoubleIndex {
    pub u: Mask,
    pub v: Mask,
}

impl DoubleIndex {
    pub fn new(u: Mask, v: Mask) -> Result<DoubleIndex> {
        if u & v != 0 {
            return Err(Error::Index("a double index needs disjoint U and V".into()));
        }
        Ok(DoubleIndex { u, v })
    }

    pub fn from_assignment(values: &[u8]) -> Result<DoubleIndex> {
        let mut p = DoubleIndex { u: 0, v: 0 };
        for (i, &a) in values.iter().enumerate() {
            match a {
                0 => {}
                1 => p.u |= 1 << i,
                2 => p.v |= 1 << i,
                _ => return Err(Error::Index(format!("assignment value {a} is not in [2]"))),
            }
        }
        Ok(p)
    }

    pub fn value(self, i: usize) -> u8 {
        if self.v & (1 << i) != 0 {
            2
        } else if self.u & (1 << i) != 0 {
            1
        } else {
            0
        }
    }

    pub fn assignment(self, n: usize) -> Vec<u8> {
        (0..n).map(|i| self.value(i)).collect()
    }

    /// Base-3 code `Σ χ(i)·3^i`, the storage position.
    pub fn code(self, n: usize) -> usize {
        (0..n)
            .rev()
            .fold(0, |acc, i| acc * 3 + self.value(i) as usize)
    }

    pub fn from_code(mut code: usize, n: usize) -> DoubleIndex {
        let mut p = DoubleIndex { u: 0, v: 0 };
        for i in 0..n {
            match code % 3 {
                1 => p.u |= 1 << i,
                2 => p.v |= 1 << i,
                _ => {}
            }
            code /= 3;
        }
        p
    }

    /// `(U, V) ≤ (U', V')` iff `V ⊆ V'` and `U ⊆ U' ⊔ V'`, i.e. pointwise in `[2]^S`.
    pub fn leq(self, other: DoubleIndex) -> bool {
        self.v & !other.v == 0 && self.u & !(other.u | other.v) == 0
    }

    /// `χ − δ_i`, defined when `χ(i) ≥ 1`.
    pub fn lower(self, i: usize) -> Option<DoubleIndex> {
        let b = 1 << i;
        if self.v & b != 0 {
            Some(DoubleIndex {
                u: self.u | b,
                v: self.v & !b,
            })
        } else if self.u & b != 0 {
            Some(DoubleIndex {
                u: self.u & !b,
                v: self.v,
            })
        } else {
            None
        }
    }

    /// `e_T(U) = U + T = (U ⊖ T, U ∩ T)`.
    pub fn e(t: Mask, u: Mask) -> DoubleIndex {
        DoubleIndex { u: u ^ t, v: u & t }
    }

    /// `𝟐(U) = (∅, U)`.
    pub fn two(u: Mask) -> DoubleIndex {
        DoubleIndex { u: 0, v: u }
    }

    /// `Tot_{(A,B)}(T) = ((A∖T) ∪ (B∩T), T∖B)`.
    pub fn total(a: Mask, b: Mask, t: Mask) -> DoubleIndex {
        DoubleIndex {
            u: (a & !t) | (b & t),
            v: t & !b,
        }
    }

    /// Inverse of `Tot_A = Tot_{(A, S∖A)}` on `DP_A(S)`: `(U, V) ↦ (U∖A) ∪ V`.
    pub fn total_inverse(a: Mask, p: DoubleIndex) -> Mask {
        (p.u & !a) | p.v
    }

    /// Membership in `DP_{(A,B)}(S)`: `A ⊆ U ∪ V` and `B ∩ V = ∅`.
    pub fn in_dp(self, a: Mask, b: Mask) -> bool {
        a & !(self.u | self.v) == 0 && b & self.v == 0
    }

    pub fn key(self, index: &CubeIndex) -> String {
        (0..index.len())
            .map(|i| format!("{}={}", index.label(i), self.value(i)))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_key(index: &CubeIndex, key: &str) -> Result<DoubleIndex> {
        let mut values = vec![None; index.len()];
        for part in key.split(',').filter(|p| !p.is_empty()) {
            let (l, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad double key part {part:?}")))?;
            let i = index.position(l)?;
            let a: u8 = v
                .parse()
                .map_err(|_| Error::Parse(format!("bad assignment value {v:?}")))?;
            if values[i].replace(a).is_some() {
                return Err(Error::Parse(format!("label {l} assigned twice")));
            }
        }
        let values: Vec<u8> = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| {
                    Error::Parse(format!("label {} unassigned in {key:?}", index.label(i)))
                })
            })
            .collect::<Result<_>>()?;
        DoubleIndex::from_assignment(&values)
    }
}

/// `(A, B, C, D)`: pairwise disjoint, `A, B ⊆ T`, `C, D ⊆ S∖T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DisjointSystem {
    pub t: Mask,
    pub a: Mask,
    pub b: Mask,
    pub c: Mask,
    pub d: Mask,
}

impl DisjointSystem {
    pub fn new(t: Mask, a: Mask, b: Mask, c: Mask, d: Mask) -> Result<DisjointSystem> {
        let parts = [a, b, c, d];
        for i in 0..4 {
            for j in i + 1..4 {
                if parts[i] & parts[j] != 0 {
                    return Err(Error::Index(
                        "a disjoint system needs pairwise disjoint parts".into(),
                    ));
                }
            }
        }
        if (a | b) & !t != 0 || (c | d) & t != 0 {
            return Err(Error::Index("A, B must lie in T and C, D outside T".into()));
        }
        Ok(DisjointSystem { t, a, b, c, d })
    }

    /// `i^{(C,D)}_{(T⊂S),(A,B)} : (U, V) ↦ (U ∪ C, V ∪ D)`.
    pub fn include(&self, p: DoubleIndex) -> DoubleIndex {
        DoubleIndex {
            u: p.u | self.c,
            v: p.v | self.d,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCube {
    ring: Ring,
    index: CubeIndex,
    /// By [`DoubleIndex::code`].
    vertices: Vec<FPModule>,
    /// `edges[code * n + i] : x_J → x_{J−δ_i}`.
    edges: Vec<Option<ModuleMorphism>>,
}

/// A unit square whose two composites differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleSquareWitness {
    pub vertex: String,
    pub first: String,
    pub second: String,
}

impl DoubleCube {
    /// `boundaries` is keyed by `(J, i)` for every `J` with `χ_J(i) ≥ 1`. All
    /// unit squares must commute.
    pub fn new(
        index: CubeIndex,
        vertices: BTreeMap<DoubleIndex, FPModule>,
        boundaries: BTreeMap<(DoubleIndex, usize), ModuleMorphism>,
    ) -> Result<DoubleCube> {
        let n = index.len();
        if n > MAX_DOUBLE_LABELS {
            return Err(Error::Index(format!(
                "double cubes support at most {MAX_DOUBLE_LABELS} labels"
            )));
        }
        let count = 3usize.pow(n as u32);
        let mut verts = Vec::with_capacity(count);
        for c in 0..count {
            let p = DoubleIndex::from_code(c, n);
            let m = vertices
                .get(&p)
                .ok_or_else(|| Error::InvalidCube(format!("missing vertex {}", p.key(&index))))?;
            verts.push(m.clone());
        }
        if vertices.len() != count {
            return Err(Error::InvalidCube("vertex outside [2]^S".into()));
        }
        let ring = verts[0].ring();
        let mut edges = vec![None; count * n];
        let mut used = 0;
        for c in 0..count {
            let p = DoubleIndex::from_code(c, n);
            for i in 0..n {
                let Some(q) = p.lower(i) else { continue };
                let d = boundaries.get(&(p, i)).ok_or_else(|| {
                    Error::InvalidCube(format!(
                        "missing boundary {}|{}",
                        p.key(&index),
                        index.label(i)
                    ))
                })?;
                if d.source() != &verts[c] || d.target() != &verts[q.code(n)] {
                    return Err(Error::InvalidCube(format!(
                        "boundary {}|{} has the wrong ends",
                        p.key(&index),
                        index.label(i)
                    )));
                }
                edges[c * n + i] = Some(d.clone());
                used += 1;
            }
        }
        if used != boundaries.len() {
            return Err(Error::InvalidCube(
                "boundary in a direction of value 0".into(),
            ));
        }
        let x = DoubleCube {
            ring,
            index,
            vertices: verts,
            edges,
        };
        if let Some(w) = x.first_failing_square() {
            return Err(Error::InvalidCube(format!(
                "unit square at {} in directions {}, {} does not commute",
                w.vertex, w.first, w.second
            )));
        }
        Ok(x)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }
    pub fn index(&self) -> &CubeIndex {
        &self.index
    }
    pub fn dim(&self) -> usize {
        self.index.len()
    }

    pub fn points(&self) -> impl Iterator<Item = DoubleIndex> + '_ {
        (0..self.vertices.len()).map(|c| DoubleIndex::from_code(c, self.dim()))
    }

    pub fn vertex(&self, p: DoubleIndex) -> &FPModule {
        &self.vertices[p.code(self.dim())]
    }

    /// `x_J → x_{J−δ_i}`; panics when `χ_J(i) = 0`.
    pub fn boundary(&self, p: DoubleIndex, i: usize) -> &ModuleMorphism {
        self.edges[p.code(self.dim()) * self.dim() + i]
            .as_ref()
            .expect("direction with positive value")
    }

    pub fn edge_keys(&self) -> Vec<(DoubleIndex, usize)> {
        let n = self.dim();
        self.points()
            .flat_map(|p| (0..n).filter(move |&i| p.value(i) > 0).map(move |i| (p, i)))
            .collect()
    }

    fn first_failing_square(&self) -> Option<DoubleSquareWitness> {
        let n = self.dim();
        for p in self.points() {
            for a in 0..n {
                for b in a + 1..n {
                    let (Some(pa), Some(pb)) = (p.lower(a), p.lower(b)) else {
                        continue;
                    };
                    let lhs = self.boundary(pa, b).compose_loose(self.boundary(p, a));
                    let rhs = self.boundary(pb, a).compose_loose(self.boundary(p, b));
                    if !lhs.equals(&rhs) {
                        return Some(DoubleSquareWitness {
                            vertex: p.key(&self.index),
                            first: self.index.label(a).to_string(),
                            second: self.index.label(b).to_string(),
                        });
                    }
                }
            }
        }
        None
    }

    /// `x(lower ≤ upper) : x_upper → x_lower`.
    pub fn morphism(&self, lower: DoubleIndex, upper: DoubleIndex) -> Result<ModuleMorphism> {
        if !lower.leq(upper) {
            return Err(Error::Index(format!(
                "{} is not below {}",
                lower.key(&self.index),
                upper.key(&self.index)
            )));
        }
        let mut cur = upper;
        let mut acc = ModuleMorphism::identity(self.vertex(upper));
        for i in 0..self.dim() {
            while cur.value(i) > lower.value(i) {
                let next = cur.lower(i).expect("positive value");
                acc = self.boundary(cur, i).compose_loose(&acc);
                cur = next;
            }
        }
        Ok(acc)
    }

    /// Every unit boundary is mono. By composition this covers every
    /// comparable pair.
    pub fn is_monic(&self) -> bool {
        self.edge_keys()
            .into_iter()
            .all(|(p, i)| self.boundary(p, i).is_mono())
    }

    /// The cube `U ↦ x_{f(U)}` on the labels of `sub` inside `S`, for an
    /// order-preserving `f : 𝒫(sub) → DP(S)`.
    fn pull_along(&self, sub: Mask, f: impl Fn(Mask) -> DoubleIndex) -> Result<Cube> {
        let members = self.index.members(sub);
        let sub_index = self.index.sub_index(sub);
        let spread = |a: Mask| CubeIndex::spread(&members, a);
        let c = Cube::from_fn(
            sub_index,
            Variance::Cube,
            |a| self.vertex(f(spread(a))).clone(),
            |a, j| {
                let big = spread(a);
                self.morphism(f(big & !(1 << members[j])), f(big))
            },
        )?;
        c.ensure_valid()?;
        Ok(c)
    }

    /// `e_T^* x : U ↦ x_{U+T}`.
    pub fn pullback_et(&self, t: Mask) -> Result<Cube> {
        self.pull_along(self.index.full(), |u| DoubleIndex::e(t, u))
    }

    /// `𝟐^* x : U ↦ x_{(∅,U)}`.
    pub fn pullback_two(&self) -> Result<Cube> {
        self.pull_along(self.index.full(), DoubleIndex::two)
    }

    /// `x|^{(C,D)}_{T,(A,B)} ∘ Tot^T_{(A,B)}` as a `T`-cube.
    pub fn restrict_total(&self, sys: &DisjointSystem) -> Result<Cube> {
        self.pull_along(sys.t, |u| sys.include(DoubleIndex::total(sys.a, sys.b, u)))
    }

    /// Glues `family[T] = x^T` into `Pat 𝔵`, after checking
    /// `x^T|^∅_{S∖t} = x^{T∖t}|^{t}_{S∖t}` exactly.
    pub fn patch(index: &CubeIndex, family: &[Cube]) -> Result<DoubleCube> {
        let n = index.len();
        if family.len() != 1 << n {
            return Err(Error::Dimension(format!(
                "patching needs {} cubes, got {}",
                1 << n,
                family.len()
            )));
        }
        if family
            .iter()
            .any(|c| c.index() != index || c.variance() != Variance::Cube)
        {
            return Err(Error::Index(
                "patching family members must be cubes on the same labels".into(),
            ));
        }
        for t in index.masks() {
            for i in index.members(t) {
                let rest = index.full() & !(1 << i);
                let lhs = family[t as usize].restrict(rest, 0)?;
                let rhs = family[(t & !(1 << i)) as usize].restrict(rest, 1 << i)?;
                if lhs != rhs {
                    let detail = first_difference(&lhs, &rhs);
                    return Err(Error::Patching {
                        t: index.key(t),
                        label: index.label(i).to_string(),
                        detail,
                    });
                }
            }
        }
        let mut vertices = BTreeMap::new();
        let mut boundaries = BTreeMap::new();
        for c in 0..3usize.pow(n as u32) {
            let p = DoubleIndex::from_code(c, n);
            let x = &family[p.v as usize];
            let w = p.u | p.v;
            vertices.insert(p, x.vertex(w).clone());
            for i in index.members(w) {
                boundaries.insert((p, i), x.boundary(w, i).clone());
            }
        }
        let pat = DoubleCube::new(index.clone(), vertices, boundaries)?;
        for t in index.masks() {
            if pat.pullback_et(t)? != family[t as usize] {
                return Err(Error::Patching {
                    t: index.key(t),
                    label: String::new(),
                    detail: "e_T^* of the glued double cube differs from x^T".into(),
                });
            }
        }
        Ok(pat)
    }

    /// `{e_T^* x}_T`.
    pub fn patching_family(&self) -> Result<Vec<Cube>> {
        self.index.masks().map(|t| self.pullback_et(t)).collect()
    }

    /// The fibred double cube of subobject families `b_s ≤ a_s` of one
    /// ambient module: `x_{U,V} = 𝔞^{∧U} ∧ 𝔟^{∧V}` with inclusions.
    pub fn from_subobjects(
        index: &CubeIndex,
        a: &[Subobject],
        b: &[Subobject],
    ) -> Result<DoubleCube> {
        let n = index.len();
        if a.len() != n || b.len() != n || n == 0 {
            return Err(Error::Dimension("one pair of subobjects per label".into()));
        }
        let ambient = a[0].ambient().clone();
        for s in 0..n {
            if !b[s].leq(&a[s])? {
                return Err(Error::Lattice(format!(
                    "b_{} is not below a_{}",
                    index.label(s),
                    index.label(s)
                )));
            }
        }
        let count = 3usize.pow(n as u32);
        let mut subs = Vec::with_capacity(count);
        for c in 0..count {
            let p = DoubleIndex::from_code(c, n);
            let mut m = Subobject::whole(&ambient);
            for i in 0..n {
                match p.value(i) {
                    1 => m = m.meet(&a[i])?,
                    2 => m = m.meet(&b[i])?,
                    _ => {}
                }
            }
            subs.push(m);
        }
        let incl: Vec<ModuleMorphism> = subs.iter().map(Subobject::inclusion).collect();
        let mut vertices = BTreeMap::new();
        let mut boundaries = BTreeMap::new();
        for c in 0..count {
            let p = DoubleIndex::from_code(c, n);
            vertices.insert(p, incl[c].source().clone());
            for i in 0..n {
                let Some(q) = p.lower(i) else { continue };
                let k = factor_through_mono(&incl[q.code(n)], &incl[c])
                    .ok_or_else(|| Error::NoSolution("meet inclusion does not factor".into()))?;
                boundaries.insert((p, i), k);
            }
        }
        DoubleCube::new(index.clone(), vertices, boundaries)
    }

    /// Replaces one unit boundary, for mutation operators.
    pub fn with_boundary(&self, p: DoubleIndex, i: usize, d: ModuleMorphism) -> Result<DoubleCube> {
        let mut vertices = BTreeMap::new();
        let mut boundaries = BTreeMap::new();
        for q in self.points() {
            vertices.insert(q, self.vertex(q).clone());
        }
        for (q, j) in self.edge_keys() {
            let e = if (q, j) == (p, i) {
                d.clone()
            } else {
                self.boundary(q, j).clone()
            };
            boundaries.insert((q, j), e);
        }
        DoubleCube::new(self.index.clone(), vertices, boundaries)
    }
}

fn first_difference(a: &Cube, b: &Cube) -> String {
    let idx = a.index();
    for t in idx.masks() {
        if a.vertex(t) != b.vertex(t) {
            return format!("vertex {{{}}}", idx.key(t));
        }
    }
    for (t, i) in a.edge_keys() {
        if a.boundary(t, i) != b.boundary(t, i) {
            return format!("boundary {}|{}", idx.key(t), idx.label(i));
        }
    }
    "cubes differ".into()
}
