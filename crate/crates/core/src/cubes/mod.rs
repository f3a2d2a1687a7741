//! `S`-cubes of finitely presented modules: contravariant functors on the
//! power set `𝒫(S)`, stored as vertices `x_T` and boundaries
//! `d^t_T : x_T → x_{T∖t}`.
//!
//! Subsets of `S` are bit masks over the sorted label list, so bit `i` is the
//! `i`-th label in lexicographic order. Cocubes (covariant functors) share the
//! representation; their boundaries run `x_{T∖t} → x_T`.

mod admissible;
mod checks;
mod fib;
mod index;
mod morphism;
mod sequences;

pub use admissible::{Admissibility, AdmissibilityMethod, AdmissibilityWitness};
pub use checks::{
    cal_of_tot_check, cone_check, fib_char_check, h0_totds_check, ordering_check, totisom_check,
    CalReport, ConeReport, FibCharReport, H0TotdsReport, TotisomReport,
};
pub use fib::{fib_of_family, FibCube, FiberedReport};
pub use index::{CubeIndex, Mask, MAX_LABELS};
pub use morphism::CubeMorphism;
pub use sequences::{
    sequence_check, x_sequence_lemma, SequenceMode, SequenceReport, XSequenceLemma,
};

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::complexes::ChainComplex;
use crate::error::{Error, Result};
use crate::fpmod::{FPModule, ModuleMorphism, Subquotient};
use crate::linalg::Matrix;
use crate::par::{self, Execution};
use crate::rings::{Ring, RingElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    Cube,
    CoCube,
}

impl Variance {
    pub fn flipped(self) -> Variance {
        match self {
            Variance::Cube => Variance::CoCube,
            Variance::CoCube => Variance::Cube,
        }
    }
}

/// A square `(T; a, b)` whose two composites differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareWitness {
    pub set: String,
    pub first: String,
    pub second: String,
}

/// A boundary `d^t_T` singled out by a check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeWitness {
    pub set: String,
    pub label: String,
}

/// Outcome of [`Cube::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Validation {
    pub valid: bool,
    pub failing_square: Option<SquareWitness>,
    pub monic: bool,
    pub non_mono_edge: Option<EdgeWitness>,
}

#[derive(Clone)]
pub struct Cube {
    ring: Ring,
    index: CubeIndex,
    variance: Variance,
    vertices: Vec<FPModule>,
    /// `edges[mask * n + i]` is `d^i_mask`, present iff `i ∈ mask`.
    edges: Vec<Option<ModuleMorphism>>,
    squares: OnceLock<Option<SquareWitness>>,
}

impl std::fmt::Debug for Cube {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Cube")
            .field("index", &self.index.labels())
            .field("variance", &self.variance)
            .field("vertices", &self.vertices)
            .finish()
    }
}

impl PartialEq for Cube {
    fn eq(&self, other: &Cube) -> bool {
        self.ring == other.ring
            && self.index == other.index
            && self.variance == other.variance
            && self.vertices == other.vertices
            && self.edges == other.edges
    }
}

impl Eq for Cube {}

/// The cokernel cube `H_0^k(x)` with the projections `π^k_T : x_T → H_0^k(x)_T`.
#[derive(Clone, Debug)]
pub struct HomologyCube {
    pub cube: Cube,
    pub label: String,
    pub projections: Vec<ModuleMorphism>,
}

impl Cube {
    /// Builds a cube from explicit data; every vertex and every boundary
    /// `(T, t ∈ T)` must be present and have the right ends.
    pub fn new(
        index: CubeIndex,
        variance: Variance,
        vertices: Vec<FPModule>,
        mut boundaries: BTreeMap<(Mask, usize), ModuleMorphism>,
    ) -> Result<Cube> {
        let n = index.len();
        if vertices.len() != 1 << n {
            return Err(Error::InvalidCube(format!(
                "{} vertices for {} labels",
                vertices.len(),
                n
            )));
        }
        let ring = vertices[0].ring();
        if vertices.iter().any(|v| v.ring() != ring) {
            return Err(Error::RingMismatch(
                "cube vertices over different rings".into(),
            ));
        }
        let mut edges = vec![None; (1 << n) * n];
        for mask in index.masks() {
            for i in index.members(mask) {
                let d = boundaries.remove(&(mask, i)).ok_or_else(|| {
                    Error::InvalidCube(format!(
                        "missing boundary {}|{}",
                        index.key(mask),
                        index.label(i)
                    ))
                })?;
                let (src, tgt) = match variance {
                    Variance::Cube => (mask, mask & !(1 << i)),
                    Variance::CoCube => (mask & !(1 << i), mask),
                };
                if d.source() != &vertices[src as usize] || d.target() != &vertices[tgt as usize] {
                    return Err(Error::InvalidCube(format!(
                        "boundary {}|{} has the wrong source or target",
                        index.key(mask),
                        index.label(i)
                    )));
                }
                edges[mask as usize * n + i] = Some(d);
            }
        }
        if let Some(((mask, i), _)) = boundaries.into_iter().next() {
            return Err(Error::InvalidCube(format!(
                "unexpected boundary for subset {mask:#b}, direction {i}"
            )));
        }
        Ok(Cube {
            ring,
            index,
            variance,
            vertices,
            edges,
            squares: OnceLock::new(),
        })
    }

    /// Builds a cube from a vertex function and a boundary function.
    pub fn from_fn<V, E>(
        index: CubeIndex,
        variance: Variance,
        vertex: V,
        mut edge: E,
    ) -> Result<Cube>
    where
        V: Fn(Mask) -> FPModule,
        E: FnMut(Mask, usize) -> Result<ModuleMorphism>,
    {
        let vertices: Vec<FPModule> = index.masks().map(&vertex).collect();
        let mut boundaries = BTreeMap::new();
        for mask in index.masks() {
            for i in index.members(mask) {
                boundaries.insert((mask, i), edge(mask, i)?);
            }
        }
        Cube::new(index, variance, vertices, boundaries)
    }

    /// Same as [`Cube::new`] but records that all squares commute, for cubes
    /// derived from a valid cube by a construction that preserves this.
    pub(crate) fn derived(self) -> Cube {
        let _ = self.squares.set(None);
        self
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }
    pub fn index(&self) -> &CubeIndex {
        &self.index
    }
    pub fn variance(&self) -> Variance {
        self.variance
    }
    pub fn dim(&self) -> usize {
        self.index.len()
    }
    pub fn vertex(&self, mask: Mask) -> &FPModule {
        &self.vertices[mask as usize]
    }
    pub fn vertices(&self) -> &[FPModule] {
        &self.vertices
    }

    /// `d^i_mask`; panics when `i ∉ mask`.
    pub fn boundary(&self, mask: Mask, i: usize) -> &ModuleMorphism {
        self.edges[mask as usize * self.dim() + i]
            .as_ref()
            .expect("direction must lie in the subset")
    }

    /// All `(T, t)` pairs in subset order.
    pub fn edge_keys(&self) -> Vec<(Mask, usize)> {
        self.index
            .masks()
            .flat_map(|m| self.index.members(m).into_iter().map(move |i| (m, i)))
            .collect()
    }

    fn require_cube(&self, what: &str) -> Result<()> {
        if self.variance == Variance::CoCube {
            return Err(Error::Unsupported(format!(
                "{what} is defined for cubes, not cocubes"
            )));
        }
        Ok(())
    }

    fn first_failing_square(&self, exec: Execution) -> Option<SquareWitness> {
        let mut squares = Vec::new();
        for mask in self.index.masks() {
            let m = self.index.members(mask);
            for (p, &a) in m.iter().enumerate() {
                for &b in &m[p + 1..] {
                    squares.push((mask, a, b));
                }
            }
        }
        par::find_first(exec, &squares, |&(t, a, b)| {
            let (ta, tb) = (t & !(1 << a), t & !(1 << b));
            let (lhs, rhs) = match self.variance {
                Variance::Cube => (
                    self.boundary(ta, b).compose_loose(self.boundary(t, a)),
                    self.boundary(tb, a).compose_loose(self.boundary(t, b)),
                ),
                Variance::CoCube => (
                    self.boundary(t, a).compose_loose(self.boundary(ta, b)),
                    self.boundary(t, b).compose_loose(self.boundary(tb, a)),
                ),
            };
            (!lhs.equals(&rhs)).then(|| SquareWitness {
                set: self.index.key(t),
                first: self.index.label(a).to_string(),
                second: self.index.label(b).to_string(),
            })
        })
    }

    pub fn first_non_mono(&self, exec: Execution) -> Option<EdgeWitness> {
        let keys = self.edge_keys();
        par::find_first(exec, &keys, |&(m, i)| {
            (!self.boundary(m, i).is_mono()).then(|| EdgeWitness {
                set: self.index.key(m),
                label: self.index.label(i).to_string(),
            })
        })
    }

    pub fn is_monic(&self) -> bool {
        self.first_non_mono(par::default_execution()).is_none()
    }

    /// Checks that all squares commute and reports whether `x` is monic.
    pub fn validate(&self) -> Validation {
        self.validate_with(par::default_execution())
    }

    pub fn validate_with(&self, exec: Execution) -> Validation {
        let failing_square = self
            .squares
            .get_or_init(|| self.first_failing_square(exec))
            .clone();
        let non_mono_edge = self.first_non_mono(exec);
        Validation {
            valid: failing_square.is_none(),
            failing_square,
            monic: non_mono_edge.is_none(),
            non_mono_edge,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.squares
            .get_or_init(|| self.first_failing_square(par::default_execution()))
            .is_none()
    }

    pub fn ensure_valid(&self) -> Result<()> {
        match self
            .squares
            .get_or_init(|| self.first_failing_square(par::default_execution()))
        {
            None => Ok(()),
            Some(w) => Err(Error::InvalidCube(format!(
                "square at {{{}}} in directions {}, {} does not commute",
                w.set, w.first, w.second
            ))),
        }
    }

    /// Composite `x_big → x_small` for `small ⊆ big` (cubes only).
    pub fn hom(&self, big: Mask, small: Mask) -> ModuleMorphism {
        debug_assert_eq!(self.variance, Variance::Cube);
        debug_assert_eq!(small & !big, 0);
        let mut cur = big;
        let mut acc = ModuleMorphism::identity(self.vertex(big));
        for i in self.index.members(big & !small) {
            acc = self.boundary(cur, i).compose_loose(&acc);
            cur &= !(1 << i);
        }
        acc
    }

    /// `x|_U^V`: the `U`-cube `A ↦ x_{A⊔V}`.
    pub fn restrict(&self, u: Mask, v: Mask) -> Result<Cube> {
        let full = self.index.full();
        if u & v != 0 || (u | v) & !full != 0 {
            return Err(Error::Index(format!(
                "restriction needs disjoint subsets of S, got {{{}}} and {{{}}}",
                self.index.key(u & full),
                self.index.key(v & full)
            )));
        }
        let sub = self.index.sub_index(u);
        let members = self.index.members(u);
        let n = sub.len();
        let mut vertices = Vec::with_capacity(1 << n);
        let mut edges = vec![None; (1 << n) * n];
        for a in sub.masks() {
            let big = CubeIndex::spread(&members, a) | v;
            vertices.push(self.vertex(big).clone());
            for j in sub.members(a) {
                edges[a as usize * n + j] = Some(self.boundary(big, members[j]).clone());
            }
        }
        let c = Cube {
            ring: self.ring,
            index: sub,
            variance: self.variance,
            vertices,
            edges,
            squares: OnceLock::new(),
        };
        Ok(if self.squares.get() == Some(&None) {
            c.derived()
        } else {
            c
        })
    }

    pub fn restrict_labels(&self, u: &[&str], v: &[&str]) -> Result<Cube> {
        self.restrict(self.index.mask_of(u)?, self.index.mask_of(v)?)
    }

    /// Backside `k`-face `x|^{k}_{S∖k}`.
    pub fn backside_face(&self, k: usize) -> Result<Cube> {
        self.restrict(self.index.full() & !(1 << k), 1 << k)
    }

    /// Frontside `k`-face `x|^∅_{S∖k}`.
    pub fn frontside_face(&self, k: usize) -> Result<Cube> {
        self.restrict(self.index.full() & !(1 << k), 0)
    }

    /// The total complex: degree `k` is `⊕_{|T|=k} x_T` in lexicographic
    /// subset order; the component `x_T → x_{T∖j}` is `(−1)^{#{t∈T : t>j}} d^j_T`.
    pub fn total_complex(&self) -> Result<ChainComplex> {
        self.require_cube("the total complex")?;
        self.ensure_valid()?;
        let n = self.dim();
        let r = self.ring;
        let layers: Vec<Vec<Mask>> = (0..=n).map(|k| self.index.subsets_of_size(k)).collect();
        let modules: Vec<FPModule> = layers
            .iter()
            .map(|layer| {
                let parts: Vec<&FPModule> = layer.iter().map(|&m| self.vertex(m)).collect();
                FPModule::direct_sum(r, &parts)
            })
            .collect();
        let offsets = |layer: &[Mask]| -> BTreeMap<Mask, usize> {
            let mut acc = 0;
            layer
                .iter()
                .map(|&m| {
                    let o = acc;
                    acc += self.vertex(m).gens();
                    (m, o)
                })
                .collect()
        };
        let mut boundaries = Vec::with_capacity(n);
        for k in 1..=n {
            let (rows, cols) = (offsets(&layers[k - 1]), offsets(&layers[k]));
            let mut m = Matrix::zeros(r, modules[k - 1].gens(), modules[k].gens());
            for &t in &layers[k] {
                for j in self.index.members(t) {
                    let above = (t >> (j + 1)).count_ones();
                    let d = self.boundary(t, j).matrix();
                    let block = if above % 2 == 0 { d.clone() } else { d.neg() };
                    m.paste(rows[&(t & !(1 << j))], cols[&t], &block);
                }
            }
            boundaries.push(ModuleMorphism::new_unchecked(
                modules[k].clone(),
                modules[k - 1].clone(),
                m,
            ));
        }
        ChainComplex::new(r, 0, modules, boundaries)
    }

    /// `H_0^k(x)`: vertex `T ⊆ S∖k` is `coker d^k_{T⊔k}`, boundaries induced.
    pub fn h0_direction(&self, k: usize) -> Result<HomologyCube> {
        self.require_cube("direction homology")?;
        self.ensure_valid()?;
        if k >= self.dim() {
            return Err(Error::Index(format!("direction {k} out of range")));
        }
        let rest = self.index.full() & !(1 << k);
        let members = self.index.members(rest);
        let sub = self.index.sub_index(rest);
        let cokernels: Vec<Subquotient> = sub
            .masks()
            .map(|a| {
                let t = CubeIndex::spread(&members, a);
                self.boundary(t | 1 << k, k).cokernel()
            })
            .collect();
        let projections = cokernels.iter().map(|c| c.map.clone()).collect();
        let cube = Cube::from_fn(
            sub,
            Variance::Cube,
            |a| cokernels[a as usize].module.clone(),
            |a, j| {
                let t = CubeIndex::spread(&members, a);
                let d = self.boundary(t, members[j]);
                d.induced_on_cokernels(&cokernels[a as usize], &cokernels[(a & !(1 << j)) as usize])
            },
        )?
        .derived();
        Ok(HomologyCube {
            cube,
            label: self.index.label(k).to_string(),
            projections,
        })
    }

    /// `H_0^{i_1}(H_0^{i_2}(… H_0^{i_k}(x)))` for `labels = [i_1, …, i_k]`:
    /// the last label is taken first.
    pub fn h0_iterated(&self, labels: &[&str]) -> Result<Cube> {
        let mut seen = std::collections::BTreeSet::new();
        for l in labels {
            self.index.position(l)?;
            if !seen.insert(*l) {
                return Err(Error::Index(format!("label {l} repeated")));
            }
        }
        let mut cur = self.clone();
        for l in labels.iter().rev() {
            let k = cur.index.position(l)?;
            cur = cur.h0_direction(k)?.cube;
        }
        Ok(cur)
    }

    /// `H_0^S(x)` in label order.
    pub fn h0_total(&self) -> Result<FPModule> {
        let labels: Vec<&str> = self.index.labels().iter().map(String::as_str).collect();
        Ok(self.h0_iterated(&labels)?.vertex(0).clone())
    }

    /// `Typ(f_S; x)`: every vertex is `x`, every boundary in direction `t`
    /// is `(f_t)_x`.
    pub fn typical(index: CubeIndex, fs: &[RingElement], x: &FPModule) -> Result<Cube> {
        if fs.len() != index.len() {
            return Err(Error::Dimension(format!(
                "{} scalars for {} labels",
                fs.len(),
                index.len()
            )));
        }
        let ring = x.ring();
        if let Some(f) = fs.iter().find(|f| !ring.contains(f)) {
            return Err(Error::RingMismatch(format!(
                "{f} is not an element of {ring}"
            )));
        }
        Ok(Cube::from_fn(
            index,
            Variance::Cube,
            |_| x.clone(),
            |_, i| Ok(ModuleMorphism::scalar(x, &fs[i])),
        )?
        .derived())
    }

    /// `x ∘_{s,α} y`: vertex `T` is `x_T` when `s ∈ T` and `y_T` otherwise;
    /// `d^s_T = d^{s,y}_T ∘ α_{T∖s} ∘ d^{s,x}_T`, where `α : x|^∅_{S∖s} → y|^{s}_{S∖s}`.
    pub fn compose(x: &Cube, y: &Cube, s: &str, alpha: &CubeMorphism) -> Result<Cube> {
        x.require_cube("composition")?;
        y.require_cube("composition")?;
        if x.index != y.index {
            return Err(Error::Index(
                "composition of cubes on different label sets".into(),
            ));
        }
        x.ensure_valid()?;
        y.ensure_valid()?;
        let k = x.index.position(s)?;
        let rest = x.index.full() & !(1 << k);
        let (xf, yb) = (x.restrict(rest, 0)?, y.restrict(rest, 1 << k)?);
        if alpha.source() != &xf || alpha.target() != &yb {
            return Err(Error::Naturality(
                "α must run from x|^∅ to y|^{s} on S∖s".into(),
            ));
        }
        let members = x.index.members(rest);
        let local = |t: Mask| -> Mask { CubeIndex::gather(&members, t) };
        let c = Cube::from_fn(
            x.index.clone(),
            Variance::Cube,
            |t| {
                if t & (1 << k) != 0 {
                    x.vertex(t).clone()
                } else {
                    y.vertex(t).clone()
                }
            },
            |t, i| {
                if i == k {
                    let lower = t & !(1 << k);
                    let a = alpha.component(local(lower));
                    Ok(y.boundary(t, k)
                        .compose_loose(&a.compose_loose(x.boundary(t, k))))
                } else if t & (1 << k) != 0 {
                    Ok(x.boundary(t, i).clone())
                } else {
                    Ok(y.boundary(t, i).clone())
                }
            },
        )?;
        Ok(c.derived())
    }

    /// `x_{f,y}`: replaces `x_∅` by the target of `f` and post-composes the
    /// boundaries into `∅` with `f`.
    pub fn attach(&self, f: &ModuleMorphism) -> Result<Cube> {
        self.require_cube("attachment")?;
        if f.source() != self.vertex(0) {
            return Err(Error::Dimension(
                "the attached map must start at the ∅-vertex".into(),
            ));
        }
        let c = Cube::from_fn(
            self.index.clone(),
            Variance::Cube,
            |t| {
                if t == 0 {
                    f.target().clone()
                } else {
                    self.vertex(t).clone()
                }
            },
            |t, i| {
                let d = self.boundary(t, i);
                Ok(if t == 1 << i {
                    f.compose_loose(d)
                } else {
                    d.clone()
                })
            },
        )?;
        Ok(if self.squares.get() == Some(&None) {
            c.derived()
        } else {
            c
        })
    }

    /// `x̂_T = x_{S∖T}`, `d^{t,x̂}_T = d^{t,x}_{(S∖T)⊔t}`; turns cubes into
    /// cocubes and back.
    pub fn dual(&self) -> Cube {
        let full = self.index.full();
        let n = self.dim();
        let vertices: Vec<FPModule> = self
            .index
            .masks()
            .map(|t| self.vertex(full & !t).clone())
            .collect();
        let mut edges = vec![None; (1 << n) * n];
        for t in self.index.masks() {
            for i in self.index.members(t) {
                edges[t as usize * n + i] = Some(self.boundary((full & !t) | 1 << i, i).clone());
            }
        }
        let squares = OnceLock::new();
        if let Some(s) = self.squares.get() {
            let _ = squares.set(s.clone().map(|w| {
                SquareWitness {
                    set: self
                        .index
                        .key(full & !self.index.parse_key(&w.set).unwrap_or(0)),
                    ..w
                }
            }));
        }
        Cube {
            ring: self.ring,
            index: self.index.clone(),
            variance: self.variance.flipped(),
            vertices,
            edges,
            squares,
        }
    }

    /// Replaces the boundary data while keeping vertices, for mutation
    /// operators in generators and tests.
    pub fn with_boundary(&self, mask: Mask, i: usize, d: ModuleMorphism) -> Result<Cube> {
        let mut b = BTreeMap::new();
        for (m, j) in self.edge_keys() {
            let e = if (m, j) == (mask, i) {
                d.clone()
            } else {
                self.boundary(m, j).clone()
            };
            b.insert((m, j), e);
        }
        Cube::new(self.index.clone(), self.variance, self.vertices.clone(), b)
    }

    /// `Tot d^{s,x} : Tot x|^{s}_{S∖s} → Tot x|^∅_{S∖s}` as a chain map.
    pub fn tot_direction_map(&self, k: usize) -> Result<crate::complexes::ChainMap> {
        self.require_cube("Tot d^s")?;
        let rest = self.index.full() & !(1 << k);
        let back = self.restrict(rest, 1 << k)?;
        let front = self.restrict(rest, 0)?;
        let (tb, tf) = (back.total_complex()?, front.total_complex()?);
        let members = self.index.members(rest);
        let sub = back.index.clone();
        let mut comps = BTreeMap::new();
        for deg in 0..=sub.len() {
            let parts: Vec<ModuleMorphism> = sub
                .subsets_of_size(deg)
                .into_iter()
                .map(|a| {
                    self.boundary(CubeIndex::spread(&members, a) | 1 << k, k)
                        .clone()
                })
                .collect();
            let refs: Vec<&ModuleMorphism> = parts.iter().collect();
            let d = ModuleMorphism::direct_sum(self.ring, &refs);
            let d = ModuleMorphism::new(
                tb.module(deg as i64),
                tf.module(deg as i64),
                d.matrix().clone(),
            )?;
            comps.insert(deg as i64, d);
        }
        crate::complexes::ChainMap::new(tb, tf, comps)
    }
}
