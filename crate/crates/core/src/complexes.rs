//! Bounded chain complexes of finitely presented modules (boundaries of
//! degree −1).

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fpmod::{FPModule, ModuleMorphism, ModuleShape, Subobject};
use crate::linalg::Matrix;
use crate::par::{self, Execution};
use crate::rings::{Ring, RingElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ring: Ring,
    lo: i64,
    modules: Vec<FPModule>,
    /// `boundaries[i]` is `d_{lo+1+i} : C_{lo+1+i} → C_{lo+i}`.
    boundaries: Vec<ModuleMorphism>,
}

/// Outcome of [`ChainComplex::is_spherical`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sphericity {
    pub spherical: bool,
    pub failing_degree: Option<i64>,
    pub failing_homology: Option<ModuleShape>,
}

impl ChainComplex {
    /// `modules` are `C_lo, …, C_hi`; `boundaries` are `d_{lo+1}, …, d_hi`.
    pub fn new(
        ring: Ring,
        lo: i64,
        modules: Vec<FPModule>,
        boundaries: Vec<ModuleMorphism>,
    ) -> Result<ChainComplex> {
        if modules.is_empty() {
            if !boundaries.is_empty() {
                return Err(Error::Dimension("boundaries without modules".into()));
            }
        } else if boundaries.len() + 1 != modules.len() {
            return Err(Error::Dimension(format!(
                "{} modules need {} boundaries, got {}",
                modules.len(),
                modules.len() - 1,
                boundaries.len()
            )));
        }
        for (i, d) in boundaries.iter().enumerate() {
            if d.source() != &modules[i + 1] || d.target() != &modules[i] {
                return Err(Error::Dimension(format!(
                    "boundary of degree {} has the wrong ends",
                    lo + 1 + i as i64
                )));
            }
        }
        for (i, w) in boundaries.windows(2).enumerate() {
            if !w[0].compose(&w[1])?.is_zero_map() {
                return Err(Error::IllDefined(format!(
                    "d∘d ≠ 0 at degree {}",
                    lo + 2 + i as i64
                )));
            }
        }
        if modules.iter().any(|m| m.ring() != ring) {
            return Err(Error::RingMismatch(
                "complex modules over different rings".into(),
            ));
        }
        Ok(ChainComplex {
            ring,
            lo,
            modules,
            boundaries,
        })
    }

    pub fn zero(ring: Ring) -> ChainComplex {
        ChainComplex {
            ring,
            lo: 0,
            modules: vec![],
            boundaries: vec![],
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }
    pub fn lo(&self) -> i64 {
        self.lo
    }
    pub fn hi(&self) -> i64 {
        self.lo + self.modules.len() as i64 - 1
    }
    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }
    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    /// `C_k`, zero outside the stored range.
    pub fn module(&self, k: i64) -> FPModule {
        self.module_ref(k)
            .cloned()
            .unwrap_or_else(|| FPModule::zero(self.ring))
    }

    fn module_ref(&self, k: i64) -> Option<&FPModule> {
        if k < self.lo {
            return None;
        }
        self.modules.get((k - self.lo) as usize)
    }

    /// `d_k : C_k → C_{k−1}` when both ends are stored.
    pub fn boundary(&self, k: i64) -> Option<&ModuleMorphism> {
        if k <= self.lo {
            return None;
        }
        self.boundaries.get((k - self.lo - 1) as usize)
    }

    /// `d_k` with zero maps filled in outside the stored range.
    pub fn boundary_or_zero(&self, k: i64) -> ModuleMorphism {
        self.boundary(k)
            .cloned()
            .unwrap_or_else(|| ModuleMorphism::zero(&self.module(k), &self.module(k - 1)))
    }

    pub fn modules(&self) -> &[FPModule] {
        &self.modules
    }
    pub fn boundaries(&self) -> &[ModuleMorphism] {
        &self.boundaries
    }

    pub fn homology(&self, k: i64) -> FPModule {
        let Some(ck) = self.module_ref(k) else {
            return FPModule::zero(self.ring);
        };
        let cycles = match self.boundary(k) {
            Some(d) => d.kernel().map,
            None => ModuleMorphism::identity(ck),
        };
        let z = Subobject::image_of(&cycles);
        let b = match self.boundary(k + 1) {
            Some(d) => Subobject::image_of(d),
            None => Subobject::zero(ck),
        };
        z.quotient(&b).expect("boundaries are cycles")
    }

    pub fn homology_shape(&self, k: i64) -> ModuleShape {
        self.homology(k).shape()
    }

    /// Homology shapes for every stored degree.
    pub fn homology_all(&self, exec: Execution) -> Vec<(i64, ModuleShape)> {
        let ks: Vec<i64> = self.degrees().collect();
        par::map(exec, &ks, |&k| (k, self.homology_shape(k)))
    }

    /// `H_k = 0` for every `k ≠ n`; the witness is the first failing degree.
    pub fn is_spherical(&self, n: i64) -> Sphericity {
        self.is_spherical_with(n, Execution::Sequential)
    }

    pub fn is_spherical_with(&self, n: i64, exec: Execution) -> Sphericity {
        let ks: Vec<i64> = self.degrees().filter(|&k| k != n).collect();
        match par::find_first(exec, &ks, |&k| {
            let h = self.homology_shape(k);
            (!h.is_zero()).then_some((k, h))
        }) {
            Some((k, h)) => Sphericity {
                spherical: false,
                failing_degree: Some(k),
                failing_homology: Some(h),
            },
            None => Sphericity {
                spherical: true,
                failing_degree: None,
                failing_homology: None,
            },
        }
    }

    /// `self ⊕ other`, degreewise.
    pub fn direct_sum(&self, other: &ChainComplex) -> Result<ChainComplex> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(
                "direct sum of complexes over different rings".into(),
            ));
        }
        if self.is_empty() {
            return Ok(other.clone());
        }
        if other.is_empty() {
            return Ok(self.clone());
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let modules = (lo..=hi)
            .map(|k| FPModule::direct_sum(self.ring, &[&self.module(k), &other.module(k)]))
            .collect();
        let boundaries = (lo + 1..=hi)
            .map(|k| {
                ModuleMorphism::direct_sum(
                    self.ring,
                    &[&self.boundary_or_zero(k), &other.boundary_or_zero(k)],
                )
            })
            .collect();
        ChainComplex::new(self.ring, lo, modules, boundaries)
    }

    /// The Koszul complex `K(f_1, …, f_n; x)`: degree `k` is `⊕_{|T|=k} x`
    /// over subsets in lexicographic order, and `e_T ↦ Σ_{j∈T} (−1)^{#{t∈T : t>j}} f_j e_{T∖j}`.
    pub fn koszul(x: &FPModule, fs: &[RingElement]) -> ChainComplex {
        let ring = x.ring();
        let n = fs.len();
        let subsets: Vec<Vec<Vec<usize>>> =
            (0..=n).map(|k| (0..n).combinations(k).collect()).collect();
        let modules: Vec<FPModule> = subsets
            .iter()
            .map(|s| FPModule::direct_sum(ring, &vec![x; s.len()]))
            .collect();
        let g = x.gens();
        let mut boundaries = Vec::new();
        for k in 1..=n {
            let mut m = Matrix::zeros(ring, g * subsets[k - 1].len(), g * subsets[k].len());
            for (ci, t) in subsets[k].iter().enumerate() {
                for &j in t {
                    let smaller: Vec<usize> = t.iter().copied().filter(|&u| u != j).collect();
                    let ri = subsets[k - 1]
                        .iter()
                        .position(|s| *s == smaller)
                        .expect("face");
                    let above = t.iter().filter(|&&u| u > j).count();
                    let coeff = if above % 2 == 0 {
                        fs[j].clone()
                    } else {
                        ring.neg(&fs[j])
                    };
                    m.paste(ri * g, ci * g, &Matrix::scalar(ring, g, &coeff));
                }
            }
            boundaries.push(ModuleMorphism::new_unchecked(
                modules[k].clone(),
                modules[k - 1].clone(),
                m,
            ));
        }
        ChainComplex {
            ring,
            lo: 0,
            modules,
            boundaries,
        }
    }
}

/// A morphism of complexes `a → b`, with components in every degree where
/// `a` or `b` is stored.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: ChainComplex,
    pub target: ChainComplex,
    components: BTreeMap<i64, ModuleMorphism>,
}

impl ChainMap {
    /// Missing components are zero maps. Checks `d^b ∘ f = f ∘ d^a`.
    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        components: BTreeMap<i64, ModuleMorphism>,
    ) -> Result<ChainMap> {
        let lo = source.lo.min(target.lo);
        let hi = source.hi().max(target.hi());
        let mut full = BTreeMap::new();
        for k in lo..=hi {
            let f = match components.get(&k) {
                Some(f) => {
                    if f.source() != &source.module(k) || f.target() != &target.module(k) {
                        return Err(Error::Dimension(format!(
                            "chain map component {k} has the wrong ends"
                        )));
                    }
                    f.clone()
                }
                None => ModuleMorphism::zero(&source.module(k), &target.module(k)),
            };
            full.insert(k, f);
        }
        let map = ChainMap {
            source,
            target,
            components: full,
        };
        for k in lo + 1..=hi {
            let lhs = map
                .target
                .boundary_or_zero(k)
                .compose(&map.components[&k])?;
            let rhs = map.components[&(k - 1)].compose(&map.source.boundary_or_zero(k))?;
            if !lhs.equals(&rhs) {
                return Err(Error::Naturality(format!(
                    "chain map does not commute with d_{k}"
                )));
            }
        }
        Ok(map)
    }

    pub fn component(&self, k: i64) -> ModuleMorphism {
        self.components
            .get(&k)
            .cloned()
            .unwrap_or_else(|| ModuleMorphism::zero(&self.source.module(k), &self.target.module(k)))
    }

    /// `Cone(f)_n = a_{n−1} ⊕ b_n`, boundary `[[−d^a, 0], [−f, d^b]]`.
    pub fn mapping_cone(&self) -> ChainComplex {
        let ring = self.source.ring;
        let (a, b) = (&self.source, &self.target);
        let lo = if a.is_empty() {
            b.lo
        } else if b.is_empty() {
            a.lo + 1
        } else {
            (a.lo + 1).min(b.lo)
        };
        let hi = if a.is_empty() {
            b.hi()
        } else if b.is_empty() {
            a.hi() + 1
        } else {
            (a.hi() + 1).max(b.hi())
        };
        if a.is_empty() && b.is_empty() {
            return ChainComplex::zero(ring);
        }
        let modules: Vec<FPModule> = (lo..=hi)
            .map(|n| FPModule::direct_sum(ring, &[&a.module(n - 1), &b.module(n)]))
            .collect();
        let mut boundaries = Vec::new();
        for n in lo + 1..=hi {
            let da = a.boundary_or_zero(n - 1);
            let db = b.boundary_or_zero(n);
            let f = self.component(n - 1);
            let (ra, rb) = (a.module(n - 2).gens(), b.module(n - 1).gens());
            let (ca, cb) = (a.module(n - 1).gens(), b.module(n).gens());
            let mut m = Matrix::zeros(ring, ra + rb, ca + cb);
            m.paste(0, 0, &da.matrix().neg());
            m.paste(ra, 0, &f.matrix().neg());
            m.paste(ra, ca, db.matrix());
            let (src, tgt) = (&modules[(n - lo) as usize], &modules[(n - 1 - lo) as usize]);
            boundaries.push(ModuleMorphism::new_unchecked(src.clone(), tgt.clone(), m));
        }
        ChainComplex::new(ring, lo, modules, boundaries).expect("cone of a chain map is a complex")
    }

    /// The induced map `H_0(a) → H_0(b)`.
    pub fn h0(&self) -> ModuleMorphism {
        let from = self.source.boundary_or_zero(1).cokernel();
        let to = self.target.boundary_or_zero(1).cokernel();
        self.component(0)
            .induced_on_cokernels(&from, &to)
            .expect("chain maps induce maps on H_0")
    }
}
