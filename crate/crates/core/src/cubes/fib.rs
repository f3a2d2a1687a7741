use serde::Serialize;

use crate::error::{Error, Result};
use crate::fpmod::{factor_through_mono, pullback, FPModule, ModuleMorphism};
use crate::linalg::Matrix;
use crate::par::{self, Execution};

use super::{Cube, CubeIndex, SquareWitness, Variance};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberedReport {
    pub fibered: bool,
    pub failing_square: Option<SquareWitness>,
}

/// `Fib 𝔵` for a family `𝔵 = {x_s → x}`: the vertex at `T ≠ ∅` is the
/// iterated fibre product `∏_x x_s` over `s ∈ T`, realised inside
/// `⊕_{s∈T} x_s`.
#[derive(Clone, Debug)]
pub struct FibCube {
    pub cube: Cube,
    /// `embeddings[T] : Fib_T → ⊕_{s∈T} x_s` (identity of `x` at `∅`).
    pub embeddings: Vec<ModuleMorphism>,
    /// `to_base[T] : Fib_T → x`.
    pub to_base: Vec<ModuleMorphism>,
}

/// Builds `Fib 𝔵`; `maps[i]` is the member for the `i`-th label.
pub fn fib_of_family(index: &CubeIndex, maps: &[ModuleMorphism]) -> Result<FibCube> {
    if maps.len() != index.len() || maps.is_empty() {
        return Err(Error::Dimension(format!(
            "{} maps for {} labels",
            maps.len(),
            index.len()
        )));
    }
    let base = maps[0].target().clone();
    if maps.iter().any(|f| f.target() != &base) {
        return Err(Error::Dimension(
            "family members must share their target".into(),
        ));
    }
    let ring = base.ring();
    let mut vertices = Vec::with_capacity(1 << index.len());
    let mut embeddings = Vec::with_capacity(1 << index.len());
    let mut to_base = Vec::with_capacity(1 << index.len());
    for t in index.masks() {
        let members = index.members(t);
        match members.len() {
            0 => {
                vertices.push(base.clone());
                embeddings.push(ModuleMorphism::identity(&base));
                to_base.push(ModuleMorphism::identity(&base));
            }
            1 => {
                let f = &maps[members[0]];
                vertices.push(f.source().clone());
                embeddings.push(ModuleMorphism::identity(f.source()));
                to_base.push(f.clone());
            }
            _ => {
                let sources: Vec<&FPModule> = members.iter().map(|&i| maps[i].source()).collect();
                let sum = FPModule::direct_sum(ring, &sources);
                let first = &maps[members[0]];
                let diffs: Vec<ModuleMorphism> = members[1..]
                    .iter()
                    .map(|&i| {
                        let mut parts = Vec::new();
                        for &j in &members {
                            parts.push(if j == members[0] {
                                first.clone()
                            } else if j == i {
                                maps[i].neg()
                            } else {
                                ModuleMorphism::zero(maps[j].source(), &base)
                            });
                        }
                        let refs: Vec<&ModuleMorphism> = parts.iter().collect();
                        ModuleMorphism::hstack(ring, &base, &refs)
                    })
                    .collect();
                let refs: Vec<&ModuleMorphism> = diffs.iter().collect();
                let d = ModuleMorphism::vstack(ring, &sum, &refs);
                let k = d.kernel();
                let proj = project(&sum, &sources, 0);
                to_base.push(first.compose_loose(&proj.compose_loose(&k.map)));
                vertices.push(k.module.clone());
                embeddings.push(k.map);
            }
        }
    }
    let cube = Cube::from_fn(
        index.clone(),
        Variance::Cube,
        |t| vertices[t as usize].clone(),
        |t, i| {
            let lower = t & !(1 << i);
            if lower == 0 {
                return Ok(to_base[t as usize].clone());
            }
            let members = index.members(t);
            let sources: Vec<&FPModule> = members.iter().map(|&j| maps[j].source()).collect();
            let sum = FPModule::direct_sum(ring, &sources);
            let keep: Vec<usize> = (0..members.len()).filter(|&p| members[p] != i).collect();
            let drop = drop_component(&sum, &sources, &keep);
            let h = drop.compose_loose(&embeddings[t as usize]);
            match factor_through_mono(&embeddings[lower as usize], &h) {
                Some(k) => ModuleMorphism::new(
                    vertices[t as usize].clone(),
                    vertices[lower as usize].clone(),
                    k.matrix().clone(),
                ),
                None => Err(Error::NoSolution(
                    "fibre product projection does not factor".into(),
                )),
            }
        },
    )?;
    Ok(FibCube {
        cube: cube.derived(),
        embeddings,
        to_base,
    })
}

/// Projection `⊕ sources → sources[p]`.
fn project(sum: &FPModule, sources: &[&FPModule], p: usize) -> ModuleMorphism {
    drop_component(sum, sources, &[p])
}

/// Projection `⊕ sources → ⊕_{p ∈ keep} sources[p]`.
fn drop_component(sum: &FPModule, sources: &[&FPModule], keep: &[usize]) -> ModuleMorphism {
    let ring = sum.ring();
    let offs: Vec<usize> = sources
        .iter()
        .scan(0, |acc, s| {
            let o = *acc;
            *acc += s.gens();
            Some(o)
        })
        .collect();
    let kept: Vec<&FPModule> = keep.iter().map(|&p| sources[p]).collect();
    let target = FPModule::direct_sum(ring, &kept);
    let mut m = Matrix::zeros(ring, target.gens(), sum.gens());
    let mut row = 0;
    for &p in keep {
        let g = sources[p].gens();
        m.paste(row, offs[p], &Matrix::identity(ring, g));
        row += g;
    }
    ModuleMorphism::new(sum.clone(), target, m).expect("projections are well defined")
}

impl Cube {
    /// Every square `(s, t, T)` is Cartesian.
    pub fn is_fibered(&self) -> Result<FiberedReport> {
        self.is_fibered_with(par::default_execution())
    }

    pub fn is_fibered_with(&self, exec: Execution) -> Result<FiberedReport> {
        self.require_cube("fiberedness")?;
        self.ensure_valid()?;
        let mut squares = Vec::new();
        for t in self.index().masks() {
            let m = self.index().members(t);
            for (p, &a) in m.iter().enumerate() {
                for &b in &m[p + 1..] {
                    squares.push((t, a, b));
                }
            }
        }
        let found = par::find_first(exec, &squares, |&(t, a, b)| {
            let (ta, tb) = (t & !(1 << a), t & !(1 << b));
            let res = pullback(self.boundary(tb, a), self.boundary(ta, b))
                .and_then(|p| p.is_cartesian_corner(self.boundary(t, b), self.boundary(t, a)));
            match res {
                Ok(true) => None,
                Ok(false) => Some(Ok(SquareWitness {
                    set: self.index().key(t),
                    first: self.index().label(a).to_string(),
                    second: self.index().label(b).to_string(),
                })),
                Err(e) => Some(Err(e)),
            }
        });
        let failing_square = found.transpose()?;
        Ok(FiberedReport {
            fibered: failing_square.is_none(),
            failing_square,
        })
    }

    /// The family `𝔘x = {d^s_{s} : x_{s} → x_∅}`.
    pub fn unit_family(&self) -> Vec<ModuleMorphism> {
        (0..self.dim())
            .map(|i| self.boundary(1 << i, i).clone())
            .collect()
    }

    /// The components `C(x)_T : x_T → (Fib 𝔘x)_T`.
    pub fn comparison_map(&self) -> Result<(FibCube, Vec<ModuleMorphism>)> {
        self.require_cube("the comparison map")?;
        self.ensure_valid()?;
        if self.dim() == 0 {
            let id = ModuleMorphism::identity(self.vertex(0));
            let fib = FibCube {
                cube: self.clone(),
                embeddings: vec![id.clone()],
                to_base: vec![id.clone()],
            };
            return Ok((fib, vec![id]));
        }
        let fib = fib_of_family(self.index(), &self.unit_family())?;
        let ring = self.ring();
        let mut comps = Vec::with_capacity(1 << self.dim());
        for t in self.index().masks() {
            let members = self.index().members(t);
            let c = if members.len() <= 1 {
                ModuleMorphism::identity(self.vertex(t))
            } else {
                let parts: Vec<ModuleMorphism> =
                    members.iter().map(|&i| self.hom(t, 1 << i)).collect();
                let refs: Vec<&ModuleMorphism> = parts.iter().collect();
                let h = ModuleMorphism::vstack(ring, self.vertex(t), &refs);
                factor_through_mono(&fib.embeddings[t as usize], &h).ok_or_else(|| {
                    Error::NoSolution("vertex does not map into the fibre product".into())
                })?
            };
            comps.push(c);
        }
        Ok((fib, comps))
    }

    /// Fiberedness through the canonical route: `C(x)` is an isomorphism.
    pub fn is_fibered_via_comparison(&self) -> Result<bool> {
        let (_, comps) = self.comparison_map()?;
        Ok(comps.iter().all(ModuleMorphism::is_iso))
    }
}
