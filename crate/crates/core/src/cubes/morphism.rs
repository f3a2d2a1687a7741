use crate::error::{Error, Result};
use crate::fpmod::ModuleMorphism;

use super::{Cube, Mask};

/// A natural transformation between two cubes on the same index.
#[derive(Clone, Debug)]
pub struct CubeMorphism {
    source: Cube,
    target: Cube,
    components: Vec<ModuleMorphism>,
}

impl CubeMorphism {
    /// `components[T] : x_T → y_T`; every naturality square is checked.
    pub fn new(
        source: Cube,
        target: Cube,
        components: Vec<ModuleMorphism>,
    ) -> Result<CubeMorphism> {
        if source.index() != target.index() || source.variance() != target.variance() {
            return Err(Error::Index(
                "cube morphism between cubes of different shape".into(),
            ));
        }
        if components.len() != source.vertices().len() {
            return Err(Error::Dimension("one component per vertex expected".into()));
        }
        for (t, f) in components.iter().enumerate() {
            if f.source() != source.vertex(t as Mask) || f.target() != target.vertex(t as Mask) {
                return Err(Error::Dimension(format!(
                    "component at {{{}}} has the wrong ends",
                    source.index().key(t as Mask)
                )));
            }
        }
        let m = CubeMorphism {
            source,
            target,
            components,
        };
        if let Some((t, i)) = m.first_unnatural() {
            return Err(Error::Naturality(format!(
                "square at {{{}}} in direction {} does not commute",
                m.source.index().key(t),
                m.source.index().label(i)
            )));
        }
        Ok(m)
    }

    /// Identity on a cube.
    pub fn identity(x: &Cube) -> CubeMorphism {
        let components = x.vertices().iter().map(ModuleMorphism::identity).collect();
        CubeMorphism {
            source: x.clone(),
            target: x.clone(),
            components,
        }
    }

    fn first_unnatural(&self) -> Option<(Mask, usize)> {
        self.source.edge_keys().into_iter().find(|&(t, i)| {
            let lower = t & !(1 << i);
            let (ds, dt) = (self.source.boundary(t, i), self.target.boundary(t, i));
            let (lhs, rhs) = match self.source.variance() {
                super::Variance::Cube => (
                    dt.compose_loose(&self.components[t as usize]),
                    self.components[lower as usize].compose_loose(ds),
                ),
                super::Variance::CoCube => (
                    dt.compose_loose(&self.components[lower as usize]),
                    self.components[t as usize].compose_loose(ds),
                ),
            };
            !lhs.equals(&rhs)
        })
    }

    pub fn source(&self) -> &Cube {
        &self.source
    }
    pub fn target(&self) -> &Cube {
        &self.target
    }
    pub fn component(&self, t: Mask) -> &ModuleMorphism {
        &self.components[t as usize]
    }

    pub fn is_iso(&self) -> bool {
        self.components.iter().all(ModuleMorphism::is_iso)
    }

    /// The boundary in direction `k` as a morphism `x|^{k}_{S∖k} → x|^∅_{S∖k}`.
    pub fn face_map(x: &Cube, k: usize) -> Result<CubeMorphism> {
        let rest = x.index().full() & !(1 << k);
        let back = x.restrict(rest, 1 << k)?;
        let front = x.restrict(rest, 0)?;
        let members = x.index().members(rest);
        let components = back
            .index()
            .masks()
            .map(|a| {
                x.boundary(super::CubeIndex::spread(&members, a) | 1 << k, k)
                    .clone()
            })
            .collect();
        CubeMorphism::new(back, front, components)
    }
}
