use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rings::Ring;

use super::{FPModule, ModuleMorphism};

/// A submodule `N/R ⊂ A^g/R` of a fixed ambient module.
///
/// `key` is the canonical basis of the full preimage `N ⊂ A^g` (Hermite form
/// over ℤ with `m·A^g` included for residue rings, reduced echelon form over
/// ℚ); two subobjects are equal iff their keys are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subobject {
    ambient: FPModule,
    key: Matrix,
    generators: Matrix,
}

impl Subobject {
    /// Submodule generated by the columns of `generators`.
    pub fn new(ambient: &FPModule, generators: &Matrix) -> Result<Subobject> {
        if generators.rows() != ambient.gens() || generators.ring() != ambient.ring() {
            return Err(Error::Dimension(
                "subobject generators do not live in the ambient module".into(),
            ));
        }
        let all = generators.hcat(ambient.relations());
        let key = linalg::canonical_row_basis(&all.transpose());
        let ring = ambient.ring();
        let generators = match ring {
            Ring::Rationals => key.transpose(),
            _ => {
                let k = key.transpose();
                let data = k
                    .entries()
                    .iter()
                    .map(|e| ring.from_bigint(ring.lift(e)))
                    .collect();
                Matrix::new(ring, k.rows(), k.cols(), data)?.prune_columns()
            }
        };
        Ok(Subobject {
            ambient: ambient.clone(),
            key,
            generators,
        })
    }

    pub fn whole(ambient: &FPModule) -> Subobject {
        Subobject::new(ambient, &Matrix::identity(ambient.ring(), ambient.gens()))
            .expect("identity generators")
    }

    pub fn zero(ambient: &FPModule) -> Subobject {
        Subobject::new(ambient, &Matrix::zeros(ambient.ring(), ambient.gens(), 0))
            .expect("empty generators")
    }

    /// Image of `f` as a subobject of its target.
    pub fn image_of(f: &ModuleMorphism) -> Subobject {
        Subobject::new(f.target(), f.matrix()).expect("morphism matrix")
    }

    pub fn ambient(&self) -> &FPModule {
        &self.ambient
    }

    /// Canonical generators (columns in the ambient generators).
    pub fn generators(&self) -> &Matrix {
        &self.generators
    }

    pub fn canonical_key(&self) -> &Matrix {
        &self.key
    }

    fn same_ambient(&self, other: &Subobject) -> Result<()> {
        if self.ambient != other.ambient {
            Err(Error::Dimension(
                "subobjects of different ambient modules".into(),
            ))
        } else {
            Ok(())
        }
    }

    pub fn join(&self, other: &Subobject) -> Result<Subobject> {
        self.same_ambient(other)?;
        Subobject::new(&self.ambient, &self.generators.hcat(&other.generators))
    }

    pub fn meet(&self, other: &Subobject) -> Result<Subobject> {
        self.same_ambient(other)?;
        let (a, b) = (&self.generators, &other.generators);
        let r = self.ambient.ring();
        let stacked = Matrix::hcat_all(
            r,
            self.ambient.gens(),
            &[a, &b.neg(), self.ambient.relations()],
        );
        let k = linalg::kernel(&stacked);
        let coeffs = k.block(0, a.cols(), 0, k.cols());
        Subobject::new(&self.ambient, &a.mul(&coeffs))
    }

    pub fn leq(&self, other: &Subobject) -> Result<bool> {
        self.same_ambient(other)?;
        Ok(self.join(other)?.key == other.key)
    }

    pub fn is_zero(&self) -> bool {
        *self == Subobject::zero(&self.ambient)
    }

    /// `self / lower` as a module; `lower ≤ self` is required.
    pub fn quotient(&self, lower: &Subobject) -> Result<FPModule> {
        if !lower.leq(self)? {
            return Err(Error::Dimension(
                "quotient by a subobject that is not contained".into(),
            ));
        }
        let r = self.ambient.ring();
        let b = &self.generators;
        let stacked = Matrix::hcat_all(
            r,
            self.ambient.gens(),
            &[b, &lower.generators, self.ambient.relations()],
        );
        let k = linalg::kernel(&stacked);
        let rel = k.block(0, b.cols(), 0, k.cols());
        Ok(FPModule::new(r, b.cols(), rel)?.minimize().module)
    }

    /// The subobject as a module in its own right.
    pub fn as_module(&self) -> FPModule {
        self.quotient(&Subobject::zero(&self.ambient))
            .expect("zero is below everything")
    }

    /// Inclusion into the ambient module.
    pub fn inclusion(&self) -> ModuleMorphism {
        let m = self.as_module_with_map();
        m.1
    }

    fn as_module_with_map(&self) -> (FPModule, ModuleMorphism) {
        let r = self.ambient.ring();
        let b = &self.generators;
        let k = linalg::kernel(&b.hcat(self.ambient.relations()));
        let rel = k.block(0, b.cols(), 0, k.cols());
        let raw = FPModule::new(r, b.cols(), rel).expect("relation shape");
        let min = raw.minimize();
        let map = ModuleMorphism::new_unchecked(
            min.module.clone(),
            self.ambient.clone(),
            b.mul(&min.from_new),
        );
        (min.module, map)
    }
}
