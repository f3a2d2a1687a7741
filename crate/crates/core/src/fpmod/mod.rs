//! Finitely presented modules `A^g / colspan(R)` and their morphisms.

mod subobject;

pub use subobject::Subobject;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rings::{Ring, RingElement};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FPModule {
    ring: Ring,
    gens: usize,
    relations: Matrix,
}

impl fmt::Debug for FPModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FPModule({} gens, rel {:?})", self.gens, self.relations)
    }
}

/// Isomorphism invariant: non-unit invariant factors, torsion first, a zero
/// entry for every free summand.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleShape {
    pub ring: Ring,
    pub factors: Vec<RingElement>,
}

impl ModuleShape {
    pub fn is_zero(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factor_strings(&self) -> Vec<String> {
        self.factors
            .iter()
            .map(|f| self.ring.format_element(f))
            .collect()
    }

    /// Shape of a direct sum. Summands are recombined through a diagonal
    /// presentation so the result is canonical.
    pub fn sum(parts: &[ModuleShape]) -> Result<ModuleShape> {
        let ring = parts.first().map(|p| p.ring).unwrap_or(Ring::Integers);
        let factors: Vec<RingElement> = parts
            .iter()
            .flat_map(|p| p.factors.iter().cloned())
            .collect();
        Ok(FPModule::from_factors(ring, &factors)?.shape())
    }
}

impl fmt::Display for ModuleShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|d| {
                if d.is_zero() {
                    format!("{}", self.ring)
                } else {
                    format!("{}/({})", self.ring, d)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for ModuleShape {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.factor_strings().serialize(s)
    }
}

/// Result of [`FPModule::minimize`]: an isomorphic presentation with explicit
/// mutually inverse maps.
#[derive(Clone, Debug)]
pub struct Minimized {
    pub module: FPModule,
    /// old generators → new (k × g)
    pub to_new: Matrix,
    /// new generators → old (g × k)
    pub from_new: Matrix,
}

impl FPModule {
    pub fn new(ring: Ring, gens: usize, relations: Matrix) -> Result<FPModule> {
        if relations.ring() != ring {
            return Err(Error::RingMismatch(format!(
                "relations over {} in a module over {ring}",
                relations.ring()
            )));
        }
        if relations.rows() != gens {
            return Err(Error::Dimension(format!(
                "relations have {} rows, expected {gens}",
                relations.rows()
            )));
        }
        Ok(FPModule {
            ring,
            gens,
            relations,
        })
    }

    pub fn free(ring: Ring, n: usize) -> FPModule {
        FPModule {
            ring,
            gens: n,
            relations: Matrix::zeros(ring, n, 0),
        }
    }

    pub fn zero(ring: Ring) -> FPModule {
        FPModule::free(ring, 0)
    }

    /// `A/(d)`.
    pub fn cyclic(ring: Ring, d: &RingElement) -> FPModule {
        FPModule {
            ring,
            gens: 1,
            relations: Matrix::new(ring, 1, 1, vec![d.clone()]).expect("ring element"),
        }
    }

    /// `⊕ A/(d_i)`.
    pub fn from_factors(ring: Ring, ds: &[RingElement]) -> Result<FPModule> {
        let n = ds.len();
        let mut rel = Matrix::zeros(ring, n, n);
        for (i, d) in ds.iter().enumerate() {
            if !ring.contains(d) {
                return Err(Error::RingMismatch(format!("{d:?} not in {ring}")));
            }
            rel.set(i, i, d.clone());
        }
        Ok(FPModule {
            ring,
            gens: n,
            relations: rel,
        })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }
    pub fn gens(&self) -> usize {
        self.gens
    }
    pub fn relations(&self) -> &Matrix {
        &self.relations
    }

    /// No relations at all: the presentation is `A^g` on the nose.
    pub fn is_free_presentation(&self) -> bool {
        self.relations.is_zero()
    }

    pub fn shape(&self) -> ModuleShape {
        let inv = linalg::invariant_factors(&self.relations);
        let mut factors: Vec<RingElement> = inv
            .iter()
            .filter(|d| !self.ring.is_unit(d))
            .cloned()
            .collect();
        for _ in inv.len()..self.gens {
            factors.push(self.ring.zero());
        }
        ModuleShape {
            ring: self.ring,
            factors,
        }
    }

    pub fn is_zero(&self) -> bool {
        if self.gens == 0 {
            return true;
        }
        let inv = linalg::invariant_factors(&self.relations);
        inv.len() == self.gens && inv.iter().all(|d| self.ring.is_unit(d))
    }

    pub fn is_isomorphic(&self, other: &FPModule) -> bool {
        self.shape() == other.shape()
    }

    /// True when every column of `m` is zero in the module.
    pub fn vanishes(&self, m: &Matrix) -> bool {
        debug_assert_eq!(m.rows(), self.gens);
        m.is_zero() || linalg::solve(&self.relations, m).is_some()
    }

    /// Equal elements column by column.
    pub fn same_elements(&self, a: &Matrix, b: &Matrix) -> bool {
        a == b || self.vanishes(&a.sub(b))
    }

    /// Presentation with only non-unit invariant factors as relations.
    pub fn minimize(&self) -> Minimized {
        let r = self.ring;
        let g = self.gens;
        if self.relations.cols() == 0 {
            return Minimized {
                module: self.clone(),
                to_new: Matrix::identity(r, g),
                from_new: Matrix::identity(r, g),
            };
        }
        let s = linalg::smith_normal_form(&self.relations);
        let diag = s.diagonal();
        let kept: Vec<usize> = (0..g)
            .filter(|&i| i >= diag.len() || !r.is_unit(&diag[i]))
            .collect();
        let nonzero: Vec<(usize, RingElement)> = kept
            .iter()
            .enumerate()
            .filter(|(_, &i)| i < diag.len() && !diag[i].is_zero())
            .map(|(p, &i)| (p, diag[i].clone()))
            .collect();
        let mut rel = Matrix::zeros(r, kept.len(), nonzero.len());
        for (c, (p, d)) in nonzero.into_iter().enumerate() {
            rel.set(p, c, d);
        }
        Minimized {
            module: FPModule {
                ring: r,
                gens: kept.len(),
                relations: rel,
            },
            to_new: s.u.select_rows(&kept),
            from_new: s.u_inv.select_columns(&kept),
        }
    }

    pub fn direct_sum(ring: Ring, parts: &[&FPModule]) -> FPModule {
        let gens = parts.iter().map(|p| p.gens).sum();
        let rels: Vec<&Matrix> = parts.iter().map(|p| &p.relations).collect();
        FPModule {
            ring,
            gens,
            relations: Matrix::block_diag(ring, &rels),
        }
    }

    /// `x / (f_1, …, f_q) x`.
    pub fn quotient_by_scalars(&self, fs: &[RingElement]) -> FPModule {
        if fs.is_empty() {
            return self.clone();
        }
        let mut parts = vec![self.relations.clone()];
        for f in fs {
            parts.push(Matrix::scalar(self.ring, self.gens, f));
        }
        let refs: Vec<&Matrix> = parts.iter().collect();
        let rel = Matrix::hcat_all(self.ring, self.gens, &refs);
        FPModule {
            ring: self.ring,
            gens: self.gens,
            relations: rel,
        }
        .minimize()
        .module
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModuleMorphism {
    source: FPModule,
    target: FPModule,
    matrix: Matrix,
}

impl fmt::Debug for ModuleMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Morphism({:?})", self.matrix)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismClass {
    pub is_mono: bool,
    pub is_epi: bool,
    pub is_iso: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Kernel,
    Image,
    Cokernel,
}

/// A kernel, image or cokernel together with its structure map. For
/// cokernels `section` lifts generators of the quotient back to the target.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub module: FPModule,
    pub map: ModuleMorphism,
    pub section: Option<Matrix>,
}

impl ModuleMorphism {
    pub fn new(source: FPModule, target: FPModule, matrix: Matrix) -> Result<ModuleMorphism> {
        if matrix.ring() != source.ring || target.ring != source.ring {
            return Err(Error::RingMismatch(
                "morphism data over different rings".into(),
            ));
        }
        if matrix.rows() != target.gens || matrix.cols() != source.gens {
            return Err(Error::Dimension(format!(
                "matrix {}x{} for a map from {} to {} generators",
                matrix.rows(),
                matrix.cols(),
                source.gens,
                target.gens
            )));
        }
        let image_of_relations = matrix.mul(&source.relations);
        if !target.vanishes(&image_of_relations) {
            return Err(Error::IllDefined(
                "relations of the source are not sent to zero".into(),
            ));
        }
        Ok(ModuleMorphism {
            source,
            target,
            matrix,
        })
    }

    pub(crate) fn new_unchecked(
        source: FPModule,
        target: FPModule,
        matrix: Matrix,
    ) -> ModuleMorphism {
        debug_assert_eq!(matrix.rows(), target.gens);
        debug_assert_eq!(matrix.cols(), source.gens);
        ModuleMorphism {
            source,
            target,
            matrix,
        }
    }

    pub fn identity(m: &FPModule) -> ModuleMorphism {
        ModuleMorphism::scalar(m, &m.ring.one())
    }

    /// `a_x`: multiplication by a scalar.
    pub fn scalar(m: &FPModule, a: &RingElement) -> ModuleMorphism {
        ModuleMorphism {
            source: m.clone(),
            target: m.clone(),
            matrix: Matrix::scalar(m.ring, m.gens, a),
        }
    }

    pub fn zero(source: &FPModule, target: &FPModule) -> ModuleMorphism {
        ModuleMorphism {
            source: source.clone(),
            target: target.clone(),
            matrix: Matrix::zeros(source.ring, target.gens, source.gens),
        }
    }

    pub fn source(&self) -> &FPModule {
        &self.source
    }
    pub fn target(&self) -> &FPModule {
        &self.target
    }
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }
    pub fn ring(&self) -> Ring {
        self.source.ring
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ModuleMorphism) -> Result<ModuleMorphism> {
        if inner.target != self.source {
            return Err(Error::Dimension(
                "composition: target of the inner map differs from source".into(),
            ));
        }
        Ok(ModuleMorphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&inner.matrix),
        })
    }

    /// `self ∘ inner` where only the generator counts are known to agree.
    pub(crate) fn compose_loose(&self, inner: &ModuleMorphism) -> ModuleMorphism {
        ModuleMorphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&inner.matrix),
        }
    }

    fn same_ends(&self, other: &ModuleMorphism) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            Err(Error::Dimension(
                "morphisms with different source or target".into(),
            ))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &ModuleMorphism) -> Result<ModuleMorphism> {
        self.same_ends(other)?;
        Ok(ModuleMorphism {
            matrix: self.matrix.add(&other.matrix),
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &ModuleMorphism) -> Result<ModuleMorphism> {
        self.same_ends(other)?;
        Ok(ModuleMorphism {
            matrix: self.matrix.sub(&other.matrix),
            ..self.clone()
        })
    }

    pub fn neg(&self) -> ModuleMorphism {
        ModuleMorphism {
            matrix: self.matrix.neg(),
            ..self.clone()
        }
    }

    pub fn scale(&self, a: &RingElement) -> ModuleMorphism {
        ModuleMorphism {
            matrix: self.matrix.scale(a),
            ..self.clone()
        }
    }

    /// Equality as maps (matrices may differ by relations of the target).
    pub fn equals(&self, other: &ModuleMorphism) -> bool {
        self.source.gens == other.source.gens
            && self.target.gens == other.target.gens
            && self.target.same_elements(&self.matrix, &other.matrix)
    }

    pub fn is_zero_map(&self) -> bool {
        self.target.vanishes(&self.matrix)
    }

    /// Generators of `{x : f(x) = 0}` in `A^g` (contains the relations).
    fn preimage_of_zero(&self) -> Matrix {
        let g = self.source.gens;
        let k = linalg::kernel(&self.matrix.hcat(&self.target.relations));
        k.block(0, g, 0, k.cols())
    }

    pub fn is_mono(&self) -> bool {
        self.source.vanishes(&self.preimage_of_zero())
    }

    pub fn is_epi(&self) -> bool {
        let h = self.target.gens;
        h == 0
            || linalg::solve(
                &self.matrix.hcat(&self.target.relations),
                &Matrix::identity(self.ring(), h),
            )
            .is_some()
    }

    pub fn class(&self) -> MorphismClass {
        let is_mono = self.is_mono();
        let is_epi = self.is_epi();
        MorphismClass {
            is_mono,
            is_epi,
            is_iso: is_mono && is_epi,
        }
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    pub fn subquotient(&self, which: Which) -> Subquotient {
        let r = self.ring();
        match which {
            Which::Kernel => {
                let kgen = self.preimage_of_zero();
                let k = kgen.cols();
                let rel = linalg::kernel(&kgen.hcat(&self.source.relations));
                let raw = FPModule {
                    ring: r,
                    gens: k,
                    relations: rel.block(0, k, 0, rel.cols()),
                };
                let min = raw.minimize();
                let map = ModuleMorphism::new_unchecked(
                    min.module.clone(),
                    self.source.clone(),
                    kgen.mul(&min.from_new),
                );
                Subquotient {
                    module: min.module,
                    map,
                    section: None,
                }
            }
            Which::Image => {
                let raw = FPModule {
                    ring: r,
                    gens: self.source.gens,
                    relations: self.preimage_of_zero(),
                };
                let min = raw.minimize();
                let map = ModuleMorphism::new_unchecked(
                    min.module.clone(),
                    self.target.clone(),
                    self.matrix.mul(&min.from_new),
                );
                Subquotient {
                    module: min.module,
                    map,
                    section: None,
                }
            }
            Which::Cokernel => {
                let raw = FPModule {
                    ring: r,
                    gens: self.target.gens,
                    relations: self.matrix.hcat(&self.target.relations),
                };
                let min = raw.minimize();
                let map = ModuleMorphism::new_unchecked(
                    self.target.clone(),
                    min.module.clone(),
                    min.to_new.clone(),
                );
                Subquotient {
                    module: min.module,
                    map,
                    section: Some(min.from_new),
                }
            }
        }
    }

    pub fn kernel(&self) -> Subquotient {
        self.subquotient(Which::Kernel)
    }
    pub fn image(&self) -> Subquotient {
        self.subquotient(Which::Image)
    }
    pub fn cokernel(&self) -> Subquotient {
        self.subquotient(Which::Cokernel)
    }

    /// `[f_1 f_2 …] : ⊕ sources → target`.
    pub fn hstack(ring: Ring, target: &FPModule, parts: &[&ModuleMorphism]) -> ModuleMorphism {
        let sources: Vec<&FPModule> = parts.iter().map(|p| &p.source).collect();
        let mats: Vec<&Matrix> = parts.iter().map(|p| &p.matrix).collect();
        ModuleMorphism {
            source: FPModule::direct_sum(ring, &sources),
            target: target.clone(),
            matrix: Matrix::hcat_all(ring, target.gens, &mats),
        }
    }

    /// `(f_1; f_2; …) : source → ⊕ targets`.
    pub fn vstack(ring: Ring, source: &FPModule, parts: &[&ModuleMorphism]) -> ModuleMorphism {
        let targets: Vec<&FPModule> = parts.iter().map(|p| &p.target).collect();
        let mats: Vec<&Matrix> = parts.iter().map(|p| &p.matrix).collect();
        ModuleMorphism {
            source: source.clone(),
            target: FPModule::direct_sum(ring, &targets),
            matrix: Matrix::vcat_all(ring, source.gens, &mats),
        }
    }

    pub fn direct_sum(ring: Ring, parts: &[&ModuleMorphism]) -> ModuleMorphism {
        let sources: Vec<&FPModule> = parts.iter().map(|p| &p.source).collect();
        let targets: Vec<&FPModule> = parts.iter().map(|p| &p.target).collect();
        let mats: Vec<&Matrix> = parts.iter().map(|p| &p.matrix).collect();
        ModuleMorphism {
            source: FPModule::direct_sum(ring, &sources),
            target: FPModule::direct_sum(ring, &targets),
            matrix: Matrix::block_diag(ring, &mats),
        }
    }

    /// The map induced on cokernels: `coker(a) → coker(b)` given
    /// `self : target(a) → target(b)` compatible with the images.
    pub fn induced_on_cokernels(
        &self,
        from: &Subquotient,
        to: &Subquotient,
    ) -> Result<ModuleMorphism> {
        let section = from
            .section
            .as_ref()
            .ok_or_else(|| Error::Unsupported("cokernel without section".into()))?;
        let m = to.map.matrix.mul(&self.matrix).mul(section);
        ModuleMorphism::new(from.module.clone(), to.module.clone(), m)
    }
}

/// The unique `k : source(h) → source(mono)` with `mono ∘ k = h`.
pub fn factor_through_mono(mono: &ModuleMorphism, h: &ModuleMorphism) -> Option<ModuleMorphism> {
    let kgens = mono.source.gens;
    let a = mono.matrix.hcat(&mono.target.relations);
    let x = linalg::solve(&a, &h.matrix)?;
    Some(ModuleMorphism::new_unchecked(
        h.source.clone(),
        mono.source.clone(),
        x.block(0, kgens, 0, x.cols()),
    ))
}

/// Fibre product `P = A ×_C B` of `f : A → C` and `g : B → C`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub module: FPModule,
    pub to_f_source: ModuleMorphism,
    pub to_g_source: ModuleMorphism,
    embed: ModuleMorphism,
    f: ModuleMorphism,
    g: ModuleMorphism,
}

pub fn pullback(f: &ModuleMorphism, g: &ModuleMorphism) -> Result<Pullback> {
    if f.target != g.target {
        return Err(Error::Dimension(
            "pullback of maps with different targets".into(),
        ));
    }
    let r = f.ring();
    let diff = ModuleMorphism::hstack(r, &f.target, &[f, &g.neg()]);
    let ker = diff.kernel();
    let (ga, gb) = (f.source.gens, g.source.gens);
    let emb = ker.map.matrix.clone();
    let p1 = emb.block(0, ga, 0, emb.cols());
    let p2 = emb.block(ga, gb, 0, emb.cols());
    Ok(Pullback {
        to_f_source: ModuleMorphism::new_unchecked(ker.module.clone(), f.source.clone(), p1),
        to_g_source: ModuleMorphism::new_unchecked(ker.module.clone(), g.source.clone(), p2),
        module: ker.module,
        embed: ker.map,
        f: f.clone(),
        g: g.clone(),
    })
}

impl Pullback {
    /// The mediating map `Z → P` for a compatible pair `a : Z → A`,
    /// `b : Z → B` (`f∘a = g∘b`).
    pub fn mediate(&self, a: &ModuleMorphism, b: &ModuleMorphism) -> Result<ModuleMorphism> {
        if a.source.gens != b.source.gens {
            return Err(Error::Dimension(
                "mediate: the pair has different sources".into(),
            ));
        }
        let fa = self.f.compose_loose(a);
        let gb = self.g.compose_loose(b);
        if !fa.equals(&gb) {
            return Err(Error::NoSolution(
                "the pair does not commute over the base".into(),
            ));
        }
        let r = a.ring();
        let stacked = ModuleMorphism::vstack(r, &a.source, &[a, b]);
        factor_through_mono(&self.embed, &stacked)
            .ok_or_else(|| Error::NoSolution("pair does not factor through the pullback".into()))
    }

    /// Whether the square with corner maps `a : X → A`, `b : X → B` is
    /// Cartesian: the mediating map is an isomorphism.
    pub fn is_cartesian_corner(&self, a: &ModuleMorphism, b: &ModuleMorphism) -> Result<bool> {
        Ok(self.mediate(a, b)?.is_iso())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: Ring = Ring::Integers;

    fn zmod(d: i64) -> FPModule {
        FPModule::cyclic(Z, &Z.from_i64(d))
    }

    fn mult(m: &FPModule, a: i64) -> ModuleMorphism {
        ModuleMorphism::scalar(m, &m.ring().from_i64(a))
    }

    fn shape(v: &[i64]) -> ModuleShape {
        ModuleShape {
            ring: Z,
            factors: v.iter().map(|&x| Z.from_i64(x)).collect(),
        }
    }

    #[test]
    fn subquotients_of_scalars() {
        let z = FPModule::free(Z, 1);
        let two = mult(&z, 2);
        assert!(two.kernel().module.is_zero());
        assert_eq!(two.cokernel().module.shape(), shape(&[2]));
        assert!(mult(&zmod(2), 3).kernel().module.is_zero());
        let six = mult(&zmod(6), 6);
        assert_eq!(six.kernel().module.shape(), shape(&[6]));
        assert!(six.image().module.is_zero());
    }

    #[test]
    fn morphism_classes() {
        let z = FPModule::free(Z, 1);
        assert_eq!(
            mult(&z, 2).class(),
            MorphismClass {
                is_mono: true,
                is_epi: false,
                is_iso: false
            }
        );
        let f7 = FPModule::cyclic(Z, &Z.from_i64(7));
        assert!(mult(&f7, 5).is_iso());
        let c = mult(&zmod(4), 2).class();
        assert!(!c.is_mono && !c.is_epi);
    }

    #[test]
    fn ill_defined_rejected() {
        let m = ModuleMorphism::new(
            zmod(2),
            FPModule::free(Z, 1),
            Matrix::from_i64(Z, 1, 1, &[1]),
        );
        assert!(matches!(m, Err(Error::IllDefined(_))));
    }

    #[test]
    fn pullback_of_two_and_three() {
        let z = FPModule::free(Z, 1);
        let p = pullback(&mult(&z, 2), &mult(&z, 3)).unwrap();
        assert_eq!(p.module.shape(), shape(&[0]));
        // The generator maps to (3t, 2t) up to sign.
        let a = p.to_f_source.matrix().get(0, 0).to_string();
        let b = p.to_g_source.matrix().get(0, 0).to_string();
        assert!((a == "3" && b == "2") || (a == "-3" && b == "-2"));
        let med = p.mediate(&mult(&z, 3), &mult(&z, 2)).unwrap();
        assert!(med.is_iso());
        let p = pullback(&mult(&z, 2), &mult(&z, 2)).unwrap();
        assert_eq!(p.module.shape(), shape(&[0]));
        assert!(!p.mediate(&mult(&z, 2), &mult(&z, 2)).unwrap().is_iso());
    }

    #[test]
    fn scalar_quotients() {
        let z = FPModule::free(Z, 1);
        let e = |v: &[i64]| v.iter().map(|&x| Z.from_i64(x)).collect::<Vec<_>>();
        assert!(z.quotient_by_scalars(&e(&[2, 3])).is_zero());
        assert_eq!(z.quotient_by_scalars(&e(&[4, 6])).shape(), shape(&[2]));
        assert_eq!(z.quotient_by_scalars(&[]), z);
    }

    #[test]
    fn minimize_round_trip() {
        let r = Ring::IntegersMod(12);
        let m = FPModule::new(r, 2, Matrix::from_i64(r, 2, 2, &[4, 2, 6, 0])).unwrap();
        let min = m.minimize();
        let back =
            ModuleMorphism::new(min.module.clone(), m.clone(), min.from_new.clone()).unwrap();
        let fwd = ModuleMorphism::new(m.clone(), min.module.clone(), min.to_new.clone()).unwrap();
        assert!(back
            .compose(&fwd)
            .unwrap()
            .equals(&ModuleMorphism::identity(&m)));
        assert!(fwd.is_iso());
    }
}
