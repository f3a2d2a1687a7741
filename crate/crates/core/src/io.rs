//! JSON instance files. Keys are sorted (every map is a `BTreeMap`) and
//! unknown keys are rejected.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::adjugates::CubeAdjugate;
use crate::complexes::ChainComplex;
use crate::cubes::{Cube, CubeIndex, Variance};
use crate::doublecubes::{DoubleCube, DoubleIndex};
use crate::error::{Error, Result};
use crate::fpmod::{FPModule, ModuleMorphism, Subobject};
use crate::lattices::FiniteLattice;
use crate::linalg::Matrix;
use crate::rings::{Ring, RingElement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub gens: usize,
    pub relations: MatrixFile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CubeFile {
    pub ring: Ring,
    pub index: Vec<String>,
    pub vertices: BTreeMap<String, ModuleFile>,
    /// Keyed `"T|t"`.
    pub boundaries: BTreeMap<String, MatrixFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoubleFile {
    pub ring: Ring,
    pub index: Vec<String>,
    /// Keyed by full assignments `"a=0,b=2"`.
    pub vertices: BTreeMap<String, ModuleFile>,
    /// Keyed `"a=1,b=2|a"`: lowers `a` by one.
    pub boundaries: BTreeMap<String, MatrixFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub ring: Ring,
    pub lo: i64,
    pub hi: i64,
    pub modules: Vec<ModuleFile>,
    /// `d_{lo+1}, …, d_hi`.
    pub boundaries: Vec<MatrixFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeFile {
    pub elements: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<BTreeMap<String, String>>,
}

/// A family over one ambient module, given by scalars `(f_s)_x` or by
/// subobject generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub ring: Ring,
    pub ambient: ModuleFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scalars: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub members: Option<BTreeMap<String, MatrixFile>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdjugateFile {
    pub scalars: BTreeMap<String, String>,
    pub stars: BTreeMap<String, MatrixFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleFile {
    pub cube: CubeFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adjugate: Option<AdjugateFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum InstanceFile {
    Cube(CubeFile),
    Double(DoubleFile),
    Complex(ComplexFile),
    BeComplex(ComplexFile),
    Lattice(LatticeFile),
    Family(FamilyFile),
    AdjugateBundle(BundleFile),
}

impl InstanceFile {
    pub fn kind(&self) -> &'static str {
        match self {
            InstanceFile::Cube(_) => "cube",
            InstanceFile::Double(_) => "double",
            InstanceFile::Complex(_) => "complex",
            InstanceFile::BeComplex(_) => "be-complex",
            InstanceFile::Lattice(_) => "lattice",
            InstanceFile::Family(_) => "family",
            InstanceFile::AdjugateBundle(_) => "adjugate-bundle",
        }
    }

    pub fn parse(text: &str) -> Result<InstanceFile> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance files serialize")
    }

    /// Replaces the ring everywhere it appears.
    pub fn override_ring(&mut self, ring: Ring) {
        match self {
            InstanceFile::Cube(c) => c.ring = ring,
            InstanceFile::Double(d) => d.ring = ring,
            InstanceFile::Complex(c) | InstanceFile::BeComplex(c) => c.ring = ring,
            InstanceFile::Family(f) => f.ring = ring,
            InstanceFile::AdjugateBundle(b) => b.cube.ring = ring,
            InstanceFile::Lattice(_) => {}
        }
    }
}

/// Parses an entry. Entries written for another ring are mapped into
/// `ring` when that makes sense (integers reduce mod `m`).
pub fn parse_entry(ring: Ring, s: &str) -> Result<RingElement> {
    if let Ok(e) = ring.parse_element(s) {
        return Ok(e);
    }
    let q = Ring::Rationals.parse_element(s)?;
    match q {
        RingElement::Rat(v) => ring.from_rational(v),
        RingElement::Int(v) => ring.from_rational(BigRational::from_integer(v)),
    }
}

pub fn matrix_to_file(m: &Matrix) -> MatrixFile {
    MatrixFile {
        rows: m.rows(),
        cols: m.cols(),
        entries: m
            .entries()
            .iter()
            .map(|e| m.ring().format_element(e))
            .collect(),
    }
}

pub fn matrix_from_file(ring: Ring, f: &MatrixFile) -> Result<Matrix> {
    let data = f
        .entries
        .iter()
        .map(|s| parse_entry(ring, s))
        .collect::<Result<_>>()?;
    Matrix::new(ring, f.rows, f.cols, data)
}

pub fn module_to_file(m: &FPModule) -> ModuleFile {
    ModuleFile {
        gens: m.gens(),
        relations: matrix_to_file(m.relations()),
    }
}

pub fn module_from_file(ring: Ring, f: &ModuleFile) -> Result<FPModule> {
    FPModule::new(ring, f.gens, matrix_from_file(ring, &f.relations)?)
}

fn edge_key(label_key: String, label: &str) -> String {
    format!("{label_key}|{label}")
}

fn split_edge_key(key: &str) -> Result<(&str, &str)> {
    key.rsplit_once('|')
        .ok_or_else(|| Error::Parse(format!("boundary key {key:?} lacks '|'")))
}

pub fn cube_to_file(x: &Cube) -> CubeFile {
    let idx = x.index();
    CubeFile {
        ring: x.ring(),
        index: idx.labels().to_vec(),
        vertices: idx
            .masks()
            .map(|t| (idx.key(t), module_to_file(x.vertex(t))))
            .collect(),
        boundaries: x
            .edge_keys()
            .into_iter()
            .map(|(t, i)| {
                (
                    edge_key(idx.key(t), idx.label(i)),
                    matrix_to_file(x.boundary(t, i).matrix()),
                )
            })
            .collect(),
    }
}

pub fn cube_from_file(f: &CubeFile) -> Result<Cube> {
    let index = CubeIndex::new(f.index.iter().cloned())?;
    let mut vertices = vec![None; 1 << index.len()];
    for (k, m) in &f.vertices {
        let t = index.parse_key(k)?;
        vertices[t as usize] = Some(module_from_file(f.ring, m)?);
    }
    let vertices: Vec<FPModule> = vertices
        .into_iter()
        .enumerate()
        .map(|(t, v)| {
            v.ok_or_else(|| Error::InvalidCube(format!("missing vertex {:?}", index.key(t as u32))))
        })
        .collect::<Result<_>>()?;
    let mut boundaries = BTreeMap::new();
    for (k, m) in &f.boundaries {
        let (tk, label) = split_edge_key(k)?;
        let t = index.parse_key(tk)?;
        let i = index.position(label)?;
        if t & (1 << i) == 0 {
            return Err(Error::InvalidCube(format!(
                "boundary {k:?}: label outside the subset"
            )));
        }
        let d = ModuleMorphism::new(
            vertices[t as usize].clone(),
            vertices[(t & !(1 << i)) as usize].clone(),
            matrix_from_file(f.ring, m)?,
        )?;
        boundaries.insert((t, i), d);
    }
    Cube::new(index, Variance::Cube, vertices, boundaries)
}

pub fn double_to_file(x: &DoubleCube) -> DoubleFile {
    let idx = x.index();
    DoubleFile {
        ring: x.ring(),
        index: idx.labels().to_vec(),
        vertices: x
            .points()
            .map(|p| (p.key(idx), module_to_file(x.vertex(p))))
            .collect(),
        boundaries: x
            .edge_keys()
            .into_iter()
            .map(|(p, i)| {
                (
                    edge_key(p.key(idx), idx.label(i)),
                    matrix_to_file(x.boundary(p, i).matrix()),
                )
            })
            .collect(),
    }
}

pub fn double_from_file(f: &DoubleFile) -> Result<DoubleCube> {
    let index = CubeIndex::new(f.index.iter().cloned())?;
    let mut vertices = BTreeMap::new();
    for (k, m) in &f.vertices {
        vertices.insert(
            DoubleIndex::parse_key(&index, k)?,
            module_from_file(f.ring, m)?,
        );
    }
    let mut boundaries = BTreeMap::new();
    for (k, m) in &f.boundaries {
        let (pk, label) = split_edge_key(k)?;
        let p = DoubleIndex::parse_key(&index, pk)?;
        let i = index.position(label)?;
        let q = p
            .lower(i)
            .ok_or_else(|| Error::InvalidCube(format!("boundary {k:?} lowers a zero entry")))?;
        let (src, tgt) = match (vertices.get(&p), vertices.get(&q)) {
            (Some(s), Some(t)) => (s.clone(), t.clone()),
            _ => {
                return Err(Error::InvalidCube(format!(
                    "boundary {k:?} between missing vertices"
                )))
            }
        };
        boundaries.insert(
            (p, i),
            ModuleMorphism::new(src, tgt, matrix_from_file(f.ring, m)?)?,
        );
    }
    DoubleCube::new(index, vertices, boundaries)
}

pub fn complex_to_file(c: &ChainComplex) -> ComplexFile {
    ComplexFile {
        ring: c.ring(),
        lo: c.lo(),
        hi: c.hi(),
        modules: c.modules().iter().map(module_to_file).collect(),
        boundaries: c
            .boundaries()
            .iter()
            .map(|d| matrix_to_file(d.matrix()))
            .collect(),
    }
}

pub fn complex_from_file(f: &ComplexFile) -> Result<ChainComplex> {
    let expected = if f.modules.is_empty() {
        0
    } else {
        f.hi - f.lo + 1
    };
    if f.hi < f.lo - 1 || expected != f.modules.len() as i64 {
        return Err(Error::Dimension(format!(
            "degrees {}..={} do not match {} modules",
            f.lo,
            f.hi,
            f.modules.len()
        )));
    }
    let modules: Vec<FPModule> = f
        .modules
        .iter()
        .map(|m| module_from_file(f.ring, m))
        .collect::<Result<_>>()?;
    if f.boundaries.len() + 1 != modules.len().max(1) {
        return Err(Error::Dimension(format!(
            "{} modules need {} boundaries",
            modules.len(),
            modules.len().saturating_sub(1)
        )));
    }
    let boundaries = f
        .boundaries
        .iter()
        .enumerate()
        .map(|(i, m)| {
            ModuleMorphism::new(
                modules[i + 1].clone(),
                modules[i].clone(),
                matrix_from_file(f.ring, m)?,
            )
        })
        .collect::<Result<_>>()?;
    ChainComplex::new(f.ring, f.lo, modules, boundaries)
}

pub fn adjugate_to_file(a: &CubeAdjugate) -> AdjugateFile {
    let idx = a.index();
    AdjugateFile {
        scalars: (0..idx.len())
            .map(|i| (idx.label(i).to_string(), a.scalar(i).to_string()))
            .collect(),
        stars: a
            .star_keys()
            .into_iter()
            .map(|(t, i)| {
                (
                    edge_key(idx.key(t), idx.label(i)),
                    matrix_to_file(a.star(t, i).matrix()),
                )
            })
            .collect(),
    }
}

/// Reads an adjugate of `x`; stars run `x_{T∖t} → x_T`.
pub fn adjugate_from_file(x: &Cube, f: &AdjugateFile) -> Result<CubeAdjugate> {
    let index = x.index().clone();
    let ring = x.ring();
    let scalars = index
        .labels()
        .iter()
        .map(|l| {
            let s = f
                .scalars
                .get(l)
                .ok_or_else(|| Error::Parse(format!("missing scalar for {l}")))?;
            parse_entry(ring, s)
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(extra) = f.scalars.keys().find(|k| index.position(k).is_err()) {
        return Err(Error::Parse(format!("scalar for unknown label {extra}")));
    }
    let mut stars = BTreeMap::new();
    for (k, m) in &f.stars {
        let (tk, label) = split_edge_key(k)?;
        let t = index.parse_key(tk)?;
        let i = index.position(label)?;
        if t & (1 << i) == 0 {
            return Err(Error::InvalidCube(format!(
                "star {k:?}: label outside the subset"
            )));
        }
        let s = ModuleMorphism::new(
            x.vertex(t & !(1 << i)).clone(),
            x.vertex(t).clone(),
            matrix_from_file(ring, m)?,
        )?;
        stars.insert((t, i), s);
    }
    CubeAdjugate::new(index, scalars, stars)
}

pub fn lattice_from_file(f: &LatticeFile) -> Result<(FiniteLattice, Vec<(String, usize)>)> {
    let l = FiniteLattice::from_leq(f.elements.clone(), f.leq.clone())?;
    let family = match &f.family {
        Some(fam) => fam
            .iter()
            .map(|(k, v)| Ok((k.clone(), l.index_of(v)?)))
            .collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
    };
    Ok((l, family))
}

pub fn lattice_to_file(l: &FiniteLattice, family: &[(String, usize)]) -> LatticeFile {
    LatticeFile {
        elements: l.names().to_vec(),
        leq: l.leq_table(),
        family: (!family.is_empty()).then(|| {
            family
                .iter()
                .map(|(k, i)| (k.clone(), l.names()[*i].clone()))
                .collect()
        }),
    }
}

/// A family read from a file: labels, the ambient module and one morphism
/// into it per label.
#[derive(Clone, Debug)]
pub struct Family {
    pub index: CubeIndex,
    pub ambient: FPModule,
    pub maps: Vec<ModuleMorphism>,
    /// Present when the family was given by scalars.
    pub scalars: Option<Vec<RingElement>>,
}

pub fn family_from_file(f: &FamilyFile) -> Result<Family> {
    let ambient = module_from_file(f.ring, &f.ambient)?;
    match (&f.scalars, &f.members) {
        (Some(sc), None) => {
            let index = CubeIndex::new(sc.keys().cloned())?;
            let scalars: Vec<RingElement> = index
                .labels()
                .iter()
                .map(|l| parse_entry(f.ring, &sc[l]))
                .collect::<Result<_>>()?;
            let maps = scalars
                .iter()
                .map(|a| ModuleMorphism::scalar(&ambient, a))
                .collect();
            Ok(Family {
                index,
                ambient,
                maps,
                scalars: Some(scalars),
            })
        }
        (None, Some(ms)) => {
            let index = CubeIndex::new(ms.keys().cloned())?;
            let maps = index
                .labels()
                .iter()
                .map(|l| {
                    Ok(Subobject::new(&ambient, &matrix_from_file(f.ring, &ms[l])?)?.inclusion())
                })
                .collect::<Result<_>>()?;
            Ok(Family {
                index,
                ambient,
                maps,
                scalars: None,
            })
        }
        _ => Err(Error::Parse(
            "a family needs exactly one of \"scalars\" and \"members\"".into(),
        )),
    }
}

pub fn family_to_file(fam: &Family) -> FamilyFile {
    let labels = fam.index.labels().iter().cloned();
    let ring = fam.ambient.ring();
    match &fam.scalars {
        Some(sc) => FamilyFile {
            ring,
            ambient: module_to_file(&fam.ambient),
            scalars: Some(
                labels
                    .zip(sc.iter().map(|a| ring.format_element(a)))
                    .collect(),
            ),
            members: None,
        },
        None => FamilyFile {
            ring,
            ambient: module_to_file(&fam.ambient),
            scalars: None,
            members: Some(
                labels
                    .zip(fam.maps.iter().map(|m| matrix_to_file(m.matrix())))
                    .collect(),
            ),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: Ring = Ring::Integers;

    fn typ23() -> Cube {
        let fs = [Z.from_i64(2), Z.from_i64(3)];
        Cube::typical(
            CubeIndex::new(["a", "b"]).unwrap(),
            &fs,
            &FPModule::free(Z, 1),
        )
        .unwrap()
    }

    #[test]
    fn cube_file_shape() {
        let f = InstanceFile::Cube(cube_to_file(&typ23()));
        let v: serde_json::Value = serde_json::from_str(&f.to_json()).unwrap();
        assert_eq!(v["kind"], "cube");
        assert_eq!(v["ring"], "Z");
        let keys: Vec<&String> = v["boundaries"].as_object().unwrap().keys().collect();
        assert_eq!(keys, ["a,b|a", "a,b|b", "a|a", "b|b"]);
        assert_eq!(v["boundaries"]["a,b|b"]["entries"][0], "3");
    }

    #[test]
    fn cube_round_trip() {
        let x = typ23();
        let text = InstanceFile::Cube(cube_to_file(&x)).to_json();
        let InstanceFile::Cube(f) = InstanceFile::parse(&text).unwrap() else {
            panic!()
        };
        assert_eq!(cube_from_file(&f).unwrap(), x);
    }

    #[test]
    fn unknown_keys_rejected() {
        let text = InstanceFile::Cube(cube_to_file(&typ23())).to_json();
        let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
        v["extra"] = serde_json::json!(1);
        assert!(InstanceFile::parse(&v.to_string()).is_err());
        let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
        v["vertices"][""]["colour"] = serde_json::json!("red");
        assert!(InstanceFile::parse(&v.to_string()).is_err());
        assert!(InstanceFile::parse(r#"{"kind":"sphere"}"#).is_err());
    }

    #[test]
    fn complex_round_trip() {
        let k = ChainComplex::koszul(&FPModule::free(Z, 1), &[Z.from_i64(2), Z.from_i64(2)]);
        let f = complex_to_file(&k);
        assert_eq!((f.lo, f.hi), (0, 2));
        let back = complex_from_file(&f).unwrap();
        assert_eq!(complex_to_file(&back), f);
    }

    #[test]
    fn ring_override_reduces_entries() {
        let mut f = InstanceFile::Cube(cube_to_file(&typ23()));
        f.override_ring(Ring::integers_mod(4).unwrap());
        let InstanceFile::Cube(c) = f else { panic!() };
        let x = cube_from_file(&c).unwrap();
        assert_eq!(x.ring(), Ring::integers_mod(4).unwrap());
        assert_eq!(
            x.boundary(0b11, 1).matrix().get(0, 0),
            &x.ring().from_i64(3)
        );
    }

    #[test]
    fn lattice_and_family_round_trip() {
        let n5 = crate::lattices::pentagon();
        let f = lattice_to_file(&n5, &[("s".into(), 1)]);
        let (l, fam) = lattice_from_file(&f).unwrap();
        assert_eq!(l, n5);
        assert_eq!(fam, vec![("s".to_string(), 1)]);

        let ff = FamilyFile {
            ring: Z,
            ambient: module_to_file(&FPModule::free(Z, 1)),
            scalars: Some([("a".into(), "4".into()), ("b".into(), "6".into())].into()),
            members: None,
        };
        let fam = family_from_file(&ff).unwrap();
        assert_eq!(family_to_file(&fam), ff);
        let both = FamilyFile {
            members: Some(BTreeMap::new()),
            ..ff
        };
        assert!(family_from_file(&both).is_err());
    }
}
