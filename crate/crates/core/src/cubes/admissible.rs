use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fpmod::{pullback, ModuleShape};
use crate::par::{self, Execution};

use super::{Cube, Mask};

/// Which characterisation of admissibility to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AdmissibilityMethod {
    /// Monic, and every `H_0^k(x)` admissible.
    Recursive,
    /// Frontside faces admissible and `Tot x` 0-spherical.
    Faces0Spherical,
    /// Every `x|_T^∅` admissible, settled per `T`: monic edges for
    /// `|T| = 1`, a Cartesian square for `|T| = 2`, a 0-spherical total
    /// complex for `|T| ≥ 3`.
    AllRestrictions,
}

impl AdmissibilityMethod {
    pub const ALL: [AdmissibilityMethod; 3] = [
        AdmissibilityMethod::Recursive,
        AdmissibilityMethod::Faces0Spherical,
        AdmissibilityMethod::AllRestrictions,
    ];
}

impl fmt::Display for AdmissibilityMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AdmissibilityMethod::Recursive => "recursive",
            AdmissibilityMethod::Faces0Spherical => "faces0spherical",
            AdmissibilityMethod::AllRestrictions => "allrestrictions",
        })
    }
}

impl FromStr for AdmissibilityMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "recursive" => Ok(AdmissibilityMethod::Recursive),
            "faces0spherical" | "faces" => Ok(AdmissibilityMethod::Faces0Spherical),
            "allrestrictions" | "restrictions" => Ok(AdmissibilityMethod::AllRestrictions),
            _ => Err(Error::Parse(format!("unknown admissibility method {s:?}"))),
        }
    }
}

/// Why a cube failed to be admissible. Sets are keys in the index of the
/// cube that failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AdmissibilityWitness {
    NotMonic {
        set: String,
        label: String,
    },
    NotCartesian {
        set: String,
    },
    NotSpherical {
        set: String,
        degree: i64,
        homology: ModuleShape,
    },
    Direction {
        label: String,
        inner: Box<AdmissibilityWitness>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Admissibility {
    pub admissible: bool,
    pub method: AdmissibilityMethod,
    pub witness: Option<AdmissibilityWitness>,
}

impl Cube {
    pub fn is_admissible(&self, method: AdmissibilityMethod) -> Result<Admissibility> {
        self.is_admissible_with(method, par::default_execution())
    }

    pub fn is_admissible_with(
        &self,
        method: AdmissibilityMethod,
        exec: Execution,
    ) -> Result<Admissibility> {
        self.require_cube("admissibility")?;
        self.ensure_valid()?;
        let witness = match method {
            AdmissibilityMethod::Recursive => recursive(self, exec)?,
            AdmissibilityMethod::Faces0Spherical => per_subset(self, exec, false)?,
            AdmissibilityMethod::AllRestrictions => per_subset(self, exec, true)?,
        };
        Ok(Admissibility {
            admissible: witness.is_none(),
            method,
            witness,
        })
    }

    /// Shorthand for the recursive definition.
    pub fn admissible(&self) -> Result<bool> {
        Ok(self
            .is_admissible(AdmissibilityMethod::Recursive)?
            .admissible)
    }

    /// Whether `Tot x` is `n`-spherical.
    pub fn is_spherical(&self, n: i64) -> Result<bool> {
        Ok(self.total_complex()?.is_spherical(n).spherical)
    }
}

fn recursive(x: &Cube, exec: Execution) -> Result<Option<AdmissibilityWitness>> {
    if let Some(e) = x.first_non_mono(exec) {
        return Ok(Some(AdmissibilityWitness::NotMonic {
            set: e.set,
            label: e.label,
        }));
    }
    if x.dim() <= 1 {
        return Ok(None);
    }
    let ks: Vec<usize> = (0..x.dim()).collect();
    let found = par::find_first(exec, &ks, |&k| {
        let inner = x.h0_direction(k).and_then(|h| recursive(&h.cube, exec));
        match inner {
            Ok(None) => None,
            Ok(Some(w)) => Some(Ok(AdmissibilityWitness::Direction {
                label: x.index().label(k).to_string(),
                inner: Box::new(w),
            })),
            Err(e) => Some(Err(e)),
        }
    });
    found.transpose()
}

/// Evaluates the per-subset condition on `x|_T^∅` for every nonempty `T`,
/// reporting the first failure in (size, lexicographic) order. With
/// `cartesian_squares` the 2-element subsets are decided by the Cartesian
/// square criterion instead of sphericity.
fn per_subset(
    x: &Cube,
    exec: Execution,
    cartesian_squares: bool,
) -> Result<Option<AdmissibilityWitness>> {
    let idx = x.index();
    let subsets: Vec<Mask> = (1..=idx.len())
        .flat_map(|k| idx.subsets_of_size(k))
        .collect();
    let found = par::find_first(exec, &subsets, |&t| {
        subset_condition(x, t, cartesian_squares).transpose()
    });
    found.transpose()
}

fn subset_condition(
    x: &Cube,
    t: Mask,
    cartesian_squares: bool,
) -> Result<Option<AdmissibilityWitness>> {
    let idx = x.index();
    let members = idx.members(t);
    let set = idx.key(t);
    match members.len() {
        1 => {
            let i = members[0];
            Ok(
                (!x.boundary(t, i).is_mono()).then(|| AdmissibilityWitness::NotMonic {
                    set,
                    label: idx.label(i).to_string(),
                }),
            )
        }
        2 if cartesian_squares => {
            let (a, b) = (members[0], members[1]);
            let p = pullback(x.boundary(1 << a, a), x.boundary(1 << b, b))?;
            let ok = p.is_cartesian_corner(x.boundary(t, b), x.boundary(t, a))?;
            Ok((!ok).then_some(AdmissibilityWitness::NotCartesian { set }))
        }
        _ => {
            let s = x.restrict(t, 0)?.total_complex()?.is_spherical(0);
            Ok((!s.spherical).then(|| AdmissibilityWitness::NotSpherical {
                set,
                degree: s.failing_degree.unwrap_or_default(),
                homology: s
                    .failing_homology
                    .expect("a failing degree carries its homology"),
            }))
        }
    }
}
