use itertools::Itertools;

use crate::error::Result;
use crate::fpmod::{FPModule, Subobject};
use crate::linalg::Matrix;
use crate::rings::Ring;

use super::{FiniteLattice, LatticeOps, SubobjectLattice};

fn from_relation(names: Vec<String>, le: impl Fn(usize, usize) -> bool) -> FiniteLattice {
    let n = names.len();
    let leq = (0..n).map(|i| (0..n).map(|j| le(i, j)).collect()).collect();
    FiniteLattice::from_leq(names, leq).expect("catalog lattices are lattices")
}

/// The chain `0 < 1 < … < n−1`.
pub fn chain(n: usize) -> FiniteLattice {
    from_relation((0..n).map(|i| i.to_string()).collect(), |i, j| i <= j)
}

/// `M_k`: a bottom, `k` pairwise incomparable atoms and a top. `M_3` is the
/// diamond.
pub fn diamond(k: usize) -> FiniteLattice {
    let mut names = vec!["0".to_string()];
    names.extend((1..=k).map(|i| format!("a{i}")));
    names.push("1".into());
    let top = k + 1;
    from_relation(names, |i, j| i == j || i == 0 || j == top)
}

/// The pentagon `N_5`: `0 < a < c < 1` and `0 < b < 1`.
pub fn pentagon() -> FiniteLattice {
    let names: Vec<String> = ["0", "a", "b", "c", "1"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let order = [
        (0, 1),
        (0, 2),
        (0, 3),
        (0, 4),
        (1, 3),
        (1, 4),
        (2, 4),
        (3, 4),
    ];
    from_relation(names, |i, j| i == j || order.contains(&(i, j)))
}

/// Product lattice with the componentwise order.
pub fn product(a: &FiniteLattice, b: &FiniteLattice) -> FiniteLattice {
    let pairs: Vec<(usize, usize)> = (0..a.len()).cartesian_product(0..b.len()).collect();
    let names = pairs
        .iter()
        .map(|&(i, j)| format!("({},{})", a.names()[i], b.names()[j]))
        .collect();
    from_relation(names, |p, q| {
        a.leq(&pairs[p].0, &pairs[q].0) && b.leq(&pairs[p].1, &pairs[q].1)
    })
}

/// The full subgroup lattice of `ℤ/n_1 ⊕ … ⊕ ℤ/n_k`.
pub fn subgroup_lattice(orders: &[u64]) -> Result<SubobjectLattice> {
    let z = Ring::Integers;
    let factors: Vec<_> = orders.iter().map(|&n| z.from_i64(n as i64)).collect();
    let ambient = FPModule::from_factors(z, &factors)?;
    let mut cyclic: Vec<Subobject> = Vec::new();
    for g in orders
        .iter()
        .map(|&n| 0..n as i64)
        .multi_cartesian_product()
    {
        let s = Subobject::new(&ambient, &Matrix::from_i64(z, orders.len(), 1, &g))?;
        if !cyclic.contains(&s) {
            cyclic.push(s);
        }
    }
    SubobjectLattice::generated(&ambient, &cyclic)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_lattices() {
        let n5 = pentagon();
        let r = n5.is_modular();
        assert!(!r.modular && !r.cancellation);
        assert_eq!(r.witness, Some(("a".into(), "b".into(), "c".into())));
        let m3 = diamond(3);
        assert!(m3.is_modular().modular);
        assert!(!m3.is_distributive());
        assert!(product(&chain(2), &chain(3)).is_distributive());
    }

    #[test]
    fn klein_four_is_diamond() {
        let l = subgroup_lattice(&[2, 2]).unwrap();
        assert_eq!(l.lattice.len(), 5);
        assert!(l.lattice.is_modular().modular);
        assert!(!l.lattice.is_distributive());
    }
}
