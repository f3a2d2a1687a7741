//! Seeded instance generators for tests, benches and the CLI self-test.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adjugates::{
    adjugate_member, cofactor_adjugate, dual_adjugate, regularity, CubeAdjugate,
};
use crate::complexes::ChainComplex;
use crate::cubes::{fib_of_family, Cube, CubeIndex, CubeMorphism, Mask};
use crate::doublecubes::DoubleCube;
use crate::error::Result;
use crate::fpmod::{FPModule, ModuleMorphism, Subobject};
use crate::lattices::{chain, diamond, product, subgroup_lattice, FiniteLattice};
use crate::linalg::{determinant, Matrix};
use crate::rings::{Ring, RingElement};

pub type GenRng = ChaCha8Rng;

pub fn rng(seed: u64) -> GenRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A per-suite seed derived from a master seed and a suite name (FNV-1a).
pub fn derive_seed(master: u64, name: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325 ^ master;
    for b in name.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

const Z: Ring = Ring::Integers;

pub const PRIMES: [i64; 10] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29];

pub fn ints(ring: Ring, v: &[i64]) -> Vec<RingElement> {
    v.iter().map(|&a| ring.from_i64(a)).collect()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// A random integer in `[-bound, bound]` other than `0` and `±1`.
pub fn non_unit(rng: &mut GenRng, bound: i64) -> i64 {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v.abs() > 1 {
            return v;
        }
    }
}

/// Pairwise coprime non-units of absolute value at most `bound`.
pub fn coprime_family(rng: &mut GenRng, len: usize, bound: i64) -> Vec<i64> {
    loop {
        let mut out: Vec<i64> = Vec::with_capacity(len);
        for _ in 0..len {
            let mut tries = 0;
            loop {
                tries += 1;
                let v = non_unit(rng, bound);
                if out.iter().all(|&w| gcd(v, w) == 1) {
                    out.push(v);
                    break;
                }
                if tries > 200 {
                    break;
                }
            }
        }
        if out.len() == len {
            return out;
        }
    }
}

/// Non-units with some common factor between two members.
pub fn non_coprime_family(rng: &mut GenRng, len: usize, bound: i64) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..len).map(|_| non_unit(rng, bound)).collect();
        if v.iter()
            .enumerate()
            .any(|(i, &a)| v[i + 1..].iter().any(|&b| gcd(a, b) > 1))
        {
            return v;
        }
    }
}

/// Families for the sequence lemma: non-units, half of them coprime.
pub fn lemma_family(rng: &mut GenRng, bound: i64) -> Vec<i64> {
    let len = rng.gen_range(2..=3);
    if rng.gen_bool(0.5) {
        coprime_family(rng, len, bound)
    } else {
        non_coprime_family(rng, len, bound)
    }
}

pub fn random_element(rng: &mut GenRng, ring: Ring, bound: i64) -> RingElement {
    match ring {
        Ring::Rationals if rng.gen_bool(0.3) => {
            let q = rng.gen_range(1..=bound.max(1));
            let p = rng.gen_range(-bound..=bound);
            ring.divide(&ring.from_i64(p), &ring.from_i64(q))
                .expect("nonzero denominator")
        }
        _ => ring.from_i64(rng.gen_range(-bound..=bound)),
    }
}

pub fn random_matrix(rng: &mut GenRng, ring: Ring, rows: usize, cols: usize, bound: i64) -> Matrix {
    let data = (0..rows * cols)
        .map(|_| random_element(rng, ring, bound))
        .collect();
    Matrix::new(ring, rows, cols, data).expect("sized data")
}

/// A random unimodular integer matrix and its inverse.
pub fn unimodular(rng: &mut GenRng, n: usize, steps: usize) -> (Matrix, Matrix) {
    let mut u = Matrix::identity(Z, n);
    let mut v = Matrix::identity(Z, n);
    if n < 2 {
        if rng.gen_bool(0.5) {
            u = u.neg();
            v = v.neg();
        }
        return (u, v);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = rng.gen_range(-2..=2i64);
        let mut e = Matrix::identity(Z, n);
        e.set(i, j, Z.from_i64(c));
        let mut einv = Matrix::identity(Z, n);
        einv.set(i, j, Z.from_i64(-c));
        u = e.mul(&u);
        v = v.mul(&einv);
    }
    (u, v)
}

/// `Typ(f; ℤ^rank)`.
pub fn typical(fs: &[i64], rank: usize) -> Cube {
    Cube::typical(
        CubeIndex::standard(fs.len()),
        &ints(Z, fs),
        &FPModule::free(Z, rank),
    )
    .expect("typical cube")
}

/// Attaches a random automorphism of `ℤ^r` at the `∅`-vertex of a cube whose
/// `∅`-vertex is free.
pub fn twist(rng: &mut GenRng, x: &Cube) -> Result<Cube> {
    let base = x.vertex(0);
    let (u, _) = unimodular(rng, base.gens(), 4);
    x.attach(&ModuleMorphism::new(base.clone(), base.clone(), u)?)
}

/// Multiplies every boundary in direction `k` by `c`.
pub fn scale_direction(x: &Cube, k: usize, c: &RingElement) -> Result<Cube> {
    let mut y = x.clone();
    for (t, i) in x.edge_keys() {
        if i == k {
            y = y.with_boundary(t, i, x.boundary(t, i).scale(c))?;
        }
    }
    Ok(y)
}

/// Random subgroups of `ℤ^r`, one per label, each generated by
/// `1..=r` vectors; `full_rank` forces rank `r`.
pub fn subgroup_family(
    rng: &mut GenRng,
    r: usize,
    k: usize,
    bound: i64,
    full_rank: bool,
) -> Vec<ModuleMorphism> {
    let ambient = FPModule::free(Z, r);
    (0..k)
        .map(|_| loop {
            let cols = if full_rank { r } else { rng.gen_range(1..=r) };
            let g = random_matrix(rng, Z, r, cols, bound);
            if full_rank && determinant(&g).expect("square").is_zero() {
                continue;
            }
            let s = Subobject::new(&ambient, &g).expect("generators in ambient");
            if s.is_zero() {
                continue;
            }
            break s.inclusion();
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CubeFlavor {
    Admissible,
    MonicNonAdmissible,
    NonMonic,
}

/// A cube with at most three labels of the requested flavour. The flavour
/// is a design target: admissible recipes always produce admissible cubes,
/// the other two may occasionally land elsewhere.
pub fn flavored_cube(rng: &mut GenRng, flavor: CubeFlavor) -> Result<Cube> {
    let n = rng.gen_range(1..=3);
    match flavor {
        CubeFlavor::Admissible => match rng.gen_range(0..4) {
            0 => {
                let rank = rng.gen_range(1..=2);
                Ok(typical(&coprime_family(rng, n, 12), rank))
            }
            1 => {
                let rank = rng.gen_range(1..=2);
                let x = typical(&coprime_family(rng, n, 12), rank);
                twist(rng, &x)
            }
            2 => {
                let fs = coprime_family(rng, n, 10);
                let k = rng.gen_range(0..n);
                let mut gs = fs.clone();
                gs[k] = coprime_with(rng, &fs, k);
                let (x, y) = (typical(&fs, 1), typical(&gs, 1));
                let rest = x.index().full() & !(1 << k);
                let alpha = CubeMorphism::identity(&x.restrict(rest, 0)?);
                Cube::compose(&x, &y, x.index().label(k), &alpha)
            }
            _ => {
                // subgroups of ℤ form a distributive lattice
                let maps = subgroup_family(rng, 1, n, 9, true);
                Ok(fib_of_family(&CubeIndex::standard(n), &maps)?.cube)
            }
        },
        CubeFlavor::MonicNonAdmissible => {
            let n = n.max(2);
            match rng.gen_range(0..3) {
                0 => Ok(typical(&non_coprime_family(rng, n, 12), 1)),
                1 => {
                    let x = typical(&non_coprime_family(rng, n, 12), 2);
                    twist(rng, &x)
                }
                _ => {
                    let maps = subgroup_family(rng, 2, 3, 4, false);
                    Ok(fib_of_family(&CubeIndex::standard(3), &maps)?.cube)
                }
            }
        }
        CubeFlavor::NonMonic => match rng.gen_range(0..3) {
            0 => {
                let mut fs: Vec<i64> = (0..n).map(|_| non_unit(rng, 9)).collect();
                let k = rng.gen_range(0..n);
                fs[k] = 0;
                Ok(typical(&fs, 1))
            }
            1 => {
                let m = Z.from_i64(*[4i64, 6, 12, 30].choose(rng).expect("nonempty"));
                let x = FPModule::cyclic(Z, &m);
                let fs = ints(Z, &(0..n).map(|_| non_unit(rng, 9)).collect::<Vec<_>>());
                Cube::typical(CubeIndex::standard(n), &fs, &x)
            }
            _ => {
                let x = typical(&coprime_family(rng, n, 12), 1);
                scale_direction(&x, rng.gen_range(0..n), &Z.zero())
            }
        },
    }
}

fn coprime_with(rng: &mut GenRng, fs: &[i64], k: usize) -> i64 {
    loop {
        let v = non_unit(rng, 10);
        if fs
            .iter()
            .enumerate()
            .all(|(i, &w)| i == k || gcd(v, w) == 1)
        {
            return v;
        }
    }
}

/// `Typ(f; ℤ^rank)` with the scalar adjugate `(h, g)`, `h_t = f_t g_t`
/// pairwise coprime non-units. The adjugate is regular.
pub fn scalar_adjugate_pair(
    rng: &mut GenRng,
    n: usize,
    rank: usize,
) -> Result<(Cube, CubeAdjugate)> {
    let h = coprime_family(rng, n, 30);
    let mut f = Vec::with_capacity(n);
    let mut g = Vec::with_capacity(n);
    for &ht in &h {
        let divisors: Vec<i64> = (1..=ht.abs()).filter(|d| ht % d == 0).collect();
        let d = *divisors.choose(rng).expect("nonempty");
        let d = if rng.gen_bool(0.5) { -d } else { d };
        f.push(d);
        g.push(ht / d);
    }
    let x = typical(&f, rank);
    let a = CubeAdjugate::scalar_stars(&x, ints(Z, &h), &ints(Z, &g))?;
    Ok((x, a))
}

/// A cube of free modules of rank `r` with boundaries
/// `U_{T∖t} M_t U_T^{-1}`, where the `M_t` commute and `det M_t` is a power
/// of the `t`-th prime. Cofactor adjugates of these cubes are regular.
pub fn conjugated_free_cube(rng: &mut GenRng, n: usize, r: usize) -> Result<Cube> {
    let index = CubeIndex::standard(n);
    let (w, winv) = unimodular(rng, r, 3);
    let ms: Vec<Matrix> = (0..n)
        .map(|t| {
            let p = PRIMES[t];
            let mut d = Matrix::identity(Z, r);
            let mut any = false;
            for i in 0..r {
                let e = rng.gen_range(0..=2u32);
                any |= e > 0;
                d.set(i, i, Z.from_i64(p.pow(e)));
            }
            if !any {
                d.set(0, 0, Z.from_i64(p));
            }
            w.mul(&d).mul(&winv)
        })
        .collect();
    let us: Vec<(Matrix, Matrix)> = index.masks().map(|_| unimodular(rng, r, 3)).collect();
    let free = FPModule::free(Z, r);
    Cube::from_fn(
        index,
        crate::cubes::Variance::Cube,
        |_| free.clone(),
        |t: Mask, i| {
            let lower = t & !(1 << i);
            let m = us[lower as usize].0.mul(&ms[i]).mul(&us[t as usize].1);
            ModuleMorphism::new(free.clone(), free.clone(), m)
        },
    )
}

/// A free cube with a regular cofactor adjugate.
pub fn cofactor_pair(rng: &mut GenRng, n: usize, r: usize) -> Result<(Cube, CubeAdjugate)> {
    loop {
        let x = conjugated_free_cube(rng, n, r)?;
        let a = cofactor_adjugate(&x)?;
        if regularity(&x, a.scalars())?.is_none() {
            return Ok((x, a));
        }
    }
}

/// Mixed main-theorem inputs: scalar adjugates of typical cubes and cofactor
/// adjugates of free cubes.
pub fn main_theorem_pair(rng: &mut GenRng) -> Result<(Cube, CubeAdjugate)> {
    let n = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        let rank = rng.gen_range(1..=2);
        scalar_adjugate_pair(rng, n, rank)
    } else {
        let rank = rng.gen_range(1..=3);
        cofactor_pair(rng, n, rank)
    }
}

/// `Pat 𝔓_{𝔄*}` for the dual adjugate of `(x, 𝔄)`.
pub fn dual_patch(x: &Cube, a: &CubeAdjugate) -> Result<DoubleCube> {
    let (y, b) = dual_adjugate(x, a)?;
    let family: Vec<Cube> = x
        .index()
        .masks()
        .map(|t| adjugate_member(&y, &b, t).map(|p| p.0))
        .collect::<Result<_>>()?;
    DoubleCube::patch(x.index(), &family)
}

/// `(f, g)` over ℤ with `h = fg` pairwise coprime and every `f_s` a
/// non-unit.
pub fn app1_pair(rng: &mut GenRng) -> (Vec<i64>, Vec<i64>) {
    let n = rng.gen_range(1..=3);
    let h = coprime_family(rng, n, 30);
    let mut f = Vec::with_capacity(n);
    let mut g = Vec::with_capacity(n);
    for &ht in &h {
        let divisors: Vec<i64> = (2..=ht.abs()).filter(|d| ht % d == 0).collect();
        let d = *divisors
            .choose(rng)
            .expect("non-units have a divisor above 1");
        f.push(d);
        g.push(ht / d);
    }
    (f, g)
}

/// Free complexes over ℤ for the exactness criterion.
pub fn be_complex(rng: &mut GenRng) -> Result<ChainComplex> {
    let free1 = FPModule::free(Z, 1);
    match rng.gen_range(0..5) {
        0 => {
            let n = rng.gen_range(1..=3);
            Ok(ChainComplex::koszul(
                &free1,
                &ints(Z, &coprime_family(rng, n, 20)),
            ))
        }
        1 => {
            let n = rng.gen_range(1..=3);
            let v: Vec<i64> = if n == 1 {
                vec![rng.gen_range(-1..=1)]
            } else if rng.gen_bool(0.8) {
                non_coprime_family(rng, n, 20)
            } else {
                (0..n).map(|_| rng.gen_range(-20..=20)).collect()
            };
            Ok(ChainComplex::koszul(&free1, &ints(Z, &v)))
        }
        2 => {
            let n = rng.gen_range(1..=3);
            let rank = rng.gen_range(1..=2);
            let x = match rng.gen_range(0..3) {
                0 => typical(&coprime_family(rng, n, 12), rank),
                1 => conjugated_free_cube(rng, n, rank)?,
                _ => typical(&non_coprime_family(rng, n.max(2), 12), 1),
            };
            x.total_complex()
        }
        3 => {
            let a = be_complex_simple(rng);
            let b = be_complex_simple(rng);
            a.direct_sum(&b)
        }
        _ => {
            let c = be_complex_simple(rng);
            Ok(mutate_complex(rng, &c))
        }
    }
}

fn be_complex_simple(rng: &mut GenRng) -> ChainComplex {
    let n = rng.gen_range(1..=3);
    let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-12..=12)).collect();
    ChainComplex::koszul(&FPModule::free(Z, 1), &ints(Z, &v))
}

/// Changes one entry of one boundary, keeping the result a complex.
pub fn mutate_complex(rng: &mut GenRng, c: &ChainComplex) -> ChainComplex {
    if c.boundaries().is_empty() {
        return c.clone();
    }
    for _ in 0..50 {
        let k = rng.gen_range(0..c.boundaries().len());
        let d = &c.boundaries()[k];
        let m = d.matrix();
        if m.rows() == 0 || m.cols() == 0 {
            continue;
        }
        let (i, j) = (rng.gen_range(0..m.rows()), rng.gen_range(0..m.cols()));
        let mut m2 = m.clone();
        m2.set(i, j, Z.from_i64(rng.gen_range(-6..=6)));
        let mut ds = c.boundaries().to_vec();
        ds[k] = ModuleMorphism::new(d.source().clone(), d.target().clone(), m2).expect("free ends");
        if let Ok(out) = ChainComplex::new(c.ring(), c.lo(), c.modules().to_vec(), ds) {
            return out;
        }
    }
    c.clone()
}

/// Finite modular lattices of at most 24 elements.
pub fn modular_lattice(rng: &mut GenRng) -> Result<FiniteLattice> {
    Ok(match rng.gen_range(0..7) {
        0 => chain(rng.gen_range(1..=24)),
        1 => {
            let a = rng.gen_range(2..=6);
            let b = rng.gen_range(2..=24 / a);
            product(&chain(a), &chain(b))
        }
        2 => diamond(rng.gen_range(3..=5)),
        3 => product(&diamond(3), &chain(rng.gen_range(2..=4))),
        4 => product(&diamond(4), &chain(2)),
        5 => {
            let orders: &[&[u64]] = &[
                &[2, 2],
                &[3, 3],
                &[4, 2],
                &[2, 2, 2],
                &[9, 3],
                &[8, 2],
                &[4, 4],
            ];
            subgroup_lattice(orders.choose(rng).expect("nonempty"))?.lattice
        }
        _ => product(&product(&chain(2), &chain(2)), &chain(rng.gen_range(2..=6))),
    })
}

/// Random elements of a finite lattice.
pub fn lattice_family(rng: &mut GenRng, l: &FiniteLattice, k: usize) -> Vec<usize> {
    (0..k).map(|_| rng.gen_range(0..l.len())).collect()
}

/// Random square or rectangular matrices up to `max × max`.
pub fn snf_matrix(rng: &mut GenRng, ring: Ring, max: usize) -> Matrix {
    let r = rng.gen_range(0..=max);
    let c = rng.gen_range(0..=max);
    let bound = if rng.gen_bool(0.2) { 1000 } else { 9 };
    random_matrix(rng, ring, r, c, bound)
}

pub fn random_ring(rng: &mut GenRng) -> Ring {
    match rng.gen_range(0..4) {
        0 => Ring::Integers,
        1 => Ring::Rationals,
        2 => {
            Ring::prime_field(*[2u64, 3, 5, 7, 101].choose(rng).expect("nonempty")).expect("prime")
        }
        _ => Ring::integers_mod(*[4u64, 6, 12, 30, 36].choose(rng).expect("nonempty"))
            .expect("modulus"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adjugates::verify_adjugate;

    #[test]
    fn seeds_are_deterministic() {
        let a: Vec<i64> = (0..5).map(|_| non_unit(&mut rng(7), 30)).collect();
        let b: Vec<i64> = (0..5).map(|_| non_unit(&mut rng(7), 30)).collect();
        assert_eq!(a, b);
        assert_ne!(derive_seed(0, "lemma"), derive_seed(0, "lattice"));
    }

    #[test]
    fn coprime_families_are_coprime() {
        let mut r = rng(1);
        for _ in 0..50 {
            let v = coprime_family(&mut r, 3, 30);
            assert!(v.iter().all(|a| a.abs() > 1 && a.abs() <= 30));
            assert!(gcd(v[0], v[1]) == 1 && gcd(v[0], v[2]) == 1 && gcd(v[1], v[2]) == 1);
        }
    }

    #[test]
    fn unimodular_inverse() {
        let mut r = rng(2);
        for n in 1..=4 {
            let (u, v) = unimodular(&mut r, n, 6);
            assert_eq!(u.mul(&v), Matrix::identity(Z, n));
        }
    }

    #[test]
    fn flavours_are_valid_cubes() {
        let mut r = rng(3);
        for flavor in [
            CubeFlavor::Admissible,
            CubeFlavor::MonicNonAdmissible,
            CubeFlavor::NonMonic,
        ] {
            for _ in 0..8 {
                let x = flavored_cube(&mut r, flavor).unwrap();
                assert!(x.is_valid());
                if flavor == CubeFlavor::Admissible {
                    assert!(x.admissible().unwrap());
                }
                if flavor == CubeFlavor::NonMonic {
                    assert!(!x.is_monic());
                }
            }
        }
    }

    #[test]
    fn generated_adjugates_are_regular() {
        let mut r = rng(4);
        for _ in 0..6 {
            let (x, a) = main_theorem_pair(&mut r).unwrap();
            assert!(verify_adjugate(&x, &a, true).unwrap().valid);
        }
    }

    #[test]
    fn lattices_are_modular_and_small() {
        let mut r = rng(5);
        for _ in 0..30 {
            let l = modular_lattice(&mut r).unwrap();
            assert!(l.len() <= 24);
            assert!(l.is_modular().modular);
        }
    }
}
