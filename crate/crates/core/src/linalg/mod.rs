//! Exact matrices over the supported rings.
//!
//! ℤ/m and 𝔽_p are handled by lifting to canonical integer representatives
//! and running the integer engine (appending `m·I` where a membership
//! question has to be answered modulo `m`). ℚ clears row denominators first.

pub(crate) mod integer;

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rings::{Ring, RingElement};
use integer::IMat;

/// Row-major dense matrix over a [`Ring`]. Zero dimensions are legal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<RingElement>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{}>{}x{}[", self.ring, self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(
                f,
                "{}",
                (0..self.cols).map(|j| self.get(i, j).to_string()).join(" ")
            )?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn new(ring: Ring, rows: usize, cols: usize, data: Vec<RingElement>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|e| !ring.contains(e)) {
            return Err(Error::RingMismatch(format!("entry {bad:?} not in {ring}")));
        }
        Ok(Matrix {
            ring,
            rows,
            cols,
            data,
        })
    }

    /// Integer entries mapped through ℤ → R.
    pub fn from_i64(ring: Ring, rows: usize, cols: usize, v: &[i64]) -> Matrix {
        assert_eq!(v.len(), rows * cols, "entry count");
        Matrix {
            ring,
            rows,
            cols,
            data: v.iter().map(|&x| ring.from_i64(x)).collect(),
        }
    }

    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Matrix {
        Matrix {
            ring,
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: Ring, n: usize) -> Matrix {
        Matrix::scalar(ring, n, &ring.one())
    }

    pub fn scalar(ring: Ring, n: usize, a: &RingElement) -> Matrix {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = a.clone();
        }
        m
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn entries(&self) -> &[RingElement] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &RingElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RingElement) {
        assert!(self.ring.contains(&v));
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RingElement::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimensions");
        assert_eq!(self.ring, other.ring, "matrix product rings");
        let r = self.ring;
        let mut out = Matrix::zeros(r, self.rows, other.cols);
        match r {
            Ring::Rationals => {
                for i in 0..self.rows {
                    for j in 0..other.cols {
                        let mut acc = r.zero();
                        for k in 0..self.cols {
                            let (a, b) = (self.get(i, k), other.get(k, j));
                            if !a.is_zero() && !b.is_zero() {
                                acc = r.add(&acc, &r.mul(a, b));
                            }
                        }
                        out.data[i * other.cols + j] = acc;
                    }
                }
            }
            _ => {
                let prod = self.to_imat().mul(&other.to_imat());
                out = Matrix::from_imat(r, &prod);
            }
        }
        out
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!(
                "{} vs {}",
                self.ring, other.ring
            )));
        }
        Ok(self.mul(other))
    }

    fn zip(&self, other: &Matrix, f: impl Fn(&RingElement, &RingElement) -> RingElement) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix shapes"
        );
        assert_eq!(self.ring, other.ring);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f(a, b))
            .collect();
        Matrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        let r = self.ring;
        self.zip(other, |a, b| r.add(a, b))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        let r = self.ring;
        self.zip(other, |a, b| r.sub(a, b))
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&self.ring.from_i64(-1))
    }

    pub fn scale(&self, a: &RingElement) -> Matrix {
        let r = self.ring;
        Matrix {
            ring: r,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| r.mul(a, x)).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// `[self | other]`.
    pub fn hcat(&self, other: &Matrix) -> Matrix {
        Matrix::hcat_all(self.ring, self.rows, &[self, other])
    }

    pub fn hcat_all(ring: Ring, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Matrix::zeros(ring, rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.rows, rows, "hcat row counts");
            for i in 0..rows {
                for j in 0..p.cols {
                    out.data[i * cols + off + j] = p.get(i, j).clone();
                }
            }
            off += p.cols;
        }
        out
    }

    /// `[self; other]`.
    pub fn vcat(&self, other: &Matrix) -> Matrix {
        Matrix::vcat_all(self.ring, self.cols, &[self, other])
    }

    pub fn vcat_all(ring: Ring, cols: usize, parts: &[&Matrix]) -> Matrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "vcat column counts");
            data.extend(p.data.iter().cloned());
            rows += p.rows;
        }
        Matrix {
            ring,
            rows,
            cols,
            data,
        }
    }

    pub fn block_diag(ring: Ring, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Matrix::zeros(ring, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            out.paste(r0, c0, p);
            r0 += p.rows;
            c0 += p.cols;
        }
        out
    }

    /// Overwrite the block starting at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = block.get(i, j).clone();
            }
        }
    }

    pub fn block(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(self.ring, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.data[i * cols + j] = self.get(r0 + i, c0 + j).clone();
            }
        }
        out
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.ring, self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                out.data[i * idx.len() + k] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.ring, idx.len(), self.cols);
        for (k, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                out.data[k * self.cols + j] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Drops zero columns and repeated columns, keeping first occurrences.
    pub fn prune_columns(&self) -> Matrix {
        let mut keep = Vec::new();
        let mut seen: Vec<Vec<&RingElement>> = Vec::new();
        for j in 0..self.cols {
            let col: Vec<&RingElement> = (0..self.rows).map(|i| self.get(i, j)).collect();
            if col.iter().all(|e| e.is_zero()) || seen.contains(&col) {
                continue;
            }
            seen.push(col);
            keep.push(j);
        }
        self.select_columns(&keep)
    }

    pub(crate) fn to_imat(&self) -> IMat {
        IMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| self.ring.lift(e)).collect(),
        }
    }

    pub(crate) fn from_imat(ring: Ring, m: &IMat) -> Matrix {
        Matrix {
            ring,
            rows: m.rows,
            cols: m.cols,
            data: m.data.iter().map(|x| ring.from_bigint(x.clone())).collect(),
        }
    }

    fn to_rational(&self) -> Vec<BigRational> {
        self.data
            .iter()
            .map(|e| match e {
                RingElement::Rat(q) => q.clone(),
                RingElement::Int(z) => BigRational::from_integer(z.clone()),
            })
            .collect()
    }

    /// Rows scaled by the lcm of their denominators (ℚ only). Returns the
    /// integer matrix and the scale factors.
    fn clear_row_denominators(&self, extra: Option<&Matrix>) -> (IMat, Option<IMat>, Vec<BigInt>) {
        let a = self.to_rational();
        let b = extra.map(Matrix::to_rational);
        let bc = extra.map_or(0, |m| m.cols);
        let mut scales = Vec::with_capacity(self.rows);
        let mut ai = IMat::zeros(self.rows, self.cols);
        let mut bi = IMat::zeros(self.rows, bc);
        for i in 0..self.rows {
            let mut l = BigInt::one();
            for j in 0..self.cols {
                l = l.lcm(a[i * self.cols + j].denom());
            }
            if let Some(b) = &b {
                for j in 0..bc {
                    l = l.lcm(b[i * bc + j].denom());
                }
            }
            for j in 0..self.cols {
                let q = &a[i * self.cols + j] * &l;
                ai.set(i, j, q.to_integer());
            }
            if let Some(b) = &b {
                for j in 0..bc {
                    let q = &b[i * bc + j] * &l;
                    bi.set(i, j, q.to_integer());
                }
            }
            scales.push(l);
        }
        (ai, extra.map(|_| bi), scales)
    }

    /// `[I_rows · m]` appended on the right, as an integer matrix.
    fn lift_with_modulus(&self, m: u64) -> IMat {
        let lifted = self.to_imat();
        let mut mi = IMat::identity(self.rows);
        let mb = BigInt::from(m);
        for v in mi.data.iter_mut() {
            *v *= &mb;
        }
        lifted.hcat(&mi)
    }
}

/// `u · a · v = d` with `u`, `v` invertible (`u_inv`, `v_inv` given).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub u: Matrix,
    pub u_inv: Matrix,
    pub d: Matrix,
    pub v: Matrix,
    pub v_inv: Matrix,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<RingElement> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }
}

/// Diagonal entries normalized to canonical associates: `≥ 0` over ℤ,
/// `gcd(d, m)` over ℤ/m, `0/1` over fields.
pub fn invariant_factors(a: &Matrix) -> Vec<RingElement> {
    let r = a.ring;
    match r {
        Ring::Rationals => {
            let (ai, _, _) = a.clear_row_denominators(None);
            let s = integer::snf(&ai, false);
            (0..s.diag.len())
                .map(|i| if i < s.rank { r.one() } else { r.zero() })
                .collect()
        }
        _ => {
            let s = integer::snf(&a.to_imat(), false);
            s.diag
                .into_iter()
                .map(|d| r.associate(&r.from_bigint(d)))
                .collect()
        }
    }
}

pub fn smith_normal_form(a: &Matrix) -> Snf {
    let r = a.ring;
    let n = a.rows.min(a.cols);
    match r {
        Ring::Integers => {
            let s = integer::snf(&a.to_imat(), true);
            let mut d = Matrix::zeros(r, a.rows, a.cols);
            for (i, x) in s.diag.iter().enumerate() {
                d.data[i * a.cols + i] = r.from_bigint(x.clone());
            }
            Snf {
                u: Matrix::from_imat(r, &s.u),
                u_inv: Matrix::from_imat(r, &s.u_inv),
                d,
                v: Matrix::from_imat(r, &s.v),
                v_inv: Matrix::from_imat(r, &s.v_inv),
            }
        }
        Ring::PrimeField(_) | Ring::IntegersMod(_) => {
            let s = integer::snf(&a.to_imat(), true);
            let u = Matrix::from_imat(r, &s.u);
            let u_inv = Matrix::from_imat(r, &s.u_inv);
            let mut v = Matrix::from_imat(r, &s.v);
            let mut v_inv = Matrix::from_imat(r, &s.v_inv);
            let mut d = Matrix::zeros(r, a.rows, a.cols);
            for i in 0..n {
                let di = r.from_bigint(s.diag[i].clone());
                let g = r.associate(&di);
                if !di.is_zero() && di != g {
                    // di·w = g with w a unit; rescale column i of V.
                    let w = unit_multiplier(r, &di, &g);
                    let w_inv = r.inverse(&w).expect("unit multiplier");
                    for k in 0..a.cols {
                        let x = r.mul(v.get(k, i), &w);
                        v.data[k * a.cols + i] = x;
                        let y = r.mul(v_inv.get(i, k), &w_inv);
                        v_inv.data[i * a.cols + k] = y;
                    }
                }
                d.data[i * a.cols + i] = g;
            }
            Snf {
                u,
                u_inv,
                d,
                v,
                v_inv,
            }
        }
        Ring::Rationals => {
            let (ai, _, scales) = a.clear_row_denominators(None);
            let s = integer::snf(&ai, true);
            let to_q = |m: &IMat| Matrix::from_imat(r, m);
            let mut u = to_q(&s.u);
            let mut u_inv = to_q(&s.u_inv);
            // U = U'·S, U⁻¹ = S⁻¹·U'⁻¹
            for (j, scale) in scales.iter().enumerate().take(a.rows) {
                let sc = RingElement::Rat(BigRational::from_integer(scale.clone()));
                let inv = r.inverse(&sc).unwrap();
                for i in 0..a.rows {
                    u.data[i * a.rows + j] = r.mul(u.get(i, j), &sc);
                    u_inv.data[j * a.rows + i] = r.mul(u_inv.get(j, i), &inv);
                }
            }
            let mut v = to_q(&s.v);
            let mut v_inv = to_q(&s.v_inv);
            let mut d = Matrix::zeros(r, a.rows, a.cols);
            for i in 0..s.rank {
                let di = RingElement::Rat(BigRational::from_integer(s.diag[i].clone()));
                let inv = r.inverse(&di).unwrap();
                for k in 0..a.cols {
                    v.data[k * a.cols + i] = r.mul(v.get(k, i), &inv);
                    v_inv.data[i * a.cols + k] = r.mul(v_inv.get(i, k), &di);
                }
                d.data[i * a.cols + i] = r.one();
            }
            Snf {
                u,
                u_inv,
                d,
                v,
                v_inv,
            }
        }
    }
}

/// A unit `w` with `d·w = g` in ℤ/m, where `g = gcd(d, m)`.
fn unit_multiplier(r: Ring, d: &RingElement, g: &RingElement) -> RingElement {
    let m = r.modulus_big().unwrap();
    let (d, g) = (r.lift(d), r.lift(g));
    // d = g·d', gcd(d', m/g) = 1. Find w ≡ d'^{-1} (mod m/g) that is a unit mod m.
    let m2 = &m / &g;
    let d2 = (&d / &g).mod_floor(&m2);
    let base = if m2.is_one() {
        BigInt::zero()
    } else {
        d2.extended_gcd(&m2).x.mod_floor(&m2)
    };
    let mut w = base;
    loop {
        if w.gcd(&m).is_one() {
            return r.from_bigint(w);
        }
        w += &m2;
    }
}

/// Columns generating `{x : a·x = 0}`.
pub fn kernel(a: &Matrix) -> Matrix {
    let r = a.ring;
    match r {
        Ring::Integers => Matrix::from_imat(r, &integer::kernel(&a.to_imat())),
        Ring::PrimeField(m) | Ring::IntegersMod(m) => {
            if a.rows == 0 {
                return Matrix::identity(r, a.cols);
            }
            let k = integer::kernel(&a.lift_with_modulus(m));
            Matrix::from_imat(r, &k.top_rows(a.cols)).prune_columns()
        }
        Ring::Rationals => {
            let (ai, _, _) = a.clear_row_denominators(None);
            Matrix::from_imat(r, &integer::kernel(&ai))
        }
    }
}

/// One `x` with `a·x = b`, or `None`.
pub fn solve(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    assert_eq!(a.rows, b.rows, "solve: row counts");
    let r = a.ring;
    match r {
        Ring::Integers => {
            integer::solve(&a.to_imat(), &b.to_imat()).map(|x| Matrix::from_imat(r, &x))
        }
        Ring::PrimeField(m) | Ring::IntegersMod(m) => {
            let x = integer::solve(&a.lift_with_modulus(m), &b.to_imat())?;
            Some(Matrix::from_imat(r, &x.top_rows(a.cols)))
        }
        Ring::Rationals => {
            if a.rows == 0 {
                return Some(Matrix::zeros(r, a.cols, b.cols));
            }
            let (ai, bi, _) = a.clear_row_denominators(Some(b));
            let bi = bi.unwrap();
            let s = integer::snf(&ai, true);
            let ub = s.u.mul(&bi);
            let mut y = vec![BigRational::zero(); a.cols * b.cols];
            for i in 0..a.rows {
                for j in 0..b.cols {
                    let val = ub.get(i, j);
                    if i < s.rank {
                        y[i * b.cols + j] = BigRational::new(val.clone(), s.diag[i].clone());
                    } else if !val.is_zero() {
                        return None;
                    }
                }
            }
            let vq = Matrix::from_imat(r, &s.v);
            let ym = Matrix {
                ring: r,
                rows: a.cols,
                cols: b.cols,
                data: y.into_iter().map(RingElement::Rat).collect(),
            };
            Some(vq.mul(&ym))
        }
    }
}

/// Determinant; the 0×0 determinant is 1.
pub fn determinant(a: &Matrix) -> Result<RingElement> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "determinant of a {}x{} matrix",
            a.rows, a.cols
        )));
    }
    let r = a.ring;
    Ok(match r {
        Ring::Rationals => {
            let (ai, _, scales) = a.clear_row_denominators(None);
            let num = integer::determinant(&ai);
            let den = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
            RingElement::Rat(BigRational::new(num, den))
        }
        _ => r.from_bigint(integer::determinant(&a.to_imat())),
    })
}

/// All `t×t` minors, rows-subset-major, both subsets in lexicographic order.
pub fn minors(a: &Matrix, t: usize) -> Result<Vec<RingElement>> {
    if t == 0 || t > a.rows.min(a.cols) {
        return Err(Error::Dimension(format!(
            "minor size {t} outside 1..={} for a {}x{} matrix",
            a.rows.min(a.cols),
            a.rows,
            a.cols
        )));
    }
    let mut out = Vec::new();
    for rs in (0..a.rows).combinations(t) {
        let sub = a.select_rows(&rs);
        for cs in (0..a.cols).combinations(t) {
            out.push(determinant(&sub.select_columns(&cs))?);
        }
    }
    Ok(out)
}

/// Classical adjoint: entry `(i, j)` is `(−1)^{i+j} det A_{j,i}`.
pub fn adjugate(a: &Matrix) -> Result<Matrix> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "adjugate of a {}x{} matrix",
            a.rows, a.cols
        )));
    }
    let n = a.rows;
    let r = a.ring;
    let mut out = Matrix::zeros(r, n, n);
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&k| k != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&k| k != i).collect();
            let d = determinant(&a.select_rows(&rows).select_columns(&cols))?;
            out.data[i * n + j] = if (i + j) % 2 == 0 { d } else { r.neg(&d) };
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterminantalData {
    pub det: Option<RingElement>,
    pub minors: Vec<RingElement>,
    pub adjugate: Option<Matrix>,
}

pub fn determinantal_data(a: &Matrix, t: usize) -> Result<DeterminantalData> {
    let minors = minors(a, t)?;
    let (det, adjugate) = if a.is_square() {
        (Some(determinant(a)?), Some(adjugate(a)?))
    } else {
        (None, None)
    };
    Ok(DeterminantalData {
        det,
        minors,
        adjugate,
    })
}

/// Rank over ℚ/𝔽_p (number of nonzero invariant factors); over ℤ the rank of
/// the lattice; over ℤ/m the number of non-zero invariant factors.
pub fn rank(a: &Matrix) -> usize {
    invariant_factors(a).iter().filter(|d| !d.is_zero()).count()
}

/// Canonical basis of the row space: reduced row echelon form over ℚ, or the
/// Hermite normal form of the row lattice over ℤ. For ℤ/m and 𝔽_p the rows
/// are lifted and `m·e_i` appended first. Zero rows are dropped; the result
/// is over ℤ for ℤ-like rings.
pub(crate) fn canonical_row_basis(a: &Matrix) -> Matrix {
    let r = a.ring;
    match r {
        Ring::Rationals => rref(a),
        Ring::Integers => Matrix::from_imat(Ring::Integers, &integer::hnf_rows(&a.to_imat())),
        Ring::PrimeField(m) | Ring::IntegersMod(m) => {
            let lifted = a.transpose().lift_with_modulus(m).transpose();
            Matrix::from_imat(Ring::Integers, &integer::hnf_rows(&lifted))
        }
    }
}

fn rref(a: &Matrix) -> Matrix {
    let r = a.ring;
    let mut m = a.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut p = 0;
    for c in 0..cols {
        if p >= rows {
            break;
        }
        let Some(piv) = (p..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        for j in 0..cols {
            m.data.swap(p * cols + j, piv * cols + j);
        }
        let inv = r.inverse(m.get(p, c)).expect("nonzero rational");
        for j in 0..cols {
            m.data[p * cols + j] = r.mul(m.get(p, j), &inv);
        }
        for i in 0..rows {
            if i == p || m.get(i, c).is_zero() {
                continue;
            }
            let f = m.get(i, c).clone();
            for j in 0..cols {
                let v = r.sub(m.get(i, j), &r.mul(&f, m.get(p, j)));
                m.data[i * cols + j] = v;
            }
        }
        p += 1;
    }
    m.block(0, p, 0, cols)
}
