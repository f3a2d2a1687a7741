//! Integer normal forms. Every ring-aware routine in [`super`] lifts to this
//! engine.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigInt>,
}

impl IMat {
    pub fn zeros(rows: usize, cols: usize) -> IMat {
        IMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IMat {
        let mut m = IMat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IMat {
        let mut out = IMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn hcat(&self, other: &IMat) -> IMat {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut out = IMat::zeros(self.rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn columns(&self, idx: impl IntoIterator<Item = usize>) -> IMat {
        let idx: Vec<usize> = idx.into_iter().collect();
        let mut out = IMat::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                out.set(i, k, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn top_rows(&self, n: usize) -> IMat {
        IMat {
            rows: n,
            cols: self.cols,
            data: self.data[..n * self.cols].to_vec(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += c · row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(src, j) * c;
            if !v.is_zero() {
                self.data[dst * self.cols + j] += v;
            }
        }
    }

    /// col[dst] += c · col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, src) * c;
            if !v.is_zero() {
                self.data[i * self.cols + dst] += v;
            }
        }
    }

    fn neg_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j);
            self.set(r, j, v);
        }
    }

    fn neg_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, c);
            self.set(i, c, v);
        }
    }
}

/// `u · a · v = diag(d)`, with `d[0] | d[1] | …`, all `d[i] ≥ 0`.
#[derive(Clone, Debug)]
pub(crate) struct ISnf {
    pub u: IMat,
    pub u_inv: IMat,
    pub v: IMat,
    pub v_inv: IMat,
    pub diag: Vec<BigInt>,
    pub rank: usize,
}

struct Transforms {
    u: IMat,
    u_inv: IMat,
    v: IMat,
    v_inv: IMat,
}

impl Transforms {
    fn row_swap(&mut self, a: usize, b: usize) {
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }
    fn col_swap(&mut self, a: usize, b: usize) {
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }
    /// row[dst] += c·row[src] applied on the left.
    fn row_add(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.u.add_row(dst, src, c);
        self.u_inv.add_col(src, dst, &-c);
    }
    /// col[dst] += c·col[src] applied on the right.
    fn col_add(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.v.add_col(dst, src, c);
        self.v_inv.add_row(src, dst, &-c);
    }
    fn row_neg(&mut self, r: usize) {
        self.u.neg_row(r);
        self.u_inv.neg_col(r);
    }
}

pub(crate) fn snf(a: &IMat, with_transforms: bool) -> ISnf {
    let (r, c) = (a.rows, a.cols);
    let mut m = a.clone();
    let mut t = if with_transforms {
        Some(Transforms {
            u: IMat::identity(r),
            u_inv: IMat::identity(r),
            v: IMat::identity(c),
            v_inv: IMat::identity(c),
        })
    } else {
        None
    };
    let mut diag = Vec::new();
    let n = r.min(c);
    let mut p = 0;
    while p < n {
        // Smallest nonzero |entry| in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in p..r {
            for j in p..c {
                let v = m.get(i, j);
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < m.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap_rows(p, bi);
        m.swap_cols(p, bj);
        if let Some(t) = t.as_mut() {
            t.row_swap(p, bi);
            t.col_swap(p, bj);
        }
        loop {
            let mut again = false;
            let piv = m.get(p, p).clone();
            for i in p + 1..r {
                if m.get(i, p).is_zero() {
                    continue;
                }
                let q = -m.get(i, p).div_floor(&piv);
                m.add_row(i, p, &q);
                if let Some(t) = t.as_mut() {
                    t.row_add(i, p, &q);
                }
                if !m.get(i, p).is_zero() {
                    again = true;
                }
            }
            for j in p + 1..c {
                if m.get(p, j).is_zero() {
                    continue;
                }
                let q = -m.get(p, j).div_floor(&piv);
                m.add_col(j, p, &q);
                if let Some(t) = t.as_mut() {
                    t.col_add(j, p, &q);
                }
                if !m.get(p, j).is_zero() {
                    again = true;
                }
            }
            if again {
                // Move the smallest remainder in row/column p to the pivot.
                let mut best = (p, p);
                for i in p + 1..r {
                    let v = m.get(i, p);
                    if !v.is_zero() && v.abs() < m.get(best.0, best.1).abs() {
                        best = (i, p);
                    }
                }
                for j in p + 1..c {
                    let v = m.get(p, j);
                    if !v.is_zero() && v.abs() < m.get(best.0, best.1).abs() {
                        best = (p, j);
                    }
                }
                if best.0 != p {
                    m.swap_rows(p, best.0);
                    if let Some(t) = t.as_mut() {
                        t.row_swap(p, best.0);
                    }
                }
                if best.1 != p {
                    m.swap_cols(p, best.1);
                    if let Some(t) = t.as_mut() {
                        t.col_swap(p, best.1);
                    }
                }
                continue;
            }
            // Row and column cleared; enforce divisibility on the block.
            let mut offender = None;
            'outer: for i in p + 1..r {
                for j in p + 1..c {
                    if !m.get(i, j).is_multiple_of(&piv) {
                        offender = Some(i);
                        break 'outer;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    m.add_row(p, i, &one);
                    if let Some(t) = t.as_mut() {
                        t.row_add(p, i, &one);
                    }
                }
                None => break,
            }
        }
        if m.get(p, p).is_negative() {
            m.neg_row(p);
            if let Some(t) = t.as_mut() {
                t.row_neg(p);
            }
        }
        diag.push(m.get(p, p).clone());
        p += 1;
    }
    let rank = diag.len();
    while diag.len() < n {
        diag.push(BigInt::zero());
    }
    let t = t.unwrap_or(Transforms {
        u: IMat::zeros(0, 0),
        u_inv: IMat::zeros(0, 0),
        v: IMat::zeros(0, 0),
        v_inv: IMat::zeros(0, 0),
    });
    ISnf {
        u: t.u,
        u_inv: t.u_inv,
        v: t.v,
        v_inv: t.v_inv,
        diag,
        rank,
    }
}

/// Columns generating `{x : a·x = 0}` over ℤ.
pub(crate) fn kernel(a: &IMat) -> IMat {
    if a.rows == 0 {
        return IMat::identity(a.cols);
    }
    let s = snf(a, true);
    s.v.columns(s.rank..a.cols)
}

/// One solution `x` of `a·x = b` over ℤ (all columns of `b`), if any.
pub(crate) fn solve(a: &IMat, b: &IMat) -> Option<IMat> {
    assert_eq!(a.rows, b.rows);
    if a.rows == 0 {
        return Some(IMat::zeros(a.cols, b.cols));
    }
    let s = snf(a, true);
    let ub = s.u.mul(b);
    let mut y = IMat::zeros(a.cols, b.cols);
    for i in 0..a.rows {
        for j in 0..b.cols {
            let val = ub.get(i, j);
            if i < s.rank {
                let (q, rem) = val.div_rem(&s.diag[i]);
                if !rem.is_zero() {
                    return None;
                }
                y.set(i, j, q);
            } else if !val.is_zero() {
                return None;
            }
        }
    }
    Some(s.v.mul(&y))
}

/// Row-style Hermite normal form of the row lattice of `a`: positive pivots,
/// entries above a pivot reduced into `[0, pivot)`, zero rows dropped.
pub(crate) fn hnf_rows(a: &IMat) -> IMat {
    let mut m = a.clone();
    let (r, c) = (m.rows, m.cols);
    let mut p = 0;
    let mut pivots = Vec::new();
    for col in 0..c {
        if p >= r {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in p..r {
                let v = m.get(i, col);
                if !v.is_zero() && best.is_none_or(|b| v.abs() < m.get(b, col).abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            m.swap_rows(p, b);
            let piv = m.get(p, col).clone();
            let mut done = true;
            for i in p + 1..r {
                if m.get(i, col).is_zero() {
                    continue;
                }
                let q = -m.get(i, col).div_floor(&piv);
                m.add_row(i, p, &q);
                if !m.get(i, col).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if p < r && !m.get(p, col).is_zero() {
            if m.get(p, col).is_negative() {
                m.neg_row(p);
            }
            let piv = m.get(p, col).clone();
            for i in 0..p {
                let q = -m.get(i, col).div_floor(&piv);
                m.add_row(i, p, &q);
            }
            pivots.push(col);
            p += 1;
        }
    }
    m.top_rows(p)
}

/// Fraction-free (Bareiss) determinant.
pub(crate) fn determinant(a: &IMat) -> BigInt {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m.get(k, k).is_zero() {
            let Some(sw) = (k + 1..n).find(|&i| !m.get(i, k).is_zero()) else {
                return BigInt::zero();
            };
            m.swap_rows(k, sw);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                m.set(i, j, v);
            }
        }
        prev = m.get(k, k).clone();
    }
    sign * m.get(n - 1, n - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: usize, cols: usize, v: &[i64]) -> IMat {
        IMat {
            rows,
            cols,
            data: v.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    fn diag_of(m: &IMat) -> Vec<BigInt> {
        (0..m.rows.min(m.cols))
            .map(|i| m.get(i, i).clone())
            .collect()
    }

    #[test]
    fn snf_contract() {
        let a = im(3, 3, &[2, 4, 4, -6, 6, 12, 10, -4, -16]);
        let s = snf(&a, true);
        let d = s.u.mul(&a).mul(&s.v);
        assert_eq!(diag_of(&d), s.diag);
        assert_eq!(s.diag, vec![2.into(), 6.into(), 12.into()]);
        assert_eq!(s.u.mul(&s.u_inv), IMat::identity(3));
        assert_eq!(s.v.mul(&s.v_inv), IMat::identity(3));
    }

    #[test]
    fn hnf_of_generators() {
        let h = hnf_rows(&im(2, 1, &[4, 6]));
        assert_eq!(h, im(1, 1, &[2]));
        let h = hnf_rows(&im(2, 2, &[2, 3, 4, 5]));
        assert_eq!(h, im(2, 2, &[2, 0, 0, 1]));
    }

    #[test]
    fn bareiss() {
        assert_eq!(determinant(&im(2, 2, &[2, 1, 0, 3])), BigInt::from(6));
        assert_eq!(
            determinant(&im(3, 3, &[0, 1, 2, 1, 0, 3, 4, -3, 8])),
            BigInt::from(-2)
        );
        assert_eq!(determinant(&IMat::zeros(0, 0)), BigInt::one());
    }
}
