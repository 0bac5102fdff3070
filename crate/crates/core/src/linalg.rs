//! Exact dense linear algebra over any `Field`: elimination, kernels,
//! determinants and characteristic polynomials.  Sizes here are tiny
//! (dimension at most a few dozen), so simplicity wins over pivoting
//! sophistication.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::Field;
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq)]
pub struct Mat<K: Field> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<K>, // row major
}

impl<K: Field> Mat<K> {
    pub fn new(rows: usize, cols: usize, data: Vec<K>) -> Self {
        assert_eq!(rows * cols, data.len());
        Mat { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, zero: K) -> Self {
        Mat {
            rows,
            cols,
            data: vec![zero; rows * cols],
        }
    }

    pub fn identity(n: usize, zero: K, one: K) -> Self {
        let mut m = Mat::filled(n, n, zero);
        for i in 0..n {
            *m.at_mut(i, i) = one.clone();
        }
        m
    }

    pub fn at(&self, r: usize, c: usize) -> &K {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut K {
        &mut self.data[r * self.cols + c]
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let zero = self.data[0].zero_like();
        let mut out = Mat::filled(self.rows, other.cols, zero);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero_elem() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j).add(&a.mul(other.at(k, j)));
                    *out.at_mut(i, j) = v;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.at(r, c).clone());
            }
        }
        Mat::new(self.cols, self.rows, data)
    }

    /// In-place row reduction to reduced row echelon form.
    /// Returns the pivot column of each pivot row.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.at(r, col).is_zero_elem()) else {
                continue;
            };
            if p != row {
                for c in 0..self.cols {
                    self.data.swap(p * self.cols + c, row * self.cols + c);
                }
            }
            let inv = self.at(row, col).inv().unwrap();
            for c in col..self.cols {
                let v = self.at(row, c).mul(&inv);
                *self.at_mut(row, c) = v;
            }
            for r in 0..self.rows {
                if r == row || self.at(r, col).is_zero_elem() {
                    continue;
                }
                let f = self.at(r, col).clone();
                for c in col..self.cols {
                    let v = self.at(r, c).sub(&f.mul(self.at(row, c)));
                    *self.at_mut(r, c) = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel, one Vec per basis vector.
    pub fn kernel(&self) -> Vec<Vec<K>> {
        let zero = self.data.first().map(|d| d.zero_like());
        let mut m = self.clone();
        let pivots = m.rref();
        let Some(zero) = zero else {
            return Vec::new();
        };
        let one = self.data[0].one_like();
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![zero.clone(); self.cols];
            v[free] = one.clone();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = m.at(r, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Solve self * x = b; returns one solution if consistent.
    pub fn solve(&self, b: &[K]) -> Option<Vec<K>> {
        assert_eq!(b.len(), self.rows);
        let zero = self.data.first()?.zero_like();
        let mut aug = Mat::filled(self.rows, self.cols + 1, zero.clone());
        for r in 0..self.rows {
            for c in 0..self.cols {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, self.cols) = b[r].clone();
        }
        let pivots = aug.rref();
        if pivots.last().map_or(false, |&p| p == self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![zero; self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.at(r, self.cols).clone();
        }
        Some(x)
    }

    /// Determinant by fraction-producing Gaussian elimination.
    pub fn det(&self) -> K {
        assert_eq!(self.rows, self.cols);
        let zero = self.data[0].zero_like();
        let one = self.data[0].one_like();
        let mut m = self.clone();
        let n = self.rows;
        let mut det = one;
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.at(r, col).is_zero_elem()) else {
                return zero;
            };
            if p != col {
                for c in 0..n {
                    m.data.swap(p * n + c, col * n + c);
                }
                det = det.neg();
            }
            let pivot = m.at(col, col).clone();
            det = det.mul(&pivot);
            let inv = pivot.inv().unwrap();
            for r in col + 1..n {
                if m.at(r, col).is_zero_elem() {
                    continue;
                }
                let f = m.at(r, col).mul(&inv);
                for c in col..n {
                    let v = m.at(r, c).sub(&f.mul(m.at(col, c)));
                    *m.at_mut(r, c) = v;
                }
            }
        }
        det
    }

    /// Characteristic polynomial det(xI - A), monic, via Hessenberg reduction.
    pub fn charpoly(&self) -> Poly<K> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let zero = self.data[0].zero_like();
        let one = self.data[0].one_like();
        if n == 0 {
            return Poly::constant(one);
        }
        // similarity reduction to upper Hessenberg with exact pivots
        let mut h = self.clone();
        for col in 0..n.saturating_sub(2) {
            let Some(p) = (col + 1..n).find(|&r| !h.at(r, col).is_zero_elem()) else {
                continue;
            };
            if p != col + 1 {
                for c in 0..n {
                    h.data.swap(p * n + c, (col + 1) * n + c);
                }
                for r in 0..n {
                    h.data.swap(r * n + p, r * n + col + 1);
                }
            }
            let inv = h.at(col + 1, col).inv().unwrap();
            for r in col + 2..n {
                if h.at(r, col).is_zero_elem() {
                    continue;
                }
                let f = h.at(r, col).mul(&inv);
                // row r -= f * row col+1 ; column col+1 += f * column r
                for c in 0..n {
                    let v = h.at(r, c).sub(&f.mul(h.at(col + 1, c)));
                    *h.at_mut(r, c) = v;
                }
                for rr in 0..n {
                    let v = h.at(rr, col + 1).add(&f.mul(h.at(rr, r)));
                    *h.at_mut(rr, col + 1) = v;
                }
            }
        }
        // charpoly of a Hessenberg matrix by the leading-minor recurrence:
        // p_0 = 1,
        // p_k = (x - h[k-1][k-1]) p_{k-1}
        //       - sum_{r=0}^{k-2} h[r][k-1] * (prod_{j=r+1}^{k-1} h[j][j-1]) * p_r
        let x = Poly::new(vec![zero, one.clone()]);
        let mut ps: Vec<Poly<K>> = vec![Poly::constant(one.clone())];
        for k in 1..=n {
            let mut pk = x
                .sub(&Poly::constant(h.at(k - 1, k - 1).clone()))
                .mul(&ps[k - 1]);
            let mut sub = one.clone();
            for r in (0..k.saturating_sub(1)).rev() {
                sub = sub.mul(h.at(r + 1, r));
                let term = h.at(r, k - 1).mul(&sub);
                pk = pk.sub(&Poly::constant(term).mul(&ps[r]));
            }
            ps.push(pk);
        }
        ps.pop().unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat_from_i64, Rat};

    fn m(rows: usize, cols: usize, v: &[i64]) -> Mat<Rat> {
        Mat::new(rows, cols, v.iter().map(|&n| rat_from_i64(n)).collect())
    }

    #[test]
    fn kernel_of_rank_one() {
        let a = m(2, 3, &[1, 2, 3, 2, 4, 6]);
        let k = a.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            for r in 0..2 {
                let mut acc = rat_from_i64(0);
                for c in 0..3 {
                    acc = acc + a.at(r, c) * &v[c];
                }
                assert!(acc == rat_from_i64(0));
            }
        }
    }

    #[test]
    fn det_and_solve() {
        let a = m(3, 3, &[2, 0, 1, 1, 1, 0, 0, 3, 1]);
        assert_eq!(a.det(), rat_from_i64(5));
        let b = [rat_from_i64(3), rat_from_i64(2), rat_from_i64(4)];
        let x = a.solve(&b).unwrap();
        for r in 0..3 {
            let mut acc = rat_from_i64(0);
            for c in 0..3 {
                acc = acc + a.at(r, c) * &x[c];
            }
            assert_eq!(acc, b[r]);
        }
    }

    #[test]
    fn charpoly_matches_brute_force_det() {
        // oracle: evaluate det(tI - A) at several integers and compare
        let a = m(4, 4, &[0, 1, 0, 2, 1, 0, 3, 0, 0, 0, 2, 1, 5, 0, 0, 1]);
        let p = a.charpoly();
        assert_eq!(p.deg(), 4);
        for t in -3i64..=3 {
            let ti = Mat::identity(4, rat_from_i64(0), rat_from_i64(t));
            let d = ti.sub(&a).det();
            assert_eq!(p.eval(&rat_from_i64(t)), d);
        }
    }
}
