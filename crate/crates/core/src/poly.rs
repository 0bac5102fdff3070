//! Dense univariate polynomials over any `Field`.
//!
//! Coefficients are stored constant term first.  The zero polynomial is
//! the empty coefficient vector.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::Field;

#[derive(Debug, Clone, PartialEq)]
pub struct Poly<K: Field> {
    pub coeffs: Vec<K>, // trimmed: last entry nonzero
}

impl<K: Field> Poly<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero_elem()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: K) -> Self {
        Poly::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports None.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<&K> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = other.coeffs.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, k: &K) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.mul(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(out)
    }

    /// Euclidean division; panics if divisor is zero.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dlead = divisor.leading().unwrap();
        let dinv = dlead.inv().expect("leading coefficient must be invertible");
        let ddeg = divisor.deg();
        let mut rem = self.coeffs.clone();
        let zero = dlead.zero_like();
        if rem.len() < divisor.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let qlen = rem.len() - ddeg;
        let mut quot = vec![zero; qlen];
        for i in (0..qlen).rev() {
            let top = rem[i + ddeg].clone();
            if top.is_zero_elem() {
                continue;
            }
            let q = top.mul(&dinv);
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].sub(&q.mul(d));
            }
            quot[i] = q;
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.divrem(divisor).1
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => {
                let inv = l.inv().expect("leading coefficient must be invertible");
                self.scale(&inv)
            }
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            // c * i via repeated addition is wasteful; build i as field element
            let mut k = c.zero_like();
            let one = c.one_like();
            for _ in 0..i {
                k = k.add(&one);
            }
            out.push(c.mul(&k));
        }
        Poly::new(out)
    }

    pub fn eval(&self, x: &K) -> K {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Substitute another polynomial: self(g) reduced nowhere (plain composition).
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Squarefree part: self / gcd(self, self').
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.deg() == 0 {
            return self.monic();
        }
        self.divrem(&g).0.monic()
    }

    /// Resultant via the Euclidean remainder sequence.
    pub fn resultant(&self, other: &Self) -> K {
        let exemplar = self
            .coeffs
            .first()
            .or_else(|| other.coeffs.first())
            .expect("resultant of zero polynomials");
        let zero = exemplar.zero_like();
        let one = exemplar.one_like();
        let mut a = self.clone();
        let mut b = other.clone();
        let mut res = one.clone();
        loop {
            if b.is_zero() {
                return zero;
            }
            if b.deg() == 0 {
                // res *= lc(b)^deg(a)
                let c = b.coeffs[0].clone();
                let mut p = one.clone();
                for _ in 0..a.deg() {
                    p = p.mul(&c);
                }
                return res.mul(&p);
            }
            let r = a.rem(&b);
            let da = a.deg();
            let db = b.deg();
            let dr = r.degree();
            // res(a,b) = (-1)^(da*db) lc(b)^(da - dr) res(b, r)
            let lcb = b.leading().unwrap().clone();
            let drop = da - dr.map_or(0, |d| d);
            let mut p = one.clone();
            for _ in 0..drop {
                p = p.mul(&lcb);
            }
            if r.is_zero() {
                // handled at next iteration (returns zero)
                res = res.mul(&p);
            } else {
                res = res.mul(&p);
            }
            if (da * db) % 2 == 1 {
                res = res.neg();
            }
            a = b;
            b = r;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat_from_i64, Rat};

    fn p(v: &[i64]) -> Poly<Rat> {
        Poly::new(v.iter().map(|&n| rat_from_i64(n)).collect())
    }

    #[test]
    fn divrem_reconstructs() {
        let a = p(&[1, 0, 0, 0, 1]); // x^4 + 1
        let b = p(&[1, 2, 1]); // (x+1)^2
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.deg() < b.deg());
    }

    #[test]
    fn gcd_of_common_factor() {
        let f = p(&[-1, 0, 1]); // x^2-1
        let g = p(&[1, 1]); // x+1
        assert_eq!(f.gcd(&g), g.monic());
    }

    #[test]
    fn resultant_matches_discriminant_example() {
        // disc(x^2+bx+c) = b^2-4c = -res(f, f') / lc ... for monic quadratic res(f,f') = -(b^2-4c) * -1?
        // Direct check: f = x^2 - 2, f' = 2x, res = product f'(roots)*? res(f,g) = lc(g)^deg f * prod g(roots)
        let f = p(&[-2, 0, 1]);
        let fp = f.derivative();
        // res(f, f') = lc(f)^? ... compute directly: roots ±√2, res = prod over roots of f of f'(r) * lc(f)^(deg f' ... )
        // f'(√2)*f'(-√2) = (2√2)(-2√2) = -8, and res(f,f') = lc(f)^(deg f' ) * that = -8
        assert_eq!(f.resultant(&fp), rat_from_i64(-8));
    }

    #[test]
    fn compose_and_eval_agree() {
        let f = p(&[1, 2, 3]);
        let g = p(&[0, 0, 1]);
        let c = f.compose(&g);
        let x = rat_from_i64(5);
        assert_eq!(c.eval(&x), f.eval(&g.eval(&x)));
    }
}
