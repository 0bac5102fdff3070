//! Number field arithmetic: L = Q[x]/(m) for a monic irreducible m.
//!
//! Elements are canonical residues (degree < N, exact rational
//! coefficients), so equality is coefficientwise and zero tests are exact.
//! Subfields of L (k0, k, L0) are cut out elsewhere as fixed spaces; this
//! module only knows the one absolute extension.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::CoreError;
use crate::field::Field;
use crate::linalg::Mat;
use crate::poly::Poly;
use crate::rat::{rat_one, rat_zero, Rat};
use crate::zfactor::is_irreducible;

/// The defining data of L = Q[x]/(m), with a precomputed reduction table
/// for the powers x^N .. x^(2N-2).
#[derive(Debug)]
pub struct NumberField {
    pub min_poly: Poly<Rat>,
    pub degree: usize,
    reduction: Vec<Vec<Rat>>, // reduction[i] = x^(N+i) mod m, constant first, len N
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.min_poly == other.min_poly
    }
}

impl NumberField {
    /// Validates monicity and exact irreducibility over Q.
    pub fn new(min_poly: Poly<Rat>) -> Result<Arc<Self>, CoreError> {
        let n = match min_poly.degree() {
            Some(n) if n >= 1 => n,
            _ => return Err(CoreError::Structural(String::from("minimal polynomial must be nonconstant"))),
        };
        if min_poly.leading() != Some(&rat_one()) {
            return Err(CoreError::Structural(String::from("minimal polynomial must be monic")));
        }
        if !is_irreducible(&min_poly) {
            return Err(CoreError::Structural(String::from(
                "minimal polynomial is reducible over Q",
            )));
        }
        // x^(N+i) mod m for i in 0..N-1, by repeated shift-and-reduce.
        // x^N mod m = -(lower part of m) since m is monic.
        let mut reduction: Vec<Vec<Rat>> = Vec::with_capacity(n);
        let mut cur: Vec<Rat> = (0..n).map(|i| -min_poly.coeffs[i].clone()).collect();
        reduction.push(cur.clone());
        while reduction.len() < n.saturating_sub(1).max(1) {
            let top = cur[n - 1].clone();
            let mut next = vec![rat_zero(); n];
            for i in (1..n).rev() {
                next[i] = cur[i - 1].clone();
            }
            for i in 0..n {
                next[i] = &next[i] + &top * -&min_poly.coeffs[i];
            }
            cur = next;
            reduction.push(cur.clone());
        }
        Ok(Arc::new(NumberField {
            min_poly,
            degree: n,
            reduction,
        }))
    }

    pub fn zero(self: &Arc<Self>) -> NFElem {
        NFElem {
            field: Arc::clone(self),
            coeffs: vec![rat_zero(); self.degree],
        }
    }

    pub fn one(self: &Arc<Self>) -> NFElem {
        self.from_rat(rat_one())
    }

    pub fn from_rat(self: &Arc<Self>, r: Rat) -> NFElem {
        let mut coeffs = vec![rat_zero(); self.degree];
        coeffs[0] = r;
        NFElem {
            field: Arc::clone(self),
            coeffs,
        }
    }

    /// The class of x, i.e. the field generator.
    pub fn generator(self: &Arc<Self>) -> NFElem {
        let mut coeffs = vec![rat_zero(); self.degree];
        if self.degree > 1 {
            coeffs[1] = rat_one();
        } else {
            // degree-1 field: x = -m(0)
            coeffs[0] = -self.min_poly.coeffs[0].clone();
        }
        NFElem {
            field: Arc::clone(self),
            coeffs,
        }
    }

    /// Element from arbitrary-length coefficient vector (reduced mod m).
    pub fn element(self: &Arc<Self>, coeffs: Vec<Rat>) -> NFElem {
        let p = Poly::new(coeffs);
        let r = p.rem(&self.min_poly);
        let mut c = r.coeffs;
        c.resize(self.degree, rat_zero());
        NFElem {
            field: Arc::clone(self),
            coeffs: c,
        }
    }
}

/// Element of L as a canonical residue.
#[derive(Debug, Clone)]
pub struct NFElem {
    pub field: Arc<NumberField>,
    pub coeffs: Vec<Rat>, // length = field.degree
}

impl PartialEq for NFElem {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl NFElem {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }

    /// Rational constant, if the element lies in Q.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check_same_field(&self, other: &NFElem) -> Result<(), CoreError> {
        if self.field != other.field {
            return Err(CoreError::Mismatch(String::from(
                "operands belong to different number fields",
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &NFElem) -> Result<NFElem, CoreError> {
        self.check_same_field(other)?;
        Ok(NFElem {
            field: Arc::clone(&self.field),
            coeffs: self
                .coeffs
                .iter()
                .zip(other.coeffs.iter())
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &NFElem) -> Result<NFElem, CoreError> {
        self.check_same_field(other)?;
        Ok(NFElem {
            field: Arc::clone(&self.field),
            coeffs: self
                .coeffs
                .iter()
                .zip(other.coeffs.iter())
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Product via convolution and the precomputed power-reduction table.
    /// (The brute-force long-division oracle lives in the tests.)
    pub fn try_mul(&self, other: &NFElem) -> Result<NFElem, CoreError> {
        self.check_same_field(other)?;
        let n = self.field.degree;
        let mut conv = vec![rat_zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                conv[i + j] = &conv[i + j] + &(a * b);
            }
        }
        let mut out: Vec<Rat> = conv[..n].to_vec();
        for i in n..2 * n - 1 {
            if conv[i].is_zero() {
                continue;
            }
            let red = &self.field.reduction[i - n];
            for (k, r) in red.iter().enumerate() {
                out[k] = &out[k] + &(&conv[i] * r);
            }
        }
        Ok(NFElem {
            field: Arc::clone(&self.field),
            coeffs: out,
        })
    }

    /// Inverse by extended gcd against the minimal polynomial.
    pub fn try_inv(&self) -> Result<NFElem, CoreError> {
        if self.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        let a = Poly::new(self.coeffs.clone());
        let m = &self.field.min_poly;
        // extended Euclid: s*a + t*m = gcd = nonzero constant (m irreducible)
        let (mut r0, mut r1) = (a, m.clone());
        let (mut s0, mut s1) = (Poly::constant(rat_one()), Poly::<Rat>::zero());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let ns = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = ns;
        }
        debug_assert_eq!(r0.deg(), 0);
        let c = r0.coeffs[0].clone();
        let s = s0.scale(&(rat_one() / c));
        Ok(self.field.element(s.coeffs))
    }

    pub fn nf_neg(&self) -> NFElem {
        NFElem {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> NFElem {
        let mut acc = self.field.one();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&b).unwrap();
            }
            b = b.try_mul(&b).unwrap();
            e >>= 1;
        }
        acc
    }

    /// 1-norm upper bound used by the disk arithmetic in `embed`.
    pub fn coeff_height(&self) -> Rat {
        self.coeffs.iter().map(|c| c.abs()).fold(rat_zero(), |a, b| a + b)
    }
}

impl Field for NFElem {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("field mismatch")
    }
    fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("field mismatch")
    }
    fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("field mismatch")
    }
    fn neg(&self) -> Self {
        self.nf_neg()
    }
    fn inv(&self) -> Option<Self> {
        self.try_inv().ok()
    }
}

/// Coordinates of `a` in the Q-span of `basis`, if it lies there.
/// Exact linear algebra over Q; no numerics involved.
pub fn in_span(a: &NFElem, basis: &[NFElem]) -> Option<Vec<Rat>> {
    let n = a.field.degree;
    let mut data = Vec::with_capacity(n * basis.len());
    for r in 0..n {
        for b in basis {
            data.push(b.coeffs[r].clone());
        }
    }
    let m = Mat::new(n, basis.len(), data);
    m.solve(&a.coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{parse_rat, rat_from_i64};

    pub fn qi8() -> Arc<NumberField> {
        // Q[x]/(x^4+1)
        NumberField::new(Poly::new(vec![
            rat_from_i64(1),
            rat_from_i64(0),
            rat_from_i64(0),
            rat_from_i64(0),
            rat_from_i64(1),
        ]))
        .unwrap()
    }

    fn el(f: &Arc<NumberField>, v: &[i64]) -> NFElem {
        f.element(v.iter().map(|&n| rat_from_i64(n)).collect())
    }

    #[test]
    fn add_identity_and_inverse() {
        let f = qi8();
        let a = el(&f, &[1, 2, 3, 4]);
        assert_eq!(f.zero().try_add(&a).unwrap(), a);
        assert!(a.try_add(&a.nf_neg()).unwrap().is_zero());
        // x + x^3 has no reduction
        let s = el(&f, &[0, 1]).try_add(&el(&f, &[0, 0, 0, 1])).unwrap();
        assert_eq!(s, el(&f, &[0, 1, 0, 1]));
    }

    #[test]
    fn mul_wraps_past_degree() {
        let f = qi8();
        let x2 = el(&f, &[0, 0, 1]);
        assert_eq!(x2.try_mul(&x2).unwrap(), el(&f, &[-1])); // x^4 = -1
        let a = el(&f, &[5, -3, 2, 7]);
        assert_eq!(f.one().try_mul(&a).unwrap(), a);
        // (x + x^3)(x - x^3) = x^2 - x^6 = 2x^2  [long-division oracle]
        let p = el(&f, &[0, 1, 0, 1]).try_mul(&el(&f, &[0, 1, 0, -1])).unwrap();
        assert_eq!(p, el(&f, &[0, 0, 2]));
    }

    #[test]
    fn inv_examples() {
        let f = qi8();
        assert_eq!(f.one().try_inv().unwrap(), f.one());
        let x = f.generator();
        let xinv = x.try_inv().unwrap();
        assert_eq!(xinv, el(&f, &[0, 0, 0, -1])); // x^-1 = -x^3
        assert!(x.try_mul(&xinv).unwrap().is_one());
        assert_eq!(f.zero().try_inv(), Err(CoreError::DivisionByZero));
    }

    #[test]
    fn reducible_min_poly_rejected() {
        let r = NumberField::new(Poly::new(vec![
            rat_from_i64(-1),
            rat_from_i64(0),
            rat_from_i64(1),
        ])); // x^2 - 1
        assert!(r.is_err());
    }

    #[test]
    fn mismatch_is_an_error() {
        let f = qi8();
        let g = NumberField::new(Poly::new(vec![rat_from_i64(-2), rat_from_i64(0), rat_from_i64(1)]))
            .unwrap();
        let a = f.one();
        let b = g.one();
        assert!(matches!(a.try_add(&b), Err(CoreError::Mismatch(_))));
        assert!(matches!(a.try_mul(&b), Err(CoreError::Mismatch(_))));
    }

    #[test]
    fn span_membership() {
        let f = qi8();
        // basis {1, x - x^3} spans the real subfield of Q(zeta_8)
        let basis = [f.one(), el(&f, &[0, 1, 0, -1])];
        let a = el(&f, &[3, 2, 0, -2]); // 3 + 2(x - x^3)
        let co = in_span(&a, &basis).unwrap();
        assert_eq!(co, vec![rat_from_i64(3), rat_from_i64(2)]);
        assert!(in_span(&f.generator(), &basis).is_none());
        let _ = parse_rat("1/2").unwrap();
    }
}
