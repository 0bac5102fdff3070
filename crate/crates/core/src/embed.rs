//! Certified complex embedding of a number field.
//!
//! All arithmetic stays in Q(i) with rational disk radii: a value is a
//! disk (center, radius) guaranteed to contain the true image. Signs and
//! root identities are decided only when the disks separate, with the
//! Mahler root-separation bound closing the loop, so every answer is a
//! proof, not a float heuristic.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::CoreError;
use crate::nf::{NFElem, NumberField};
use crate::poly::Poly;
use crate::rat::{
    dyadic_trunc, parse_decimal, rat_from_i64, rat_one, rat_zero, sqrt_lower, sqrt_upper, Rat,
};

/// Sign of a certifiably real algebraic number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignVal {
    Neg,
    Zero,
    Pos,
}

/// Exact element of Q(i).
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexRat {
    pub re: Rat,
    pub im: Rat,
}

impl ComplexRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        ComplexRat { re, im }
    }
    pub fn zero() -> Self {
        ComplexRat::new(rat_zero(), rat_zero())
    }
    pub fn add(&self, o: &Self) -> Self {
        ComplexRat::new(&self.re + &o.re, &self.im + &o.im)
    }
    pub fn sub(&self, o: &Self) -> Self {
        ComplexRat::new(&self.re - &o.re, &self.im - &o.im)
    }
    pub fn mul(&self, o: &Self) -> Self {
        ComplexRat::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
    pub fn conj(&self) -> Self {
        ComplexRat::new(self.re.clone(), -&self.im)
    }
    /// |z|^2, exact.
    pub fn norm2(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }
    pub fn div(&self, o: &Self) -> Option<Self> {
        let n2 = o.norm2();
        if n2.is_zero() {
            return None;
        }
        let num = self.mul(&o.conj());
        Some(ComplexRat::new(num.re / &n2, num.im / &n2))
    }
    /// Coordinatewise dyadic truncation; the discarded part is < 2^-bits
    /// per coordinate and accounted for by the caller's radius bookkeeping.
    pub fn trunc(&self, bits: u32) -> Self {
        ComplexRat::new(dyadic_trunc(&self.re, bits), dyadic_trunc(&self.im, bits))
    }
}

/// Closed disk in C with rational center and radius, used as a rigorous
/// enclosure: every operation returns a disk containing all possible
/// results.
#[derive(Debug, Clone, PartialEq)]
pub struct Disk {
    pub center: ComplexRat,
    pub radius: Rat,
}

impl Disk {
    pub fn exact(c: ComplexRat) -> Self {
        Disk {
            center: c,
            radius: rat_zero(),
        }
    }
    pub fn add(&self, o: &Self) -> Self {
        Disk {
            center: self.center.add(&o.center),
            radius: &self.radius + &o.radius,
        }
    }
    pub fn mul(&self, o: &Self) -> Self {
        // |c1| r2 + |c2| r1 + r1 r2, with sqrt rounded up
        let a = sqrt_upper(&self.center.norm2(), 64);
        let b = sqrt_upper(&o.center.norm2(), 64);
        Disk {
            center: self.center.mul(&o.center),
            radius: a * &o.radius + b * &self.radius + &self.radius * &o.radius,
        }
    }
    pub fn conj(&self) -> Self {
        Disk {
            center: self.center.conj(),
            radius: self.radius.clone(),
        }
    }
    pub fn scale_rat(&self, q: &Rat) -> Self {
        Disk {
            center: ComplexRat::new(&self.center.re * q, &self.center.im * q),
            radius: &self.radius * q.abs(),
        }
    }
    /// True when the disks cannot share a point: |c1-c2| > r1+r2.
    pub fn disjoint_from(&self, o: &Self) -> bool {
        let d2 = self.center.sub(&o.center).norm2();
        let s = &self.radius + &o.radius;
        d2 > &s * &s
    }
    /// True when every point of the disk has positive (resp. negative)
    /// real part.
    pub fn re_excludes_zero(&self) -> bool {
        self.center.re.abs() > self.radius
    }
    pub fn im_excludes_zero(&self) -> bool {
        self.center.im.abs() > self.radius
    }
}

/// A certified isolating enclosure of one root of the minimal polynomial,
/// refinable on demand.
#[derive(Debug, Clone)]
pub struct EmbeddingContext {
    pub field: Arc<NumberField>,
    pub root: Disk,
    pub precision_bits: u32,
    /// Exact lower bound on the pairwise distance of roots of the minimal
    /// polynomial (Mahler's bound from the discriminant).
    pub separation_lower: Rat,
}

fn eval_complex(p: &Poly<Rat>, z: &ComplexRat) -> ComplexRat {
    let mut acc = ComplexRat::zero();
    for c in p.coeffs.iter().rev() {
        acc = acc.mul(z);
        acc.re = &acc.re + c;
    }
    acc
}

fn pow2_inv(bits: u32) -> Rat {
    use num_bigint::BigInt;
    Rat::new(BigInt::one(), BigInt::one() << bits as usize)
}

/// Mahler: sep(f) > sqrt(3 |disc f|) / (n^((n+2)/2) * ||f||_2^(n-1))
/// for monic squarefree f of degree n >= 2. Every quantity is bounded in
/// the safe direction, so the result is a true lower bound.
fn mahler_separation(m: &Poly<Rat>) -> Rat {
    let n = m.deg();
    if n < 2 {
        return rat_one();
    }
    let disc = m.resultant(&m.derivative()).abs();
    let num = sqrt_lower(&(rat_from_i64(3) * disc), 64);
    let norm2: Rat = m.coeffs.iter().map(|c| c * c).sum();
    let mut denom = sqrt_upper(&rat_from_i64((n as i64).pow(n as u32 + 2)), 64);
    let norm_up = sqrt_upper(&norm2, 64);
    for _ in 0..n - 1 {
        denom = denom * &norm_up;
    }
    num / denom
}

impl EmbeddingContext {
    /// Builds a certified root disk from a decimal hint for theta.
    ///
    /// Newton iteration in exact Q(i) arithmetic with dyadic truncation;
    /// the certificate is the classical bound that some root of m lies
    /// within deg(m) * |m(z)/m'(z)| of z. Fails with PrecisionExhausted
    /// if the hint does not converge.
    pub fn new(
        field: &Arc<NumberField>,
        hint_re: &str,
        hint_im: &str,
        precision_bits: u32,
    ) -> Result<Self, CoreError> {
        let z0 = ComplexRat::new(parse_decimal(hint_re)?, parse_decimal(hint_im)?);
        let sep = mahler_separation(&field.min_poly);
        let mut ctx = EmbeddingContext {
            field: Arc::clone(field),
            root: Disk {
                center: z0,
                radius: rat_one(),
            },
            precision_bits,
            separation_lower: sep,
        };
        ctx.refine(precision_bits)?;
        Ok(ctx)
    }

    /// Re-certifies the root disk with radius below 2^-bits.
    pub fn refine(&mut self, bits: u32) -> Result<(), CoreError> {
        let m = &self.field.min_poly;
        let dm = m.derivative();
        let n = m.deg() as i64;
        let target = pow2_inv(bits);
        let work_bits = bits + 32;
        let mut z = self.root.center.trunc(work_bits);
        for _ in 0..(bits as usize + 64) {
            let fz = eval_complex(m, &z);
            let dfz = eval_complex(&dm, &z);
            let q = match fz.div(&dfz) {
                Some(q) => q,
                None => {
                    return Err(CoreError::PrecisionExhausted { bits });
                }
            };
            // certified: a root of m lies within n*|q| of z
            let r = rat_from_i64(n) * sqrt_upper(&q.norm2(), work_bits.max(64));
            if r <= target {
                self.root = Disk {
                    center: z,
                    radius: r,
                };
                self.precision_bits = self.precision_bits.max(bits);
                return Ok(());
            }
            // truncation moves z by at most 2*2^-work_bits, well inside
            // the next certificate's slack
            z = z.sub(&q).trunc(work_bits);
        }
        Err(CoreError::PrecisionExhausted { bits })
    }

    /// Enclosure of the image of an element under this embedding.
    pub fn embed(&self, a: &NFElem) -> Result<Disk, CoreError> {
        if a.field != self.field {
            return Err(CoreError::Mismatch(String::from(
                "element does not belong to the embedded field",
            )));
        }
        let mut acc = Disk::exact(ComplexRat::zero());
        for c in a.coeffs.iter().rev() {
            acc = acc.mul(&self.root);
            acc.center.re = &acc.center.re + c;
        }
        Ok(acc)
    }

    /// Exact sign of a real element, by precision escalation.
    ///
    /// Zero is decided symbolically. For nonzero input the real interval
    /// eventually excludes zero; if instead the imaginary interval
    /// excludes zero the element was not real. The cap only triggers for
    /// non-real elements whose imaginary part is too small to separate.
    pub fn sign_of(&mut self, a: &NFElem, max_bits: u32) -> Result<SignVal, CoreError> {
        if a.is_zero() {
            return Ok(SignVal::Zero);
        }
        let mut bits = self.precision_bits.max(32);
        loop {
            let d = self.embed(a)?;
            if d.im_excludes_zero() {
                return Err(CoreError::NotReal);
            }
            if d.re_excludes_zero() {
                return Ok(if d.center.re.is_positive() {
                    SignVal::Pos
                } else {
                    SignVal::Neg
                });
            }
            if bits >= max_bits {
                return Err(CoreError::PrecisionExhausted { bits });
            }
            bits = (bits * 2).min(max_bits);
            self.refine(bits)?;
        }
    }

    /// Decides whether `b` embeds to the complex conjugate of theta.
    ///
    /// Both the image of `b` and conj(theta) are roots of the minimal
    /// polynomial, so they are either equal or at least `separation_lower`
    /// apart: shrink both enclosures past half the separation and compare.
    pub fn equals_conj_of_root(&mut self, b: &NFElem, max_bits: u32) -> Result<bool, CoreError> {
        let mut bits = self.precision_bits.max(32);
        loop {
            let db = self.embed(b)?;
            let dc = self.root.conj();
            if db.disjoint_from(&dc) {
                return Ok(false);
            }
            let threshold = &self.separation_lower / rat_from_i64(4);
            if db.radius < threshold && dc.radius < threshold {
                // overlapping enclosures tighter than half the minimum
                // root distance force equality
                return Ok(true);
            }
            if bits >= max_bits {
                return Err(CoreError::PrecisionExhausted { bits });
            }
            bits = (bits * 2).min(max_bits);
            self.refine(bits)?;
        }
    }
}

/// Decides whether an automorphism, given by its image of the generator,
/// acts as complex conjugation under the context's chosen root.
pub fn verify_alpha_is_conjugation(
    ctx: &mut EmbeddingContext,
    alpha_image: &NFElem,
    max_bits: u32,
) -> Result<bool, CoreError> {
    ctx.equals_conj_of_root(alpha_image, max_bits)
}

/// Convenience: signs of several elements under one context.
pub fn signs_of(
    ctx: &mut EmbeddingContext,
    elems: &[NFElem],
    max_bits: u32,
) -> Result<Vec<SignVal>, CoreError> {
    elems.iter().map(|e| ctx.sign_of(e, max_bits)).collect()
}

/// Human-readable decimal rendering of a disk center for reports.
pub fn disk_to_string(d: &Disk, digits: u32) -> String {
    format!(
        "{} + {}i (radius <= {})",
        crate::rat::rat_to_decimal(&d.center.re, digits),
        crate::rat::rat_to_decimal(&d.center.im, digits),
        crate::rat::rat_to_decimal(&d.radius, digits.min(8))
    )
}
