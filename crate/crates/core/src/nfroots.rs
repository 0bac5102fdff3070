//! Roots of a polynomial with coefficients in a number field L, inside L.
//!
//! Trager's method: push the problem down to Q through the norm. For a
//! squarefree monic h over L and a shift s with D(X) = Res_y(m(y), h(X - s y))
//! squarefree, the irreducible factors of D of degree [L:Q] detect the
//! roots of h lying in L via one gcd over L[X] each. Everything is exact.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::CoreError;
use crate::field::Field;
use crate::nf::{in_span, NFElem, NumberField};
use crate::poly::Poly;
use crate::rat::{rat_from_i64, rat_one, rat_zero, Rat};
use crate::zfactor::factors_up_to_degree;

/// N_{L/Q}(a) = Res(m, rep(a)), exact. m monic makes the resultant the
/// plain product of rep(a) over the roots of m.
pub fn norm_elem(a: &NFElem) -> Rat {
    if a.is_zero() {
        return rat_zero();
    }
    let rep = Poly::new(a.coeffs.clone());
    a.field.min_poly.resultant(&rep)
}

/// Exact Lagrange interpolation through (x_i, v_i) with distinct x_i.
fn interpolate(points: &[(Rat, Rat)]) -> Poly<Rat> {
    let mut acc = Poly::<Rat>::zero();
    for (i, (xi, vi)) in points.iter().enumerate() {
        if vi.is_zero() {
            continue;
        }
        let mut num = Poly::constant(rat_one());
        let mut den = rat_one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            num = num.mul(&Poly::new(vec![-xj, rat_one()]));
            den = den * (xi - xj);
        }
        acc = acc.add(&num.scale(&(vi / den)));
    }
    acc
}

fn lift_to_l(p: &Poly<Rat>, field: &Arc<NumberField>) -> Poly<NFElem> {
    Poly::new(p.coeffs.iter().map(|c| field.from_rat(c.clone())).collect())
}

/// Evaluates h at an element of L (Horner).
fn eval_in_l(h: &Poly<NFElem>, at: &NFElem) -> NFElem {
    let mut acc = at.field.zero();
    for c in h.coeffs.iter().rev() {
        acc = acc.mul(at).add(c);
    }
    acc
}

/// D(X) = Res_y(m(y), h(X - s y)), computed by evaluation at rational
/// points and interpolation. h must be monic, so D is monic of degree
/// deg(h) * [L:Q].
fn norm_resultant(h: &Poly<NFElem>, s: i64, field: &Arc<NumberField>) -> Poly<Rat> {
    let n = field.degree;
    let d = h.deg() * n;
    let theta = field.generator();
    let shift = theta.clone().mul(&field.from_rat(rat_from_i64(-s)));
    let mut points = Vec::with_capacity(d + 1);
    for j in 0..=(d as i64) {
        let xj = rat_from_i64(j);
        // value of h at (x_j - s theta) in L
        let at = field.from_rat(xj.clone()).add(&shift);
        let v = eval_in_l(h, &at);
        points.push((xj, norm_elem(&v)));
    }
    interpolate(&points)
}

/// All roots of h lying in L (h arbitrary nonzero over L; output is the
/// distinct roots, no multiplicities).
pub fn roots_in_field(h: &Poly<NFElem>, field: &Arc<NumberField>) -> Result<Vec<NFElem>, CoreError> {
    if h.is_zero() {
        return Err(CoreError::Parameter(String::from(
            "cannot enumerate roots of the zero polynomial",
        )));
    }
    if h.deg() == 0 {
        return Ok(Vec::new());
    }
    let hm = h.monic();
    let sf = hm.squarefree_part();
    if sf.deg() == 1 {
        return Ok(vec![sf.coeffs[0].neg()]);
    }
    let n = field.degree;
    if n == 1 {
        // L = Q: rational roots read off from the Q-level factorization
        let q = Poly::new(sf.coeffs.iter().map(|c| c.coeffs[0].clone()).collect());
        let fs = factors_up_to_degree(&q, 1);
        return Ok(fs
            .into_iter()
            .filter(|f| f.deg() == 1)
            .map(|f| field.from_rat(-&f.coeffs[0] / &f.coeffs[1]))
            .collect());
    }
    let theta = field.generator();
    for mag in 1..=24i64 {
        for &s in &[mag, -mag] {
            let dd = norm_resultant(&sf, s, field);
            if dd.gcd(&dd.derivative()).deg() > 0 {
                continue; // norm not squarefree; try the next shift
            }
            let cands = factors_up_to_degree(&dd, n);
            let mut roots = Vec::new();
            let shift_elem = theta.clone().mul(&field.from_rat(rat_from_i64(s)));
            for g in cands.iter().filter(|g| g.deg() == n) {
                // gcd over L[X] of h(X) and g(X + s*theta)
                let gl = lift_to_l(g, field);
                let sub = Poly::new(vec![shift_elem.clone(), field.one()]);
                let shifted = gl.compose(&sub);
                let common = sf.gcd(&shifted);
                if common.deg() == 1 {
                    let cm = common.monic();
                    roots.push(cm.coeffs[0].neg());
                }
            }
            return Ok(roots);
        }
    }
    Err(CoreError::SearchExhausted(String::from(
        "no squarefree-norm shift found for root isolation",
    )))
}

/// Count of roots of p lying in the Q-span of `basis`, with multiplicity.
/// p has coefficients in L (expected inside the span, not re-checked here).
pub fn roots_in_subfield_count(
    p: &Poly<NFElem>,
    basis: &[NFElem],
    field: &Arc<NumberField>,
) -> Result<usize, CoreError> {
    let roots = roots_in_field(p, field)?;
    let mut count = 0usize;
    for r in roots {
        if in_span(&r, basis).is_none() {
            continue;
        }
        // multiplicity by repeated exact division by (X - r)
        let lin = Poly::new(vec![r.neg(), field.one()]);
        let mut cur = p.clone();
        loop {
            let (q, rem) = cur.divrem(&lin);
            if !rem.is_zero() {
                break;
            }
            count += 1;
            cur = q;
            if cur.deg() == 0 {
                break;
            }
        }
    }
    Ok(count)
}

/// All roots of the defining polynomial inside L itself: the images of
/// the generator under every automorphism of L over Q.
pub fn conjugates_of_generator(field: &Arc<NumberField>) -> Result<Vec<NFElem>, CoreError> {
    let h = lift_to_l(&field.min_poly, field);
    roots_in_field(&h, field)
}
