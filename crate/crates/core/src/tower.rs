//! The field chain k0 < k = k0(sqrt(-d)) < L and its automorphisms.
//!
//! L is one absolute extension Q[x]/(m); the intermediate fields are cut
//! out as fixed spaces of automorphism sets. An automorphism is stored as
//! the image of the generator; applying it is polynomial substitution,
//! which is automatically a ring homomorphism once the image is a root
//! of m.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;


use crate::error::CoreError;
use crate::field::Field;
use crate::linalg::Mat;
use crate::nf::{NFElem, NumberField};
use crate::nfroots::conjugates_of_generator;
use crate::poly::Poly;
use crate::rat::{rat_zero, Rat};
use crate::report::TheoremReport;

/// Automorphism of L, determined by the image of the generator.
#[derive(Debug, Clone, PartialEq)]
pub struct Automorphism {
    pub name: String,
    pub image: NFElem,
}

impl Automorphism {
    /// sigma(sum c_j theta^j) = sum c_j image^j, by Horner.
    pub fn apply(&self, a: &NFElem) -> NFElem {
        let mut acc = self.image.field.zero();
        for c in a.coeffs.iter().rev() {
            acc = acc.mul(&self.image);
            acc.coeffs[0] = &acc.coeffs[0] + c;
        }
        acc
    }

    /// Matrix of the automorphism on the power basis (columns image^j).
    pub fn matrix(&self) -> Mat<Rat> {
        let n = self.image.field.degree;
        let mut m = Mat::filled(n, n, rat_zero());
        let mut pw = self.image.field.one();
        for j in 0..n {
            for r in 0..n {
                *m.at_mut(r, j) = pw.coeffs[r].clone();
            }
            pw = pw.mul(&self.image);
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        self.image == self.image.field.generator()
    }
}

/// (f o g)(theta) = f(g(theta)).
pub fn compose(f: &Automorphism, g: &Automorphism, name: String) -> Automorphism {
    Automorphism {
        name,
        image: f.apply(&g.image),
    }
}

/// The tower data: L, sqrt(-d), the full supplied automorphism set, the
/// subgroup G (by name) and the distinguished conjugation alpha.
#[derive(Debug, Clone)]
pub struct Tower {
    pub field: Arc<NumberField>,
    pub sqrt_md: NFElem,
    pub d: NFElem,
    pub autos: Vec<Automorphism>,
    pub g_names: Vec<String>,
    pub alpha_name: String,
}

impl Tower {
    pub fn auto(&self, name: &str) -> Option<&Automorphism> {
        self.autos.iter().find(|a| a.name == name)
    }

    pub fn alpha(&self) -> &Automorphism {
        self.auto(&self.alpha_name).expect("validated tower")
    }

    pub fn g(&self) -> Vec<&Automorphism> {
        self.g_names
            .iter()
            .map(|n| self.auto(n).expect("validated tower"))
            .collect()
    }

    /// Index into g_names of sigma*rho, by image comparison.
    pub fn g_compose_index(&self, i: usize, j: usize) -> Option<usize> {
        let g = self.g();
        let img = g[i].apply(&g[j].image);
        g.iter().position(|a| a.image == img)
    }

    /// Index of the inverse of g[i] within G.
    pub fn g_inverse_index(&self, i: usize) -> Option<usize> {
        let gen = self.field.generator();
        let g = self.g();
        (0..g.len()).find(|&j| g[i].apply(&g[j].image) == gen)
    }

    /// Q-basis of the subspace fixed pointwise by every map in `names`.
    pub fn fixed_field_basis(&self, autos: &[&Automorphism]) -> Vec<NFElem> {
        fixed_space(&self.field, autos)
    }

    /// Basis of k0: fixed field of the group generated by G and alpha.
    pub fn k0_basis(&self) -> Vec<NFElem> {
        let mut gens: Vec<&Automorphism> = self.g();
        gens.push(self.alpha());
        self.fixed_field_basis(&gens)
    }

    /// Basis of k: fixed field of G.
    pub fn k_basis(&self) -> Vec<NFElem> {
        self.fixed_field_basis(&self.g())
    }

    /// Basis of L0: fixed field of alpha alone.
    pub fn l0_basis(&self) -> Vec<NFElem> {
        self.fixed_field_basis(&[self.alpha()])
    }
}

/// Kernel of the stacked maps (M_sigma - I), as field elements.
pub fn fixed_space(field: &Arc<NumberField>, autos: &[&Automorphism]) -> Vec<NFElem> {
    let n = field.degree;
    if autos.is_empty() {
        let mut basis = Vec::with_capacity(n);
        let mut pw = field.one();
        for _ in 0..n {
            basis.push(pw.clone());
            pw = pw.mul(&field.generator());
        }
        return basis;
    }
    let mut data = Vec::with_capacity(autos.len() * n * n);
    for a in autos {
        let m = a.matrix();
        for r in 0..n {
            for c in 0..n {
                let mut v = m.at(r, c).clone();
                if r == c {
                    v = v - Rat::from_integer(1.into());
                }
                data.push(v);
            }
        }
    }
    let stacked = Mat::new(autos.len() * n, n, data);
    stacked
        .kernel()
        .into_iter()
        .map(|v| NFElem {
            field: Arc::clone(field),
            coeffs: v,
        })
        .collect()
}

/// Closure of a set of automorphisms under composition.
pub fn group_closure(gens: &[Automorphism]) -> Vec<Automorphism> {
    let mut out: Vec<Automorphism> = Vec::new();
    if let Some(g0) = gens.first() {
        out.push(Automorphism {
            name: String::from("id"),
            image: g0.image.field.generator(),
        });
    }
    let mut changed = true;
    while changed {
        changed = false;
        let snapshot = out.clone();
        for g in gens {
            for h in &snapshot {
                let img = g.apply(&h.image);
                if !out.iter().any(|a| a.image == img) {
                    out.push(Automorphism {
                        name: format!("{}*{}", g.name, h.name),
                        image: img,
                    });
                    changed = true;
                }
            }
        }
    }
    out
}

/// Full structural validation of a tower. Every failure names a witness.
pub fn validate_tower(t: &Tower) -> Result<(), CoreError> {
    let field = &t.field;
    let gen = field.generator();
    // automorphism images are roots of m and pairwise distinct
    for a in &t.autos {
        let mut acc = field.zero();
        for c in field.min_poly.coeffs.iter().rev() {
            acc = acc.mul(&a.image);
            acc.coeffs[0] = &acc.coeffs[0] + c;
        }
        if !acc.is_zero() {
            return Err(CoreError::Structural(format!(
                "automorphism '{}': image is not a root of the minimal polynomial",
                a.name
            )));
        }
    }
    for i in 0..t.autos.len() {
        for j in i + 1..t.autos.len() {
            if t.autos[i].image == t.autos[j].image {
                return Err(CoreError::Structural(format!(
                    "automorphisms '{}' and '{}' coincide",
                    t.autos[i].name, t.autos[j].name
                )));
            }
        }
    }
    // at least one identity must be present
    if !t.autos.iter().any(|a| a.image == gen) {
        return Err(CoreError::Structural(String::from(
            "automorphism set lacks the identity",
        )));
    }
    // closure under composition and existence of inverses
    for a in &t.autos {
        for b in &t.autos {
            let img = a.apply(&b.image);
            if !t.autos.iter().any(|c| c.image == img) {
                return Err(CoreError::Structural(format!(
                    "composition '{}' after '{}' leaves the automorphism set",
                    a.name, b.name
                )));
            }
        }
        if !t.autos.iter().any(|b| a.apply(&b.image) == gen) {
            return Err(CoreError::Structural(format!(
                "automorphism '{}' has no inverse in the set",
                a.name
            )));
        }
    }
    // named references resolve
    for n in &t.g_names {
        if t.auto(n).is_none() {
            return Err(CoreError::Structural(format!("unknown group member '{n}'")));
        }
    }
    if t.auto(&t.alpha_name).is_none() {
        return Err(CoreError::Structural(format!(
            "unknown alpha '{}'",
            t.alpha_name
        )));
    }
    // G itself is a group (closed, has id)
    let g = t.g();
    for i in 0..g.len() {
        for j in 0..g.len() {
            if t.g_compose_index(i, j).is_none() {
                return Err(CoreError::Structural(format!(
                    "G is not closed: '{}' after '{}'",
                    g[i].name, g[j].name
                )));
            }
        }
        if t.g_inverse_index(i).is_none() {
            return Err(CoreError::Structural(format!(
                "G member '{}' has no inverse in G",
                g[i].name
            )));
        }
    }
    if !g.iter().any(|a| a.image == gen) {
        return Err(CoreError::Structural(String::from("G lacks the identity")));
    }
    // sqrt_md^2 = -d, d nonzero, alpha(sqrt_md) = -sqrt_md (so k/k0 is
    // honestly quadratic), G fixes sqrt_md (so G fixes k pointwise)
    if t.d.is_zero() {
        return Err(CoreError::Structural(String::from(
            "d = 0: k is not a quadratic extension of k0",
        )));
    }
    let sq = t.sqrt_md.mul(&t.sqrt_md);
    if sq != t.d.neg() {
        return Err(CoreError::Structural(String::from(
            "sqrt_md squared does not equal -d",
        )));
    }
    let alpha = t.alpha();
    if alpha.apply(&t.sqrt_md) != t.sqrt_md.neg() {
        return Err(CoreError::Structural(String::from(
            "alpha does not negate sqrt(-d); k/k0 degenerate",
        )));
    }
    for sigma in &t.g() {
        if sigma.apply(&t.sqrt_md) != t.sqrt_md {
            return Err(CoreError::Structural(format!(
                "G member '{}' moves sqrt(-d), so G does not fix k",
                sigma.name
            )));
        }
    }
    // d lies in k0: fixed by every supplied automorphism
    for a in &t.autos {
        if a.apply(&t.d) != t.d {
            return Err(CoreError::Structural(format!(
                "d is moved by automorphism '{}'; d must lie in k0",
                a.name
            )));
        }
    }
    // |G| = [L:k] exactly (G is the Galois group of L/k)
    let k_dim = t.k_basis().len();
    if g.len() * k_dim != field.degree {
        return Err(CoreError::Structural(format!(
            "|G| * dim(k) = {} * {} does not equal [L:Q] = {}",
            g.len(),
            k_dim,
            field.degree
        )));
    }
    Ok(())
}

/// Does alpha commute with every element of G? On failure returns the
/// name of an offending sigma.
pub fn condition_commute(t: &Tower) -> Result<(), String> {
    let alpha = t.alpha();
    for sigma in &t.g() {
        let lhs = alpha.apply(&sigma.image);
        let rhs = sigma.apply(&alpha.image);
        if lhs != rhs {
            return Err(sigma.name.clone());
        }
    }
    Ok(())
}

/// Writes a as x + y*sqrt(-d) with x, y in the span of `l0`; None when a
/// does not decompose (then L != L0(sqrt(-d))).
pub fn decompose(
    a: &NFElem,
    l0: &[NFElem],
    sqrt_md: &NFElem,
) -> Option<(NFElem, NFElem)> {
    let field = &a.field;
    let n = field.degree;
    let mut cols: Vec<NFElem> = l0.to_vec();
    for b in l0 {
        cols.push(b.mul(sqrt_md));
    }
    let mut data = Vec::with_capacity(n * cols.len());
    for r in 0..n {
        for c in &cols {
            data.push(c.coeffs[r].clone());
        }
    }
    let m = Mat::new(n, cols.len(), data);
    let sol = m.solve(&a.coeffs)?;
    let half = l0.len();
    let mut x = field.zero();
    let mut y = field.zero();
    for (i, b) in l0.iter().enumerate() {
        x = x.add(&b.mul(&field.from_rat(sol[i].clone())));
        y = y.add(&b.mul(&field.from_rat(sol[half + i].clone())));
    }
    Some((x, y))
}

/// Monic minimal polynomial of a over the Q-span of `basis` (a field
/// containing 1), by exact linear algebra on powers of a.
pub fn minimal_polynomial(
    a: &NFElem,
    basis: &[NFElem],
) -> Result<Poly<NFElem>, CoreError> {
    let field = &a.field;
    let n = field.degree;
    let mut powers = vec![field.one()];
    for t in 1..=n {
        powers.push(powers[t - 1].mul(a));
        // unknowns: coords of c_0..c_{t-1} in the subfield basis, with
        // sum c_i a^i = -a^t
        let cols: Vec<NFElem> = (0..t)
            .flat_map(|i| basis.iter().map(move |b| (i, b)))
            .map(|(i, b)| powers[i].mul(b))
            .collect();
        let mut data = Vec::with_capacity(n * cols.len());
        for r in 0..n {
            for c in &cols {
                data.push(c.coeffs[r].clone());
            }
        }
        let m = Mat::new(n, cols.len(), data);
        let rhs: Vec<Rat> = powers[t].coeffs.iter().map(|c| -c).collect();
        if let Some(sol) = m.solve(&rhs) {
            let mut coeffs = Vec::with_capacity(t + 1);
            for i in 0..t {
                let mut ci = field.zero();
                for (j, b) in basis.iter().enumerate() {
                    ci = ci.add(&b.mul(&field.from_rat(sol[i * basis.len() + j].clone())));
                }
                coeffs.push(ci);
            }
            coeffs.push(field.one());
            return Ok(Poly::new(coeffs));
        }
    }
    Err(CoreError::Inconsistency(String::from(
        "no annihilating polynomial up to the field degree",
    )))
}

/// The two lifts of f through L = L0 + L0*sqrt(-d): x + y*sqrt(-d) maps
/// to f(x) + f(y)*sqrt(-d) (plus sign) or f(x) - f(y)*sqrt(-d) (minus).
fn lift_through_decomposition(
    f: &Automorphism,
    l0: &[NFElem],
    sqrt_md: &NFElem,
    plus: bool,
) -> Option<NFElem> {
    let field = &f.image.field;
    let theta = field.generator();
    let (x, y) = decompose(&theta, l0, sqrt_md)?;
    let fy = f.apply(&y).mul(sqrt_md);
    Some(if plus {
        f.apply(&x).add(&fy)
    } else {
        f.apply(&x).sub(&fy)
    })
}

/// Verifies the doubling of Gal(L/k) to Aut(L/k0).
///
/// For each f in G the decomposition L = L0 + L0*sqrt(-d) yields the two
/// maps f' and f''; each must be an automorphism of L fixing k0, the 2|G|
/// maps must be pairwise distinct, and independent root-finding must
/// confirm no further automorphism over k0 exists.
pub fn lemma21_check(t: &Tower) -> TheoremReport {
    const NAME: &str = "galois-doubling";
    let field = &t.field;
    let n = field.degree;
    let theta = field.generator();
    let l0 = t.l0_basis();
    if 2 * l0.len() != n || decompose(&theta, &l0, &t.sqrt_md).is_none() {
        return TheoremReport::fail(
            NAME,
            String::from("decomposition L = L0 + L0*sqrt(-d)"),
            String::from("L does not decompose over L0 and sqrt(-d)"),
        );
    }
    let k0 = t.k0_basis();
    let expected = t.g_names.len() * 2;
    if k0.len() * expected != n {
        return TheoremReport::fail(
            NAME,
            String::from("degree bookkeeping"),
            format!("[L:k0] = {} but 2|G| = {}", n / k0.len(), expected),
        );
    }
    let mut lifted: Vec<Automorphism> = Vec::new();
    for f in &t.g() {
        for plus in [true, false] {
            let tag = if plus { "'" } else { "''" };
            let img = match lift_through_decomposition(f, &l0, &t.sqrt_md, plus) {
                Some(i) => i,
                None => {
                    return TheoremReport::fail(
                        NAME,
                        String::from("lift construction"),
                        format!("{}{} is not defined", f.name, tag),
                    )
                }
            };
            let cand = Automorphism {
                name: format!("{}{}", f.name, tag),
                image: img,
            };
            // an automorphism must send theta to a root of m; the lift
            // must also agree with substitution on the whole power basis
            let mut acc = field.zero();
            for c in field.min_poly.coeffs.iter().rev() {
                acc = acc.mul(&cand.image);
                acc.coeffs[0] = &acc.coeffs[0] + c;
            }
            let mut ok = acc.is_zero();
            if ok {
                let mut pw = field.one();
                for _ in 0..n {
                    let (px, py) = match decompose(&pw, &l0, &t.sqrt_md) {
                        Some(p) => p,
                        None => {
                            ok = false;
                            break;
                        }
                    };
                    let fy = f.apply(&py).mul(&t.sqrt_md);
                    let lift_val = if plus {
                        f.apply(&px).add(&fy)
                    } else {
                        f.apply(&px).sub(&fy)
                    };
                    if lift_val != cand.apply(&pw) {
                        ok = false;
                        break;
                    }
                    pw = pw.mul(&theta);
                }
            }
            if ok {
                for b in &k0 {
                    if cand.apply(b) != *b {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                return TheoremReport::fail(
                    NAME,
                    String::from("lift validation"),
                    format!("{} is not an automorphism of L fixing k0", cand.name),
                );
            }
            lifted.push(cand);
        }
    }
    for i in 0..lifted.len() {
        for j in i + 1..lifted.len() {
            if lifted[i].image == lifted[j].image {
                return TheoremReport::fail(
                    NAME,
                    String::from("distinctness"),
                    format!("{} coincides with {}", lifted[i].name, lifted[j].name),
                );
            }
        }
    }
    // independent count: all roots of m in L that fix k0
    let discovered = match conjugates_of_generator(field) {
        Ok(r) => r,
        Err(e) => {
            return TheoremReport::fail(
                NAME,
                String::from("exhaustive automorphism discovery"),
                format!("{e}"),
            )
        }
    };
    let over_k0 = discovered
        .iter()
        .filter(|img| {
            let a = Automorphism {
                name: String::new(),
                image: (*img).clone(),
            };
            k0.iter().all(|b| a.apply(b) == *b)
        })
        .count();
    if over_k0 != expected {
        return TheoremReport::fail(
            NAME,
            String::from("exhaustive automorphism count"),
            format!("found {over_k0} automorphisms over k0, expected {expected}"),
        );
    }
    TheoremReport::pass(
        NAME,
        format!("{expected} distinct automorphisms over k0; count matches [L:k0]"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nf::in_span;
    use crate::rat::rat_from_i64;

    fn nf(coeffs: &[i64]) -> Arc<NumberField> {
        NumberField::new(Poly::new(coeffs.iter().map(|&c| rat_from_i64(c)).collect())).unwrap()
    }

    fn auto(f: &Arc<NumberField>, name: &str, img: &[i64]) -> Automorphism {
        Automorphism {
            name: String::from(name),
            image: f.element(img.iter().map(|&c| rat_from_i64(c)).collect()),
        }
    }

    /// Q(zeta_8), G = {id, x -> x^5}, alpha = x -> x^7, d = 1.
    fn zeta8_tower() -> Tower {
        let f = nf(&[1, 0, 0, 0, 1]);
        let autos = vec![
            auto(&f, "id", &[0, 1]),
            auto(&f, "s", &[0, 0, 0, 0, 0, 1]),
            auto(&f, "a", &[0, 0, 0, 0, 0, 0, 0, 1]),
            auto(&f, "sa", &[0, 0, 0, 1]),
        ];
        Tower {
            sqrt_md: f.element(vec![rat_zero(), rat_zero(), rat_from_i64(1)]),
            d: f.from_rat(rat_from_i64(1)),
            field: f,
            autos,
            g_names: vec![String::from("id"), String::from("s")],
            alpha_name: String::from("a"),
        }
    }

    #[test]
    fn apply_and_compose() {
        let t = zeta8_tower();
        let s = t.auto("s").unwrap();
        let a = t.auto("a").unwrap();
        // s(a(x)) = (x^7)^5 = x^35 = x^3
        let c = compose(s, a, String::from("sa"));
        assert_eq!(c.image, t.auto("sa").unwrap().image);
        // compose is associative on the group
        let left = compose(&compose(s, a, String::new()), s, String::new());
        let right = compose(s, &compose(a, s, String::new()), String::new());
        assert_eq!(left.image, right.image);
    }

    #[test]
    fn tower_validates() {
        let t = zeta8_tower();
        assert_eq!(validate_tower(&t), Ok(()));
    }

    #[test]
    fn bad_image_rejected() {
        let mut t = zeta8_tower();
        t.autos[1].image = t.field.from_rat(rat_from_i64(2)); // not a root
        assert!(matches!(validate_tower(&t), Err(CoreError::Structural(_))));
    }

    #[test]
    fn fixed_space_dimensions() {
        let t = zeta8_tower();
        // full group fixes only Q
        let all: Vec<&Automorphism> = t.autos.iter().collect();
        assert_eq!(fixed_space(&t.field, &all).len(), 1);
        // k = fixed field of G = Q(i), dimension 2
        assert_eq!(t.k_basis().len(), 2);
        // L0 = fixed field of alpha = Q(sqrt 2), dimension 2
        assert_eq!(t.l0_basis().len(), 2);
        // dimension * group order = [L:Q] for each subgroup
        assert_eq!(t.k_basis().len() * 2, 4);
    }

    #[test]
    fn commutation_holds_in_abelian_group() {
        let t = zeta8_tower();
        assert_eq!(condition_commute(&t), Ok(()));
    }

    #[test]
    fn minimal_polynomials() {
        let t = zeta8_tower();
        let f = &t.field;
        // sqrt2 = x - x^3 has X^2 - 2 over Q
        let s2 = f.element(vec![
            rat_zero(),
            rat_from_i64(1),
            rat_zero(),
            rat_from_i64(-1),
        ]);
        let mp = minimal_polynomial(&s2, &[f.one()]).unwrap();
        assert_eq!(mp.deg(), 2);
        assert_eq!(mp.coeffs[0], f.from_rat(rat_from_i64(-2)));
        assert!(mp.coeffs[1].is_zero());
        // rational a over Q gives X - a
        let mp2 = minimal_polynomial(&f.from_rat(rat_from_i64(5)), &[f.one()]).unwrap();
        assert_eq!(mp2.deg(), 1);
        assert_eq!(mp2.coeffs[0], f.from_rat(rat_from_i64(-5)));
        // the generator over Q gives m itself
        let mp3 = minimal_polynomial(&f.generator(), &[f.one()]).unwrap();
        assert_eq!(mp3.deg(), 4);
    }

    #[test]
    fn decomposition_roundtrip() {
        let t = zeta8_tower();
        let l0 = t.l0_basis();
        let theta = t.field.generator();
        let (x, y) = decompose(&theta, &l0, &t.sqrt_md).unwrap();
        assert_eq!(x.add(&y.mul(&t.sqrt_md)), theta);
        assert!(in_span(&x, &l0).is_some());
        assert!(in_span(&y, &l0).is_some());
    }

    #[test]
    fn doubling_check_on_klein_four() {
        let t = zeta8_tower();
        let r = lemma21_check(&t);
        assert_eq!(r.status, crate::report::CheckStatus::Pass);
    }

    #[test]
    fn group_closure_generates_whole_group() {
        let t = zeta8_tower();
        let gens = vec![t.auto("s").unwrap().clone(), t.auto("a").unwrap().clone()];
        assert_eq!(group_closure(&gens).len(), 4);
    }
}
