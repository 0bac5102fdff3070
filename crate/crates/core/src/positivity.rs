//! Positivity of the involution at the real ordering, decided two ways:
//! exactly via the involution trace form (characteristic polynomial and
//! Descartes counting), and independently via transport to an
//! alpha-Hermitian matrix (leading principal minors). Hosts the theorem
//! checkers tying the tower, involution and positivity layers together.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::embed::{EmbeddingContext, SignVal};
use crate::error::CoreError;
use crate::field::Field;
use crate::involution::{build_tau, validate_involution, Involution};
use crate::linalg::Mat;
use crate::nf::{in_span, NFElem};
use crate::nfroots::{conjugates_of_generator, roots_in_subfield_count};
use crate::poly::Poly;
use crate::report::TheoremReport;
use crate::tower::{condition_commute, minimal_polynomial, Automorphism};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DefKind {
    PosDef,
    NegDef,
    Indefinite,
    Degenerate,
}

/// Definiteness with the exact signature when the form is nondegenerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Definiteness {
    pub kind: DefKind,
    pub signature: Option<(usize, usize)>,
}

/// The alpha-Hermitian matrix transporting tau to conjugate transposition
/// through the regular representation.
#[derive(Debug, Clone)]
pub struct TransportMatrix {
    pub a: Mat<NFElem>,
    pub hermitian_normalized: bool,
}

/// Gram matrix of T(z, w) = (Trd(tau(z) w) + Trd(tau(w) z)) / 2 on the
/// Q-basis {theta^i e_sigma}. Entries are checked to lie in k0.
pub fn trace_form_gram(tau: &Involution) -> Result<Mat<NFElem>, CoreError> {
    let alg = &tau.alg;
    let basis = tau.q_basis();
    let nn = basis.len();
    let field = &alg.tower.field;
    let half = field.from_rat(crate::rat::Rat::new(1.into(), 2.into()));
    let k0 = alg.tower.k0_basis();
    let mut m = Mat::filled(nn, nn, field.zero());
    for i in 0..nn {
        for j in i..nn {
            let a = tau.apply(&basis[i]).mul(&basis[j]).reduced_trace()?;
            let b = tau.apply(&basis[j]).mul(&basis[i]).reduced_trace()?;
            let v = a.add(&b).mul(&half);
            if in_span(&v, &k0).is_none() {
                return Err(CoreError::Inconsistency(format!(
                    "Gram entry ({i}, {j}) lies outside k0",
                )));
            }
            *m.at_mut(i, j) = v.clone();
            *m.at_mut(j, i) = v;
        }
    }
    Ok(m)
}

fn sign_variations(signs: &[SignVal]) -> usize {
    let mut last: Option<SignVal> = None;
    let mut count = 0;
    for &s in signs {
        if s == SignVal::Zero {
            continue;
        }
        if let Some(prev) = last {
            if prev != s {
                count += 1;
            }
        }
        last = Some(s);
    }
    count
}

/// Exact signature of a symmetric (or Hermitian-transported) matrix with
/// real eigenvalues from its characteristic polynomial: Descartes' rule
/// is exact on real-rooted polynomials.
pub fn signature_from_charpoly(
    p: &Poly<NFElem>,
    ctx: &mut EmbeddingContext,
    max_bits: u32,
) -> Result<Definiteness, CoreError> {
    let m = p.deg();
    let mut signs = Vec::with_capacity(m + 1);
    for c in &p.coeffs {
        signs.push(ctx.sign_of(c, max_bits)?);
    }
    let zeros = signs
        .iter()
        .position(|&s| s != SignVal::Zero)
        .unwrap_or(m + 1);
    let pos = {
        let seq: Vec<SignVal> = signs.iter().rev().copied().collect();
        sign_variations(&seq)
    };
    let neg = {
        // p(-x): flip the sign of odd-degree coefficients
        let seq: Vec<SignVal> = signs
            .iter()
            .enumerate()
            .rev()
            .map(|(k, &s)| match (k % 2, s) {
                (1, SignVal::Pos) => SignVal::Neg,
                (1, SignVal::Neg) => SignVal::Pos,
                (_, s) => s,
            })
            .collect();
        sign_variations(&seq)
    };
    debug_assert_eq!(pos + neg + zeros, m);
    let kind = if zeros > 0 {
        DefKind::Degenerate
    } else if pos == m {
        DefKind::PosDef
    } else if neg == m {
        DefKind::NegDef
    } else {
        DefKind::Indefinite
    };
    Ok(Definiteness {
        kind,
        signature: if zeros == 0 { Some((pos, neg)) } else { None },
    })
}

/// Definiteness of a symmetric matrix over k0 via its exact
/// characteristic polynomial.
pub fn definiteness(
    gram: &Mat<NFElem>,
    ctx: &mut EmbeddingContext,
    max_bits: u32,
) -> Result<Definiteness, CoreError> {
    signature_from_charpoly(&gram.charpoly(), ctx, max_bits)
}

/// Trace-form positivity decision.
pub fn is_positive(
    tau: &Involution,
    ctx: &mut EmbeddingContext,
    max_bits: u32,
) -> Result<bool, CoreError> {
    let gram = trace_form_gram(tau)?;
    Ok(definiteness(&gram, ctx, max_bits)?.kind == DefKind::PosDef)
}

fn adjoint_alpha(m: &Mat<NFElem>, alpha: &Automorphism) -> Mat<NFElem> {
    let t = m.transpose();
    Mat::new(
        t.rows,
        t.cols,
        t.data.iter().map(|e| alpha.apply(e)).collect(),
    )
}

/// Solves A lambda(tau(b)) = lambda(b)^{t,alpha} A over L for A on an
/// algebra generating set, asserts the solution space is 1-dimensional
/// and normalizes A to be alpha-Hermitian.
pub fn transport_hermitian(tau: &Involution) -> Result<TransportMatrix, CoreError> {
    let alg = &tau.alg;
    let field = &alg.tower.field;
    let alpha = alg.tower.alpha();
    let n = alg.dim();
    let mut gens = vec![alg.scalar_elem(&field.generator())];
    for i in 0..n {
        gens.push(alg.basis_elem(i));
    }
    let unknowns = n * n;
    let mut rows: Vec<NFElem> = Vec::new();
    let mut row_count = 0usize;
    for b in &gens {
        let m1 = tau.apply(b).regular_rep();
        let m2 = adjoint_alpha(&b.regular_rep(), alpha);
        for i in 0..n {
            for j in 0..n {
                // coefficient of A_{rs}: m1[s][j] when r = i, minus
                // m2[i][r] when s = j
                for r in 0..n {
                    for s in 0..n {
                        let mut v = field.zero();
                        if r == i {
                            v = v.add(m1.at(s, j));
                        }
                        if s == j {
                            v = v.sub(m2.at(i, r));
                        }
                        rows.push(v);
                    }
                }
                row_count += 1;
            }
        }
    }
    let system = Mat::new(row_count, unknowns, rows);
    let kernel = system.kernel();
    if kernel.len() != 1 {
        return Err(CoreError::Inconsistency(format!(
            "transport solution space has dimension {}, expected 1",
            kernel.len()
        )));
    }
    let mut a = Mat::new(n, n, kernel.into_iter().next().unwrap());
    // A^{t,alpha} = c A with alpha(c) c = 1; symmetrize to Hermitian
    let adj = adjoint_alpha(&a, alpha);
    let pivot = a
        .data
        .iter()
        .position(|e| !e.is_zero())
        .ok_or_else(|| CoreError::Inconsistency(String::from("transport matrix is zero")))?;
    let c = adj.data[pivot].mul(&a.data[pivot].try_inv()?);
    for (x, y) in a.data.iter().zip(adj.data.iter()) {
        if x.mul(&c) != *y {
            return Err(CoreError::Inconsistency(String::from(
                "transport matrix adjoint is not a scalar multiple",
            )));
        }
    }
    if !c.is_one() {
        let one_plus_c = field.one().add(&c);
        let factor = if one_plus_c.is_zero() {
            // skew-Hermitian: twist by sqrt(-d)
            alg.tower.sqrt_md.clone()
        } else {
            one_plus_c
        };
        a = Mat::new(n, n, a.data.iter().map(|e| e.mul(&factor)).collect());
    }
    let adj2 = adjoint_alpha(&a, alpha);
    if adj2.data != a.data {
        return Err(CoreError::Structural(String::from(
            "transport matrix could not be normalized to alpha-Hermitian",
        )));
    }
    Ok(TransportMatrix {
        a,
        hermitian_normalized: true,
    })
}

fn leading_minor(a: &Mat<NFElem>, k: usize) -> NFElem {
    let mut data = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            data.push(a.at(i, j).clone());
        }
    }
    Mat::new(k, k, data).det()
}

/// Definiteness of the normalized alpha-Hermitian matrix by leading
/// principal minors (they lie in the alpha-fixed real subfield). A zero
/// minor falls back to the characteristic polynomial, whose coefficients
/// are also alpha-fixed.
pub fn transport_definiteness(
    tm: &TransportMatrix,
    ctx: &mut EmbeddingContext,
    max_bits: u32,
) -> Result<Definiteness, CoreError> {
    if !tm.hermitian_normalized {
        return Err(CoreError::Parameter(String::from(
            "transport matrix must be normalized first",
        )));
    }
    let n = tm.a.rows;
    let mut signs = Vec::with_capacity(n);
    for k in 1..=n {
        let mk = leading_minor(&tm.a, k);
        let s = ctx.sign_of(&mk, max_bits)?;
        if s == SignVal::Zero {
            return signature_from_charpoly(&tm.a.charpoly(), ctx, max_bits);
        }
        signs.push(s);
    }
    let pos_def = signs.iter().all(|&s| s == SignVal::Pos);
    let neg_def = signs
        .iter()
        .enumerate()
        .all(|(i, &s)| (i % 2 == 0) == (s == SignVal::Neg));
    let kind = if pos_def {
        DefKind::PosDef
    } else if neg_def {
        DefKind::NegDef
    } else {
        DefKind::Indefinite
    };
    Ok(Definiteness {
        kind,
        signature: if pos_def || neg_def {
            Some(if pos_def { (n, 0) } else { (0, n) })
        } else {
            // minors alone do not give the full signature; take the
            // characteristic polynomial route for it
            return signature_from_charpoly(&tm.a.charpoly(), ctx, max_bits);
        },
    })
}

/// Transport-side positivity: the Hermitian matrix is definite (either
/// sign representative, since A is only determined up to a k0 scalar)
/// and d is positive, so alpha really embeds as complex conjugation.
pub fn transport_positive(
    tau: &Involution,
    ctx: &mut EmbeddingContext,
    max_bits: u32,
) -> Result<bool, CoreError> {
    let d_sign = ctx.sign_of(&tau.alg.tower.d, max_bits)?;
    if d_sign != SignVal::Pos {
        return Ok(false);
    }
    let tm = transport_hermitian(tau)?;
    let def = transport_definiteness(&tm, ctx, max_bits)?;
    Ok(matches!(def.kind, DefKind::PosDef | DefKind::NegDef))
}

/// positivity of the built involution implies d is positive; the
/// converse (an observation at fixture scale, not a theorem instance)
/// is recorded in the detail.
pub fn prop22_check(
    alg: &Arc<Algebra>,
    ctx: &mut EmbeddingContext,
    max_bits: u32,
) -> TheoremReport {
    const NAME: &str = "positivity-implies-d-positive";
    let tau = match build_tau(alg) {
        Ok(t) => t,
        Err(e) => return TheoremReport::vacuous(NAME, format!("no involution: {e}")),
    };
    if !validate_involution(&tau).passed() {
        return TheoremReport::vacuous(
            NAME,
            String::from("constructed map is not an involution; hypothesis not met"),
        );
    }
    let d_sign = match ctx.sign_of(&alg.tower.d, max_bits) {
        Ok(s) => s,
        Err(e) => return TheoremReport::fail(NAME, String::from("sign of d"), format!("{e}")),
    };
    let pos = match is_positive(&tau, ctx, max_bits) {
        Ok(p) => p,
        Err(e) => return TheoremReport::fail(NAME, String::from("is_positive"), format!("{e}")),
    };
    if pos && d_sign != SignVal::Pos {
        return TheoremReport::fail(
            NAME,
            String::from("is_positive implies d in P"),
            format!("trace form positive definite but sign(d) = {d_sign:?}"),
        );
    }
    TheoremReport::pass(
        NAME,
        format!(
            "is_positive = {pos}, sign(d) = {d_sign:?}; converse observed {}",
            if d_sign == SignVal::Pos && !pos {
                "to fail for the built involution (existential direction not machine-checkable)"
            } else {
                "consistently"
            }
        ),
    )
}

/// Bounded-height search for a primitive element of the span of `basis`
/// over the span of `sub`.
fn primitive_element(
    basis: &[NFElem],
    sub: &[NFElem],
) -> Result<(NFElem, Poly<NFElem>), CoreError> {
    let target = basis.len() / sub.len().max(1);
    // single basis vectors first, then small integer combinations
    let mut candidates: Vec<NFElem> = basis.to_vec();
    for h in 1..=8i64 {
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i == j {
                    continue;
                }
                let c = basis[i].add(
                    &basis[j].mul(&basis[j].field.from_rat(crate::rat::rat_from_i64(h))),
                );
                candidates.push(c);
            }
        }
    }
    for a in candidates {
        let mp = minimal_polynomial(&a, sub)?;
        if mp.deg() == target {
            return Ok((a, mp));
        }
    }
    Err(CoreError::SearchExhausted(String::from(
        "no primitive element within the height bound",
    )))
}

/// If the trace form is positive then L0/k0 is Galois: check that the
/// minimal polynomial of a primitive element of L0 splits inside L0.
pub fn prop23_check(
    alg: &Arc<Algebra>,
    ctx: &mut EmbeddingContext,
    max_bits: u32,
) -> TheoremReport {
    const NAME: &str = "positivity-forces-L0-galois";
    let tau = match build_tau(alg) {
        Ok(t) => t,
        Err(e) => return TheoremReport::vacuous(NAME, format!("no involution: {e}")),
    };
    if !validate_involution(&tau).passed() {
        return TheoremReport::vacuous(NAME, String::from("involution invalid; hypothesis not met"));
    }
    match is_positive(&tau, ctx, max_bits) {
        Ok(true) => {}
        Ok(false) => {
            return TheoremReport::vacuous(NAME, String::from("trace form not positive definite"))
        }
        Err(e) => return TheoremReport::fail(NAME, String::from("is_positive"), format!("{e}")),
    }
    let t = &alg.tower;
    let l0 = t.l0_basis();
    let k0 = t.k0_basis();
    let (a, mp) = match primitive_element(&l0, &k0) {
        Ok(p) => p,
        Err(e) => {
            return TheoremReport::fail(NAME, String::from("primitive element"), format!("{e}"))
        }
    };
    let count = match roots_in_subfield_count(&mp, &l0, &t.field) {
        Ok(c) => c,
        Err(e) => {
            return TheoremReport::fail(NAME, String::from("root counting"), format!("{e}"))
        }
    };
    if count == mp.deg() {
        TheoremReport::pass(
            NAME,
            format!(
                "minimal polynomial of degree {} splits in L0 (primitive element {:?} coords)",
                mp.deg(),
                a.coeffs.len()
            ),
        )
    } else {
        TheoremReport::fail(
            NAME,
            String::from("min poly of a primitive element splits in L0"),
            format!("only {count} of {} roots lie in L0", mp.deg()),
        )
    }
}

/// When tau is positive, alpha commutes with the whole of Aut(L/k0),
/// enumerated independently by root-finding.
pub fn cor24_check(
    alg: &Arc<Algebra>,
    ctx: &mut EmbeddingContext,
    max_bits: u32,
) -> TheoremReport {
    const NAME: &str = "alpha-central-in-aut";
    let tau = match build_tau(alg) {
        Ok(t) => t,
        Err(e) => return TheoremReport::vacuous(NAME, format!("no involution: {e}")),
    };
    if !validate_involution(&tau).passed() {
        return TheoremReport::vacuous(NAME, String::from("involution invalid; hypothesis not met"));
    }
    match is_positive(&tau, ctx, max_bits) {
        Ok(true) => {}
        Ok(false) => {
            return TheoremReport::vacuous(NAME, String::from("trace form not positive definite"))
        }
        Err(e) => return TheoremReport::fail(NAME, String::from("is_positive"), format!("{e}")),
    }
    let t = &alg.tower;
    let k0 = t.k0_basis();
    let alpha = t.alpha();
    let roots = match conjugates_of_generator(&t.field) {
        Ok(r) => r,
        Err(e) => {
            return TheoremReport::fail(NAME, String::from("automorphism discovery"), format!("{e}"))
        }
    };
    let mut checked = 0usize;
    for img in roots {
        let gamma = Automorphism {
            name: String::from("gamma"),
            image: img,
        };
        if !k0.iter().all(|b| gamma.apply(b) == *b) {
            continue;
        }
        checked += 1;
        if alpha.apply(&gamma.image) != gamma.apply(&alpha.image) {
            return TheoremReport::fail(
                NAME,
                String::from("alpha commutes with Gal(L/k0)"),
                format!("witness image {:?}", gamma.image.coeffs),
            );
        }
    }
    TheoremReport::pass(NAME, format!("alpha commutes with all {checked} members of Gal(L/k0)"))
}

/// The closing equivalence: the construction yields a positive unitary
/// involution iff alpha commutes with G. The left side operationalizes
/// "carries a positive unitary involution" through the one construction
/// in scope.
pub fn iff_check(
    alg: &Arc<Algebra>,
    ctx: &mut EmbeddingContext,
    max_bits: u32,
) -> TheoremReport {
    const NAME: &str = "positive-involution-iff-commutation";
    // the equivalence lives in the totally imaginary setting k =
    // k0(sqrt(-d)) with d > 0; a real k is outside its hypotheses
    match ctx.sign_of(&alg.tower.d, max_bits) {
        Ok(SignVal::Pos) => {}
        Ok(_) => {
            return TheoremReport::vacuous(
                NAME,
                String::from("d is not positive, so k is not totally imaginary; hypothesis not met"),
            )
        }
        Err(e) => {
            return TheoremReport::fail(NAME, String::from("sign of d"), format!("{e}"));
        }
    }
    let rhs = condition_commute(&alg.tower).is_ok();
    let lhs = match build_tau(alg) {
        Err(_) => false,
        Ok(tau) => {
            if !validate_involution(&tau).passed() {
                false
            } else {
                match is_positive(&tau, ctx, max_bits) {
                    Ok(p) => p,
                    Err(e) => {
                        return TheoremReport::fail(
                            NAME,
                            String::from("positivity decision"),
                            format!("{e}"),
                        )
                    }
                }
            }
        }
    };
    if lhs == rhs {
        TheoremReport::pass(
            NAME,
            format!(
                "construction positive = {lhs}, commutation = {rhs} (LHS uses the inversion construction)"
            ),
        )
    } else {
        let witness = match condition_commute(&alg.tower) {
            Err(sigma) => format!("alpha fails to commute with '{sigma}'"),
            Ok(()) => String::from("commutation holds but construction is not positive"),
        };
        TheoremReport::fail(NAME, format!("LHS = {lhs}, RHS = {rhs}"), witness)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::CocycleTable;
    use crate::nf::NumberField;
    use crate::rat::rat_from_i64;
    use crate::report::CheckStatus;
    use crate::tower::{validate_tower, Tower};

    fn zeta8_algebra() -> Arc<Algebra> {
        let f = NumberField::new(Poly::new(vec![
            rat_from_i64(1),
            rat_from_i64(0),
            rat_from_i64(0),
            rat_from_i64(0),
            rat_from_i64(1),
        ]))
        .unwrap();
        let mk = |img: &[i64]| f.element(img.iter().map(|&c| rat_from_i64(c)).collect());
        let autos = vec![
            Automorphism { name: String::from("id"), image: mk(&[0, 1]) },
            Automorphism { name: String::from("s"), image: mk(&[0, 0, 0, 0, 0, 1]) },
            Automorphism { name: String::from("a"), image: mk(&[0, 0, 0, 0, 0, 0, 0, 1]) },
            Automorphism { name: String::from("sa"), image: mk(&[0, 0, 0, 1]) },
        ];
        let t = Tower {
            sqrt_md: mk(&[0, 0, 1]),
            d: f.from_rat(rat_from_i64(1)),
            field: f.clone(),
            autos,
            g_names: vec![String::from("id"), String::from("s")],
            alpha_name: String::from("a"),
        };
        validate_tower(&t).unwrap();
        let cocycle = CocycleTable {
            entries: vec![vec![f.one(), f.one()], vec![f.one(), mk(&[0, 0, 1])]],
        };
        Algebra::new(t, cocycle).unwrap()
    }

    fn zeta8_ctx(alg: &Arc<Algebra>) -> EmbeddingContext {
        EmbeddingContext::new(
            &alg.tower.field,
            "0.7071067811865476",
            "0.7071067811865476",
            64,
        )
        .unwrap()
    }

    /// B = k = Q(sqrt 2), d = -2: the real-field counterexample shape.
    fn real_algebra() -> Arc<Algebra> {
        let f = NumberField::new(Poly::new(vec![
            rat_from_i64(-2),
            rat_from_i64(0),
            rat_from_i64(1),
        ]))
        .unwrap();
        let autos = vec![
            Automorphism {
                name: String::from("id"),
                image: f.generator(),
            },
            Automorphism {
                name: String::from("a"),
                image: f.generator().nf_neg(),
            },
        ];
        let t = Tower {
            sqrt_md: f.generator(),
            d: f.from_rat(rat_from_i64(-2)),
            field: f.clone(),
            autos,
            g_names: vec![String::from("id")],
            alpha_name: String::from("a"),
        };
        validate_tower(&t).unwrap();
        let cocycle = CocycleTable {
            entries: vec![vec![f.one()]],
        };
        Algebra::new(t, cocycle).unwrap()
    }

    fn real_ctx(alg: &Arc<Algebra>) -> EmbeddingContext {
        EmbeddingContext::new(&alg.tower.field, "1.4142135623730951", "0.0", 64).unwrap()
    }

    #[test]
    fn real_field_gram_is_hyperbolic() {
        // q(a + b sqrt2) = a^2 - 2 b^2: Gram diag(1, -2) pattern
        let alg = real_algebra();
        let tau = build_tau(&alg).unwrap();
        let gram = trace_form_gram(&tau).unwrap();
        let f = &alg.tower.field;
        // basis {1, x}: T(1,1) = 1, T(x,x) = -2, T(1,x) = 0 (up to the
        // trace normalization Trd = id here since n = 1)
        assert_eq!(*gram.at(0, 0), f.from_rat(rat_from_i64(1)));
        assert_eq!(*gram.at(1, 1), f.from_rat(rat_from_i64(-2)));
        assert!(gram.at(0, 1).is_zero());
        let mut ctx = real_ctx(&alg);
        let def = definiteness(&gram, &mut ctx, 4096).unwrap();
        assert_eq!(def.kind, DefKind::Indefinite);
        assert_eq!(def.signature, Some((1, 1)));
        assert!(!is_positive(&tau, &mut ctx, 4096).unwrap());
    }

    #[test]
    fn gaussian_scalars_are_positive() {
        let alg = zeta8_algebra();
        let tau = build_tau(&alg).unwrap();
        let mut ctx = zeta8_ctx(&alg);
        assert!(is_positive(&tau, &mut ctx, 4096).unwrap());
        let gram = trace_form_gram(&tau).unwrap();
        let def = definiteness(&gram, &mut ctx, 4096).unwrap();
        assert_eq!(def.kind, DefKind::PosDef);
        assert_eq!(def.signature, Some((8, 0)));
    }

    #[test]
    fn descartes_on_small_matrices() {
        let alg = real_algebra();
        let f = &alg.tower.field;
        let mut ctx = real_ctx(&alg);
        let diag = |a: i64, b: i64| {
            Mat::new(
                2,
                2,
                vec![
                    f.from_rat(rat_from_i64(a)),
                    f.zero(),
                    f.zero(),
                    f.from_rat(rat_from_i64(b)),
                ],
            )
        };
        assert_eq!(
            definiteness(&diag(1, 1), &mut ctx, 4096).unwrap().kind,
            DefKind::PosDef
        );
        assert_eq!(
            definiteness(&diag(-1, -3), &mut ctx, 4096).unwrap().kind,
            DefKind::NegDef
        );
        assert_eq!(
            definiteness(&diag(1, -2), &mut ctx, 4096).unwrap().kind,
            DefKind::Indefinite
        );
        assert_eq!(
            definiteness(&diag(1, 0), &mut ctx, 4096).unwrap().kind,
            DefKind::Degenerate
        );
    }

    #[test]
    fn transport_on_trivial_algebra() {
        let alg = real_algebra();
        let tau = build_tau(&alg).unwrap();
        let tm = transport_hermitian(&tau).unwrap();
        assert_eq!(tm.a.rows, 1);
        assert!(tm.hermitian_normalized);
        // 1x1: A is a nonzero alpha-fixed scalar
        assert!(!tm.a.at(0, 0).is_zero());
        // d < 0 makes the transport-side positivity fail
        let mut ctx = real_ctx(&alg);
        assert!(!transport_positive(&tau, &mut ctx, 4096).unwrap());
    }

    #[test]
    fn transport_agrees_with_trace_form() {
        let alg = zeta8_algebra();
        let tau = build_tau(&alg).unwrap();
        let tm = transport_hermitian(&tau).unwrap();
        let alpha = alg.tower.alpha();
        let adj = adjoint_alpha(&tm.a, alpha);
        assert_eq!(adj.data, tm.a.data);
        let mut ctx = zeta8_ctx(&alg);
        let def = transport_definiteness(&tm, &mut ctx, 4096).unwrap();
        assert!(matches!(def.kind, DefKind::PosDef | DefKind::NegDef));
        assert!(transport_positive(&tau, &mut ctx, 4096).unwrap());
    }

    #[test]
    fn theorem_checkers_on_the_two_shapes() {
        let alg = zeta8_algebra();
        let mut ctx = zeta8_ctx(&alg);
        assert_eq!(prop22_check(&alg, &mut ctx, 4096).status, CheckStatus::Pass);
        assert_eq!(prop23_check(&alg, &mut ctx, 4096).status, CheckStatus::Pass);
        assert_eq!(cor24_check(&alg, &mut ctx, 4096).status, CheckStatus::Pass);
        assert_eq!(iff_check(&alg, &mut ctx, 4096).status, CheckStatus::Pass);

        let real = real_algebra();
        let mut rctx = real_ctx(&real);
        // positivity fails, so 2.3/2.4 are vacuous and 2.2 passes by
        // contrapositive; the iff needs alpha to be conjugation, so it is
        // exercised only on d > 0 fixtures (CLI gates it); here both
        // sides still agree? no: commutation holds but positivity fails,
        // which is exactly why the d < 0 case is excluded by the
        // alpha-is-conjugation precondition.
        assert_eq!(prop22_check(&real, &mut rctx, 4096).status, CheckStatus::Pass);
        assert_eq!(
            prop23_check(&real, &mut rctx, 4096).status,
            CheckStatus::HypothesisNotMet
        );
        assert_eq!(
            cor24_check(&real, &mut rctx, 4096).status,
            CheckStatus::HypothesisNotMet
        );
    }
}
