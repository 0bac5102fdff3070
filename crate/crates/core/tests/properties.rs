//! Randomized invariants: field axioms, representation homomorphism,
//! trace symmetry, embedding soundness, signature congruence invariance.

use std::sync::Arc;

use proptest::prelude::*;

use divcode_core::algebra::{AlgElem, Algebra};
use divcode_core::embed::EmbeddingContext;
use divcode_core::field::Field;
use divcode_core::involution::build_tau;
use divcode_core::linalg::Mat;
use divcode_core::nf::{NFElem, NumberField};
use divcode_core::poly::Poly;
use divcode_core::positivity::{signature_from_charpoly, trace_form_gram};
use divcode_core::rat::{rat_from_i64, Rat};

fn zeta8_field() -> Arc<NumberField> {
    NumberField::new(Poly::new(vec![
        rat_from_i64(1),
        rat_from_i64(0),
        rat_from_i64(0),
        rat_from_i64(0),
        rat_from_i64(1),
    ]))
    .unwrap()
}


fn zeta8_algebra() -> Arc<Algebra> {
    use divcode_core::algebra::CocycleTable;
    use divcode_core::tower::{Automorphism, Tower};
    let f = zeta8_field();
    let auto = |name: &str, img: Vec<i64>| Automorphism {
        name: name.to_owned(),
        image: f.element(img.into_iter().map(rat_from_i64).collect()),
    };
    let tower = Tower {
        field: Arc::clone(&f),
        sqrt_md: f.element(vec![rat_from_i64(0), rat_from_i64(0), rat_from_i64(1)]),
        d: f.from_rat(rat_from_i64(1)),
        autos: vec![
            auto("id", vec![0, 1]),
            auto("s", vec![0, -1]),
            auto("a", vec![0, 0, 0, -1]),
            auto("sa", vec![0, 0, 0, 1]),
        ],
        g_names: vec!["id".to_owned(), "s".to_owned()],
        alpha_name: "a".to_owned(),
    };
    let one = f.one();
    let i = f.element(vec![rat_from_i64(0), rat_from_i64(0), rat_from_i64(1)]);
    let cocycle = CocycleTable {
        entries: vec![vec![one.clone(), one.clone()], vec![one, i]],
    };
    Algebra::new(tower, cocycle).unwrap()
}

fn rat_strategy() -> impl Strategy<Value = Rat> {
    (-40i64..=40, 1i64..=7).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn elem_strategy(field: Arc<NumberField>) -> impl Strategy<Value = NFElem> {
    proptest::collection::vec(rat_strategy(), field.degree).prop_map(move |coeffs| {
        field.element(coeffs)
    })
}

fn alg_elem_strategy(alg: Arc<Algebra>) -> impl Strategy<Value = AlgElem> {
    let field = Arc::clone(&alg.tower.field);
    proptest::collection::vec(elem_strategy(field), alg.dim()).prop_map(move |coeffs| {
        let mut e = alg.zero_elem();
        e.coeffs = coeffs;
        e
    })
}

/// Schoolbook polynomial multiplication followed by long division by
/// the minimal polynomial; independent of the precomputed reduction
/// table used by try_mul.
fn oracle_mul(a: &NFElem, b: &NFElem) -> NFElem {
    let pa = Poly::new(a.coeffs.clone());
    let pb = Poly::new(b.coeffs.clone());
    let prod = pa.mul(&pb);
    let (_, rem) = prod.divrem(&a.field.min_poly);
    let mut coeffs = rem.coeffs;
    coeffs.resize(a.field.degree, Rat::from_integer(0.into()));
    a.field.element(coeffs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(
        (a, b, c) in Just(zeta8_field()).prop_flat_map(|f| (
            elem_strategy(Arc::clone(&f)),
            elem_strategy(Arc::clone(&f)),
            elem_strategy(f),
        ))
    ) {
        let ab = a.try_mul(&b).unwrap();
        let ba = b.try_mul(&a).unwrap();
        prop_assert_eq!(ab.clone(), ba);
        let left = ab.try_mul(&c).unwrap();
        let right = a.try_mul(&b.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let distl = a.try_mul(&b.try_add(&c).unwrap()).unwrap();
        let distr = a.try_mul(&b).unwrap().try_add(&a.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(distl, distr);
    }

    #[test]
    fn inverse_round_trip(
        a in Just(zeta8_field()).prop_flat_map(elem_strategy)
    ) {
        prop_assume!(!a.is_zero());
        let inv = a.try_inv().unwrap();
        let one = a.field.one();
        prop_assert_eq!(a.try_mul(&inv).unwrap(), one);
    }

    #[test]
    fn mul_matches_schoolbook_oracle(
        (a, b) in Just(zeta8_field()).prop_flat_map(|f| (
            elem_strategy(Arc::clone(&f)),
            elem_strategy(f),
        ))
    ) {
        prop_assert_eq!(a.try_mul(&b).unwrap(), oracle_mul(&a, &b));
    }

    #[test]
    fn regular_rep_is_multiplicative(
        (a, b) in Just(zeta8_algebra()).prop_flat_map(|alg| (
            alg_elem_strategy(Arc::clone(&alg)),
            alg_elem_strategy(alg),
        ))
    ) {
        let lhs = a.mul(&b).regular_rep();
        let rhs = a.regular_rep().matmul(&b.regular_rep());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reduced_trace_is_symmetric(
        (a, b) in Just(zeta8_algebra()).prop_flat_map(|alg| (
            alg_elem_strategy(Arc::clone(&alg)),
            alg_elem_strategy(alg),
        ))
    ) {
        let ab = a.mul(&b).reduced_trace().unwrap();
        let ba = b.mul(&a).reduced_trace().unwrap();
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn embedding_is_multiplicative_within_radii(
        (a, b) in Just(zeta8_field()).prop_flat_map(|f| (
            elem_strategy(Arc::clone(&f)),
            elem_strategy(f),
        ))
    ) {
        let field = Arc::clone(&a.field);
        let ctx = EmbeddingContext::new(
            &field,
            "0.70710678118654752440",
            "0.70710678118654752440",
            96,
        )
        .unwrap();
        let da = ctx.embed(&a).unwrap();
        let db = ctx.embed(&b).unwrap();
        let dprod = ctx.embed(&a.try_mul(&b).unwrap()).unwrap();
        // both disks enclose the true image of a*b, so they intersect
        let widened = da.mul(&db);
        prop_assert!(!dprod.disjoint_from(&widened));
    }

    #[test]
    fn signature_is_congruence_invariant(
        scales in proptest::collection::vec(
            (1i64..=9, prop::bool::ANY).prop_map(|(n, neg)| if neg { -n } else { n }),
            8,
        )
    ) {
        let alg = zeta8_algebra();
        let tau = build_tau(&alg).unwrap();
        let gram = trace_form_gram(&tau).unwrap();
        let field = Arc::clone(&alg.tower.field);
        let n = gram.rows;
        // congruence by an invertible diagonal rational matrix
        let mut scaled = gram.clone();
        for i in 0..n {
            for j in 0..n {
                let s = field.from_rat(rat_from_i64(scales[i % scales.len()] * scales[j % scales.len()]));
                *scaled.at_mut(i, j) = scaled.at(i, j).try_mul(&s).unwrap();
            }
        }
        let mut ctx = EmbeddingContext::new(
            &field,
            "0.70710678118654752440",
            "0.70710678118654752440",
            64,
        )
        .unwrap();
        let d1 = signature_from_charpoly(&gram.charpoly(), &mut ctx, 4096).unwrap();
        let d2 = signature_from_charpoly(&scaled.charpoly(), &mut ctx, 4096).unwrap();
        prop_assert_eq!(d1.kind, d2.kind);
        prop_assert_eq!(d1.signature, d2.signature);
    }
}

/// Associativity of the crossed product on the full generator set is
/// equivalent to the cocycle identity; spot check at random triples.
#[test]
fn product_is_associative_on_basis_triples() {
    let alg = zeta8_algebra();
    let n = alg.dim();
    let theta = alg.scalar_elem(&alg.tower.field.generator());
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let a = alg.basis_elem(i).mul(&theta);
                let b = alg.basis_elem(j);
                let c = theta.mul(&alg.basis_elem(l));
                assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            }
        }
    }
}

#[test]
fn gram_matrix_is_symmetric() {
    let alg = zeta8_algebra();
    let tau = build_tau(&alg).unwrap();
    let gram = trace_form_gram(&tau).unwrap();
    assert_eq!(gram, gram.transpose());
    let _: &Mat<NFElem> = &gram;
}
