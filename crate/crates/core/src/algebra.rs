//! The crossed product B = (xi, L/k, G): element arithmetic, cocycle
//! validation, regular representation, reduced trace, inversion.
//!
//! Elements keep coefficients on the left of the generators
//! (sum over sigma of x_sigma e_sigma), with the law
//! (x e_sigma)(y e_rho) = x sigma(y) xi_{sigma,rho} e_{sigma rho}.
//! The regular representation views B as a right L-space on {e_sigma}
//! (e_sigma y = sigma(y) e_sigma), which makes left multiplication
//! right-L-linear and lambda multiplicative.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::CoreError;
use crate::field::Field;
use crate::linalg::Mat;
use crate::nf::{in_span, NFElem};
use crate::tower::{Automorphism, Tower};

/// xi_{sigma,rho} indexed like the tower's G list (identity first).
#[derive(Debug, Clone, PartialEq)]
pub struct CocycleTable {
    pub entries: Vec<Vec<NFElem>>,
}

impl CocycleTable {
    pub fn at(&self, i: usize, j: usize) -> &NFElem {
        &self.entries[i][j]
    }
}

/// Checks nonzeroness, normalization and the 2-cocycle identity over all
/// |G|^3 triples, exactly.
pub fn validate_cocycle(t: &Tower, c: &CocycleTable) -> Result<(), CoreError> {
    let g = t.g();
    let n = g.len();
    if c.entries.len() != n || c.entries.iter().any(|row| row.len() != n) {
        return Err(CoreError::Structural(String::from(
            "cocycle table does not cover G x G",
        )));
    }
    for i in 0..n {
        for j in 0..n {
            if c.at(i, j).is_zero() {
                return Err(CoreError::Structural(format!(
                    "cocycle entry ({}, {}) is zero",
                    g[i].name, g[j].name
                )));
            }
        }
    }
    let id = t
        .g_names
        .iter()
        .position(|nm| t.auto(nm).unwrap().is_identity())
        .ok_or_else(|| CoreError::Structural(String::from("G lacks the identity")))?;
    for i in 0..n {
        if c.at(id, i) != c.at(id, id) || c.at(i, id) != &g[i].apply(c.at(id, id)) {
            return Err(CoreError::Structural(format!(
                "cocycle is not normalized at ({}, {})",
                g[i].name, g[i].name
            )));
        }
    }
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                // sigma(xi_{rho,eta}) xi_{sigma,rho eta} = xi_{sigma,rho} xi_{sigma rho,eta}
                let jl = t.g_compose_index(j, l).expect("validated tower");
                let ij = t.g_compose_index(i, j).expect("validated tower");
                let lhs = g[i].apply(c.at(j, l)).mul(c.at(i, jl));
                let rhs = c.at(i, j).mul(c.at(ij, l));
                if lhs != rhs {
                    return Err(CoreError::Structural(format!(
                        "2-cocycle identity fails at ({}, {}, {})",
                        g[i].name, g[j].name, g[l].name
                    )));
                }
            }
        }
    }
    Ok(())
}

/// alpha(xi) xi = 1 for every entry: the condition making inversion on
/// generators compatible with alpha.
pub fn cocycle_unitary(t: &Tower, c: &CocycleTable) -> bool {
    let alpha = t.alpha();
    c.entries
        .iter()
        .flatten()
        .all(|x| alpha.apply(x).mul(x).is_one())
}

/// The algebra with its precomputed group tables. Shared by elements.
#[derive(Debug)]
pub struct Algebra {
    pub tower: Tower,
    pub cocycle: CocycleTable,
    /// Positions such that g[i] g[j] = g[table[i][j]].
    pub comp: Vec<Vec<usize>>,
    /// inv[i] with g[i] g[inv[i]] = id.
    pub inv: Vec<usize>,
    pub id_index: usize,
    /// True when the input table needed the coboundary rescaling.
    pub renormalized: bool,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.tower.field == other.tower.field
            && self.tower.g_names == other.tower.g_names
            && self.cocycle == other.cocycle
    }
}

impl Algebra {
    /// Validates the cocycle and builds the shared tables. An
    /// unnormalized table is rescaled by the constant coboundary
    /// b = xi_{id,id}^{-1} (the algebra is unchanged up to isomorphism).
    pub fn new(tower: Tower, mut cocycle: CocycleTable) -> Result<Arc<Self>, CoreError> {
        let g = tower.g();
        let n = g.len();
        let id_index = g
            .iter()
            .position(|a| a.is_identity())
            .ok_or_else(|| CoreError::Structural(String::from("G lacks the identity")))?;
        let mut renormalized = false;
        if n > 0 && !cocycle.entries.is_empty() && !cocycle.entries[id_index][id_index].is_one() {
            let c0 = &cocycle.entries[id_index][id_index];
            if c0.is_zero() {
                return Err(CoreError::Structural(String::from(
                    "cocycle entry (id, id) is zero",
                )));
            }
            let b = c0.try_inv()?;
            // xi'_{sigma,rho} = b sigma(b) xi_{sigma,rho} b^{-1} = sigma(b) xi
            for (i, row) in cocycle.entries.iter_mut().enumerate() {
                for e in row.iter_mut() {
                    *e = g[i].apply(&b).mul(e);
                }
            }
            renormalized = true;
        }
        validate_cocycle(&tower, &cocycle)?;
        let mut comp = vec![vec![0usize; n]; n];
        let mut inv = vec![0usize; n];
        for i in 0..n {
            for j in 0..n {
                comp[i][j] = tower.g_compose_index(i, j).ok_or_else(|| {
                    CoreError::Structural(String::from("G is not closed under composition"))
                })?;
            }
            inv[i] = tower
                .g_inverse_index(i)
                .ok_or_else(|| CoreError::Structural(String::from("G member lacks an inverse")))?;
        }
        Ok(Arc::new(Algebra {
            tower,
            cocycle,
            comp,
            inv,
            id_index,
            renormalized,
        }))
    }

    pub fn dim(&self) -> usize {
        self.tower.g_names.len()
    }

    pub fn g_autos(&self) -> Vec<&Automorphism> {
        self.tower.g()
    }

    pub fn zero_elem(self: &Arc<Self>) -> AlgElem {
        AlgElem {
            alg: Arc::clone(self),
            coeffs: vec![self.tower.field.zero(); self.dim()],
        }
    }

    /// 1_B = e_id (the table is kept normalized).
    pub fn one_elem(self: &Arc<Self>) -> AlgElem {
        self.basis_elem(self.id_index)
    }

    /// e_sigma for the i-th group member.
    pub fn basis_elem(self: &Arc<Self>, i: usize) -> AlgElem {
        let mut e = self.zero_elem();
        e.coeffs[i] = self.tower.field.one();
        e
    }

    /// x * 1_B for x in L.
    pub fn scalar_elem(self: &Arc<Self>, x: &NFElem) -> AlgElem {
        let mut e = self.zero_elem();
        e.coeffs[self.id_index] = x.clone();
        e
    }
}

/// Element sum over sigma of coeffs[sigma] e_sigma.
#[derive(Debug, Clone)]
pub struct AlgElem {
    pub alg: Arc<Algebra>,
    pub coeffs: Vec<NFElem>,
}

impl PartialEq for AlgElem {
    fn eq(&self, other: &Self) -> bool {
        self.alg == other.alg && self.coeffs == other.coeffs
    }
}

impl AlgElem {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &AlgElem) -> AlgElem {
        AlgElem {
            alg: Arc::clone(&self.alg),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &AlgElem) -> AlgElem {
        AlgElem {
            alg: Arc::clone(&self.alg),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> AlgElem {
        AlgElem {
            alg: Arc::clone(&self.alg),
            coeffs: self.coeffs.iter().map(|a| a.nf_neg()).collect(),
        }
    }

    /// Left scaling by x in L: (x 1_B) * self.
    pub fn scale(&self, x: &NFElem) -> AlgElem {
        AlgElem {
            alg: Arc::clone(&self.alg),
            coeffs: self.coeffs.iter().map(|a| a.mul(x)).collect(),
        }
    }

    pub fn mul(&self, other: &AlgElem) -> AlgElem {
        let alg = &self.alg;
        let g = alg.g_autos();
        let n = alg.dim();
        let mut out = vec![alg.tower.field.zero(); n];
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                let k = alg.comp[i][j];
                let term = self.coeffs[i]
                    .mul(&g[i].apply(&other.coeffs[j]))
                    .mul(alg.cocycle.at(i, j));
                out[k] = out[k].add(&term);
            }
        }
        AlgElem {
            alg: Arc::clone(alg),
            coeffs: out,
        }
    }

    pub fn pow(&self, mut e: u64) -> AlgElem {
        let mut acc = self.alg.one_elem();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    /// Matrix of left multiplication on B as a right L-space with basis
    /// {e_sigma}: entry (pi, rho) is pi^{-1}(x_sigma xi_{sigma,rho}) for
    /// sigma = pi rho^{-1}.
    pub fn regular_rep(&self) -> Mat<NFElem> {
        let alg = &self.alg;
        let g = alg.g_autos();
        let n = alg.dim();
        let mut m = Mat::filled(n, n, alg.tower.field.zero());
        for rho in 0..n {
            for sigma in 0..n {
                if self.coeffs[sigma].is_zero() {
                    continue;
                }
                let pi = alg.comp[sigma][rho];
                let pi_inv = &g[alg.inv[pi]];
                let val = pi_inv.apply(&self.coeffs[sigma].mul(alg.cocycle.at(sigma, rho)));
                *m.at_mut(pi, rho) = m.at(pi, rho).add(&val);
            }
        }
        m
    }

    /// Trace of the regular representation; lands in k (checked).
    pub fn reduced_trace(&self) -> Result<NFElem, CoreError> {
        let m = self.regular_rep();
        let n = self.alg.dim();
        let mut tr = self.alg.tower.field.zero();
        for i in 0..n {
            tr = tr.add(m.at(i, i));
        }
        let kb = self.alg.tower.k_basis();
        if in_span(&tr, &kb).is_none() {
            return Err(CoreError::Inconsistency(String::from(
                "reduced trace fell outside k",
            )));
        }
        Ok(tr)
    }

    pub fn is_invertible(&self) -> bool {
        !self.regular_rep().det().is_zero()
    }

    /// Solve lambda(b) z = coords(1); z holds the right-module
    /// coordinates of b^{-1}, so the left coefficients are sigma(z_sigma).
    pub fn inverse(&self) -> Result<AlgElem, CoreError> {
        let alg = &self.alg;
        let n = alg.dim();
        let m = self.regular_rep();
        let mut rhs = vec![alg.tower.field.zero(); n];
        rhs[alg.id_index] = alg.tower.field.one();
        let z = m.solve(&rhs).ok_or(CoreError::NotInvertible)?;
        let g = alg.g_autos();
        let coeffs = (0..n).map(|s| g[s].apply(&z[s])).collect();
        Ok(AlgElem {
            alg: Arc::clone(alg),
            coeffs,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nf::NumberField;
    use crate::poly::Poly;
    use crate::rat::{rat_from_i64, rat_zero};
    use crate::tower::validate_tower;

    /// FIX-E8 shape: L = Q(zeta_8), G = {id, s: x -> x^5}, alpha: x -> x^7,
    /// xi_{s,s} = i = x^2, all other entries 1.
    pub fn zeta8_algebra() -> Arc<Algebra> {
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
            Automorphism {
                name: String::from("id"),
                image: mk(&[0, 1]),
            },
            Automorphism {
                name: String::from("s"),
                image: mk(&[0, 0, 0, 0, 0, 1]),
            },
            Automorphism {
                name: String::from("a"),
                image: mk(&[0, 0, 0, 0, 0, 0, 0, 1]),
            },
            Automorphism {
                name: String::from("sa"),
                image: mk(&[0, 0, 0, 1]),
            },
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
        let i = mk(&[0, 0, 1]);
        let one = f.one();
        let cocycle = CocycleTable {
            entries: vec![vec![one.clone(), one.clone()], vec![one.clone(), i]],
        };
        Algebra::new(t, cocycle).unwrap()
    }

    #[test]
    fn cocycle_validation() {
        let alg = zeta8_algebra();
        assert_eq!(validate_cocycle(&alg.tower, &alg.cocycle), Ok(()));
        assert!(cocycle_unitary(&alg.tower, &alg.cocycle));
        // zero entry rejected
        let mut bad = alg.cocycle.clone();
        bad.entries[1][1] = alg.tower.field.zero();
        assert!(validate_cocycle(&alg.tower, &bad).is_err());
        // alpha(2) * 2 = 4: not unitary
        let mut nonunit = alg.cocycle.clone();
        nonunit.entries[1][1] = alg.tower.field.from_rat(rat_from_i64(2));
        assert!(!cocycle_unitary(&alg.tower, &nonunit));
    }

    #[test]
    fn unit_law_and_generator_squares() {
        let alg = zeta8_algebra();
        let one = alg.one_elem();
        let es = alg.basis_elem(1);
        assert_eq!(one.mul(&es), es);
        assert_eq!(es.mul(&one), es);
        // e_s * e_s = i e_id
        let i_elem = alg.tower.field.element(vec![rat_zero(), rat_zero(), rat_from_i64(1)]);
        assert_eq!(es.mul(&es), alg.scalar_elem(&i_elem));
        // e_s * (x e_id) = x^5 e_s
        let x = alg.tower.field.generator();
        let prod = es.mul(&alg.scalar_elem(&x));
        let mut expect = alg.zero_elem();
        expect.coeffs[1] = x.pow(5);
        assert_eq!(prod, expect);
    }

    #[test]
    fn regular_rep_matches_spec_examples() {
        let alg = zeta8_algebra();
        let f = &alg.tower.field;
        // lambda(1) = I
        let id = alg.one_elem().regular_rep();
        assert_eq!(*id.at(0, 0), f.one());
        assert_eq!(*id.at(1, 1), f.one());
        assert!(id.at(0, 1).is_zero() && id.at(1, 0).is_zero());
        // lambda(e_s) = [[0, i],[1, 0]]
        let m = alg.basis_elem(1).regular_rep();
        let i_elem = f.element(vec![rat_zero(), rat_zero(), rat_from_i64(1)]);
        assert!(m.at(0, 0).is_zero() && m.at(1, 1).is_zero());
        assert_eq!(*m.at(0, 1), i_elem);
        assert_eq!(*m.at(1, 0), f.one());
        // lambda(y e_id) = diag(y, s(y))
        let y = f.generator();
        let dm = alg.scalar_elem(&y).regular_rep();
        assert_eq!(*dm.at(0, 0), y);
        assert_eq!(*dm.at(1, 1), y.pow(5));
    }

    #[test]
    fn rep_is_multiplicative() {
        let alg = zeta8_algebra();
        let f = &alg.tower.field;
        let mut a = alg.basis_elem(1);
        a.coeffs[0] = f.generator();
        let mut b = alg.one_elem();
        b.coeffs[1] = f.generator().pow(3).add(&f.one());
        let lhs = a.mul(&b).regular_rep();
        let rhs = a.regular_rep().matmul(&b.regular_rep());
        assert_eq!(lhs.data, rhs.data);
    }

    #[test]
    fn reduced_trace_examples() {
        let alg = zeta8_algebra();
        let f = &alg.tower.field;
        // Trd(1) = n = 2
        assert_eq!(
            alg.one_elem().reduced_trace().unwrap(),
            f.from_rat(rat_from_i64(2))
        );
        // Trd(e_s) = 0
        assert!(alg.basis_elem(1).reduced_trace().unwrap().is_zero());
        // Trd(x e_id) = x + x^5
        let tr = alg.scalar_elem(&f.generator()).reduced_trace().unwrap();
        assert_eq!(tr, f.generator().add(&f.generator().pow(5)));
    }

    #[test]
    fn inversion() {
        let alg = zeta8_algebra();
        let one = alg.one_elem();
        assert_eq!(one.inverse().unwrap(), one);
        // e_s^{-1} = -i e_s
        let es = alg.basis_elem(1);
        let inv = es.inverse().unwrap();
        let minus_i = alg
            .tower
            .field
            .element(vec![rat_zero(), rat_zero(), rat_from_i64(-1)]);
        assert_eq!(inv, es.scale(&minus_i));
        assert_eq!(es.mul(&inv), one);
        assert_eq!(inv.mul(&es), one);
        assert!(alg.zero_elem().inverse().is_err());
        assert!(!alg.zero_elem().is_invertible());
    }

    #[test]
    fn renormalization_of_scaled_cocycle() {
        // double every entry: same algebra after the coboundary rescale
        let alg = zeta8_algebra();
        let two = alg.tower.field.from_rat(rat_from_i64(2));
        let scaled = CocycleTable {
            entries: alg
                .cocycle
                .entries
                .iter()
                .map(|row| row.iter().map(|e| e.mul(&two)).collect())
                .collect(),
        };
        let alg2 = Algebra::new(alg.tower.clone(), scaled).unwrap();
        assert!(alg2.renormalized);
        assert_eq!(alg2.cocycle, alg.cocycle);
    }
}
