//! Exact factorization of rational polynomials: modular factorization,
//! Hensel lifting and subset recombination (Zassenhaus).  Degrees in this
//! crate stay small (norm polynomials up to degree ~64), so the plain
//! subset search with a trailing-coefficient divisibility filter is fast
//! enough in practice.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::Poly;
use crate::rat::Rat;

// ---------------------------------------------------------------------------
// integer polynomials (constant term first, trimmed)
// ---------------------------------------------------------------------------

pub type ZPoly = Vec<BigInt>;

fn ztrim(mut v: ZPoly) -> ZPoly {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn zdeg(v: &ZPoly) -> usize {
    v.len().saturating_sub(1)
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(out)
}

fn zcontent(v: &ZPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(c);
    }
    g
}

fn zprimitive(v: &ZPoly) -> ZPoly {
    let g = zcontent(v);
    if g.is_zero() || g.is_one() {
        return v.clone();
    }
    v.iter().map(|c| c / &g).collect()
}

/// Exact division test over Z: returns the quotient if divisor | dividend.
fn zdivides(dividend: &ZPoly, divisor: &ZPoly) -> Option<ZPoly> {
    if divisor.is_empty() {
        return None;
    }
    if dividend.is_empty() {
        return Some(Vec::new());
    }
    if dividend.len() < divisor.len() {
        return None;
    }
    let dl = divisor.last().unwrap();
    let mut rem = dividend.clone();
    let qlen = rem.len() - zdeg(divisor);
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let top = rem[i + zdeg(divisor)].clone();
        if top.is_zero() {
            continue;
        }
        let (q, r) = top.div_rem(dl);
        if !r.is_zero() {
            return None;
        }
        for (j, d) in divisor.iter().enumerate() {
            rem[i + j] -= &q * d;
        }
        quot[i] = q;
    }
    if rem.iter().all(|c| c.is_zero()) {
        Some(ztrim(quot))
    } else {
        None
    }
}

/// sqrt of the 2-norm squared, rounded up: used for the Mignotte bound.
fn znorm2_ceil(v: &ZPoly) -> BigInt {
    let s: BigInt = v.iter().map(|c| c * c).sum();
    let r = s.sqrt();
    if &r * &r == s {
        r
    } else {
        r + 1
    }
}

fn rat_poly_to_primitive_z(f: &Poly<Rat>) -> ZPoly {
    // clear denominators, then take primitive part with positive leading coeff
    let mut den = BigInt::one();
    for c in &f.coeffs {
        den = den.lcm(c.denom());
    }
    let ints: ZPoly = f
        .coeffs
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    let mut p = zprimitive(&ztrim(ints));
    if p.last().map_or(false, |c| c.is_negative()) {
        for c in &mut p {
            *c = -c.clone();
        }
    }
    p
}

fn z_to_rat_poly_monic(v: &ZPoly) -> Poly<Rat> {
    let lc = v.last().expect("nonzero").clone();
    Poly::new(v.iter().map(|c| Rat::new(c.clone(), lc.clone())).collect())
}

// ---------------------------------------------------------------------------
// arithmetic mod a small prime p (fits in u64, p < 2^31)
// ---------------------------------------------------------------------------

type PPoly = Vec<u64>;

fn ptrim(mut v: PPoly) -> PPoly {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn pinv(a: u64, p: u64) -> u64 {
    // Fermat
    ppow(a, p - 2, p)
}

fn ppow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn pmul(a: &PPoly, b: &PPoly, p: u64) -> PPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    ptrim(out)
}

fn psub(a: &PPoly, b: &PPoly, p: u64) -> PPoly {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = (x + p - y) % p;
    }
    ptrim(out)
}

fn pdivrem(a: &PPoly, b: &PPoly, p: u64) -> (PPoly, PPoly) {
    assert!(!b.is_empty());
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let binv = pinv(*b.last().unwrap(), p);
    let mut rem = a.clone();
    let qlen = a.len() - b.len() + 1;
    let mut quot = vec![0u64; qlen];
    for i in (0..qlen).rev() {
        let top = rem[i + b.len() - 1];
        if top == 0 {
            continue;
        }
        let q = top * binv % p;
        for (j, &d) in b.iter().enumerate() {
            rem[i + j] = (rem[i + j] + p - q * d % p) % p;
        }
        quot[i] = q;
    }
    (ptrim(quot), ptrim(rem))
}

fn pgcd(a: &PPoly, b: &PPoly, p: u64) -> PPoly {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_empty() {
        let (_, r) = pdivrem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(&lc) = x.last() {
        let inv = pinv(lc, p);
        for c in &mut x {
            *c = *c * inv % p;
        }
    }
    x
}

fn pderiv(a: &PPoly, p: u64) -> PPoly {
    if a.len() <= 1 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(a.len() - 1);
    for (i, &c) in a.iter().enumerate().skip(1) {
        out.push(c * (i as u64 % p) % p);
    }
    ptrim(out)
}

/// base^e mod (f, p) for polynomial base with big integer exponent.
fn ppolypow_mod(base: &PPoly, e: &BigInt, f: &PPoly, p: u64) -> PPoly {
    let mut acc = vec![1u64];
    let mut b = pdivrem(base, f, p).1;
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            acc = pdivrem(&pmul(&acc, &b, p), f, p).1;
        }
        if i + 1 < bits {
            b = pdivrem(&pmul(&b, &b, p), f, p).1;
        }
    }
    acc
}

/// distinct-degree factorization of a squarefree monic f mod p:
/// returns (product-of-irreducibles, degree) pairs.
fn ddf(f: &PPoly, p: u64) -> Vec<(PPoly, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let mut h: PPoly = vec![0, 1]; // x
    let mut d = 0usize;
    while f.len() > 1 {
        d += 1;
        if 2 * d > zdeg_p(&f) {
            out.push((f.clone(), zdeg_p(&f)));
            break;
        }
        h = ppolypow_mod(&h, &BigInt::from(p), &f, p);
        let hx = psub(&h, &[0, 1].to_vec(), p);
        let g = pgcd(&hx, &f, p);
        if g.len() > 1 {
            out.push((g.clone(), d));
            let (q, _) = pdivrem(&f, &g, p);
            f = q;
            h = pdivrem(&h, &f, p).1;
        }
    }
    out
}

fn zdeg_p(v: &PPoly) -> usize {
    v.len().saturating_sub(1)
}

/// equal-degree splitting (Cantor–Zassenhaus) with deterministic trial
/// elements, so runs are reproducible.
fn edf(f: &PPoly, d: usize, p: u64, out: &mut Vec<PPoly>) {
    if zdeg_p(f) == d {
        out.push(f.clone());
        return;
    }
    let exp: BigInt = (BigInt::from(p).pow(d as u32) - 1) / 2;
    let mut counter = 1u64;
    loop {
        // trial element: x + c, then quadratics as the counter grows
        let a: PPoly = if counter < p {
            vec![counter % p, 1]
        } else {
            vec![counter % p, (counter / p) % p, 1]
        };
        counter += 1;
        let b = ppolypow_mod(&a, &exp, f, p);
        let b1 = psub(&b, &[1u64].to_vec(), p);
        let g = pgcd(&b1, f, p);
        if g.len() > 1 && zdeg_p(&g) < zdeg_p(f) {
            edf(&g, d, p, out);
            let (q, _) = pdivrem(f, &g, p);
            edf(&q, d, p, out);
            return;
        }
        if counter > 10_000 {
            panic!("equal-degree factorization failed to split");
        }
    }
}

/// full factorization of f (squarefree mod p) into monic irreducibles mod p.
fn factor_mod_p(f: &PPoly, p: u64) -> Vec<PPoly> {
    let mut monic = f.clone();
    let inv = pinv(*monic.last().unwrap(), p);
    for c in &mut monic {
        *c = *c * inv % p;
    }
    let mut out = Vec::new();
    for (prod, d) in ddf(&monic, p) {
        edf(&prod, d, p, &mut out);
    }
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// Hensel lifting (von zur Gathen & Gerhard, Alg. 15.10 / 15.17)
// ---------------------------------------------------------------------------

fn zmod(v: &ZPoly, m: &BigInt) -> ZPoly {
    ztrim(v.iter().map(|c| c.mod_floor(m)).collect())
}

fn zmul_mod(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    zmod(&zmul(a, b), m)
}

fn zsub_mod(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(BigInt::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigInt::zero);
        out[i] = (x - y).mod_floor(m);
    }
    ztrim(out)
}

fn zadd_mod(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(BigInt::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigInt::zero);
        out[i] = (x + y).mod_floor(m);
    }
    ztrim(out)
}

/// division with remainder mod m by a monic divisor.
fn zdivrem_monic_mod(a: &ZPoly, b: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    assert!(b.last().map_or(false, |c| c.is_one()), "divisor must be monic");
    let mut rem = zmod(a, m);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let qlen = rem.len() - zdeg(b);
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let top = rem[i + zdeg(b)].clone();
        if top.is_zero() {
            continue;
        }
        for (j, d) in b.iter().enumerate() {
            rem[i + j] = (&rem[i + j] - &top * d).mod_floor(m);
        }
        quot[i] = top;
    }
    (ztrim(quot), ztrim(rem))
}

/// one Hensel step: f = g*h mod m, s*g + t*h = 1 mod m, h monic
/// -> same data mod m^2.
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &ZPoly,
    m: &BigInt,
    g: &ZPoly,
    h: &ZPoly,
    s: &ZPoly,
    t: &ZPoly,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = zsub_mod(f, &zmul(g, h), &m2);
    let (q, r) = zdivrem_monic_mod(&zmul_mod(s, &e, &m2), h, &m2);
    let g1 = zadd_mod(&zadd_mod(g, &zmul_mod(t, &e, &m2), &m2), &zmul_mod(&q, g, &m2), &m2);
    let h1 = zadd_mod(h, &r, &m2);
    let b = zsub_mod(
        &zadd_mod(&zmul_mod(s, &g1, &m2), &zmul_mod(t, &h1, &m2), &m2),
        &vec![BigInt::one()],
        &m2,
    );
    let (c, d) = zdivrem_monic_mod(&zmul_mod(s, &b, &m2), &h1, &m2);
    let s1 = zsub_mod(s, &d, &m2);
    let t1 = zsub_mod(
        t,
        &zadd_mod(&zmul_mod(t, &b, &m2), &zmul_mod(&c, &g1, &m2), &m2),
        &m2,
    );
    (g1, h1, s1, t1)
}

/// extended gcd of two polynomials mod p, normalized so a*s + b*t = 1.
fn p_ext_gcd(a: &PPoly, b: &PPoly, p: u64) -> (PPoly, PPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (PPoly, PPoly) = (vec![1], Vec::new());
    let (mut t0, mut t1): (PPoly, PPoly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = pdivrem(&r0, &r1, p);
        let ns = psub(&s0, &pmul(&q, &s1, p), p);
        let nt = psub(&t0, &pmul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = ns;
        t0 = t1;
        t1 = nt;
    }
    assert_eq!(r0.len(), 1, "inputs must be coprime mod p");
    let inv = pinv(r0[0], p);
    for c in &mut s0 {
        *c = *c * inv % p;
    }
    for c in &mut t0 {
        *c = *c * inv % p;
    }
    (s0, t0)
}

fn p_to_z(v: &PPoly) -> ZPoly {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

/// multifactor Hensel lifting: f primitive over Z, factors monic mod p
/// pairwise coprime with f = lc(f) * prod(factors) mod p.
/// Returns the factors lifted mod p^(2^iters) (>= bound).
fn hensel_lift_tree(f: &ZPoly, factors: &[PPoly], p: u64, target: &BigInt) -> (Vec<ZPoly>, BigInt) {
    if factors.len() == 1 {
        // single factor: f = lc * g mod p^k; lift trivially as monic version of f mod p^k
        let mut m = BigInt::from(p);
        while &m < target {
            m = &m * &m;
        }
        let lc = f.last().unwrap();
        let lcinv = modinv(lc, &m);
        let g = ztrim(f.iter().map(|c| (c * &lcinv).mod_floor(&m)).collect());
        return (vec![g], m);
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    // g = lc * prod(left), h = prod(right) (monic)
    let mut gp: PPoly = vec![f.last().unwrap().mod_floor(&BigInt::from(p)).to_u64().unwrap() % p];
    for fac in left {
        gp = pmul(&gp, fac, p);
    }
    let mut hp: PPoly = vec![1];
    for fac in right {
        hp = pmul(&hp, fac, p);
    }
    let (s, t) = p_ext_gcd(&gp, &hp, p);
    let mut m = BigInt::from(p);
    let (mut g, mut h, mut s, mut t) = (p_to_z(&gp), p_to_z(&hp), p_to_z(&s), p_to_z(&t));
    while &m < target {
        let (g1, h1, s1, t1) = hensel_step(f, &m, &g, &h, &s, &t);
        g = g1;
        h = h1;
        s = s1;
        t = t1;
        m = &m * &m;
    }
    let (gl, _) = hensel_lift_tree(&g, left, p, target);
    let (hl, m2) = hensel_lift_tree(&h, right, p, target);
    let mut out = gl;
    out.extend(hl);
    (out, m2.max(m))
}

fn modinv(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}

// ---------------------------------------------------------------------------
// Zassenhaus driver
// ---------------------------------------------------------------------------

const PRIME_POOL: [u64; 24] = [
    1009, 1013, 1019, 1021, 1031, 1033, 1039, 1049, 1051, 1061, 1063, 1069, 1087, 1091, 1093,
    1097, 1103, 1109, 1117, 1123, 1129, 1151, 1153, 1163,
];

fn to_ppoly(f: &ZPoly, p: u64) -> PPoly {
    ptrim(
        f.iter()
            .map(|c| c.mod_floor(&BigInt::from(p)).to_u64().unwrap())
            .collect(),
    )
}

/// pick a prime where f stays squarefree with the same degree, preferring
/// the one with the fewest modular factors.
fn choose_prime(f: &ZPoly) -> (u64, Vec<PPoly>) {
    let mut best: Option<(u64, Vec<PPoly>)> = None;
    let mut tried = 0;
    for &p in PRIME_POOL.iter() {
        if f.last().unwrap().mod_floor(&BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = to_ppoly(f, p);
        if zdeg_p(&fp) != zdeg(f) {
            continue;
        }
        let d = pderiv(&fp, p);
        if pgcd(&fp, &d, p).len() != 1 {
            continue;
        }
        let facs = factor_mod_p(&fp, p);
        match &best {
            Some((_, b)) if b.len() <= facs.len() => {}
            _ => best = Some((p, facs)),
        }
        tried += 1;
        if tried >= 5 {
            break;
        }
    }
    best.expect("no usable prime found (is the input squarefree?)")
}

fn symmetric_rep(v: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    ztrim(
        v.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        if k == 0 {
            self.done = true;
            return Some(out);
        }
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - (k - i) {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// inner recombination: extracts irreducible true factors of `f`
/// (primitive, squarefree), restricted to degree <= `max_deg` when given.
/// Scanning subset sizes in ascending order guarantees every extracted
/// candidate is irreducible: a reducible true factor would have had a
/// proper part extracted (and removed from the pool) at a smaller size.
fn recombine(
    f: &mut ZPoly,
    lifted: &mut Vec<ZPoly>,
    modulus: &BigInt,
    max_deg: Option<usize>,
) -> Vec<ZPoly> {
    let mut out = Vec::new();
    let mut size = 1usize;
    'outer: while 2 * size <= lifted.len() {
        let degs: Vec<usize> = lifted.iter().map(|g| zdeg(g)).collect();
        for combo in Combinations::new(lifted.len(), size) {
            let dsum: usize = combo.iter().map(|&i| degs[i]).sum();
            if let Some(w) = max_deg {
                if dsum > w {
                    continue;
                }
            }
            if dsum > zdeg(f) {
                continue;
            }
            let lc = f.last().unwrap().clone();
            // trailing-coefficient filter
            if !f[0].is_zero() {
                let mut t = lc.clone();
                for &i in &combo {
                    t = (t * &lifted[i][0]).mod_floor(modulus);
                }
                let t = symmetric_rep(&vec![t], modulus);
                let tval = t.first().cloned().unwrap_or_else(BigInt::zero);
                if tval.is_zero() || !(&lc * &f[0]).is_multiple_of(&tval) {
                    continue;
                }
            }
            let mut cand = vec![lc.clone()];
            for &i in &combo {
                cand = zmul_mod(&cand, &lifted[i], modulus);
            }
            let cand = zprimitive(&symmetric_rep(&cand, modulus));
            if let Some(q) = zdivides(f, &cand) {
                out.push(cand);
                *f = zprimitive(&q);
                let keep: Vec<ZPoly> = lifted
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, g)| g.clone())
                    .collect();
                *lifted = keep;
                size = 1;
                continue 'outer;
            }
        }
        size += 1;
    }
    out
}

/// factor a primitive squarefree integer polynomial; `max_deg` restricts
/// the output to irreducible factors of degree <= max_deg (skipping the
/// exhaustive subset search that a proof of irreducibility of the large
/// cofactor would need).
fn factor_squarefree_z(f: &ZPoly, max_deg: Option<usize>) -> Vec<ZPoly> {
    if zdeg(f) <= 1 {
        return match max_deg {
            Some(w) if w < zdeg(f) => Vec::new(),
            _ => vec![f.clone()],
        };
    }
    let (p, modular) = choose_prime(f);
    if modular.len() == 1 {
        return match max_deg {
            Some(w) if w < zdeg(f) => Vec::new(),
            _ => vec![f.clone()],
        };
    }
    // Mignotte-style bound on factor coefficients (factors of degree <= deg f)
    let bound: BigInt =
        (BigInt::one() << (zdeg(f) as u32 + 1)) * znorm2_ceil(f) * f.last().unwrap().abs();
    let target = BigInt::from(2) * &bound + 1;
    let (mut lifted, modulus) = hensel_lift_tree(f, &modular, p, &target);
    let mut rem = f.clone();
    let mut out = recombine(&mut rem, &mut lifted, &modulus, max_deg);
    match max_deg {
        Some(w) => {
            // the leftover is irreducible whenever its degree fits the bound:
            // any proper factor of degree <= w would have been extracted.
            if zdeg(&rem) >= 1 && zdeg(&rem) <= w {
                out.push(rem);
            }
        }
        None => {
            if zdeg(&rem) >= 1 {
                out.push(rem);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// public interface over Q
// ---------------------------------------------------------------------------

/// squarefree decomposition over Q (Yun): returns (g_i, i) with
/// f = c * prod g_i^i, all g_i monic squarefree and pairwise coprime.
pub fn squarefree_decomposition(f: &Poly<Rat>) -> Vec<(Poly<Rat>, usize)> {
    let f = f.monic();
    if f.deg() == 0 {
        return Vec::new();
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.divrem(&a0).0;
    let mut c = df.divrem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut out = Vec::new();
    let mut i = 1;
    loop {
        let a = b.gcd(&d);
        if a.deg() > 0 {
            out.push((a.clone(), i));
        }
        b = b.divrem(&a).0;
        c = d.divrem(&a).0;
        d = c.sub(&b.derivative());
        i += 1;
        if b.deg() == 0 {
            break;
        }
    }
    out
}

/// full factorization into monic irreducibles with multiplicity.
pub fn factor_q(f: &Poly<Rat>) -> Vec<(Poly<Rat>, usize)> {
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(f) {
        let z = rat_poly_to_primitive_z(&part);
        for zf in factor_squarefree_z(&z, None) {
            out.push((z_to_rat_poly_monic(&zf), mult));
        }
    }
    out
}

/// monic irreducible factors of degree <= `d` of a squarefree input.
pub fn factors_up_to_degree(f: &Poly<Rat>, d: usize) -> Vec<Poly<Rat>> {
    let z = rat_poly_to_primitive_z(f);
    factor_squarefree_z(&z, Some(d))
        .into_iter()
        .map(|zf| z_to_rat_poly_monic(&zf))
        .collect()
}

/// exact irreducibility over Q (degree >= 1 required).
pub fn is_irreducible(f: &Poly<Rat>) -> bool {
    if f.deg() == 0 || f.is_zero() {
        return false;
    }
    if f.deg() == 1 {
        return true;
    }
    if f.squarefree_part().deg() != f.deg() {
        return false;
    }
    let z = rat_poly_to_primitive_z(f);
    let facs = factor_squarefree_z(&z, None);
    facs.len() == 1 && zdeg(&facs[0]) == zdeg(&z)
}

/// degrees of the irreducible factors of f mod p, or None if p is unusable
/// (divides the leading coefficient or f is not squarefree mod p).
pub fn modular_factor_degrees(f: &Poly<Rat>, p: u64) -> Option<Vec<usize>> {
    let z = rat_poly_to_primitive_z(f);
    if z.last()?.mod_floor(&BigInt::from(p)).is_zero() {
        return None;
    }
    let fp = to_ppoly(&z, p);
    if zdeg_p(&fp) != zdeg(&z) {
        return None;
    }
    if pgcd(&fp, &pderiv(&fp, p), p).len() != 1 {
        return None;
    }
    let mut degs: Vec<usize> = factor_mod_p(&fp, p).iter().map(|g| zdeg_p(g)).collect();
    degs.sort_unstable();
    Some(degs)
}

/// the n-th cyclotomic polynomial, computed by the Möbius-free recursion
/// Phi_n(x) = (x^n - 1) / prod_{d|n, d<n} Phi_d(x).
pub fn cyclotomic(n: u32) -> Poly<Rat> {
    use crate::rat::{rat_from_i64, rat_one};
    let mut num = vec![rat_from_i64(-1)];
    num.extend((1..n).map(|_| rat_from_i64(0)));
    num.push(rat_one());
    let mut phi = Poly::new(num); // x^n - 1
    for d in 1..n {
        if n % d == 0 {
            phi = phi.divrem(&cyclotomic(d)).0;
        }
    }
    phi
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_from_i64;

    fn p(v: &[i64]) -> Poly<Rat> {
        Poly::new(v.iter().map(|&n| rat_from_i64(n)).collect())
    }

    #[test]
    fn factors_quadratic_product() {
        // (x^2-2)(x^2-3)
        let f = p(&[6, 0, -5, 0, 1]);
        let mut fs = factor_q(&f);
        fs.sort_by_key(|(g, _)| g.coeffs[0].clone());
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].0, p(&[-3, 0, 1]));
        assert_eq!(fs[1].0, p(&[-2, 0, 1]));
    }

    #[test]
    fn irreducibility_checks() {
        assert!(is_irreducible(&p(&[1, 0, 0, 0, 1]))); // x^4+1
        assert!(is_irreducible(&p(&[9, 9, 0, 3, 6, 3, 1]))); // S3 fixture min poly
        assert!(!is_irreducible(&p(&[1, 2, 1]))); // (x+1)^2
        assert!(!is_irreducible(&p(&[-1, 0, 1]))); // (x-1)(x+1)
        assert!(is_irreducible(&p(&[-2, 0, 1])));
    }

    #[test]
    fn multiplicities_recovered() {
        // (x-1)^2 (x+2)
        let f = p(&[1, -2, 1]).mul(&p(&[2, 1]));
        let fs = factor_q(&f);
        let mut found_sq = false;
        let mut found_lin = false;
        for (g, m) in fs {
            if g == p(&[-1, 1]) && m == 2 {
                found_sq = true;
            }
            if g == p(&[2, 1]) && m == 1 {
                found_lin = true;
            }
        }
        assert!(found_sq && found_lin);
    }

    #[test]
    fn degree_targeted_factors() {
        // (x^2+1)(x^4+1): squarefree; ask for factors of degree <= 2
        let f = p(&[1, 0, 1]).mul(&p(&[1, 0, 0, 0, 1]));
        let fs = factors_up_to_degree(&f, 2);
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0], p(&[1, 0, 1]));
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(8), p(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(20), p(&[1, 0, -1, 0, 1, 0, -1, 0, 1]));
    }

    #[test]
    fn big_norm_like_poly_degree8_factors() {
        // product of two degree-4 irreducibles with bigger coefficients
        let a = p(&[7, 0, -10, 0, 1]); // x^4 - 10x^2 + 7 (irreducible)
        let b = p(&[1, 0, 0, 0, 1]);
        let f = a.mul(&b);
        let fs = factor_q(&f);
        assert_eq!(fs.len(), 2);
    }
}
