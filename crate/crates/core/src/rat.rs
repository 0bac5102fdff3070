//! Arbitrary-precision rationals and lossless string forms.
//!
//! Interchange files carry rationals as strings `"p/q"` or `"p"` (base 10,
//! optional leading minus); parsing and printing round-trip exactly.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::CoreError;

/// Exact rational number, always reduced, denominator > 0.
pub type Rat = BigRational;

pub fn rat_zero() -> Rat {
    Rat::zero()
}

pub fn rat_one() -> Rat {
    Rat::one()
}

pub fn rat_from_i64(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parse `"p"` or `"p/q"`; rejects zero denominators and malformed input.
pub fn parse_rat(s: &str) -> Result<Rat, CoreError> {
    let s = s.trim();
    let make_err = || CoreError::Parameter({
        let mut m = String::from("malformed rational literal: ");
        m.push_str(s);
        m
    });
    match s.split_once('/') {
        None => {
            let n = BigInt::from_str(s).map_err(|_| make_err())?;
            Ok(Rat::from_integer(n))
        }
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| make_err())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| make_err())?;
            if q.is_zero() {
                return Err(make_err());
            }
            Ok(Rat::new(p, q))
        }
    }
}

/// Lossless string form, `"p"` for integers and `"p/q"` otherwise.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        let mut s = r.numer().to_string();
        s.push('/');
        s.push_str(&r.denom().to_string());
        s
    }
}

/// Round toward zero to a dyadic rational with denominator 2^bits.
/// Keeps Newton iterates from growing unbounded digit counts.
pub fn dyadic_trunc(r: &Rat, bits: u32) -> Rat {
    let scaled = r * Rat::from_integer(BigInt::one() << bits);
    let t = scaled.trunc();
    t / Rat::from_integer(BigInt::one() << bits)
}

/// Largest integer n with n^2 <= v (v >= 0).
fn big_isqrt(v: &BigUint) -> BigUint {
    num_integer::Roots::sqrt(v)
}

/// Rational upper bound on sqrt(r) for r >= 0, tight to ~2^-bits relatively.
pub fn sqrt_upper(r: &Rat, bits: u32) -> Rat {
    debug_assert!(!r.is_negative());
    if r.is_zero() {
        return Rat::zero();
    }
    // sqrt(p/q) = sqrt(p*q)/q; scale by 4^bits for precision.
    let p = r.numer().magnitude();
    let q = r.denom().magnitude();
    let scale = BigUint::one() << (2 * bits);
    let v = p * q * &scale;
    let s = big_isqrt(&v) + BigUint::one(); // ceil
    Rat::new(
        BigInt::from_biguint(Sign::Plus, s),
        BigInt::from_biguint(Sign::Plus, q * (BigUint::one() << bits)),
    )
}

/// Rational lower bound on sqrt(r) for r >= 0.
pub fn sqrt_lower(r: &Rat, bits: u32) -> Rat {
    debug_assert!(!r.is_negative());
    if r.is_zero() {
        return Rat::zero();
    }
    let p = r.numer().magnitude();
    let q = r.denom().magnitude();
    let scale = BigUint::one() << (2 * bits);
    let v = p * q * &scale;
    let s = big_isqrt(&v); // floor
    Rat::new(
        BigInt::from_biguint(Sign::Plus, s),
        BigInt::from_biguint(Sign::Plus, q * (BigUint::one() << bits)),
    )
}

/// Rational lower bound on r^(1/n) for r >= 0.
pub fn nth_root_lower(r: &Rat, n: u32, bits: u32) -> Rat {
    debug_assert!(!r.is_negative());
    if r.is_zero() || n == 0 {
        return Rat::zero();
    }
    // r^(1/n) = nthroot(p * q^(n-1) * 2^(n*bits)) / (q * 2^bits)
    let p = r.numer().magnitude();
    let q = r.denom().magnitude();
    let v = p * q.pow(n - 1) * (BigUint::one() << (n * bits));
    let s = num_integer::Roots::nth_root(&v, n);
    Rat::new(
        BigInt::from_biguint(Sign::Plus, s),
        BigInt::from_biguint(Sign::Plus, q * (BigUint::one() << bits)),
    )
}

/// Rational upper bound on r^(1/n) for r >= 0.
pub fn nth_root_upper(r: &Rat, n: u32, bits: u32) -> Rat {
    if r.is_zero() || n == 0 {
        return Rat::zero();
    }
    let p = r.numer().magnitude();
    let q = r.denom().magnitude();
    let v = p * q.pow(n - 1) * (BigUint::one() << (n * bits));
    let s = num_integer::Roots::nth_root(&v, n) + BigUint::one();
    Rat::new(
        BigInt::from_biguint(Sign::Plus, s),
        BigInt::from_biguint(Sign::Plus, q * (BigUint::one() << bits)),
    )
}

/// Decimal string with `digits` fractional digits, rounding toward zero.
/// Deterministic; used for codebook exports.
pub fn rat_to_decimal(r: &Rat, digits: u32) -> String {
    let neg = r.is_negative();
    let a = r.abs();
    let pow = BigInt::from(10u32).pow(digits);
    let scaled = (a * Rat::from_integer(pow.clone())).trunc();
    let n = scaled.numer().clone();
    let (int_part, frac_part) = n.div_rem(&pow);
    let mut frac = frac_part.to_string();
    while (frac.len() as u32) < digits {
        frac.insert(0, '0');
    }
    let mut out = String::new();
    if neg && (!int_part.is_zero() || !frac_part.is_zero()) {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if digits > 0 {
        out.push('.');
        out.push_str(&frac);
    }
    out
}

/// Parse a decimal string like "-0.7071" into an exact rational.
pub fn parse_decimal(s: &str) -> Result<Rat, CoreError> {
    let s = s.trim();
    let make_err = || CoreError::Parameter({
        let mut m = String::from("malformed decimal literal: ");
        m.push_str(s);
        m
    });
    let (sign, body) = match s.strip_prefix('-') {
        Some(b) => (-1i32, b),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_s, frac_s) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_s.is_empty() && frac_s.is_empty() {
        return Err(make_err());
    }
    let digits: Vec<char> = int_s.chars().chain(frac_s.chars()).collect();
    if digits.iter().any(|c| !c.is_ascii_digit()) {
        return Err(make_err());
    }
    let joined: String = digits.into_iter().collect();
    let n = BigInt::from_str(if joined.is_empty() { "0" } else { &joined }).map_err(|_| make_err())?;
    let d = BigInt::from(10u32).pow(frac_s.len() as u32);
    Ok(Rat::new(n * BigInt::from(sign), d))
}
