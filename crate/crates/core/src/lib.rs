//! Exact arithmetic for crossed product algebras with unitary involutions.
//!
//! Everything in this crate is computed with exact rational arithmetic;
//! numerics only ever enter through certified interval enclosures of a
//! fixed complex embedding, and only for strict sign separation.  The crate
//! is `no_std` (with `alloc`) so the algebraic core can be reused outside
//! of hosted environments; all IO lives in the companion CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod codebook;
pub mod embed;
pub mod error;
pub mod field;
pub mod involution;
pub mod linalg;
pub mod nf;
pub mod nfroots;
pub mod poly;
pub mod positivity;
pub mod rat;
pub mod report;
pub mod tower;
pub mod zfactor;

pub use error::CoreError;
pub use rat::Rat;
