//! Exact closed forms for products over sets cut out by two quadratic
//! characters in an odd finite field, together with brute-force oracles.
//!
//! The central objects are the sets
//! `T_{j,l}^{e1,e2} = { a != 0 : (j - a | q) = e1, (l + a | q) = e2 }`
//! and their relatives `S` and `A`; [`closedform`] evaluates the product of
//! their members without enumeration, [`charsets`] enumerates them.

pub mod charsets;
pub mod closedform;
pub mod correspondence;
pub mod dickson;
pub mod error;
pub mod ffield;
pub mod poly;
pub mod primes;
pub mod reciprocity;
pub mod verify;

pub use error::{Error, Result};
pub use ffield::{FieldCtx, FieldElem};
pub use poly::Poly;
