//! Exact integer arithmetic: dense integer polynomials, polynomials over
//! prime fields, Fibonacci numbers and small-prime utilities.
//!
//! Arbitrary-precision integers and rationals come from `num-bigint` and
//! `num-rational`; everything polynomial is implemented here.

mod fib;
mod modp;
mod poly;
mod primes;

pub mod decimal;
pub mod rat;

pub use fib::fibonacci;
pub use modp::PolyModP;
pub use poly::{Poly, PolyError};
pub use primes::{is_prime_u64, mod_inverse_u64, mul_mod_u64, pow_mod_u64};

pub use num_bigint::{BigInt, BigUint, Sign};
pub use num_rational::BigRational;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModPError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("zero polynomial")]
    ZeroPolynomial,
}

/// Coefficientwise reduction of `f` into `F_p[x]`.
pub fn reduce_mod_p(f: &Poly, p: u64) -> Result<PolyModP, ModPError> {
    if !is_prime_u64(p) {
        return Err(ModPError::NotPrime(p));
    }
    Ok(PolyModP::from_poly(f, p))
}

/// Splits off the integer content. The returned content carries the sign of
/// the leading coefficient, so `content * primitive == f` exactly and the
/// primitive part always has a positive leading coefficient.
pub fn content_primitive(f: &Poly) -> Result<(BigInt, Poly), PolyError> {
    f.content_primitive()
}
