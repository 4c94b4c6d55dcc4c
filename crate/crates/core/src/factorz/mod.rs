//! Factorisation of integer polynomials.

mod finite_field;
mod hensel;
mod squarefree;
mod zassenhaus;

use std::cmp::Ordering;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{decimal, is_prime_u64, Poly, PolyModP};

pub use finite_field::{factor_mod_p, is_irreducible_mod_p};
pub use squarefree::{is_squarefree, squarefree_decompose, squarefree_part};
pub use zassenhaus::{factor_over_z, minimal_poly_of_dominant_root};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("leading coefficient vanishes mod {0}")]
    DegreeDrop(u64),
    #[error("polynomial has no roots")]
    NoRoots,
    #[error("dominant root not unique: {0}")]
    DominantNotUnique(String),
    #[error("root location failed: {0}")]
    Roots(String),
}

/// Evidence that a factor is irreducible over Z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    #[serde(rename = "degree_le_1")]
    DegreeLe1,
    /// The reduction mod `prime` is irreducible.
    ModP { prime: u64 },
    /// No proper subset of the lifted modular factors gave a divisor.
    Recombination { prime: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    #[serde(flatten)]
    pub poly: Poly,
    pub multiplicity: usize,
    pub certificate: Certificate,
}

/// Precision used when lifting one square-free part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftRecord {
    pub degree: usize,
    pub prime: u64,
    pub exponent: u32,
    #[serde(with = "decimal")]
    pub bound: BigInt,
    pub formula: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    #[serde(with = "decimal")]
    pub content: BigInt,
    pub factors: Vec<Factor>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lifting: Vec<LiftRecord>,
}

impl Factorization {
    /// content * Π factor^multiplicity.
    pub fn expand(&self) -> Poly {
        self.factors.iter().fold(Poly::constant(self.content.clone()), |acc, f| {
            &acc * &f.poly.pow(f.multiplicity as u32)
        })
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].multiplicity == 1
    }
}

/// Degree first, then ascending coefficients.
pub(crate) fn canonical_cmp(a: &Poly, b: &Poly) -> Ordering {
    a.deg()
        .cmp(&b.deg())
        .then_with(|| a.coeffs().cmp(b.coeffs()))
}

/// True iff `f mod p` is irreducible over F_p, which implies `f` is
/// irreducible over Q.
pub fn irreducible_mod_p_certificate(f: &Poly, p: u64) -> Result<bool, FactorError> {
    if !is_prime_u64(p) {
        return Err(FactorError::NotPrime(p));
    }
    if f.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    let r = PolyModP::from_poly(f, p);
    if r.is_zero() || r.deg() != f.deg() {
        return Err(FactorError::DegreeDrop(p));
    }
    Ok(is_irreducible_mod_p(&r))
}
