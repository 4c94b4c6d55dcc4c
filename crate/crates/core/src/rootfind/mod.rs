//! Certified root location.

pub mod complex;
mod aberth;
mod palindromic;
mod ratio;
mod sturm;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::rat::{f64_up, from_f64, midpoint, sqrt_bounds, to_f64};
use crate::exact::Poly;

pub use aberth::all_roots;
pub use complex::CRat;
pub use palindromic::{
    lift_palindromic_roots, palindromic_reduce, palindromic_roots, spectral_ratio_via_palindromic,
    viete_cubic_roots, ComplexBall, RealBall,
};
pub use ratio::{dominant_index, ratio_from_roots, spectral_ratio_of_poly, RatioInterval, SpectralRatio};
pub use sturm::{cauchy_bound, isolate_from_guesses, isolate_real_roots, IsolatingInterval, SturmChain};

pub const DEFAULT_BITS: u32 = 128;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("constant polynomial has no roots")]
    Constant,
    #[error("polynomial is not square-free")]
    NotSquarefree,
    #[error("polynomial is not palindromic")]
    NotPalindromic,
    #[error("palindromic polynomial has odd degree")]
    OddDegree,
    #[error("reduced polynomial has non-real roots")]
    ComplexReduced,
    #[error("ratio undefined: degree {0} < 2 after removing zero roots")]
    DegreeTooSmall(usize),
    #[error("precision unattainable at {bits} bits (worst relative radius {worst_relative_radius:e})")]
    PrecisionUnattainable { bits: u32, worst_relative_radius: f64 },
    #[error("tie within radius: {0}")]
    Tie(String),
}

/// Value with an error radius: the true quantity lies in
/// [value - radius, value + radius].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Certified {
    pub value: f64,
    pub radius: f64,
}

impl Certified {
    /// Enclosure of the rational interval [lo, hi].
    pub fn from_bounds(lo: &BigRational, hi: &BigRational) -> Self {
        let value = to_f64(&midpoint(lo, hi));
        let v = from_f64(value);
        let a = hi - &v;
        let b = &v - lo;
        let r = if a > b { a } else { b };
        Certified { value, radius: f64_up(&r) }
    }

    pub fn lo(&self) -> f64 {
        self.value - self.radius
    }

    pub fn hi(&self) -> f64 {
        self.value + self.radius
    }
}

/// One root: the disk |z - center| <= radius contains exactly `mult` roots
/// counted with multiplicity, all equal.
#[derive(Debug, Clone, PartialEq)]
pub struct Root {
    pub center: CRat,
    /// Exact rational equal to an f64.
    pub radius: BigRational,
    pub mult: usize,
    /// Upper bound on |p(center)| for the square-free part the root was
    /// certified against.
    pub residual: f64,
}

impl Root {
    pub fn modulus_f64(&self) -> f64 {
        self.center.to_c64().norm()
    }

    /// Rational bounds on the modulus of the true root.
    pub fn modulus_bounds(&self, bits: u32) -> (BigRational, BigRational) {
        let (lo, hi) = sqrt_bounds(&self.center.norm_sqr(), bits);
        let lo = &lo - &self.radius;
        let lo = if lo < BigRational::zero() { BigRational::zero() } else { lo };
        (lo, hi + &self.radius)
    }

    pub fn modulus(&self) -> Certified {
        let (lo, hi) = self.modulus_bounds(80);
        Certified::from_bounds(&lo, &hi)
    }

    /// Real part as a certified value (the imaginary part is ignored).
    pub fn real_part(&self) -> Certified {
        let lo = &self.center.re - &self.radius;
        let hi = &self.center.re + &self.radius;
        Certified::from_bounds(&lo, &hi)
    }

    pub(crate) fn json(&self) -> RootJson {
        let z = self.center.to_c64();
        let err = (&self.center.re - from_f64(z.re)).abs() + (&self.center.im - from_f64(z.im)).abs();
        RootJson {
            re: z.re,
            im: z.im,
            radius: f64_up(&(&self.radius + err)),
            mult: self.mult,
            residual: self.residual,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootJson {
    pub re: f64,
    pub im: f64,
    pub radius: f64,
    pub mult: usize,
    pub residual: f64,
}

/// All roots of `poly`, sorted by decreasing modulus of the centres.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub poly: Poly,
    pub roots: Vec<Root>,
    pub precision_bits: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootSetJson {
    pub poly: Poly,
    pub precision_bits: u32,
    pub roots: Vec<RootJson>,
}

impl RootSet {
    pub fn new(poly: Poly, mut roots: Vec<Root>, precision_bits: u32) -> Self {
        roots.sort_by(|a, b| {
            b.center
                .norm_sqr()
                .cmp(&a.center.norm_sqr())
                .then_with(|| b.center.re.cmp(&a.center.re))
                .then_with(|| b.center.im.cmp(&a.center.im))
        });
        RootSet { poly, roots, precision_bits }
    }

    pub fn degree_count(&self) -> usize {
        self.roots.iter().map(|r| r.mult).sum()
    }

    pub fn to_json(&self) -> RootSetJson {
        RootSetJson {
            poly: self.poly.clone(),
            precision_bits: self.precision_bits,
            roots: self.roots.iter().map(Root::json).collect(),
        }
    }
}

impl Serialize for RootSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}
