//! Exact complex rationals, used for certification and as the working
//! number type of the high-precision solver (after rounding).

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::rat::{from_f64, round_to_bits, to_f64};
use crate::exact::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl CRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        CRat { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        CRat { re, im: BigRational::zero() }
    }

    pub fn zero() -> Self {
        CRat::real(BigRational::zero())
    }

    pub fn one() -> Self {
        CRat::real(BigRational::one())
    }

    pub fn from_c64(z: Complex64) -> Self {
        CRat::new(from_f64(z.re), from_f64(z.im))
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// |z|^2, exact.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn conj(&self) -> Self {
        CRat::new(self.re.clone(), -self.im.clone())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        CRat::new(&self.re * c, &self.im * c)
    }

    /// Exact inverse; panics on zero.
    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "inverse of zero");
        CRat::new(&self.re / &n, -&self.im / &n)
    }

    pub fn div(&self, o: &CRat) -> Self {
        self * &o.inv()
    }

    pub fn round(&self, bits: u32) -> Self {
        CRat::new(round_to_bits(&self.re, bits), round_to_bits(&self.im, bits))
    }

    /// Rounds both parts relative to the modulus, so a tiny imaginary part
    /// next to a large real part does not keep excess precision.
    pub fn round_rel(&self, bits: u32) -> Self {
        let scale = crate::exact::rat::log2_approx(&self.re).max(crate::exact::rat::log2_approx(&self.im));
        let grid = |q: &BigRational| -> BigRational {
            if q.is_zero() {
                return q.clone();
            }
            let own = crate::exact::rat::log2_approx(q);
            let b = bits as i64 - (scale - own);
            if b <= 0 {
                BigRational::zero()
            } else {
                round_to_bits(q, b as u32)
            }
        };
        CRat::new(grid(&self.re), grid(&self.im))
    }
}

impl Add for &CRat {
    type Output = CRat;
    fn add(self, o: &CRat) -> CRat {
        CRat::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &CRat {
    type Output = CRat;
    fn sub(self, o: &CRat) -> CRat {
        CRat::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &CRat {
    type Output = CRat;
    fn mul(self, o: &CRat) -> CRat {
        CRat::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for &CRat {
    type Output = CRat;
    fn neg(self) -> CRat {
        CRat::new(-&self.re, -&self.im)
    }
}

/// Exact f(z) by Horner's rule.
pub fn eval(f: &Poly, z: &CRat) -> CRat {
    if z.is_real() {
        return CRat::real(f.eval_rational(&z.re));
    }
    let mut acc = CRat::zero();
    for c in f.coeffs().iter().rev() {
        acc = &acc * z;
        acc.re += BigRational::from_integer(c.clone());
    }
    acc
}

/// f(z) with the accumulator rounded to `bits` after every step.
pub fn eval_rounded(f: &Poly, z: &CRat, bits: u32) -> CRat {
    let mut acc = CRat::zero();
    for c in f.coeffs().iter().rev() {
        acc = (&acc * z).round(bits + 16);
        acc.re += BigRational::from_integer(c.clone());
    }
    acc.round(bits + 16)
}

pub fn int(c: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(c))
}
