//! Naive and Weil heights, base 2.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::exact::rat::{f64_down, f64_up, log2_abs_int};
use crate::exact::{decimal, Poly};
use crate::rootfind::{all_roots, Certified, DEFAULT_BITS};

use super::SpectralError;

/// log2 of the largest absolute coefficient of `of`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeightValue {
    pub value: f64,
    pub of: Poly,
    #[serde(with = "decimal")]
    pub max_coeff: BigInt,
}

pub fn height_of_poly(f: &Poly) -> Result<HeightValue, SpectralError> {
    if f.is_zero() {
        return Err(SpectralError::ZeroPolynomial);
    }
    let max_coeff = f.max_abs_coeff();
    Ok(HeightValue { value: log2_abs_int(&max_coeff), of: f.clone(), max_coeff })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HeightOp {
    Sum,
    Product,
    Inverse,
}

/// Upper bound on the height of α ± β, α β or 1/α from the heights of α
/// and β.
pub fn height_bound(op: HeightOp, h1: f64, h2: Option<f64>) -> Result<f64, SpectralError> {
    let check = |h: f64| {
        if h.is_finite() && h >= 0.0 {
            Ok(h)
        } else {
            Err(SpectralError::InvalidHeight(h))
        }
    };
    let h1 = check(h1)?;
    match op {
        HeightOp::Inverse => Ok(h1),
        HeightOp::Sum | HeightOp::Product => {
            let h2 = check(h2.ok_or(SpectralError::MissingOperand)?)?;
            Ok(if op == HeightOp::Sum { h1 + h2 + 1.0 } else { h1 + h2 })
        }
    }
}

/// Absolute logarithmic Weil height of a root of the irreducible `f`:
/// log2(M(f)) / deg f with M the Mahler measure |a_n| Π max(1, |α_i|).
pub fn weil_height(f: &Poly) -> Result<Certified, SpectralError> {
    if f.is_zero() {
        return Err(SpectralError::ZeroPolynomial);
    }
    if f.deg() == 0 {
        return Err(SpectralError::Degree("constant polynomial".into()));
    }
    let rs = all_roots(f, DEFAULT_BITS)?;
    let one = BigRational::one();
    let lc = BigRational::from_integer(f.leading().unwrap().abs());
    let mut lo = lc.clone();
    let mut hi = lc;
    for r in &rs.roots {
        let (a, b) = r.modulus_bounds(DEFAULT_BITS);
        let a = if a > one { a } else { one.clone() };
        let b = if b > one { b } else { one.clone() };
        for _ in 0..r.mult {
            lo = &lo * &a;
            hi = &hi * &b;
        }
    }
    let n = f.deg() as f64;
    let (l, h) = (log2_lower(&lo) / n, log2_upper(&hi) / n);
    let value = 0.5 * (l + h);
    Ok(Certified { value, radius: ((h - value).max(value - l)).next_up() })
}

// f64 log2 is not correctly rounded; the slack covers a few ulps of
// every intermediate.
fn log2_approx(q: &BigRational) -> (f64, f64) {
    assert!(q.is_positive());
    let (n, d) = (q.numer(), q.denom());
    let slack = 1e-12 * (1 + n.bits() + d.bits()) as f64;
    if n.bits() < 1000 && d.bits() < 1000 {
        (f64_down(q).log2() - slack, f64_up(q).log2() + slack)
    } else {
        let v = log2_abs_int(n) - log2_abs_int(d);
        (v - slack, v + slack)
    }
}

/// Lower bound on log2 q for q > 0.
pub fn log2_lower(q: &BigRational) -> f64 {
    log2_approx(q).0
}

/// Upper bound on log2 q for q > 0.
pub fn log2_upper(q: &BigRational) -> f64 {
    log2_approx(q).1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    #[test]
    fn examples() {
        assert_eq!(height_of_poly(&p(&[-1, -16, 0, 1])).unwrap().value, 4.0);
        assert_eq!(height_of_poly(&p(&[-1, -1, 1])).unwrap().value, 0.0);
        let h = height_of_poly(&p(&[1, 0, -6765, -28657, -6765, 0, 1])).unwrap();
        assert!((h.value - 28657f64.log2()).abs() < 1e-12);
        assert!((h.value - 14.807).abs() < 1e-3);
        assert_eq!(h.max_coeff, BigInt::from(28657));
        assert_eq!(height_of_poly(&Poly::zero()), Err(SpectralError::ZeroPolynomial));
    }

    #[test]
    fn bounds() {
        assert_eq!(height_bound(HeightOp::Sum, 2.0, Some(3.0)).unwrap(), 6.0);
        assert_eq!(height_bound(HeightOp::Product, 2.0, Some(3.0)).unwrap(), 5.0);
        assert_eq!(height_bound(HeightOp::Inverse, 2.0, None).unwrap(), 2.0);
        assert_eq!(height_bound(HeightOp::Sum, 2.0, None), Err(SpectralError::MissingOperand));
        assert!(height_bound(HeightOp::Inverse, -1.0, None).is_err());
    }

    #[test]
    fn weil_heights() {
        // x^2 - 3x + 1: M = φ^2, h = log2(φ^2) / 2 = log2 φ
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let h = weil_height(&p(&[1, -3, 1])).unwrap();
        assert!((h.value - phi.log2()).abs() < 1e-9 && h.radius < 1e-9);
        // 2x - 1: M = 2
        let h = weil_height(&p(&[-1, 2])).unwrap();
        assert!((h.value - 1.0).abs() < 1e-9);
        // roots of unity have height 0
        let h = weil_height(&p(&[1, 1, 1])).unwrap();
        assert!(h.value.abs() < 1e-9);
    }

    #[test]
    fn big_log2() {
        let q = BigRational::new(BigInt::one() << 3000u32, BigInt::from(3));
        let (l, h) = (log2_lower(&q), log2_upper(&q));
        let want = 3000.0 - 3f64.log2();
        assert!(l <= want && want <= h && h - l < 1e-6);
    }
}
