//! Helpers on exact rationals: rounding to a bit budget, square-root
//! enclosures and directed conversion to f64.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rough log2|q|, exact to within one.
pub fn log2_approx(q: &BigRational) -> i64 {
    if q.is_zero() {
        return i64::MIN / 4;
    }
    q.numer().bits() as i64 - q.denom().bits() as i64
}

/// log2|x| of an integer as a float, valid far beyond the f64 range of x.
pub fn log2_abs_int(x: &BigInt) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.abs().to_f64().unwrap().log2();
    }
    let shift = bits - 64;
    let top = (x.abs() >> shift).to_f64().unwrap();
    top.log2() + shift as f64
}

fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

/// q rounded to nearest with about `bits` significant bits; the result has a
/// power-of-two denominator.
pub fn round_to_bits(q: &BigRational, bits: u32) -> BigRational {
    if q.is_zero() {
        return q.clone();
    }
    let shift = bits as i64 - log2_approx(q);
    let (n, d) = if shift >= 0 {
        (q.numer() << shift as u64, q.denom().clone())
    } else {
        (q.numer().clone(), q.denom() << (-shift) as u64)
    };
    let two_n: BigInt = n * 2;
    let r = (two_n + &d).div_floor(&(d * 2));
    if shift >= 0 {
        BigRational::new(r, pow2(shift as u64))
    } else {
        BigRational::from_integer(r << (-shift) as u64)
    }
}

/// Rationals lo <= sqrt(q) <= hi with hi - lo about 2^-bits relative.
pub fn sqrt_bounds(q: &BigRational, bits: u32) -> (BigRational, BigRational) {
    assert!(!q.is_negative(), "square root of a negative rational");
    if q.is_zero() {
        return (q.clone(), q.clone());
    }
    let k = (bits as i64 + 2 - log2_approx(q) / 2).max(0) as u64;
    let scaled = (q.numer() << (2 * k)).div_floor(q.denom());
    let m = scaled.sqrt();
    let den = pow2(k);
    let lo = BigRational::new(m.clone(), den.clone());
    let hi = if &m * &m == scaled && (q.numer() << (2 * k)).is_multiple_of(q.denom()) {
        lo.clone()
    } else {
        BigRational::new(m + 1, den)
    };
    (lo, hi)
}

pub fn sqrt_upper(q: &BigRational, bits: u32) -> BigRational {
    sqrt_bounds(q, bits).1
}

pub fn sqrt_lower(q: &BigRational, bits: u32) -> BigRational {
    sqrt_bounds(q, bits).0
}

pub fn from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

fn nearest(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Smallest-ish f64 that is >= q.
pub fn f64_up(q: &BigRational) -> f64 {
    let mut x = nearest(q);
    if x.is_nan() {
        return f64::INFINITY;
    }
    while x.is_finite() && &from_f64(x) < q {
        x = x.next_up();
    }
    x
}

/// Largest-ish f64 that is <= q.
pub fn f64_down(q: &BigRational) -> f64 {
    let mut x = nearest(q);
    if x.is_nan() {
        return f64::NEG_INFINITY;
    }
    while x.is_finite() && &from_f64(x) > q {
        x = x.next_down();
    }
    x
}

pub fn to_f64(q: &BigRational) -> f64 {
    nearest(q)
}

pub fn sign(q: &BigRational) -> Sign {
    q.numer().sign()
}

/// Midpoint of two rationals.
pub fn midpoint(a: &BigRational, b: &BigRational) -> BigRational {
    (a + b) / BigRational::from_integer(BigInt::from(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn sqrt_of_two() {
        let (lo, hi) = sqrt_bounds(&q(2, 1), 64);
        assert!(&lo * &lo <= q(2, 1) && &hi * &hi >= q(2, 1));
        assert!(to_f64(&(&hi - &lo)) < 1e-18);
        assert_eq!(sqrt_bounds(&q(9, 4), 10), (q(3, 2), q(3, 2)));
    }

    #[test]
    fn directed_conversion() {
        let third = q(1, 3);
        assert!(from_f64(f64_up(&third)) >= third);
        assert!(from_f64(f64_down(&third)) <= third);
        assert!(f64_up(&third) > f64_down(&third));
        assert_eq!(f64_up(&q(1, 2)), 0.5);
        let tiny = BigRational::new(BigInt::one(), BigInt::one() << 2000u32);
        assert!(f64_up(&tiny) > 0.0);
        assert_eq!(f64_down(&tiny), 0.0);
    }

    #[test]
    fn rounding_keeps_relative_precision() {
        let x = q(22, 7);
        let r = round_to_bits(&x, 40);
        assert!(to_f64(&((&r - &x) / &x)).abs() < 1e-11);
        let d = r.denom();
        assert!((d & (d - BigInt::one())).is_zero());
    }

    proptest! {
        #[test]
        fn sqrt_bounds_enclose(n in 1i64..1_000_000_000, d in 1i64..1_000_000, bits in 8u32..200) {
            let x = q(n, d);
            let (lo, hi) = sqrt_bounds(&x, bits);
            prop_assert!(&lo * &lo <= x);
            prop_assert!(&hi * &hi >= x);
        }

        #[test]
        fn directed_bounds(n in -1_000_000_000i64..1_000_000_000, d in 1i64..1_000_000) {
            let x = q(n, d);
            prop_assert!(from_f64(f64_down(&x)) <= x);
            prop_assert!(from_f64(f64_up(&x)) >= x);
        }
    }
}
