//! Linear Hensel lifting of a factorisation modulo p to one modulo p^l.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::exact::{Poly, PolyModP};

/// Coefficients reduced into [0, m).
pub(crate) fn reduce(f: &Poly, m: &BigInt) -> Poly {
    Poly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

/// Coefficients reduced into (-m/2, m/2].
pub(crate) fn symmetric(f: &Poly, m: &BigInt) -> Poly {
    let half = m / 2;
    Poly::new(
        f.coeffs()
            .iter()
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

pub(crate) fn mul_mod(a: &Poly, b: &Poly, m: &BigInt) -> Poly {
    reduce(&(a * b), m)
}

fn inverse_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one(), "leading coefficient not invertible");
    e.x.mod_floor(m)
}

/// Lifts `f ≡ lc(f) * Π factors (mod p)` with monic pairwise coprime
/// `factors` to monic `u_i` with `f ≡ lc(f) * Π u_i (mod p^l)`.
pub(crate) fn lift_factors(f: &Poly, factors: &[PolyModP], p: u64, l: u32) -> Vec<Poly> {
    let modulus = num_traits::pow(BigInt::from(p), l as usize);
    lift_rec(&reduce(f, &modulus), factors, p, l, &modulus)
}

fn lift_rec(f: &Poly, factors: &[PolyModP], p: u64, l: u32, modulus: &BigInt) -> Vec<Poly> {
    if factors.len() == 1 {
        let inv = inverse_mod(f.leading().expect("nonzero"), modulus);
        return vec![reduce(&f.scale(&inv), modulus)];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let g0 = left
        .iter()
        .fold(PolyModP::one(p), |acc, u| acc.mul(u));
    let lc = PolyModP::from_poly(&Poly::constant(f.leading().unwrap().clone()), p);
    let h0 = right.iter().fold(lc, |acc, u| acc.mul(u));
    let (g, h) = lift_pair(f, &g0, &h0, p, l, modulus);
    let mut out = lift_rec(&g, left, p, l, modulus);
    out.extend(lift_rec(&h, right, p, l, modulus));
    out
}

/// Given f ≡ g0 h0 (mod p) with g0 monic and gcd(g0, h0) = 1 mod p, returns
/// (g, h) with f ≡ g h (mod p^l), g monic, g ≡ g0 and h ≡ h0 (mod p).
fn lift_pair(
    f: &Poly,
    g0: &PolyModP,
    h0: &PolyModP,
    p: u64,
    l: u32,
    modulus: &BigInt,
) -> (Poly, Poly) {
    let (one, s, t) = g0.ext_gcd(h0);
    debug_assert!(one.is_one(), "modular factors must be coprime");
    let mut g = g0.to_poly();
    let mut h = h0.to_poly();
    let mut pk = BigInt::from(p);
    for _ in 1..l {
        let next = &pk * p;
        let err = reduce(&(f - &(&g * &h)), &next);
        if !err.is_zero() {
            let e = PolyModP::from_poly(&err.div_exact_scalar(&pk), p);
            let te = t.mul(&e);
            let (q, dg) = te.divrem(g0);
            let dh = s.mul(&e).add(&q.mul(h0));
            g = reduce(&(&g + &dg.to_poly().scale(&pk)), &next);
            h = reduce(&(&h + &dh.to_poly().scale(&pk)), &next);
        }
        pk = next;
    }
    debug_assert_eq!(&pk, modulus);
    debug_assert!(reduce(&(f - &(&g * &h)), modulus).is_zero());
    (g, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorz::finite_field::factor_mod_p;
    use num_traits::Zero;

    #[test]
    fn lifts_x2_minus_2_over_7() {
        // x^2 - 2 = (x - 3)(x + 3) mod 7; lifted roots are 7-adic square roots of 2
        let f = Poly::from_i64s(&[-2, 0, 1]);
        let fs: Vec<PolyModP> = factor_mod_p(&PolyModP::from_poly(&f, 7))
            .unwrap()
            .into_iter()
            .map(|(g, _)| g)
            .collect();
        assert_eq!(fs.len(), 2);
        let l = 10;
        let m = num_traits::pow(BigInt::from(7), l);
        let us = lift_factors(&f, &fs, 7, l as u32);
        let prod = us.iter().fold(Poly::one(), |acc, u| mul_mod(&acc, u, &m));
        assert_eq!(prod, reduce(&f, &m));
        for u in &us {
            assert!(u.is_monic());
            let root = (-u.coeff(0)).mod_floor(&m);
            let sq: BigInt = &root * &root - 2;
            assert!((sq % &m).is_zero());
        }
    }

    #[test]
    fn non_monic_lift() {
        // 6x^2 + 5x + 1 = (2x + 1)(3x + 1)
        let f = Poly::from_i64s(&[1, 5, 6]);
        let fs: Vec<PolyModP> = factor_mod_p(&PolyModP::from_poly(&f, 5))
            .unwrap()
            .into_iter()
            .map(|(g, _)| g)
            .collect();
        let l = 6;
        let m = num_traits::pow(BigInt::from(5), l);
        let us = lift_factors(&f, &fs, 5, l as u32);
        let lc = Poly::constant(BigInt::from(6));
        let prod = us.iter().fold(lc, |acc, u| mul_mod(&acc, u, &m));
        assert_eq!(prod, reduce(&f, &m));
    }
}
