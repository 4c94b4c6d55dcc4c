use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::primes::{mod_inverse_u64, mul_mod_u64};
use super::Poly;

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

/// Polynomial over the prime field F_p, ascending residues in [0, p).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolyModP {
    prime: u64,
    coeffs: Vec<u64>,
}

impl PolyModP {
    pub fn new(prime: u64, coeffs: Vec<u64>) -> Self {
        let mut out = PolyModP {
            prime,
            coeffs: coeffs.into_iter().map(|c| c % prime).collect(),
        };
        out.trim();
        out
    }

    pub fn from_poly(f: &Poly, prime: u64) -> Self {
        let p = BigInt::from(prime);
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| {
                let r = ((c % &p) + &p) % &p;
                r.to_u64().expect("residue fits in u64")
            })
            .collect();
        PolyModP::new(prime, coeffs)
    }

    pub fn zero(prime: u64) -> Self {
        PolyModP { prime, coeffs: Vec::new() }
    }

    pub fn one(prime: u64) -> Self {
        PolyModP::new(prime, vec![1])
    }

    pub fn x(prime: u64) -> Self {
        PolyModP::new(prime, vec![0, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Lift residues to integers in [0, p).
    pub fn to_poly(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn to_inline(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.prime;
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyModP::new(p, (0..n).map(|i| add_mod(self.coeff(i), o.coeff(i), p)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.prime;
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyModP::new(p, (0..n).map(|i| add_mod(self.coeff(i), p - o.coeff(i), p)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return PolyModP::zero(self.prime);
        }
        let p = self.prime;
        let mut out = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod_u64(a, b, p), p);
            }
        }
        PolyModP::new(p, out)
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.prime;
        PolyModP::new(p, self.coeffs.iter().map(|&a| mul_mod_u64(a, c, p)).collect())
    }

    pub fn make_monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(mod_inverse_u64(self.leading(), self.prime))
    }

    /// Division with remainder; `b` must be nonzero.
    pub fn divrem(&self, b: &Self) -> (Self, Self) {
        assert!(!b.is_zero(), "division by zero polynomial mod p");
        let p = self.prime;
        if self.coeffs.len() < b.coeffs.len() {
            return (PolyModP::zero(p), self.clone());
        }
        let inv = mod_inverse_u64(b.leading(), p);
        let db = b.deg();
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; r.len() - db];
        for i in (0..q.len()).rev() {
            let t = mul_mod_u64(r[i + db], inv, p);
            if t == 0 {
                continue;
            }
            for (j, &bj) in b.coeffs.iter().enumerate() {
                r[i + j] = add_mod(r[i + j], p - mul_mod_u64(t, bj, p), p);
            }
            q[i] = t;
        }
        r.truncate(db);
        (PolyModP::new(p, q), PolyModP::new(p, r))
    }

    pub fn rem(&self, b: &Self) -> Self {
        self.divrem(b).1
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// Extended gcd: (g, s, t) with s*self + t*o = g, g monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.prime;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (PolyModP::one(p), PolyModP::zero(p));
        let (mut t0, mut t1) = (PolyModP::zero(p), PolyModP::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = mod_inverse_u64(r0.leading(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        let p = self.prime;
        PolyModP::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod_u64(c, i as u64 % p, p))
                .collect(),
        )
    }

    /// self^e mod m.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = PolyModP::one(self.prime).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn pow_mod_u64(&self, e: u64, m: &Self) -> Self {
        self.pow_mod(&BigUint::from(e), m)
    }

    /// Inverse of the Frobenius on coefficients when every exponent present is
    /// a multiple of p: returns g with g^p = self.
    pub fn pth_root(&self) -> Self {
        let p = self.prime as usize;
        debug_assert!(self.coeffs.iter().enumerate().all(|(i, &c)| c == 0 || i % p == 0));
        // a^p = a in F_p, so coefficients are unchanged.
        PolyModP::new(
            self.prime,
            self.coeffs.iter().step_by(p).copied().collect(),
        )
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).deg() == 0
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.prime;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod_u64(acc, x, p), c, p))
    }

    /// Ordering used to canonicalise factor lists: by degree, then by
    /// coefficients from the top.
    pub fn canonical_cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.coeffs
            .len()
            .cmp(&o.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(o.coeffs.iter().rev()))
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }
}

impl fmt::Display for PolyModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.to_poly(), self.prime)
    }
}

impl fmt::Debug for PolyModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyModP({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::reduce_mod_p;
    use proptest::prelude::*;

    #[test]
    fn reduction_examples() {
        let sextic = Poly::from_i64s(&[1, 0, -6765, -28657, -6765, 0, 1]);
        let r = reduce_mod_p(&sextic, 7).unwrap();
        assert_eq!(r.coeffs(), &[1, 0, 4, 1, 4, 0, 1]);
        assert_eq!(r.to_inline(), "1,0,4,1,4,0,1");

        let r = reduce_mod_p(&Poly::from_i64s(&[1, -3, 1]), 2).unwrap();
        assert_eq!(r.coeffs(), &[1, 1, 1]);

        let r = reduce_mod_p(&Poly::from_i64s(&[0, 7]), 7).unwrap();
        assert!(r.is_zero());

        assert!(reduce_mod_p(&sextic, 9).is_err());
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = PolyModP::new(7, vec![1, 2, 3]);
        let b = PolyModP::new(7, vec![5, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert!(g.is_one());
    }

    #[test]
    fn frobenius_power() {
        // x^7 = x modulo any polynomial dividing x^7 - x
        let m = PolyModP::new(7, vec![6, 0, 1]); // x^2 - 1
        let r = PolyModP::x(7).pow_mod_u64(7, &m);
        assert_eq!(r, PolyModP::x(7));
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-1000i64..1000, 0..8).prop_map(|c| Poly::from_i64s(&c))
    }

    proptest! {
        #[test]
        fn reduction_is_a_ring_homomorphism(a in arb_poly(), b in arb_poly(), pi in 0usize..5) {
            let p = [2u64, 3, 5, 7, 101][pi];
            let lhs = PolyModP::from_poly(&(&a * &b), p);
            let rhs = PolyModP::from_poly(&a, p).mul(&PolyModP::from_poly(&b, p));
            prop_assert_eq!(lhs, rhs);
            let lhs = PolyModP::from_poly(&(&a + &b), p);
            let rhs = PolyModP::from_poly(&a, p).add(&PolyModP::from_poly(&b, p));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
