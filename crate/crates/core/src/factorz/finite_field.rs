//! Complete factorisation over F_p: square-free split, distinct-degree
//! factorisation, then Cantor–Zassenhaus equal-degree splitting (trace map
//! for p = 2).

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{is_prime_u64, PolyModP};
use crate::seed;

use super::FactorError;

/// Factors `f` into monic irreducibles with multiplicities, sorted by degree
/// then coefficients. The leading constant is dropped.
pub fn factor_mod_p(f: &PolyModP) -> Result<Vec<(PolyModP, usize)>, FactorError> {
    let p = f.prime();
    if !is_prime_u64(p) {
        return Err(FactorError::NotPrime(p));
    }
    if f.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed::hash_words(
        std::iter::once(p).chain(f.coeffs().iter().copied()),
    ));
    let mut out = Vec::new();
    for (part, mult) in squarefree_mod_p(&f.make_monic()) {
        for (block, d) in distinct_degree(&part) {
            for g in equal_degree(&block, d, &mut rng) {
                out.push((g, mult));
            }
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

/// True iff `f` (nonzero, degree >= 1) is irreducible over F_p.
pub fn is_irreducible_mod_p(f: &PolyModP) -> bool {
    if f.deg() == 0 || f.is_zero() {
        return false;
    }
    if !f.is_squarefree() {
        return false;
    }
    let parts = distinct_degree(&f.make_monic());
    parts.len() == 1 && parts[0].1 == f.deg()
}

/// Square-free factorisation of a monic polynomial over F_p.
pub(crate) fn squarefree_mod_p(f: &PolyModP) -> Vec<(PolyModP, usize)> {
    let p = f.prime();
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let df = f.derivative();
    if df.is_zero() {
        // f = g^p
        for (g, m) in squarefree_mod_p(&f.pth_root()) {
            out.push((g, m * p as usize));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.divrem(&c).0;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.divrem(&y).0;
        if fac.deg() > 0 {
            out.push((fac.make_monic(), i));
        }
        w = y;
        c = c.divrem(&w).0;
        i += 1;
    }
    if c.deg() > 0 {
        for (g, m) in squarefree_mod_p(&c.make_monic().pth_root()) {
            out.push((g, m * p as usize));
        }
    }
    out
}

/// Splits a monic square-free polynomial into products of irreducibles of
/// equal degree: returns (product, degree) pairs.
pub(crate) fn distinct_degree(f: &PolyModP) -> Vec<(PolyModP, usize)> {
    let p = f.prime();
    let x = PolyModP::x(p);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut d = 1;
    while rest.deg() >= 2 * d {
        h = h.pow_mod_u64(p, &rest);
        let g = h.sub(&x).gcd(&rest);
        if g.deg() > 0 {
            rest = rest.divrem(&g).0.make_monic();
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.deg() > 0 {
        let deg = rest.deg();
        out.push((rest, deg));
    }
    out
}

fn equal_degree(f: &PolyModP, d: usize, rng: &mut ChaCha8Rng) -> Vec<PolyModP> {
    if f.deg() == d {
        return vec![f.make_monic()];
    }
    let p = f.prime();
    let n = f.deg();
    let exponent = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        let a = PolyModP::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.deg() == 0 {
            continue;
        }
        let b = if p == 2 {
            // absolute trace a + a^2 + ... + a^(2^(d-1))
            let mut acc = a.rem(f);
            let mut term = acc.clone();
            for _ in 1..d {
                term = term.mul(&term).rem(f);
                acc = acc.add(&term);
            }
            acc
        } else {
            a.pow_mod(&exponent, f).sub(&PolyModP::one(p))
        };
        let g = b.gcd(f);
        if g.deg() > 0 && g.deg() < n {
            let h = f.divrem(&g).0.make_monic();
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{reduce_mod_p, Poly};
    use proptest::prelude::*;

    fn m(p: u64, c: &[u64]) -> PolyModP {
        PolyModP::new(p, c.to_vec())
    }

    #[test]
    fn examples() {
        assert_eq!(factor_mod_p(&m(2, &[1, 0, 1])).unwrap(), vec![(m(2, &[1, 1]), 2)]);
        assert_eq!(factor_mod_p(&m(2, &[1, 1, 1])).unwrap(), vec![(m(2, &[1, 1, 1]), 1)]);
        let f7 = m(7, &[1, 0, 4, 1, 4, 0, 1]);
        assert_eq!(factor_mod_p(&f7).unwrap(), vec![(f7.clone(), 1)]);
        assert!(is_irreducible_mod_p(&f7));
    }

    #[test]
    fn sextic_reduction_is_irreducible_mod_7() {
        let sextic = Poly::from_i64s(&[1, 0, -6765, -28657, -6765, 0, 1]);
        assert!(is_irreducible_mod_p(&reduce_mod_p(&sextic, 7).unwrap()));
    }

    #[test]
    fn x_to_the_p_minus_x_splits_into_linears() {
        for p in [2u64, 3, 5, 7, 11] {
            let mut c = vec![0u64; p as usize + 1];
            c[1] = p - 1;
            c[p as usize] = 1;
            let f = m(p, &c);
            let fs = factor_mod_p(&f).unwrap();
            assert_eq!(fs.len(), p as usize);
            assert!(fs.iter().all(|(g, e)| g.deg() == 1 && *e == 1));
        }
    }

    #[test]
    fn pth_powers() {
        // (x + 1)^6 over F_3 = ((x+1)^2)^3
        let base = m(3, &[1, 1]);
        let mut f = PolyModP::one(3);
        for _ in 0..6 {
            f = f.mul(&base);
        }
        assert_eq!(factor_mod_p(&f).unwrap(), vec![(base, 6)]);
    }

    #[test]
    fn errors() {
        assert_eq!(factor_mod_p(&m(4, &[1, 1])), Err(FactorError::NotPrime(4)));
        assert_eq!(factor_mod_p(&PolyModP::zero(5)), Err(FactorError::ZeroPolynomial));
    }

    proptest! {
        #[test]
        fn factorisation_reconstructs_and_is_irreducible(
            c in prop::collection::vec(0u64..1000, 2..10),
            pi in 0usize..5,
        ) {
            let p = [2u64, 3, 5, 7, 13][pi];
            let f = PolyModP::new(p, c);
            prop_assume!(f.deg() >= 1);
            let fs = factor_mod_p(&f).unwrap();
            let mut prod = PolyModP::one(p);
            for (g, e) in &fs {
                prop_assert!(g.is_monic());
                prop_assert!(is_irreducible_mod_p(g));
                for _ in 0..*e {
                    prod = prod.mul(g);
                }
            }
            prop_assert_eq!(prod, f.make_monic());
        }
    }
}
