//! Factorisation over Z: square-free split, modular factorisation at a good
//! prime, Hensel lifting past the Mignotte bound, subset recombination.

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use crate::exact::{Poly, PolyModP};
use crate::rootfind::{all_roots, dominant_index, RootError, DEFAULT_BITS};

use super::finite_field::factor_mod_p;
use super::hensel::{lift_factors, mul_mod, symmetric};
use super::{canonical_cmp, squarefree_decompose, Certificate, Factor, FactorError, Factorization, LiftRecord};

/// Complete factorisation into irreducibles over Z. Terminates for the
/// documented scope deg f <= 64; recombination is exponential in the number
/// of modular factors.
pub fn factor_over_z(f: &Poly) -> Result<Factorization, FactorError> {
    if f.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    let (content, g) = f.content_primitive().map_err(|_| FactorError::ZeroPolynomial)?;
    let mut factors = Vec::new();
    let mut lifting = Vec::new();
    for (part, mult) in squarefree_decompose(&g)? {
        let (pieces, record) = factor_squarefree(&part);
        lifting.extend(record);
        for (poly, certificate) in pieces {
            factors.push(Factor { poly, multiplicity: mult, certificate });
        }
    }
    factors.sort_by(|a, b| canonical_cmp(&a.poly, &b.poly).then(a.multiplicity.cmp(&b.multiplicity)));
    Ok(Factorization { content, factors, lifting })
}

/// Smallest prime p >= 3 with p not dividing lc(f) and f mod p square-free;
/// equivalently p divides neither lc(f) nor disc(f).
pub(crate) fn good_prime(f: &Poly) -> u64 {
    let lc = f.leading().expect("nonzero");
    let mut p = 3u64;
    loop {
        if crate::exact::is_prime_u64(p) && !(lc % p).is_zero() {
            let r = PolyModP::from_poly(f, p);
            if r.is_squarefree() {
                return p;
            }
        }
        p += 2;
    }
}

/// Bound on the coefficients of lc(f) * g / lc(g) for any factor g of f.
fn mignotte_bound(f: &Poly) -> (BigInt, String) {
    let n = f.deg();
    let a = f.max_abs_coeff();
    let lc = f.leading().unwrap().abs();
    let s = BigInt::from(n as u64 + 1);
    let mut root = s.sqrt();
    if &root * &root < s {
        root += 1;
    }
    let bound = &root * (BigInt::one() << n) * &a * &lc;
    let formula = format!(
        "B = ceil(sqrt(n+1)) * 2^n * max|a_i| * |lc| = {root} * 2^{n} * {a} * {lc} with n = {n}"
    );
    (bound, formula)
}

fn factor_squarefree(f: &Poly) -> (Vec<(Poly, Certificate)>, Option<LiftRecord>) {
    if f.deg() <= 1 {
        return (vec![(f.clone(), Certificate::DegreeLe1)], None);
    }
    let p = good_prime(f);
    let modular: Vec<PolyModP> = factor_mod_p(&PolyModP::from_poly(f, p))
        .expect("p is prime and f nonzero")
        .into_iter()
        .map(|(g, e)| {
            debug_assert_eq!(e, 1);
            g
        })
        .collect();
    if modular.len() == 1 {
        return (vec![(f.clone(), Certificate::ModP { prime: p })], None);
    }
    let (bound, formula) = mignotte_bound(f);
    let twice = &bound * 2;
    let mut l = 1u32;
    let mut pl = BigInt::from(p);
    while pl <= twice {
        pl *= p;
        l += 1;
    }
    let record = LiftRecord { degree: f.deg(), prime: p, exponent: l, bound, formula };
    let lifted = lift_factors(f, &modular, p, l);
    let pieces = recombine(f, lifted, p, &pl)
        .into_iter()
        .map(|(g, c)| if g.deg() <= 1 { (g, Certificate::DegreeLe1) } else { (g, c) })
        .collect();
    (pieces, Some(record))
}

fn recombine(f: &Poly, mut lifted: Vec<Poly>, p: u64, modulus: &BigInt) -> Vec<(Poly, Certificate)> {
    let cert = Certificate::Recombination { prime: p };
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut s = 1;
    'sizes: while 2 * s <= lifted.len() {
        let lc = rest.leading().unwrap().clone();
        let mut subset: Vec<usize> = (0..s).collect();
        loop {
            let candidate = subset
                .iter()
                .fold(Poly::constant(lc.clone()), |acc, &i| mul_mod(&acc, &lifted[i], modulus));
            let candidate = symmetric(&candidate, modulus);
            // cheap test on constant terms before a full division
            let c0 = candidate.coeff(0);
            let r0 = &lc * rest.coeff(0);
            let plausible = if c0.is_zero() { r0.is_zero() } else { (&r0 % &c0).is_zero() };
            if plausible {
                let g = candidate.primitive_part();
                if let Ok(q) = rest.exact_div(&g) {
                    out.push((g, cert));
                    rest = q;
                    let mut k = 0;
                    lifted.retain(|_| {
                        let keep = !subset.contains(&k);
                        k += 1;
                        keep
                    });
                    continue 'sizes;
                }
            }
            if !next_subset(&mut subset, lifted.len()) {
                break;
            }
        }
        s += 1;
    }
    if rest.sign_leading() == Sign::Minus {
        rest = -rest;
    }
    out.push((rest, cert));
    out
}

/// Advances a sorted index subset to the next one in lexicographic order.
fn next_subset(sub: &mut [usize], n: usize) -> bool {
    let k = sub.len();
    for i in (0..k).rev() {
        if sub[i] < n - k + i {
            sub[i] += 1;
            for j in i + 1..k {
                sub[j] = sub[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

trait LeadingSign {
    fn sign_leading(&self) -> Sign;
}

impl LeadingSign for Poly {
    fn sign_leading(&self) -> Sign {
        self.leading().map(|c| c.sign()).unwrap_or(Sign::NoSign)
    }
}

/// The irreducible factor of `f` owning the root of maximum modulus. Roots
/// of every factor are certified separately and pooled; the dominant one
/// must be strictly separated from all others.
pub fn minimal_poly_of_dominant_root(f: &Poly) -> Result<Poly, FactorError> {
    if f.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    if f.deg() == 0 {
        return Err(FactorError::NoRoots);
    }
    let fz = factor_over_z(f)?;
    let mut bits = DEFAULT_BITS;
    for _ in 0..5 {
        let mut pooled = Vec::new();
        let mut owner = Vec::new();
        for (k, fac) in fz.factors.iter().enumerate() {
            let rs = all_roots(&fac.poly, bits).map_err(|e| FactorError::Roots(e.to_string()))?;
            for r in rs.roots {
                owner.push(k);
                pooled.push(r);
            }
        }
        match dominant_index(&pooled) {
            Ok(i) => return Ok(fz.factors[owner[i]].poly.clone()),
            Err(RootError::PrecisionUnattainable { .. }) => bits *= 2,
            Err(e) => return Err(FactorError::DominantNotUnique(e.to_string())),
        }
    }
    Err(FactorError::DominantNotUnique(format!("not separated at {} bits", bits / 2)))
}
