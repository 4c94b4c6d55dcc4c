//! Lower bound -log2|α| <= h(α) + deg(α) for nonzero algebraic α, and the
//! construction of α = |λ/λ'| - 1 from a spectral ratio.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::exact::rat::{f64_up, from_f64, midpoint};
use crate::exact::Poly;
use crate::factorz::{factor_over_z, squarefree_part, Certificate};
use crate::rootfind::{CRat, Certified, IsolatingInterval, Root, SpectralRatio, SturmChain};

use super::height::{height_of_poly, log2_lower, log2_upper};
use super::resultant::ratio_resultant;
use super::SpectralError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaReport {
    pub alpha_poly: Poly,
    pub certificate: Certificate,
    /// |α| as a certified value.
    pub alpha_modulus: Certified,
    /// -log2|α|; `value + radius` is the bound used for `holds`.
    pub neg_log2_alpha: Certified,
    pub height: f64,
    pub degree: usize,
    /// h(α) + deg(α).
    pub rhs: f64,
    pub holds: bool,
}

/// Checks the lemma for the root `alpha` of `alpha_poly`, which must be
/// irreducible over Z. `holds` is decided on the upper end of -log2|α|.
pub fn lemma_check(alpha_poly: &Poly, alpha: &Root) -> Result<LemmaReport, SpectralError> {
    let fac = factor_over_z(alpha_poly)?;
    if !fac.is_irreducible() || fac.factors[0].poly.deg() != alpha_poly.deg() {
        return Err(SpectralError::NotIrreducible(alpha_poly.to_inline()));
    }
    let certificate = fac.factors[0].certificate;
    let (lo, hi) = alpha.modulus_bounds(96);
    if !lo.is_positive() {
        return Err(SpectralError::AlphaNotNonzero);
    }
    let (a, b) = (-log2_upper(&hi), -log2_lower(&lo));
    let mid = 0.5 * (a + b);
    let neg_log2_alpha = Certified { value: mid, radius: (b - mid).max(mid - a).next_up() };
    let height = height_of_poly(alpha_poly)?.value;
    let degree = alpha_poly.deg();
    let rhs = height + degree as f64;
    Ok(LemmaReport {
        alpha_poly: alpha_poly.clone(),
        certificate,
        alpha_modulus: Certified::from_bounds(&lo, &hi),
        neg_log2_alpha,
        height,
        degree,
        rhs,
        holds: b <= rhs,
    })
}

/// α with its minimal polynomial and an isolating interval refined to a
/// relative width of 2^-bits.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaValue {
    pub poly: Poly,
    pub interval: IsolatingInterval,
    /// Sign of λ/λ'.
    pub ratio_sign: i8,
}

impl AlphaValue {
    pub fn root(&self) -> Root {
        let c = midpoint(&self.interval.lo, &self.interval.hi);
        let r = f64_up(&((&self.interval.hi - &self.interval.lo) / BigRational::from_integer(2.into())));
        Root { center: CRat::real(c), radius: from_f64(r), mult: 1, residual: 0.0 }
    }
}

fn rational_interval(lo: f64, hi: f64) -> (BigRational, BigRational) {
    (from_f64(lo), from_f64(hi))
}

/// α = |λ/λ'| - 1 for the dominant root λ and the real root λ' of next
/// largest modulus of `mu`. With s = sign(λ/λ'), α is a root of
/// R(s(α + 1)) for the ratio resultant R; the irreducible factor carrying
/// α is picked by Sturm counting inside the certified ratio interval.
pub fn alpha_of_ratio(mu: &Poly, sr: &SpectralRatio, bits: u32) -> Result<AlphaValue, SpectralError> {
    let l1 = &sr.dominant;
    let l2 = &sr.second;
    if !l2.center.im.is_zero() {
        return Err(SpectralError::ComplexSecond);
    }
    let sign_of = |r: &Root| -> Result<i8, SpectralError> {
        if r.center.re.abs() <= r.radius {
            return Err(SpectralError::AlphaNotNonzero);
        }
        Ok(if r.center.re.is_positive() { 1 } else { -1 })
    };
    let s = sign_of(l1)? * sign_of(l2)?;
    let r = ratio_resultant(mu)?;
    let sx = Poly::from_i64s(&[s as i64, s as i64]);
    let shifted = squarefree_part(&r.compose(&sx))?;
    let (lo, hi) = rational_interval(sr.ratio.lo - 1.0, sr.ratio.hi - 1.0);
    // widen by one ulp-scale margin: the f64 interval was rounded outward
    // already, but a zero-width interval would make (lo, hi] empty
    let lo = &lo - (&hi - &lo) / BigRational::from_integer(4.into()) - BigRational::new(BigInt::one(), BigInt::one() << 200u32);
    if !hi.is_positive() {
        return Err(SpectralError::AlphaNotNonzero);
    }
    let fac = factor_over_z(&shifted)?;
    let mut found = None;
    let mut count = 0;
    for f in &fac.factors {
        let c = SturmChain::new(&f.poly).count(&lo, &hi);
        if c > 0 {
            count += c;
            found = Some(f.poly.clone());
        }
    }
    let g = match (count, found) {
        (1, Some(g)) => g,
        _ => {
            return Err(SpectralError::AlphaNotIsolated(format!(
                "{count} candidate roots in [{}, {}]",
                sr.ratio.lo - 1.0,
                sr.ratio.hi - 1.0
            )))
        }
    };
    let g = if g.leading().is_some_and(|c| c.sign() == Sign::Minus) { -g } else { g };
    let mut interval = IsolatingInterval { lo, hi, sign_changes: 1 };
    interval.refine_bits(&g, bits);
    Ok(AlphaValue { poly: g, interval, ratio_sign: s })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootfind::{all_roots, spectral_ratio_of_poly};

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    fn exact_root(num: i64, den: i64) -> Root {
        Root {
            center: CRat::real(BigRational::new(num.into(), den.into())),
            radius: BigRational::zero(),
            mult: 1,
            residual: 0.0,
        }
    }

    #[test]
    fn examples() {
        let r = lemma_check(&p(&[-1, 2]), &exact_root(1, 2)).unwrap();
        assert!((r.neg_log2_alpha.value - 1.0).abs() < 1e-9);
        assert_eq!(r.rhs, 2.0);
        assert!(r.holds);
        let r = lemma_check(&p(&[-1, 1024]), &exact_root(1, 1024)).unwrap();
        assert!((r.neg_log2_alpha.value - 10.0).abs() < 1e-9);
        assert_eq!(r.rhs, 11.0);
        assert!(r.holds);
        // α = φ^4 - 1 is the largest root of x^2 - 5x - 5
        let f = p(&[-5, -5, 1]);
        let a = all_roots(&f, 128).unwrap().roots[0].clone();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((a.modulus_f64() - (phi.powi(4) - 1.0)).abs() < 1e-12);
        let r = lemma_check(&f, &a).unwrap();
        assert!(r.neg_log2_alpha.value < 0.0 && r.holds);
        assert!((r.rhs - (5f64.log2() + 2.0)).abs() < 1e-12);
    }

    #[test]
    fn errors() {
        assert!(matches!(lemma_check(&p(&[-1, 0, 1]), &exact_root(1, 1)), Err(SpectralError::NotIrreducible(_))));
        assert_eq!(lemma_check(&p(&[0, 1]), &exact_root(0, 1)), Err(SpectralError::AlphaNotNonzero));
    }

    #[test]
    fn alpha_from_golden_quadratic() {
        let mu = p(&[1, -3, 1]);
        let sr = spectral_ratio_of_poly(&mu, 128).unwrap();
        let a = alpha_of_ratio(&mu, &sr, 100).unwrap();
        assert_eq!(a.poly, p(&[-5, -5, 1]));
        assert_eq!(a.ratio_sign, 1);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((a.interval.mid_f64() - (phi.powi(4) - 1.0)).abs() < 1e-12);
        assert!(lemma_check(&a.poly, &a.root()).unwrap().holds);
    }

    #[test]
    fn alpha_with_negative_second_root() {
        // x^3 - 16x - 1: λ ≈ 4.03, λ' ≈ -3.97
        let mu = p(&[-1, -16, 0, 1]);
        let sr = spectral_ratio_of_poly(&mu, 128).unwrap();
        let a = alpha_of_ratio(&mu, &sr, 100).unwrap();
        assert_eq!(a.ratio_sign, -1);
        assert!((a.interval.mid_f64() - (sr.ratio.mid() - 1.0)).abs() < 1e-12);
        let rep = lemma_check(&a.poly, &a.root()).unwrap();
        assert!(rep.holds, "{rep:?}");
    }
}
