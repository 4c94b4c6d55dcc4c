//! Heights of α + β and α β against the heights of α and β, for concrete
//! algebraic numbers given by a polynomial and a certified root.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::exact::Poly;
use crate::factorz::{factor_over_z, squarefree_part, Certificate};
use crate::rootfind::{all_roots, Certified, Root, DEFAULT_BITS};

use super::height::{height_of_poly, weil_height};
use super::lemma::{lemma_check, LemmaReport};
use super::resultant::{composed_poly, ComposeOp};
use super::SpectralError;

/// α op β with its minimal polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct ComposedValue {
    pub minimal_poly: Poly,
    pub certificate: Certificate,
    pub root: Root,
}

fn disk_of(op: ComposeOp, a: &Root, b: &Root) -> (crate::rootfind::CRat, BigRational) {
    match op {
        ComposeOp::Sum => (&a.center + &b.center, &a.radius + &b.radius),
        ComposeOp::Product => {
            let (_, ma) = a.modulus_bounds(DEFAULT_BITS);
            let (_, mb) = b.modulus_bounds(DEFAULT_BITS);
            let r = &ma * &b.radius + &mb * &a.radius + &a.radius * &b.radius;
            (&a.center * &b.center, r)
        }
    }
}

/// The irreducible factor of the composed polynomial having α op β as a
/// root, chosen as the only root disk meeting the enclosure of α op β.
pub fn composed_minimal(op: ComposeOp, f: &Poly, alpha: &Root, g: &Poly, beta: &Root) -> Result<ComposedValue, SpectralError> {
    let h = squarefree_part(&composed_poly(op, &squarefree_part(f)?, &squarefree_part(g)?)?)?;
    let (c, r) = disk_of(op, alpha, beta);
    let mut hits = Vec::new();
    for fac in factor_over_z(&h)?.factors {
        for root in all_roots(&fac.poly, DEFAULT_BITS)?.roots {
            let reach = &root.radius + &r;
            if (&root.center - &c).norm_sqr() <= &reach * &reach {
                hits.push((fac.poly.clone(), fac.certificate, root));
            }
        }
    }
    if hits.len() != 1 {
        return Err(SpectralError::AlphaNotIsolated(format!("{} candidate roots for the composed value", hits.len())));
    }
    let (minimal_poly, certificate, root) = hits.pop().unwrap();
    Ok(ComposedValue { minimal_poly, certificate, root })
}

/// Both height inequalities for one pair. The naive form uses log2 of the
/// largest coefficient of each minimal polynomial; the Weil form uses the
/// absolute Weil height, where the sum constant is log2 2 = 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactReport {
    pub op: ComposeOp,
    pub minimal_poly: Poly,
    pub naive: [f64; 3],
    pub naive_bound: f64,
    pub naive_holds: bool,
    pub weil: [Certified; 3],
    pub weil_bound: f64,
    /// Not violated beyond the certification radii: equality occurs (for
    /// instance h(√2 √3) = h(√2) + h(√3)).
    pub weil_holds: bool,
    /// Lemma on α op β, absent when it is zero.
    pub lemma: Option<LemmaReport>,
}

/// `f` and `g` must be irreducible with `alpha`, `beta` certified roots.
pub fn fact_check(op: ComposeOp, f: &Poly, alpha: &Root, g: &Poly, beta: &Root) -> Result<FactReport, SpectralError> {
    let cv = composed_minimal(op, f, alpha, g, beta)?;
    let (f, g) = (f.primitive_part(), g.primitive_part());
    let naive = [height_of_poly(&f)?.value, height_of_poly(&g)?.value, height_of_poly(&cv.minimal_poly)?.value];
    let extra = if op == ComposeOp::Sum { 1.0 } else { 0.0 };
    let naive_bound = naive[0] + naive[1] + extra;
    let weil = [weil_height(&f)?, weil_height(&g)?, weil_height(&cv.minimal_poly)?];
    let weil_bound = weil[0].hi() + weil[1].hi() + extra;
    let zero = cv.minimal_poly.deg() == 1 && cv.minimal_poly.coeff(0).is_zero();
    let lemma = if zero { None } else { Some(lemma_check(&cv.minimal_poly, &cv.root)?) };
    Ok(FactReport {
        op,
        naive_holds: naive[2] <= naive_bound,
        naive,
        naive_bound,
        weil_holds: weil[2].lo() <= weil_bound,
        weil,
        weil_bound,
        minimal_poly: cv.minimal_poly,
        lemma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    fn largest_root(f: &Poly) -> Root {
        let rs = all_roots(f, DEFAULT_BITS).unwrap();
        rs.roots.into_iter().max_by(|a, b| a.center.to_c64().re.total_cmp(&b.center.to_c64().re)).unwrap()
    }

    #[test]
    fn sqrt2_plus_sqrt3() {
        let (f, g) = (p(&[-2, 0, 1]), p(&[-3, 0, 1]));
        let r = fact_check(ComposeOp::Sum, &f, &largest_root(&f), &g, &largest_root(&g)).unwrap();
        assert_eq!(r.minimal_poly, p(&[1, 0, -10, 0, 1]));
        assert!(r.naive_holds && r.weil_holds);
        assert!(r.lemma.unwrap().holds);
        let r = fact_check(ComposeOp::Product, &f, &largest_root(&f), &g, &largest_root(&g)).unwrap();
        assert_eq!(r.minimal_poly, p(&[-6, 0, 1]));
        // equality case of the Weil form
        assert!((r.weil[2].value - r.weil[0].value - r.weil[1].value).abs() < 1e-9);
        assert!(r.weil_holds);
    }

    #[test]
    fn naive_sum_counterexample() {
        // √20 + i√20 has minimal polynomial x^4 + 1600
        let (f, g) = (p(&[-20, 0, 1]), p(&[20, 0, 1]));
        let a = largest_root(&f);
        let b = all_roots(&g, DEFAULT_BITS).unwrap().roots[0].clone();
        let r = fact_check(ComposeOp::Sum, &f, &a, &g, &b).unwrap();
        assert_eq!(r.minimal_poly, p(&[1600, 0, 0, 0, 1]));
        assert!(!r.naive_holds);
        assert!(r.weil_holds);
    }

    #[test]
    fn opposite_roots_sum_to_zero() {
        let f = p(&[-2, 0, 1]);
        let rs = all_roots(&f, DEFAULT_BITS).unwrap().roots;
        let r = fact_check(ComposeOp::Sum, &f, &rs[0], &f, &rs[1]).unwrap();
        assert_eq!(r.minimal_poly, p(&[0, 1]));
        assert!(r.lemma.is_none());
    }
}
