use crate::exact::Poly;

use super::FactorError;

/// Yun's square-free decomposition over Z. Returns primitive, pairwise
/// coprime parts with positive leading coefficients; the product of
/// `part^multiplicity` equals the primitive part of `f`.
pub fn squarefree_decompose(f: &Poly) -> Result<Vec<(Poly, usize)>, FactorError> {
    if f.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    let f = f.primitive_part();
    let mut out = Vec::new();
    if f.deg() == 0 {
        return Ok(out);
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.exact_div(&a0).expect("gcd divides f");
    let c = df.exact_div(&a0).expect("gcd divides f'");
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.deg() > 0 {
        let a = b.gcd(&d);
        let next_b = b.exact_div(&a).expect("gcd divides b");
        let next_c = d.exact_div(&a).expect("gcd divides d");
        if a.deg() > 0 {
            out.push((a.primitive_part(), i));
        }
        d = &next_c - &next_b.derivative();
        b = next_b;
        i += 1;
    }
    Ok(out)
}

/// Product of the distinct irreducible factors (primitive, positive leading
/// coefficient).
pub fn squarefree_part(f: &Poly) -> Result<Poly, FactorError> {
    Ok(squarefree_decompose(f)?
        .into_iter()
        .fold(Poly::one(), |acc, (g, _)| &acc * &g))
}

pub fn is_squarefree(f: &Poly) -> bool {
    !f.is_zero() && f.gcd(&f.derivative()).deg() == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    #[test]
    fn examples() {
        assert_eq!(
            squarefree_decompose(&p(&[0, 0, -1, 1])).unwrap(),
            vec![(p(&[-1, 1]), 1), (p(&[0, 1]), 2)]
        );
        assert_eq!(
            squarefree_decompose(&p(&[1, -1, -1, 1])).unwrap(),
            vec![(p(&[1, 1]), 1), (p(&[-1, 1]), 2)]
        );
        assert_eq!(squarefree_decompose(&p(&[-1, 0, 0, 1])).unwrap(), vec![(p(&[-1, 0, 0, 1]), 1)]);
        assert_eq!(squarefree_decompose(&Poly::zero()), Err(FactorError::ZeroPolynomial));
        assert!(squarefree_decompose(&p(&[6])).unwrap().is_empty());
    }

    proptest! {
        #[test]
        fn reconstructs_primitive_part(
            a in prop::collection::vec(-5i64..6, 1..4),
            b in prop::collection::vec(-5i64..6, 1..4),
            ea in 1u32..4, eb in 1u32..3,
        ) {
            let (a, b) = (Poly::from_i64s(&a), Poly::from_i64s(&b));
            prop_assume!(!a.is_zero() && !b.is_zero());
            let f = &a.pow(ea) * &b.pow(eb);
            let parts = squarefree_decompose(&f).unwrap();
            let mut prod = Poly::one();
            for (g, m) in &parts {
                prop_assert!(is_squarefree(g));
                prod = &prod * &g.pow(*m as u32);
            }
            prop_assert_eq!(prod, f.primitive_part());
        }
    }
}
