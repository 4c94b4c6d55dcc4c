//! Elimination of x from pairs of polynomials in Z[z][x].

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::Poly;
use crate::factorz::is_squarefree;

use super::SpectralError;

/// A polynomial in x whose coefficients are polynomials in z; entry i is
/// the coefficient of x^i.
pub type BiPoly = Vec<Poly>;

/// Determinant over Z[z] by fraction-free (Bareiss) elimination; every
/// division is exact in Z[z].
pub fn det_zz(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut negate = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = Poly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

fn trim(mut a: BiPoly) -> BiPoly {
    while a.last().is_some_and(Poly::is_zero) {
        a.pop();
    }
    a
}

/// Res_x(a, b) as the Sylvester determinant. `a` must have a nonzero
/// leading coefficient; `b` is taken with its formal degree (its leading
/// entry may vanish), so that Res = lc(a)^deg(b) * Π b(α) over the roots
/// α of a.
pub fn resultant_x(a: &BiPoly, b: &BiPoly) -> Poly {
    let a = trim(a.clone());
    assert!(!a.is_empty(), "resultant of the zero polynomial");
    let m = a.len() - 1;
    let n = b.len().saturating_sub(1);
    let size = m + n;
    if size == 0 {
        return Poly::one();
    }
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![Poly::zero(); size];
        for (j, c) in a.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![Poly::zero(); size];
        for (j, c) in b.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    det_zz(rows)
}

/// Primitive part with positive leading coefficient.
pub fn normalize(f: &Poly) -> Poly {
    let p = f.primitive_part();
    if p.leading().is_some_and(|c| c.is_negative()) {
        -p
    } else {
        p
    }
}

fn constant_coeffs(f: &Poly) -> BiPoly {
    f.coeffs().iter().map(|c| Poly::constant(c.clone())).collect()
}

fn require_input(f: &Poly) -> Result<(), SpectralError> {
    if f.is_zero() {
        return Err(SpectralError::ZeroPolynomial);
    }
    if f.deg() == 0 {
        return Err(SpectralError::Degree("input polynomial is constant".into()));
    }
    if !is_squarefree(f) {
        return Err(SpectralError::NotSquarefree(f.to_inline()));
    }
    Ok(())
}

/// Polynomial of degree (deg mu)^2 whose roots are all ordered ratios
/// λi/λj of roots of `mu`, from Res_x(mu(x), mu(z x)), content removed.
pub fn ratio_resultant(mu: &Poly) -> Result<Poly, SpectralError> {
    require_input(mu)?;
    if mu.coeff(0).is_zero() {
        return Err(SpectralError::ZeroRoot);
    }
    let b: BiPoly = mu
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| Poly::monomial(c.clone(), i))
        .collect();
    let r = normalize(&resultant_x(&constant_coeffs(mu), &b));
    debug_assert_eq!(r.deg(), mu.deg() * mu.deg());
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComposeOp {
    Sum,
    Product,
}

/// Polynomial vanishing on every α + β (or α β) with f(α) = 0, g(β) = 0;
/// degree deg f * deg g, content removed.
pub fn composed_poly(op: ComposeOp, f: &Poly, g: &Poly) -> Result<Poly, SpectralError> {
    require_input(f)?;
    require_input(g)?;
    let m = g.deg();
    let b: BiPoly = match op {
        // g(z - x) = Σ b_j Σ_i C(j, i) z^(j-i) (-x)^i
        ComposeOp::Sum => {
            let mut b = vec![Poly::zero(); m + 1];
            for (j, bj) in g.coeffs().iter().enumerate() {
                for (i, slot) in b.iter_mut().enumerate().take(j + 1) {
                    let mut c = bj * binomial(BigInt::from(j), BigInt::from(i));
                    if i % 2 == 1 {
                        c = -c;
                    }
                    *slot = &*slot + &Poly::monomial(c, j - i);
                }
            }
            b
        }
        // x^m g(z / x) = Σ b_j z^j x^(m-j)
        ComposeOp::Product => {
            let mut b = vec![Poly::zero(); m + 1];
            for (j, bj) in g.coeffs().iter().enumerate() {
                b[m - j] = Poly::monomial(bj.clone(), j);
            }
            b
        }
    };
    let r = resultant_x(&constant_coeffs(f), &b);
    if r.is_zero() {
        return Err(SpectralError::Degree("resultant vanished identically".into()));
    }
    Ok(normalize(&r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootfind::all_roots;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    fn numeric_roots(f: &Poly) -> Vec<Complex64> {
        let rs = all_roots(f, 96).unwrap();
        let mut out = Vec::new();
        for r in &rs.roots {
            for _ in 0..r.mult {
                out.push(r.center.to_c64());
            }
        }
        out
    }

    fn match_multisets(mut a: Vec<Complex64>, b: Vec<Complex64>, tol: f64) -> bool {
        if a.len() != b.len() {
            return false;
        }
        for z in b {
            let Some(i) = (0..a.len()).min_by(|&i, &j| (a[i] - z).norm().partial_cmp(&(a[j] - z).norm()).unwrap())
            else {
                return false;
            };
            if (a[i] - z).norm() > tol * (1.0 + z.norm()) {
                return false;
            }
            a.swap_remove(i);
        }
        true
    }

    #[test]
    fn determinant_matches_integer_cofactor() {
        let m: Vec<Vec<Poly>> = [[2, 0, 1], [1, 3, 2], [0, 1, 1]]
            .iter()
            .map(|r| r.iter().map(|&v| Poly::from_i64s(&[v])).collect())
            .collect();
        // 2(3-2) - 0 + 1(1-0) = 3
        assert_eq!(det_zz(m), p(&[3]));
        let zero_pivot: Vec<Vec<Poly>> = [[0, 1], [1, 0]]
            .iter()
            .map(|r| r.iter().map(|&v| Poly::from_i64s(&[v])).collect())
            .collect();
        assert_eq!(det_zz(zero_pivot), p(&[-1]));
    }

    #[test]
    fn ratio_examples() {
        let want = &p(&[-1, 1]).pow(2) * &p(&[1, -7, 1]);
        assert_eq!(ratio_resultant(&p(&[1, -3, 1])).unwrap(), want);
        assert_eq!(ratio_resultant(&p(&[-2, 1])).unwrap(), p(&[-1, 1]));
        let want = &p(&[-1, 1]).pow(2) * &p(&[1, 1]).pow(2);
        assert_eq!(ratio_resultant(&p(&[-1, 0, 1])).unwrap(), want);
        assert!(matches!(ratio_resultant(&p(&[1, -2, 1])), Err(SpectralError::NotSquarefree(_))));
        assert_eq!(ratio_resultant(&p(&[0, -1, 1])), Err(SpectralError::ZeroRoot));
    }

    #[test]
    fn golden_ratio_roots_numerically() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let r = ratio_resultant(&p(&[1, -3, 1])).unwrap();
        let got = numeric_roots(&r);
        let want = [1.0, 1.0, phi.powi(4), phi.powi(-4)].map(|x| Complex64::new(x, 0.0)).to_vec();
        assert!(match_multisets(got, want, 1e-9));
    }

    #[test]
    fn composed_examples() {
        let s = composed_poly(ComposeOp::Sum, &p(&[-2, 0, 1]), &p(&[-3, 0, 1])).unwrap();
        assert_eq!(s, p(&[1, 0, -10, 0, 1]));
        let v = 2f64.sqrt() + 3f64.sqrt();
        let e: f64 = s.coeffs().iter().rev().fold(0.0, |acc, c| acc * v + c.to_string().parse::<f64>().unwrap());
        assert!(e.abs() < 1e-9);
        assert_eq!(composed_poly(ComposeOp::Product, &p(&[-2, 1]), &p(&[-3, 1])).unwrap(), p(&[-6, 1]));
        assert_eq!(composed_poly(ComposeOp::Sum, &p(&[-1, 1]), &p(&[-1, 1])).unwrap(), p(&[-2, 1]));
        // √2 · √3 = ±√6, each twice
        let pr = composed_poly(ComposeOp::Product, &p(&[-2, 0, 1]), &p(&[-3, 0, 1])).unwrap();
        assert_eq!(pr, p(&[-6, 0, 1]).pow(2));
    }

    fn small_sqfree(max_deg: usize) -> impl Strategy<Value = Poly> {
        prop::collection::vec(-6i64..=6, 2..=max_deg + 1)
            .prop_map(|mut c| {
                let n = c.len();
                if c[n - 1] == 0 {
                    c[n - 1] = 1;
                }
                if c[0] == 0 {
                    c[0] = -1;
                }
                Poly::from_i64s(&c)
            })
            .prop_filter("square-free", is_squarefree)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn ratio_roots_are_pairwise_quotients(mu in small_sqfree(4)) {
            let r = ratio_resultant(&mu).unwrap();
            prop_assert_eq!(r.deg(), mu.deg() * mu.deg());
            let one = p(&[-1, 1]);
            let mut rr = r.clone();
            let mut mult = 0;
            while one.divides(&rr) {
                rr = rr.exact_div(&one).unwrap();
                mult += 1;
            }
            prop_assert!(mult >= mu.deg());
            let roots = numeric_roots(&mu);
            let mut want = Vec::new();
            for a in &roots {
                for b in &roots {
                    want.push(a / b);
                }
            }
            // numeric clusters of equal ratios are loose; compare with a
            // tolerance scaled to their conditioning
            let got = numeric_roots(&r);
            prop_assert!(match_multisets(got, want, 1e-5));
        }

        #[test]
        fn composed_vanishes_on_sums_and_products(f in small_sqfree(3), g in small_sqfree(3)) {
            let rf = numeric_roots(&f);
            let rg = numeric_roots(&g);
            for (op, comb) in [
                (ComposeOp::Sum, (|a: Complex64, b: Complex64| a + b) as fn(Complex64, Complex64) -> Complex64),
                (ComposeOp::Product, |a, b| a * b),
            ] {
                let h = composed_poly(op, &f, &g).unwrap();
                prop_assert_eq!(h.deg(), f.deg() * g.deg());
                let mut want = Vec::new();
                for a in &rf {
                    for b in &rg {
                        want.push(comb(*a, *b));
                    }
                }
                let got = numeric_roots(&h);
                prop_assert!(match_multisets(got, want, 1e-5));
            }
        }
    }
}
