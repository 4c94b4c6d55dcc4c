use num_bigint::BigInt;
use num_complex::Complex64;
use proptest::prelude::*;

use spectral_core::exact::Poly;
use spectral_core::intmat::Mat;
use spectral_core::rootfind::{
    all_roots, spectral_ratio_of_poly, spectral_ratio_via_palindromic, RatioInterval, RootError,
};
use spectral_core::spectral::spectral_ratio_of_matrix;

const BITS: u32 = 128;

fn overlap(a: RatioInterval, b: RatioInterval) -> bool {
    let slack = 1e-12 * a.hi.max(b.hi);
    a.lo <= b.hi + slack && b.lo <= a.hi + slack
}

fn arb_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-30i64..=30, 2..=max_deg + 1).prop_filter_map("degree and constant term", |mut c| {
        let n = c.len() - 1;
        if c[n] == 0 {
            c[n] = 1;
        }
        (c[0] != 0).then(|| Poly::from_i64s(&c))
    })
}

fn arb_palindromic() -> impl Strategy<Value = Poly> {
    (prop::collection::vec(-30i64..=30, 1..=4), -30i64..=30).prop_filter_map("nonzero ends", |(half, mid)| {
        if half[0] == 0 {
            return None;
        }
        let mut c = half.clone();
        c.push(mid);
        c.extend(half.iter().rev());
        Some(Poly::from_i64s(&c))
    })
}

fn elementary(n: usize, i: usize, j: usize, c: i64) -> Mat {
    let mut m = Mat::identity(n);
    if i != j {
        m.set(i, j, BigInt::from(c));
    }
    m
}

fn arb_unimodular() -> impl Strategy<Value = Mat> {
    prop::collection::vec((0usize..3, 0usize..3, -2i64..=2), 1..5).prop_map(|ops| {
        ops.into_iter().fold(Mat::identity(3), |acc, (i, j, c)| acc.checked_mul(&elementary(3, i, j, c)).unwrap())
    })
}

fn root_product(f: &Poly) -> Complex64 {
    let rs = all_roots(f, BITS).unwrap();
    assert_eq!(rs.degree_count(), f.deg());
    rs.roots.iter().fold(Complex64::new(1.0, 0.0), |acc, r| acc * r.center.to_c64().powu(r.mult as u32))
}

fn to_f64(x: &BigInt) -> f64 {
    x.to_string().parse().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn roots_complete_and_multiply_to_constant(f in arb_poly(7)) {
        let n = f.deg();
        let want = to_f64(&f.coeff(0)) / to_f64(f.leading().unwrap()) * if n % 2 == 0 { 1.0 } else { -1.0 };
        let got = root_product(&f);
        prop_assert!((got - Complex64::new(want, 0.0)).norm() <= 1e-8 * want.abs().max(1.0), "{f}: {got} vs {want}");
    }

    #[test]
    fn repeated_factors_counted(f in arb_poly(3)) {
        let g = &f * &f;
        let rs = all_roots(&g, BITS).unwrap();
        prop_assert_eq!(rs.degree_count(), g.deg());
    }

    #[test]
    fn palindromic_roots_pair_up(p in arb_palindromic()) {
        let rs = all_roots(&p, BITS).unwrap();
        let zs: Vec<Complex64> = rs.roots.iter().map(|r| r.center.to_c64()).collect();
        for z in &zs {
            prop_assert!(zs.iter().any(|w| (z * w - 1.0).norm() < 1e-6), "{p}: {z} unpaired");
        }
    }

    #[test]
    fn ratio_at_least_one_and_invariant(f in arb_poly(6), c in prop_oneof![-5i64..=-1, 1i64..=5]) {
        let Ok(a) = spectral_ratio_of_poly(&f, BITS) else { return Ok(()) };
        prop_assert!(a.ratio.lo >= 1.0);
        let b = spectral_ratio_of_poly(&f.reflect(), BITS).unwrap();
        prop_assert!(overlap(a.ratio, b.ratio), "{f}: x -> -x gave {:?} vs {:?}", a.ratio, b.ratio);
        let s = spectral_ratio_of_poly(&f.scale(&BigInt::from(c)), BITS).unwrap();
        prop_assert!(overlap(a.ratio, s.ratio), "{f}: scaling gave {:?} vs {:?}", a.ratio, s.ratio);
    }

    #[test]
    fn palindromic_path_agrees_with_direct(p in arb_palindromic()) {
        let via = match spectral_ratio_via_palindromic(&p, BITS) {
            Ok(r) => r,
            Err(RootError::ComplexReduced) | Err(RootError::Tie(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(format!("{p}: {e}"))),
        };
        let direct = spectral_ratio_of_poly(&p, BITS).unwrap();
        prop_assert!(overlap(via.ratio, direct.ratio), "{p}: {:?} vs {:?}", via.ratio, direct.ratio);
    }

    #[test]
    fn matrix_ratio_similarity_invariant(
        entries in prop::collection::vec(0i64..=5, 9),
        p in arb_unimodular(),
    ) {
        let rows: Vec<&[i64]> = entries.chunks(3).collect();
        let m = Mat::from_i64_rows(&rows).unwrap();
        let pi = p.unimodular_inverse().unwrap();
        let c = p.checked_mul(&m).unwrap().checked_mul(&pi).unwrap();
        prop_assert_eq!(m.char_poly(), c.char_poly());
        let a = spectral_ratio_of_matrix(&m, BITS);
        let b = spectral_ratio_of_matrix(&c, BITS);
        match (a, b) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(&a.minimal_poly, &b.minimal_poly);
                prop_assert!(overlap(a.ratio_interval, b.ratio_interval));
            }
            (Err(x), Err(y)) => prop_assert_eq!(x.to_string(), y.to_string()),
            (a, b) => return Err(TestCaseError::fail(format!("{a:?} vs {b:?}"))),
        }
    }
}
