//! Palindromic polynomials: p(x) = x^m q(x + 1/x), and recovery of the
//! roots x = (y ± sqrt(y^2 - 4)) / 2 from the roots y of q.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::rat::{midpoint, sqrt_bounds, sqrt_upper, to_f64};
use crate::exact::Poly;

use super::complex::{int, CRat};
use super::ratio::{ratio_from_roots, SpectralRatio};
use super::sturm::{isolate_from_guesses, isolate_real_roots};
use super::{Certified, Root, RootError};

/// q of degree m with p(x) = x^m q(x + 1/x), for palindromic p of degree 2m.
pub fn palindromic_reduce(p: &Poly) -> Result<Poly, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    if !p.is_palindromic() {
        return Err(RootError::NotPalindromic);
    }
    if p.deg() % 2 == 1 {
        return Err(RootError::OddDegree);
    }
    let m = p.deg() / 2;
    // x^j + x^-j = T_j(y): T_0 = 2, T_1 = y, T_{j+1} = y T_j - T_{j-1}
    let y = Poly::x();
    let mut t_prev = Poly::from_i64s(&[2]);
    let mut t = y.clone();
    let mut q = Poly::constant(p.coeff(m));
    for j in 1..=m {
        q = &q + &t.scale(&p.coeff(m + j));
        let next = &(&y * &t) - &t_prev;
        t_prev = std::mem::replace(&mut t, next);
    }
    Ok(q)
}

/// Real interval [mid - rad, mid + rad].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealBall {
    pub mid: BigRational,
    pub rad: BigRational,
}

impl RealBall {
    pub fn exact(x: BigRational) -> Self {
        RealBall { mid: x, rad: BigRational::zero() }
    }

    pub fn from_interval(lo: &BigRational, hi: &BigRational) -> Self {
        RealBall { mid: midpoint(lo, hi), rad: (hi - lo) / int(2) }
    }

    pub fn certified(&self) -> Certified {
        Certified::from_bounds(&(&self.mid - &self.rad), &(&self.mid + &self.rad))
    }
}

/// Disk |z - center| <= rad.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexBall {
    pub center: CRat,
    pub rad: BigRational,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexBallJson {
    pub re: f64,
    pub im: f64,
    pub radius: f64,
}

impl ComplexBall {
    pub fn to_json(&self) -> ComplexBallJson {
        let j = self.clone().into_root().json();
        ComplexBallJson { re: j.re, im: j.im, radius: j.radius }
    }

    fn into_root(self) -> Root {
        Root { center: self.center, radius: rad_to_f64_rational(&self.rad), mult: 1, residual: f64::NAN }
    }
}

fn rad_to_f64_rational(r: &BigRational) -> BigRational {
    crate::exact::rat::from_f64(crate::exact::rat::f64_up(r))
}

/// Both solutions of x + 1/x = y for a certified real y, as (x+, x-) with
/// x+ the root with the + sign. Non-real conjugates when |y| < 2.
pub fn lift_palindromic_roots(y: &RealBall, bits: u32) -> (ComplexBall, ComplexBall) {
    let two = int(2);
    let four = int(4);
    let r = &y.rad;
    let ay = y.mid.abs();
    let d = &y.mid * &y.mid - &four;
    // |(y')^2 - 4 - d| <= 2|y| r + r^2 for |y' - y| <= r
    let spread = &two * &ay * r + r * r;
    let separated_real = &ay - r > two;
    let separated_complex = &ay + r < two;
    if separated_real || separated_complex {
        let (s_lo, s_hi) = sqrt_bounds(&d.abs(), bits);
        // |s' - s| <= |s'^2 - s^2| / (s' + s) <= spread / s_lo, and <= sqrt(spread)
        let ds = if spread.is_zero() {
            BigRational::zero()
        } else {
            let a = &spread / &s_lo;
            let b = sqrt_upper(&spread, 64);
            if a < b { a } else { b }
        };
        let rad = (r + &ds + (&s_hi - &s_lo)) / &two;
        let half_y = &y.mid / &two;
        let half_s = &s_lo / &two;
        if separated_real {
            let plus = ComplexBall { center: CRat::real(&half_y + &half_s), rad: rad.clone() };
            let minus = ComplexBall { center: CRat::real(&half_y - &half_s), rad };
            (plus, minus)
        } else {
            let plus = ComplexBall { center: CRat::new(half_y.clone(), half_s.clone()), rad: rad.clone() };
            let minus = ComplexBall { center: CRat::new(half_y, -half_s), rad };
            (plus, minus)
        }
    } else {
        // near |y| = 2 both roots sit within sqrt(|d| + spread)/2 of y/2
        let rad = (r + sqrt_upper(&(d.abs() + spread), bits)) / &two;
        let c = CRat::real(&y.mid / &two);
        (ComplexBall { center: c.clone(), rad: rad.clone() }, ComplexBall { center: c, rad })
    }
}

/// Three real roots of a cubic by the trigonometric (Viète) formula, or
/// None when the cubic has a non-real pair. Float initialiser only.
pub fn viete_cubic_roots(q: &Poly) -> Option<[f64; 3]> {
    if q.deg() != 3 {
        return None;
    }
    let c: Vec<f64> = q.coeffs().iter().map(|c| to_f64(&BigRational::from_integer(c.clone()))).collect();
    let (a, b, cc, d) = (c[3], c[2], c[1], c[0]);
    let p = (3.0 * a * cc - b * b) / (3.0 * a * a);
    let qq = (2.0 * b * b * b - 9.0 * a * b * cc + 27.0 * a * a * d) / (27.0 * a * a * a);
    if p >= 0.0 || 4.0 * p * p * p + 27.0 * qq * qq >= 0.0 {
        return None;
    }
    let m = 2.0 * (-p / 3.0).sqrt();
    let arg = ((3.0 * qq / (2.0 * p)) * (-3.0 / p).sqrt()).clamp(-1.0, 1.0);
    let theta = arg.acos() / 3.0;
    let shift = b / (3.0 * a);
    let mut out = [0.0; 3];
    for (k, o) in out.iter_mut().enumerate() {
        *o = m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos() - shift;
    }
    Some(out)
}

/// Roots of palindromic `p` through its reduction: Sturm-certified real
/// roots y of q (Viète-initialised for cubics), each lifted to two x.
/// Requires every root of q to be real.
pub fn palindromic_roots(p: &Poly, bits: u32) -> Result<(Poly, Vec<RealBall>, Vec<ComplexBall>), RootError> {
    let q = palindromic_reduce(p)?;
    let intervals = match viete_cubic_roots(&q) {
        Some(g) => isolate_from_guesses(&q, &g)?,
        None => isolate_real_roots(&q)?,
    };
    if intervals.len() != q.deg() {
        return Err(RootError::ComplexReduced);
    }
    let mut ys = Vec::new();
    let mut xs = Vec::new();
    for mut iv in intervals {
        iv.refine_bits(&q, bits + 8);
        let y = RealBall::from_interval(&iv.lo, &iv.hi);
        let (a, b) = lift_palindromic_roots(&y, bits + 8);
        ys.push(y);
        xs.push(a);
        xs.push(b);
    }
    Ok((q, ys, xs))
}

/// Spectral ratio from the lifted roots of the reduced polynomial; the
/// independent path used to cross-check the direct complex solve.
pub fn spectral_ratio_via_palindromic(p: &Poly, bits: u32) -> Result<SpectralRatio, RootError> {
    let mut bits = bits;
    for _ in 0..4 {
        let (_, _, xs) = palindromic_roots(p, bits)?;
        let roots: Vec<Root> = xs.into_iter().map(ComplexBall::into_root).collect();
        match ratio_from_roots(&roots, bits) {
            Err(RootError::PrecisionUnattainable { .. }) => bits *= 2,
            other => return other,
        }
    }
    Err(RootError::Tie("dominant root not separated by the palindromic path".into()))
}
