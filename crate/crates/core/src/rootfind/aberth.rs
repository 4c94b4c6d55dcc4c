//! All complex roots: Aberth iteration in f64 from Newton-polygon starting
//! points, refinement at the working precision, then exact a-posteriori
//! certification with Smith's inclusion disks
//! r_i = n |f(z_i)| / (|a_n| Π_{j≠i} |z_i - z_j|).

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::rat::{f64_up, from_f64, log2_abs_int, sqrt_upper};
use crate::exact::Poly;
use crate::factorz::squarefree_decompose;

use super::complex::{eval, eval_rounded, CRat};
use super::{Root, RootError, RootSet};

/// Upper convex hull of (i, log2|a_i|) gives one starting circle per edge.
fn newton_polygon_init(f: &Poly) -> Vec<Complex64> {
    let pts: Vec<(usize, f64)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, log2_abs_int(c)))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 as f64 - a.0 as f64) * (p.1 - a.1) - (b.1 - a.1) * (p.0 as f64 - a.0 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::with_capacity(f.deg());
    let sigma = 0.7;
    for w in hull.windows(2) {
        let (i, li) = w[0];
        let (j, lj) = w[1];
        let k = j - i;
        let u = ((li - lj) / k as f64).exp2().clamp(1e-300, 1e300);
        for t in 0..k {
            let theta = 2.0 * PI * t as f64 / k as f64 + PI / (2.0 * k as f64) + sigma + out.len() as f64 * 0.01;
            out.push(Complex64::from_polar(u, theta));
        }
    }
    out
}

fn f64_coeffs(f: &Poly) -> Vec<f64> {
    let top = f.coeffs().iter().map(|c| c.bits()).max().unwrap_or(0);
    let shift = top.saturating_sub(900);
    f.coeffs()
        .iter()
        .map(|c| {
            let s: BigInt = if shift > 0 { c >> shift } else { c.clone() };
            s.to_f64().unwrap_or(0.0)
        })
        .collect()
}

fn horner2(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

fn aberth_f64(f: &Poly, mut z: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let c = f64_coeffs(f);
    let n = z.len();
    for _ in 0..500 {
        let mut worst: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = horner2(&c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let w = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let corr = w / (Complex64::new(1.0, 0.0) - w * s);
            if !corr.is_finite() {
                return None;
            }
            z[i] -= corr;
            worst = worst.max(corr.norm() / z[i].norm().max(f64::MIN_POSITIVE));
        }
        if worst < 1e-15 {
            break;
        }
    }
    z.iter().all(|w| w.is_finite()).then_some(z)
}

/// Aberth steps in rounded rational arithmetic until the relative update
/// falls below 2^-(bits-8).
fn aberth_refine(f: &Poly, z: &mut [CRat], bits: u32, max_iter: usize) {
    let df = f.derivative();
    let n = z.len();
    let tol = BigRational::from_integer(BigInt::one() << (2 * bits.saturating_sub(8)) as u64);
    for _ in 0..max_iter {
        let mut converged = true;
        for i in 0..n {
            let p = eval_rounded(f, &z[i], bits);
            if p.is_zero() {
                continue;
            }
            let dp = eval_rounded(&df, &z[i], bits);
            if dp.is_zero() {
                converged = false;
                continue;
            }
            let w = p.div(&dp).round(bits);
            let mut s = CRat::zero();
            for j in 0..n {
                if j != i {
                    let d = &z[i] - &z[j];
                    if !d.is_zero() {
                        s = &s + &d.inv().round(bits);
                    }
                }
            }
            let denom = &CRat::one() - &(&w * &s);
            if denom.is_zero() {
                converged = false;
                continue;
            }
            let corr = w.div(&denom).round_rel(bits);
            z[i] = (&z[i] - &corr).round_rel(bits + 8);
            if corr.norm_sqr() * &tol > z[i].norm_sqr() {
                converged = false;
            }
        }
        if converged {
            break;
        }
    }
}

/// Smith radii (as exact f64-representable rationals) and residual bounds,
/// or None when two centres coincide.
fn smith_radii(f: &Poly, z: &[CRat]) -> Option<Vec<(BigRational, f64)>> {
    let n = z.len();
    let lc = BigRational::from_integer(f.leading().unwrap().clone());
    let nn = BigRational::from_integer(BigInt::from(n * n));
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let pz2 = eval(f, &z[i]).norm_sqr();
        let mut den = &lc * &lc;
        for j in 0..n {
            if j != i {
                den *= (&z[i] - &z[j]).norm_sqr();
            }
        }
        if den.is_zero() {
            return None;
        }
        let r2 = &nn * &pz2 / den;
        let r = f64_up(&sqrt_upper(&r2, 60));
        let residual = f64_up(&sqrt_upper(&pz2, 60));
        if !r.is_finite() {
            return None;
        }
        out.push((from_f64(r), residual));
    }
    Some(out)
}

fn disjoint(a: &Root, b: &Root) -> bool {
    let d2 = (&a.center - &b.center).norm_sqr();
    let s = &a.radius + &b.radius;
    d2 > &s * &s
}

fn all_disjoint(roots: &[Root]) -> bool {
    (0..roots.len()).all(|i| (i + 1..roots.len()).all(|j| disjoint(&roots[i], &roots[j])))
}

/// r <= 2^-target |z| for every root
fn meets_target(roots: &[Root], target: u32) -> bool {
    let scale = BigRational::from_integer(BigInt::one() << (2 * target) as u64);
    roots
        .iter()
        .all(|r| r.radius.is_zero() || &r.radius * &r.radius * &scale <= r.center.norm_sqr())
}

fn try_certify(f: &Poly, z: &[CRat], mult: usize) -> Option<Vec<Root>> {
    let radii = smith_radii(f, z)?;
    let roots: Vec<Root> = z
        .iter()
        .zip(radii)
        .map(|(c, (radius, residual))| Root { center: c.clone(), radius, mult, residual })
        .collect();
    all_disjoint(&roots).then_some(roots)
}

/// Roots of a square-free part at working precision `bits`.
fn squarefree_roots(f: &Poly, mult: usize, bits: u32, start: &mut Option<Vec<CRat>>) -> Vec<Root> {
    let n = f.deg();
    if n == 1 {
        let r = BigRational::new(-f.coeff(0), f.coeff(1));
        return vec![Root { center: CRat::real(r), radius: BigRational::zero(), mult, residual: 0.0 }];
    }
    let mut z = match start.take() {
        Some(z) => z,
        None => {
            let init = newton_polygon_init(f);
            match aberth_f64(f, init.clone()) {
                Some(w) => w.into_iter().map(CRat::from_c64).collect(),
                None => {
                    let mut z: Vec<CRat> = init.into_iter().map(CRat::from_c64).collect();
                    aberth_refine(f, &mut z, 64, 400);
                    z
                }
            }
        }
    };
    aberth_refine(f, &mut z, bits, 60);
    // snap nearly real centres onto the axis; a disk symmetric about the
    // axis holding a single root then certifies that root real
    let thresh = BigRational::from_integer(BigInt::one() << bits as u64);
    let snapped: Vec<CRat> = z
        .iter()
        .map(|c| {
            if &c.im * &c.im * &thresh <= c.re.clone() * &c.re {
                CRat::real(c.re.clone())
            } else {
                c.clone()
            }
        })
        .collect();
    let roots = try_certify(f, &snapped, mult)
        .or_else(|| try_certify(f, &z, mult))
        .unwrap_or_else(|| {
            // uncertified: report with infinite radius so the caller escalates
            z.iter()
                .map(|c| Root { center: c.clone(), radius: from_f64(f64::MAX), mult, residual: f64::INFINITY })
                .collect()
        });
    *start = Some(z);
    roots
}

fn is_certified(roots: &[Root]) -> bool {
    roots.iter().all(|r| r.residual.is_finite()) && all_disjoint(roots)
}

/// Certified approximations of every complex root of `f`, with multiplicities
/// from the square-free decomposition. Radii are driven below
/// 2^-(bits/2) |root|; the working precision is doubled up to three times
/// when that is not reached.
pub fn all_roots(f: &Poly, bits: u32) -> Result<RootSet, RootError> {
    if f.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    if f.deg() == 0 {
        return Err(RootError::Constant);
    }
    let bits = bits.max(32);
    let (zeros, g) = f.split_zero_roots();
    let parts = if g.deg() > 0 {
        squarefree_decompose(&g).map_err(|_| RootError::ZeroPolynomial)?
    } else {
        Vec::new()
    };
    let target = bits / 2;
    let mut starts: Vec<Option<Vec<CRat>>> = vec![None; parts.len()];
    let mut best: Vec<Root> = Vec::new();
    let mut work = bits;
    for _ in 0..4 {
        let mut roots = Vec::new();
        if zeros > 0 {
            roots.push(Root { center: CRat::zero(), radius: BigRational::zero(), mult: zeros, residual: 0.0 });
        }
        for ((part, mult), start) in parts.iter().zip(starts.iter_mut()) {
            roots.extend(squarefree_roots(part, *mult, work, start));
        }
        if is_certified(&roots) && meets_target(&roots, target) {
            return Ok(RootSet::new(f.clone(), roots, work));
        }
        best = roots;
        work *= 2;
    }
    let worst = best
        .iter()
        .map(|r| r.relative_radius())
        .fold(0.0, f64::max);
    Err(RootError::PrecisionUnattainable { bits: work / 2, worst_relative_radius: worst })
}

/// Relative radius r/|z| as a float, for reporting.
impl Root {
    pub fn relative_radius(&self) -> f64 {
        let m = crate::exact::rat::to_f64(&self.center.norm_sqr()).sqrt();
        let r = crate::exact::rat::to_f64(&self.radius);
        if m > 0.0 {
            r / m
        } else if r == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    }

    pub fn is_certified_positive_real(&self) -> bool {
        self.center.is_real() && self.center.re.is_positive() && self.center.re > self.radius
    }
}
