//! Spectral ratio |λ1/λ2| from certified roots.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::rat::{f64_down, f64_up, sqrt_upper};
use crate::exact::Poly;

use super::{all_roots, Certified, Root, RootError, RootJson};

/// lo <= σ <= hi.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioInterval {
    pub lo: f64,
    pub hi: f64,
}

impl RatioInterval {
    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn certified(&self) -> Certified {
        let value = self.mid();
        Certified { value, radius: (self.hi - value).max(value - self.lo).next_up() }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralRatio {
    pub ratio: RatioInterval,
    /// The certified root of strictly maximal modulus.
    pub dominant: Root,
    /// Modulus of the second root, max over the remaining roots.
    pub second_modulus: Certified,
    /// Index of the root attaining the second modulus.
    pub second: Root,
    pub precision_bits: u32,
}

#[derive(Serialize)]
struct SpectralRatioJson {
    ratio: f64,
    interval: RatioInterval,
    dominant: RootJson,
    dominant_modulus: Certified,
    second_modulus: Certified,
    precision_bits: u32,
}

impl Serialize for SpectralRatio {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SpectralRatioJson {
            ratio: self.ratio.mid(),
            interval: self.ratio,
            dominant: self.dominant.json(),
            dominant_modulus: self.dominant.modulus(),
            second_modulus: self.second_modulus,
            precision_bits: self.precision_bits,
        }
        .serialize(s)
    }
}

fn certified_nonreal(r: &Root) -> bool {
    &r.center.im * &r.center.im > &r.radius * &r.radius
}

/// Index of the root of strictly maximal modulus among `roots` (disks of
/// an integer polynomial's roots). A dominant root that is repeated or
/// certifiably non-real is a tie (its conjugate has the same modulus);
/// unresolved separation asks for more precision.
pub fn dominant_index(roots: &[Root]) -> Result<usize, RootError> {
    if roots.is_empty() {
        return Err(RootError::Constant);
    }
    let best = (0..roots.len())
        .max_by(|&a, &b| roots[a].center.norm_sqr().cmp(&roots[b].center.norm_sqr()))
        .unwrap();
    let d = &roots[best];
    if d.mult > 1 {
        return Err(RootError::Tie(format!("dominant root has multiplicity {}", d.mult)));
    }
    if certified_nonreal(d) {
        return Err(RootError::Tie("dominant root is non-real; its conjugate has equal modulus".into()));
    }
    let c1 = d.center.norm_sqr();
    for (j, r) in roots.iter().enumerate() {
        if j == best {
            continue;
        }
        // |c1| - r1 > |cj| + rj  <=  |c1|^2 > |cj|^2 + 2R u_j + R^2
        let big_r = &d.radius + &r.radius;
        let cj = r.center.norm_sqr();
        let uj = sqrt_upper(&cj, 64);
        let rhs = &cj + BigRational::from_integer(2.into()) * &big_r * &uj + &big_r * &big_r;
        if c1 <= rhs {
            return Err(RootError::PrecisionUnattainable {
                bits: 0,
                worst_relative_radius: d.relative_radius().max(r.relative_radius()),
            });
        }
    }
    Ok(best)
}

/// Ratio enclosure from certified disks; `bits` only sets the precision of
/// the modulus square roots.
pub fn ratio_from_roots(roots: &[Root], bits: u32) -> Result<SpectralRatio, RootError> {
    let count: usize = roots.iter().map(|r| r.mult).sum();
    if count < 2 {
        return Err(RootError::DegreeTooSmall(count));
    }
    let i = dominant_index(roots)?;
    let (m1_lo, m1_hi) = roots[i].modulus_bounds(bits + 16);
    let mut m2_lo = BigRational::zero();
    let mut m2_hi = BigRational::zero();
    let mut second = None;
    for (j, r) in roots.iter().enumerate() {
        if j == i {
            continue;
        }
        let (lo, hi) = r.modulus_bounds(bits + 16);
        if second.is_none() || hi > m2_hi {
            second = Some(j);
        }
        if lo > m2_lo {
            m2_lo = lo;
        }
        if hi > m2_hi {
            m2_hi = hi;
        }
    }
    if !m2_lo.is_positive() {
        return Err(RootError::PrecisionUnattainable { bits, worst_relative_radius: f64::INFINITY });
    }
    let lo = f64_down(&(&m1_lo / &m2_hi)).max(1.0);
    let hi = f64_up(&(&m1_hi / &m2_lo));
    Ok(SpectralRatio {
        ratio: RatioInterval { lo, hi },
        dominant: roots[i].clone(),
        second_modulus: Certified::from_bounds(&m2_lo, &m2_hi),
        second: roots[second.unwrap()].clone(),
        precision_bits: bits,
    })
}

/// Certified enclosure of |λ1|/|λ2| after removing zero roots. Precision is
/// doubled up to four times while the dominant root is not separated; a
/// repeated or non-real dominant root is reported as a tie.
pub fn spectral_ratio_of_poly(f: &Poly, bits: u32) -> Result<SpectralRatio, RootError> {
    if f.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let (_, g) = f.split_zero_roots();
    if g.deg() < 2 {
        return Err(RootError::DegreeTooSmall(g.deg()));
    }
    let mut bits = bits.max(32);
    let mut last = None;
    for _ in 0..5 {
        let rs = all_roots(&g, bits)?;
        match ratio_from_roots(&rs.roots, rs.precision_bits) {
            Err(RootError::PrecisionUnattainable { worst_relative_radius, .. }) => {
                last = Some(worst_relative_radius);
                bits *= 2;
            }
            other => return other,
        }
    }
    Err(RootError::Tie(format!(
        "|λ1| and |λ2| not separated at {} bits (relative radius {:e})",
        bits / 2,
        last.unwrap_or(f64::NAN)
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Poly;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    #[test]
    fn golden_quadratic() {
        let s = spectral_ratio_of_poly(&p(&[1, -3, 1]), 128).unwrap();
        let phi4 = ((1.0 + 5f64.sqrt()) / 2.0).powi(4);
        assert!(s.ratio.contains(phi4) || (s.ratio.mid() - phi4).abs() < 1e-14);
        assert!(s.ratio.width() < 1e-12);
        assert!((s.ratio.mid() - 6.854101).abs() < 1e-6);
    }

    #[test]
    fn sextic_and_cubic() {
        let s = spectral_ratio_of_poly(&p(&[1, 0, -6765, -28657, -6765, 0, 1]), 128).unwrap();
        assert!((s.ratio.mid() - 84.29654 / 80.050414).abs() < 1e-4);
        let s = spectral_ratio_of_poly(&p(&[-1, -16, 0, 1]), 128).unwrap();
        assert!((s.ratio.mid() - 1.0157).abs() < 1e-3);
    }

    #[test]
    fn invariances() {
        let f = p(&[-1, -16, 0, 1]);
        let a = spectral_ratio_of_poly(&f, 128).unwrap().ratio;
        let b = spectral_ratio_of_poly(&f.reflect(), 128).unwrap().ratio;
        let c = spectral_ratio_of_poly(&f.scale(&(-7).into()), 128).unwrap().ratio;
        assert!((a.mid() - b.mid()).abs() <= a.width() + b.width() + 1e-15);
        assert!((a.mid() - c.mid()).abs() <= a.width() + c.width() + 1e-15);
    }

    #[test]
    fn ties_and_degenerate() {
        assert!(matches!(spectral_ratio_of_poly(&p(&[1, 0, 1]), 128), Err(RootError::Tie(_))));
        assert!(matches!(spectral_ratio_of_poly(&p(&[4, -4, 1]), 128), Err(RootError::Tie(_))));
        assert!(matches!(spectral_ratio_of_poly(&p(&[-2, 0, 1]), 64), Err(RootError::Tie(_))));
        assert_eq!(spectral_ratio_of_poly(&p(&[0, -2, 1]), 128).unwrap_err(), RootError::DegreeTooSmall(1));
        // x^2 - 3x + 2: roots 2 and 1
        let s = spectral_ratio_of_poly(&p(&[2, -3, 1]), 128).unwrap();
        assert!(s.ratio.contains(2.0));
    }
}
