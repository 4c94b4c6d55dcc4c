use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division is not exact over the integers")]
    NotIntegral,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// Dense univariate polynomial over Z, coefficients in ascending order
/// (index i holds the coefficient of x^i). The zero polynomial has no
/// coefficients and the last stored coefficient is never zero.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "PolyRepr", into = "PolyRepr")]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    #[serde(with = "super::decimal::vec")]
    coeffs: Vec<BigInt>,
}

impl From<PolyRepr> for Poly {
    fn from(r: PolyRepr) -> Self {
        Poly::new(r.coeffs)
    }
}

impl From<Poly> for PolyRepr {
    fn from(p: Poly) -> Self {
        PolyRepr { coeffs: p.coeffs }
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Poly::from_i64s(&[0, 1])
    }

    pub fn constant(c: BigInt) -> Self {
        Poly::new(vec![c])
    }

    /// c * x^n
    pub fn monomial(c: BigInt, n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n];
        coeffs.push(c);
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; for call sites that have
    /// already excluded zero.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * x + BigRational::from_integer(c.clone())
        })
    }

    /// Sign of f(x) at a rational point, computed without building the
    /// rational value: evaluates the homogenised numerator in integers.
    pub fn sign_at(&self, x: &BigRational) -> Sign {
        let num = x.numer();
        let den = x.denom();
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &den_pow;
            den_pow *= den;
        }
        acc.sign()
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides every coefficient by `c`, which must divide them all.
    pub fn div_exact_scalar(&self, c: &BigInt) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .map(|a| {
                    debug_assert!((a % c).is_zero());
                    a / c
                })
                .collect(),
        )
    }

    /// Greatest common divisor of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// (c, g) with f = c * g, g primitive with positive leading coefficient.
    pub fn content_primitive(&self) -> Result<(BigInt, Poly), PolyError> {
        let lc = self.leading().ok_or(PolyError::ZeroPolynomial)?;
        let mut c = self.content();
        if lc.is_negative() {
            c = -c;
        }
        Ok((c.clone(), self.div_exact_scalar(&c)))
    }

    pub fn primitive_part(&self) -> Poly {
        match self.content_primitive() {
            Ok((_, g)) => g,
            Err(_) => Poly::zero(),
        }
    }

    /// Long division over Z. Succeeds when every quotient step is an exact
    /// integer division (always the case for monic divisors), returning
    /// (q, r) with self = q*b + r and deg r < deg b.
    pub fn divrem(&self, b: &Poly) -> Result<(Poly, Poly), PolyError> {
        let lb = b.leading().ok_or(PolyError::DivisionByZero)?;
        let db = b.deg();
        let mut r = self.coeffs.clone();
        if r.len() < b.coeffs.len() {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut q = vec![BigInt::zero(); r.len() - db];
        for i in (0..q.len()).rev() {
            let top = &r[i + db];
            if top.is_zero() {
                continue;
            }
            let (qi, rem) = top.div_rem(lb);
            if !rem.is_zero() {
                return Err(PolyError::NotIntegral);
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                r[i + j] -= &qi * bj;
            }
            q[i] = qi;
        }
        r.truncate(db);
        Ok((Poly::new(q), Poly::new(r)))
    }

    /// Pseudo-division: returns (m, q, r) with m*self = q*b + r, deg r < deg b,
    /// where m = lc(b)^(deg self - deg b + 1).
    pub fn pseudo_divrem(&self, b: &Poly) -> Result<(BigInt, Poly, Poly), PolyError> {
        let lb = b.leading().ok_or(PolyError::DivisionByZero)?.clone();
        let (da, db) = match self.degree() {
            Some(da) if da >= b.deg() => (da, b.deg()),
            _ => return Ok((BigInt::one(), Poly::zero(), self.clone())),
        };
        let delta = da - db + 1;
        let m = num_traits::pow(lb.clone(), delta);
        let scaled = self.scale(&m);
        let (q, r) = scaled
            .divrem(b)
            .expect("pseudo-division by lc^(delta) is always integral");
        Ok((m, q, r))
    }

    /// Exact quotient; errors if `b` does not divide `self` in Z[x].
    pub fn exact_div(&self, b: &Poly) -> Result<Poly, PolyError> {
        let (q, r) = self.divrem(b)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::NotIntegral)
        }
    }

    pub fn divides(&self, f: &Poly) -> bool {
        !self.is_zero() && f.exact_div(self).is_ok()
    }

    /// Primitive gcd in Z[x] with positive leading coefficient; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.primitive_part_with_content();
        }
        if other.is_zero() {
            return self.primitive_part_with_content();
        }
        let cont = self.content().gcd(&other.content());
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (_, _, r) = a.pseudo_divrem(&b).expect("b is nonzero");
            a = b;
            b = r.primitive_part();
        }
        a.scale(&cont)
    }

    fn primitive_part_with_content(&self) -> Poly {
        match self.leading() {
            Some(lc) if lc.is_negative() => -self.clone(),
            _ => self.clone(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// f(x + c)
    pub fn shift(&self, c: &BigInt) -> Poly {
        let lin = Poly::new(vec![c.clone(), BigInt::one()]);
        self.compose(&lin)
    }

    /// f(g(x)) by Horner's rule.
    pub fn compose(&self, g: &Poly) -> Poly {
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            &(&acc * g) + &Poly::constant(c.clone())
        })
    }

    /// f(-x)
    pub fn reflect(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// x^deg * f(1/x)
    pub fn reverse(&self) -> Poly {
        let mut c = self.coeffs.clone();
        c.reverse();
        Poly::new(c)
    }

    pub fn is_palindromic(&self) -> bool {
        !self.is_zero() && self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// Multiplicity of 0 as a root and the cofactor.
    pub fn split_zero_roots(&self) -> (usize, Poly) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (k, Poly::new(self.coeffs[k..].to_vec()))
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }

    /// Ascending comma-separated coefficients, e.g. "1,-3,1".
    pub fn to_inline(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_inline(s: &str) -> Result<Poly, PolyError> {
        let coeffs = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<BigInt>()
                    .map_err(|_| PolyError::Parse(format!("bad coefficient {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Poly::new(coeffs))
    }
}

impl FromStr for Poly {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Poly::parse_inline(s)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
