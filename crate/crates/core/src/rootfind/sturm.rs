//! Real root isolation by Sturm sequences over Q.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::rat::{midpoint, to_f64};
use crate::exact::Poly;

use super::RootError;

/// Contains exactly one real root of the target polynomial in (lo, hi].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsolatingInterval {
    #[serde(with = "crate::exact::decimal::rational")]
    pub lo: BigRational,
    #[serde(with = "crate::exact::decimal::rational")]
    pub hi: BigRational,
    /// Difference of Sturm sign variations between lo and hi (always 1).
    pub sign_changes: usize,
}

impl IsolatingInterval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn mid_f64(&self) -> f64 {
        to_f64(&midpoint(&self.lo, &self.hi))
    }

    /// Bisects until the width is at most `width`. `f` must be the
    /// polynomial the interval was isolated for.
    pub fn refine(&mut self, f: &Poly, width: &BigRational) {
        let s_hi = f.sign_at(&self.hi);
        while &self.width() > width {
            let m = midpoint(&self.lo, &self.hi);
            let s_m = f.sign_at(&m);
            if s_hi == Sign::NoSign {
                // the root is hi itself
                self.lo = m;
            } else if s_m == Sign::NoSign || s_m == s_hi {
                self.hi = m;
                if s_m == Sign::NoSign {
                    return self.refine_exact_root(f, width);
                }
            } else {
                self.lo = m;
            }
        }
    }

    fn refine_exact_root(&mut self, f: &Poly, width: &BigRational) {
        debug_assert_eq!(f.sign_at(&self.hi), Sign::NoSign);
        while &self.width() > width {
            self.lo = midpoint(&self.lo, &self.hi);
        }
    }

    /// Refines to a relative width of about 2^-bits.
    pub fn refine_bits(&mut self, f: &Poly, bits: u32) {
        let scale = self.lo.abs().max(self.hi.abs());
        let scale = if scale.is_zero() { BigRational::one() } else { scale };
        let w = scale / BigRational::from_integer(BigInt::one() << bits);
        self.refine(f, &w);
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo < x && x <= &self.hi
    }
}

/// Sturm chain f, f', -rem(f, f'), ... kept primitive; pseudo-remainders
/// are sign-corrected so every member has the sign of the true remainder.
pub struct SturmChain {
    chain: Vec<Poly>,
}

impl SturmChain {
    pub fn new(f: &Poly) -> Self {
        let mut chain = vec![f.clone(), f.derivative()];
        loop {
            let n = chain.len();
            let (a, b) = (&chain[n - 2], &chain[n - 1]);
            if b.is_zero() || b.deg() == 0 {
                break;
            }
            let (mult, _, r) = a.pseudo_divrem(b).expect("nonzero divisor");
            if r.is_zero() {
                break;
            }
            let r = if mult.is_negative() { r } else { -r };
            let c = r.content();
            chain.push(r.div_exact_scalar(&c));
        }
        if chain.last().is_some_and(Poly::is_zero) {
            chain.pop();
        }
        SturmChain { chain }
    }

    fn variations(signs: impl Iterator<Item = Sign>) -> usize {
        let mut last = Sign::NoSign;
        let mut v = 0;
        for s in signs {
            if s == Sign::NoSign {
                continue;
            }
            if last != Sign::NoSign && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    fn variations_at_infinity(&self, negative: bool) -> usize {
        Self::variations(self.chain.iter().map(|p| {
            let s = p.leading().map(|c| c.sign()).unwrap_or(Sign::NoSign);
            if negative && p.deg() % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Number of distinct real roots in (a, b].
    pub fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at(a) - self.variations_at(b)
    }

    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(true) - self.variations_at_infinity(false)
    }
}

/// Cauchy bound: every root has modulus < 1 + max |a_i / a_n|.
pub fn cauchy_bound(f: &Poly) -> BigRational {
    let lc = BigRational::from_integer(f.leading().expect("nonzero").abs());
    let m = f.coeffs()[..f.deg()]
        .iter()
        .map(|c| BigRational::from_integer(c.abs()))
        .max()
        .unwrap_or_else(BigRational::zero);
    BigRational::one() + m / lc
}

fn require_squarefree(f: &Poly) -> Result<(), RootError> {
    if f.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    if f.gcd(&f.derivative()).deg() > 0 {
        return Err(RootError::NotSquarefree);
    }
    Ok(())
}

/// Isolating intervals for all real roots of a square-free `f`, in
/// increasing order.
pub fn isolate_real_roots(f: &Poly) -> Result<Vec<IsolatingInterval>, RootError> {
    require_squarefree(f)?;
    if f.deg() == 0 {
        return Ok(Vec::new());
    }
    let chain = SturmChain::new(f);
    let b = cauchy_bound(f);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = chain.count(&lo, &hi);
        match n {
            0 => {}
            1 => out.push(IsolatingInterval { lo, hi, sign_changes: 1 }),
            _ => {
                let m = midpoint(&lo, &hi);
                stack.push((lo, m.clone()));
                stack.push((m, hi));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

/// Tries to certify one isolating interval per float guess (each guess
/// widened by a relative margin) and checks that together they account for
/// every real root; falls back to bisection isolation otherwise.
pub fn isolate_from_guesses(f: &Poly, guesses: &[f64]) -> Result<Vec<IsolatingInterval>, RootError> {
    require_squarefree(f)?;
    let chain = SturmChain::new(f);
    let total = chain.count_all();
    if guesses.len() == total && guesses.iter().all(|g| g.is_finite()) {
        let mut sorted = guesses.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut out = Vec::new();
        for g in sorted {
            let eps = 1e-6 * g.abs().max(1e-3);
            let lo = BigRational::from_float(g - eps).unwrap();
            let hi = BigRational::from_float(g + eps).unwrap();
            if chain.count(&lo, &hi) != 1 {
                out.clear();
                break;
            }
            out.push(IsolatingInterval { lo, hi, sign_changes: 1 });
        }
        let disjoint = out.windows(2).all(|w| w[0].hi <= w[1].lo);
        if out.len() == total && disjoint {
            return Ok(out);
        }
    }
    isolate_real_roots(f)
}
