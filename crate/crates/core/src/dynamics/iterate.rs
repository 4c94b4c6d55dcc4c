//! Projective power iteration and rate fitting.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exact::rat::to_f64;
use crate::intmat::Mat;
use crate::rootfind::{all_roots, dominant_index, DEFAULT_BITS};
use crate::seed::{hash_words, mix};
use crate::spectral::least_squares;

use super::DynamicsError;

/// Distances below this are treated as rounding noise.
pub const DISTANCE_FLOOR: f64 = 1e-12;

/// A point of projective space, stored with L1 norm 1 and the sign chosen
/// so the coordinate sum is positive (ties broken by the largest entry).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ray {
    pub coords: Vec<f64>,
}

impl Ray {
    pub fn new(coords: Vec<f64>) -> Result<Self, DynamicsError> {
        if coords.is_empty() || coords.iter().any(|x| !x.is_finite()) {
            return Err(DynamicsError::BadRay("coordinates must be finite and non-empty".into()));
        }
        normalize(coords).map(|coords| Ray { coords }).ok_or(DynamicsError::BadRay("zero vector".into()))
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Total-variation distance between the normalized representatives.
    pub fn distance(&self, other: &Ray) -> f64 {
        tv(&self.coords, &other.coords)
    }
}

fn normalize(mut v: Vec<f64>) -> Option<Vec<f64>> {
    let l1: f64 = v.iter().map(|x| x.abs()).sum();
    if l1 == 0.0 || !l1.is_finite() {
        return None;
    }
    let sum: f64 = v.iter().sum();
    let flip = if sum.abs() > 1e-9 * l1 {
        sum < 0.0
    } else {
        let big = v.iter().cloned().fold(0.0f64, |m, x| if x.abs() > m.abs() { x } else { m });
        big < 0.0
    };
    let s = if flip { -1.0 / l1 } else { 1.0 / l1 };
    v.iter_mut().for_each(|x| *x *= s);
    Some(v)
}

fn tv(a: &[f64], b: &[f64]) -> f64 {
    0.5 * a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>()
}

fn mat_f64(m: &Mat) -> Vec<Vec<f64>> {
    m.to_f64_rows()
}

fn apply(m: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn square_scaled(p: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = p.len();
    let mut q = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            let a = p[i][k];
            if a == 0.0 {
                continue;
            }
            for j in 0..n {
                q[i][j] += a * p[k][j];
            }
        }
    }
    let max = q.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
    if max > 0.0 {
        q.iter_mut().flatten().for_each(|x| *x /= max);
    }
    q
}

/// Limit of the projective orbit of `v`: apply M^(2^j) (rescaled) until the
/// image stabilizes, then require a fixed point of M.
fn limit_ray(m: &[Vec<f64>], v: &[f64]) -> (Vec<f64>, bool) {
    let mut p = m.to_vec();
    let max = p.iter().flatten().fold(0.0f64, |a, x| a.max(x.abs()));
    if max > 0.0 {
        p.iter_mut().flatten().for_each(|x| *x /= max);
    }
    let Some(mut w) = normalize(apply(&p, v)) else {
        return (v.to_vec(), false);
    };
    for _ in 0..64 {
        p = square_scaled(&p);
        let Some(next) = normalize(apply(&p, &w)) else {
            return (w, false);
        };
        let d = tv(&next, &w);
        w = next;
        if d < 1e-16 {
            break;
        }
    }
    let fixed = normalize(apply(m, &w)).map(|mw| tv(&mw, &w) < 1e-10).unwrap_or(false);
    (w, fixed)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationTrace {
    pub matrix_id: String,
    pub start: Ray,
    /// d(v_n, v∞) for n = 0..=steps.
    pub distances: Vec<f64>,
    pub limit: Ray,
    pub steps: usize,
    pub converged: bool,
    pub fitted_rate: Option<f64>,
}

/// Stable identifier derived from the matrix entries.
pub fn matrix_id(m: &Mat) -> String {
    let words = std::iter::once(m.dim() as u64).chain(m.entries().iter().flat_map(|e| {
        let (sign, digits) = e.to_u64_digits();
        std::iter::once(sign as u64 ^ digits.len() as u64).chain(digits)
    }));
    format!("{:016x}", hash_words(words))
}

/// Iterates v ↦ M v projectively in floating point. Non-convergence is
/// reported through `converged`, not as an error.
pub fn project_iterate(m: &Mat, v0: &Ray, steps: usize) -> Result<IterationTrace, DynamicsError> {
    if v0.dim() != m.dim() {
        return Err(DynamicsError::Dimension(m.dim(), v0.dim()));
    }
    let mf = mat_f64(m);
    let mut iterates = Vec::with_capacity(steps + 1);
    iterates.push(v0.coords.clone());
    for n in 0..steps {
        match normalize(apply(&mf, &iterates[n])) {
            Some(v) => iterates.push(v),
            None => return Err(DynamicsError::BadRay(format!("orbit hit the zero vector at step {}", n + 1))),
        }
    }
    let (limit, converged) = limit_ray(&mf, iterates.last().unwrap());
    let distances = iterates.iter().map(|v| tv(v, &limit)).collect();
    let mut trace = IterationTrace {
        matrix_id: matrix_id(m),
        start: v0.clone(),
        distances,
        limit: Ray { coords: limit },
        steps,
        converged,
        fitted_rate: None,
    };
    if converged {
        trace.fitted_rate = estimate_rate(&trace).ok();
    }
    Ok(trace)
}

/// Exact integer iteration (at most 100 steps) as a cross-check: distances
/// of the exactly normalized iterates to the floating-point limit.
pub fn project_iterate_exact(m: &Mat, v0: &[BigInt], steps: usize) -> Result<Vec<f64>, DynamicsError> {
    if steps > 100 {
        return Err(DynamicsError::TooManySteps(steps));
    }
    if v0.len() != m.dim() {
        return Err(DynamicsError::Dimension(m.dim(), v0.len()));
    }
    let start: Vec<f64> = v0.iter().map(|x| to_f64(&BigRational::from_integer(x.clone()))).collect();
    let (limit, _) = limit_ray(&mat_f64(m), &normalize(start).ok_or(DynamicsError::BadRay("zero vector".into()))?);
    let mut v = v0.to_vec();
    let mut out = Vec::with_capacity(steps + 1);
    for n in 0..=steps {
        if n > 0 {
            v = (0..m.dim()).map(|i| (0..m.dim()).map(|j| m.get(i, j) * &v[j]).sum()).collect();
        }
        let l1: BigInt = v.iter().map(|x| x.abs()).sum();
        if l1.is_zero() {
            return Err(DynamicsError::BadRay("orbit hit the zero vector".into()));
        }
        let sum: BigInt = v.iter().sum();
        let l1 = if sum.is_negative() { -l1 } else { l1 };
        let w: Vec<f64> = v.iter().map(|x| to_f64(&BigRational::new(x.clone(), l1.clone()))).collect();
        out.push(tv(&w, &limit));
    }
    Ok(out)
}

/// Contraction factor per step: 2^slope of the least-squares fit of
/// log2 d_n against n, over the steps after the transient (the first n
/// with d_n < d_0 / 10) and before the distances reach the numeric floor.
pub fn estimate_rate(trace: &IterationTrace) -> Result<f64, DynamicsError> {
    let d = &trace.distances;
    let d0 = *d.first().ok_or(DynamicsError::InsufficientSteps(0))?;
    let Some(cut) = d.iter().position(|&x| x < d0 / 10.0) else {
        return Err(DynamicsError::InsufficientSteps(0));
    };
    let run: Vec<(f64, f64)> = d[cut..]
        .iter()
        .enumerate()
        .take_while(|(_, &x)| x > DISTANCE_FLOOR)
        .map(|(i, &x)| ((cut + i) as f64, x.log2()))
        .collect();
    if run.len() < 10 {
        return Err(DynamicsError::InsufficientSteps(run.len()));
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = run.into_iter().unzip();
    let (fit, _) = least_squares(&xs, &ys);
    Ok(fit.slope.exp2())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NorthSouthReport {
    pub matrix_id: String,
    pub trials: usize,
    pub seed: u64,
    pub lambda1: f64,
    pub limit: Ray,
    pub max_pairwise_distance: f64,
    /// max over trials of ||M v∞ - λ1 v∞||_1 with ||v∞||_1 = 1.
    pub max_eigen_residual: f64,
    pub passed: bool,
}

/// Random positive starts all converge to one limit ray, which is the
/// Perron eigenvector. Requires a primitive nonnegative matrix unless
/// `assume_primitive` is set.
pub fn north_south_check(
    m: &Mat,
    trials: usize,
    seed: u64,
    assume_primitive: bool,
) -> Result<NorthSouthReport, DynamicsError> {
    if trials == 0 {
        return Err(DynamicsError::ZeroCount);
    }
    if !assume_primitive && !m.is_primitive() {
        return Err(DynamicsError::NotPrimitive);
    }
    let rs = all_roots(&m.char_poly(), DEFAULT_BITS).map_err(|e| DynamicsError::NotSimple(e.to_string()))?;
    let i = dominant_index(&rs.roots).map_err(|e| DynamicsError::NotSimple(e.to_string()))?;
    let l1 = rs.roots[i].real_part().value;
    if l1 <= 0.0 {
        return Err(DynamicsError::NotSimple("dominant eigenvalue is not positive".into()));
    }
    let mf = mat_f64(m);
    let limits = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, t as u64));
            let v: Vec<f64> = (0..m.dim()).map(|_| rng.gen_range(0.01..1.0)).collect();
            let (w, ok) = limit_ray(&mf, &normalize(v).unwrap());
            if ok {
                Ok(w)
            } else {
                Err(DynamicsError::Divergent(t))
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut max_pair = 0.0f64;
    for a in 0..limits.len() {
        for b in a + 1..limits.len() {
            max_pair = max_pair.max(tv(&limits[a], &limits[b]));
        }
    }
    let residual = limits
        .iter()
        .map(|w| apply(&mf, w).iter().zip(w).map(|(x, y)| (x - l1 * y).abs()).sum::<f64>())
        .fold(0.0f64, f64::max);
    Ok(NorthSouthReport {
        matrix_id: matrix_id(m),
        trials,
        seed,
        lambda1: l1,
        limit: Ray { coords: limits[0].clone() },
        max_pairwise_distance: max_pair,
        max_eigen_residual: residual,
        passed: max_pair < 1e-8 && residual <= 1e-6 * l1,
    })
}

/// Uniform positive start in [0.01, 1)^n from a seed.
pub fn random_positive_ray(dim: usize, seed: u64) -> Ray {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ray::new((0..dim).map(|_| rng.gen_range(0.01..1.0)).collect()).unwrap()
}
