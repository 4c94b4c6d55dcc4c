//! Growth of -log2(σ - 1) against word length over a family.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::families::{instance_ratio, FamilyInstance};
use crate::rootfind::{Certified, RatioInterval};

use super::SpectralError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub residuals_max_abs: f64,
}

/// Ordinary least squares y ≈ slope x + intercept, with the residuals.
pub fn least_squares(xs: &[f64], ys: &[f64]) -> (LinearFit, Vec<f64>) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = if sxx == 0.0 { f64::NAN } else { sxy / sxx };
    let intercept = my - slope * mx;
    let residuals: Vec<f64> = xs.iter().zip(ys).map(|(x, y)| y - (slope * x + intercept)).collect();
    let residuals_max_abs = residuals.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    (LinearFit { slope, intercept, residuals_max_abs }, residuals)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowerBoundPoint {
    pub family: String,
    pub k: i64,
    pub word_length_proxy: u64,
    pub ratio: RatioInterval,
    /// -log2(σ - 1).
    pub neg_log2_gap: Certified,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowerBoundReport {
    pub points: Vec<LowerBoundPoint>,
    /// Fit of -log2(σ - 1) against the word-length proxy.
    pub fit_word_length: LinearFit,
    /// Fit of -log2(σ - 1) against the family parameter k.
    pub fit_k: LinearFit,
    pub residuals: Vec<f64>,
}

pub fn lower_bound_experiment(instances: &[FamilyInstance], bits: u32) -> Result<LowerBoundReport, SpectralError> {
    if instances.len() < 3 {
        return Err(SpectralError::TooFewInstances(instances.len()));
    }
    let points = instances
        .par_iter()
        .map(|inst| {
            let proxy = inst.word_length_proxy.ok_or_else(|| {
                SpectralError::Family(format!("{} has no word-length proxy", inst.label()))
            })?;
            let sr = instance_ratio(inst, bits)?;
            let (lo, hi) = (sr.ratio.lo - 1.0, sr.ratio.hi - 1.0);
            if lo <= 0.0 {
                return Err(SpectralError::RatioUndefined(format!(
                    "{}: σ - 1 not certified positive",
                    inst.label()
                )));
            }
            // the subtraction is exact for σ in [1, 2]; otherwise widen
            let slack = if sr.ratio.hi > 2.0 { f64::EPSILON * sr.ratio.hi } else { 0.0 };
            let (a, b) = (-(hi + slack).log2(), -(lo - slack).log2());
            let (a, b) = (a - 1e-12 * a.abs(), b + 1e-12 * b.abs());
            let mid = 0.5 * (a + b);
            Ok(LowerBoundPoint {
                family: inst.name.to_string(),
                k: inst.k,
                word_length_proxy: proxy,
                ratio: sr.ratio,
                neg_log2_gap: Certified { value: mid, radius: (b - mid).max(mid - a).next_up() },
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let ys: Vec<f64> = points.iter().map(|p| p.neg_log2_gap.value).collect();
    let xs: Vec<f64> = points.iter().map(|p| p.word_length_proxy as f64).collect();
    let ks: Vec<f64> = points.iter().map(|p| p.k as f64).collect();
    let (fit_word_length, residuals) = least_squares(&xs, &ys);
    let (fit_k, _) = least_squares(&ks, &ys);
    Ok(LowerBoundReport { points, fit_word_length, fit_k, residuals })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{instance, FamilyName};

    #[test]
    fn exact_line() {
        let (fit, res) = least_squares(&[1.0, 2.0, 3.0], &[3.0, 5.0, 7.0]);
        assert!((fit.slope - 2.0).abs() < 1e-12 && (fit.intercept - 1.0).abs() < 1e-12);
        assert!(res.iter().all(|r| r.abs() < 1e-12));
    }

    #[test]
    fn genus3_slope() {
        let fam: Vec<_> = [10, 18, 26].iter().map(|&k| instance(FamilyName::Genus3, k).unwrap()).collect();
        let rep = lower_bound_experiment(&fam, 128).unwrap();
        let log2phi = ((1.0 + 5f64.sqrt()) / 2.0).log2();
        assert!((rep.fit_k.slope - log2phi).abs() < 0.05, "{:?}", rep.fit_k);
        assert!((rep.fit_word_length.slope - log2phi / 2.0).abs() < 0.025);
    }

    #[test]
    fn too_few() {
        let fam = vec![instance(FamilyName::Gl3, 4).unwrap()];
        assert_eq!(lower_bound_experiment(&fam, 128), Err(SpectralError::TooFewInstances(1)));
    }
}
