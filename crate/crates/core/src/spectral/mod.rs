//! Spectral ratios of polynomials, matrices and family instances; heights;
//! resultant constructions; the lemma checker and the lower-bound
//! experiment.

mod experiment;
mod fact;
mod height;
mod lemma;
mod resultant;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{decimal, Poly};
use crate::factorz::{factor_over_z, minimal_poly_of_dominant_root, Certificate, FactorError};
use crate::intmat::Mat;
use crate::rootfind::{spectral_ratio_of_poly, Certified, RatioInterval, RootError, SpectralRatio};

pub use experiment::{least_squares, lower_bound_experiment, LinearFit, LowerBoundPoint, LowerBoundReport};
pub use fact::{composed_minimal, fact_check, ComposedValue, FactReport};
pub use height::{height_bound, height_of_poly, log2_lower, log2_upper, weil_height, HeightOp, HeightValue};
pub use lemma::{alpha_of_ratio, lemma_check, AlphaValue, LemmaReport};
pub use resultant::{composed_poly, det_zz, normalize, ratio_resultant, resultant_x, BiPoly, ComposeOp};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("{0}")]
    Degree(String),
    #[error("polynomial {0} is not square-free")]
    NotSquarefree(String),
    #[error("polynomial has a zero root; ratios are undefined")]
    ZeroRoot,
    #[error("height must be a finite nonnegative number, got {0}")]
    InvalidHeight(f64),
    #[error("binary height bound needs a second height")]
    MissingOperand,
    #[error("polynomial {0} is not irreducible")]
    NotIrreducible(String),
    #[error("α is not certifiably nonzero")]
    AlphaNotNonzero,
    #[error("second root λ' is not real; α = |λ/λ'| - 1 is only constructed for real λ'")]
    ComplexSecond,
    #[error("could not isolate α: {0}")]
    AlphaNotIsolated(String),
    #[error("ratio undefined ({0})")]
    RatioUndefined(String),
    #[error("dominant root not unique: {0}")]
    Tie(String),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error("need at least 3 instances, got {0}")]
    TooFewInstances(usize),
    #[error("{0}")]
    Family(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportSource {
    Poly,
    Matrix,
    Family,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub source: ReportSource,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub minimal_poly: Poly,
    /// The dominant root λ of `minimal_poly`.
    pub dilatation: Certified,
    pub second_modulus: Certified,
    pub ratio: Certified,
    pub ratio_interval: RatioInterval,
    pub height_bits: f64,
    #[serde(with = "decimal")]
    pub height_max_coeff: BigInt,
    pub certificates: Vec<Certificate>,
    pub precision_bits: u32,
}

/// Minimal polynomial of the dominant root of `f`, its spectral ratio and
/// the irreducibility certificate.
pub fn analyze_poly(f: &Poly, bits: u32) -> Result<(Poly, SpectralRatio, Certificate), SpectralError> {
    let minimal = minimal_poly_of_dominant_root(f).map_err(|e| match e {
        FactorError::DominantNotUnique(s) => SpectralError::Tie(s),
        e => SpectralError::Factor(e),
    })?;
    if minimal.deg() < 2 {
        return Err(SpectralError::RatioUndefined(format!(
            "minimal polynomial {} has degree {}",
            display_poly(&minimal),
            minimal.deg()
        )));
    }
    let sr = spectral_ratio_of_poly(&minimal, bits).map_err(|e| match e {
        RootError::Tie(s) => SpectralError::Tie(s),
        e => SpectralError::Root(e),
    })?;
    let fac = factor_over_z(&minimal)?;
    debug_assert!(fac.is_irreducible());
    Ok((minimal, sr, fac.factors[0].certificate))
}

pub fn report_from(
    source: ReportSource,
    label: Option<String>,
    minimal: Poly,
    sr: &SpectralRatio,
    certificates: Vec<Certificate>,
) -> SpectralReport {
    let h = height_of_poly(&minimal).expect("nonzero");
    SpectralReport {
        source,
        label,
        dilatation: sr.dominant.real_part(),
        second_modulus: sr.second_modulus,
        ratio: sr.ratio.certified(),
        ratio_interval: sr.ratio,
        height_bits: h.value,
        height_max_coeff: h.max_coeff,
        certificates,
        precision_bits: sr.precision_bits,
        minimal_poly: minimal,
    }
}

pub fn spectral_report_of_poly(f: &Poly, bits: u32) -> Result<SpectralReport, SpectralError> {
    let (minimal, sr, cert) = analyze_poly(f, bits)?;
    Ok(report_from(ReportSource::Poly, None, minimal, &sr, vec![cert]))
}

/// Report for the minimal polynomial of the dominant eigenvalue of `m`.
pub fn spectral_ratio_of_matrix(m: &Mat, bits: u32) -> Result<SpectralReport, SpectralError> {
    let (minimal, sr, cert) = analyze_poly(&m.char_poly(), bits)?;
    Ok(report_from(ReportSource::Matrix, None, minimal, &sr, vec![cert]))
}

/// "x - 2" style rendering for messages.
pub fn display_poly(f: &Poly) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, c) in f.coeffs().iter().enumerate().rev() {
        if c == &BigInt::from(0) {
            continue;
        }
        let neg = c < &BigInt::from(0);
        let a = if neg { -c } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let one = a == BigInt::from(1);
        match i {
            0 => out.push_str(&a.to_string()),
            _ => {
                if !one {
                    out.push_str(&a.to_string());
                }
                out.push('x');
                if i > 1 {
                    out.push('^');
                    out.push_str(&i.to_string());
                }
            }
        }
    }
    out
}
