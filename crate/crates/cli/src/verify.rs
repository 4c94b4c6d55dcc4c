//! `spectral verify`: the full check chain for a family over a k list.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use spectral_core::exact::{reduce_mod_p, Poly};
use spectral_core::factorz::{factor_over_z, irreducible_mod_p_certificate, Certificate};
use spectral_core::families::{
    genus3_expected_charpoly, genus3_sextic, gl3_charpoly, instance, FamilyInstance, FamilyName,
};
use spectral_core::rootfind::RatioInterval;
use spectral_core::spectral::{alpha_of_ratio, analyze_poly, lemma_check};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KResult {
    pub k: i64,
    pub checks: Vec<Check>,
    pub certificates: Vec<Certificate>,
    pub ratio: Option<RatioInterval>,
    pub passed: bool,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Skipped {
    pub k: i64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub family: FamilyName,
    /// The k argument as given.
    pub k_range: String,
    pub results: Vec<KResult>,
    /// Invalid values drawn from a range.
    pub skipped: Vec<Skipped>,
    pub passed: bool,
    pub bits: u32,
    pub elapsed_ms: u64,
}

/// Instances to verify. Invalid k given explicitly is an input error;
/// invalid k inside a range is skipped and reported.
pub fn plan(family: FamilyName, ks: &[(i64, bool)]) -> Result<(Vec<FamilyInstance>, Vec<Skipped>), String> {
    let mut keep = Vec::new();
    let mut skipped = Vec::new();
    for &(k, from_range) in ks {
        let inst = match instance(family, k) {
            Ok(i) => i,
            Err(e) if from_range => {
                skipped.push(Skipped { k, reason: e.to_string() });
                continue;
            }
            Err(e) => return Err(format!("{family} k={k}: {e}")),
        };
        if !inst.valid {
            let reason = inst.reason.clone().unwrap_or_default();
            if from_range {
                skipped.push(Skipped { k, reason });
                continue;
            }
            return Err(format!("{family} k={k}: invalid k ({reason})"));
        }
        keep.push(inst);
    }
    if keep.is_empty() {
        return Err(format!("no valid k for {family}"));
    }
    Ok((keep, skipped))
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), passed, detail: detail.into() }
}

fn sextic_mod7() -> Poly {
    Poly::from_i64s(&[1, 0, 4, 1, 4, 0, 1])
}

pub fn verify_instance(inst: &FamilyInstance, bits: u32) -> KResult {
    let start = Instant::now();
    let mut checks = Vec::new();
    let mut certificates = Vec::new();
    let mut ratio = None;
    let k = inst.k;

    // matrix identity
    match (inst.name, &inst.matrix) {
        (FamilyName::Genus3, Some(m)) => {
            let ok = genus3_expected_charpoly(k).map(|e| e == m.char_poly()).unwrap_or(false);
            checks.push(check("char_poly = (x³-1)(x⁶ - F_2k x⁴ - F_2k+3 x³ - F_2k x² + 1)", ok, ""));
        }
        (FamilyName::Gl3, Some(m)) => {
            let ok = m.char_poly() == gl3_charpoly(k as u32);
            checks.push(check("char_poly = x³ - 2ᵏx - 1", ok, ""));
        }
        _ => {}
    }

    let source = match (&inst.minimal_poly_expected, &inst.matrix) {
        (Some(p), _) => p.clone(),
        (None, Some(m)) => m.char_poly(),
        (None, None) => {
            checks.push(check("instance", false, "no polynomial or matrix"));
            return finish(k, checks, certificates, ratio, start);
        }
    };

    if inst.name == FamilyName::Genus3 {
        if let Ok(sextic) = genus3_sextic(k) {
            let red = reduce_mod_p(&sextic, 7).map(|r| r.to_poly());
            let ok = red.as_ref().is_ok_and(|r| *r == sextic_mod7());
            let detail = red.map(|r| r.to_inline()).unwrap_or_else(|e| e.to_string());
            checks.push(check("sextic mod 7 = x⁶ + 4x⁴ + x³ + 4x² + 1", ok, detail));
            let irr = irreducible_mod_p_certificate(&sextic, 7).unwrap_or(false);
            checks.push(check("sextic irreducible over F_7", irr, ""));
        }
    }
    if inst.name == FamilyName::S05 {
        checks.push(check("minimal polynomial palindromic", source.is_palindromic(), source.to_inline()));
    }

    match factor_over_z(&source) {
        Ok(fac) => {
            let ok = fac.is_irreducible();
            certificates.extend(fac.factors.iter().map(|f| f.certificate));
            let detail = fac.factors.iter().map(|f| format!("({})^{}", f.poly.to_inline(), f.multiplicity)).collect::<Vec<_>>().join(" ");
            checks.push(check("irreducible over Z", ok, detail));
        }
        Err(e) => checks.push(check("irreducible over Z", false, e.to_string())),
    }

    match analyze_poly(&source, bits) {
        Ok((minimal, sr, _)) => {
            ratio = Some(sr.ratio);
            for b in inst.predicted_bounds.iter().filter(|b| b.checked) {
                let detail = format!("ratio in [{}, {}], bound {}", sr.ratio.lo, sr.ratio.hi, b.value);
                checks.push(check(b.description.clone(), b.holds(sr.ratio.lo, sr.ratio.hi), detail));
            }
            let lemma = alpha_of_ratio(&minimal, &sr, bits)
                .map_err(|e| e.to_string())
                .and_then(|a| lemma_check(&a.poly, &a.root()).map_err(|e| e.to_string()));
            match lemma {
                Ok(r) => checks.push(check(
                    "-log2|α| ≤ h(α) + deg α",
                    r.holds,
                    format!("{} ≤ {}", r.neg_log2_alpha.hi(), r.rhs),
                )),
                Err(e) => checks.push(check("-log2|α| ≤ h(α) + deg α", false, e)),
            }
        }
        Err(e) => checks.push(check("spectral ratio", false, e.to_string())),
    }
    finish(k, checks, certificates, ratio, start)
}

fn finish(k: i64, checks: Vec<Check>, certificates: Vec<Certificate>, ratio: Option<RatioInterval>, start: Instant) -> KResult {
    let passed = checks.iter().all(|c| c.passed);
    KResult { k, checks, certificates, ratio, passed, elapsed_ms: start.elapsed().as_millis() as u64 }
}

pub fn verify(family: FamilyName, k_range: &str, instances: &[FamilyInstance], skipped: Vec<Skipped>, bits: u32) -> VerifyReport {
    let start = Instant::now();
    let results: Vec<KResult> = instances.iter().map(|i| verify_instance(i, bits)).collect();
    let passed = results.iter().all(|r| r.passed);
    VerifyReport {
        family,
        k_range: k_range.to_string(),
        results,
        skipped,
        passed,
        bits,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}
