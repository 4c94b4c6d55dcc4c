//! Random words in a generator set and the spectral data of their
//! products.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::intmat::{format_word, GeneratorSet, Letter};
use crate::rootfind::DEFAULT_BITS;
use crate::seed::mix;
use crate::spectral::{spectral_ratio_of_matrix, SpectralError};

use super::DynamicsError;

pub const SAMPLE_HEADER: [&str; 7] = ["seed", "length", "word", "dilatation", "spectral_ratio", "log_ratio", "skipped_reason"];
pub const SUMMARY_HEADER: [&str; 8] = ["length", "min", "q1", "median", "q3", "max", "samples", "skipped"];

/// One sampled word. Skipped words carry a reason and no spectral data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    /// Seed of this record's generator, mix(base seed, record index).
    pub seed: u64,
    pub length: usize,
    pub word: String,
    pub dilatation: Option<f64>,
    pub spectral_ratio: Option<f64>,
    /// ln λ1 / ln |λ2|.
    pub log_ratio: Option<f64>,
    pub skipped_reason: Option<String>,
}

/// Letters are drawn uniformly and independently; with `signed`, inverse
/// letters are drawn too.
#[derive(Debug, Clone)]
pub struct SamplePlan<'a> {
    pub gens: &'a GeneratorSet,
    pub signed: bool,
    pub seed: u64,
}

impl SamplePlan<'_> {
    fn alphabet(&self) -> Result<Vec<Letter>, DynamicsError> {
        if self.gens.is_empty() {
            return Err(DynamicsError::EmptyGenerators);
        }
        if self.signed && !self.gens.is_inverse_closed() {
            return Err(DynamicsError::NotInverseClosed);
        }
        Ok(self.gens.alphabet().into_iter().filter(|l| self.signed || !l.inverse).collect())
    }

    fn record(&self, alphabet: &[Letter], length: usize, index: u64) -> Result<SampleRecord, DynamicsError> {
        let seed = mix(self.seed, index);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let word: Vec<Letter> = (0..length).map(|_| alphabet[rng.gen_range(0..alphabet.len())].clone()).collect();
        let m = self.gens.word_product(&word)?;
        let mut rec = SampleRecord {
            seed,
            length,
            word: format_word(&word),
            dilatation: None,
            spectral_ratio: None,
            log_ratio: None,
            skipped_reason: None,
        };
        match spectral_ratio_of_matrix(&m, DEFAULT_BITS) {
            Ok(rep) if rep.dilatation.lo() > 0.0 => {
                let l1 = rep.dilatation.value;
                let l2 = rep.second_modulus.value;
                rec.dilatation = Some(l1);
                rec.spectral_ratio = Some(rep.ratio.value);
                let lr = l1.ln() / l2.ln();
                rec.log_ratio = lr.is_finite().then_some(lr);
            }
            Ok(_) => rec.skipped_reason = Some("dominant root is negative".into()),
            Err(e) => rec.skipped_reason = Some(skip_reason(&e)),
        }
        Ok(rec)
    }

    /// Records `first .. first + count`, all of one length, in index order.
    pub fn sample(&self, length: usize, count: usize, first: u64) -> Result<Vec<SampleRecord>, DynamicsError> {
        if length == 0 {
            return Err(DynamicsError::ZeroLength);
        }
        if count == 0 {
            return Err(DynamicsError::ZeroCount);
        }
        let alphabet = self.alphabet()?;
        (0..count as u64)
            .into_par_iter()
            .map(|i| self.record(&alphabet, length, first + i))
            .collect()
    }

    /// `count` records per length; record indices run consecutively over
    /// the lengths in the given order.
    pub fn sample_lengths(&self, lengths: &[usize], count: usize) -> Result<Vec<SampleRecord>, DynamicsError> {
        let mut out = Vec::with_capacity(lengths.len() * count);
        for (j, &len) in lengths.iter().enumerate() {
            out.extend(self.sample(len, count, (j * count) as u64)?);
        }
        Ok(out)
    }
}

fn skip_reason(e: &SpectralError) -> String {
    match e {
        SpectralError::Tie(_) => "dominant root not simple".into(),
        SpectralError::RatioUndefined(s) => format!("ratio undefined: {s}"),
        e => e.to_string(),
    }
}

/// Unsigned sampling of `count` words of one length, record indices
/// 0..count.
pub fn sample_words(gens: &GeneratorSet, length: usize, count: usize, seed: u64) -> Result<Vec<SampleRecord>, DynamicsError> {
    SamplePlan { gens, signed: gens.is_inverse_closed(), seed }.sample(length, count, 0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuartileRow {
    pub length: usize,
    pub min: Option<f64>,
    pub q1: Option<f64>,
    pub median: Option<f64>,
    pub q3: Option<f64>,
    pub max: Option<f64>,
    pub samples: usize,
    pub skipped: usize,
}

/// Quantile with linear interpolation between order statistics.
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * q;
    let (lo, hi) = (h.floor() as usize, h.ceil() as usize);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Five-number summary of the spectral ratios per length, lengths in
/// order of first appearance.
pub fn quartiles(records: &[SampleRecord]) -> Vec<QuartileRow> {
    let mut lengths: Vec<usize> = Vec::new();
    for r in records {
        if !lengths.contains(&r.length) {
            lengths.push(r.length);
        }
    }
    lengths
        .into_iter()
        .map(|len| {
            let group: Vec<&SampleRecord> = records.iter().filter(|r| r.length == len).collect();
            let mut v: Vec<f64> = group.iter().filter_map(|r| r.spectral_ratio).collect();
            v.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let q = |p: f64| (!v.is_empty()).then(|| quantile(&v, p));
            QuartileRow {
                length: len,
                min: q(0.0),
                q1: q(0.25),
                median: q(0.5),
                q3: q(0.75),
                max: q(1.0),
                samples: v.len(),
                skipped: group.len() - v.len(),
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

/// Equal-width histogram of the finite log ratios over their range.
pub fn log_ratio_histogram(records: &[SampleRecord], bins: usize) -> Vec<HistogramBin> {
    let v: Vec<f64> = records.iter().filter_map(|r| r.log_ratio).collect();
    if v.is_empty() || bins == 0 {
        return Vec::new();
    }
    let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let w = if hi > lo { (hi - lo) / bins as f64 } else { 1.0 };
    let mut out: Vec<HistogramBin> =
        (0..bins).map(|i| HistogramBin { lo: lo + i as f64 * w, hi: lo + (i + 1) as f64 * w, count: 0 }).collect();
    for x in v {
        let i = (((x - lo) / w) as usize).min(bins - 1);
        out[i].count += 1;
    }
    out
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn write_samples_csv<W: Write>(w: W, records: &[SampleRecord]) -> Result<(), DynamicsError> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(SAMPLE_HEADER)?;
    for r in records {
        wr.write_record([
            r.seed.to_string(),
            r.length.to_string(),
            r.word.clone(),
            opt(r.dilatation),
            opt(r.spectral_ratio),
            opt(r.log_ratio),
            r.skipped_reason.clone().unwrap_or_default(),
        ])?;
    }
    wr.flush().map_err(|e| DynamicsError::Csv(e.to_string()))?;
    Ok(())
}

pub fn write_quartiles_csv<W: Write>(w: W, rows: &[QuartileRow]) -> Result<(), DynamicsError> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(SUMMARY_HEADER)?;
    for r in rows {
        wr.write_record([
            r.length.to_string(),
            opt(r.min),
            opt(r.q1),
            opt(r.median),
            opt(r.q3),
            opt(r.max),
            r.samples.to_string(),
            r.skipped.to_string(),
        ])?;
    }
    wr.flush().map_err(|e| DynamicsError::Csv(e.to_string()))?;
    Ok(())
}

pub fn write_histogram_csv<W: Write>(w: W, bins: &[HistogramBin]) -> Result<(), DynamicsError> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(["bin_lo", "bin_hi", "count"])?;
    for b in bins {
        wr.write_record([b.lo.to_string(), b.hi.to_string(), b.count.to_string()])?;
    }
    wr.flush().map_err(|e| DynamicsError::Csv(e.to_string()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::gl3_matrix;
    use std::collections::BTreeMap;

    fn gl3_gens() -> GeneratorSet {
        let mut g = BTreeMap::new();
        g.insert("g".to_string(), gl3_matrix(2).unwrap());
        GeneratorSet::new(g, true).unwrap()
    }

    #[test]
    fn deterministic_and_ratios_at_least_one() {
        let gens = gl3_gens();
        let a = sample_words(&gens, 6, 100, 1).unwrap();
        let b = sample_words(&gens, 6, 100, 1).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 100);
        assert!(a.iter().filter_map(|r| r.spectral_ratio).all(|s| s >= 1.0));
        let mut x = Vec::new();
        let mut y = Vec::new();
        write_samples_csv(&mut x, &a).unwrap();
        write_samples_csv(&mut y, &b).unwrap();
        assert_eq!(x, y);
        let text = String::from_utf8(x).unwrap();
        assert!(text.starts_with("seed,length,word,dilatation,spectral_ratio,log_ratio,skipped_reason\n"));
        assert_eq!(a[3].seed, mix(1, 3));
    }

    #[test]
    fn errors() {
        let gens = gl3_gens();
        assert_eq!(sample_words(&gens, 0, 10, 1), Err(DynamicsError::ZeroLength));
        assert_eq!(sample_words(&gens, 3, 0, 1), Err(DynamicsError::ZeroCount));
        let mut g = BTreeMap::new();
        g.insert("g".to_string(), gl3_matrix(2).unwrap());
        let one_way = GeneratorSet::new(g, false).unwrap();
        let plan = SamplePlan { gens: &one_way, signed: true, seed: 1 };
        assert_eq!(plan.sample(3, 3, 0), Err(DynamicsError::NotInverseClosed));
    }

    #[test]
    fn quantiles_interpolate() {
        let v = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(quantile(&v, 0.0), 1.0);
        assert_eq!(quantile(&v, 0.5), 2.5);
        assert_eq!(quantile(&v, 0.25), 1.75);
        assert_eq!(quantile(&v, 1.0), 4.0);
    }

    #[test]
    fn summary_counts_skips() {
        let gens = gl3_gens();
        let plan = SamplePlan { gens: &gens, signed: true, seed: 9 };
        let recs = plan.sample_lengths(&[2, 3], 20).unwrap();
        let rows = quartiles(&recs);
        assert_eq!(rows.len(), 2);
        for r in &rows {
            assert_eq!(r.samples + r.skipped, 20);
        }
        // g g^-1 is the identity: always skipped
        assert!(recs.iter().filter(|r| r.word == "g g^-1").all(|r| r.skipped_reason.is_some()));
        let mut out = Vec::new();
        write_quartiles_csv(&mut out, &rows).unwrap();
        assert!(String::from_utf8(out).unwrap().starts_with("length,min,q1,median,q3,max,samples,skipped\n"));
        let h = log_ratio_histogram(&recs, 5);
        assert_eq!(h.iter().map(|b| b.count).sum::<usize>(), recs.iter().filter(|r| r.log_ratio.is_some()).count());
    }
}
