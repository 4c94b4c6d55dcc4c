//! `spectral`: family verification, polynomial and matrix tools, iteration
//! and sampling drivers.
//!
//! Exit codes: 0 success, 1 verification or convergence failure, 2 usage or
//! input error.

mod io;
mod verify;

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use spectral_core::dynamics::{
    log_ratio_histogram, project_iterate, quartiles, random_positive_ray, write_histogram_csv, write_quartiles_csv,
    write_samples_csv, SamplePlan,
};
use spectral_core::exact::reduce_mod_p;
use spectral_core::factorz::factor_over_z;
use spectral_core::families::{catalog, instance, table1_label, CatalogEntry, FamilyName, Table1Label};
use spectral_core::intmat::Mat;
use spectral_core::rootfind::{all_roots, palindromic_reduce, spectral_ratio_of_poly, DEFAULT_BITS};
use spectral_core::spectral::analyze_poly;

use crate::io::{emit_json, load_generators, load_matrix, load_poly, parse_int_list, write_atomic};

#[derive(Parser)]
#[command(name = "spectral", version, about = "Spectral ratios of dilatation polynomials and integer matrices")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the full check chain for a family and write a JSON report.
    Verify(VerifyArgs),
    /// Characteristic polynomial of a matrix.
    Charpoly(MatrixArgs),
    /// Factor a polynomial over Z.
    Factor(PolyArgs),
    /// Certified complex roots of a polynomial.
    Roots(PolyArgs),
    /// Spectral ratio of a polynomial or matrix.
    Specratio(SpecratioArgs),
    /// Reduce a polynomial mod a prime, or palindromic reduction without --mod.
    Reduce(ReduceArgs),
    /// Projective power iteration; distances to the limit as CSV.
    Iterate(IterateArgs),
    /// Random words in a generator set; samples, quartiles and histogram CSVs.
    Sample(SampleArgs),
    /// Surface catalog and genus/puncture labels.
    Catalog(OutArgs),
    /// A family instance as JSON.
    Family(FamilyArgs),
}

#[derive(Args)]
struct OutArgs {
    /// Output file (default stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    family: String,
    /// "10,18" or "5..50" (inclusive).
    #[arg(long)]
    k: String,
    #[arg(long, default_value_t = DEFAULT_BITS)]
    bits: u32,
    /// Report path (default verify-<family>.json).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MatrixArgs {
    /// Mat JSON file or inline rows "1,2;3,4".
    #[arg(long, allow_hyphen_values = true)]
    matrix: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PolyArgs {
    /// Poly JSON file or ascending coefficients "1,-3,1".
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    #[arg(long, default_value_t = DEFAULT_BITS)]
    bits: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpecratioArgs {
    #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix", allow_hyphen_values = true)]
    poly: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    matrix: Option<String>,
    #[arg(long, default_value_t = DEFAULT_BITS)]
    bits: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    /// Prime modulus.
    #[arg(long = "mod")]
    modulus: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct IterateArgs {
    #[arg(long, conflicts_with = "matrix", requires = "k")]
    family: Option<String>,
    #[arg(long)]
    k: Option<i64>,
    #[arg(long, required_unless_present = "family", allow_hyphen_values = true)]
    matrix: Option<String>,
    #[arg(long, default_value_t = 200)]
    steps: usize,
    /// Seed of the random positive start.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV path (default stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Exit 1 when the orbit does not converge.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct SampleArgs {
    /// GeneratorSet JSON file.
    #[arg(long)]
    gens: String,
    /// Word length, list or range ("10", "2..10").
    #[arg(long)]
    length: String,
    /// Samples per length.
    #[arg(long)]
    count: usize,
    #[arg(long)]
    seed: u64,
    /// Output directory (default "sample-out").
    #[arg(long, default_value = "sample-out")]
    out: PathBuf,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    k: i64,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    /// Exit 2.
    Usage(String),
    /// Exit 1.
    Check(String),
}

trait OrUsage<T> {
    fn usage(self) -> Result<T, Failure>;
    fn check(self) -> Result<T, Failure>;
}

impl<T, E: Display> OrUsage<T> for Result<T, E> {
    fn usage(self) -> Result<T, Failure> {
        self.map_err(|e| Failure::Usage(format!("{e:#}")))
    }

    fn check(self) -> Result<T, Failure> {
        self.map_err(|e| Failure::Check(format!("{e:#}")))
    }
}

fn family_name(s: &str) -> Result<FamilyName, Failure> {
    s.parse::<FamilyName>().usage()
}

fn emit<T: Serialize>(v: &T, out: Option<&Path>) -> Result<(), Failure> {
    emit_json(v, out).check()
}

fn cmd_verify(a: VerifyArgs) -> Result<bool, Failure> {
    let family = family_name(&a.family)?;
    let ks = parse_int_list(&a.k).usage()?;
    let (instances, skipped) = verify::plan(family, &ks).map_err(Failure::Usage)?;
    for s in &skipped {
        eprintln!("{family} k={}: skipped ({})", s.k, s.reason);
    }
    let report = verify::verify(family, &a.k, &instances, skipped, a.bits);
    for r in &report.results {
        for c in &r.checks {
            println!("{family} k={}: {}: {}", r.k, c.name, if c.passed { "pass" } else { "FAIL" });
        }
    }
    let out = a.out.unwrap_or_else(|| PathBuf::from(format!("verify-{family}.json")));
    emit(&report, Some(&out))?;
    eprintln!("{}: report written to {}", if report.passed { "pass" } else { "FAIL" }, out.display());
    Ok(report.passed)
}

fn cmd_specratio(a: SpecratioArgs) -> Result<bool, Failure> {
    let sr = match (&a.poly, &a.matrix) {
        (Some(p), _) => {
            let f = load_poly(p).usage()?;
            spectral_ratio_of_poly(&f, a.bits).check()?
        }
        (None, Some(m)) => {
            let m = load_matrix(m).usage()?;
            analyze_poly(&m.char_poly(), a.bits).check()?.1
        }
        (None, None) => return Err(Failure::Usage("--poly or --matrix required".into())),
    };
    emit(&sr, a.out.as_deref())?;
    Ok(true)
}

fn cmd_reduce(a: ReduceArgs) -> Result<bool, Failure> {
    let f = load_poly(&a.poly).usage()?;
    match a.modulus {
        Some(p) => {
            let r = reduce_mod_p(&f, p).usage()?;
            emit(&r.to_inline(), a.out.as_deref())?;
        }
        None => {
            let q = palindromic_reduce(&f).usage()?;
            emit(&q, a.out.as_deref())?;
        }
    }
    Ok(true)
}

fn iterate_matrix(a: &IterateArgs) -> Result<Mat, Failure> {
    if let Some(m) = &a.matrix {
        return load_matrix(m).usage();
    }
    let family = family_name(a.family.as_deref().unwrap_or_default())?;
    let k = a.k.ok_or_else(|| Failure::Usage("--k required with --family".into()))?;
    instance(family, k)
        .usage()?
        .matrix
        .ok_or_else(|| Failure::Usage(format!("{family} has no matrix")))
}

fn cmd_iterate(a: IterateArgs) -> Result<bool, Failure> {
    let m = iterate_matrix(&a)?;
    let v0 = random_positive_ray(m.dim(), a.seed);
    let t = project_iterate(&m, &v0, a.steps).usage()?;
    let mut csv = String::from("step,distance\n");
    for (n, d) in t.distances.iter().enumerate() {
        csv.push_str(&format!("{n},{d:e}\n"));
    }
    match &a.out {
        Some(p) => write_atomic(p, csv.as_bytes()).check()?,
        None => print!("{csv}"),
    }
    let rate = t.fitted_rate.map_or("none".to_string(), |r| format!("{r:.5}"));
    eprintln!("matrix {}: steps={} converged={} fitted rate {rate}", t.matrix_id, t.steps, t.converged);
    Ok(t.converged || !a.strict)
}

fn cmd_sample(a: SampleArgs) -> Result<bool, Failure> {
    let gens = load_generators(&a.gens).usage()?;
    let lengths = parse_int_list(&a.length).usage()?;
    let lengths = lengths
        .iter()
        .map(|&(l, _)| usize::try_from(l).map_err(|_| Failure::Usage(format!("bad length {l}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let plan = SamplePlan { gens: &gens, signed: gens.is_inverse_closed(), seed: a.seed };
    let records = plan.sample_lengths(&lengths, a.count).usage()?;
    let mut buf = Vec::new();
    write_samples_csv(&mut buf, &records).check()?;
    write_atomic(&a.out.join("samples.csv"), &buf).check()?;
    let mut buf = Vec::new();
    write_quartiles_csv(&mut buf, &quartiles(&records)).check()?;
    write_atomic(&a.out.join("quartiles.csv"), &buf).check()?;
    let mut buf = Vec::new();
    write_histogram_csv(&mut buf, &log_ratio_histogram(&records, 20)).check()?;
    write_atomic(&a.out.join("histogram.csv"), &buf).check()?;
    let skipped = records.iter().filter(|r| r.skipped_reason.is_some()).count();
    eprintln!("{} samples ({skipped} skipped) written to {}", records.len(), a.out.display());
    Ok(true)
}

#[derive(Serialize)]
struct Table1Cell {
    genus: u32,
    punctures: u32,
    label: Table1Label,
}

#[derive(Serialize)]
struct CatalogOut {
    table: Vec<Table1Cell>,
    families: Vec<CatalogEntry>,
}

fn cmd_catalog(a: OutArgs) -> Result<bool, Failure> {
    let table = (0..=3)
        .flat_map(|genus| (0..=7).map(move |punctures| Table1Cell { genus, punctures, label: table1_label(genus, punctures) }))
        .collect();
    emit(&CatalogOut { table, families: catalog() }, a.out.as_deref())?;
    Ok(true)
}

fn run(cmd: Cmd) -> Result<bool, Failure> {
    match cmd {
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Charpoly(a) => {
            let m = load_matrix(&a.matrix).usage()?;
            emit(&m.char_poly(), a.out.as_deref())?;
            Ok(true)
        }
        Cmd::Factor(a) => {
            let f = load_poly(&a.poly).usage()?;
            emit(&factor_over_z(&f).check()?, a.out.as_deref())?;
            Ok(true)
        }
        Cmd::Roots(a) => {
            let f = load_poly(&a.poly).usage()?;
            if f.deg() == 0 {
                return Err(Failure::Usage("constant polynomial has no roots".into()));
            }
            emit(&all_roots(&f, a.bits).check()?.to_json(), a.out.as_deref())?;
            Ok(true)
        }
        Cmd::Specratio(a) => cmd_specratio(a),
        Cmd::Reduce(a) => cmd_reduce(a),
        Cmd::Iterate(a) => cmd_iterate(a),
        Cmd::Sample(a) => cmd_sample(a),
        Cmd::Catalog(a) => cmd_catalog(a),
        Cmd::Family(a) => {
            let inst = instance(family_name(&a.family)?, a.k).usage()?;
            emit(&inst, a.out.as_deref())?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
