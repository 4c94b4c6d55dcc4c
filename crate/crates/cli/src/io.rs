//! Input loading and atomic output.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::de::DeserializeOwned;
use serde::Serialize;

use spectral_core::exact::Poly;
use spectral_core::intmat::{GeneratorSet, Mat};

/// A value that names an existing file is read as JSON; anything else is
/// parsed with the inline syntax.
fn load<T: DeserializeOwned>(arg: &str, inline: impl FnOnce(&str) -> Result<T>) -> Result<T> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        return serde_json::from_str(&text).with_context(|| format!("parsing {arg}"));
    }
    if arg.ends_with(".json") {
        bail!("no such file: {arg}");
    }
    inline(arg)
}

pub fn load_poly(arg: &str) -> Result<Poly> {
    let f: Poly = load(arg, |s| Ok(Poly::parse_inline(s)?))?;
    if f.is_zero() {
        bail!("zero polynomial");
    }
    Ok(f)
}

pub fn load_matrix(arg: &str) -> Result<Mat> {
    load(arg, |s| Ok(Mat::parse_inline(s)?))
}

pub fn load_generators(path: &str) -> Result<GeneratorSet> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {path}"))
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let name = path.file_name().context("output path has no file name")?.to_string_lossy();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let mut f = fs::File::create(&tmp).with_context(|| format!("creating {}", tmp.display()))?;
    f.write_all(bytes)?;
    f.sync_all()?;
    drop(f);
    fs::rename(&tmp, path).with_context(|| format!("renaming onto {}", path.display()))?;
    Ok(())
}

pub fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

/// JSON to `out` if given, otherwise stdout.
pub fn emit_json<T: Serialize>(v: &T, out: Option<&Path>) -> Result<()> {
    let s = to_json(v)?;
    match out {
        Some(p) => write_atomic(p, s.as_bytes()),
        None => {
            print!("{s}");
            Ok(())
        }
    }
}

/// Parses "10", "10,18", "5..50" (inclusive) and mixtures of them. The
/// flag says whether each value came from a range.
pub fn parse_int_list(s: &str) -> Result<Vec<(i64, bool)>> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim) {
        if let Some((a, b)) = item.split_once("..") {
            let a: i64 = a.trim().parse().with_context(|| format!("bad range start in {item:?}"))?;
            let b: i64 = b.trim().trim_start_matches('=').parse().with_context(|| format!("bad range end in {item:?}"))?;
            if a > b {
                bail!("empty range {item:?}");
            }
            if b - a > 100_000 {
                bail!("range {item:?} too long");
            }
            out.extend((a..=b).map(|k| (k, true)));
        } else {
            out.push((item.parse().with_context(|| format!("bad integer {item:?}"))?, false));
        }
    }
    if out.is_empty() {
        bail!("empty list");
    }
    Ok(out)
}
