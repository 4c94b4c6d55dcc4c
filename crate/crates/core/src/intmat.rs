//! Exact linear algebra over Z: products, determinants, characteristic
//! polynomials and words in a generator set.
//!
//! Words compose left to right: `[g1, g2, ..., gm]` is the matrix product
//! `g1 * g2 * ... * gm`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{decimal, Poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatError {
    #[error("matrix must be square and non-empty")]
    NotSquare,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(BigInt),
    #[error("unknown generator label {0:?}")]
    UnknownLabel(String),
    #[error("generator set is not inverse-closed; cannot use {0}^-1")]
    InverseUnavailable(String),
    #[error("malformed word letter {0:?}")]
    BadLetter(String),
    #[error("cannot parse matrix: {0}")]
    Parse(String),
}

/// Square matrix of big integers, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatRepr", into = "MatRepr")]
pub struct Mat {
    n: usize,
    entries: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct MatRepr {
    #[serde(with = "decimal::matrix")]
    rows: Vec<Vec<BigInt>>,
}

impl TryFrom<MatRepr> for Mat {
    type Error = MatError;

    fn try_from(r: MatRepr) -> Result<Self, MatError> {
        Mat::from_rows(r.rows)
    }
}

impl From<Mat> for MatRepr {
    fn from(m: Mat) -> Self {
        MatRepr { rows: m.rows() }
    }
}

impl Mat {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, MatError> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(MatError::NotSquare);
        }
        Ok(Mat { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, MatError> {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "dimension must be at least 1");
        Mat { n, entries: vec![BigInt::zero(); n * n] }
    }

    /// Inline syntax: rows separated by ';', entries by ','.
    pub fn parse_inline(s: &str) -> Result<Self, MatError> {
        let rows = s
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<BigInt>()
                            .map_err(|_| MatError::Parse(format!("bad entry {t:?}")))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Mat::from_rows(rows)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|v| !v.is_negative())
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        use num_traits::ToPrimitive;
        self.entries
            .chunks(self.n)
            .map(|r| r.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect())
            .collect()
    }

    pub fn checked_mul(&self, o: &Mat) -> Result<Mat, MatError> {
        if self.n != o.n {
            return Err(MatError::DimensionMismatch(self.n, o.n));
        }
        let n = self.n;
        let mut out = Mat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        let mut a = self.rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// det(xI - M) via the Faddeev–LeVerrier recursion
    /// N_k = M N_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(M N_k)/k.
    /// Every trace division is exact over Z; that is asserted.
    pub fn char_poly(&self) -> Poly {
        let n = self.n;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut nk = Mat::zeros(n);
        for k in 1..=n {
            let mut next = self.checked_mul(&nk).expect("same dimension");
            for i in 0..n {
                next.entries[i * n + i] += &coeffs[n - k + 1];
            }
            nk = next;
            let tr = self.checked_mul(&nk).expect("same dimension").trace();
            let (q, r) = tr.div_rem(&BigInt::from(k));
            assert!(r.is_zero(), "Faddeev–LeVerrier trace not divisible by {k}");
            coeffs[n - k] = -q;
        }
        Poly::new(coeffs)
    }

    /// Exact inverse of a matrix with determinant ±1, via the adjugate.
    pub fn unimodular_inverse(&self) -> Result<Mat, MatError> {
        let d = self.det();
        if !d.abs().is_one() {
            return Err(MatError::NotUnimodular(d));
        }
        let n = self.n;
        if n == 1 {
            return Ok(Mat { n, entries: vec![d] });
        }
        let mut inv = Mat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(i, j);
                let mut c = minor.det();
                if (i + j) % 2 == 1 {
                    c = -c;
                }
                // adj(M)[j][i] = cofactor(i, j); inverse = adj / det with det = ±1
                inv.entries[j * n + i] = c * &d;
            }
        }
        Ok(inv)
    }

    fn minor(&self, row: usize, col: usize) -> Mat {
        let n = self.n;
        let entries = (0..n)
            .filter(|&i| i != row)
            .flat_map(|i| {
                (0..n)
                    .filter(move |&j| j != col)
                    .map(move |j| self.get(i, j).clone())
            })
            .collect();
        Mat { n: n - 1, entries }
    }

    /// Boolean primitivity test: some power up to n^2 - 2n + 2 is strictly
    /// positive (Wielandt's bound). Requires a nonnegative matrix.
    pub fn is_primitive(&self) -> bool {
        if !self.is_nonnegative() {
            return false;
        }
        let n = self.n;
        let pattern: Vec<bool> = self.entries.iter().map(|v| v.is_positive()).collect();
        let mut power = pattern.clone();
        let limit = (n * n).saturating_sub(2 * n) + 2;
        for _ in 1..limit.max(1) {
            if power.iter().all(|&b| b) {
                return true;
            }
            let mut next = vec![false; n * n];
            for i in 0..n {
                for k in 0..n {
                    if !power[i * n + k] {
                        continue;
                    }
                    for j in 0..n {
                        if pattern[k * n + j] {
                            next[i * n + j] = true;
                        }
                    }
                }
            }
            power = next;
        }
        power.iter().all(|&b| b)
    }
}

impl Mul for &Mat {
    type Output = Mat;

    fn mul(self, rhs: &Mat) -> Mat {
        self.checked_mul(rhs).expect("matrix dimensions must agree")
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

/// One letter of a word: a generator label, possibly inverted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub label: String,
    pub inverse: bool,
}

impl Letter {
    pub fn new(label: impl Into<String>) -> Self {
        Letter { label: label.into(), inverse: false }
    }

    pub fn inv(label: impl Into<String>) -> Self {
        Letter { label: label.into(), inverse: true }
    }

    /// Parses `a` or `a^-1`.
    pub fn parse(s: &str) -> Result<Self, MatError> {
        let s = s.trim();
        let (label, inverse) = match s.strip_suffix("^-1") {
            Some(l) => (l, true),
            None => (s, false),
        };
        if label.is_empty() || label.contains(|c: char| c.is_whitespace() || c == '^') {
            return Err(MatError::BadLetter(s.to_string()));
        }
        Ok(Letter { label: label.to_string(), inverse })
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.label)
        } else {
            write!(f, "{}", self.label)
        }
    }
}

/// Space-separated letters, e.g. `"a b^-1 a"`.
pub fn format_word(word: &[Letter]) -> String {
    word.iter().map(Letter::to_string).collect::<Vec<_>>().join(" ")
}

pub fn parse_word(s: &str) -> Result<Vec<Letter>, MatError> {
    s.split_whitespace().map(Letter::parse).collect()
}

/// Named generators of a common dimension. When inverse-closed, every
/// generator is unimodular and its exact inverse is stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    dimension: usize,
    generators: BTreeMap<String, Mat>,
    inverses: Option<BTreeMap<String, Mat>>,
}

#[derive(Serialize, Deserialize)]
struct GeneratorSetRepr {
    dimension: usize,
    generators: BTreeMap<String, Mat>,
    inverse_closed: bool,
}

impl GeneratorSet {
    pub fn new(
        generators: BTreeMap<String, Mat>,
        inverse_closed: bool,
    ) -> Result<Self, MatError> {
        let dimension = generators
            .values()
            .next()
            .map(Mat::dim)
            .ok_or(MatError::NotSquare)?;
        for (label, m) in &generators {
            if m.dim() != dimension {
                return Err(MatError::DimensionMismatch(dimension, m.dim()));
            }
            if label.is_empty() || label.contains(|c: char| c.is_whitespace() || c == '^') {
                return Err(MatError::BadLetter(label.clone()));
            }
        }
        let inverses = if inverse_closed {
            Some(
                generators
                    .iter()
                    .map(|(l, m)| Ok((l.clone(), m.unimodular_inverse()?)))
                    .collect::<Result<_, MatError>>()?,
            )
        } else {
            None
        };
        Ok(GeneratorSet { dimension, generators, inverses })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn is_inverse_closed(&self) -> bool {
        self.inverses.is_some()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.generators.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// All letters available for sampling, in label order; inverses follow
    /// their generator when the set is inverse-closed.
    pub fn alphabet(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        for l in self.generators.keys() {
            out.push(Letter::new(l.clone()));
            if self.is_inverse_closed() {
                out.push(Letter::inv(l.clone()));
            }
        }
        out
    }

    pub fn letter_matrix(&self, letter: &Letter) -> Result<&Mat, MatError> {
        if letter.inverse {
            let inv = self
                .inverses
                .as_ref()
                .ok_or_else(|| MatError::InverseUnavailable(letter.label.clone()))?;
            inv.get(&letter.label)
                .ok_or_else(|| MatError::UnknownLabel(letter.label.clone()))
        } else {
            self.generators
                .get(&letter.label)
                .ok_or_else(|| MatError::UnknownLabel(letter.label.clone()))
        }
    }

    /// Product `m(w1) * m(w2) * ... * m(wk)`; the empty word is the identity.
    pub fn word_product(&self, word: &[Letter]) -> Result<Mat, MatError> {
        let mut acc = Mat::identity(self.dimension);
        for letter in word {
            acc = &acc * self.letter_matrix(letter)?;
        }
        Ok(acc)
    }
}

impl Serialize for GeneratorSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GeneratorSetRepr {
            dimension: self.dimension,
            generators: self.generators.clone(),
            inverse_closed: self.is_inverse_closed(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GeneratorSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = GeneratorSetRepr::deserialize(d)?;
        let set = GeneratorSet::new(r.generators, r.inverse_closed).map_err(D::Error::custom)?;
        if set.dimension != r.dimension {
            return Err(D::Error::custom(format!(
                "declared dimension {} but generators have dimension {}",
                r.dimension, set.dimension
            )));
        }
        Ok(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Mat {
        Mat::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(m(&[&[0, 1], &[1, 1]]).char_poly(), Poly::from_i64s(&[-1, -1, 1]));
        assert_eq!(Mat::identity(3).char_poly(), Poly::from_i64s(&[-1, 3, -3, 1]));
        let gl3 = m(&[&[0, 0, 1], &[1, 0, 16], &[0, 1, 0]]);
        assert_eq!(gl3.char_poly(), Poly::from_i64s(&[-1, -16, 0, 1]));
    }

    #[test]
    fn det_examples() {
        assert_eq!(Mat::identity(3).det(), BigInt::from(1));
        assert_eq!(m(&[&[0, 1], &[1, 1]]).det(), BigInt::from(-1));
        assert_eq!(m(&[&[0, 0, 1], &[1, 0, 16], &[0, 1, 0]]).det(), BigInt::from(1));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det(), BigInt::from(0));
    }

    #[test]
    fn word_product_examples() {
        let mut g = BTreeMap::new();
        g.insert("a".to_string(), m(&[&[1, 1], &[0, 1]]));
        g.insert("b".to_string(), m(&[&[1, 0], &[1, 1]]));
        let gens = GeneratorSet::new(g.clone(), true).unwrap();
        let ab = gens.word_product(&[Letter::new("a"), Letter::new("b")]).unwrap();
        assert_eq!(ab, m(&[&[2, 1], &[1, 1]]));
        assert_eq!(gens.word_product(&[]).unwrap(), Mat::identity(2));
        assert_eq!(
            gens.word_product(&[Letter::inv("a")]).unwrap(),
            m(&[&[1, -1], &[0, 1]])
        );
        assert_eq!(
            gens.word_product(&[Letter::new("c")]),
            Err(MatError::UnknownLabel("c".into()))
        );
        let open = GeneratorSet::new(g, false).unwrap();
        assert_eq!(
            open.word_product(&[Letter::inv("a")]),
            Err(MatError::InverseUnavailable("a".into()))
        );
    }

    #[test]
    fn non_unimodular_generators_cannot_be_inverse_closed() {
        let mut g = BTreeMap::new();
        g.insert("d".to_string(), m(&[&[2, 0], &[0, 1]]));
        assert!(matches!(GeneratorSet::new(g, true), Err(MatError::NotUnimodular(_))));
    }

    #[test]
    fn unimodular_inverse_examples() {
        assert_eq!(m(&[&[1, 1], &[0, 1]]).unimodular_inverse().unwrap(), m(&[&[1, -1], &[0, 1]]));
        assert_eq!(Mat::identity(4).unimodular_inverse().unwrap(), Mat::identity(4));
        assert_eq!(
            m(&[&[2, 0], &[0, 1]]).unimodular_inverse(),
            Err(MatError::NotUnimodular(BigInt::from(2)))
        );
    }

    #[test]
    fn json_formats() {
        let a = m(&[&[1, -1], &[0, 1]]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"rows":[["1","-1"],["0","1"]]}"#);
        assert_eq!(serde_json::from_str::<Mat>(&s).unwrap(), a);
        assert!(serde_json::from_str::<Mat>(r#"{"rows":[["1","2"]]}"#).is_err());

        let mut g = BTreeMap::new();
        g.insert("a".to_string(), m(&[&[1, 1], &[0, 1]]));
        let gens = GeneratorSet::new(g, true).unwrap();
        let s = serde_json::to_string(&gens).unwrap();
        assert_eq!(
            s,
            r#"{"dimension":2,"generators":{"a":{"rows":[["1","1"],["0","1"]]}},"inverse_closed":true}"#
        );
        assert_eq!(serde_json::from_str::<GeneratorSet>(&s).unwrap(), gens);
    }

    #[test]
    fn letters_round_trip() {
        let w = parse_word("a b^-1 a").unwrap();
        assert_eq!(w, vec![Letter::new("a"), Letter::inv("b"), Letter::new("a")]);
        assert_eq!(format_word(&w), "a b^-1 a");
        assert!(Letter::parse("^-1").is_err());
    }

    #[test]
    fn primitivity() {
        assert!(m(&[&[1, 1], &[1, 0]]).is_primitive());
        assert!(!Mat::identity(3).is_primitive());
        // a cyclic permutation is irreducible but not primitive
        assert!(!m(&[&[0, 1], &[1, 0]]).is_primitive());
    }

    fn arb_mat(n: usize) -> impl Strategy<Value = Mat> {
        prop::collection::vec(-9i64..10, n * n).prop_map(move |v| {
            Mat::from_rows(v.chunks(n).map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
                .unwrap()
        })
    }

    fn arb_sized_mat() -> impl Strategy<Value = Mat> {
        (1usize..=6).prop_flat_map(arb_mat)
    }

    /// Random unimodular matrix: product of elementary transvections.
    fn arb_unimodular(n: usize) -> impl Strategy<Value = Mat> {
        prop::collection::vec((0..n, 0..n, -3i64..4), 1..8).prop_map(move |ops| {
            let mut p = Mat::identity(n);
            for (i, j, c) in ops {
                if i == j {
                    continue;
                }
                let mut e = Mat::identity(n);
                e.set(i, j, BigInt::from(c));
                p = &p * &e;
            }
            p
        })
    }

    proptest! {
        #[test]
        fn char_poly_constant_term_is_signed_det(a in arb_sized_mat()) {
            let cp = a.char_poly();
            let sign = if a.dim() % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            prop_assert_eq!(cp.coeff(0), sign * a.det());
            prop_assert_eq!(cp.deg(), a.dim());
            prop_assert!(cp.is_monic());
        }

        #[test]
        fn char_poly_is_similarity_invariant(
            (a, p) in (1usize..=5).prop_flat_map(|n| (arb_mat(n), arb_unimodular(n)))
        ) {
            let pinv = p.unimodular_inverse().unwrap();
            prop_assert_eq!(&(&pinv * &p), &Mat::identity(a.dim()));
            let conj = &(&p * &a) * &pinv;
            prop_assert_eq!(conj.char_poly(), a.char_poly());
        }

        #[test]
        fn word_product_is_a_homomorphism(w1 in prop::collection::vec((0..2usize, any::<bool>()), 0..6),
                                          w2 in prop::collection::vec((0..2usize, any::<bool>()), 0..6)) {
            let mut g = BTreeMap::new();
            g.insert("a".to_string(), Mat::from_i64_rows(&[&[2, 1], &[1, 1]]).unwrap());
            g.insert("b".to_string(), Mat::from_i64_rows(&[&[1, 0], &[3, 1]]).unwrap());
            let gens = GeneratorSet::new(g, true).unwrap();
            let to_word = |w: &[(usize, bool)]| -> Vec<Letter> {
                w.iter().map(|&(i, inv)| Letter { label: ["a", "b"][i].into(), inverse: inv }).collect()
            };
            let (a, b) = (to_word(&w1), to_word(&w2));
            let joined: Vec<Letter> = a.iter().chain(b.iter()).cloned().collect();
            prop_assert_eq!(
                gens.word_product(&joined).unwrap(),
                &gens.word_product(&a).unwrap() * &gens.word_product(&b).unwrap()
            );
        }
    }
}
