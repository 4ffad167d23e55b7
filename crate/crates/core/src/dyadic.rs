//! Exact matrices and vectors of the form `M / √2^k` with big-integer `M`.
//!
//! Values are always kept in canonical form: `k` is the least scaled
//! denominator exponent, i.e. it is never the case that `k >= 2` and every
//! entry is even. Because of this, structural equality is value equality.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Result, SynthError};
use crate::generator::Generator;
use crate::pattern::BinaryPattern;
use crate::rowops;

/// An `n × n` matrix `M / √2^k` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ScaledDyadicMatrix {
    n: usize,
    k: u32,
    entries: Vec<BigInt>,
}

/// Brings a raw integer matrix and exponent to canonical form.
pub fn normalize(raw: Vec<Vec<BigInt>>, raw_k: u32) -> Result<ScaledDyadicMatrix> {
    let n = raw.len();
    if n == 0 {
        return Err(SynthError::Shape("matrix has no rows".into()));
    }
    let mut entries = Vec::with_capacity(n * n);
    for (i, row) in raw.into_iter().enumerate() {
        if row.len() != n {
            return Err(SynthError::Shape(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        entries.extend(row);
    }
    Ok(ScaledDyadicMatrix::from_parts(n, raw_k, entries))
}

impl ScaledDyadicMatrix {
    pub(crate) fn from_parts(n: usize, mut k: u32, mut entries: Vec<BigInt>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        rowops::canonicalize(&mut entries, &mut k);
        ScaledDyadicMatrix { n, k, entries }
    }

    /// Builds a matrix from small integer rows and an exponent.
    pub fn from_i64_rows(rows: &[Vec<i64>], k: u32) -> Result<Self> {
        normalize(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            k,
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::one();
        }
        ScaledDyadicMatrix { n, k: 0, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The least scaled denominator exponent `k`.
    pub fn lde_sqrt2(&self) -> u32 {
        self.k
    }

    /// Base-2 least denominator exponent, `⌈k/2⌉`. Meaningful as a dyadic
    /// exponent only when `k` is even.
    pub fn lde(&self) -> u32 {
        self.k.div_ceil(2)
    }

    /// True when the value has dyadic entries (`k` even).
    pub fn is_integral(&self) -> bool {
        self.k.is_multiple_of(2)
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.entries.chunks(self.n)
    }

    /// Column `j` as a canonical vector.
    pub fn column(&self, j: usize) -> DyadicVector {
        let entries = (0..self.n).map(|i| self.entry(i, j).clone()).collect();
        DyadicVector::from_parts(self.k, entries)
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    /// Exact product `self · other`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(SynthError::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let n = self.n;
        let mut out = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for l in 0..n {
                let a = &self.entries[i * n + l];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[l * n + j];
                    if !b.is_zero() {
                        out[i * n + j] += a * b;
                    }
                }
            }
        }
        Ok(Self::from_parts(n, self.k + other.k, out))
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for j in 0..n {
            for i in 0..n {
                entries.push(self.entries[i * n + j].clone());
            }
        }
        ScaledDyadicMatrix {
            n,
            k: self.k,
            entries,
        }
    }

    /// `UᵀU = I`, checked as `MᵀM = 2^k I` over the integers.
    pub fn is_orthogonal(&self) -> bool {
        let n = self.n;
        let scale = BigInt::one() << self.k;
        for a in 0..n {
            for b in a..n {
                let dot: BigInt = (0..n)
                    .map(|i| &self.entries[i * n + a] * &self.entries[i * n + b])
                    .sum();
                let expected = if a == b { &scale } else { &BigInt::ZERO };
                if &dot != expected {
                    return false;
                }
            }
        }
        true
    }

    /// Entry-wise residues of `M` modulo 2.
    pub fn binary_pattern(&self) -> BinaryPattern {
        BinaryPattern::from_fn(self.n, |i, j| self.entry(i, j).is_odd())
    }

    /// `g · self`, computed as row operations.
    pub fn apply_left(&self, g: &Generator) -> Result<Self> {
        let mut out = self.clone();
        out.apply_left_mut(g)?;
        Ok(out)
    }

    pub fn apply_left_mut(&mut self, g: &Generator) -> Result<()> {
        g.validate(self.n)?;
        self.k += rowops::apply_generator(&mut self.entries, self.n, self.n, g);
        rowops::canonicalize(&mut self.entries, &mut self.k);
        Ok(())
    }

    /// `self · g`. Every generator is symmetric, so this is `(g · selfᵀ)ᵀ`.
    pub fn apply_right(&self, g: &Generator) -> Result<Self> {
        Ok(self.transpose().apply_left(g)?.transpose())
    }

    /// Sub-matrix on the given rows and columns, canonicalized.
    pub fn block(
        &self,
        rows: std::ops::Range<usize>,
        cols: std::ops::Range<usize>,
    ) -> Result<Self> {
        if rows.len() != cols.len() || rows.end > self.n || cols.end > self.n {
            return Err(SynthError::Shape(
                "block must be square and in range".into(),
            ));
        }
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for i in rows.clone() {
            for j in cols.clone() {
                entries.push(self.entry(i, j).clone());
            }
        }
        Ok(Self::from_parts(rows.len(), self.k, entries))
    }

    pub(crate) fn raw_entries(&self) -> &[BigInt] {
        &self.entries
    }

    /// Parses the matrix JSON format, normalizing on load.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: MatrixFile = serde_json::from_str(text)?;
        file.into_matrix()
    }

    /// Emits the matrix JSON format in canonical form.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&MatrixFile::from(self)).expect("matrix serialization")
    }
}

impl fmt::Debug for ScaledDyadicMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ScaledDyadicMatrix(n = {}, k = {}) [", self.n, self.k)?;
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>4}")).collect();
            writeln!(f, "  {}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}

/// A column vector `v / √2^k` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyadicVector {
    k: u32,
    entries: Vec<BigInt>,
}

impl DyadicVector {
    pub fn new(entries: Vec<BigInt>, k: u32) -> Self {
        Self::from_parts(k, entries)
    }

    pub(crate) fn from_parts(mut k: u32, mut entries: Vec<BigInt>) -> Self {
        rowops::canonicalize(&mut entries, &mut k);
        DyadicVector { k, entries }
    }

    pub fn from_i64(entries: &[i64], k: u32) -> Self {
        Self::new(entries.iter().map(|&x| BigInt::from(x)).collect(), k)
    }

    /// Standard basis vector `|j⟩`.
    pub fn basis(n: usize, j: usize) -> Self {
        let mut entries = vec![BigInt::zero(); n];
        entries[j] = BigInt::one();
        DyadicVector { k: 0, entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn lde_sqrt2(&self) -> u32 {
        self.k
    }

    pub fn lde(&self) -> u32 {
        self.k.div_ceil(2)
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    /// `Σ vᵢ² = 2^k`.
    pub fn is_unit(&self) -> bool {
        let sum: BigInt = self.entries.iter().map(|x| x * x).sum();
        sum == BigInt::one() << self.k
    }

    /// Inner product as `(numerator, exponent)`, meaning `numerator / √2^exponent`.
    pub fn inner(&self, other: &Self) -> (BigInt, u32) {
        let num = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a * b)
            .sum();
        (num, self.k + other.k)
    }

    pub fn neg(&self) -> Self {
        DyadicVector {
            k: self.k,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }

    pub fn apply_left(&self, g: &Generator) -> Result<Self> {
        g.validate(self.dim())?;
        let mut entries = self.entries.clone();
        let dk = rowops::apply_generator(&mut entries, 1, self.dim(), g);
        Ok(Self::from_parts(self.k + dk, entries))
    }

    /// `I - 2|v⟩⟨v|` for a unit vector, as a matrix.
    pub fn reflection_matrix(&self) -> ScaledDyadicMatrix {
        let n = self.dim();
        let scale = BigInt::one() << self.k;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut x = -(&self.entries[i] * &self.entries[j]) * 2;
                if i == j {
                    x += &scale;
                }
                entries.push(x);
            }
        }
        ScaledDyadicMatrix::from_parts(n, 2 * self.k, entries)
    }

    /// Index of the single `±1` entry when `k == 0`.
    pub(crate) fn signed_basis_index(&self) -> Option<(usize, bool)> {
        if self.k != 0 {
            return None;
        }
        let mut found = None;
        for (i, x) in self.entries.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if found.is_some() || x.abs() != BigInt::one() {
                return None;
            }
            found = Some((i, x.is_negative()));
        }
        found
    }
}

/// On-disk matrix format: `{"n": .., "k": .., "entries": [[..], ..]}`.
#[derive(Serialize, Deserialize)]
struct MatrixFile {
    n: usize,
    k: u32,
    entries: Vec<Vec<serde_json::Number>>,
}

impl MatrixFile {
    fn into_matrix(self) -> Result<ScaledDyadicMatrix> {
        if self.entries.len() != self.n {
            return Err(SynthError::Shape(format!(
                "\"n\" is {} but there are {} rows",
                self.n,
                self.entries.len()
            )));
        }
        let rows = self
            .entries
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|num| {
                        BigInt::from_str(num.as_str()).map_err(|_| {
                            SynthError::Shape(format!("entry {num} is not an integer"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        normalize(rows, self.k)
    }
}

impl From<&ScaledDyadicMatrix> for MatrixFile {
    fn from(m: &ScaledDyadicMatrix) -> Self {
        MatrixFile {
            n: m.n,
            k: m.k,
            entries: m
                .rows()
                .map(|r| {
                    r.iter()
                        .map(|x| {
                            serde_json::Number::from_str(&x.to_string()).expect("integer literal")
                        })
                        .collect()
                })
                .collect(),
        }
    }
}
