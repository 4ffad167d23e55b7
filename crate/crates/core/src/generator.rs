//! Symbolic generators, their matrices, and words over them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dyadic::ScaledDyadicMatrix;
use crate::error::{Result, SynthError};

/// Which group a matrix (or a synthesis request) lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    /// Orthogonal dyadic matrices; words avoid `I⊗H`.
    Integral,
    /// Orthogonal scaled dyadic matrices; `I⊗H` is allowed at even `n`.
    Scaled,
}

impl FromStr for Ring {
    type Err = SynthError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "integral" => Ok(Ring::Integral),
            "scaled" => Ok(Ring::Scaled),
            other => Err(SynthError::parse(0, format!("unknown ring {other:?}"))),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ring::Integral => "integral",
            Ring::Scaled => "scaled",
        })
    }
}

/// One generator. All of them are self-inverse and symmetric.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// `(-1)_[a]`
    NegOne(usize),
    /// `X_[a,b]`, `a < b`
    TwoLevelX(usize, usize),
    /// `K_[a,b,c,d]`, strictly increasing
    FourLevelK([usize; 4]),
    /// `I_{n/2} ⊗ H`, only at even `n`
    IH,
}

impl Generator {
    pub fn validate(&self, n: usize) -> Result<()> {
        let ok = match *self {
            Generator::NegOne(a) => a < n,
            Generator::TwoLevelX(a, b) => a < b && b < n,
            Generator::FourLevelK([a, b, c, d]) => a < b && b < c && c < d && d < n,
            Generator::IH => n.is_multiple_of(2) && n > 0,
        };
        if ok {
            Ok(())
        } else {
            Err(SynthError::InvalidGenerator {
                generator: self.to_string(),
                n,
            })
        }
    }

    pub fn is_ih(&self) -> bool {
        matches!(self, Generator::IH)
    }

    /// The `n × n` matrix of this generator, built by embedding its small
    /// block into the identity.
    pub fn matrix(&self, n: usize) -> Result<ScaledDyadicMatrix> {
        self.validate(n)?;
        let (levels, block, k): (Vec<usize>, Vec<Vec<i64>>, u32) = match *self {
            Generator::NegOne(a) => (vec![a], vec![vec![-1]], 0),
            Generator::TwoLevelX(a, b) => (vec![a, b], vec![vec![0, 1], vec![1, 0]], 0),
            Generator::FourLevelK(idx) => (
                idx.to_vec(),
                vec![
                    vec![1, 1, 1, 1],
                    vec![1, -1, 1, -1],
                    vec![1, 1, -1, -1],
                    vec![1, -1, -1, 1],
                ],
                2,
            ),
            Generator::IH => {
                let mut rows = vec![vec![BigInt::zero(); n]; n];
                for i in (0..n).step_by(2) {
                    rows[i][i] = BigInt::one();
                    rows[i][i + 1] = BigInt::one();
                    rows[i + 1][i] = BigInt::one();
                    rows[i + 1][i + 1] = -BigInt::one();
                }
                return crate::dyadic::normalize(rows, 1);
            }
        };
        // identity entries become √2^k so that the whole matrix shares one exponent
        let diag = BigInt::one() << (k / 2);
        let mut rows = vec![vec![BigInt::zero(); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            if !levels.contains(&i) {
                row[i] = diag.clone();
            }
        }
        for (bi, &i) in levels.iter().enumerate() {
            for (bj, &j) in levels.iter().enumerate() {
                rows[i][j] = BigInt::from(block[bi][bj]);
            }
        }
        crate::dyadic::normalize(rows, k)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Generator::NegOne(a) => write!(f, "M[{a}]"),
            Generator::TwoLevelX(a, b) => write!(f, "X[{a},{b}]"),
            Generator::FourLevelK([a, b, c, d]) => write!(f, "K[{a},{b},{c},{d}]"),
            Generator::IH => f.write_str("IH"),
        }
    }
}

impl FromStr for Generator {
    type Err = SynthError;

    /// Parses `M[a]`, `X[a,b]`, `K[a,b,c,d]` or `IH`. Index ordering is
    /// checked here; range checks need a dimension and happen in
    /// [`Generator::validate`].
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "IH" {
            return Ok(Generator::IH);
        }
        let bad = || SynthError::parse(0, format!("malformed generator {s:?}"));
        let (head, rest) = s.split_once('[').ok_or_else(bad)?;
        let body = rest.strip_suffix(']').ok_or_else(bad)?;
        let idx = body
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        let g = match (head, idx.as_slice()) {
            ("M", &[a]) => Generator::NegOne(a),
            ("X", &[a, b]) => Generator::TwoLevelX(a, b),
            ("K", &[a, b, c, d]) => Generator::FourLevelK([a, b, c, d]),
            _ => return Err(bad()),
        };
        // ordering check independent of n
        g.validate(usize::MAX - 1).map_err(|_| bad())?;
        Ok(g)
    }
}

/// A sequence of generators in application order: item 0 acts first on a
/// column vector, so the word `[G₁, …, G_q]` denotes `G_q ⋯ G₁`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorWord {
    n: usize,
    items: Vec<Generator>,
}

impl GeneratorWord {
    pub fn new(n: usize) -> Self {
        GeneratorWord {
            n,
            items: Vec::new(),
        }
    }

    pub fn from_items(n: usize, items: Vec<Generator>) -> Result<Self> {
        for g in &items {
            g.validate(n)?;
        }
        Ok(GeneratorWord { n, items })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn items(&self) -> &[Generator] {
        &self.items
    }

    pub fn into_items(self) -> Vec<Generator> {
        self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn ih_count(&self) -> usize {
        self.items.iter().filter(|g| g.is_ih()).count()
    }

    pub fn push(&mut self, g: Generator) -> Result<()> {
        g.validate(self.n)?;
        self.items.push(g);
        Ok(())
    }

    pub fn extend(&mut self, gs: impl IntoIterator<Item = Generator>) -> Result<()> {
        for g in gs {
            self.push(g)?;
        }
        Ok(())
    }

    /// `G_q ⋯ G₁`, folded with row operations.
    pub fn evaluate(&self) -> Result<ScaledDyadicMatrix> {
        let mut acc = ScaledDyadicMatrix::identity(self.n);
        for g in &self.items {
            acc.apply_left_mut(g)?;
        }
        Ok(acc)
    }

    /// The reversed word. Every generator is self-inverse, so this is the
    /// inverse of the represented matrix.
    pub fn inverse(&self) -> Self {
        GeneratorWord {
            n: self.n,
            items: self.items.iter().rev().copied().collect(),
        }
    }

    /// Concatenation: `self` acts first, then `next`.
    pub fn then(mut self, next: &GeneratorWord) -> Result<Self> {
        if next.n != self.n {
            return Err(SynthError::DimensionMismatch {
                expected: self.n,
                found: next.n,
            });
        }
        self.items.extend_from_slice(&next.items);
        Ok(self)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Parses the word text format (`dim <n>` header, one item per line).
    /// Blank lines and `#` comments are skipped.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines
            .next()
            .ok_or_else(|| SynthError::parse(1, "missing header"))?;
        let n = header
            .strip_prefix("dim ")
            .and_then(|d| d.trim().parse::<usize>().ok())
            .filter(|&n| n > 0)
            .ok_or_else(|| {
                SynthError::parse(hline, format!("expected `dim <n>`, found {header:?}"))
            })?;
        let mut word = GeneratorWord::new(n);
        for (line, l) in lines {
            let g: Generator = l.parse().map_err(|e| match e {
                SynthError::Parse { msg, .. } => SynthError::parse(line, msg),
                other => other,
            })?;
            g.validate(n)
                .map_err(|e| SynthError::parse(line, e.to_string()))?;
            word.items.push(g);
        }
        Ok(word)
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim {}", self.n)?;
        for g in &self.items {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Probability of drawing `I⊗H` in the scaled ring.
const IH_PROBABILITY: f64 = 0.25;

/// A random group element as a word together with its evaluation.
///
/// Deterministic in `seed`. At odd `n` the two rings coincide and no `I⊗H` is
/// ever drawn.
pub fn random_element(
    n: usize,
    word_length: usize,
    ring: Ring,
    seed: u64,
) -> Result<(GeneratorWord, ScaledDyadicMatrix)> {
    if n < 2 {
        return Err(SynthError::UnsupportedDimension(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut word = GeneratorWord::new(n);
    let mut value = ScaledDyadicMatrix::identity(n);
    for _ in 0..word_length {
        let g = draw(&mut rng, n, ring);
        value.apply_left_mut(&g)?;
        word.items.push(g);
    }
    Ok((word, value))
}

fn draw(rng: &mut ChaCha8Rng, n: usize, ring: Ring) -> Generator {
    if ring == Ring::Scaled && n.is_multiple_of(2) && rng.gen_bool(IH_PROBABILITY) {
        return Generator::IH;
    }
    let kinds = if n >= 4 { 3 } else { 2 };
    let kind = rng.gen_range(0..kinds);
    let mut idx = sample(rng, n, [1, 2, 4][kind]).into_vec();
    idx.sort_unstable();
    match kind {
        0 => Generator::NegOne(idx[0]),
        1 => Generator::TwoLevelX(idx[0], idx[1]),
        _ => Generator::FourLevelK([idx[0], idx[1], idx[2], idx[3]]),
    }
}

/// A random element whose scaled exponent is exactly `k`, found by extending
/// a random walk until the exponent equals `k`.
///
/// Fails for targets outside the group: odd `k` in the integral ring (or at
/// odd `n`), `k > 1` at `n = 2`, `k > 2` at `n = 4`.
pub fn random_element_with_lde(
    n: usize,
    k: u32,
    ring: Ring,
    seed: u64,
) -> Result<(GeneratorWord, ScaledDyadicMatrix)> {
    let effective = if n % 2 == 1 { Ring::Integral } else { ring };
    let reachable = match n {
        0 | 1 => false,
        2 => k <= 1,
        // no four-level generator fits: signed permutations only
        3 => k == 0,
        4 => k <= 2,
        _ => true,
    };
    if !reachable || (effective == Ring::Integral && k % 2 == 1) {
        return Err(SynthError::Invariant(format!(
            "no element with exponent {k} at n = {n} in the {effective} ring"
        )));
    }
    let max_len = 64 * (k as usize + 2) + 64;
    for attempt in 0u64.. {
        let mut rng = ChaCha8Rng::seed_from_u64(
            seed.wrapping_add(attempt.wrapping_mul(0x9e37_79b9_7f4a_7c15)),
        );
        let mut word = GeneratorWord::new(n);
        let mut value = ScaledDyadicMatrix::identity(n);
        if k == 0 {
            // a short signed permutation
            for _ in 0..rng.gen_range(0..2 * n) {
                let g = if rng.gen_bool(0.5) {
                    Generator::NegOne(rng.gen_range(0..n))
                } else {
                    let mut idx = sample(&mut rng, n, 2).into_vec();
                    idx.sort_unstable();
                    Generator::TwoLevelX(idx[0], idx[1])
                };
                value.apply_left_mut(&g)?;
                word.items.push(g);
            }
            return Ok((word, value));
        }
        for _ in 0..max_len {
            let g = draw(&mut rng, n, effective);
            value.apply_left_mut(&g)?;
            word.items.push(g);
            if value.lde_sqrt2() == k {
                return Ok((word, value));
            }
        }
        if attempt > 64 {
            break;
        }
    }
    Err(SynthError::Invariant(format!(
        "random walk did not reach exponent {k} at n = {n}"
    )))
}
