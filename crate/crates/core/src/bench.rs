//! Word-length benchmarks over seeded random workloads.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dyadic::ScaledDyadicMatrix;
use crate::error::{Result, SynthError};
use crate::generator::{random_element_with_lde, GeneratorWord, Ring};
use crate::global::synthesize_global;
use crate::householder::synthesize_householder;
use crate::local::synthesize_local;
use crate::rewrite::eliminate_ih_pairs;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Local,
    Householder,
    Global,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Local, Algorithm::Householder, Algorithm::Global];
}

impl FromStr for Algorithm {
    type Err = SynthError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "local" => Ok(Algorithm::Local),
            "householder" => Ok(Algorithm::Householder),
            "global" => Ok(Algorithm::Global),
            other => Err(SynthError::parse(0, format!("unknown algorithm {other:?}"))),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Local => "local",
            Algorithm::Householder => "householder",
            Algorithm::Global => "global",
        })
    }
}

/// Runs one algorithm and checks the word exactly.
///
/// The word realizes `u` itself, except for Householder, where it realizes
/// the embedded operator. Global output in the integral ring has its `I⊗H`
/// pairs eliminated.
pub fn synthesize_checked(
    alg: Algorithm,
    u: &ScaledDyadicMatrix,
    ring: Ring,
) -> Result<GeneratorWord> {
    let (word, expected) = match alg {
        Algorithm::Local => (synthesize_local(u, ring)?, u.clone()),
        Algorithm::Householder => {
            let h = synthesize_householder(u, ring)?;
            (h.word, h.operator.embedded)
        }
        Algorithm::Global => {
            let mut w = synthesize_global(u)?.word;
            if ring == Ring::Integral {
                w = eliminate_ih_pairs(&w)?;
            }
            (w, u.clone())
        }
    };
    if word.evaluate()? != expected {
        return Err(SynthError::Invariant(format!(
            "{alg} output does not evaluate to its target"
        )));
    }
    Ok(word)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub algorithm: Algorithm,
    pub n: usize,
    pub k: u32,
    pub count: usize,
    pub mean_len: f64,
    pub max_len: usize,
    pub runtime_ms: u128,
}

/// Instance `i` of a workload uses seed `seed + i`, so the same instances
/// are shared across algorithms.
pub fn bench_one(
    alg: Algorithm,
    n: usize,
    k: u32,
    count: usize,
    ring: Ring,
    seed: u64,
) -> Result<BenchRow> {
    let start = Instant::now();
    let lengths: Vec<usize> = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let (_, u) = random_element_with_lde(n, k, ring, seed.wrapping_add(i))?;
            Ok(synthesize_checked(alg, &u, ring)?.len())
        })
        .collect::<Result<_>>()?;
    let total: usize = lengths.iter().sum();
    Ok(BenchRow {
        algorithm: alg,
        n,
        k,
        count,
        mean_len: if count == 0 {
            0.0
        } else {
            total as f64 / count as f64
        },
        max_len: lengths.iter().copied().max().unwrap_or(0),
        runtime_ms: start.elapsed().as_millis(),
    })
}

pub fn bench_sweep(
    algorithms: &[Algorithm],
    n: usize,
    ks: &[u32],
    count: usize,
    ring: Ring,
    seed: u64,
) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &alg in algorithms {
        for &k in ks {
            rows.push(bench_one(alg, n, k, count, ring, seed)?);
        }
    }
    Ok(rows)
}

/// CSV with a header row, even when `rows` is empty.
pub fn to_csv(rows: &[BenchRow]) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    w.write_record([
        "algorithm",
        "n",
        "k",
        "count",
        "mean_len",
        "max_len",
        "runtime_ms",
    ])
    .map_err(|e| SynthError::Io(e.to_string()))?;
    for r in rows {
        w.serialize(r).map_err(|e| SynthError::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| SynthError::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_sweep_has_header() {
        let rows = bench_sweep(&Algorithm::ALL, 8, &[], 3, Ring::Scaled, 1).unwrap();
        assert_eq!(
            to_csv(&rows).unwrap(),
            "algorithm,n,k,count,mean_len,max_len,runtime_ms\n"
        );
    }

    #[test]
    fn sweep_is_deterministic_apart_from_time() {
        let a = bench_one(Algorithm::Global, 8, 4, 5, Ring::Scaled, 9).unwrap();
        let b = bench_one(Algorithm::Global, 8, 4, 5, Ring::Scaled, 9).unwrap();
        assert_eq!((a.mean_len, a.max_len), (b.mean_len, b.max_len));
        assert!(to_csv(&[a])
            .unwrap()
            .lines()
            .nth(1)
            .unwrap()
            .starts_with("global,8,4,5,"));
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.to_string().parse::<Algorithm>().unwrap(), a);
        }
        assert!("qr".parse::<Algorithm>().is_err());
    }
}
