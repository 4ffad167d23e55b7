//! Command-line front end. The binary is a thin shim over [`run`].
//!
//! Exit codes: `synth` returns 2 on invalid input, 3 when the result fails
//! exact verification, 4 when the algorithm does not support the dimension.
//! `verify` returns 0 on a match, 1 on a mismatch, 2 on a parse error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::bench::{bench_sweep, to_csv, Algorithm};
use crate::circuit::{check_ancilla_contract, householder_circuit};
use crate::dyadic::ScaledDyadicMatrix;
use crate::error::{Result, SynthError};
use crate::generator::{random_element_with_lde, GeneratorWord, Ring};
use crate::global::synthesize_global;
use crate::householder::synthesize_householder;
use crate::local::synthesize_local;
use crate::pattern::classify_pattern;
use crate::rewrite::{eliminate_ih_pairs, relations_check};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_UNVERIFIED: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "tdsynth", version, about = "Exact Toffoli-Hadamard synthesis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Synthesize a matrix and verify the result exactly.
    Synth {
        #[arg(long, default_value = "local")]
        algo: Algorithm,
        #[arg(long, default_value = "scaled")]
        ring: Ring,
        #[arg(long = "in")]
        input: PathBuf,
        /// Word file; the report goes to `<out>.report.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a word evaluates to a matrix.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        word: PathBuf,
    },
    /// Generate random matrices with a given exponent, one JSON per line.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value = "scaled")]
        ring: Ring,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify the binary pattern of a 4×4 or 8×8 matrix.
    Pattern {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Word-length sweep, as CSV.
    Bench {
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Comma-separated exponents.
        #[arg(long, value_delimiter = ',', default_value = "5,10,20,40")]
        k: Vec<u32>,
        /// Comma-separated algorithms; all by default.
        #[arg(long, value_delimiter = ',')]
        algo: Vec<Algorithm>,
        #[arg(long, default_value = "scaled")]
        ring: Ring,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the I⊗H commutation relations exactly.
    RelationsCheck {
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout(), &mut std::io::stderr())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
        }
    };
    configure_threads();
    let result = match cli.command {
        Command::Synth {
            algo,
            ring,
            input,
            out: path,
        } => synth(algo, ring, &input, path.as_deref(), out, err),
        Command::Verify { input, word } => verify(&input, &word, out, err),
        Command::Random {
            n,
            k,
            ring,
            seed,
            count,
            out: path,
        } => random(n, k, ring, seed, count, path.as_deref(), out),
        Command::Pattern { input } => pattern(&input, out, err),
        Command::Bench {
            n,
            k,
            algo,
            ring,
            count,
            seed,
            out: path,
        } => {
            let algos = if algo.is_empty() {
                Algorithm::ALL.to_vec()
            } else {
                algo
            };
            bench_sweep(&algos, n, &k, count, ring, seed)
                .and_then(|rows| to_csv(&rows))
                .and_then(|csv| emit(path.as_deref(), &csv, out))
                .map(|_| EXIT_OK)
        }
        Command::RelationsCheck { n } => relations(n, out),
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(err, "error: {e}");
        EXIT_INVALID
    })
}

/// Honors `TDSYNTH_THREADS` for the global rayon pool (first call wins).
fn configure_threads() {
    if let Some(n) = std::env::var("TDSYNTH_THREADS")
        .ok()
        .and_then(|s| s.parse().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| SynthError::Io(format!("{}: {e}", path.display())))
}

fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| SynthError::Io(format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(SynthError::from),
    }
}

fn synth(
    algo: Algorithm,
    ring: Ring,
    input: &Path,
    path: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let fail = |err: &mut dyn Write, code: i32, e: SynthError| {
        let _ = writeln!(err, "error: {e}");
        Ok(code)
    };
    let u = match read(input).and_then(|t| ScaledDyadicMatrix::from_json(&t)) {
        Ok(u) => u,
        Err(e) => return fail(err, EXIT_INVALID, e),
    };
    let outcome = match algo {
        Algorithm::Local => synthesize_local(&u, ring).map(|w| {
            let ok = w.evaluate().map(|v| v == u).unwrap_or(false);
            let report = json!({
                "algorithm": "local",
                "n": u.n(),
                "k_initial": u.lde_sqrt2(),
                "word_length": w.len(),
                "ih_count": w.ih_count(),
            });
            (w, report.to_string(), ok, None)
        }),
        Algorithm::Global => synthesize_global(&u).and_then(|g| {
            if ring == Ring::Integral && u.lde_sqrt2() % 2 == 1 {
                return Err(SynthError::NotIntegral(u.lde_sqrt2()));
            }
            let mut g = g;
            if ring == Ring::Integral {
                g.word = eliminate_ih_pairs(&g.word)?;
            }
            let ok = g.word.evaluate().map(|v| v == u).unwrap_or(false);
            let report = g.report_json();
            Ok((g.word, report, ok, None))
        }),
        Algorithm::Householder => synthesize_householder(&u, ring).map(|h| {
            let mut ok = h
                .word
                .evaluate()
                .map(|v| v == h.operator.embedded)
                .unwrap_or(false);
            let circuit = if h.wrapper.available && u.n().is_power_of_two() {
                householder_circuit(&h).ok()
            } else {
                None
            };
            let contract = circuit
                .as_ref()
                .map(|c| check_ancilla_contract(c, &u).unwrap_or(false));
            ok &= contract.unwrap_or(true);
            let report = json!({
                "algorithm": "householder",
                "n": u.n(),
                "k_initial": u.lde_sqrt2(),
                "word_length": h.word.len(),
                "ih_count": h.word.ih_count(),
                "system_correction": h.operator.system_correction,
                "wrapper": h.wrapper,
                "ancilla_contract": contract,
            });
            (h.word, report.to_string(), ok, circuit.map(|c| c.to_text()))
        }),
    };
    let (word, report, ok, circuit) = match outcome {
        Ok(x) => x,
        Err(e @ SynthError::UnsupportedDimension(_)) => return fail(err, EXIT_UNSUPPORTED, e),
        Err(e @ SynthError::Invariant(_)) => return fail(err, EXIT_UNVERIFIED, e),
        Err(e) => return fail(err, EXIT_INVALID, e),
    };
    if !ok {
        let _ = writeln!(err, "error: synthesized word failed exact verification");
        return Ok(EXIT_UNVERIFIED);
    }
    match path {
        Some(p) => {
            emit(Some(p), &word.to_text(), out)?;
            emit(Some(&suffixed(p, ".report.json")), &report, out)?;
            if let Some(c) = circuit {
                emit(Some(&suffixed(p, ".circuit")), &c, out)?;
            }
        }
        None => {
            emit(None, &word.to_text(), out)?;
            writeln!(err, "{report}")?;
        }
    }
    Ok(EXIT_OK)
}

fn suffixed(p: &Path, suffix: &str) -> PathBuf {
    let mut s = p.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn verify(input: &Path, word: &Path, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let parsed = read(input)
        .and_then(|t| ScaledDyadicMatrix::from_json(&t))
        .and_then(|u| Ok((u, GeneratorWord::parse_text(&read(word)?)?)));
    let (u, w) = match parsed {
        Ok(x) => x,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(EXIT_INVALID);
        }
    };
    if w.n() == u.n() && w.evaluate()? == u {
        writeln!(out, "match")?;
        Ok(EXIT_OK)
    } else {
        writeln!(out, "mismatch")?;
        Ok(EXIT_MISMATCH)
    }
}

fn random(
    n: usize,
    k: u32,
    ring: Ring,
    seed: u64,
    count: usize,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32> {
    let mut text = String::new();
    for i in 0..count as u64 {
        let (_, u) = random_element_with_lde(n, k, ring, seed.wrapping_add(i))?;
        text.push_str(&u.to_json());
        text.push('\n');
    }
    emit(path, &text, out)?;
    Ok(EXIT_OK)
}

fn pattern(input: &Path, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let u = ScaledDyadicMatrix::from_json(&read(input)?)?;
    match classify_pattern(&u.binary_pattern()) {
        Ok(id) => {
            writeln!(out, "{}", id.to_json())?;
            Ok(EXIT_OK)
        }
        Err(SynthError::NoMatch) => {
            writeln!(err, "error: {}", SynthError::NoMatch)?;
            Ok(EXIT_MISMATCH)
        }
        Err(e) => Err(e),
    }
}

fn relations(n: usize, out: &mut dyn Write) -> Result<i32> {
    let mut all = true;
    for (rule, ok) in relations_check(n)? {
        all &= ok;
        writeln!(out, "{} {rule}", if ok { "ok  " } else { "FAIL" })?;
    }
    Ok(if all { EXIT_OK } else { EXIT_MISMATCH })
}
