//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! 1. exact resynthesis, 500 instances per (algorithm, n)
//! 2. exponent bounds in dimensions 2 and 4
//! 3. pattern coverage at dimension 8
//! 4. I⊗H relations at dimension 8
//! 5. Householder structure and wrapper contract
//! 6. I⊗H elimination for dyadic 8×8 input
//! 7. word-length trends
//! 8. strict progress in every logged global step
//!
//! Runs without the libtest harness so the lines always reach the output;
//! the process fails if any criterion fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use tdsynth::bench::{bench_one, Algorithm};
use tdsynth::circuit::{check_ancilla_contract, householder_circuit};
use tdsynth::global::{synthesize_global, Step, StepKind};
use tdsynth::householder::{embedding_of, synthesize_householder};
use tdsynth::local::synthesize_local;
use tdsynth::rewrite::{eliminate_ih_pairs, relations_check};
use tdsynth::{
    classify_pattern, random_element, random_element_with_lde, Generator, PatternLabel, Ring,
    ScaledDyadicMatrix,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Exponents used for instance `i` at dimension `n` (cycling through the
/// reachable range) and the ring it is drawn from.
fn workload(n: usize, i: u64) -> (u32, Ring) {
    let max_k = match n {
        2 => 1,
        3 => 0,
        4 => 2,
        _ => 8,
    };
    let k = (i % (max_k + 1)) as u32;
    // odd dimensions only carry the integral ring, which needs even exponents
    if n % 2 == 1 {
        return (k & !1, Ring::Integral);
    }
    let ring = if k.is_multiple_of(2) && i.is_multiple_of(4) {
        Ring::Integral
    } else {
        Ring::Scaled
    };
    (k, ring)
}

fn instance(n: usize, i: u64, salt: u64) -> ScaledDyadicMatrix {
    let (k, ring) = workload(n, i);
    random_element_with_lde(n, k, ring, salt * 1_000_003 + i)
        .expect("workload")
        .1
}

/// Criterion 1. Returns the global step logs for criterion 8.
fn resynthesis(steps: &mut Vec<Step>) -> Outcome {
    const COUNT: u64 = 500;
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut cases = 0;

    for n in 2..=8usize {
        let bad = (0..COUNT)
            .into_par_iter()
            .filter(|&i| {
                let u = instance(n, i, 11);
                let ring = if u.is_integral() {
                    Ring::Integral
                } else {
                    Ring::Scaled
                };
                !matches!(synthesize_local(&u, ring).and_then(|w| w.evaluate()), Ok(v) if v == u)
            })
            .count();
        cases += COUNT;
        if bad > 0 {
            failures.push(format!("local n={n}: {bad}"));
        }
    }

    for n in [2usize, 4, 8] {
        let bad = (0..COUNT)
            .into_par_iter()
            .filter(|&i| {
                let u = instance(n, i, 12);
                let ok = synthesize_householder(&u, Ring::Scaled).and_then(|h| {
                    let word_ok = h.word.evaluate()? == h.operator.embedded;
                    let circuit_ok = check_ancilla_contract(&householder_circuit(&h)?, &u)?;
                    Ok(word_ok && circuit_ok)
                });
                !matches!(ok, Ok(true))
            })
            .count();
        cases += COUNT;
        if bad > 0 {
            failures.push(format!("householder n={n}: {bad}"));
        }
    }

    for n in [2usize, 4, 8] {
        let results: Vec<Option<Vec<Step>>> = (0..COUNT)
            .into_par_iter()
            .map(|i| {
                let u = instance(n, i, 13);
                match synthesize_global(&u) {
                    Ok(g) if g.word.evaluate().ok() == Some(u) => Some(g.steps),
                    _ => None,
                }
            })
            .collect();
        cases += COUNT;
        let bad = results.iter().filter(|r| r.is_none()).count();
        if bad > 0 {
            failures.push(format!("global n={n}: {bad}"));
        }
        steps.extend(results.into_iter().flatten().flatten());
    }

    let elapsed = start.elapsed();
    let within = elapsed < Duration::from_secs(60);
    outcome(
        failures.is_empty() && within,
        format!(
            "{cases} instances, {} failures{}, {:.1} s (limit 60 s)",
            failures.len(),
            if failures.is_empty() {
                String::new()
            } else {
                format!(" [{}]", failures.join("; "))
            },
            elapsed.as_secs_f64()
        ),
    )
}

/// Criterion 2.
fn lde_bounds() -> Outcome {
    let mut worst = BTreeMap::new();
    for (n, bound) in [(2usize, 1u32), (4, 2)] {
        let max = (0..1000u64)
            .into_par_iter()
            .map(|i| {
                let len = 1 + (i % 80) as usize;
                random_element(n, len, Ring::Scaled, 2_000 + i)
                    .expect("walk")
                    .1
                    .lde_sqrt2()
            })
            .max()
            .unwrap_or(0);
        worst.insert(n, (max, bound));
    }
    let pass = worst.values().all(|(m, b)| m <= b);
    let detail = worst
        .iter()
        .map(|(n, (m, b))| format!("n={n}: max exponent {m} (bound {b})"))
        .collect::<Vec<_>>()
        .join(", ");
    outcome(pass, format!("1000 words each; {detail}"))
}

/// Criterion 3.
fn pattern_coverage() -> Outcome {
    // the walk rarely lands on L, M or N; pinned seeds that do
    let pinned = [
        (3u32, 12_046u64),
        (2, 315),
        (3, 11_115),
        (2, 900),
        (4, 1177),
    ];
    let draws: Vec<(u32, Ring, u64)> = (0..1000u64)
        .map(|i| {
            let k = 2 + (i % 7) as u32;
            let ring = if k.is_multiple_of(2) && i % 2 == 0 {
                Ring::Integral
            } else {
                Ring::Scaled
            };
            (k, ring, 3_000 + i)
        })
        .chain(pinned.iter().map(|&(k, seed)| (k, Ring::Scaled, seed)))
        .collect();
    let results: Vec<Option<(PatternLabel, bool)>> = draws
        .into_par_iter()
        .map(|(k, ring, seed)| {
            let (_, u) = random_element_with_lde(8, k, ring, seed).ok()?;
            let b = u.binary_pattern();
            let id = classify_pattern(&b).ok()?;
            (id.reconstruct() == b).then_some((id.label, id.transposed))
        })
        .collect();
    let failures = results.iter().filter(|r| r.is_none()).count();
    let mut hist: BTreeMap<String, usize> = BTreeMap::new();
    for (label, t) in results.into_iter().flatten() {
        *hist
            .entry(format!("{label}{}", if t { "ᵀ" } else { "" }))
            .or_default() += 1;
    }
    let hist = hist
        .iter()
        .map(|(l, c)| format!("{l}:{c}"))
        .collect::<Vec<_>>()
        .join(" ");
    outcome(
        failures == 0,
        format!(
            "1000 random + {} pinned matrices, {failures} unclassified; labels {hist}",
            pinned.len()
        ),
    )
}

/// Criterion 4.
fn relations() -> Outcome {
    let start = Instant::now();
    let checked = relations_check(8).expect("dimension 8");
    let elapsed = start.elapsed();
    let failed: Vec<String> = checked
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(r, _)| r.to_string())
        .collect();
    let mut sink = Vec::new();
    let exit = tdsynth::cli::run_with(
        ["tdsynth", "relations-check", "--n", "8"],
        &mut sink,
        &mut Vec::new(),
    );
    let mut eqs: Vec<u8> = checked.iter().map(|(r, _)| r.equation).collect();
    eqs.dedup();
    outcome(
        failed.is_empty() && eqs == [6, 7, 8, 9, 10] && elapsed < Duration::from_secs(1) && exit == 0,
        format!(
            "{} instances of relations {:?}, {} failing, {:.3} s (limit 1 s); relations-check exit {exit}",
            checked.len(),
            eqs,
            failed.len(),
            elapsed.as_secs_f64()
        ),
    )
}

/// Criterion 5.
fn householder_structure() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    for n in [2usize, 4, 8] {
        let bad = (0..200u64)
            .into_par_iter()
            .filter(|&i| {
                let u = instance(n, i, 15);
                let check = || -> tdsynth::Result<bool> {
                    let id = ScaledDyadicMatrix::identity(2 * n);
                    let whole = embedding_of(&u);
                    let symmetric = whole.transpose() == whole && whole.multiply(&whole)? == id;
                    let h = synthesize_householder(&u, Ring::Scaled)?;
                    let e = &h.operator.embedded;
                    let factored = e.transpose() == *e && e.multiply(e)? == id;
                    let mut product = ScaledDyadicMatrix::identity(2 * n);
                    for r in &h.reflections {
                        product = product.multiply(&r.axis.reflection_matrix())?;
                    }
                    let reflections = product == *e;
                    let word = h.word.evaluate()? == *e;
                    let contract = n > 4 || check_ancilla_contract(&householder_circuit(&h)?, &u)?;
                    Ok(symmetric && factored && reflections && word && contract)
                };
                !matches!(check(), Ok(true))
            })
            .count();
        pass &= bad == 0;
        notes.push(format!("n={n}: {bad}/200 failing"));
    }
    outcome(
        pass,
        format!(
            "U' symmetric involution, ∏R = U', word = U', contract at n ∈ {{2,4}}; {}",
            notes.join(", ")
        ),
    )
}

/// Criterion 6. Pushes the global step logs for criterion 8.
fn integral_elimination(steps: &mut Vec<Step>) -> Outcome {
    // dyadic inputs from both walks, plus pinned seeds with unpaired patterns
    let pinned = [(2u32, 315u64), (2, 900), (4, 1177)];
    let inputs: Vec<ScaledDyadicMatrix> = (0..200u64)
        .map(|i| {
            if let Some(&(k, seed)) = pinned.get(i as usize) {
                return random_element_with_lde(8, k, Ring::Scaled, seed)
                    .expect("pinned")
                    .1;
            }
            let k = 2 * (1 + (i % 6) as u32);
            let ring = if i % 2 == 0 {
                Ring::Integral
            } else {
                Ring::Scaled
            };
            random_element_with_lde(8, k, ring, 6_000 + i)
                .expect("walk")
                .1
        })
        .collect();
    let results: Vec<std::result::Result<(Vec<Step>, bool), String>> = inputs
        .par_iter()
        .map(|u| {
            if !u.is_integral() {
                return Err("input not dyadic".into());
            }
            let g = synthesize_global(u).map_err(|e| e.to_string())?;
            let conj = g.steps.iter().any(|s| s.kind == StepKind::Conjugate);
            if g.word.ih_count() % 2 != 0 {
                return Err(format!("odd I⊗H count {}", g.word.ih_count()));
            }
            let e = eliminate_ih_pairs(&g.word).map_err(|e| e.to_string())?;
            if e.ih_count() != 0 || e.evaluate().map_err(|e| e.to_string())? != *u {
                return Err("elimination result wrong".into());
            }
            if e.items().contains(&Generator::IH) {
                return Err("I⊗H left".into());
            }
            Ok((g.steps, conj))
        })
        .collect();
    let errors: Vec<String> = results
        .iter()
        .filter_map(|r| r.as_ref().err().cloned())
        .collect();
    let with_conj = results
        .iter()
        .filter(|r| matches!(r, Ok((_, true))))
        .count();
    for (s, _) in results.into_iter().flatten() {
        steps.extend(s);
    }
    outcome(
        errors.is_empty(),
        format!(
            "200 dyadic 8×8 matrices ({with_conj} needing conjugation), {} failures{}",
            errors.len(),
            errors
                .first()
                .map(|e| format!(" (first: {e})"))
                .unwrap_or_default()
        ),
    )
}

/// Criterion 7.
fn trends() -> Outcome {
    const COUNT: usize = 100;
    let start = Instant::now();
    let ks = [5u32, 10, 20, 40];
    let mean = |alg, n, k| bench_one(alg, n, k, COUNT, Ring::Scaled, 7_000).map(|r| r.mean_len);

    let global: Vec<f64> = ks
        .iter()
        .map(|&k| mean(Algorithm::Global, 8, k))
        .collect::<Result<_, _>>()
        .expect("global sweep");
    let ratios: Vec<f64> = global.windows(2).map(|w| w[1] / w[0]).collect();
    let a = ratios.iter().all(|&r| r <= 2.2);

    let local: Vec<f64> = ks
        .iter()
        .map(|&k| mean(Algorithm::Local, 8, k))
        .collect::<Result<_, _>>()
        .expect("local sweep");
    // 502·k from the column-count closed form; 2n extra for the final signed permutation
    let b = ks
        .iter()
        .zip(&local)
        .all(|(&k, &m)| m <= 502.0 * k as f64 + 16.0);

    let hk = 2;
    let hh: Vec<f64> = [4usize, 8, 16]
        .iter()
        .map(|&n| mean(Algorithm::Householder, n, hk))
        .collect::<Result<_, _>>()
        .expect("householder sweep");
    let c = hh[0] / 16.0;
    let scaled: Vec<f64> = [4.0f64, 8.0, 16.0]
        .iter()
        .zip(&hh)
        .map(|(n, m)| m / (n * n))
        .collect();
    let c_ok = scaled.iter().all(|&s| s <= 1.5 * c);

    let elapsed = start.elapsed();
    let within = elapsed < Duration::from_secs(300);
    let fmt = |v: &[f64]| {
        v.iter()
            .map(|x| format!("{x:.1}"))
            .collect::<Vec<_>>()
            .join("/")
    };
    outcome(
        a && b && c_ok && within,
        format!(
            "(a) global mean len k=5/10/20/40: {} ratios {} (≤ 2.2) {}; (b) local mean len {} (≤ 502k+16) {}; \
             (c) householder k=2 len/n² at n=4/8/16: {} (≤ 1.5·{:.2}) {}; {:.1} s",
            fmt(&global),
            fmt(&ratios),
            if a { "ok" } else { "FAIL" },
            fmt(&local),
            if b { "ok" } else { "FAIL" },
            scaled.iter().map(|x| format!("{x:.2}")).collect::<Vec<_>>().join("/"),
            c,
            if c_ok { "ok" } else { "FAIL" },
            elapsed.as_secs_f64()
        ),
    )
}

/// Criterion 8.
fn progress(steps: &[Step]) -> Outcome {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    let mut violations = 0;
    for s in steps {
        let (name, ok) = match s.kind {
            StepKind::RowPaired => ("row-paired", s.lde_before > s.lde_after),
            StepKind::ColumnPaired => ("column-paired", s.lde_before > s.lde_after),
            StepKind::Conjugate => ("conjugate", s.lde_before >= s.lde_after),
            StepKind::Base => ("base", true),
        };
        *counts.entry(name).or_default() += 1;
        violations += usize::from(!ok);
    }
    let conj = counts.get("conjugate").copied().unwrap_or(0);
    outcome(
        violations == 0 && conj > 0,
        format!(
            "{} logged steps {:?}, {violations} violations",
            steps.len(),
            counts
        ),
    )
}

fn main() {
    let mut steps = Vec::new();
    let mut all = true;
    let mut report = |id: u8, name: &str, o: Outcome| {
        all &= o.pass;
        println!(
            "criterion {id} [{name}]: {} — {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    };
    report(1, "exact resynthesis", resynthesis(&mut steps));
    report(2, "exponent bounds", lde_bounds());
    report(3, "pattern coverage", pattern_coverage());
    report(4, "relations", relations());
    report(5, "householder structure", householder_structure());
    report(6, "integral elimination", integral_elimination(&mut steps));
    report(7, "length trends", trends());
    report(8, "strict progress", progress(&steps));
    if !all {
        std::process::exit(1);
    }
}
