//! Global synthesis on three qubits, step by step.
//!
//! Every step lowers the exponent of the whole matrix at once: a row- or
//! column-paired step when the binary pattern allows it, a conjugation by
//! `I⊗H` when it does not. The step log and the resulting word are printed.
//!
//! ```bash
//! cargo run --release --example global_synthesis -- [k] [seed]
//! ```

use tdsynth::global::synthesize_global;
use tdsynth::{classify_pattern, random_element_with_lde, Ring};

fn main() -> tdsynth::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().ok());
    let k = args.next().flatten().unwrap_or(2) as u32;
    // this seed lands on pattern M, which forces a conjugation
    let seed = args.next().flatten().unwrap_or(315);

    let (_, u) = random_element_with_lde(8, k, Ring::Scaled, seed)?;
    if k >= 2 {
        let id = classify_pattern(&u.binary_pattern())?;
        println!(
            "pattern: {}{}",
            id.label,
            if id.transposed { "ᵀ" } else { "" }
        );
    }

    let g = synthesize_global(&u)?;
    for s in &g.steps {
        println!(
            "  {:<14} {} -> {}",
            format!("{:?}", s.kind),
            s.lde_before,
            s.lde_after
        );
    }
    assert_eq!(g.word.evaluate()?, u);
    println!(
        "word: {} generators, {} I⊗H",
        g.word.len(),
        g.word.ih_count()
    );
    println!("{}", g.report_json());
    Ok(())
}
