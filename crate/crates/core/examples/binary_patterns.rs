//! Classifies the binary patterns of random 3-qubit operators.
//!
//! Draws random elements of L₈ at a few exponents, classifies each pattern
//! against the 14-entry table, and prints how often each label occurs and
//! whether it is row- or column-paired.
//!
//! ```bash
//! cargo run --release --example binary_patterns -- [count] [seed]
//! ```

use std::collections::BTreeMap;

use tdsynth::pattern::{find_row_pairing, is_column_paired};
use tdsynth::{classify_pattern, random_element_with_lde, PatternLabel, Ring};

fn main() -> tdsynth::Result<()> {
    let mut args = std::env::args().skip(1);
    let count: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(500);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(7);

    for k in [2, 3, 4, 8] {
        let mut seen: BTreeMap<(PatternLabel, bool), usize> = BTreeMap::new();
        for i in 0..count {
            let (_, u) = random_element_with_lde(8, k, Ring::Scaled, seed * 1_000_003 + i)?;
            let id = classify_pattern(&u.binary_pattern())?;
            assert_eq!(id.reconstruct(), u.binary_pattern());
            *seen.entry((id.label, id.transposed)).or_default() += 1;
        }
        println!("k = {k}, {count} samples");
        for ((label, transposed), n) in &seen {
            let t = label.table();
            let rows = find_row_pairing(&t)?.is_some();
            let cols = is_column_paired(&t)?.is_some();
            println!(
                "  {label}{}  {n:>5}   row-paired: {rows:<5}  column-paired: {cols}",
                if *transposed { "ᵀ" } else { " " }
            );
        }
    }
    Ok(())
}
