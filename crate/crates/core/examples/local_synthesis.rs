//! Column-by-column synthesis of a random operator.
//!
//! Each column is driven to a basis vector by repeatedly pairing odd
//! entries into quadruples and applying `K`; the report shows how the
//! exponent of each column shrinks and how long the final word is.
//!
//! ```bash
//! cargo run --release --example local_synthesis -- [n] [k] [seed]
//! ```

use tdsynth::local::{column_cost_bound, odd_count, reduce_column, synthesize_local};
use tdsynth::{random_element_with_lde, Ring};

fn main() -> tdsynth::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().ok());
    let n = args.next().flatten().unwrap_or(8) as usize;
    let k = args.next().flatten().unwrap_or(6) as u32;
    let seed = args.next().flatten().unwrap_or(1);

    let (walk, u) = random_element_with_lde(n, k, Ring::Scaled, seed)?;
    println!(
        "U: n = {n}, exponent {} (random walk of {} generators)",
        u.lde_sqrt2(),
        walk.len()
    );

    for j in 0..n {
        let col = u.column(j);
        let w = reduce_column(&col, j)?;
        println!(
            "  column {j}: exponent {:>2}, {:>2} odd entries -> {:>3} generators (bound {})",
            col.lde_sqrt2(),
            odd_count(&col),
            w.len(),
            column_cost_bound(n, col.lde_sqrt2())
        );
    }

    let w = synthesize_local(&u, Ring::Scaled)?;
    assert_eq!(w.evaluate()?, u);
    println!(
        "word: {} generators, {} of them I⊗H; evaluates to U exactly",
        w.len(),
        w.ih_count()
    );
    print!("{}", w.to_text());
    Ok(())
}
