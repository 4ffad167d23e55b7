//! The I⊗H relations and the rewrite that removes I⊗H from dyadic words.
//!
//! Checks every relation instance at dimension 8, then takes a dyadic
//! operator whose global synthesis needed conjugation and rewrites the word
//! into one with no I⊗H at all.
//!
//! ```bash
//! cargo run --release --example rewrite_elimination
//! ```

use tdsynth::global::synthesize_global;
use tdsynth::rewrite::{eliminate_ih_pairs, relations_check};
use tdsynth::{random_element_with_lde, Ring};

fn main() -> tdsynth::Result<()> {
    for (rule, ok) in relations_check(8)? {
        println!("{} {rule}", if ok { "ok  " } else { "FAIL" });
    }

    // pattern N at exponent 4: dyadic, not paired
    let (_, u) = random_element_with_lde(8, 4, Ring::Scaled, 1177)?;
    assert!(u.is_integral());
    let g = synthesize_global(&u)?;
    let e = eliminate_ih_pairs(&g.word)?;
    assert_eq!(e.ih_count(), 0);
    assert_eq!(e.evaluate()?, u);
    println!(
        "global word: {} generators with {} I⊗H -> {} generators with none",
        g.word.len(),
        g.word.ih_count(),
        e.len()
    );
    Ok(())
}
