//! Lowering words to gate lists and reading them back.
//!
//! A synthesized word becomes a circuit with one macro per generator and
//! `I⊗H` as `H` on the last qubit. The text format round-trips, and the
//! circuit's matrix is rebuilt from gate actions and compared with the word.
//!
//! ```bash
//! cargo run --release --example circuit_emission -- [k] [seed]
//! ```

use tdsynth::circuit::{
    evaluate_circuit, synthesize_householder_circuit, word_to_circuit, Circuit,
};
use tdsynth::local::synthesize_local;
use tdsynth::{random_element_with_lde, Ring};

fn main() -> tdsynth::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().ok());
    let k = args.next().flatten().unwrap_or(3) as u32;
    let seed = args.next().flatten().unwrap_or(4);

    let (_, u) = random_element_with_lde(4, k.min(2), Ring::Scaled, seed)?;
    let w = synthesize_local(&u, Ring::Scaled)?;
    let c = word_to_circuit(&w)?;
    let text = c.to_text();
    print!("{text}");
    assert_eq!(Circuit::parse_text(&text)?, c);
    assert_eq!(evaluate_circuit(&c)?, u);
    println!(
        "# {} gates on {} qubits; matrix matches",
        c.gates().len(),
        c.qubits()
    );

    let (_, u) = random_element_with_lde(8, k, Ring::Scaled, seed)?;
    let c = synthesize_householder_circuit(&u)?;
    println!(
        "# householder, exponent {k}: {} gates on {} qubits + {} ancilla",
        c.gates().len(),
        c.qubits(),
        c.ancillas()
    );
    Ok(())
}
