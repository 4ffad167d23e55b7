//! Householder synthesis with one ancilla.
//!
//! `U` is embedded as the symmetric involution `U'` on twice the space,
//! `U'` is split into commuting reflections, and each reflection becomes
//! `G⁻¹ (-1)_[0] G`. The wrapper turns the reflection circuit back into `U`
//! with the ancilla returned to `|0⟩`; both facts are checked exactly.
//!
//! ```bash
//! cargo run --release --example householder -- [n] [k] [seed]
//! ```

use tdsynth::circuit::{check_ancilla_contract, householder_circuit};
use tdsynth::householder::synthesize_householder;
use tdsynth::{random_element_with_lde, Ring, ScaledDyadicMatrix};

fn main() -> tdsynth::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().ok());
    let n = args.next().flatten().unwrap_or(8) as usize;
    let k = args.next().flatten().unwrap_or(3) as u32;
    let seed = args.next().flatten().unwrap_or(2);

    let (_, u) = random_element_with_lde(n, k, Ring::Scaled, seed)?;
    let h = synthesize_householder(&u, Ring::Scaled)?;
    let e = &h.operator.embedded;
    assert_eq!(e.transpose(), *e);
    assert_eq!(e.multiply(e)?, ScaledDyadicMatrix::identity(2 * n));

    println!(
        "U: n = {n}, exponent {k}; system correction: {}",
        h.operator.system_correction
    );
    for (i, r) in h.reflections.iter().enumerate() {
        println!(
            "  reflection {i}: axis exponent {}, {} generators",
            r.axis.lde_sqrt2(),
            r.word.len()
        );
    }
    assert_eq!(h.word.evaluate()?, *e);
    println!("word: {} generators, evaluates to U' exactly", h.word.len());
    println!("wrapper: {}", h.wrapper.to_json());

    if n.is_power_of_two() {
        let c = householder_circuit(&h)?;
        println!("ancilla contract: {}", check_ancilla_contract(&c, &u)?);
    }

    // the integral ring needs a dyadic operator, so an even exponent
    let (_, d) = random_element_with_lde(n, k & !1, Ring::Integral, seed)?;
    let integral = synthesize_householder(&d, Ring::Integral)?;
    println!("integral ring wrapper: {}", integral.wrapper.to_json());
    Ok(())
}
