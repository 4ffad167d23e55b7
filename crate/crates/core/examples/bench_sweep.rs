//! Word length against exponent for the three algorithms.
//!
//! Synthesizes `count` random operators per exponent, checks every word
//! exactly, and prints the sweep as CSV.
//!
//! ```bash
//! cargo run --release --example bench_sweep -- [n] [count]
//! ```

use tdsynth::bench::{bench_sweep, to_csv, Algorithm};
use tdsynth::Ring;

fn main() -> tdsynth::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<usize>().ok());
    let n = args.next().flatten().unwrap_or(8);
    let count = args.next().flatten().unwrap_or(20);

    let rows = bench_sweep(&Algorithm::ALL, n, &[5, 10, 20, 40], count, Ring::Scaled, 0)?;
    print!("{}", to_csv(&rows)?);
    Ok(())
}
