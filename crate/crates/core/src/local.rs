//! Column-by-column synthesis.
//!
//! Every column of a dyadic orthogonal matrix is reduced to a basis vector
//! by repeatedly grouping its odd entries into quadruples and clearing them
//! with sign flips and one `K`. The number of odd entries of a unit vector
//! in `Z[1/2]ⁿ` with positive denominator exponent is always a multiple of
//! four, so the grouping never leaves a remainder.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::dyadic::{DyadicVector, ScaledDyadicMatrix};
use crate::error::{Result, SynthError};
use crate::generator::{Generator, GeneratorWord, Ring};
use crate::rowops;

/// One quadruple reduction: which rows, and which of them were negated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadrupleStep {
    pub indices: [usize; 4],
    pub tau: [bool; 4],
}

impl QuadrupleStep {
    /// `NegOne` for each flipped row, then the `K`.
    pub fn generators(&self) -> Vec<Generator> {
        let mut out: Vec<Generator> = self
            .indices
            .iter()
            .zip(self.tau)
            .filter(|(_, t)| *t)
            .map(|(&i, _)| Generator::NegOne(i))
            .collect();
        out.push(Generator::FourLevelK(self.indices));
        out
    }
}

/// Clears four odd entries of the integer vector `v` in place.
///
/// Entries `≡ 3 (mod 4)` are negated so that all four are `≡ 1 (mod 4)`;
/// the subsequent `K` then produces four even integers. `v` is read as the
/// numerator of a vector with a fixed exponent, which `K` leaves unchanged.
pub fn reduce_quadruple(
    v: &mut [BigInt],
    indices: [usize; 4],
) -> Result<(QuadrupleStep, Vec<Generator>)> {
    if !indices.windows(2).all(|w| w[0] < w[1]) || indices[3] >= v.len() {
        return Err(SynthError::InvalidGenerator {
            generator: format!("{}", Generator::FourLevelK(indices)),
            n: v.len(),
        });
    }
    let four = BigInt::from(4);
    let mut tau = [false; 4];
    for (t, &i) in tau.iter_mut().zip(&indices) {
        if v[i].is_even() {
            return Err(SynthError::EvenEntry(i));
        }
        *t = v[i].mod_floor(&four) == BigInt::from(3);
    }
    let step = QuadrupleStep { indices, tau };
    let gens = step.generators();
    let n = v.len();
    for g in &gens {
        let dk = rowops::apply_generator(v, 1, n, g);
        if dk != 0 {
            return Err(SynthError::Invariant(format!(
                "quadruple {indices:?} did not become even"
            )));
        }
    }
    Ok((step, gens))
}

/// A word `w` with `w · u = |target⟩`.
pub fn reduce_column(u: &DyadicVector, target: usize) -> Result<GeneratorWord> {
    let n = u.dim();
    if target >= n {
        return Err(SynthError::DimensionMismatch {
            expected: n,
            found: target,
        });
    }
    if !u.is_unit() {
        return Err(SynthError::NotUnit);
    }
    if !u.lde_sqrt2().is_multiple_of(2) {
        return Err(SynthError::NotIntegral(u.lde_sqrt2()));
    }
    let mut word = GeneratorWord::new(n);
    let mut k = u.lde_sqrt2();
    let mut v = u.entries().to_vec();
    while k > 0 {
        let odd: Vec<usize> = (0..n).filter(|&i| v[i].is_odd()).collect();
        if odd.is_empty() || !odd.len().is_multiple_of(4) {
            return Err(SynthError::Invariant(format!(
                "{} odd entries at exponent {k}",
                odd.len()
            )));
        }
        for q in odd.chunks_exact(4) {
            let (_, gens) = reduce_quadruple(&mut v, [q[0], q[1], q[2], q[3]])?;
            word.extend(gens)?;
        }
        let before = k;
        rowops::canonicalize(&mut v, &mut k);
        if k >= before {
            return Err(SynthError::Invariant("column exponent did not drop".into()));
        }
    }
    let (idx, negative) = DyadicVector::new(v, 0)
        .signed_basis_index()
        .ok_or(SynthError::NotUnit)?;
    if negative {
        word.push(Generator::NegOne(idx))?;
    }
    if idx != target {
        word.push(Generator::TwoLevelX(idx.min(target), idx.max(target)))?;
    }
    Ok(word)
}

/// Most generators [`reduce_column`] can emit for a column of base-2
/// exponent `lde` in dimension `n`.
pub fn column_cost_bound(n: usize, lde: u32) -> usize {
    5 * (n / 4) * lde as usize + 2
}

/// Synthesizes `u` column by column.
///
/// With `Ring::Scaled` and an odd exponent, `I⊗H` is applied first so that
/// the remainder is dyadic. The result evaluates exactly to `u`.
pub fn synthesize_local(u: &ScaledDyadicMatrix, ring: Ring) -> Result<GeneratorWord> {
    let n = u.n();
    if !u.is_orthogonal() {
        return Err(SynthError::NotOrthogonal);
    }
    let mut work = u.clone();
    let mut reduction = GeneratorWord::new(n);
    if work.lde_sqrt2() % 2 == 1 {
        if ring == Ring::Integral {
            return Err(SynthError::NotIntegral(work.lde_sqrt2()));
        }
        if n % 2 == 1 {
            return Err(SynthError::OddExponentOddDimension(n));
        }
        work.apply_left_mut(&Generator::IH)?;
        reduction.push(Generator::IH)?;
    }
    for j in 0..n {
        let w = reduce_column(&work.column(j), j)?;
        for g in w.items() {
            work.apply_left_mut(g)?;
        }
        reduction.extend(w.into_items())?;
    }
    if work != ScaledDyadicMatrix::identity(n) {
        return Err(SynthError::Invariant(
            "columns did not reduce to identity".into(),
        ));
    }
    Ok(reduction.inverse())
}

/// Number of odd numerator entries of a vector (used by property tests).
pub fn odd_count(v: &DyadicVector) -> usize {
    v.entries().iter().filter(|x| x.is_odd()).count()
}
