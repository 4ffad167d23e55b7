//! Whole-matrix synthesis for dimensions 2, 4 and 8.
//!
//! While the exponent is positive the binary pattern decides the move:
//! a row-paired pattern is reduced by a row permutation followed by `I⊗H` on
//! the left, a column-paired one by the mirror image on the right, and at
//! dimension 8 the three unpaired patterns `L`, `M`, `N` are first conjugated
//! by `I⊗H` (after aligning to the table with the classification witness).
//! At exponent zero what remains is a signed permutation.
//!
//! At exponent 1 every row of `√2·U` has exactly two odd entries and two
//! rows sharing an odd column share both, so the pattern is always
//! row-paired. Reducing all the way to zero therefore never needs `K` and
//! keeps every `I⊗H` pair separated by transpositions and sign flips only.

use serde::Serialize;

use crate::dyadic::ScaledDyadicMatrix;
use crate::error::{Result, SynthError};
use crate::generator::{Generator, GeneratorWord, Ring};
use crate::local::synthesize_local;
use crate::pattern::{classify_pattern, find_row_pairing, is_column_paired, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    RowPaired,
    ColumnPaired,
    Conjugate,
    Base,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub kind: StepKind,
    pub lde_before: u32,
    pub lde_after: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Row,
    Column,
}

/// Working state `W = L · U · R`, with the generators of `L` and `R` kept in
/// the order they were applied.
struct Reduction {
    w: ScaledDyadicMatrix,
    left: Vec<Generator>,
    right: Vec<Generator>,
}

impl Reduction {
    fn left(&mut self, g: Generator) -> Result<()> {
        self.w.apply_left_mut(&g)?;
        self.left.push(g);
        Ok(())
    }

    fn right(&mut self, g: Generator) -> Result<()> {
        self.w = self.w.apply_right(&g)?;
        self.right.push(g);
        Ok(())
    }

    fn permute(&mut self, side: Side, p: &Permutation) -> Result<()> {
        for (a, b) in p.transpositions() {
            let x = Generator::TwoLevelX(a, b);
            match side {
                Side::Row => self.left(x)?,
                Side::Column => self.right(x)?,
            }
        }
        Ok(())
    }
}

/// One paired reduction: `(I⊗H)·P·U` for rows, `U·P·(I⊗H)` for columns.
///
/// Returns the permutation, the generators in the order they were applied
/// on that side, and the reduced matrix.
pub fn reduce_paired_step(
    u: &ScaledDyadicMatrix,
    side: Side,
) -> Result<(Permutation, Vec<Generator>, ScaledDyadicMatrix)> {
    let mut r = Reduction {
        w: u.clone(),
        left: vec![],
        right: vec![],
    };
    let p = paired_step(&mut r, side)?;
    let gens = match side {
        Side::Row => r.left,
        Side::Column => r.right,
    };
    Ok((p, gens, r.w))
}

fn paired_step(r: &mut Reduction, side: Side) -> Result<Permutation> {
    let before = r.w.lde_sqrt2();
    if before == 0 {
        return Err(SynthError::Invariant("paired step at exponent 0".into()));
    }
    let pattern = r.w.binary_pattern();
    let p = match side {
        Side::Row => find_row_pairing(&pattern)?,
        Side::Column => is_column_paired(&pattern)?,
    }
    .ok_or(SynthError::NotPaired(match side {
        Side::Row => "row",
        Side::Column => "column",
    }))?;
    r.permute(side, &p)?;
    match side {
        Side::Row => r.left(Generator::IH)?,
        Side::Column => r.right(Generator::IH)?,
    }
    if r.w.lde_sqrt2() >= before {
        return Err(SynthError::Invariant(format!(
            "paired step did not lower the exponent ({before} -> {})",
            r.w.lde_sqrt2()
        )));
    }
    Ok(p)
}

/// Aligns an unpaired dimension-8 matrix to its table entry and conjugates
/// it by `I⊗H`. Returns the generators applied on the left and on the
/// right, in order, and the new matrix.
pub fn conjugate_step(
    u: &ScaledDyadicMatrix,
) -> Result<(Vec<Generator>, Vec<Generator>, ScaledDyadicMatrix)> {
    let mut r = Reduction {
        w: u.clone(),
        left: vec![],
        right: vec![],
    };
    conjugate(&mut r)?;
    Ok((r.left, r.right, r.w))
}

fn conjugate(r: &mut Reduction) -> Result<()> {
    let n = r.w.n();
    if n != 8 {
        return Err(SynthError::UnsupportedDimension(n));
    }
    let before = r.w.lde_sqrt2();
    if before < 2 {
        return Err(SynthError::Invariant(format!(
            "conjugation at exponent {before}"
        )));
    }
    let id = classify_pattern(&r.w.binary_pattern())?;
    if id.label.is_paired_family() {
        return Err(SynthError::Invariant(format!(
            "conjugation requested for pattern {}",
            id.label
        )));
    }
    r.permute(Side::Row, &id.row_perm)?;
    r.permute(Side::Column, &id.col_perm)?;
    if r.w.binary_pattern() != id.oriented_table() {
        return Err(SynthError::Invariant(
            "alignment did not reproduce the table".into(),
        ));
    }
    r.left(Generator::IH)?;
    r.right(Generator::IH)?;
    let after = r.w.lde_sqrt2();
    if after > before {
        return Err(SynthError::Invariant(format!(
            "conjugation raised the exponent ({before} -> {after})"
        )));
    }
    let pattern = r.w.binary_pattern();
    if after > 0 && find_row_pairing(&pattern)?.is_none() && is_column_paired(&pattern)?.is_none() {
        return Err(SynthError::Invariant(format!(
            "conjugated matrix is neither row- nor column-paired:\n{:?}",
            r.w
        )));
    }
    Ok(())
}

/// A synthesized word together with the reduction log.
#[derive(Clone, Debug)]
pub struct GlobalSynthesis {
    pub word: GeneratorWord,
    pub k_initial: u32,
    pub steps: Vec<Step>,
}

#[derive(Serialize)]
struct Report<'a> {
    algorithm: &'static str,
    n: usize,
    k_initial: u32,
    word_length: usize,
    ih_count: usize,
    steps: &'a [Step],
}

impl GlobalSynthesis {
    pub fn report_json(&self) -> String {
        serde_json::to_string(&Report {
            algorithm: "global",
            n: self.word.n(),
            k_initial: self.k_initial,
            word_length: self.word.len(),
            ih_count: self.word.ih_count(),
            steps: &self.steps,
        })
        .expect("report serialization")
    }
}

/// Synthesizes `u` (dimension 2, 4 or 8) over the scaled generators.
///
/// The result evaluates to `u`. For dyadic input the number of `I⊗H` is
/// even and [`crate::rewrite::eliminate_ih_pairs`] removes them.
pub fn synthesize_global(u: &ScaledDyadicMatrix) -> Result<GlobalSynthesis> {
    let n = u.n();
    if !matches!(n, 2 | 4 | 8) {
        return Err(SynthError::UnsupportedDimension(n));
    }
    if !u.is_orthogonal() {
        return Err(SynthError::NotOrthogonal);
    }
    let k_initial = u.lde_sqrt2();
    let guard = 4 * k_initial as usize + 16;
    let mut r = Reduction {
        w: u.clone(),
        left: vec![],
        right: vec![],
    };
    let mut steps = Vec::new();
    while r.w.lde_sqrt2() > 0 {
        if steps.len() >= guard {
            return Err(SynthError::Invariant(format!(
                "no termination after {guard} steps"
            )));
        }
        let lde_before = r.w.lde_sqrt2();
        let pattern = r.w.binary_pattern();
        let kind = if find_row_pairing(&pattern)?.is_some() {
            paired_step(&mut r, Side::Row)?;
            StepKind::RowPaired
        } else if is_column_paired(&pattern)?.is_some() {
            paired_step(&mut r, Side::Column)?;
            StepKind::ColumnPaired
        } else {
            conjugate(&mut r)?;
            StepKind::Conjugate
        };
        steps.push(Step {
            kind,
            lde_before,
            lde_after: r.w.lde_sqrt2(),
        });
    }
    let base = synthesize_local(&r.w, Ring::Integral)?;
    steps.push(Step {
        kind: StepKind::Base,
        lde_before: 0,
        lde_after: 0,
    });
    // u = L⁻¹ · W · R⁻¹; in application order: R's items, then W, then L's reversed
    let mut items = r.right;
    items.extend(base.into_items());
    items.extend(r.left.into_iter().rev());
    Ok(GlobalSynthesis {
        word: GeneratorWord::from_items(n, items)?,
        k_initial,
        steps,
    })
}
