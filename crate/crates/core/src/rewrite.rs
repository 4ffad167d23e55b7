//! Commutation relations between `I⊗H` and the dyadic generators, and the
//! rewrite that removes pairs of `I⊗H` from a word.
//!
//! Relations, with `a` even in (7) and (9) and odd in (8) and (10):
//!
//! ```text
//! (6)  (I⊗H)(I⊗H)        = ε
//! (7)  (I⊗H)(-1)_[a]     = (-1)_[a] X_[a,a+1] (-1)_[a] (I⊗H)
//! (8)  (I⊗H)(-1)_[a]     = X_[a-1,a] (I⊗H)
//! (9)  (I⊗H)X_[a,a+1]    = (-1)_[a+1] (I⊗H)
//! (10) (I⊗H)X_[a,a+1]    = K_[a-1,a,a+1,a+2] X_[a,a+1] (I⊗H)
//! ```
//!
//! Sequences here are written in matrix order (leftmost factor first),
//! unlike [`GeneratorWord`], which lists generators in application order.

use std::fmt;

use crate::error::{Result, SynthError};
use crate::generator::{Generator, GeneratorWord};

/// One instance of a relation: `lhs = rhs`, both in matrix order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub equation: u8,
    pub lhs: Vec<Generator>,
    pub rhs: Vec<Generator>,
}

impl RewriteRule {
    /// Whether both sides evaluate to the same matrix at dimension `n`.
    pub fn holds(&self, n: usize) -> Result<bool> {
        Ok(matrix_order_word(n, &self.lhs)?.evaluate()?
            == matrix_order_word(n, &self.rhs)?.evaluate()?)
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |s: &[Generator]| {
            if s.is_empty() {
                "ε".to_string()
            } else {
                s.iter()
                    .map(|g| g.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            }
        };
        write!(
            f,
            "({}) {} = {}",
            self.equation,
            side(&self.lhs),
            side(&self.rhs)
        )
    }
}

fn matrix_order_word(n: usize, gens: &[Generator]) -> Result<GeneratorWord> {
    GeneratorWord::from_items(n, gens.iter().rev().copied().collect())
}

/// The sequence `s` (matrix order) with `(I⊗H) g = s (I⊗H)`, for `g` a sign
/// flip or an adjacent transposition.
pub fn conjugate_through(g: Generator, n: usize) -> Result<Vec<Generator>> {
    use Generator::*;
    g.validate(n)?;
    let seq = match g {
        NegOne(a) if a % 2 == 0 => vec![NegOne(a), TwoLevelX(a, a + 1), NegOne(a)],
        NegOne(a) => vec![TwoLevelX(a - 1, a)],
        TwoLevelX(a, b) if b == a + 1 && a % 2 == 0 => vec![NegOne(a + 1)],
        TwoLevelX(a, b) if b == a + 1 && a + 2 < n => {
            vec![FourLevelK([a - 1, a, a + 1, a + 2]), TwoLevelX(a, a + 1)]
        }
        other => return Err(SynthError::ForbiddenBetweenPair(other.to_string())),
    };
    Ok(seq)
}

/// Every instance of relations (6)–(10) at even dimension `n`.
pub fn rules(n: usize) -> Result<Vec<RewriteRule>> {
    use Generator::*;
    if !n.is_multiple_of(2) || n < 2 {
        return Err(SynthError::UnsupportedDimension(n));
    }
    let mut out = vec![RewriteRule {
        equation: 6,
        lhs: vec![IH, IH],
        rhs: vec![],
    }];
    let mut push = |equation: u8, g: Generator| -> Result<()> {
        let mut rhs = conjugate_through(g, n)?;
        rhs.push(IH);
        out.push(RewriteRule {
            equation,
            lhs: vec![IH, g],
            rhs,
        });
        Ok(())
    };
    for a in (0..n).step_by(2) {
        push(7, NegOne(a))?;
    }
    for a in (1..n).step_by(2) {
        push(8, NegOne(a))?;
    }
    for a in (0..n).step_by(2) {
        push(9, TwoLevelX(a, a + 1))?;
    }
    for a in (1..n.saturating_sub(2)).step_by(2) {
        push(10, TwoLevelX(a, a + 1))?;
    }
    Ok(out)
}

/// Checks every rule instance; returns each rule with its verdict.
pub fn relations_check(n: usize) -> Result<Vec<(RewriteRule, bool)>> {
    rules(n)?
        .into_iter()
        .map(|r| {
            let ok = r.holds(n)?;
            Ok((r, ok))
        })
        .collect()
}

/// `X_[a,b]` as a palindromic chain of adjacent transpositions:
/// `X_[a,a+1] ⋯ X_[b-1,b] ⋯ X_[a,a+1]`, `2(b − a) − 1` items.
pub fn adjacent_chain(a: usize, b: usize) -> Vec<Generator> {
    let mut v: Vec<Generator> = (a..b).map(|i| Generator::TwoLevelX(i, i + 1)).collect();
    v.extend((a..b - 1).rev().map(|i| Generator::TwoLevelX(i, i + 1)));
    v
}

/// Removes all `I⊗H` from a word in which the `I⊗H` come in consecutive
/// pairs separated only by sign flips and transpositions.
///
/// The first and second `I⊗H` form a pair, then the third and fourth, and
/// so on. Each pair is pushed together through its separator with the
/// relations above and cancelled.
pub fn eliminate_ih_pairs(w: &GeneratorWord) -> Result<GeneratorWord> {
    let n = w.n();
    let count = w.ih_count();
    if !count.is_multiple_of(2) {
        return Err(SynthError::OddIhCount(count));
    }
    let mut out = GeneratorWord::new(n);
    let mut open = false;
    for &g in w.items() {
        match (g, open) {
            (Generator::IH, _) => open = !open,
            (_, false) => out.push(g)?,
            (Generator::FourLevelK(_), true) => {
                return Err(SynthError::ForbiddenBetweenPair(g.to_string()))
            }
            (Generator::NegOne(_), true) => {
                out.extend(conjugate_through(g, n)?.into_iter().rev())?;
            }
            (Generator::TwoLevelX(a, b), true) => {
                for x in adjacent_chain(a, b) {
                    out.extend(conjugate_through(x, n)?.into_iter().rev())?;
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    #[test]
    fn all_relations_hold_at_eight() {
        let checked = relations_check(8).unwrap();
        assert_eq!(checked.len(), 16);
        for (rule, ok) in checked {
            assert!(ok, "{rule}");
        }
    }

    #[test]
    fn relations_hold_at_other_dimensions() {
        for n in [2, 4, 6, 10] {
            for (rule, ok) in relations_check(n).unwrap() {
                assert!(ok, "n = {n}: {rule}");
            }
        }
    }

    #[test]
    fn chain_is_the_transposition() {
        for (a, b) in [(0, 1), (0, 3), (2, 7), (5, 6)] {
            let chain = adjacent_chain(a, b);
            assert_eq!(chain.len(), 2 * (b - a) - 1);
            let w = GeneratorWord::from_items(8, chain).unwrap();
            assert_eq!(w.evaluate().unwrap(), TwoLevelX(a, b).matrix(8).unwrap());
        }
    }

    fn word(items: Vec<Generator>) -> GeneratorWord {
        GeneratorWord::from_items(8, items).unwrap()
    }

    #[test]
    fn elimination_examples() {
        assert!(eliminate_ih_pairs(&word(vec![IH, IH])).unwrap().is_empty());
        assert_eq!(
            eliminate_ih_pairs(&word(vec![IH, TwoLevelX(0, 1), IH]))
                .unwrap()
                .items(),
            &[NegOne(1)]
        );
        assert_eq!(
            eliminate_ih_pairs(&word(vec![IH, NegOne(1), IH]))
                .unwrap()
                .items(),
            &[TwoLevelX(0, 1)]
        );
    }

    #[test]
    fn elimination_preserves_value() {
        let w = word(vec![
            NegOne(3),
            IH,
            TwoLevelX(1, 6),
            NegOne(0),
            TwoLevelX(2, 3),
            IH,
            FourLevelK([0, 2, 4, 6]),
            IH,
            NegOne(7),
            IH,
        ]);
        let e = eliminate_ih_pairs(&w).unwrap();
        assert_eq!(e.ih_count(), 0);
        assert_eq!(e.evaluate().unwrap(), w.evaluate().unwrap());
    }

    #[test]
    fn elimination_errors() {
        assert_eq!(
            eliminate_ih_pairs(&word(vec![IH])),
            Err(SynthError::OddIhCount(1))
        );
        assert!(matches!(
            eliminate_ih_pairs(&word(vec![IH, FourLevelK([0, 1, 2, 3]), IH])),
            Err(SynthError::ForbiddenBetweenPair(_))
        ));
    }
}
