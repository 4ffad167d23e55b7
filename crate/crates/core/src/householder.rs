//! Synthesis through an embedding into twice the dimension.
//!
//! `U` is embedded as `U' = |+⟩⟨−| ⊗ U + |−⟩⟨+| ⊗ Uᵀ`, a symmetric
//! involution whose `−1` eigenvectors `|ω_j⟩` give `U' = ∏ R_{|ω_j⟩}`.
//! Each reflection is `G† (−1)_[0] G` for a column reduction `G` of its axis.
//!
//! The axes are scaled dyadic only when the exponent of `U` is even. For odd
//! exponents the factored operator is `V = (I⊗H)·U` instead, and the circuit
//! wrapper finishes with an `H` on the last system qubit.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dyadic::{DyadicVector, ScaledDyadicMatrix};
use crate::error::{Result, SynthError};
use crate::generator::{Generator, GeneratorWord, Ring};
use crate::local::reduce_column;

/// `U`, the operator actually embedded, and its embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedOperator {
    pub source: ScaledDyadicMatrix,
    /// `U` itself, or `(I⊗H)·U` when the exponent of `U` is odd.
    pub factored: ScaledDyadicMatrix,
    /// Dimension `2n`, ancilla as the most significant index.
    pub embedded: ScaledDyadicMatrix,
    /// Whether `factored = (I⊗H)·source`.
    pub system_correction: bool,
}

/// `|+⟩⟨−| ⊗ U + |−⟩⟨+| ⊗ Uᵀ` in block form.
pub fn embedding_of(u: &ScaledDyadicMatrix) -> ScaledDyadicMatrix {
    let n = u.n();
    let m = 2 * n;
    let mut e = vec![BigInt::default(); m * m];
    for i in 0..n {
        for j in 0..n {
            let a = u.entry(i, j);
            let b = u.entry(j, i);
            let s = a + b;
            let d = a - b;
            e[i * m + j] = s.clone();
            e[i * m + n + j] = -&d;
            e[(n + i) * m + j] = d;
            e[(n + i) * m + n + j] = -s;
        }
    }
    ScaledDyadicMatrix::from_parts(m, u.lde_sqrt2() + 2, e)
}

pub fn embed(u: &ScaledDyadicMatrix) -> Result<EmbeddedOperator> {
    if !u.is_orthogonal() {
        return Err(SynthError::NotOrthogonal);
    }
    let odd = u.lde_sqrt2() % 2 == 1;
    if odd && u.n() % 2 == 1 {
        return Err(SynthError::OddExponentOddDimension(u.n()));
    }
    let factored = if odd {
        u.apply_left(&Generator::IH)?
    } else {
        u.clone()
    };
    let embedded = embedding_of(&factored);
    let id = ScaledDyadicMatrix::identity(embedded.n());
    if embedded.transpose() != embedded || embedded.multiply(&embedded)? != id {
        return Err(SynthError::Invariant(
            "embedding is not a symmetric involution".into(),
        ));
    }
    Ok(EmbeddedOperator {
        source: u.clone(),
        factored,
        embedded,
        system_correction: odd,
    })
}

/// The axes `|ω_j⟩ = (|−⟩|j⟩ − |+⟩|u_j⟩)/√2`, `j = 0..n`.
///
/// With `u_j = m_j / 2^h`, this is `(2^h e_j − m_j, −2^h e_j − m_j) / 2^{h+1}`.
pub fn reflection_vectors(u: &ScaledDyadicMatrix) -> Result<Vec<DyadicVector>> {
    let k = u.lde_sqrt2();
    if k % 2 == 1 {
        return Err(SynthError::IrrationalAxes(k));
    }
    let n = u.n();
    let scale = BigInt::from(1) << (k / 2);
    Ok((0..n)
        .map(|j| {
            let mut v = Vec::with_capacity(2 * n);
            for i in 0..n {
                let m = u.entry(i, j);
                v.push(if i == j { &scale - m } else { -m });
            }
            for i in 0..n {
                let m = u.entry(i, j);
                v.push(if i == j { -&scale - m } else { -m });
            }
            DyadicVector::new(v, k + 2)
        })
        .collect())
}

/// A reflection `I − 2|axis⟩⟨axis|` and a word realizing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reflection {
    pub axis: DyadicVector,
    pub word: GeneratorWord,
}

/// Realizes `R_axis` as `G⁻¹ · (−1)_[0] · G` where `G · axis = |0⟩`.
pub fn synthesize_reflection(axis: &DyadicVector) -> Result<Reflection> {
    let m = axis.dim();
    if !axis.is_unit() {
        return Err(SynthError::NotUnit);
    }
    let mut g = GeneratorWord::new(m);
    let mut v = axis.clone();
    if v.lde_sqrt2() % 2 == 1 {
        if m % 2 == 1 {
            return Err(SynthError::OddExponentOddDimension(m));
        }
        v = v.apply_left(&Generator::IH)?;
        g.push(Generator::IH)?;
    }
    g.extend(reduce_column(&v, 0)?.into_items())?;
    let mut word = g.clone();
    word.push(Generator::NegOne(0))?;
    let word = word.then(&g.inverse())?;
    Ok(Reflection {
        axis: axis.clone(),
        word,
    })
}

/// Symbolic gates around the reflection circuit `D`, with the ancilla as
/// the most significant qubit: `C = post · D · pre`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WrapperSpec {
    pub pre: Vec<String>,
    pub post: Vec<String>,
    pub ancilla: String,
    /// `false` for the integral ring, where the single-ancilla wrapper needs
    /// an `H` outside the gate set.
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub available: bool,
}

fn yes() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

impl WrapperSpec {
    pub fn new(system_correction: bool, ring: Ring) -> Self {
        let mut post = vec!["H@anc".to_string()];
        if system_correction {
            post.push("H@last".to_string());
        }
        WrapperSpec {
            pre: vec!["X@anc".into(), "H@anc".into()],
            post,
            ancilla: "msb".into(),
            available: ring == Ring::Scaled,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("wrapper serialization")
    }
}

/// Everything produced for one input.
#[derive(Clone, Debug)]
pub struct HouseholderSynthesis {
    pub operator: EmbeddedOperator,
    pub reflections: Vec<Reflection>,
    /// Concatenation of the reflection words; evaluates to `operator.embedded`.
    pub word: GeneratorWord,
    pub wrapper: WrapperSpec,
}

pub fn synthesize_householder(u: &ScaledDyadicMatrix, ring: Ring) -> Result<HouseholderSynthesis> {
    if ring == Ring::Integral && u.lde_sqrt2() % 2 == 1 {
        return Err(SynthError::NotIntegral(u.lde_sqrt2()));
    }
    let operator = embed(u)?;
    let axes = reflection_vectors(&operator.factored)?;
    let reflections: Vec<Reflection> = axes
        .par_iter()
        .map(synthesize_reflection)
        .collect::<Result<_>>()?;
    let mut word = GeneratorWord::new(2 * u.n());
    for r in &reflections {
        word.extend(r.word.items().iter().copied())?;
    }
    Ok(HouseholderSynthesis {
        wrapper: WrapperSpec::new(operator.system_correction, ring),
        operator,
        reflections,
        word,
    })
}
