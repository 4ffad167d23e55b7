//! Circuits over `{X, CX, CCX, H}` plus generator macros, with exact
//! evaluation.
//!
//! Qubit 0 is the most significant bit of the basis index. Ancillas, when
//! present, are the leading qubits `0..ancillas`; system qubits follow.
//! `I⊗H` lowers to an `H` on the last qubit.

use std::fmt;

use crate::dyadic::ScaledDyadicMatrix;
use crate::error::{Result, SynthError};
use crate::generator::{Generator, GeneratorWord, Ring};
use crate::householder::{synthesize_householder, HouseholderSynthesis};
use crate::rowops;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    X(usize),
    CX(usize, usize),
    CCX(usize, usize, usize),
    /// A generator acting on the whole register.
    Gen(Generator),
}

impl Gate {
    fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::X(q) => vec![q],
            Gate::CX(c, t) => vec![c, t],
            Gate::CCX(a, b, t) => vec![a, b, t],
            Gate::Gen(_) => vec![],
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::H(q) => write!(f, "h {q}"),
            Gate::X(q) => write!(f, "x {q}"),
            Gate::CX(c, t) => write!(f, "cx {c} {t}"),
            Gate::CCX(a, b, t) => write!(f, "ccx {a} {b} {t}"),
            Gate::Gen(g) => write!(f, "gen {g}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    qubits: usize,
    ancillas: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    /// `qubits` system qubits and `ancillas` leading ancilla qubits.
    pub fn new(qubits: usize, ancillas: usize) -> Self {
        Circuit {
            qubits,
            ancillas,
            gates: Vec::new(),
        }
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn ancillas(&self) -> usize {
        self.ancillas
    }

    pub fn width(&self) -> usize {
        self.qubits + self.ancillas
    }

    pub fn dim(&self) -> usize {
        1 << self.width()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        let qs = gate.qubits();
        let distinct = qs.iter().enumerate().all(|(i, q)| !qs[..i].contains(q));
        if !distinct || qs.iter().any(|&q| q >= self.width()) {
            return Err(SynthError::Shape(format!(
                "gate `{gate}` is invalid on {} qubits",
                self.width()
            )));
        }
        if let Gate::Gen(g) = gate {
            g.validate(self.dim())?;
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines
            .next()
            .ok_or_else(|| SynthError::parse(1, "missing header"))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        let mut c = match h.as_slice() {
            ["qubits", m, "ancillas", a] => Circuit::new(
                m.parse()
                    .map_err(|_| SynthError::parse(hl, "bad qubit count"))?,
                a.parse()
                    .map_err(|_| SynthError::parse(hl, "bad ancilla count"))?,
            ),
            _ => return Err(SynthError::parse(hl, "expected `qubits <m> ancillas <a>`")),
        };
        for (ln, line) in lines {
            let (op, rest) = line.split_once(' ').unwrap_or((line, ""));
            let nums = || -> Result<Vec<usize>> {
                rest.split_whitespace()
                    .map(|t| {
                        t.parse()
                            .map_err(|_| SynthError::parse(ln, format!("bad qubit {t:?}")))
                    })
                    .collect()
            };
            let gate = match (op, nums()) {
                ("gen", _) => Gate::Gen(
                    rest.trim()
                        .parse()
                        .map_err(|e: SynthError| SynthError::parse(ln, e.to_string()))?,
                ),
                ("h", Ok(q)) if q.len() == 1 => Gate::H(q[0]),
                ("x", Ok(q)) if q.len() == 1 => Gate::X(q[0]),
                ("cx", Ok(q)) if q.len() == 2 => Gate::CX(q[0], q[1]),
                ("ccx", Ok(q)) if q.len() == 3 => Gate::CCX(q[0], q[1], q[2]),
                _ => return Err(SynthError::parse(ln, format!("unrecognized gate `{line}`"))),
            };
            c.push(gate)
                .map_err(|e| SynthError::parse(ln, e.to_string()))?;
        }
        Ok(c)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qubits {} ancillas {}", self.qubits, self.ancillas)?;
        for g in &self.gates {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

fn log2_exact(n: usize) -> Result<usize> {
    if n.is_power_of_two() {
        Ok(n.trailing_zeros() as usize)
    } else {
        Err(SynthError::UnsupportedDimension(n))
    }
}

/// One macro per generator, `I⊗H` as an `H` on the last qubit.
pub fn word_to_circuit(w: &GeneratorWord) -> Result<Circuit> {
    let m = log2_exact(w.n())?;
    let mut c = Circuit::new(m, 0);
    append_word(&mut c, w)?;
    Ok(c)
}

fn append_word(c: &mut Circuit, w: &GeneratorWord) -> Result<()> {
    let last = c.width() - 1;
    for &g in w.items() {
        c.push(if g.is_ih() {
            Gate::H(last)
        } else {
            Gate::Gen(g)
        })?;
    }
    Ok(())
}

/// `C = post · D · pre` on one leading ancilla, for a Householder result
/// whose wrapper is available.
pub fn householder_circuit(h: &HouseholderSynthesis) -> Result<Circuit> {
    if !h.wrapper.available {
        return Err(SynthError::WrapperUnavailable);
    }
    let m = log2_exact(h.operator.source.n())?;
    let mut c = Circuit::new(m, 1);
    for g in &h.wrapper.pre {
        c.push(wrapper_gate(g, m)?)?;
    }
    append_word(&mut c, &h.word)?;
    for g in &h.wrapper.post {
        c.push(wrapper_gate(g, m)?)?;
    }
    Ok(c)
}

fn wrapper_gate(name: &str, m: usize) -> Result<Gate> {
    Ok(match name {
        "X@anc" => Gate::X(0),
        "H@anc" => Gate::H(0),
        "H@last" => Gate::H(m),
        other => return Err(SynthError::Shape(format!("unknown wrapper gate {other}"))),
    })
}

/// Householder synthesis followed by circuit assembly.
pub fn synthesize_householder_circuit(u: &ScaledDyadicMatrix) -> Result<Circuit> {
    householder_circuit(&synthesize_householder(u, Ring::Scaled)?)
}

/// The exact matrix of the whole register, ancillas included.
pub fn evaluate_circuit(c: &Circuit) -> Result<ScaledDyadicMatrix> {
    let dim = c.dim();
    let width = c.width();
    let bit = |q: usize| 1usize << (width - 1 - q);
    let mut acc = ScaledDyadicMatrix::identity(dim);
    for gate in &c.gates {
        if let Gate::Gen(g) = gate {
            acc.apply_left_mut(g)?;
            continue;
        }
        let mut data = acc.raw_entries().to_vec();
        let mut k = acc.lde_sqrt2();
        let (target, controls) = match *gate {
            Gate::H(t) | Gate::X(t) => (t, 0),
            Gate::CX(a, t) => (t, bit(a)),
            Gate::CCX(a, b, t) => (t, bit(a) | bit(b)),
            Gate::Gen(_) => unreachable!(),
        };
        let tb = bit(target);
        let pairs = (0..dim)
            .filter(|i| i & tb == 0 && i & controls == controls)
            .map(|i| (i, i | tb));
        if let Gate::H(_) = gate {
            rowops::hadamard_pairs(&mut data, dim, pairs);
            k += 1;
        } else {
            for (a, b) in pairs {
                rowops::swap_rows(&mut data, dim, a, b);
            }
        }
        acc = ScaledDyadicMatrix::from_parts(dim, k, data);
    }
    Ok(acc)
}

/// Whether `c`, with ancillas in `|0⟩`, acts as `|0⟩ ⊗ U` with the ancillas
/// returned to `|0⟩`.
pub fn check_ancilla_contract(c: &Circuit, u: &ScaledDyadicMatrix) -> Result<bool> {
    let d = 1usize << c.qubits();
    if u.n() != d {
        return Err(SynthError::DimensionMismatch {
            expected: d,
            found: u.n(),
        });
    }
    let full = evaluate_circuit(c)?;
    let zero_rest =
        (d..c.dim()).all(|i| (0..d).all(|j| num_traits::Zero::is_zero(full.entry(i, j))));
    Ok(zero_rest && full.block(0..d, 0..d)? == *u)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_single_h() {
        let c = word_to_circuit(&GeneratorWord::new(8)).unwrap();
        assert_eq!((c.qubits(), c.gates().len()), (3, 0));
        let w = GeneratorWord::from_items(2, vec![Generator::IH]).unwrap();
        assert_eq!(word_to_circuit(&w).unwrap().gates(), &[Gate::H(0)]);
    }

    #[test]
    fn non_power_of_two_rejected() {
        assert!(word_to_circuit(&GeneratorWord::new(6)).is_err());
    }

    #[test]
    fn hh_is_identity() {
        let mut c = Circuit::new(1, 0);
        c.push(Gate::H(0)).unwrap();
        c.push(Gate::H(0)).unwrap();
        assert_eq!(
            evaluate_circuit(&c).unwrap(),
            ScaledDyadicMatrix::identity(2)
        );
    }

    #[test]
    fn ccx_matrix() {
        let mut c = Circuit::new(3, 0);
        c.push(Gate::CCX(0, 1, 2)).unwrap();
        let expected = Generator::TwoLevelX(6, 7).matrix(8).unwrap();
        assert_eq!(evaluate_circuit(&c).unwrap(), expected);
    }

    #[test]
    fn cx_and_ih_conventions() {
        let mut c = Circuit::new(2, 0);
        c.push(Gate::CX(0, 1)).unwrap();
        assert_eq!(
            evaluate_circuit(&c).unwrap(),
            Generator::TwoLevelX(2, 3).matrix(4).unwrap()
        );
        let mut c = Circuit::new(3, 0);
        c.push(Gate::H(2)).unwrap();
        assert_eq!(
            evaluate_circuit(&c).unwrap(),
            Generator::IH.matrix(8).unwrap()
        );
    }

    #[test]
    fn invalid_gates() {
        let mut c = Circuit::new(2, 0);
        assert!(c.push(Gate::CX(1, 1)).is_err());
        assert!(c.push(Gate::H(2)).is_err());
        assert!(c.push(Gate::Gen(Generator::NegOne(4))).is_err());
    }

    #[test]
    fn text_round_trip() {
        let mut c = Circuit::new(2, 1);
        for g in [
            Gate::X(0),
            Gate::H(0),
            Gate::CX(0, 2),
            Gate::CCX(2, 1, 0),
            Gate::Gen(Generator::FourLevelK([0, 2, 4, 6])),
            Gate::Gen(Generator::IH),
            Gate::Gen(Generator::TwoLevelX(1, 5)),
            Gate::Gen(Generator::NegOne(3)),
        ] {
            c.push(g).unwrap();
        }
        let text = c.to_text();
        assert!(text.starts_with("qubits 2 ancillas 1\nx 0\nh 0\ncx 0 2\n"));
        let back = Circuit::parse_text(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let err = Circuit::parse_text("qubits 1 ancillas 0\nh 0\nfoo 1\n").unwrap_err();
        assert!(matches!(err, SynthError::Parse { line: 3, .. }));
        assert!(Circuit::parse_text("qubits x ancillas 0").is_err());
    }

    #[test]
    fn householder_wrapper_identity() {
        let c = synthesize_householder_circuit(&ScaledDyadicMatrix::identity(2)).unwrap();
        assert_eq!(c.ancillas(), 1);
        assert_eq!(c.gates()[..2], [Gate::X(0), Gate::H(0)]);
        assert!(check_ancilla_contract(&c, &ScaledDyadicMatrix::identity(2)).unwrap());
    }

    #[test]
    fn stray_x_breaks_contract() {
        let mut c = synthesize_householder_circuit(&ScaledDyadicMatrix::identity(2)).unwrap();
        c.push(Gate::X(0)).unwrap();
        assert!(!check_ancilla_contract(&c, &ScaledDyadicMatrix::identity(2)).unwrap());
    }

    #[test]
    fn householder_wrapper_odd_exponent() {
        let h = ScaledDyadicMatrix::from_i64_rows(&[vec![1, 1], vec![1, -1]], 1).unwrap();
        let c = synthesize_householder_circuit(&h).unwrap();
        assert_eq!(c.gates().last(), Some(&Gate::H(1)));
        assert!(check_ancilla_contract(&c, &h).unwrap());
    }

    #[test]
    fn integral_wrapper_unavailable() {
        let k = Generator::FourLevelK([0, 1, 2, 3]).matrix(4).unwrap();
        let h = synthesize_householder(&k, Ring::Integral).unwrap();
        assert_eq!(householder_circuit(&h), Err(SynthError::WrapperUnavailable));
    }
}
