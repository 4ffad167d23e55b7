//! Binary patterns (entry-wise residues mod 2), row/column pairing, and
//! classification against the dimension-4 and dimension-8 pattern tables.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SynthError};

/// An `n × n` matrix over Z₂.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryPattern {
    n: usize,
    bits: Vec<bool>,
}

impl BinaryPattern {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let bits = (0..n * n).map(|x| f(x / n, x % n)).collect();
        BinaryPattern { n, bits }
    }

    /// Parses rows written as strings of `0`/`1`.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let n = rows.len();
        let mut bits = Vec::with_capacity(n * n);
        for (i, r) in rows.iter().enumerate() {
            let r: Vec<char> = r.chars().filter(|c| !c.is_whitespace()).collect();
            if r.len() != n {
                return Err(SynthError::Shape(format!(
                    "pattern row {i} has length {}",
                    r.len()
                )));
            }
            for c in r {
                match c {
                    '0' => bits.push(false),
                    '1' => bits.push(true),
                    _ => return Err(SynthError::Shape(format!("bad pattern character {c:?}"))),
                }
            }
        }
        Ok(BinaryPattern { n, bits })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[bool] {
        &self.bits[i * self.n..(i + 1) * self.n]
    }

    pub fn transpose(&self) -> Self {
        BinaryPattern::from_fn(self.n, |i, j| self.get(j, i))
    }

    pub fn row_weights(&self) -> Vec<usize> {
        (0..self.n)
            .map(|i| self.row(i).iter().filter(|&&b| b).count())
            .collect()
    }

    pub fn column_weights(&self) -> Vec<usize> {
        (0..self.n)
            .map(|j| (0..self.n).filter(|&i| self.get(i, j)).count())
            .collect()
    }

    /// Number of positions where rows `a` and `b` are both 1.
    pub fn row_overlap(&self, a: usize, b: usize) -> usize {
        self.row(a)
            .iter()
            .zip(self.row(b))
            .filter(|(x, y)| **x && **y)
            .count()
    }

    /// The pattern with row `i` moved to `rows.apply(i)` and column `j` moved
    /// to `cols.apply(j)`.
    pub fn permuted(&self, rows: &Permutation, cols: &Permutation) -> Self {
        let rinv = rows.inverse();
        let cinv = cols.inverse();
        BinaryPattern::from_fn(self.n, |i, j| self.get(rinv.apply(i), cinv.apply(j)))
    }
}

impl fmt::Debug for BinaryPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryPattern({}) [", self.n)?;
        for i in 0..self.n {
            let s: String = self
                .row(i)
                .iter()
                .map(|&b| if b { '1' } else { '0' })
                .collect();
            writeln!(f, "  {s}")?;
        }
        write!(f, "]")
    }
}

/// A bijection on `0..n`; `image[i]` is where `i` is sent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    pub fn new(image: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; image.len()];
        for &x in &image {
            if x >= image.len() || std::mem::replace(&mut seen[x], true) {
                return Err(SynthError::Shape(format!("{image:?} is not a permutation")));
            }
        }
        Ok(Permutation { image })
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.image.len()];
        for (i, &x) in self.image.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { image: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Transpositions `(a, b)` with `a < b` which, applied in order as swaps
    /// of positions, move the element at `i` to `self.apply(i)`.
    /// Selection-sort order; at most `n - 1` swaps.
    pub fn transpositions(&self) -> Vec<(usize, usize)> {
        let n = self.image.len();
        let target = self.inverse();
        // cur[p] = original index currently sitting at position p
        let mut cur: Vec<usize> = (0..n).collect();
        let mut pos: Vec<usize> = (0..n).collect();
        let mut out = Vec::new();
        for p in 0..n {
            let want = target.apply(p);
            let s = pos[want];
            if s != p {
                out.push((p.min(s), p.max(s)));
                let other = cur[p];
                cur.swap(p, s);
                pos[want] = p;
                pos[other] = s;
            }
        }
        out
    }
}

/// Groups identical rows into adjacent pairs.
///
/// Returns a permutation sending each row to its new position; the pairs end
/// up at `(2i, 2i + 1)`. Groups are taken in ascending bit-string order and
/// members in ascending original index. `None` when some row value occurs an
/// odd number of times.
pub fn find_row_pairing(b: &BinaryPattern) -> Result<Option<Permutation>> {
    if !b.n.is_multiple_of(2) {
        return Err(SynthError::UnsupportedDimension(b.n));
    }
    let mut groups: BTreeMap<&[bool], Vec<usize>> = BTreeMap::new();
    for i in 0..b.n {
        groups.entry(b.row(i)).or_default().push(i);
    }
    if groups.values().any(|g| g.len() % 2 != 0) {
        return Ok(None);
    }
    let mut image = vec![0; b.n];
    let mut next = 0;
    for members in groups.values() {
        for &i in members {
            image[i] = next;
            next += 1;
        }
    }
    Ok(Some(Permutation { image }))
}

/// Column counterpart of [`find_row_pairing`].
pub fn is_column_paired(b: &BinaryPattern) -> Result<Option<Permutation>> {
    find_row_pairing(&b.transpose())
}

/// Table labels: `A`–`N` at dimension 8, `B0`–`B2` at dimension 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PatternLabel {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
    J,
    K,
    L,
    M,
    N,
    B0,
    B1,
    B2,
}

impl PatternLabel {
    pub const DIM8: [PatternLabel; 14] = [
        PatternLabel::A,
        PatternLabel::B,
        PatternLabel::C,
        PatternLabel::D,
        PatternLabel::E,
        PatternLabel::F,
        PatternLabel::G,
        PatternLabel::H,
        PatternLabel::I,
        PatternLabel::J,
        PatternLabel::K,
        PatternLabel::L,
        PatternLabel::M,
        PatternLabel::N,
    ];
    pub const DIM4: [PatternLabel; 3] = [PatternLabel::B0, PatternLabel::B1, PatternLabel::B2];

    /// Labels whose stored patterns have paired rows.
    pub fn is_paired_family(self) -> bool {
        !matches!(self, PatternLabel::L | PatternLabel::M | PatternLabel::N)
    }

    pub fn table(self) -> BinaryPattern {
        let rows: &[&str] = match self {
            PatternLabel::A => &[
                "11111111", "11111111", "11111111", "11111111", "11111111", "11111111", "11111111",
                "11111111",
            ],
            PatternLabel::B => &[
                "11111111", "11111111", "11111111", "11111111", "11110000", "11110000", "11110000",
                "11110000",
            ],
            PatternLabel::C => &[
                "11111111", "11111111", "11110000", "11110000", "11001100", "11001100", "11000011",
                "11000011",
            ],
            PatternLabel::D => &[
                "11110000", "11110000", "11110000", "11110000", "11001100", "11001100", "11001100",
                "11001100",
            ],
            PatternLabel::E => &[
                "11111111", "11111111", "11110000", "11110000", "00001111", "00001111", "00000000",
                "00000000",
            ],
            PatternLabel::F => &[
                "11110000", "11110000", "11001100", "11001100", "10101010", "10101010", "10010110",
                "10010110",
            ],
            PatternLabel::G => &[
                "11110000", "11110000", "11001100", "11001100", "00111100", "00111100", "00000000",
                "00000000",
            ],
            PatternLabel::H => &[
                "11110000", "11110000", "11001100", "11001100", "00110011", "00110011", "00001111",
                "00001111",
            ],
            PatternLabel::I => &[
                "11110000", "11110000", "11110000", "11110000", "00001111", "00001111", "00001111",
                "00001111",
            ],
            PatternLabel::J => &[
                "11110000", "11110000", "11110000", "11110000", "00000000", "00000000", "00000000",
                "00000000",
            ],
            PatternLabel::K => &[
                "11111111", "11111111", "11111111", "11111111", "00000000", "00000000", "00000000",
                "00000000",
            ],
            PatternLabel::L => &[
                "11111111", "11110000", "11001100", "11000011", "10101010", "10100101", "10011001",
                "10010110",
            ],
            PatternLabel::M => &[
                "11110000", "11001100", "10101010", "10010110", "01101001", "01010101", "00110011",
                "00001111",
            ],
            PatternLabel::N => &[
                "11110000", "11001100", "10101010", "10010110", "01100110", "01011010", "00111100",
                "00000000",
            ],
            PatternLabel::B0 => &["1100", "1100", "0000", "0000"],
            PatternLabel::B1 => &["1100", "1100", "0011", "0011"],
            PatternLabel::B2 => &["1111", "1111", "1111", "1111"],
        };
        BinaryPattern::from_strs(rows).expect("pattern tables are well formed")
    }
}

impl fmt::Display for PatternLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A classification result with its witness: for every `i, j`,
/// `observed[i][j] = T[row_perm[i]][col_perm[j]]`, where `T` is the table
/// entry for `label`, transposed when `transposed` is set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternId {
    pub label: PatternLabel,
    pub transposed: bool,
    pub row_perm: Permutation,
    pub col_perm: Permutation,
}

impl PatternId {
    /// The table entry in the orientation the witness refers to.
    pub fn oriented_table(&self) -> BinaryPattern {
        let t = self.label.table();
        if self.transposed {
            t.transpose()
        } else {
            t
        }
    }

    /// Rebuilds the observed pattern from the table and the witness.
    pub fn reconstruct(&self) -> BinaryPattern {
        let t = self.oriented_table();
        BinaryPattern::from_fn(t.n(), |i, j| {
            t.get(self.row_perm.apply(i), self.col_perm.apply(j))
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("pattern report serialization")
    }
}

/// Classifies a dimension-4 or dimension-8 pattern up to row permutation,
/// column permutation and transposition.
///
/// Labels are tried in table order, untransposed before transposed. Within
/// one orientation the column permutation found first in lexicographic order
/// is returned, with the lexicographically least matching row permutation.
pub fn classify_pattern(b: &BinaryPattern) -> Result<PatternId> {
    let labels: &[PatternLabel] = match b.n {
        4 => &PatternLabel::DIM4,
        8 => &PatternLabel::DIM8,
        n => return Err(SynthError::UnsupportedDimension(n)),
    };
    let mut rw = b.row_weights();
    let mut cw = b.column_weights();
    rw.sort_unstable();
    cw.sort_unstable();
    for &label in labels {
        for transposed in [false, true] {
            let table = label.table();
            let t = if transposed { table.transpose() } else { table };
            let mut trw = t.row_weights();
            let mut tcw = t.column_weights();
            trw.sort_unstable();
            tcw.sort_unstable();
            if trw != rw || tcw != cw {
                continue;
            }
            if let Some((row_perm, col_perm)) = match_pattern(b, &t) {
                return Ok(PatternId {
                    label,
                    transposed,
                    row_perm,
                    col_perm,
                });
            }
        }
    }
    Err(SynthError::NoMatch)
}

/// Backtracking search for `(rows, cols)` with `b[i][j] = t[rows[i]][cols[j]]`.
fn match_pattern(b: &BinaryPattern, t: &BinaryPattern) -> Option<(Permutation, Permutation)> {
    let n = b.n;
    let bcw = b.column_weights();
    let tcw = t.column_weights();
    let mut cols = vec![usize::MAX; n];
    let mut used = vec![false; n];
    // row prefix keys, as integers built one bit per assigned column
    let mut bkeys = vec![0u64; n];
    let mut tkeys = vec![0u64; n];

    fn multiset_eq(a: &[u64], b: &[u64]) -> bool {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }

    #[allow(clippy::too_many_arguments)]
    fn search(
        j: usize,
        b: &BinaryPattern,
        t: &BinaryPattern,
        bcw: &[usize],
        tcw: &[usize],
        cols: &mut [usize],
        used: &mut [bool],
        bkeys: &mut [u64],
        tkeys: &mut [u64],
    ) -> bool {
        let n = b.n;
        if j == n {
            return true;
        }
        for c in 0..n {
            if used[c] || bcw[j] != tcw[c] {
                continue;
            }
            let saved_b = bkeys.to_vec();
            let saved_t = tkeys.to_vec();
            for i in 0..n {
                bkeys[i] = (bkeys[i] << 1) | u64::from(b.get(i, j));
                tkeys[i] = (tkeys[i] << 1) | u64::from(t.get(i, c));
            }
            if multiset_eq(bkeys, tkeys) {
                used[c] = true;
                cols[j] = c;
                if search(j + 1, b, t, bcw, tcw, cols, used, bkeys, tkeys) {
                    return true;
                }
                used[c] = false;
            }
            bkeys.copy_from_slice(&saved_b);
            tkeys.copy_from_slice(&saved_t);
        }
        false
    }

    if !search(
        0, b, t, &bcw, &tcw, &mut cols, &mut used, &mut bkeys, &mut tkeys,
    ) {
        return None;
    }
    // rows: match each observed row to the least unused table row with the same key
    let mut taken = vec![false; n];
    let mut rows = vec![0; n];
    for i in 0..n {
        let r = (0..n).find(|&r| !taken[r] && tkeys[r] == bkeys[i])?;
        taken[r] = true;
        rows[i] = r;
    }
    Some((Permutation { image: rows }, Permutation { image: cols }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        assert!(Permutation::new(vec![1, 0]).is_ok());
    }

    #[test]
    fn transpositions_realize_the_permutation() {
        let p = Permutation::new(vec![3, 0, 4, 1, 2]).unwrap();
        let mut slots: Vec<usize> = (0..5).collect();
        for (a, b) in p.transpositions() {
            slots.swap(a, b);
        }
        for (pos, &orig) in slots.iter().enumerate() {
            assert_eq!(p.apply(orig), pos);
        }
        assert!(Permutation::identity(6).transpositions().is_empty());
    }

    #[test]
    fn row_pairing_examples() {
        let a = PatternLabel::A.table();
        assert!(find_row_pairing(&a).unwrap().is_some());
        assert!(find_row_pairing(&PatternLabel::L.table())
            .unwrap()
            .is_none());
        let h = BinaryPattern::from_strs(&["11", "11"]).unwrap();
        assert_eq!(
            find_row_pairing(&h).unwrap(),
            Some(Permutation::identity(2))
        );
        let odd = BinaryPattern::from_strs(&["111", "111", "111"]).unwrap();
        assert!(find_row_pairing(&odd).is_err());
    }

    #[test]
    fn row_pairing_places_pairs_adjacently() {
        let b = BinaryPattern::from_strs(&["1100", "0011", "1100", "0011"]).unwrap();
        let p = find_row_pairing(&b).unwrap().unwrap();
        let moved = b.permuted(&p, &Permutation::identity(4));
        for i in (0..4).step_by(2) {
            assert_eq!(moved.row(i), moved.row(i + 1));
        }
        // "0011" sorts before "1100"
        assert_eq!(p.image(), &[2, 0, 3, 1]);
    }

    #[test]
    fn column_pairing_examples() {
        assert!(is_column_paired(&PatternLabel::K.table())
            .unwrap()
            .is_some());
        assert!(is_column_paired(&PatternLabel::M.table())
            .unwrap()
            .is_none());
        let id = BinaryPattern::from_fn(2, |i, j| i == j);
        assert!(is_column_paired(&id).unwrap().is_none());
    }

    #[test]
    fn classify_examples() {
        let a = classify_pattern(&PatternLabel::A.table()).unwrap();
        assert_eq!(a.label, PatternLabel::A);
        assert!(!a.transposed);
        assert!(a.row_perm.is_identity() && a.col_perm.is_identity());

        let kt = classify_pattern(&PatternLabel::K.table().transpose()).unwrap();
        assert_eq!(kt.label, PatternLabel::K);
        assert!(kt.transposed);

        let b2 = classify_pattern(&BinaryPattern::from_fn(4, |_, _| true)).unwrap();
        assert_eq!(b2.label, PatternLabel::B2);
    }

    #[test]
    fn classify_finds_scrambled_tables() {
        let rows = Permutation::new(vec![5, 2, 7, 0, 1, 6, 3, 4]).unwrap();
        let cols = Permutation::new(vec![1, 4, 0, 6, 7, 2, 5, 3]).unwrap();
        for label in PatternLabel::DIM8 {
            for transposed in [false, true] {
                let t = if transposed {
                    label.table().transpose()
                } else {
                    label.table()
                };
                let b = t.permuted(&rows, &cols);
                let id = classify_pattern(&b).unwrap();
                assert_eq!(id.reconstruct(), b);
                // E is D transposed, so E inputs are reported as D
                if label != PatternLabel::E {
                    assert_eq!(id.label, label);
                }
            }
        }
    }

    #[test]
    fn only_d_and_e_coincide() {
        for a in PatternLabel::DIM8 {
            let id = classify_pattern(&a.table()).unwrap();
            if a == PatternLabel::E {
                assert_eq!((id.label, id.transposed), (PatternLabel::D, true));
            } else {
                assert_eq!(id.label, a);
            }
        }
    }

    #[test]
    fn tables_are_doubly_even_with_even_overlaps() {
        for label in PatternLabel::DIM8 {
            for t in [label.table(), label.table().transpose()] {
                assert!(t.row_weights().iter().all(|w| w % 4 == 0), "{label}");
                for a in 0..8 {
                    for b in a + 1..8 {
                        assert_eq!(t.row_overlap(a, b) % 2, 0, "{label} rows {a} {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn table_weight_profiles() {
        let profile = |l: PatternLabel| {
            let t = l.table();
            (t.row_weights(), t.column_weights())
        };
        assert_eq!(profile(PatternLabel::A), (vec![8; 8], vec![8; 8]));
        assert_eq!(profile(PatternLabel::E).0, vec![8, 8, 4, 4, 4, 4, 0, 0]);
        assert_eq!(profile(PatternLabel::F).1, vec![8, 4, 4, 4, 4, 4, 4, 0]);
        assert_eq!(profile(PatternLabel::L).1, vec![8, 4, 4, 4, 4, 4, 4, 4]);
        assert_eq!(profile(PatternLabel::M).0, vec![4; 8]);
        assert_eq!(profile(PatternLabel::N).0, vec![4, 4, 4, 4, 4, 4, 4, 0]);
    }

    #[test]
    fn pairing_dichotomy() {
        // A–K are row- or column-paired (F only by rows); L, M, N are neither
        for label in PatternLabel::DIM8 {
            let t = label.table();
            let rows = find_row_pairing(&t).unwrap().is_some();
            let cols = is_column_paired(&t).unwrap().is_some();
            if label.is_paired_family() {
                assert!(rows, "{label}");
                assert_eq!(cols, label != PatternLabel::F, "{label}");
            } else {
                assert!(!rows && !cols, "{label}");
            }
        }
    }

    #[test]
    fn classify_rejects_non_patterns() {
        let id8 = BinaryPattern::from_fn(8, |i, j| i == j);
        assert_eq!(classify_pattern(&id8), Err(SynthError::NoMatch));
        assert!(classify_pattern(&BinaryPattern::from_fn(6, |_, _| true)).is_err());
    }

    #[test]
    fn pattern_report_json_shape() {
        let id = classify_pattern(&PatternLabel::C.table()).unwrap();
        assert_eq!(
            id.to_json(),
            r#"{"label":"C","transposed":false,"row_perm":[0,1,2,3,4,5,6,7],"col_perm":[0,1,2,3,4,5,6,7]}"#
        );
    }
}
