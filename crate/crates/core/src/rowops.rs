//! Row operations on row-major integer data carrying a √2 exponent.
//!
//! Both matrices (`width == n`) and column vectors (`width == 1`) use these.
//! Every operation leaves the data in a valid but possibly non-canonical
//! state; callers finish with [`canonicalize`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::generator::Generator;

pub(crate) fn negate_row(data: &mut [BigInt], width: usize, a: usize) {
    for x in &mut data[a * width..(a + 1) * width] {
        *x = -std::mem::take(x);
    }
}

pub(crate) fn swap_rows(data: &mut [BigInt], width: usize, a: usize, b: usize) {
    if a == b {
        return;
    }
    for c in 0..width {
        data.swap(a * width + c, b * width + c);
    }
}

/// Replaces each pair `(a, b)` of rows by `(a + b, a - b)`. The caller must
/// add one to the exponent.
pub(crate) fn hadamard_pairs(
    data: &mut [BigInt],
    width: usize,
    pairs: impl IntoIterator<Item = (usize, usize)>,
) {
    for (a, b) in pairs {
        for c in 0..width {
            let x = std::mem::take(&mut data[a * width + c]);
            let y = std::mem::take(&mut data[b * width + c]);
            data[a * width + c] = &x + &y;
            data[b * width + c] = x - y;
        }
    }
}

/// Applies `K_[a,b,c,d]` to the rows and returns the exponent increment.
///
/// The four rows are multiplied by the integer matrix `2K`. If every new entry
/// is even the factor 2 is divided out immediately and the exponent is left
/// alone; otherwise all untouched rows are doubled and the exponent grows by 2.
fn k_rows(data: &mut [BigInt], width: usize, rows: usize, idx: [usize; 4]) -> u32 {
    let [a, b, c, d] = idx;
    let mut all_even = true;
    let mut out: Vec<[BigInt; 4]> = Vec::with_capacity(width);
    for col in 0..width {
        let v0 = &data[a * width + col];
        let v1 = &data[b * width + col];
        let v2 = &data[c * width + col];
        let v3 = &data[d * width + col];
        let s01 = v0 + v1;
        let d01 = v0 - v1;
        let s23 = v2 + v3;
        let d23 = v2 - v3;
        let r = [&s01 + &s23, &d01 + &d23, &s01 - &s23, d01 - d23];
        all_even &= r.iter().all(|x| x.is_even());
        out.push(r);
    }
    let two = BigInt::from(2);
    for (col, r) in out.into_iter().enumerate() {
        for (slot, value) in [a, b, c, d].into_iter().zip(r) {
            data[slot * width + col] = if all_even { value / &two } else { value };
        }
    }
    if all_even {
        return 0;
    }
    for row in (0..rows).filter(|r| !idx.contains(r)) {
        for x in &mut data[row * width..(row + 1) * width] {
            *x <<= 1;
        }
    }
    2
}

/// Left-multiplies the data by `g`; returns the exponent increment.
pub(crate) fn apply_generator(
    data: &mut [BigInt],
    width: usize,
    rows: usize,
    g: &Generator,
) -> u32 {
    match *g {
        Generator::NegOne(a) => {
            negate_row(data, width, a);
            0
        }
        Generator::TwoLevelX(a, b) => {
            swap_rows(data, width, a, b);
            0
        }
        Generator::FourLevelK(idx) => k_rows(data, width, rows, idx),
        Generator::IH => {
            hadamard_pairs(data, width, (0..rows / 2).map(|i| (2 * i, 2 * i + 1)));
            1
        }
    }
}

/// Brings `(data, k)` to canonical form: divides everything by 2 and lowers
/// `k` by 2 while `k >= 2` and all entries are even.
pub(crate) fn canonicalize(data: &mut [BigInt], k: &mut u32) {
    if *k < 2 {
        return;
    }
    let mut shift = u64::from(*k / 2);
    for x in data.iter() {
        if let Some(tz) = x.trailing_zeros() {
            shift = shift.min(tz);
            if shift == 0 {
                return;
            }
        }
    }
    if data.iter().all(|x| x.is_zero()) {
        *k = 0;
        return;
    }
    for x in data.iter_mut() {
        *x >>= shift;
    }
    *k -= 2 * shift as u32;
}
