//! Dense exact integer matrices, fraction-free and GF(2) determinants, and
//! the parity-pattern vectors and interleaving permutation behind the
//! bordered Hankel constructions.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix is {rows}x{cols}, operation needs a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("entry count {len} does not match {rows}x{cols}")]
    BadShape {
        rows: usize,
        cols: usize,
        len: usize,
    },
    #[error("cofactor oracle accepts dimension <= {max}, got {dim}")]
    OracleTooLarge { dim: usize, max: usize },
    #[error("sequence prefix of length {have} is too short, need at least {need}")]
    PrefixTooShort { have: usize, need: usize },
}

/// Dense row-major matrix over arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self, MatrixError> {
        if data.len() != rows * cols {
            return Err(MatrixError::BadShape {
                rows,
                cols,
                len: data.len(),
            });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix::from_fn(r, c, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix::from_fn(n, n, |i, j| {
            if i == j {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Conjugation by the permutation matrix whose column i is the unit
    /// vector at `perm[i]`: entry (i, j) of the result is entry
    /// `(perm[i], perm[j])` of self.
    pub fn permuted_symmetric(&self, perm: &[usize]) -> IntMatrix {
        assert_eq!(perm.len(), self.rows);
        assert_eq!(self.rows, self.cols);
        IntMatrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(perm[i], perm[j]).clone()
        })
    }

    fn require_square(&self) -> Result<usize, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rows)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination with row
    /// pivoting on the first nonzero entry. The empty matrix has
    /// determinant 1.
    #[allow(clippy::needless_range_loop)]
    pub fn det_exact(&self) -> Result<BigInt, MatrixError> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| self.data[i * n..(i + 1) * n].to_vec())
            .collect();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        negate = !negate;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            let (pivot_rows, rest) = a.split_at_mut(k + 1);
            let pk = &pivot_rows[k];
            for row in rest.iter_mut() {
                let lead = std::mem::replace(&mut row[k], BigInt::zero());
                if lead.is_zero() {
                    for j in k + 1..n {
                        row[j] = &row[j] * &pk[k] / &prev;
                    }
                } else {
                    for j in k + 1..n {
                        row[j] = (&row[j] * &pk[k] - &lead * &pk[j]) / &prev;
                    }
                }
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }

    /// Determinants of all leading principal submatrices, produced by a
    /// single fraction-free elimination without row exchanges. Returns the
    /// minors of orders 1..=r; `r < n` exactly when the minor of order r+1
    /// vanishes (reported as the second component).
    pub fn leading_principal_minors(&self) -> Result<(Vec<BigInt>, Option<usize>), MatrixError> {
        let n = self.require_square()?;
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| self.data[i * n..(i + 1) * n].to_vec())
            .collect();
        let mut minors = Vec::with_capacity(n);
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                return Ok((minors, Some(k + 1)));
            }
            minors.push(a[k][k].clone());
            if k + 1 == n {
                break;
            }
            let (pivot_rows, rest) = a.split_at_mut(k + 1);
            let pk = &pivot_rows[k];
            for row in rest.iter_mut() {
                let lead = std::mem::replace(&mut row[k], BigInt::zero());
                for j in k + 1..n {
                    row[j] = (&row[j] * &pk[k] - &lead * &pk[j]) / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok((minors, None))
    }

    /// Laplace cofactor expansion, usable as an independent oracle for
    /// dimensions up to 8.
    pub fn det_cofactor_oracle(&self) -> Result<BigInt, MatrixError> {
        const MAX: usize = 8;
        let n = self.require_square()?;
        if n > MAX {
            return Err(MatrixError::OracleTooLarge { dim: n, max: MAX });
        }
        fn rec(m: &IntMatrix) -> BigInt {
            let n = m.rows();
            if n == 0 {
                return BigInt::one();
            }
            if n == 1 {
                return m.get(0, 0).clone();
            }
            let mut total = BigInt::zero();
            for j in 0..n {
                if m.get(0, j).is_zero() {
                    continue;
                }
                let minor = IntMatrix::from_fn(n - 1, n - 1, |r, c| {
                    m.get(r + 1, if c < j { c } else { c + 1 }).clone()
                });
                let term = m.get(0, j) * rec(&minor);
                if j % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            total
        }
        Ok(rec(self))
    }

    pub fn to_bit_matrix(&self) -> BitMatrix {
        BitMatrix::from_fn(self.rows, self.cols, |i, j| {
            num_integer::Integer::is_odd(self.get(i, j))
        })
    }

    /// Plain-text grid for debugging.
    pub fn grid(&self) -> String {
        let strings: Vec<String> = self.data.iter().map(BigInt::to_string).collect();
        let width = strings.iter().map(String::len).max().unwrap_or(1);
        let mut out = String::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    out.push(' ');
                }
                out.push_str(&format!("{:>width$}", strings[i * self.cols + j]));
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{}\n{}", self.rows, self.cols, self.grid())
    }
}

/// Matrix over GF(2) with rows packed into 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let words_per_row = cols.div_ceil(64);
        let mut words = vec![0u64; rows * words_per_row];
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    words[i * words_per_row + j / 64] |= 1 << (j % 64);
                }
            }
        }
        BitMatrix {
            rows,
            cols,
            words_per_row,
            words,
        }
    }

    /// Builds row by row through a filler that writes packed words; bits at
    /// or above `cols` are cleared afterwards.
    pub fn from_row_words(
        rows: usize,
        cols: usize,
        mut fill: impl FnMut(usize, &mut [u64]),
    ) -> Self {
        let words_per_row = cols.div_ceil(64);
        let mut words = vec![0u64; rows * words_per_row];
        let tail = cols % 64;
        for i in 0..rows {
            let row = &mut words[i * words_per_row..(i + 1) * words_per_row];
            fill(i, row);
            if tail != 0 {
                if let Some(last) = row.last_mut() {
                    *last &= (1u64 << tail) - 1;
                }
            }
        }
        BitMatrix {
            rows,
            cols,
            words_per_row,
            words,
        }
    }

    /// Reduction of an integer sequence window: bit (i, j) is
    /// seq[p + i + j] mod 2.
    pub fn hankel_mod2(seq: &[i64], p: usize, m: usize, n: usize) -> Result<Self, MatrixError> {
        check_window(seq.len(), p, m, n)?;
        let packed = PackedBits::from_parities(seq);
        Ok(BitMatrix::from_row_words(m, n, |i, row| {
            packed.write_window(p + i, row)
        }))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.words[i * self.words_per_row + j / 64] >> (j % 64) & 1 == 1
    }

    /// Determinant over GF(2) by in-place elimination.
    pub fn det_mod2(&self) -> Result<bool, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let w = self.words_per_row;
        let mut words = self.words.clone();
        let mut pivot_row = vec![0u64; w];
        for col in 0..n {
            let word = col / 64;
            let mask = 1u64 << (col % 64);
            let pivot = match (col..n).find(|&r| words[r * w + word] & mask != 0) {
                Some(r) => r,
                None => return Ok(false),
            };
            if pivot != col {
                for k in word..w {
                    words.swap(col * w + k, pivot * w + k);
                }
            }
            pivot_row[word..w].copy_from_slice(&words[col * w + word..(col + 1) * w]);
            for r in col + 1..n {
                if words[r * w + word] & mask != 0 {
                    let row = &mut words[r * w + word..r * w + w];
                    for (dst, src) in row.iter_mut().zip(&pivot_row[word..w]) {
                        *dst ^= src;
                    }
                }
            }
        }
        Ok(true)
    }
}

/// Bit-packed parity vector of a sequence, for carving Hankel window rows
/// out with word shifts instead of per-bit writes.
#[derive(Clone, Debug)]
pub struct PackedBits {
    words: Vec<u64>,
    len: usize,
}

impl PackedBits {
    pub fn from_parities(seq: &[i64]) -> Self {
        let mut words = vec![0u64; seq.len().div_ceil(64) + 1];
        for (i, &v) in seq.iter().enumerate() {
            if v.rem_euclid(2) == 1 {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        PackedBits {
            words,
            len: seq.len(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Copies bits start, start+1, ... into `out` (LSB first). The caller
    /// keeps `start + 64 * out.len()` within the padded storage by staying
    /// within the sequence length.
    pub fn write_window(&self, start: usize, out: &mut [u64]) {
        let shift = start % 64;
        let base = start / 64;
        if shift == 0 {
            for (k, slot) in out.iter_mut().enumerate() {
                *slot = self.words.get(base + k).copied().unwrap_or(0);
            }
        } else {
            for (k, slot) in out.iter_mut().enumerate() {
                let lo = self.words.get(base + k).copied().unwrap_or(0) >> shift;
                let hi = self.words.get(base + k + 1).copied().unwrap_or(0) << (64 - shift);
                *slot = lo | hi;
            }
        }
    }
}

fn check_window(len: usize, p: usize, m: usize, n: usize) -> Result<(), MatrixError> {
    if m == 0 || n == 0 {
        return Ok(());
    }
    let need = p + m + n - 1;
    if len < need {
        return Err(MatrixError::PrefixTooShort { have: len, need });
    }
    Ok(())
}

/// The m-by-n window of a sequence starting at offset p: entry (i, j) holds
/// seq[p + i + j].
pub fn hankel_block(seq: &[i64], p: usize, m: usize, n: usize) -> Result<IntMatrix, MatrixError> {
    check_window(seq.len(), p, m, n)?;
    Ok(IntMatrix::from_fn(m, n, |i, j| {
        BigInt::from(seq[p + i + j])
    }))
}

/// Row vector with ones at even positions: 1, 0, 1, 0, ...
pub fn even_ones(n: usize) -> Vec<i64> {
    (0..n).map(|i| if i % 2 == 0 { 1 } else { 0 }).collect()
}

/// Row vector with ones at odd positions: 0, 1, 0, 1, ...
pub fn odd_ones(n: usize) -> Vec<i64> {
    (0..n).map(|i| if i % 2 == 0 { 0 } else { 1 }).collect()
}

/// m-by-n 0/1 matrix whose columns alternate between the even-ones and
/// odd-ones patterns, starting with even-ones: entry (i, j) = 1 iff i and j
/// have the same parity.
pub fn striped_even_first(m: usize, n: usize) -> IntMatrix {
    IntMatrix::from_fn(m, n, |i, j| BigInt::from(((i + j + 1) % 2) as i64))
}

/// As [`striped_even_first`] but starting with the odd-ones column:
/// entry (i, j) = 1 iff i and j have different parity.
pub fn striped_odd_first(m: usize, n: usize) -> IntMatrix {
    IntMatrix::from_fn(m, n, |i, j| BigInt::from(((i + j) % 2) as i64))
}

/// The permutation listing even indices before odd indices; `perm[i]` is the
/// source index for target position i, so conjugating a matrix by it groups
/// even-indexed rows/columns in the top-left block.
pub fn interleave_permutation(n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).step_by(2).collect();
    perm.extend((1..n).step_by(2));
    perm
}

/// Result of conjugating a Hankel window by the interleaving permutation and
/// comparing against the expected two-by-two block structure.
#[derive(Clone, Debug)]
pub struct ParityConjugation {
    pub conjugated: IntMatrix,
    pub expected: IntMatrix,
    pub first_mismatch: Option<(usize, usize)>,
}

impl ParityConjugation {
    pub fn blocks_match(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Conjugates the order-2n (even case) or order-2n+1 (odd case) Hankel
/// matrix of the sequence by the interleaving permutation and checks it
/// against the block form with striped corner blocks and half-size Hankel
/// windows off the diagonal.
pub fn parity_conjugation(
    seq: &[i64],
    n: usize,
    odd_case: bool,
) -> Result<ParityConjugation, MatrixError> {
    let size = if odd_case { 2 * n + 1 } else { 2 * n };
    let full = hankel_block(seq, 0, size, size)?;
    let conjugated = full.permuted_symmetric(&interleave_permutation(size));

    let top = size.div_ceil(2); // n (even case) or n + 1 (odd case)
    let a_block = striped_even_first(top, top);
    let b_block = striped_odd_first(size - top, size - top);
    let upper_right = hankel_block(seq, 0, top, size - top)?;
    let lower_left = hankel_block(seq, 0, size - top, top)?;
    let expected = IntMatrix::from_fn(size, size, |i, j| match (i < top, j < top) {
        (true, true) => a_block.get(i, j).clone(),
        (true, false) => upper_right.get(i, j - top).clone(),
        (false, true) => lower_left.get(i - top, j).clone(),
        (false, false) => b_block.get(i - top, j - top).clone(),
    });

    let mut first_mismatch = None;
    'scan: for i in 0..size {
        for j in 0..size {
            if conjugated.get(i, j) != expected.get(i, j) {
                first_mismatch = Some((i, j));
                break 'scan;
            }
        }
    }
    Ok(ParityConjugation {
        conjugated,
        expected,
        first_mismatch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::paperfolding_closed;

    #[test]
    fn hankel_windows() {
        let f = paperfolding_closed(16);
        let m = hankel_block(&f, 0, 2, 2).unwrap();
        assert_eq!(m, IntMatrix::from_i64_rows(&[&[1, 1], &[1, 0]]));
        let m32 = hankel_block(&f, 0, 3, 2).unwrap();
        assert_eq!(m32, IntMatrix::from_i64_rows(&[&[1, 1], &[1, 0], &[0, 1]]));
        let one = hankel_block(&[7], 0, 1, 1).unwrap();
        assert_eq!(one.get(0, 0), &BigInt::from(7));
        assert_eq!(
            hankel_block(&f[..3], 0, 2, 3),
            Err(MatrixError::PrefixTooShort { have: 3, need: 4 })
        );
    }

    #[test]
    fn exact_determinants() {
        let f = paperfolding_closed(16);
        assert_eq!(
            IntMatrix::from_i64_rows(&[&[1, 1], &[1, 0]])
                .det_exact()
                .unwrap(),
            BigInt::from(-1)
        );
        assert_eq!(IntMatrix::identity(5).det_exact().unwrap(), BigInt::one());
        assert_eq!(
            hankel_block(&f, 0, 4, 4).unwrap().det_exact().unwrap(),
            BigInt::from(2)
        );
        // empty matrix
        assert_eq!(
            IntMatrix::new(0, 0, vec![]).unwrap().det_exact().unwrap(),
            BigInt::one()
        );
        assert_eq!(
            hankel_block(&f, 0, 3, 2).unwrap().det_exact(),
            Err(MatrixError::NotSquare { rows: 3, cols: 2 })
        );
        // needs a row swap to find the pivot
        let swap = IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(swap.det_exact().unwrap(), BigInt::from(-1));
    }

    #[test]
    fn cofactor_oracle() {
        assert_eq!(
            IntMatrix::from_i64_rows(&[&[1, 1], &[1, 0]])
                .det_cofactor_oracle()
                .unwrap(),
            BigInt::from(-1)
        );
        assert_eq!(
            IntMatrix::from_i64_rows(&[&[-7]])
                .det_cofactor_oracle()
                .unwrap(),
            BigInt::from(-7)
        );
        assert_eq!(
            IntMatrix::identity(9).det_cofactor_oracle(),
            Err(MatrixError::OracleTooLarge { dim: 9, max: 8 })
        );
    }

    #[test]
    fn gf2_determinants() {
        let f = paperfolding_closed(16);
        let m = IntMatrix::from_i64_rows(&[&[1, 1], &[1, 0]]);
        assert!(m.to_bit_matrix().det_mod2().unwrap());
        let zero = BitMatrix::from_fn(3, 3, |_, _| false);
        assert!(!zero.det_mod2().unwrap());
        // 3x3 paperfolding window has determinant -2, even
        let h3 = hankel_block(&f, 0, 3, 3).unwrap();
        assert!(!h3.to_bit_matrix().det_mod2().unwrap());
        assert_eq!(
            BitMatrix::from_fn(2, 3, |_, _| true).det_mod2(),
            Err(MatrixError::NotSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn leading_minors_match_window_determinants() {
        let f = paperfolding_closed(64);
        let h = hankel_block(&f, 0, 20, 20).unwrap();
        let (minors, zero_at) = h.leading_principal_minors().unwrap();
        assert_eq!(zero_at, None);
        assert_eq!(minors.len(), 20);
        for (i, minor) in minors.iter().enumerate() {
            let direct = hankel_block(&f, 0, i + 1, i + 1)
                .unwrap()
                .det_exact()
                .unwrap();
            assert_eq!(minor, &direct, "order {}", i + 1);
        }
        // a window with a vanishing leading minor reports where it happened
        let sing = IntMatrix::from_i64_rows(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 1]]);
        let (minors, zero_at) = sing.leading_principal_minors().unwrap();
        assert_eq!(minors, vec![BigInt::one()]);
        assert_eq!(zero_at, Some(2));
    }

    #[test]
    fn parity_vectors_and_stripes() {
        assert_eq!(even_ones(5), vec![1, 0, 1, 0, 1]);
        assert_eq!(odd_ones(4), vec![0, 1, 0, 1]);
        for n in 0..20 {
            let sum: Vec<i64> = even_ones(n)
                .iter()
                .zip(odd_ones(n))
                .map(|(a, b)| a + b)
                .collect();
            assert!(sum.iter().all(|&v| v == 1));
        }
        // 4x3 even-first stripe block
        assert_eq!(
            striped_even_first(4, 3),
            IntMatrix::from_i64_rows(&[&[1, 0, 1], &[0, 1, 0], &[1, 0, 1], &[0, 1, 0]])
        );
        // 5x5 odd-first stripe block is the complementary checkerboard
        assert_eq!(
            striped_odd_first(5, 5),
            IntMatrix::from_i64_rows(&[
                &[0, 1, 0, 1, 0],
                &[1, 0, 1, 0, 1],
                &[0, 1, 0, 1, 0],
                &[1, 0, 1, 0, 1],
                &[0, 1, 0, 1, 0],
            ])
        );
    }

    #[test]
    fn interleave_permutation_layout() {
        assert_eq!(interleave_permutation(5), vec![0, 2, 4, 1, 3]);
        assert_eq!(interleave_permutation(4), vec![0, 2, 1, 3]);
        assert_eq!(interleave_permutation(1), vec![0]);
    }

    #[test]
    fn conjugation_block_structure() {
        let f = paperfolding_closed(1024);
        // smallest even case: the conjugated 2x2 matrix keeps its entries
        let c1 = parity_conjugation(&f, 1, false).unwrap();
        assert!(c1.blocks_match());
        assert_eq!(c1.conjugated, IntMatrix::from_i64_rows(&[&[1, 1], &[1, 0]]));

        for n in 1..=200 {
            assert!(
                parity_conjugation(&f, n, false).unwrap().blocks_match(),
                "even n={n}"
            );
            assert!(
                parity_conjugation(&f, n, true).unwrap().blocks_match(),
                "odd n={n}"
            );
        }

        // the all-ones sequence violates the vanishing pattern, so the block
        // comparison pinpoints a mismatch
        let ones = vec![1i64; 64];
        let bad = parity_conjugation(&ones, 2, false).unwrap();
        assert!(!bad.blocks_match());
        assert!(bad.first_mismatch.is_some());
    }

    #[test]
    fn conjugation_preserves_determinant() {
        let f = paperfolding_closed(64);
        for n in 1..=8 {
            let h = hankel_block(&f, 0, n, n).unwrap();
            let perm = interleave_permutation(n);
            assert_eq!(
                h.permuted_symmetric(&perm).det_exact().unwrap(),
                h.det_exact().unwrap()
            );
            assert_eq!(h.transpose().det_exact().unwrap(), h.det_exact().unwrap());
        }
    }

    #[test]
    fn packed_windows_match_per_bit_construction() {
        let f = paperfolding_closed(400);
        for &(p, m, n) in &[
            (0usize, 7usize, 7usize),
            (3, 10, 64),
            (5, 65, 70),
            (0, 130, 129),
        ] {
            let fast = BitMatrix::hankel_mod2(&f, p, m, n).unwrap();
            let slow = BitMatrix::from_fn(m, n, |i, j| f[p + i + j].rem_euclid(2) == 1);
            assert_eq!(fast, slow, "p={p} m={m} n={n}");
        }
    }

    #[test]
    fn grid_rendering() {
        let g = IntMatrix::from_i64_rows(&[&[1, -10], &[2, 3]]).grid();
        assert_eq!(g, "  1 -10\n  2   3\n");
    }
}
