//! Bit-packed dense linear algebra over GF(2).
//!
//! Rows are stored as runs of `u64` words, 64 columns per word, with the
//! unused high bits of the last word of every row kept at zero. All
//! operations take their inputs by reference and work on copies.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

const WORD_BITS: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

#[inline]
fn tail_mask(bits: usize) -> u64 {
    match bits % WORD_BITS {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

#[inline]
fn xor_words(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

/// Iterates the indices of set bits in a packed word slice.
pub(crate) fn set_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        core::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(wi * WORD_BITS + b)
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("dimension mismatch: {left_rows}x{left_cols} against {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("matrix has rank {rank} but {rows} rows; no right inverse exists")]
    RankDeficient { rank: usize, rows: usize },
    #[error("linear system has no solution")]
    NoSolution,
}

/// A vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Vector of length `len` with ones exactly at `support`.
    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in support {
            v.set(i, true);
        }
        v
    }

    pub(crate) fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        if let Some(last) = words.last_mut() {
            *last &= tail_mask(len);
        }
        Self { len, words }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn support(&self) -> Vec<usize> {
        set_bits(&self.words).collect()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len);
        xor_words(&mut self.words, &other.words);
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Dense GF(2) matrix with bit-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from 0/1 rows. Any nonzero entry counts as one.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged row {i}");
            for (j, &b) in r.iter().enumerate() {
                if b != 0 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Builds a `rows x supports.len()` matrix whose column `j` has ones at `supports[j]`.
    pub fn from_column_supports(rows: usize, supports: &[Vec<usize>]) -> Self {
        let mut m = Self::zeros(rows, supports.len());
        for (j, sup) in supports.iter().enumerate() {
            for &i in sup {
                m.set(i, j, true);
            }
        }
        m
    }

    /// Builds a `row_supports.len() x cols` matrix whose row `i` has ones at `row_supports[i]`.
    pub fn from_row_supports(cols: usize, row_supports: &[Vec<usize>]) -> Self {
        let mut m = Self::zeros(row_supports.len(), cols);
        for (i, sup) in row_supports.iter().enumerate() {
            for &j in sup {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "({i}, {j}) out of range");
        (self.data[i * self.stride + j / WORD_BITS] >> (j % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "({i}, {j}) out of range");
        let w = &mut self.data[i * self.stride + j / WORD_BITS];
        let mask = 1u64 << (j % WORD_BITS);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        assert!(i < self.rows && j < self.cols, "({i}, {j}) out of range");
        self.data[i * self.stride + j / WORD_BITS] ^= 1u64 << (j % WORD_BITS);
    }

    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row(&self, i: usize) -> BitVector {
        BitVector::from_words(self.cols, self.row_words(i).to_vec())
    }

    pub fn column(&self, j: usize) -> BitVector {
        let mut v = BitVector::zeros(self.rows);
        for i in 0..self.rows {
            if self.get(i, j) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn row_support(&self, i: usize) -> Vec<usize> {
        set_bits(self.row_words(i)).collect()
    }

    /// Row indices of the ones in column `j`.
    pub fn column_support(&self, j: usize) -> Vec<usize> {
        (0..self.rows).filter(|&i| self.get(i, j)).collect()
    }

    /// `row[dst] ^= row[src]`.
    fn xor_row(&mut self, dst: usize, src: usize) {
        debug_assert_ne!(dst, src);
        let s = self.stride;
        let (a, b) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&mut lo[dst * s..(dst + 1) * s], &hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&mut hi[..s], &lo[src * s..(src + 1) * s])
        };
        xor_words(a, b);
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let s = self.stride;
        for w in 0..s {
            self.data.swap(a * s + w, b * s + w);
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in set_bits(self.row_words(i)) {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Rows `indices` of `self`, in the given order (the projection `π_S · self`).
    pub fn select_rows(&self, indices: &[usize]) -> BitMatrix {
        let mut m = BitMatrix::zeros(indices.len(), self.cols);
        for (k, &i) in indices.iter().enumerate() {
            m.data[k * m.stride..(k + 1) * m.stride].copy_from_slice(self.row_words(i));
        }
        m
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if self.rows != other.rows {
            return Err(self.mismatch(other));
        }
        let mut m = BitMatrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in set_bits(self.row_words(i)) {
                m.set(i, j, true);
            }
            for j in set_bits(other.row_words(i)) {
                m.set(i, self.cols + j, true);
            }
        }
        Ok(m)
    }

    fn mismatch(&self, other: &BitMatrix) -> Gf2Error {
        Gf2Error::DimensionMismatch {
            left_rows: self.rows,
            left_cols: self.cols,
            right_rows: other.rows,
            right_cols: other.cols,
        }
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Product `self · other` over GF(2).
    ///
    /// Row `i` of the result is the XOR of the rows of `other` selected by the
    /// ones of row `i` of `self`, so sparse left operands are cheap.
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if self.cols != other.rows {
            return Err(self.mismatch(other));
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        let s = out.stride;
        for i in 0..self.rows {
            let dst = &mut out.data[i * s..(i + 1) * s];
            for k in set_bits(self.row_words(i)) {
                xor_words(dst, other.row_words(k));
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `self · v`.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector, Gf2Error> {
        if self.cols != v.len() {
            return Err(Gf2Error::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: v.len(),
                right_cols: 1,
            });
        }
        let mut out = BitVector::zeros(self.rows);
        for i in 0..self.rows {
            let parity = self
                .row_words(i)
                .iter()
                .zip(v.words())
                .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones());
            if parity & 1 == 1 {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// Dimension of the row (equivalently column) space.
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        let mut rank = 0;
        for col in 0..work.cols {
            if rank == work.rows {
                break;
            }
            let Some(p) = (rank..work.rows).find(|&r| work.get(r, col)) else {
                continue;
            };
            work.swap_rows(rank, p);
            for r in rank + 1..work.rows {
                if work.get(r, col) {
                    work.xor_row(r, rank);
                }
            }
            rank += 1;
        }
        rank
    }

    /// A right inverse `R` with `self · R = I`, pivoting on columns in index order.
    pub fn right_inverse(&self) -> Result<BitMatrix, Gf2Error> {
        let order: Vec<usize> = (0..self.cols).collect();
        self.right_inverse_with_pivot_order(&order)
    }

    /// A right inverse, choosing pivot columns by scanning `column_order`.
    ///
    /// Row-reduces `[self | I]` to `[U | E]` with `U` the identity on the pivot
    /// columns `p_k`; then `R` has row `p_k` equal to row `k` of `E` and zeros
    /// elsewhere. Different orders pick different pivot sets and therefore
    /// different (equally valid) right inverses.
    pub fn right_inverse_with_pivot_order(
        &self,
        column_order: &[usize],
    ) -> Result<BitMatrix, Gf2Error> {
        let (rows, cols) = (self.rows, self.cols);
        let mut work = BitMatrix::zeros(rows, cols + rows);
        for i in 0..rows {
            let dst = &mut work.data[i * work.stride..i * work.stride + self.stride];
            dst.copy_from_slice(self.row_words(i));
            work.set(i, cols + i, true);
        }
        let mut pivots = Vec::with_capacity(rows);
        for &col in column_order {
            let r = pivots.len();
            if r == rows {
                break;
            }
            assert!(col < cols, "pivot column {col} out of range");
            let Some(p) = (r..rows).find(|&i| work.get(i, col)) else {
                continue;
            };
            work.swap_rows(r, p);
            for i in 0..rows {
                if i != r && work.get(i, col) {
                    work.xor_row(i, r);
                }
            }
            pivots.push(col);
        }
        if pivots.len() < rows {
            return Err(Gf2Error::RankDeficient {
                rank: pivots.len(),
                rows,
            });
        }
        let mut inv = BitMatrix::zeros(cols, rows);
        for (k, &p) in pivots.iter().enumerate() {
            for j in 0..rows {
                if work.get(k, cols + j) {
                    inv.set(p, j, true);
                }
            }
        }
        Ok(inv)
    }

    /// Some `x` with `self · x = rhs`.
    pub fn solve(&self, rhs: &BitVector) -> Result<BitVector, Gf2Error> {
        if rhs.len() != self.rows {
            return Err(Gf2Error::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: rhs.len(),
                right_cols: 1,
            });
        }
        let cols = self.cols;
        let mut work = BitMatrix::zeros(self.rows, cols + 1);
        for i in 0..self.rows {
            for j in set_bits(self.row_words(i)) {
                work.set(i, j, true);
            }
            if rhs.get(i) {
                work.set(i, cols, true);
            }
        }
        let mut pivots = Vec::new();
        for col in 0..cols {
            let r = pivots.len();
            if r == work.rows {
                break;
            }
            let Some(p) = (r..work.rows).find(|&i| work.get(i, col)) else {
                continue;
            };
            work.swap_rows(r, p);
            for i in 0..work.rows {
                if i != r && work.get(i, col) {
                    work.xor_row(i, r);
                }
            }
            pivots.push(col);
        }
        if (pivots.len()..work.rows).any(|i| work.get(i, cols)) {
            return Err(Gf2Error::NoSolution);
        }
        let mut x = BitVector::zeros(cols);
        for (k, &p) in pivots.iter().enumerate() {
            if work.get(k, cols) {
                x.set(p, true);
            }
        }
        Ok(x)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            f.write_str("  ")?;
            for j in 0..self.cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            f.write_str("\n")?;
        }
        f.write_str("]")
    }
}

/// Incrementally maintained echelon basis of a set of row vectors.
///
/// Each stored row is keyed by its lowest set bit; a new row is reduced by
/// repeatedly clearing its lowest bit against the stored row with that pivot.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    width: usize,
    stride: usize,
    by_pivot: Vec<Option<usize>>,
    basis: Vec<u64>,
}

impl RowEchelon {
    pub fn new(width: usize) -> Self {
        Self {
            width,
            stride: words_for(width),
            by_pivot: vec![None; width],
            basis: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len() / self.stride.max(1)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Reduces `row` in place; returns its remaining lowest set bit, if any.
    fn reduce(&self, row: &mut [u64]) -> Option<usize> {
        loop {
            let low = row
                .iter()
                .enumerate()
                .find(|(_, &w)| w != 0)
                .map(|(wi, w)| wi * WORD_BITS + w.trailing_zeros() as usize)?;
            match self.by_pivot[low] {
                Some(b) => xor_words(row, &self.basis[b * self.stride..(b + 1) * self.stride]),
                None => return Some(low),
            }
        }
    }

    /// True when `row` lies outside the current span.
    pub fn is_independent(&self, row: &[u64]) -> bool {
        let mut tmp = row.to_vec();
        self.reduce(&mut tmp).is_some()
    }

    /// Adds `row` to the basis if it is independent; returns whether it was added.
    pub fn insert(&mut self, row: &[u64]) -> bool {
        assert_eq!(row.len(), self.stride, "row width mismatch");
        if self.width == 0 {
            return false;
        }
        let mut tmp = row.to_vec();
        match self.reduce(&mut tmp) {
            Some(p) => {
                self.by_pivot[p] = Some(self.rank());
                self.basis.extend_from_slice(&tmp);
                true
            }
            None => false,
        }
    }
}
