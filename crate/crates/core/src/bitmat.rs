//! Dense bit-packed matrices over 𝔽₂.
//!
//! Rows are stored contiguously as `u64` words, least significant bit first.
//! Everything downstream (ring codes included, via the Gray map) reduces to
//! elimination on these.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

#[inline]
pub fn words_for(cols: usize) -> usize {
    cols.div_ceil(64).max(1)
}

#[inline]
pub fn get_bit(row: &[u64], j: usize) -> bool {
    row[j / 64] >> (j % 64) & 1 == 1
}

#[inline]
pub fn set_bit(row: &mut [u64], j: usize, value: bool) {
    let mask = 1u64 << (j % 64);
    if value {
        row[j / 64] |= mask;
    } else {
        row[j / 64] &= !mask;
    }
}

#[inline]
pub fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

#[inline]
pub fn popcount(row: &[u64]) -> u32 {
    row.iter().map(|w| w.count_ones()).sum()
}

/// Parity of the bitwise AND, i.e. the standard binary inner product.
#[inline]
pub fn dot(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum::<u32>() & 1 == 1
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = words_for(cols);
        BitMatrix { rows, cols, words, data: vec![0; rows * words] }
    }

    /// An empty (0-row) matrix with the given width.
    pub fn empty(cols: usize) -> Self {
        Self::zeros(0, cols)
    }

    /// Wraps row-major packed data (`words_for(cols)` words per row).
    pub fn from_raw(rows: usize, cols: usize, data: Vec<u64>) -> Self {
        let words = words_for(cols);
        assert_eq!(data.len(), rows * words, "packed data has the wrong size");
        BitMatrix { rows, cols, words, data }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_bool_rows<R: AsRef<[bool]>>(cols: usize, rows: &[R]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "row {i} has the wrong width");
            for (j, &b) in r.iter().enumerate() {
                if b {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Parses rows written as strings of `0`/`1` (whitespace ignored).
    pub fn from_strings<S: AsRef<str>>(rows: &[S]) -> Self {
        let parsed: Vec<Vec<bool>> = rows
            .iter()
            .map(|r| r.as_ref().chars().filter(|c| !c.is_whitespace()).map(|c| c == '1').collect())
            .collect();
        let cols = parsed.first().map_or(0, Vec::len);
        Self::from_bool_rows(cols, &parsed)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.words..(i + 1) * self.words]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u64]> {
        self.data.chunks(self.words).take(self.rows)
    }

    pub fn raw(&self) -> &[u64] {
        &self.data
    }

    pub fn raw_mut(&mut self) -> &mut [u64] {
        &mut self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        get_bit(self.row(i), j)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let w = self.words;
        set_bit(&mut self.data[i * w..(i + 1) * w], j, value)
    }

    pub fn push_row(&mut self, row: &[u64]) {
        assert_eq!(row.len(), self.words);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn push_zero_row(&mut self) -> &mut [u64] {
        self.data.extend(std::iter::repeat(0).take(self.words));
        self.rows += 1;
        let i = self.rows - 1;
        self.row_mut(i)
    }

    pub fn append(&mut self, other: &BitMatrix) {
        assert_eq!(self.cols, other.cols);
        self.data.extend_from_slice(&other.data[..other.rows * other.words]);
        self.rows += other.rows;
    }

    pub fn truncate(&mut self, rows: usize) {
        self.rows = self.rows.min(rows);
        self.data.truncate(self.rows * self.words);
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.words;
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * w);
        head[lo * w..(lo + 1) * w].swap_with_slice(&mut tail[..w]);
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let w = self.words;
        if src < dst {
            let (head, tail) = self.data.split_at_mut(dst * w);
            xor_into(&mut tail[..w], &head[src * w..(src + 1) * w]);
        } else {
            let (head, tail) = self.data.split_at_mut(src * w);
            xor_into(&mut head[dst * w..(dst + 1) * w], &tail[..w]);
        }
    }

    /// Brings the matrix to reduced row echelon form in place, drops zero rows
    /// and returns the pivot columns. The result depends only on the row space.
    pub fn reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let word = col / 64;
            let mask = 1u64 << (col % 64);
            let Some(p) = (rank..self.rows).find(|&r| self.data[r * self.words + word] & mask != 0) else {
                continue;
            };
            self.swap_rows(rank, p);
            for r in 0..self.rows {
                if r != rank && self.data[r * self.words + word] & mask != 0 {
                    self.xor_row_into(rank, r);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        self.truncate(rank);
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().reduce().len()
    }

    /// Basis of `{x : row · x = 0 for every row}`, in reduced echelon form.
    pub fn nullspace(&self) -> BitMatrix {
        let mut m = self.clone();
        let pivots = m.reduce();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = BitMatrix::empty(self.cols);
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let row = out.push_zero_row();
            set_bit(row, f, true);
            for (i, &p) in pivots.iter().enumerate() {
                if get_bit(m.row(i), f) {
                    set_bit(row, p, true);
                }
            }
        }
        out.reduce();
        out
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    let w = out.words;
                    xor_into(&mut out.data[i * w..(i + 1) * w], other.row(k));
                }
            }
        }
        out
    }

    /// Moves column `j` to column `perm[j]`.
    pub fn permute_columns(&self, perm: &[usize]) -> BitMatrix {
        assert_eq!(perm.len(), self.cols);
        let mut out = BitMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for (j, &dst) in perm.iter().enumerate() {
                if self.get(i, j) {
                    out.set(i, dst, true);
                }
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = BitMatrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    pub fn to_strings(&self) -> Vec<String> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| if self.get(i, j) { '1' } else { '0' }).collect())
            .collect()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in self.to_strings() {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> BitMatrix {
        let mut m = BitMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, rng.gen_bool(0.5));
            }
        }
        m
    }

    #[test]
    fn reduce_small() {
        let mut m = BitMatrix::from_strings(&["110", "011", "101"]);
        assert_eq!(m.reduce(), vec![0, 1]);
        assert_eq!(m.to_strings(), vec!["101", "011"]);
    }

    #[test]
    fn nullspace_is_orthogonal_and_complementary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &(r, c) in &[(3, 5), (10, 70), (40, 130), (0, 9)] {
            let m = random(&mut rng, r, c);
            let n = m.nullspace();
            assert_eq!(m.rank() + n.rows(), c);
            for a in m.row_iter() {
                for b in n.row_iter() {
                    assert!(!dot(a, b));
                }
            }
        }
    }

    #[test]
    fn reduced_form_is_canonical() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = random(&mut rng, 8, 100);
        let mut a = m.clone();
        a.reduce();
        // Same row space, different generators.
        let mut b = m.clone();
        for i in 1..b.rows() {
            b.xor_row_into(i - 1, i);
        }
        b.swap_rows(0, 5);
        b.reduce();
        assert_eq!(a, b);
    }

    #[test]
    fn transpose_and_mul() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random(&mut rng, 5, 9);
        let b = random(&mut rng, 9, 4);
        let ab = a.mul(&b);
        assert_eq!(ab.transpose(), b.transpose().mul(&a.transpose()));
        assert_eq!(BitMatrix::identity(5).mul(&a), a);
    }
}
