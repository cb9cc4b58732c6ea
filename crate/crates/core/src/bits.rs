//! Dense GF(2) vectors packed into `u64` words.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for w in v.words.iter_mut() {
            *w = u64::MAX;
        }
        v.trim();
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Vector of length `len` with the listed (0-based) positions set.
    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.set(i, true);
        }
        v
    }

    fn trim(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    #[inline]
    pub fn swap_bits(&mut self, i: usize, j: usize) {
        let (a, b) = (self.get(i), self.get(j));
        self.set(i, b);
        self.set(j, a);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Parity of the bitwise AND, i.e. the GF(2) inner product.
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn and_count(&self, other: &BitVec) -> u32 {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum()
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Concatenation `[self | other]`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Bits `[start, start + len)` as a new vector.
    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        let mut out = BitVec::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                out.set(i, true);
            }
        }
        out
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Solves `x · rows = target` over GF(2), i.e. finds a combination of `rows`
/// summing to `target`. Returns `None` when `target` is outside the row span.
pub fn solve_combination(rows: &[BitVec], target: &BitVec) -> Option<BitVec> {
    // Row-reduce copies of `rows` while remembering which originals were combined.
    let m = rows.len();
    let mut work: Vec<(BitVec, BitVec)> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| (r.clone(), BitVec::from_indices(m, [i])))
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let width = target.len();
    let mut next = 0;
    for col in 0..width {
        let Some(p) = (next..m).find(|&r| work[r].0.get(col)) else {
            continue;
        };
        work.swap(next, p);
        let (pivot_row, pivot_combo) = work[next].clone();
        for (r, entry) in work.iter_mut().enumerate() {
            if r != next && entry.0.get(col) {
                entry.0.xor_assign(&pivot_row);
                entry.1.xor_assign(&pivot_combo);
            }
        }
        pivots.push((col, next));
        next += 1;
        if next == m {
            break;
        }
    }
    let mut residual = target.clone();
    let mut combo = BitVec::zeros(m);
    for &(col, r) in &pivots {
        if residual.get(col) {
            residual.xor_assign(&work[r].0);
            combo.xor_assign(&work[r].1);
        }
    }
    residual.is_zero().then_some(combo)
}

/// Transpose of a list of equal-length rows.
pub fn transpose(rows: &[BitVec], width: usize) -> Vec<BitVec> {
    let mut cols = vec![BitVec::zeros(rows.len()); width];
    for (i, r) in rows.iter().enumerate() {
        for j in r.iter_ones() {
            cols[j].set(i, true);
        }
    }
    cols
}

/// Finds `v` with `equations[t] . v = rhs[t]` for every `t`, or `None`.
/// Free variables are set to zero, so the answer is deterministic.
pub fn solve_linear_system(equations: &[BitVec], width: usize, rhs: &BitVec) -> Option<BitVec> {
    solve_combination(&transpose(equations, width), rhs)
}

/// Rank of a set of GF(2) row vectors.
pub fn rank(rows: &[BitVec]) -> usize {
    let mut work: Vec<BitVec> = rows.to_vec();
    let Some(width) = work.first().map(BitVec::len) else {
        return 0;
    };
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..work.len()).find(|&i| work[i].get(col)) else {
            continue;
        };
        work.swap(r, p);
        let pivot = work[r].clone();
        for (i, row) in work.iter_mut().enumerate() {
            if i != r && row.get(col) {
                row.xor_assign(&pivot);
            }
        }
        r += 1;
    }
    r
}
