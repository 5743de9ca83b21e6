//! Dense linear algebra over the two-element field.
//!
//! Vectors and matrix rows are packed into `u64` words. Row reduction uses a
//! fixed pivot rule (leftmost pivot column, lowest available row index) so
//! every derived basis is reproducible.

use std::fmt;
use std::ops::Range;

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A vector over F2 of fixed length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { len, words: vec![0; words_for(len)] }
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (k, &b) in bits.iter().enumerate() {
            if b & 1 == 1 {
                v.set(k, true);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, index: usize) -> bool {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        (self.words[index / WORD] >> (index % WORD)) & 1 == 1
    }

    pub fn set(&mut self, index: usize, value: bool) {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        let mask = 1u64 << (index % WORD);
        if value {
            self.words[index / WORD] |= mask;
        } else {
            self.words[index / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, index: usize) {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        self.words[index / WORD] ^= 1u64 << (index % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * WORD + t)
            })
        })
    }

    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Copy of the bits in `range`, re-indexed from zero.
    pub fn slice(&self, range: Range<usize>) -> BitVec {
        let mut out = BitVec::zeros(range.len());
        for k in self.ones().filter(|k| range.contains(k)) {
            out.set(k - range.start, true);
        }
        out
    }

    /// Embed into a longer vector at `offset`.
    pub fn embed(&self, len: usize, offset: usize) -> BitVec {
        let mut out = BitVec::zeros(len);
        for k in self.ones() {
            out.set(k + offset, true);
        }
        out
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|k| self.get(k) as u8).collect()
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len).map(|k| if self.get(k) { '1' } else { '0' }).collect();
        write!(f, "BitVec({s})")
    }
}

/// Dense F2 matrix stored by rows.
#[derive(Clone, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        F2Matrix { rows, cols, data: vec![BitVec::zeros(cols); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.set(k, k, true);
        }
        m
    }

    /// Build from rows of 0/1 entries. All rows must share a length.
    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let data: Vec<BitVec> = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                BitVec::from_bits(r)
            })
            .collect();
        F2Matrix { rows: data.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, v) in columns.iter().enumerate() {
            assert_eq!(v.len(), rows, "column length mismatch");
            for r in v.ones() {
                m.set(r, c, true);
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

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value);
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r].flip(c);
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.data[r]
    }

    pub fn column(&self, c: usize) -> BitVec {
        let mut v = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            if self.data[r].get(c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVec::is_zero)
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for c in row.ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        let mut out = BitVec::zeros(self.rows);
        for (r, row) in self.data.iter().enumerate() {
            if row.dot(v) {
                out.set(r, true);
            }
        }
        out
    }

    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = F2Matrix::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            for k in row.ones() {
                out.data[r].xor_assign(&other.data[k]);
            }
        }
        out
    }

    pub fn add(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            a.xor_assign(b);
        }
        out
    }

    /// Sub-matrix on contiguous row and column ranges.
    pub fn block(&self, rows: Range<usize>, cols: Range<usize>) -> F2Matrix {
        let data: Vec<BitVec> = self.data[rows.clone()].iter().map(|r| r.slice(cols.clone())).collect();
        F2Matrix { rows: rows.len(), cols: cols.len(), data }
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn hstack(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.rows, other.rows, "row count mismatch");
        let cols = self.cols + other.cols;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut v = a.embed(cols, 0);
                v.xor_assign(&b.embed(cols, self.cols));
                v
            })
            .collect();
        F2Matrix { rows: self.rows, cols, data }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (F2Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..m.cols {
            if next == m.rows {
                break;
            }
            let Some(p) = (next..m.rows).find(|&r| m.data[r].get(c)) else {
                continue;
            };
            m.data.swap(next, p);
            let pivot_row = m.data[next].clone();
            for r in 0..m.rows {
                if r != next && m.data[r].get(c) {
                    m.data[r].xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            next += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Null space `{v : Mv = 0}` as a canonical subspace.
    pub fn kernel_basis(&self) -> F2Subspace {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let vectors: Vec<BitVec> = (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVec::unit(self.cols, f);
                for (row, &p) in pivots.iter().enumerate() {
                    if r.data[row].get(f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect();
        F2Subspace::from_spanning(self.cols, vectors)
    }

    /// Span of the columns.
    pub fn column_space(&self) -> F2Subspace {
        F2Subspace::from_spanning(self.rows, self.transpose().data)
    }

    /// Solve `Mx = b`. Free variables are set to zero.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        assert_eq!(b.len(), self.rows, "dimension mismatch");
        let aug = self.hstack(&F2Matrix::from_columns(self.rows, std::slice::from_ref(b)));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = BitVec::zeros(self.cols);
        for (row, &p) in pivots.iter().enumerate() {
            if r.data[row].get(self.cols) {
                x.set(p, true);
            }
        }
        Some(x)
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows, self.cols)?;
        for row in &self.data {
            let s: String = (0..self.cols).map(|k| if row.get(k) { '1' } else { '0' }).collect();
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}

/// Subspace of F2^n stored as a reduced echelon basis.
///
/// Each basis vector has a distinct leading (lowest) bit, no other basis
/// vector has that bit set, and vectors are sorted by leading bit. Two equal
/// subspaces therefore compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Subspace {
    ambient: usize,
    basis: Vec<BitVec>,
}

impl F2Subspace {
    pub fn zero(ambient: usize) -> Self {
        F2Subspace { ambient, basis: Vec::new() }
    }

    pub fn from_spanning(ambient: usize, vectors: impl IntoIterator<Item = BitVec>) -> Self {
        let mut s = Self::zero(ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.basis
    }

    fn reduce(&self, mut v: BitVec) -> BitVec {
        for b in &self.basis {
            let lead = b.first_one().expect("basis vectors are nonzero");
            if v.get(lead) {
                v.xor_assign(b);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        assert_eq!(v.len(), self.ambient, "dimension mismatch");
        self.reduce(v.clone()).is_zero()
    }

    /// Add a vector; returns false if it was already in the span.
    pub fn insert(&mut self, v: BitVec) -> bool {
        assert_eq!(v.len(), self.ambient, "dimension mismatch");
        let v = self.reduce(v);
        let Some(lead) = v.first_one() else {
            return false;
        };
        for b in &mut self.basis {
            if b.get(lead) {
                b.xor_assign(&v);
            }
        }
        let at = self.basis.partition_point(|b| b.first_one() < Some(lead));
        self.basis.insert(at, v);
        true
    }

    pub fn sum(&self, other: &F2Subspace) -> F2Subspace {
        let mut s = self.clone();
        for v in &other.basis {
            s.insert(v.clone());
        }
        s
    }

    pub fn is_subspace_of(&self, other: &F2Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Plain elimination on byte rows, kept independent of the packed code.
    fn naive_rank(rows: &[Vec<u8>]) -> usize {
        let mut m: Vec<Vec<u8>> = rows.to_vec();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            if let Some(p) = (rank..m.len()).find(|&r| m[r][c] == 1) {
                m.swap(rank, p);
                for r in 0..m.len() {
                    if r != rank && m[r][c] == 1 {
                        for k in 0..cols {
                            m[r][k] ^= m[rank][k];
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    fn all_vectors(n: usize) -> impl Iterator<Item = BitVec> {
        (0u32..(1 << n)).map(move |mask| {
            let bits: Vec<u8> = (0..n).map(|k| ((mask >> k) & 1) as u8).collect();
            BitVec::from_bits(&bits)
        })
    }

    fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<u8>>> {
        (1usize..7, 1usize..8).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(0u8..2, c), r))
    }

    #[test]
    fn small_examples() {
        let m = F2Matrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis()[0].to_bits(), vec![1, 1, 1]);

        let m = F2Matrix::from_rows(&[vec![1, 1]]);
        assert_eq!(m.solve(&BitVec::from_bits(&[1])).unwrap().to_bits(), vec![1, 0]);
        assert!(F2Matrix::from_rows(&[vec![0, 0]]).solve(&BitVec::from_bits(&[1])).is_none());
    }

    #[test]
    fn words_cross_boundaries() {
        let n = 130;
        let mut m = F2Matrix::zeros(n, n);
        for k in 0..n - 1 {
            m.set(k, k, true);
            m.set(k, k + 1, true);
        }
        assert_eq!(m.rank(), n - 1);
        let k = m.kernel_basis();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis()[0].count_ones(), n);
        assert_eq!(m.block(60..70, 62..75).rank(), 9);
    }

    #[test]
    fn subspace_is_canonical() {
        let a = F2Subspace::from_spanning(3, [BitVec::from_bits(&[1, 1, 0]), BitVec::from_bits(&[0, 1, 1])]);
        let b = F2Subspace::from_spanning(3, [BitVec::from_bits(&[1, 0, 1]), BitVec::from_bits(&[1, 1, 0])]);
        assert_eq!(a, b);
        assert!(a.contains(&BitVec::from_bits(&[1, 0, 1])));
        assert!(!a.contains(&BitVec::from_bits(&[1, 0, 0])));
    }

    proptest! {
        #[test]
        fn rank_matches_naive(rows in matrix_strategy()) {
            prop_assert_eq!(F2Matrix::from_rows(&rows).rank(), naive_rank(&rows));
        }

        #[test]
        fn rank_nullity(rows in matrix_strategy()) {
            let m = F2Matrix::from_rows(&rows);
            prop_assert_eq!(m.rank() + m.kernel_basis().dim(), m.cols());
        }

        #[test]
        fn kernel_is_exact(rows in matrix_strategy()) {
            let m = F2Matrix::from_rows(&rows);
            let k = m.kernel_basis();
            for v in all_vectors(m.cols()) {
                prop_assert_eq!(m.mul_vec(&v).is_zero(), k.contains(&v));
            }
        }

        #[test]
        fn solve_is_exact(rows in matrix_strategy(), seed in any::<u64>()) {
            let m = F2Matrix::from_rows(&rows);
            let bits: Vec<u8> = (0..m.rows()).map(|k| ((seed >> (k % 64)) & 1) as u8).collect();
            let b = BitVec::from_bits(&bits);
            let solvable = all_vectors(m.cols()).any(|v| m.mul_vec(&v) == b);
            match m.solve(&b) {
                Some(x) => prop_assert_eq!(m.mul_vec(&x), b),
                None => prop_assert!(!solvable),
            }
        }

        #[test]
        fn column_space_membership(rows in matrix_strategy()) {
            let m = F2Matrix::from_rows(&rows);
            let cs = m.column_space();
            prop_assert_eq!(cs.dim(), m.rank());
            for v in all_vectors(m.cols()) {
                prop_assert!(cs.contains(&m.mul_vec(&v)));
            }
        }

        #[test]
        fn transpose_product(a in matrix_strategy(), seed in any::<u64>()) {
            let a = F2Matrix::from_rows(&a);
            let mut b = F2Matrix::zeros(a.cols(), 3);
            for r in 0..a.cols() {
                for c in 0..3 {
                    b.set(r, c, (seed >> ((r * 3 + c) % 64)) & 1 == 1);
                }
            }
            prop_assert_eq!(a.mul(&b).transpose(), b.transpose().mul(&a.transpose()));
        }
    }
}
