//! Dense linear algebra over F2 on packed bit rows.

use std::fmt;

/// A fixed-length bit vector packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    #[must_use]
    pub fn zeros(len: usize) -> Self {
        BitVec { len, words: vec![0; len.div_ceil(64)] }
    }

    #[must_use]
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = BitVec::zeros(len);
        v.set(i, true);
        v
    }

    #[must_use]
    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = BitVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.len
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[must_use]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, b: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if b {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    #[must_use]
    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[must_use]
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Parity of the bitwise product.
    #[must_use]
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    #[must_use]
    pub fn first_one(&self) -> Option<usize> {
        self.ones().next()
    }

    /// The vector obtained by appending `other`.
    #[must_use]
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Bits `start..start+len`.
    #[must_use]
    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        let mut out = BitVec::zeros(len);
        for i in self.ones().filter(|&i| i >= start && i < start + len) {
            out.set(i - start, true);
        }
        out
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect();
        write!(f, "[{s}]")
    }
}

/// Rank of a family of vectors packed into `u64`.
#[must_use]
pub fn rank_of_vectors(vectors: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for &v in vectors {
        let mut x = v;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// A dense matrix over F2, stored by rows.
#[derive(Clone, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows, self.cols)?;
        for r in &self.data {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

impl F2Matrix {
    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        F2Matrix { rows, cols, data: vec![BitVec::zeros(cols); rows] }
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        let mut m = F2Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i].set(i, true);
        }
        m
    }

    /// # Panics
    /// If a row has the wrong length.
    #[must_use]
    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols));
        F2Matrix { rows: rows.len(), cols, data: rows }
    }

    /// The matrix whose `j`-th column is `columns[j]`.
    #[must_use]
    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Self {
        let mut m = F2Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            debug_assert_eq!(c.len(), rows);
            for i in c.ones() {
                m.data[i].set(j, true);
            }
        }
        m
    }

    #[must_use]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[must_use]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[must_use]
    pub fn row(&self, i: usize) -> &BitVec {
        &self.data[i]
    }

    #[must_use]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, b: bool) {
        self.data[i].set(j, b);
    }

    #[must_use]
    pub fn column(&self, j: usize) -> BitVec {
        let mut c = BitVec::zeros(self.rows);
        for (i, r) in self.data.iter().enumerate() {
            if r.get(j) {
                c.set(i, true);
            }
        }
        c
    }

    #[must_use]
    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.cols, self.rows);
        for (i, r) in self.data.iter().enumerate() {
            for j in r.ones() {
                t.data[j].set(i, true);
            }
        }
        t
    }

    /// `self · x` for a column vector `x`.
    #[must_use]
    pub fn mul_vec(&self, x: &BitVec) -> BitVec {
        assert_eq!(x.len(), self.cols, "vector length differs from column count");
        let mut out = BitVec::zeros(self.rows);
        for (i, r) in self.data.iter().enumerate() {
            if r.dot(x) {
                out.set(i, true);
            }
        }
        out
    }

    /// `self · other`.
    #[must_use]
    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = F2Matrix::zeros(self.rows, other.cols);
        for (i, r) in self.data.iter().enumerate() {
            for k in r.ones() {
                out.data[i].xor_assign(&other.data[k]);
            }
        }
        out
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVec::is_zero)
    }

    /// Row-reduce in place to reduced echelon form; returns the pivot column of
    /// each nonzero row.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&i| self.data[i].get(col)) else {
                continue;
            };
            self.data.swap(row, p);
            let pivot_row = self.data[row].clone();
            for i in 0..self.rows {
                if i != row && self.data[i].get(col) {
                    self.data[i].xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the null space `{x : self·x = 0}`.
    #[must_use]
    pub fn kernel(&self) -> Vec<BitVec> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = BitVec::unit(self.cols, free);
            for (r, &p) in pivots.iter().enumerate() {
                if m.data[r].get(free) {
                    v.set(p, true);
                }
            }
            out.push(v);
        }
        out
    }

    /// Stack `other` below `self`.
    #[must_use]
    pub fn vstack(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        F2Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Place `other` to the right of `self`.
    #[must_use]
    pub fn hstack(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.rows, other.rows);
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.concat(b)).collect();
        F2Matrix { rows: self.rows, cols: self.cols + other.cols, data }
    }
}

/// Solution set of a linear system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Inconsistent,
    Solutions { particular: BitVec, kernel: Vec<BitVec> },
}

/// Exact solution of `m·x = b`.
#[must_use]
pub fn solve_linear(m: &F2Matrix, b: &BitVec) -> LinearSolution {
    let solver = LinearSolver::new(m);
    match solver.solve(b) {
        None => LinearSolution::Inconsistent,
        Some(particular) => LinearSolution::Solutions { particular, kernel: m.kernel() },
    }
}

/// A factored matrix answering repeated solves of `m·x = b`.
#[derive(Clone, Debug)]
pub struct LinearSolver {
    cols: usize,
    reduced: F2Matrix,
    transform: F2Matrix,
    pivots: Vec<usize>,
}

impl LinearSolver {
    #[must_use]
    pub fn new(m: &F2Matrix) -> Self {
        let mut aug = m.hstack(&F2Matrix::identity(m.rows));
        let all = aug.rref();
        let pivots: Vec<usize> = all.into_iter().take_while(|&p| p < m.cols).collect();
        let reduced = F2Matrix::from_rows(m.cols, aug.data.iter().map(|r| r.slice(0, m.cols)).collect());
        let transform =
            F2Matrix::from_rows(m.rows, aug.data.iter().map(|r| r.slice(m.cols, m.rows)).collect());
        LinearSolver { cols: m.cols, reduced, transform, pivots }
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    #[must_use]
    pub fn is_injective(&self) -> bool {
        self.pivots.len() == self.cols
    }

    #[must_use]
    pub fn is_surjective(&self) -> bool {
        self.pivots.len() == self.reduced.rows
    }

    /// Some solution of `m·x = b`, or `None` when inconsistent.
    #[must_use]
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        let tb = self.transform.mul_vec(b);
        if (self.pivots.len()..tb.len()).any(|i| tb.get(i)) {
            return None;
        }
        let mut x = BitVec::zeros(self.cols);
        for (r, &p) in self.pivots.iter().enumerate() {
            if tb.get(r) {
                x.set(p, true);
            }
        }
        Some(x)
    }

    /// Whether `b` lies in the column space.
    #[must_use]
    pub fn in_image(&self, b: &BitVec) -> bool {
        self.solve(b).is_some()
    }

    #[must_use]
    pub fn reduced(&self) -> &F2Matrix {
        &self.reduced
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vecs(s: &str) -> BitVec {
        BitVec::from_bools(&s.chars().map(|c| c == '1').collect::<Vec<_>>())
    }

    #[test]
    fn identity_has_unique_solution() {
        let m = F2Matrix::identity(4);
        let b = vecs("1011");
        assert_eq!(
            solve_linear(&m, &b),
            LinearSolution::Solutions { particular: b.clone(), kernel: vec![] }
        );
    }

    #[test]
    fn zero_matrix_is_inconsistent() {
        let m = F2Matrix::zeros(1, 1);
        assert_eq!(solve_linear(&m, &vecs("1")), LinearSolution::Inconsistent);
    }

    #[test]
    fn one_by_two_kernel() {
        let m = F2Matrix::from_rows(2, vec![vecs("11")]);
        assert_eq!(
            solve_linear(&m, &vecs("0")),
            LinearSolution::Solutions { particular: vecs("00"), kernel: vec![vecs("11")] }
        );
    }

    #[test]
    fn rank_nullity() {
        let m = F2Matrix::from_rows(4, vec![vecs("1100"), vecs("0110"), vecs("1010")]);
        assert_eq!(m.rank() + m.kernel().len(), 4);
        for k in m.kernel() {
            assert!(m.mul_vec(&k).is_zero());
        }
    }

    #[test]
    fn packed_rank() {
        assert_eq!(rank_of_vectors(&[0b01, 0b10, 0b11]), 2);
        assert_eq!(rank_of_vectors(&[0, 0]), 0);
    }
}
