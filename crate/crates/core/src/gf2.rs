//! Dense matrices over GF(2) and the elimination routines built on them.

use std::fmt;

use crate::bits::BitVec;
use crate::error::{Error, Result};

/// A dense GF(2) matrix stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

/// Row echelon data: the reduced matrix and the pivot column of each
/// non-zero row.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: BinaryMatrix,
    pub pivots: Vec<usize>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BinaryMatrix {
            rows,
            cols,
            data: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from packed rows, all of which must have `cols` bits.
    pub fn from_rows(cols: usize, data: Vec<BitVec>) -> Result<Self> {
        for r in &data {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
        }
        Ok(BinaryMatrix {
            rows: data.len(),
            cols,
            data,
        })
    }

    /// Builds a matrix from nested 0/1 entries. Any other value is rejected.
    pub fn from_entries(entries: &[Vec<u8>]) -> Result<Self> {
        let cols = entries.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(entries.len());
        for row in entries {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            if let Some(bad) = row.iter().find(|&&v| v > 1) {
                return Err(Error::InvalidMatrix(format!("entry {bad} is not 0 or 1")));
            }
            data.push(BitVec::from_bools(row.iter().map(|&v| v == 1)));
        }
        Ok(BinaryMatrix {
            rows: entries.len(),
            cols,
            data,
        })
    }

    pub fn to_entries(&self) -> Vec<Vec<u8>> {
        self.data
            .iter()
            .map(|r| r.iter().map(u8::from).collect())
            .collect()
    }

    #[inline]
    pub fn n_rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn n_cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.data[r].set(c, v)
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.data[r]
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<BitVec> {
        self.data
    }

    pub fn transpose(&self) -> BinaryMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for c in row.ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn mul(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            for k in row.ones() {
                out.data[r].xor_assign(&other.data[k]);
            }
        }
        Ok(out)
    }

    /// Row vector times matrix: the sum of the rows selected by `coeffs`.
    pub fn combine_rows(&self, coeffs: &BitVec) -> BitVec {
        debug_assert_eq!(coeffs.len(), self.rows);
        let mut acc = BitVec::zeros(self.cols);
        for i in coeffs.ones() {
            acc.xor_assign(&self.data[i]);
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.rows.min(self.cols)).all(|i| !self.get(i, i))
    }

    /// Checks the shape required of a commutativity form.
    pub fn check_alternating(&self) -> Result<()> {
        if self.rows != self.cols {
            return Err(Error::InvalidMatrix(format!(
                "matrix is {}x{}, expected square",
                self.rows, self.cols
            )));
        }
        if !self.is_symmetric() {
            return Err(Error::InvalidMatrix("matrix is not symmetric".into()));
        }
        if !self.has_zero_diagonal() {
            return Err(Error::InvalidMatrix(
                "matrix has a nonzero diagonal entry".into(),
            ));
        }
        Ok(())
    }

    /// Reduced row echelon form by Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| m.data[i].get(c)) else {
                continue;
            };
            m.data.swap(r, p);
            let pivot = m.data[r].clone();
            for i in 0..self.rows {
                if i != r && m.data[i].get(c) {
                    m.data[i].xor_assign(&pivot);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{x : M x = 0}`, one vector per free column, in ascending
    /// order of the free column.
    pub fn nullspace(&self) -> Vec<BitVec> {
        let Rref { matrix, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVec::zeros(self.cols);
            v.set(free, true);
            for (r, &p) in pivots.iter().enumerate() {
                if matrix.data[r].get(free) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of `{y : yᵀ M = 0}`, i.e. the row combinations summing to zero.
    /// The basis is returned in reduced echelon form.
    pub fn left_kernel(&self) -> Vec<BitVec> {
        let kernel = self.transpose().nullspace();
        if kernel.is_empty() {
            return kernel;
        }
        let km = BinaryMatrix::from_rows(self.rows, kernel).expect("consistent widths");
        let Rref { matrix, pivots } = km.rref();
        matrix.data.into_iter().take(pivots.len()).collect()
    }

    /// Some `c` with `Σ cᵢ rowᵢ = target`, or `None` if the target is outside
    /// the row space.
    pub fn solve_rows(&self, target: &BitVec) -> Option<BitVec> {
        if target.len() != self.cols {
            return None;
        }
        // Augment each row with an identity tag so elimination tracks the combination.
        let tagged: Vec<BitVec> = self
            .data
            .iter()
            .enumerate()
            .map(|(i, r)| r.concat(&BitVec::unit(self.rows, i)))
            .collect();
        let aug = BinaryMatrix::from_rows(self.cols + self.rows, tagged).ok()?;
        let Rref { matrix, pivots } = aug.rref();
        let mut residual = target.concat(&BitVec::zeros(self.rows));
        for (r, &p) in pivots.iter().enumerate() {
            if p >= self.cols {
                break;
            }
            if residual.get(p) {
                residual.xor_assign(&matrix.data[r]);
            }
        }
        if !residual.slice(0, self.cols).is_zero() {
            return None;
        }
        Some(residual.slice(self.cols, self.rows))
    }

    /// The lexicographically least `c` (first coordinate most significant)
    /// with `Σ cᵢ rowᵢ = target`.
    pub fn solve_rows_lex_least(&self, target: &BitVec) -> Option<BitVec> {
        let mut c = self.solve_rows(target)?;
        for k in self.left_kernel() {
            let lead = k.first_one().expect("kernel basis vectors are nonzero");
            if c.get(lead) {
                c.xor_assign(&k);
            }
        }
        Some(c)
    }

    /// Some `x` with `M x = b`, free variables set to zero.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        if b.len() != self.rows {
            return None;
        }
        let aug: Vec<BitVec> = self
            .data
            .iter()
            .enumerate()
            .map(|(i, r)| r.concat(&BitVec::from_bools([b.get(i)])))
            .collect();
        let Rref { matrix, pivots } = BinaryMatrix::from_rows(self.cols + 1, aug).ok()?.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = BitVec::zeros(self.cols);
        for (r, &p) in pivots.iter().enumerate() {
            if matrix.data[r].get(self.cols) {
                x.set(p, true);
            }
        }
        Some(x)
    }

    /// Whether `target` lies in the row space.
    pub fn row_space_contains(&self, target: &BitVec) -> bool {
        self.solve_rows(target).is_some()
    }

    pub fn inverse(&self) -> Result<BinaryMatrix> {
        if self.rows != self.cols {
            return Err(Error::InvalidMatrix(
                "only square matrices are invertible".into(),
            ));
        }
        let n = self.rows;
        let tagged: Vec<BitVec> = self
            .data
            .iter()
            .enumerate()
            .map(|(i, r)| r.concat(&BitVec::unit(n, i)))
            .collect();
        let Rref { matrix, pivots } = BinaryMatrix::from_rows(2 * n, tagged)?.rref();
        if n > 0 && (pivots.len() < n || pivots[n - 1] >= n) {
            return Err(Error::InvalidMatrix("matrix is singular".into()));
        }
        let data = matrix.data.iter().map(|r| r.slice(n, n)).collect();
        BinaryMatrix::from_rows(n, data)
    }
}

/// Rank of a list of equal-length vectors.
pub fn rank_of(vectors: &[BitVec]) -> usize {
    match vectors.first() {
        None => 0,
        Some(v) => BinaryMatrix::from_rows(v.len(), vectors.to_vec())
            .expect("equal-length vectors")
            .rank(),
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.rows, self.cols)?;
        for r in &self.data {
            let s: String = r.iter().map(|b| if b { '1' } else { '0' }).collect();
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}
