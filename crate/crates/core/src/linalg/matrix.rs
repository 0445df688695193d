use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Row-major dense integer matrix, used as scratch space by the Smith form.
pub type Dense = Vec<Vec<BigInt>>;

/// Sparse integer matrix stored by columns; every column is sorted by row
/// and holds no explicit zeros, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, BigInt)>>,
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntegerMatrix {}×{}", self.rows, self.cols)?;
        if self.rows * self.cols <= 400 {
            for row in self.to_dense() {
                let cells: Vec<_> = row.iter().map(|v| format!("{v:>3}")).collect();
                writeln!(f, "  [{}]", cells.join(" "))?;
            }
        }
        Ok(())
    }
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, BigInt::one())]).collect();
        IntegerMatrix { rows: n, cols: n, data }
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let data = entries
            .iter()
            .enumerate()
            .map(|(i, v)| if v.is_zero() { Vec::new() } else { vec![(i, v.clone())] })
            .collect();
        IntegerMatrix { rows: n, cols: n, data }
    }

    /// Accumulates `(row, col, value)` triplets, summing duplicates.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, BigInt)>,
    ) -> Self {
        let mut data: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); cols];
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}×{cols}");
            data[c].push((r, v));
        }
        for col in &mut data {
            *col = normalize_column(core::mem::take(col));
        }
        IntegerMatrix { rows, cols, data }
    }

    /// Builds a matrix column by column from sparse `(row, value)` lists.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, BigInt)>>) -> Self {
        let cols = columns.len();
        let data = columns
            .into_iter()
            .map(|c| {
                assert!(c.iter().all(|(r, _)| *r < rows));
                normalize_column(c)
            })
            .collect();
        IntegerMatrix { rows, cols, data }
    }

    pub fn from_dense(rows: usize, cols: usize, dense: &[Vec<BigInt>]) -> Self {
        let mut data = vec![Vec::new(); cols];
        for (r, row) in dense.iter().enumerate().take(rows) {
            for (c, v) in row.iter().enumerate().take(cols) {
                if !v.is_zero() {
                    data[c].push((r, v.clone()));
                }
            }
        }
        IntegerMatrix { rows, cols, data }
    }

    /// Row-major small-integer literal, mostly for tests.
    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let dense: Dense = rows.iter().map(|row| row.iter().map(|&v| BigInt::from(v)).collect()).collect();
        Self::from_dense(r, c, &dense)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &[(usize, BigInt)] {
        &self.data[c]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        match self.data[c].binary_search_by_key(&r, |(i, _)| *i) {
            Ok(k) => self.data[c][k].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// Nonzero entries in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.data.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, BigInt)> {
        self.entries().min_by_key(|(r, c, _)| (*r, *c)).map(|(r, c, v)| (r, c, v.clone()))
    }

    pub fn to_dense(&self) -> Dense {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (r, c, v) in self.entries() {
            out[r][c] = v.clone();
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![Vec::new(); self.rows];
        for (r, c, v) in self.entries() {
            data[r].push((c, v.clone()));
        }
        // entries() walks columns in order, so each new column is already sorted
        IntegerMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut acc: Vec<BigInt> = vec![BigInt::zero(); self.rows];
        let mut touched: Vec<usize> = Vec::new();
        let mut data = Vec::with_capacity(other.cols);
        for col in &other.data {
            for (k, b) in col {
                for (i, a) in &self.data[*k] {
                    if acc[*i].is_zero() {
                        touched.push(*i);
                    }
                    acc[*i] += a * b;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut out = Vec::with_capacity(touched.len());
            for &i in &touched {
                let v = core::mem::take(&mut acc[i]);
                if !v.is_zero() {
                    out.push((i, v));
                }
            }
            touched.clear();
            data.push(out);
        }
        Ok(IntegerMatrix { rows: self.rows, cols: other.cols, data })
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.cols);
        let mut out = vec![BigInt::zero(); self.rows];
        for (c, xc) in x.iter().enumerate() {
            if xc.is_zero() {
                continue;
            }
            for (r, v) in &self.data[c] {
                out[*r] += v * xc;
            }
        }
        out
    }

    pub fn add(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        self.combine(other, BigInt::one())
    }

    pub fn sub(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        self.combine(other, -BigInt::one())
    }

    /// `self + s·other`.
    pub fn combine(&self, other: &IntegerMatrix, s: BigInt) -> Result<IntegerMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension(format!(
                "cannot add {}×{} and {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut col = a.clone();
                col.extend(b.iter().map(|(r, v)| (*r, v * &s)));
                normalize_column(col)
            })
            .collect();
        Ok(IntegerMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, s: &BigInt) -> IntegerMatrix {
        if s.is_zero() {
            return IntegerMatrix::zeros(self.rows, self.cols);
        }
        let data = self.data.iter().map(|c| c.iter().map(|(r, v)| (*r, v * s)).collect()).collect();
        IntegerMatrix { rows: self.rows, cols: self.cols, data }
    }

    /// Keeps the listed rows (in the given order).
    pub fn select_rows(&self, keep: &[usize]) -> IntegerMatrix {
        let mut pos = vec![usize::MAX; self.rows];
        for (new, &old) in keep.iter().enumerate() {
            pos[old] = new;
        }
        let data = self
            .data
            .iter()
            .map(|col| {
                let mut c: Vec<_> =
                    col.iter().filter(|(r, _)| pos[*r] != usize::MAX).map(|(r, v)| (pos[*r], v.clone())).collect();
                c.sort_by_key(|(r, _)| *r);
                c
            })
            .collect();
        IntegerMatrix { rows: keep.len(), cols: self.cols, data }
    }

    pub fn select_columns(&self, keep: &[usize]) -> IntegerMatrix {
        let data = keep.iter().map(|&c| self.data[c].clone()).collect();
        IntegerMatrix { rows: self.rows, cols: keep.len(), data }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.rows != other.rows {
            return Err(Error::Dimension(format!("hstack of {} and {} rows", self.rows, other.rows)));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(IntegerMatrix { rows: self.rows, cols: self.cols + other.cols, data })
    }

    /// Reduces every entry modulo `m` into `[0, m)`.
    pub fn reduce_mod(&self, m: &BigInt) -> IntegerMatrix {
        use num_integer::Integer;
        let data = self
            .data
            .iter()
            .map(|c| c.iter().map(|(r, v)| (*r, v.mod_floor(m))).filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        IntegerMatrix { rows: self.rows, cols: self.cols, data }
    }
}

fn normalize_column(mut col: Vec<(usize, BigInt)>) -> Vec<(usize, BigInt)> {
    col.sort_by_key(|(r, _)| *r);
    let mut out: Vec<(usize, BigInt)> = Vec::with_capacity(col.len());
    for (r, v) in col {
        match out.last_mut() {
            Some((lr, lv)) if *lr == r => *lv += v,
            _ => out.push((r, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}
