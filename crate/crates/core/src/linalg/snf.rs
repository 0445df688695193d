//! Smith normal form over ℤ by elementary operations, smallest-pivot first.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{Dense, IntegerMatrix};

/// `U·M·V = S` with `S` diagonal, `s_1 | s_2 | ⋯`, all `s_i > 0`.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    /// Nonzero diagonal entries; their count is the rank.
    pub invariants: Vec<BigInt>,
    pub transforms: Option<Transforms>,
}

#[derive(Debug, Clone)]
pub struct Transforms {
    pub u: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub v: IntegerMatrix,
    pub v_inv: IntegerMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    /// Invariant factors different from 1.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariants.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn diagonal_matrix(&self) -> IntegerMatrix {
        IntegerMatrix::from_triplets(
            self.rows,
            self.cols,
            self.invariants.iter().enumerate().map(|(i, d)| (i, i, d.clone())),
        )
    }

    pub fn transforms(&self) -> &Transforms {
        self.transforms.as_ref().expect("Smith form computed without transforms")
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    Smith::run(m, false)
}

pub fn smith_normal_form_with_transforms(m: &IntegerMatrix) -> SmithForm {
    Smith::run(m, true)
}

fn identity(n: usize) -> Dense {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

struct Smith {
    w: Dense,
    tr: Option<[Dense; 4]>,
}

impl Smith {
    fn run(a: &IntegerMatrix, track: bool) -> SmithForm {
        let (m, n) = (a.rows(), a.cols());
        let tr = track.then(|| [identity(m), identity(m), identity(n), identity(n)]);
        let mut s = Smith { w: a.to_dense(), tr };
        let mut t = 0;
        while t < m.min(n) {
            let Some((pi, pj)) = s.smallest(t..m, t..n) else { break };
            s.swap_rows(t, pi);
            s.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..m {
                    if !s.w[i][t].is_zero() {
                        let q = s.w[i][t].div_floor(&s.w[t][t]);
                        s.row_add(i, t, &-q);
                        dirty |= !s.w[i][t].is_zero();
                    }
                }
                for j in t + 1..n {
                    if !s.w[t][j].is_zero() {
                        let q = s.w[t][j].div_floor(&s.w[t][t]);
                        s.col_add(j, t, &-q);
                        dirty |= !s.w[t][j].is_zero();
                    }
                }
                if dirty {
                    // a remainder is smaller than the pivot: bring it to (t, t)
                    let col = s.smallest(t..m, t..t + 1).unwrap();
                    let row = s.smallest(t..t + 1, t..n).unwrap();
                    if s.w[col.0][col.1].magnitude() <= s.w[row.0][row.1].magnitude() {
                        s.swap_rows(t, col.0);
                    } else {
                        s.swap_cols(t, row.1);
                    }
                    continue;
                }
                if !s.w[t][t].abs().is_one() {
                    let p = s.w[t][t].clone();
                    let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s.w[i][j].is_multiple_of(&p)));
                    if let Some(i) = bad {
                        s.row_add(t, i, &BigInt::one());
                        continue;
                    }
                }
                break;
            }
            if s.w[t][t].is_negative() {
                s.negate_row(t);
            }
            t += 1;
        }
        let invariants = (0..t).map(|i| s.w[i][i].clone()).collect();
        let transforms = s.tr.map(|[u, ui, v, vi]| Transforms {
            u: IntegerMatrix::from_dense(m, m, &u),
            u_inv: IntegerMatrix::from_dense(m, m, &ui),
            v: IntegerMatrix::from_dense(n, n, &v),
            v_inv: IntegerMatrix::from_dense(n, n, &vi),
        });
        SmithForm { rows: m, cols: n, invariants, transforms }
    }

    /// Position of a nonzero entry of least absolute value in the block,
    /// first in row-major order on ties.
    fn smallest(
        &self,
        rows: core::ops::Range<usize>,
        cols: core::ops::Range<usize>,
    ) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in rows {
            for j in cols.clone() {
                let v = &self.w[i][j];
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|(a, b)| v.magnitude() < self.w[a][b].magnitude()) {
                    best = Some((i, j));
                    if v.magnitude().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    /// `row_i += q·row_s`.
    fn row_add(&mut self, i: usize, s: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        add_row(&mut self.w, i, s, q);
        if let Some([u, ui, _, _]) = &mut self.tr {
            add_row(u, i, s, q);
            add_col(ui, s, i, &-q);
        }
    }

    /// `col_j += q·col_s`.
    fn col_add(&mut self, j: usize, s: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        add_col(&mut self.w, j, s, q);
        if let Some([_, _, v, vi]) = &mut self.tr {
            add_col(v, j, s, q);
            add_row(vi, s, j, &-q);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.w.swap(a, b);
        if let Some([u, ui, _, _]) = &mut self.tr {
            u.swap(a, b);
            for row in ui.iter_mut() {
                row.swap(a, b);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for row in self.w.iter_mut() {
            row.swap(a, b);
        }
        if let Some([_, _, v, vi]) = &mut self.tr {
            for row in v.iter_mut() {
                row.swap(a, b);
            }
            vi.swap(a, b);
        }
    }

    fn negate_row(&mut self, t: usize) {
        for v in self.w[t].iter_mut() {
            *v = -core::mem::take(v);
        }
        if let Some([u, ui, _, _]) = &mut self.tr {
            for v in u[t].iter_mut() {
                *v = -core::mem::take(v);
            }
            for row in ui.iter_mut() {
                row[t] = -core::mem::take(&mut row[t]);
            }
        }
    }
}

fn add_row(d: &mut Dense, i: usize, s: usize, q: &BigInt) {
    let (src, dst) = if i < s {
        let (lo, hi) = d.split_at_mut(s);
        (&hi[0], &mut lo[i])
    } else {
        let (lo, hi) = d.split_at_mut(i);
        (&lo[s], &mut hi[0])
    };
    for (a, b) in dst.iter_mut().zip(src.iter()) {
        if !b.is_zero() {
            *a += b * q;
        }
    }
}

fn add_col(d: &mut Dense, j: usize, s: usize, q: &BigInt) {
    for row in d.iter_mut() {
        if !row[s].is_zero() {
            let delta = &row[s] * q;
            row[j] += delta;
        }
    }
}

/// Whether each column of `targets` lies in the ℤ-span of the columns of `generators`.
pub fn span_contains(generators: &IntegerMatrix, targets: &IntegerMatrix) -> Vec<bool> {
    let snf = smith_normal_form_with_transforms(generators);
    let u = &snf.transforms().u;
    let r = snf.rank();
    (0..targets.cols())
        .map(|c| {
            let mut x = vec![BigInt::zero(); targets.rows()];
            for (row, v) in targets.column(c) {
                x[*row] = v.clone();
            }
            let y = u.apply(&x);
            y.iter().enumerate().all(|(i, yi)| {
                if i < r {
                    yi.is_multiple_of(&snf.invariants[i])
                } else {
                    yi.is_zero()
                }
            })
        })
        .collect()
}
