use std::sync::Arc;

use crate::gf::{Elt, Field};
use crate::linalg::Word;
use crate::{Error, Result};

/// Small dense square matrix over F_q, used for the linear transformations
/// that reduction steps apply to blocks of a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqMat {
    field: Arc<Field>,
    dim: usize,
    data: Vec<Elt>,
}

impl SqMat {
    pub fn identity(field: Arc<Field>, dim: usize) -> Self {
        let mut data = vec![0; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = 1;
        }
        SqMat { field, dim, data }
    }

    pub fn from_rows(field: Arc<Field>, rows: &[Vec<Elt>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::LengthMismatch(row.len(), dim));
            }
            for &e in row {
                if !field.is_valid(e) {
                    return Err(Error::InvalidElement(e as u32, field.q()));
                }
                data.push(e);
            }
        }
        Ok(SqMat { field, dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elt {
        self.data[r * self.dim + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elt) {
        self.data[r * self.dim + c] = v;
    }

    /// row_i += c * row_m
    pub fn row_add_scaled(&mut self, i: usize, m: usize, c: Elt) {
        if c == 0 {
            return;
        }
        let f = self.field.clone();
        for col in 0..self.dim {
            let v = f.add(self.get(i, col), f.mul(c, self.get(m, col)));
            self.set(i, col, v);
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for col in 0..self.dim {
            let x = self.get(a, col);
            let y = self.get(b, col);
            self.set(a, col, y);
            self.set(b, col, x);
        }
    }

    pub fn scale_row(&mut self, r: usize, c: Elt) {
        let f = self.field.clone();
        for col in 0..self.dim {
            self.set(r, col, f.mul(self.get(r, col), c));
        }
    }

    /// Moves row `from` to position `to`, shifting the rows in between.
    pub fn rotate_row_to_end(&mut self, from: usize) {
        for r in from..self.dim - 1 {
            self.swap_rows(r, r + 1);
        }
    }

    pub fn mul(&self, rhs: &SqMat) -> SqMat {
        debug_assert_eq!(self.dim, rhs.dim);
        let f = &self.field;
        let mut out = SqMat {
            field: self.field.clone(),
            dim: self.dim,
            data: vec![0; self.dim * self.dim],
        };
        for i in 0..self.dim {
            for t in 0..self.dim {
                let a = self.get(i, t);
                if a == 0 {
                    continue;
                }
                for j in 0..self.dim {
                    let b = rhs.get(t, j);
                    if b != 0 {
                        let v = f.add(out.get(i, j), f.mul(a, b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn is_invertible(&self) -> bool {
        let f = self.field.clone();
        let mut m = self.clone();
        for col in 0..self.dim {
            let pivot = (col..self.dim).find(|&r| m.get(r, col) != 0);
            let Some(p) = pivot else { return false };
            m.swap_rows(col, p);
            let inv = f.inv_nz(m.get(col, col));
            m.scale_row(col, inv);
            for r in 0..self.dim {
                if r != col {
                    let c = m.get(r, col);
                    if c != 0 {
                        m.row_add_scaled(r, col, f.neg(c));
                    }
                }
            }
        }
        true
    }
}

/// Rank of a list of rows, by elimination on a scratch copy.
pub fn rank(rows: &[Word]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let n = rows[0].len();
    let mut work: Vec<Word> = rows.to_vec();
    let f = work[0].field().clone();
    let mut r = 0;
    for col in 0..n {
        if r == work.len() {
            break;
        }
        let Some(p) = (r..work.len()).find(|&t| work[t].get(col) != 0) else {
            continue;
        };
        work.swap(r, p);
        let inv = f.inv_nz(work[r].get(col));
        work[r].scale_assign(inv);
        let pivot_row = work[r].clone();
        for (t, row) in work.iter_mut().enumerate() {
            if t != r {
                let c = row.get(col);
                if c != 0 {
                    row.add_scaled_assign(&pivot_row, f.neg(c)).unwrap();
                }
            }
        }
        r += 1;
    }
    r
}

/// Do two row lists span the same subspace?
pub fn same_row_space(a: &[Word], b: &[Word]) -> bool {
    let ra = rank(a);
    let rb = rank(b);
    if ra != rb {
        return false;
    }
    let mut stacked: Vec<Word> = a.to_vec();
    stacked.extend_from_slice(b);
    rank(&stacked) == ra
}

/// Solves x * rows = target, returning the coefficient vector if target lies
/// in the row space.
pub fn solve_combination(rows: &[Word], target: &Word) -> Option<Vec<Elt>> {
    let k = rows.len();
    if k == 0 {
        return target.is_zero().then(Vec::new);
    }
    let f = rows[0].field().clone();
    let n = rows[0].len();
    let mut work: Vec<Word> = rows.to_vec();
    // trans[r] expresses work[r] as a combination of the original rows.
    let mut trans = SqMat::identity(f.clone(), k);
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut r = 0;
    for col in 0..n {
        if r == k {
            break;
        }
        let Some(p) = (r..k).find(|&t| work[t].get(col) != 0) else {
            continue;
        };
        work.swap(r, p);
        trans.swap_rows(r, p);
        let inv = f.inv_nz(work[r].get(col));
        work[r].scale_assign(inv);
        trans.scale_row(r, inv);
        let pivot_row = work[r].clone();
        let trans_row: Vec<Elt> = (0..k).map(|j| trans.get(r, j)).collect();
        for t in 0..k {
            if t != r {
                let c = work[t].get(col);
                if c != 0 {
                    let nc = f.neg(c);
                    work[t].add_scaled_assign(&pivot_row, nc).unwrap();
                    for (j, &tv) in trans_row.iter().enumerate() {
                        let v = f.add(trans.get(t, j), f.mul(nc, tv));
                        trans.set(t, j, v);
                    }
                }
            }
        }
        pivots.push((r, col));
        r += 1;
    }
    let mut residual = target.clone();
    let mut coeff = vec![0 as Elt; k];
    for &(row, col) in &pivots {
        let c = residual.get(col);
        if c != 0 {
            residual.add_scaled_assign(&work[row], f.neg(c)).unwrap();
            for j in 0..k {
                let v = f.add(coeff[j], f.mul(c, trans.get(row, j)));
                coeff[j] = v;
            }
        }
    }
    residual.is_zero().then_some(coeff)
}
