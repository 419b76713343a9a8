use std::sync::Arc;

use crate::gf::{Elt, Field};
use crate::linalg::{mat, Mask, SqMat, Word};
use crate::{Error, Result};

/// Epipodal lengths `l_1..l_k` of a basis with the derived quality metrics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    pub lengths: Vec<usize>,
}

impl Profile {
    /// Number of epipodal vectors longer than one.
    pub fn k1(&self) -> usize {
        self.lengths.iter().filter(|&&l| l > 1).count()
    }

    /// Largest index (1-based) of an epipodal vector longer than one, 0 if none.
    pub fn k1_star(&self) -> usize {
        self.lengths
            .iter()
            .rposition(|&l| l > 1)
            .map_or(0, |i| i + 1)
    }

    pub fn support_size(&self) -> usize {
        self.lengths.iter().sum()
    }
}

/// A full-rank k x n generator matrix together with the cached support
/// prefixes `s_0..s_k`, where `s_i` is the support indicator of the span of
/// the first i rows. Blocks, epipodal vectors and projections all come out of
/// the prefix cache, and block operations recompute only the prefixes they
/// touch.
#[derive(Clone, Debug)]
pub struct CodeBasis {
    field: Arc<Field>,
    n: usize,
    rows: Vec<Word>,
    prefix: Vec<Mask>,
}

/// A projected block `rows i..=j` of an origin basis: row t of the block is
/// row `start + t` of the origin with the coordinates in `s_start` zeroed.
#[derive(Clone, Debug)]
pub struct Block {
    pub start: usize,
    pub end: usize,
    pub rows: CodeBasis,
}

impl CodeBasis {
    /// Validates that the rows are independent and share field and length.
    pub fn from_rows(rows: Vec<Word>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidParameter("empty basis needs a field; use empty()".into()));
        }
        let field = rows[0].field().clone();
        let n = rows[0].len();
        for r in &rows {
            if r.field() != &field {
                return Err(Error::FieldMismatch);
            }
            if r.len() != n {
                return Err(Error::LengthMismatch(r.len(), n));
            }
        }
        if mat::rank(&rows) != rows.len() {
            return Err(Error::RankDeficient);
        }
        Ok(Self::from_rows_unchecked(field, n, rows))
    }

    /// Dimension-zero basis (the trivial code {0}).
    pub fn empty(field: Arc<Field>, n: usize) -> Self {
        Self::from_rows_unchecked(field, n, Vec::new())
    }

    pub(crate) fn from_rows_unchecked(field: Arc<Field>, n: usize, rows: Vec<Word>) -> Self {
        let mut basis = CodeBasis {
            field,
            n,
            rows,
            prefix: Vec::new(),
        };
        basis.rebuild_prefix();
        basis
    }

    fn rebuild_prefix(&mut self) {
        let k = self.rows.len();
        let mut prefix = Vec::with_capacity(k + 1);
        prefix.push(Mask::none(self.n));
        for i in 0..k {
            let mut next = prefix[i].clone();
            next.or_assign(&self.rows[i].support());
            prefix.push(next);
        }
        self.prefix = prefix;
    }

    /// Recompute `s_lo..=s_hi` after rows in `lo..=hi` changed.
    fn refresh_prefix(&mut self, lo: usize, hi: usize) {
        for i in lo..=hi {
            let mut next = self.prefix[i].clone();
            next.or_assign(&self.rows[i].support());
            self.prefix[i + 1] = next;
        }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn k(&self) -> usize {
        self.rows.len()
    }
    pub fn row(&self, i: usize) -> &Word {
        &self.rows[i]
    }
    pub fn rows(&self) -> &[Word] {
        &self.rows
    }
    /// Support prefix `s_i` (i in 0..=k).
    pub fn support_prefix(&self, i: usize) -> &Mask {
        &self.prefix[i]
    }
    /// Support size of the code.
    pub fn code_support(&self) -> usize {
        self.prefix[self.k()].count()
    }

    /// The i-th epipodal vector (0-based): row i with the coordinates lying
    /// in the support of rows `0..i` zeroed out.
    pub fn epipodal(&self, i: usize) -> Word {
        self.rows[i].project_orthogonal(&self.prefix[i])
    }

    pub fn epipodal_len(&self, i: usize) -> usize {
        self.rows[i].weight_orthogonal(&self.prefix[i])
    }

    pub fn profile(&self) -> Profile {
        Profile {
            lengths: (0..self.k()).map(|i| self.epipodal_len(i)).collect(),
        }
    }

    /// Epipodal matrix plus profile, straight from the prefix cache.
    pub fn epipodal_matrix(&self) -> (Vec<Word>, Profile) {
        let rows: Vec<Word> = (0..self.k()).map(|i| self.epipodal(i)).collect();
        let lengths = rows.iter().map(|w| w.weight()).collect();
        (rows, Profile { lengths })
    }

    pub fn is_proper(&self) -> bool {
        (0..self.k()).all(|i| self.epipodal_len(i) > 0)
    }

    /// Projected block over rows `lo..=hi` (0-based, `hi` clamped to k-1).
    pub fn block(&self, lo: usize, hi: usize) -> Block {
        let hi = hi.min(self.k() - 1);
        assert!(lo <= hi && hi < self.k());
        let mask = &self.prefix[lo];
        let rows: Vec<Word> = (lo..=hi)
            .map(|i| self.rows[i].project_orthogonal(mask))
            .collect();
        Block {
            start: lo,
            end: hi,
            rows: Self::from_rows_unchecked(self.field.clone(), self.n, rows),
        }
    }

    /// Left-multiplies rows `lo..=hi` by the invertible matrix `a`, leaving
    /// all other rows untouched and refreshing only `s_lo..=s_hi`. Epipodal
    /// vectors outside the range and the profile sum over the range are
    /// unchanged.
    pub fn apply_block_transform(&mut self, lo: usize, hi: usize, a: &SqMat) -> Result<()> {
        let hi = hi.min(self.k() - 1);
        if lo > hi || hi >= self.k() {
            return Err(Error::InvalidParameter(format!(
                "block {lo}..={hi} out of range for k={}",
                self.k()
            )));
        }
        let width = hi - lo + 1;
        if a.dim() != width {
            return Err(Error::InvalidParameter(format!(
                "transform dimension {} does not match block width {width}",
                a.dim()
            )));
        }
        if !a.is_invertible() {
            return Err(Error::Singular);
        }
        let mut new_rows = Vec::with_capacity(width);
        for t in 0..width {
            let mut acc = Word::zero(self.field.clone(), self.n);
            for s in 0..width {
                let c = a.get(t, s);
                if c != 0 {
                    acc.add_scaled_assign(&self.rows[lo + s], c)?;
                }
            }
            new_rows.push(acc);
        }
        for (t, row) in new_rows.into_iter().enumerate() {
            self.rows[lo + t] = row;
        }
        self.refresh_prefix(lo, hi);
        Ok(())
    }

    /// b_j += c * b_i with i < j; this changes neither the code nor any
    /// epipodal vector.
    pub fn add_row_multiple(&mut self, i: usize, j: usize, c: Elt) -> Result<()> {
        if i >= j || j >= self.k() {
            return Err(Error::InvalidParameter(format!(
                "add_row_multiple needs i < j < k, got i={i} j={j} k={}",
                self.k()
            )));
        }
        if c == 0 {
            return Ok(());
        }
        let src = self.rows[i].clone();
        self.rows[j].add_scaled_assign(&src, c)?;
        self.refresh_prefix(j, j);
        Ok(())
    }

    /// Returns `(B|_S)^{-1} B`. With `S = None` the lexicographically first
    /// information set is used. The result is proper.
    pub fn systematize(&self, s: Option<&[usize]>) -> Result<CodeBasis> {
        let (basis, _, _) = self.systematize_full(s)?;
        Ok(basis)
    }

    /// Systematization that also reports the pivot set and the transform P
    /// with `P * self = result`.
    pub(crate) fn systematize_full(
        &self,
        s: Option<&[usize]>,
    ) -> Result<(CodeBasis, Vec<usize>, SqMat)> {
        let k = self.k();
        let f = self.field.clone();
        let mut work = self.rows.to_vec();
        let mut trans = SqMat::identity(f.clone(), k);
        let mut pivots = Vec::with_capacity(k);

        let eliminate_at = |work: &mut Vec<Word>, trans: &mut SqMat, col: usize, r: usize| -> bool {
            let Some(p) = (r..k).find(|&t| work[t].get(col) != 0) else {
                return false;
            };
            work.swap(r, p);
            trans.swap_rows(r, p);
            let inv = f.inv_nz(work[r].get(col));
            work[r].scale_assign(inv);
            trans.scale_row(r, inv);
            let pivot_row = work[r].clone();
            for t in 0..k {
                if t != r {
                    let c = work[t].get(col);
                    if c != 0 {
                        let nc = f.neg(c);
                        work[t].add_scaled_assign(&pivot_row, nc).unwrap();
                        trans.row_add_scaled(t, r, nc);
                    }
                }
            }
            true
        };

        match s {
            Some(cols) => {
                if cols.len() != k {
                    return Err(Error::InvalidParameter(format!(
                        "information set has {} columns, expected k={k}",
                        cols.len()
                    )));
                }
                let mut sorted = cols.to_vec();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != k || sorted.iter().any(|&c| c >= self.n) {
                    return Err(Error::InvalidParameter("invalid information set".into()));
                }
                for (r, &col) in sorted.iter().enumerate() {
                    if !eliminate_at(&mut work, &mut trans, col, r) {
                        return Err(Error::Singular);
                    }
                    pivots.push(col);
                }
            }
            None => {
                let mut r = 0;
                for col in 0..self.n {
                    if r == k {
                        break;
                    }
                    if eliminate_at(&mut work, &mut trans, col, r) {
                        pivots.push(col);
                        r += 1;
                    }
                }
                if r < k {
                    return Err(Error::RankDeficient);
                }
            }
        }
        let basis = Self::from_rows_unchecked(self.field.clone(), self.n, work);
        Ok((basis, pivots, trans))
    }

    /// Row-space equality with another basis.
    pub fn same_code(&self, other: &CodeBasis) -> bool {
        self.k() == other.k() && self.n == other.n && mat::same_row_space(&self.rows, &other.rows)
    }

    #[cfg(test)]
    pub(crate) fn assert_prefix_consistent(&self) {
        let rebuilt = {
            let mut b = self.clone();
            b.rebuild_prefix();
            b.prefix
        };
        assert_eq!(self.prefix, rebuilt, "support prefix cache out of sync");
    }
}
