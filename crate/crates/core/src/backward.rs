//! Redundant coordinate sets and the backward-reduction family.
//!
//! Coordinates i and j are redundant for a code when every codeword satisfies
//! `c_j = a * c_i` for a fixed nonzero scalar a; the repetition number is the
//! size of the largest such set, and it equals the largest achievable last
//! epipodal length over all proper bases of the code. Finding it is a
//! column-grouping pass, which makes backward reduction cheap even at large
//! block sizes.

use crate::gf::{Elt, Field};
use crate::linalg::{CodeBasis, SqMat, Word};
use crate::reduce::IterationCounters;
use crate::{Error, Result};

/// A maximal redundant coordinate class: every codeword satisfies
/// `c_{coords[t]} = scalars[t] * c_{base}` with `base = coords[0]`.
#[derive(Clone, Debug)]
pub struct RedundantSet {
    pub coords: Vec<usize>,
    pub base: usize,
    pub scalars: Vec<Elt>,
}

impl RedundantSet {
    pub fn size(&self) -> usize {
        self.coords.len()
    }
}

enum ColumnKey {
    Packed(Vec<(u64, usize)>),
    General(Vec<(Vec<Elt>, usize)>),
}

/// Finds a redundant set of maximal size (the repetition number of the
/// code). Ties among equally large classes go to the lexicographically
/// smallest normalized column, read top row first.
pub fn max_redundant_set(basis: &CodeBasis) -> RedundantSet {
    let k = basis.k();
    let n = basis.n();
    let f = basis.field().clone();
    debug_assert!(k > 0, "a full-rank basis has nonempty support");

    // Normalize each nonzero column so its first nonzero entry is 1, then
    // group equal columns.
    let keys = if f.q() == 2 && k <= 64 {
        let mut v: Vec<(u64, usize)> = Vec::with_capacity(n);
        for j in 0..n {
            let mut key = 0u64;
            for r in 0..k {
                key = key << 1 | basis.row(r).get(j) as u64;
            }
            if key != 0 {
                v.push((key, j));
            }
        }
        v.sort_unstable();
        ColumnKey::Packed(v)
    } else {
        let mut v: Vec<(Vec<Elt>, usize)> = Vec::with_capacity(n);
        for j in 0..n {
            let col: Vec<Elt> = (0..k).map(|r| basis.row(r).get(j)).collect();
            let Some(lead) = col.iter().find(|&&e| e != 0) else {
                continue;
            };
            let inv = f.inv_nz(*lead);
            let norm: Vec<Elt> = col.iter().map(|&e| f.mul(e, inv)).collect();
            v.push((norm, j));
        }
        v.sort_unstable();
        ColumnKey::General(v)
    };

    let coords = match keys {
        ColumnKey::Packed(v) => largest_class(&v),
        ColumnKey::General(v) => largest_class(&v),
    };
    let base = coords[0];
    let lead_row = (0..k)
        .find(|&r| basis.row(r).get(base) != 0)
        .expect("class columns are nonzero");
    let base_lead = basis.row(lead_row).get(base);
    let scalars = coords
        .iter()
        .map(|&j| f.mul(basis.row(lead_row).get(j), f.inv_nz(base_lead)))
        .collect();
    RedundantSet {
        coords,
        base,
        scalars,
    }
}

fn largest_class<K: Ord>(sorted: &[(K, usize)]) -> Vec<usize> {
    debug_assert!(!sorted.is_empty());
    let mut best: Option<(usize, usize)> = None; // (start, len)
    let mut start = 0;
    while start < sorted.len() {
        let mut end = start + 1;
        while end < sorted.len() && sorted[end].0 == sorted[start].0 {
            end += 1;
        }
        let len = end - start;
        // Keys ascend, so a strictly larger class is required to displace an
        // earlier (lexicographically smaller) one.
        if best.map_or(true, |(_, l)| len > l) {
            best = Some((start, len));
        }
        start = end;
    }
    let (s, l) = best.unwrap();
    let mut coords: Vec<usize> = sorted[s..s + l].iter().map(|&(_, j)| j).collect();
    coords.sort_unstable();
    coords
}

/// Pigeonhole lower bound on the repetition number of a dimension-k code
/// with the given support size: ceil((q-1) * support / (q^k - 1)).
pub fn eta_lower_bound(q: u32, k: u32, support: usize) -> usize {
    if support == 0 {
        return 0;
    }
    let num = (q as u128 - 1) * support as u128;
    let mut den = 1u128;
    for _ in 0..k {
        den = den.saturating_mul(q as u128);
        if den > num {
            // ceil of a value in (0, 1] is 1.
            return 1;
        }
    }
    den -= 1;
    num.div_ceil(den) as usize
}

/// Transform A such that `A * basis` is proper with last epipodal length
/// equal to the repetition number. The redundant columns of the pivot row are
/// eliminated from every other row, then the pivot row rotates to the end.
pub fn backward_reduce(basis: &CodeBasis) -> Result<SqMat> {
    if !basis.is_proper() {
        return Err(Error::NotProper);
    }
    let k = basis.k();
    let f = basis.field().clone();
    let set = max_redundant_set(basis);
    let j1 = set.base;
    let m = (0..k)
        .find(|&r| basis.row(r).get(j1) != 0)
        .expect("redundant coordinates lie in the support");
    let mut a = SqMat::identity(f.clone(), k);
    let pivot_inv = f.inv_nz(basis.row(m).get(j1));
    for i in m + 1..k {
        let c = basis.row(i).get(j1);
        if c != 0 {
            a.row_add_scaled(i, m, f.neg(f.mul(c, pivot_inv)));
        }
    }
    a.rotate_row_to_end(m);
    Ok(a)
}

/// Backward reduces every prefix `rows 0..i` for i = tau down to 1, touching
/// each prefix exactly once. The code and properness are preserved.
pub fn full_backward_reduce(
    basis: &CodeBasis,
    tau: usize,
) -> Result<(CodeBasis, IterationCounters)> {
    if tau == 0 || tau > basis.k() {
        return Err(Error::InvalidParameter(format!(
            "threshold {tau} out of range 1..={}",
            basis.k()
        )));
    }
    if !basis.is_proper() {
        return Err(Error::NotProper);
    }
    let mut out = basis.clone();
    let mut counters = IterationCounters::default();
    for i in (1..=tau).rev() {
        counters.loop_iterations += 1;
        let before = out.epipodal_len(i - 1);
        let prefix = out.block(0, i - 1).rows;
        let a = backward_reduce(&prefix)?;
        out.apply_block_transform(0, i - 1, &a)?;
        if out.epipodal_len(i - 1) != before {
            counters.backward_updates += 1;
        }
    }
    Ok((out, counters))
}

/// Default threshold used by the harness and the CLI: 3 * ceil(log_q n).
pub fn default_tau(q: u32, n: usize, k: usize) -> usize {
    let mut logq = 0usize;
    let mut acc = 1u128;
    while acc < n as u128 {
        acc *= q as u128;
        logq += 1;
    }
    (3 * logq.max(1)).min(k)
}

/// Backward reduction that deliberately restricts each prefix step to a
/// growing window of leading columns. Takes a raw matrix, systematizes on the
/// first k independent columns, and fails retryably when those do not lie
/// within the first k + beta columns.
pub fn selective_backward_reduce(
    field: &std::sync::Arc<Field>,
    rows: &[Word],
    beta: usize,
) -> Result<CodeBasis> {
    let k = rows.len();
    if k == 0 {
        return Err(Error::InvalidParameter("empty matrix".into()));
    }
    let n = rows[0].len();
    if beta < 2 {
        return Err(Error::InvalidParameter("block width must be at least 2".into()));
    }
    if n <= k || (n - k) % beta != 0 {
        return Err(Error::InvalidParameter(format!(
            "block width {beta} must divide n - k = {}",
            n as i64 - k as i64
        )));
    }
    let raw = CodeBasis::from_rows_unchecked(field.clone(), n, rows.to_vec());
    let (mut basis, pivots, _) = raw
        .systematize_full(None)
        .map_err(|_| Error::RetryableSystematization)?;
    if pivots.iter().any(|&c| c >= k + beta) {
        return Err(Error::RetryableSystematization);
    }

    let steps = (n - k) / beta - 1;
    let mut j = k + 2 * beta;
    for i in (1..=steps).rev() {
        let window: Vec<Word> = basis.rows()[..i].iter().map(|r| r.truncated(j)).collect();
        let sub = CodeBasis::from_rows_unchecked(field.clone(), j, window);
        debug_assert!(sub.is_proper());
        let a = backward_reduce(&sub)?;
        basis.apply_block_transform(0, i - 1, &a)?;
        j += beta;
    }
    debug_assert!(basis.is_proper());
    Ok(basis)
}
