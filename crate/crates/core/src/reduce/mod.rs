//! The reduction algorithms: block reduction (LLL as block size 2), slide
//! reduction, one-block search, and approximate Griesmer reduction.
//!
//! All of them preserve the code and properness, and every run reports its
//! loop and update counts so callers can assert the termination bounds.

mod oracle;

pub use oracle::{exhaustive_shortest, shortest_pair_coefficients, ShortestOracle};

use serde::{Deserialize, Serialize};

use crate::backward::{backward_reduce, max_redundant_set};
use crate::linalg::{CodeBasis, Word};
use crate::proper::{insert_primitive, make_primitive};
use crate::{Error, Result};

/// Loop and update counts of a reduction run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterationCounters {
    pub loop_iterations: u64,
    pub forward_updates: u64,
    pub backward_updates: u64,
}

/// Shortest word of the projected block `rows lo..=hi` via the oracle, with
/// a two-row fast path for exact oracles.
fn block_minimum(
    basis: &CodeBasis,
    lo: usize,
    hi: usize,
    oracle: &mut ShortestOracle,
) -> Result<(usize, Word)> {
    if hi - lo + 1 == 2 {
        if let ShortestOracle::Exhaustive { .. } = oracle {
            let mask = basis.support_prefix(lo);
            let r1 = basis.row(lo).project_orthogonal(mask);
            let r2 = basis.row(lo + 1).project_orthogonal(mask);
            let (_, word) = shortest_pair_coefficients(&r1, &r2)?;
            return Ok((word.weight(), word));
        }
    }
    let block = basis.block(lo, hi);
    let word = oracle.shortest(&block.rows)?;
    Ok((word.weight(), word))
}

/// Block reduction: repeatedly ensures the first epipodal vector of each
/// width-beta block is a shortest nonzero codeword of that block, rewinding
/// after every insertion. `beta = 2` is the classic sweep with the proven
/// `2nk + k` iteration bound, which doubles as its cap; larger block sizes
/// take a practical default cap of `10^4 * n * k` (override with `cap`).
///
/// A block already holding a word of minimal weight is left alone even when a
/// different word of the same weight exists, so every update strictly
/// shortens the block head.
pub fn bkz_reduce(
    basis: &CodeBasis,
    beta: usize,
    oracle: &mut ShortestOracle,
    cap: Option<u64>,
) -> Result<(CodeBasis, IterationCounters)> {
    let k = basis.k();
    let n = basis.n();
    if beta < 2 || beta > k {
        return Err(Error::InvalidParameter(format!(
            "block size {beta} out of range 2..={k}"
        )));
    }
    if !basis.is_proper() {
        return Err(Error::NotProper);
    }
    let cap = cap.unwrap_or(if beta == 2 {
        2 * (n as u64) * (k as u64) + k as u64
    } else {
        10_000 * (n as u64) * (k as u64)
    });
    let mut b = basis.clone();
    let mut counters = IterationCounters::default();
    let mut i = 0usize;
    while i < k - 1 {
        counters.loop_iterations += 1;
        if counters.loop_iterations > cap {
            return Err(Error::CapExhausted {
                cap,
                partial: Box::new(b),
                counters,
            });
        }
        let j = (i + beta - 1).min(k - 1);
        let ell = b.epipodal_len(i);
        let (min_w, word) = block_minimum(&b, i, j, oracle)?;
        if min_w < ell {
            let block = b.block(i, j);
            let a = insert_primitive(&block.rows, &word)?;
            b.apply_block_transform(i, j, &a)?;
            counters.forward_updates += 1;
            i = i.saturating_sub(beta - 1);
        } else {
            i += 1;
        }
    }
    Ok((b, counters))
}

/// LLL for codes: block reduction at block size 2.
pub fn lll_reduce(
    basis: &CodeBasis,
    oracle: &mut ShortestOracle,
) -> Result<(CodeBasis, IterationCounters)> {
    bkz_reduce(basis, 2, oracle, None)
}

/// Is the last epipodal length of the block `rows lo..=hi` already maximal
/// (equal to the repetition number of the block code)?
fn backward_reduced(basis: &CodeBasis, lo: usize, hi: usize) -> bool {
    let block = basis.block(lo, hi);
    let eta = max_redundant_set(&block.rows).size();
    let last = basis.epipodal_len(hi);
    debug_assert!(last <= eta);
    last == eta
}

/// Slide reduction: disjoint width-beta blocks are forward reduced and the
/// shifted blocks in between are backward reduced. The loop provably runs at
/// most `4kn / beta` times; exceeding that cap is reported as an error
/// carrying the partial basis.
pub fn slide_reduce(
    basis: &CodeBasis,
    beta: usize,
    oracle: &mut ShortestOracle,
) -> Result<(CodeBasis, IterationCounters)> {
    let k = basis.k();
    let n = basis.n();
    if beta < 2 || beta > k {
        return Err(Error::InvalidParameter(format!(
            "block size {beta} out of range 2..={k}"
        )));
    }
    if k % beta != 0 {
        return Err(Error::InvalidParameter(format!(
            "block size {beta} must divide k = {k}"
        )));
    }
    if !basis.is_proper() {
        return Err(Error::NotProper);
    }
    let p = k / beta;
    let cap = 4 * (k as u64) * (n as u64) / beta as u64;
    let mut b = basis.clone();
    let mut counters = IterationCounters::default();
    let mut i = 0usize;
    while i < p {
        counters.loop_iterations += 1;
        if counters.loop_iterations > cap {
            return Err(Error::CapExhausted {
                cap,
                partial: Box::new(b),
                counters,
            });
        }
        let lo = i * beta;
        let hi = lo + beta - 1;
        let ell = b.epipodal_len(lo);
        let (min_w, word) = block_minimum(&b, lo, hi, oracle)?;
        if min_w < ell {
            let block = b.block(lo, hi);
            let a = insert_primitive(&block.rows, &word)?;
            b.apply_block_transform(lo, hi, &a)?;
            counters.forward_updates += 1;
            i = i.saturating_sub(1);
        } else if i + 2 <= p && !backward_reduced(&b, lo + 1, hi + 1) {
            let block = b.block(lo + 1, hi + 1);
            let a = backward_reduce(&block.rows)?;
            b.apply_block_transform(lo + 1, hi + 1, &a)?;
            counters.backward_updates += 1;
            i = i.saturating_sub(1);
        } else {
            i += 1;
        }
    }
    Ok((b, counters))
}

/// Systematize, then return a shortest nonzero codeword of the subcode
/// spanned by the first beta rows. With `beta = ceil(log_q n)` the output
/// meets the Griesmer-shaped bound while staying polynomial.
pub fn one_block_shortest(
    basis: &CodeBasis,
    beta: usize,
    oracle: &mut ShortestOracle,
) -> Result<Word> {
    if beta < 2 || beta > basis.k() {
        return Err(Error::InvalidParameter(format!(
            "block size {beta} out of range 2..={}",
            basis.k()
        )));
    }
    let sys = basis.systematize(None)?;
    let block = sys.block(0, beta - 1);
    oracle.shortest(&block.rows)
}

/// For each row in turn, find a short word of the trailing projected block,
/// shrink it to a primitive word, and insert it. Rows whose epipodal length
/// is already below `skip_threshold` are left alone. With an exact oracle
/// and threshold 0 every epipodal vector ends up a minimum-weight word of
/// its projected code.
pub fn approx_griesmer_reduce(
    basis: &CodeBasis,
    oracle: &mut ShortestOracle,
    skip_threshold: usize,
) -> Result<(CodeBasis, IterationCounters)> {
    if !basis.is_proper() {
        return Err(Error::NotProper);
    }
    let k = basis.k();
    let mut b = basis.clone();
    let mut counters = IterationCounters::default();
    for i in 0..k.saturating_sub(1) {
        counters.loop_iterations += 1;
        if b.epipodal_len(i) < skip_threshold {
            continue;
        }
        let block = b.block(i, k - 1);
        let c = oracle.shortest(&block.rows)?;
        let p = make_primitive(&block.rows, &c)?;
        let a = insert_primitive(&block.rows, &p)?;
        b.apply_block_transform(i, k - 1, &a)?;
        counters.forward_updates += 1;
    }
    Ok((b, counters))
}

/// Default iteration budget for the Lee-Brickell subprocedure.
pub fn default_lee_brickell_budget(k: usize) -> usize {
    50 * k
}
