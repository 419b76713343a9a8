//! Shortest-codeword subprocedures: exact enumeration for small blocks, the
//! two-row fast path, and a randomized Lee-Brickell search for large blocks.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::gf::Elt;
use crate::linalg::{CodeBasis, Word};
use crate::{Error, Result};

/// Finder for short nonzero codewords of a block.
///
/// The exhaustive kind is exact and enumerates one representative per
/// projective coefficient class, in lexicographic coefficient order with the
/// first minimum winning. Lee-Brickell is randomized but never returns a word
/// heavier than the lightest input row.
pub enum ShortestOracle {
    Exhaustive { cutoff: usize },
    LeeBrickell { p: usize, budget: usize, rng: ChaCha8Rng },
}

impl ShortestOracle {
    /// Exact enumeration with the default dimension cutoff for field size q
    /// (about 2^20 candidate words).
    pub fn exhaustive_default(q: u32) -> Self {
        let mut cutoff = 0usize;
        let mut candidates = 1u64;
        while candidates.saturating_mul(q as u64) <= 1 << 20 {
            candidates = candidates.saturating_mul(q as u64);
            cutoff += 1;
        }
        ShortestOracle::Exhaustive { cutoff: cutoff.max(2) }
    }

    pub fn exhaustive_with_cutoff(cutoff: usize) -> Self {
        ShortestOracle::Exhaustive { cutoff }
    }

    pub fn lee_brickell(p: usize, budget: usize, seed: u64) -> Self {
        ShortestOracle::LeeBrickell {
            p,
            budget,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Shortest (exhaustive) or short (Lee-Brickell) nonzero codeword of the
    /// block.
    pub fn shortest(&mut self, block: &CodeBasis) -> Result<Word> {
        if block.k() == 0 {
            return Err(Error::InvalidParameter("empty block".into()));
        }
        match self {
            ShortestOracle::Exhaustive { cutoff } => {
                if block.k() > *cutoff {
                    return Err(Error::InvalidParameter(format!(
                        "block dimension {} exceeds the exhaustive cutoff {cutoff}",
                        block.k()
                    )));
                }
                Ok(exhaustive_shortest(block))
            }
            ShortestOracle::LeeBrickell { p, budget, rng } => {
                lee_brickell_shortest(block, *p, *budget, rng)
            }
        }
    }
}

/// Exact shortest nonzero codeword; first minimum in lexicographic
/// coefficient order (leading coefficient normalized to 1).
pub fn exhaustive_shortest(block: &CodeBasis) -> Word {
    let k = block.k();
    if k == 1 {
        return block.row(0).clone();
    }
    if block.field().q() == 2 {
        if k == 2 {
            return shortest_pair_coefficients(block.row(0), block.row(1)).unwrap().1;
        }
        return exhaustive_shortest_f2(block);
    }
    if k == 2 {
        return shortest_pair_coefficients(block.row(0), block.row(1)).unwrap().1;
    }
    exhaustive_shortest_general(block)
}

/// Gray-code walk over all nonzero coefficient masks; one row XOR and one
/// popcount per candidate.
fn exhaustive_shortest_f2(block: &CodeBasis) -> Word {
    let k = block.k();
    debug_assert!(k < 64);
    let lex_key = |g: u64| g.reverse_bits() >> (64 - k);
    let mut acc = block.row(0).clone();
    let mut best = (acc.weight(), lex_key(1), acc.clone());
    for m in 2..1u64 << k {
        let flip = m.trailing_zeros() as usize;
        acc.add_scaled_assign(block.row(flip), 1).unwrap();
        let g = m ^ (m >> 1);
        let cand = (acc.weight(), lex_key(g));
        if cand < (best.0, best.1) {
            best = (cand.0, cand.1, acc.clone());
        }
    }
    best.2
}

/// Odometer over coefficient vectors with leading coefficient one: the
/// accumulator is patched by `(new - old) * row` per digit change, so the
/// total work is proportional to the candidate count.
fn exhaustive_shortest_general(block: &CodeBasis) -> Word {
    let k = block.k();
    let f = block.field().clone();
    let q = f.q() as u64;
    let lex_key = |lead: usize, digits: &[Elt]| -> u128 {
        let mut key = 0u128;
        for t in 0..k {
            let d = if t < lead {
                0
            } else if t == lead {
                1
            } else {
                digits[t - lead - 1] as u128
            };
            key = key * q as u128 + d;
        }
        key
    };
    let mut best: Option<(usize, u128, Word)> = None;
    for lead in 0..k {
        let tail = k - lead - 1;
        let mut digits = vec![0 as Elt; tail];
        let mut acc = block.row(lead).clone();
        loop {
            let cand = (acc.weight(), lex_key(lead, &digits));
            if best
                .as_ref()
                .map_or(true, |(w, key, _)| cand < (*w, *key))
            {
                best = Some((cand.0, cand.1, acc.clone()));
            }
            // Advance the odometer (rightmost digit fastest).
            let mut pos = tail;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                let row = block.row(lead + 1 + pos);
                let old = digits[pos];
                if (old as u64) + 1 < q {
                    digits[pos] = old + 1;
                    // acc += (new - old) * row = acc + row (delta 1).
                    acc.add_scaled_assign(row, f.sub(digits[pos], old)).unwrap();
                    break;
                }
                digits[pos] = 0;
                acc.add_scaled_assign(row, f.sub(0, old)).unwrap();
            }
            if pos == 0 && digits.iter().all(|&d| d == 0) {
                break;
            }
        }
    }
    let (_, _, word) = best.unwrap();
    word
}

/// Shortest nonzero word `a1*x1 + a2*x2` with the representative convention
/// `(0,1)` before `(1,a)`, ties to the earlier representative. Runs in one
/// pass over the support of x2 plus a candidate histogram.
pub fn shortest_pair_coefficients(x1: &Word, x2: &Word) -> Result<((Elt, Elt), Word)> {
    if x2.is_zero() {
        return Err(Error::InvalidParameter(
            "two-row search needs a nonzero second row".into(),
        ));
    }
    let f = x1.field().clone();
    let mask = x2.support();
    let support = mask.count();
    let off_weight = x1.weight() - x1.weight_onto(&mask);

    // Zeros of x1 + a*x2 inside Supp(x2) happen exactly at a = -x1_i/x2_i.
    let mut cands: Vec<Elt> = x2
        .iter_support()
        .map(|(i, v)| f.mul(f.neg(x1.get(i)), f.inv_nz(v)))
        .collect();
    cands.push(0);
    cands.sort_unstable();

    // Representative (0, 1) has the smallest lexicographic key.
    let mut best_weight = x2.weight();
    let mut best_coeff: (Elt, Elt) = (0, 1);
    let mut idx = 0;
    while idx < cands.len() {
        let a = cands[idx];
        let mut count = 0usize;
        while idx < cands.len() && cands[idx] == a {
            count += 1;
            idx += 1;
        }
        if a == 0 {
            count -= 1;
        }
        let w = off_weight + support - count;
        // Strict improvement only: (0,1) wins weight ties, and candidates
        // ascend, so the first minimum in coefficient order is kept.
        if w < best_weight {
            best_weight = w;
            best_coeff = (1, a);
        }
    }
    let word = if best_coeff.0 == 0 {
        x2.clone()
    } else {
        let mut w = x1.clone();
        w.add_scaled_assign(x2, best_coeff.1)?;
        w
    };
    debug_assert_eq!(word.weight(), best_weight);
    Ok((best_coeff, word))
}

/// Lee-Brickell: repeatedly systematize on a fresh random information set
/// and enumerate the codewords with at most `p` nonzero coefficients there
/// (leading coefficient one). The lightest input row seeds the search, so the
/// result never exceeds the block's shortest row.
fn lee_brickell_shortest(
    block: &CodeBasis,
    p: usize,
    budget: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Word> {
    if p == 0 {
        return Err(Error::InvalidParameter(
            "pattern weight must be positive".into(),
        ));
    }
    let k = block.k();
    let n = block.n();
    let f = block.field().clone();

    let mut best: (usize, Word) = {
        let mut it = block.rows().iter();
        let first = it.next().unwrap();
        let mut b = (first.weight(), first.clone());
        for r in it {
            let w = r.weight();
            if w < b.0 {
                b = (w, r.clone());
            }
        }
        b
    };

    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..budget {
        order.shuffle(rng);
        // Row-reduce along the shuffled column order; row operations only,
        // so every work row stays a codeword.
        let mut work: Vec<Word> = block.rows().to_vec();
        let mut r = 0usize;
        for &col in &order {
            if r == k {
                break;
            }
            let Some(t) = (r..k).find(|&t| work[t].get(col) != 0) else {
                continue;
            };
            work.swap(r, t);
            let inv = f.inv_nz(work[r].get(col));
            work[r].scale_assign(inv);
            let pivot = work[r].clone();
            for (t, row) in work.iter_mut().enumerate() {
                if t != r {
                    let c = row.get(col);
                    if c != 0 {
                        row.add_scaled_assign(&pivot, f.neg(c)).unwrap();
                    }
                }
            }
            r += 1;
        }
        debug_assert_eq!(r, k, "blocks are full rank");
        enumerate_patterns(&work, p, &mut best);
    }
    Ok(best.1)
}

/// All combinations of at most `p` work rows with projective coefficients
/// (first nonzero coefficient 1); weights are evaluated without
/// materializing, and candidates materialize only on strict improvement.
fn enumerate_patterns(work: &[Word], p: usize, best: &mut (usize, Word)) {
    let q = work[0].field().q() as Elt;
    for i in 0..work.len() {
        let w = work[i].weight();
        if w > 0 && w < best.0 {
            *best = (w, work[i].clone());
        }
        if p >= 2 {
            extend_pattern(work, i, p - 1, &work[i], best, q);
        }
    }
}

fn extend_pattern(
    work: &[Word],
    last: usize,
    depth: usize,
    acc: &Word,
    best: &mut (usize, Word),
    q: Elt,
) {
    for j in last + 1..work.len() {
        for c in 1..q {
            let w = acc.weight_after_add_scaled(&work[j], c);
            if w > 0 && w < best.0 {
                let mut cand = acc.clone();
                cand.add_scaled_assign(&work[j], c).unwrap();
                *best = (w, cand);
            }
            if depth >= 2 {
                let mut next = acc.clone();
                next.add_scaled_assign(&work[j], c).unwrap();
                extend_pattern(work, j, depth - 1, &next, best, q);
            }
        }
    }
}
