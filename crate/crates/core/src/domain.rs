//! Size reduction against a proper basis and the geometry of the resulting
//! fundamental domain.
//!
//! A word is size reduced when, for every row i and every nonzero scalar a,
//! adding `a * b_i` cannot decrease `|pi_{b_i^+}(y)| + TB_{b_i^+}(y)`, where
//! the tie-break value TB reads the coordinate at the first support index of
//! the epipodal vector. Scores are compared exactly as the integer
//! `q * weight + tb_numerator`, so every minimizer is unique and the greedy
//! per-row descent lands in a canonical coset representative.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::gf::Elt;
use crate::linalg::{CodeBasis, Word};
use crate::{Error, Result};

/// Numerator of the tie-break value `TB_p(y) = enc(y_j * p_j^{-1}) / q`,
/// where j is the first support index of p.
pub fn tie_break_numerator(p: &Word, y: &Word) -> Result<Elt> {
    let Some(j) = p.first_support() else {
        return Err(Error::InvalidParameter(
            "tie-break against the zero word".into(),
        ));
    };
    if y.len() != p.len() {
        return Err(Error::LengthMismatch(y.len(), p.len()));
    }
    let f = p.field();
    Ok(f.mul(y.get(j), f.inv_nz(p.get(j))))
}

/// The unique scalar a minimizing `|pi_{b_plus}(e + a*b)| + TB_{b_plus}(e +
/// a*b)`. `b_plus` must be the projection of `b` that is in force at this
/// row, so the two agree on the support of `b_plus`.
///
/// Every candidate that zeroes some coordinate of the projection is of the
/// form `-e_i * b_plus_i^{-1}`, so a histogram over the support plus the
/// explicit candidate 0 covers the minimizer.
pub fn size_reduce_coefficient(e: &Word, b: &Word, b_plus: &Word) -> Result<Elt> {
    if b_plus.is_zero() {
        return Err(Error::InvalidParameter(
            "size reduction against a zero epipodal vector".into(),
        ));
    }
    if e.len() != b_plus.len() {
        return Err(Error::LengthMismatch(e.len(), b_plus.len()));
    }
    debug_assert!(b_plus
        .iter_support()
        .all(|(i, v)| b.get(i) == v));
    let f = e.field().clone();
    let q = f.q() as u64;
    let j = b_plus.first_support().unwrap();
    let t0 = f.mul(e.get(j), f.inv_nz(b_plus.get(j)));

    let mut support = 0u64;
    let mut cands: Vec<Elt> = Vec::new();
    for (i, v) in b_plus.iter_support() {
        support += 1;
        cands.push(f.mul(f.neg(e.get(i)), f.inv_nz(v)));
    }
    cands.push(0);
    cands.sort_unstable();

    let mut best: Option<(u64, Elt)> = None;
    let mut idx = 0;
    while idx < cands.len() {
        let a = cands[idx];
        let mut count = 0u64;
        while idx < cands.len() && cands[idx] == a {
            count += 1;
            idx += 1;
        }
        if a == 0 {
            count -= 1; // the explicit extra zero candidate creates nothing
        }
        let score = q * (support - count) + f.add(t0, a) as u64;
        if best.map_or(true, |(s, _)| score < s) {
            best = Some((score, a));
        }
    }
    Ok(best.unwrap().1)
}

/// Greedy coset descent of `y` into the fundamental domain: the output e
/// satisfies `e - y` in C(B) and passes [`in_fundamental_domain`].
pub fn size_reduce(basis: &CodeBasis, y: &Word) -> Result<Word> {
    if !basis.is_proper() {
        return Err(Error::NotProper);
    }
    if y.len() != basis.n() {
        return Err(Error::LengthMismatch(y.len(), basis.n()));
    }
    let mut e = y.clone();
    for i in (0..basis.k()).rev() {
        let b_plus = basis.epipodal(i);
        let a = size_reduce_coefficient(&e, basis.row(i), &b_plus)?;
        if a != 0 {
            e.add_scaled_assign(basis.row(i), a)?;
        }
    }
    Ok(e)
}

/// Membership test for the fundamental domain: true iff for every row the
/// already-held coefficient 0 is the unique score minimizer.
pub fn in_fundamental_domain(basis: &CodeBasis, y: &Word) -> Result<bool> {
    if !basis.is_proper() {
        return Err(Error::NotProper);
    }
    for i in 0..basis.k() {
        let b_plus = basis.epipodal(i);
        if size_reduce_coefficient(y, basis.row(i), &b_plus)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `A(n, q, m)`: number of strings in {1..q}^n in which every symbol occurs
/// at most m times. Exact, via the occupancy recurrence
/// `h_t(s) = sum_j C(s, j) h_{t-1}(s - j)`.
pub fn bounded_occupancy_count(n: usize, q: usize, m: i64) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    if m <= 0 || q == 0 {
        // With no symbols or no allowed repetitions only the empty string
        // survives, and n > 0 here.
        return BigUint::zero();
    }
    let m = (m as usize).min(n);
    let binom = binomial_table(n);
    let mut h = vec![BigUint::zero(); n + 1];
    h[0] = BigUint::one();
    for _ in 0..q {
        let mut next = vec![BigUint::zero(); n + 1];
        for (s, slot) in next.iter_mut().enumerate() {
            for j in 0..=m.min(s) {
                let prev = &h[s - j];
                if !prev.is_zero() {
                    *slot += &binom[s][j] * prev;
                }
            }
        }
        h = next;
    }
    h[n].clone()
}

fn binomial_table(n: usize) -> Vec<Vec<BigUint>> {
    let mut t = vec![vec![BigUint::zero(); n + 1]; n + 1];
    t[0][0] = BigUint::one();
    for i in 1..=n {
        t[i][0] = BigUint::one();
        for j in 1..=i {
            t[i][j] = &t[i - 1][j - 1] + &t[i - 1][j];
        }
    }
    t
}

/// Weight distribution of the fundamental domain of a proper basis with the
/// given epipodal profile, as exact counts `W_0..W_s` with s the profile sum.
/// The distribution depends only on the profile; per-block counts convolve.
pub fn fundamental_weight_distribution(profile: &[usize], q: u32) -> Result<Vec<BigUint>> {
    if profile.iter().any(|&l| l == 0) {
        return Err(Error::InvalidParameter(
            "profile of a proper basis has no zero entries".into(),
        ));
    }
    let mut acc = vec![BigUint::one()];
    for &len in profile {
        let block = block_weight_distribution(len, q as usize);
        acc = convolve(&acc, &block);
    }
    Ok(acc)
}

/// Per-block weight counts: the number of length-l words in which zero is a
/// most frequent symbol, occurring z times, corrected by the 1/s choice among
/// the s equally frequent symbols.
fn block_weight_distribution(l: usize, q: usize) -> Vec<BigUint> {
    let binom = binomial_table(l.max(q));
    let mut out = vec![BigUint::zero(); l + 1];
    for z in 0..=l {
        let weight = l - z;
        let mut total = BigUint::zero();
        for s in 1..=q.min(l) {
            // C(q-1, s-1) ways to pick the other maximal symbols.
            let mut term = binom[q - 1][s - 1].clone();
            if term.is_zero() {
                continue;
            }
            // Place z copies of each of the s maximal symbols.
            let mut ok = true;
            for t in 0..s {
                let remaining = l as i64 - (z * t) as i64;
                if remaining < z as i64 {
                    ok = false;
                    break;
                }
                term *= &binom[remaining as usize][z];
            }
            if !ok || term.is_zero() {
                continue;
            }
            let rest = l as i64 - (s * z) as i64;
            if rest < 0 {
                continue;
            }
            term *= bounded_occupancy_count(rest as usize, q - s, z as i64 - 1);
            if term.is_zero() {
                continue;
            }
            let s_big = BigUint::from(s);
            assert!(
                (&term % &s_big).is_zero(),
                "block weight term must be divisible by the symmetry factor"
            );
            total += term / s_big;
        }
        out[weight] = total;
    }
    out
}

fn convolve(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Convenience wrapper: extracts the profile of a basis. The counts cover
/// the coordinates in the code's support.
pub fn basis_weight_distribution(basis: &CodeBasis) -> Result<Vec<BigUint>> {
    if !basis.is_proper() {
        return Err(Error::NotProper);
    }
    fundamental_weight_distribution(&basis.profile().lengths, basis.field().q())
}
