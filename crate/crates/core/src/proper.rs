//! Primitivity of codewords and the basis surgery built on it.
//!
//! A nonzero codeword is primitive when no other nonzero codeword has support
//! strictly inside its own; these are exactly the codewords that can lead a
//! proper basis. [`make_primitive`] shrinks any nonzero codeword to a
//! primitive one inside its support, and [`insert_primitive`] produces the
//! invertible transform that puts a primitive codeword in front of a basis
//! while keeping the basis proper.

use crate::gf::Elt;
use crate::linalg::{mat, CodeBasis, Mask, SqMat, Word};
use crate::{Error, Result};

/// Outcome of a primitivity test. A negative verdict carries a nonzero
/// codeword whose support is strictly contained in the tested word's.
#[derive(Clone, Debug)]
pub enum PrimitivityWitness {
    Primitive,
    NonPrimitive { witness: Word },
}

impl PrimitivityWitness {
    pub fn is_primitive(&self) -> bool {
        matches!(self, PrimitivityWitness::Primitive)
    }
}

/// Basis of the subcode vanishing on `s`, i.e. `{c in C : c_i = 0 for all i
/// in s}`. The result can have dimension zero.
///
/// Greedy over the columns of `s` in ascending order: each column that
/// enlarges the span of the processed columns becomes a pivot, and the rows
/// left without a pivot vanish on every pivot column, hence (by maximality)
/// on all of `s`.
pub fn special_subcode(basis: &CodeBasis, s: &Mask) -> CodeBasis {
    let k = basis.k();
    let n = basis.n();
    let f = basis.field().clone();
    let mut work: Vec<Word> = basis.rows().to_vec();
    let mut r = 0;
    for col in 0..n {
        if r == k {
            break;
        }
        if !s.test(col) {
            continue;
        }
        let Some(p) = (r..k).find(|&t| work[t].get(col) != 0) else {
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
    let rows = work.split_off(r);
    CodeBasis::from_rows_unchecked(f, n, rows)
}

fn check_codeword(basis: &CodeBasis, c: &Word) -> Result<()> {
    if c.is_zero() {
        return Err(Error::InvalidParameter(
            "the zero word is not primitive".into(),
        ));
    }
    if c.len() != basis.n() {
        return Err(Error::LengthMismatch(c.len(), basis.n()));
    }
    if mat::solve_combination(basis.rows(), c).is_none() {
        return Err(Error::NotInCode);
    }
    Ok(())
}

/// Tests whether `c` is primitive in the code of `basis`.
///
/// The fast path is the rank criterion: `c` is primitive iff projecting the
/// basis orthogonally to `c` leaves rank k - 1. Only a negative verdict runs
/// the witness search inside the vanishing subcode.
pub fn is_primitive(basis: &CodeBasis, c: &Word) -> Result<PrimitivityWitness> {
    check_codeword(basis, c)?;
    let supp = c.support();
    let projected: Vec<Word> = basis
        .rows()
        .iter()
        .map(|r| r.project_orthogonal(&supp))
        .collect();
    if mat::rank(&projected) == basis.k() - 1 {
        return Ok(PrimitivityWitness::Primitive);
    }
    let sub = special_subcode(basis, &supp.complement());
    debug_assert!(sub.k() >= 2);
    let sys = sub.systematize(None)?;
    // Every systematized row misses some other row's pivot, and all pivots
    // lie in Supp(c), so row 0 has support strictly inside Supp(c).
    Ok(PrimitivityWitness::NonPrimitive {
        witness: sys.row(0).clone(),
    })
}

/// Shrinks a nonzero codeword to a primitive codeword supported inside it.
/// Deterministic given the basis; the output may differ from `c` even when
/// `c` is already primitive.
pub fn make_primitive(basis: &CodeBasis, c: &Word) -> Result<Word> {
    check_codeword(basis, c)?;
    let sub = special_subcode(basis, &c.support().complement());
    debug_assert!(sub.k() >= 1);
    let sys = sub.systematize(None)?;
    Ok(sys.row(0).clone())
}

/// Builds the invertible A such that `A * basis` is proper with first row
/// `p`. Fails with [`Error::NotPrimitive`] when `p` is not primitive.
pub fn insert_primitive(basis: &CodeBasis, p: &Word) -> Result<SqMat> {
    check_codeword(basis, p)?;
    let k = basis.k();
    let f = basis.field().clone();
    let coeffs = mat::solve_combination(basis.rows(), p).ok_or(Error::NotInCode)?;
    let m = coeffs
        .iter()
        .position(|&a| a != 0)
        .expect("nonzero codeword has a nonzero coefficient");

    // M = (swap rows 0,m) * (identity with row m replaced by the coefficient
    // vector): row 0 of M*basis is p, row m is the old row 0.
    let rows_after: Vec<Word> = {
        let mut rows: Vec<Word> = basis.rows().to_vec();
        rows[m] = p.clone();
        rows.swap(0, m);
        rows
    };

    if k == 1 {
        let mut a = SqMat::identity(f, 1);
        a.set(0, 0, coeffs[0]);
        return Ok(a);
    }

    let supp = p.support();
    let projected: Vec<Word> = rows_after[1..]
        .iter()
        .map(|r| r.project_orthogonal(&supp))
        .collect();
    let proj_basis = CodeBasis::from_rows_unchecked(f.clone(), basis.n(), projected);
    let (_, _, t) = proj_basis
        .systematize_full(None)
        .map_err(|_| Error::NotPrimitive)?;

    // A = (I_1 (+) T) * M with M as above; M is the identity outside rows
    // {0, m}, so the product costs O(k^2).
    let mut a = SqMat::identity(f.clone(), k);
    for i in 0..k {
        // Row i of I_1 (+) T.
        let te = |j: usize| -> Elt {
            if i == 0 {
                (j == 0) as Elt
            } else if j == 0 {
                0
            } else {
                t.get(i - 1, j - 1)
            }
        };
        let t0 = te(0);
        let tm = te(m);
        for c in 0..k {
            // M rows: row 0 = coeffs, row m = e_0 (for m > 0), else e_j.
            let mut v = f.mul(t0, coeffs[c]);
            if m > 0 {
                if c == 0 {
                    v = f.add(v, tm);
                }
                if c != 0 && c != m {
                    v = f.add(v, te(c));
                }
            } else if c != 0 {
                v = f.add(v, te(c));
            }
            a.set(i, c, v);
        }
    }
    debug_assert!(a.is_invertible());
    Ok(a)
}
