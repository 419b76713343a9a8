//! Vectors and generator matrices over F_q: supports, weights, projections,
//! the epipodal matrix with its support-prefix cache, block extraction and
//! block-local transformations.

mod basis;
pub mod io;
mod mask;
pub mod mat;
mod word;

pub use basis::{Block, CodeBasis, Profile};
pub use mask::Mask;
pub use mat::SqMat;
pub use word::Word;

use crate::Result;

/// Union of the supports of a set of words.
pub fn joint_support(targets: &[Word]) -> Result<Mask> {
    let mut iter = targets.iter();
    let Some(first) = iter.next() else {
        return Err(crate::Error::InvalidParameter(
            "joint_support of an empty set has no length".into(),
        ));
    };
    let mut mask = first.support();
    for w in iter {
        if w.len() != mask.len() {
            return Err(crate::Error::LengthMismatch(w.len(), mask.len()));
        }
        mask.or_assign(&w.support());
    }
    Ok(mask)
}

/// Keeps exactly the coordinates lying in some target's support.
pub fn project_onto(targets: &[Word], y: &Word) -> Result<Word> {
    if targets.is_empty() {
        return Ok(Word::zero(y.field().clone(), y.len()));
    }
    let mask = joint_support(targets)?;
    if mask.len() != y.len() {
        return Err(crate::Error::LengthMismatch(mask.len(), y.len()));
    }
    Ok(y.project_onto(&mask))
}

/// Zeroes exactly the coordinates lying in some target's support; with no
/// targets this is the identity.
pub fn project_orthogonal(targets: &[Word], y: &Word) -> Result<Word> {
    if targets.is_empty() {
        return Ok(y.clone());
    }
    let mask = joint_support(targets)?;
    if mask.len() != y.len() {
        return Err(crate::Error::LengthMismatch(mask.len(), y.len()));
    }
    Ok(y.project_orthogonal(&mask))
}
