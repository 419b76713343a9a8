use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::gf::{Elt, Field};
use crate::linalg::Mask;
use crate::{Error, Result};

/// A length-n vector over F_q.
///
/// Rows over F_2 are packed 64 coordinates to a machine word so that row
/// addition is XOR and Hamming weight is popcount; other fields store one
/// byte per coordinate up to q = 256 and two bytes beyond.
#[derive(Clone, Debug)]
pub struct Word {
    field: Arc<Field>,
    len: usize,
    storage: Storage,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Storage {
    Bits(Vec<u64>),
    Bytes(Vec<u8>),
    Wide(Vec<Elt>),
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.len == other.len && self.storage == other.storage
    }
}
impl Eq for Word {}

impl Hash for Word {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.len.hash(state);
        self.storage.hash(state);
    }
}

impl Word {
    pub fn zero(field: Arc<Field>, len: usize) -> Self {
        let storage = match field.q() {
            2 => Storage::Bits(vec![0; len.div_ceil(64)]),
            q if q <= 256 => Storage::Bytes(vec![0; len]),
            _ => Storage::Wide(vec![0; len]),
        };
        Word {
            field,
            len,
            storage,
        }
    }

    pub fn from_elems(field: Arc<Field>, elems: &[Elt]) -> Result<Self> {
        let mut w = Word::zero(field.clone(), elems.len());
        for (i, &e) in elems.iter().enumerate() {
            if !field.is_valid(e) {
                return Err(Error::InvalidElement(e as u32, field.q()));
            }
            w.set(i, e);
        }
        Ok(w)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> Elt {
        debug_assert!(i < self.len);
        match &self.storage {
            Storage::Bits(w) => (w[i >> 6] >> (i & 63) & 1) as Elt,
            Storage::Bytes(v) => v[i] as Elt,
            Storage::Wide(v) => v[i],
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, e: Elt) {
        debug_assert!(i < self.len);
        debug_assert!(self.field.is_valid(e));
        match &mut self.storage {
            Storage::Bits(w) => {
                let bit = 1u64 << (i & 63);
                if e == 0 {
                    w[i >> 6] &= !bit;
                } else {
                    w[i >> 6] |= bit;
                }
            }
            Storage::Bytes(v) => v[i] = e as u8,
            Storage::Wide(v) => v[i] = e,
        }
    }

    pub fn elems(&self) -> Vec<Elt> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    pub fn weight(&self) -> usize {
        match &self.storage {
            Storage::Bits(w) => w.iter().map(|x| x.count_ones() as usize).sum(),
            Storage::Bytes(v) => v.iter().filter(|&&x| x != 0).count(),
            Storage::Wide(v) => v.iter().filter(|&&x| x != 0).count(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.storage {
            Storage::Bits(w) => w.iter().all(|&x| x == 0),
            Storage::Bytes(v) => v.iter().all(|&x| x == 0),
            Storage::Wide(v) => v.iter().all(|&x| x == 0),
        }
    }

    /// Indicator mask of the nonzero coordinates.
    pub fn support(&self) -> Mask {
        let mut m = Mask::none(self.len);
        match &self.storage {
            Storage::Bits(w) => {
                for (i, &x) in w.iter().enumerate() {
                    for b in BitIter(x) {
                        let idx = i * 64 + b;
                        if idx < self.len {
                            m.set(idx);
                        }
                    }
                }
            }
            Storage::Bytes(v) => {
                for (i, &x) in v.iter().enumerate() {
                    if x != 0 {
                        m.set(i);
                    }
                }
            }
            Storage::Wide(v) => {
                for (i, &x) in v.iter().enumerate() {
                    if x != 0 {
                        m.set(i);
                    }
                }
            }
        }
        m
    }

    /// Smallest index in the support.
    pub fn first_support(&self) -> Option<usize> {
        match &self.storage {
            Storage::Bits(w) => {
                for (i, &x) in w.iter().enumerate() {
                    if x != 0 {
                        let idx = i * 64 + x.trailing_zeros() as usize;
                        return (idx < self.len).then_some(idx);
                    }
                }
                None
            }
            Storage::Bytes(v) => v.iter().position(|&x| x != 0),
            Storage::Wide(v) => v.iter().position(|&x| x != 0),
        }
    }

    /// `(index, value)` pairs over the support, ascending by index.
    pub fn iter_support(&self) -> impl Iterator<Item = (usize, Elt)> + '_ {
        (0..self.len).filter_map(move |i| {
            let v = self.get(i);
            (v != 0).then_some((i, v))
        })
    }

    fn check_compat(&self, other: &Word) -> Result<()> {
        if !Arc::ptr_eq(&self.field, &other.field) && self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.len != other.len {
            return Err(Error::LengthMismatch(self.len, other.len));
        }
        Ok(())
    }

    /// self += c * other.
    pub fn add_scaled_assign(&mut self, other: &Word, c: Elt) -> Result<()> {
        self.check_compat(other)?;
        if c == 0 {
            return Ok(());
        }
        let f = self.field.clone();
        match (&mut self.storage, &other.storage) {
            (Storage::Bits(a), Storage::Bits(b)) => {
                // c == 1 over F_2.
                for (x, y) in a.iter_mut().zip(b) {
                    *x ^= *y;
                }
            }
            (Storage::Bytes(a), Storage::Bytes(b)) => {
                for (x, y) in a.iter_mut().zip(b) {
                    if *y != 0 {
                        *x = f.add(*x as Elt, f.mul(c, *y as Elt)) as u8;
                    }
                }
            }
            (Storage::Wide(a), Storage::Wide(b)) => {
                for (x, y) in a.iter_mut().zip(b) {
                    if *y != 0 {
                        *x = f.add(*x, f.mul(c, *y));
                    }
                }
            }
            _ => unreachable!("same field implies same storage kind"),
        }
        Ok(())
    }

    pub fn scale_assign(&mut self, c: Elt) {
        if c == 1 {
            return;
        }
        let f = self.field.clone();
        match &mut self.storage {
            Storage::Bits(w) => {
                if c == 0 {
                    w.fill(0);
                }
            }
            Storage::Bytes(v) => {
                for x in v.iter_mut() {
                    if *x != 0 {
                        *x = f.mul(*x as Elt, c) as u8;
                    }
                }
            }
            Storage::Wide(v) => {
                for x in v.iter_mut() {
                    if *x != 0 {
                        *x = f.mul(*x, c);
                    }
                }
            }
        }
    }

    pub fn negate(&mut self) {
        let f = self.field.clone();
        if f.characteristic() == 2 {
            return;
        }
        match &mut self.storage {
            Storage::Bytes(v) => {
                for x in v.iter_mut() {
                    *x = f.neg(*x as Elt) as u8;
                }
            }
            Storage::Wide(v) => {
                for x in v.iter_mut() {
                    *x = f.neg(*x);
                }
            }
            Storage::Bits(_) => unreachable!(),
        }
    }

    /// Coordinates inside the mask survive, the rest become zero.
    pub fn project_onto(&self, mask: &Mask) -> Word {
        debug_assert_eq!(mask.len(), self.len);
        let mut out = self.clone();
        match &mut out.storage {
            Storage::Bits(w) => {
                for (x, m) in w.iter_mut().zip(mask.words()) {
                    *x &= *m;
                }
            }
            Storage::Bytes(v) => {
                for (i, x) in v.iter_mut().enumerate() {
                    if !mask.test(i) {
                        *x = 0;
                    }
                }
            }
            Storage::Wide(v) => {
                for (i, x) in v.iter_mut().enumerate() {
                    if !mask.test(i) {
                        *x = 0;
                    }
                }
            }
        }
        out
    }

    /// Coordinates inside the mask become zero, the rest survive.
    pub fn project_orthogonal(&self, mask: &Mask) -> Word {
        debug_assert_eq!(mask.len(), self.len);
        let mut out = self.clone();
        match &mut out.storage {
            Storage::Bits(w) => {
                for (x, m) in w.iter_mut().zip(mask.words()) {
                    *x &= !*m;
                }
            }
            Storage::Bytes(v) => {
                for (i, x) in v.iter_mut().enumerate() {
                    if mask.test(i) {
                        *x = 0;
                    }
                }
            }
            Storage::Wide(v) => {
                for (i, x) in v.iter_mut().enumerate() {
                    if mask.test(i) {
                        *x = 0;
                    }
                }
            }
        }
        out
    }

    /// Weight of the projection onto the mask, without materializing it.
    pub fn weight_onto(&self, mask: &Mask) -> usize {
        debug_assert_eq!(mask.len(), self.len);
        match &self.storage {
            Storage::Bits(w) => w
                .iter()
                .zip(mask.words())
                .map(|(x, m)| (x & m).count_ones() as usize)
                .sum(),
            _ => mask.iter().filter(|&i| self.get(i) != 0).count(),
        }
    }

    /// Weight of the projection orthogonal to the mask.
    pub fn weight_orthogonal(&self, mask: &Mask) -> usize {
        debug_assert_eq!(mask.len(), self.len);
        match &self.storage {
            Storage::Bits(w) => w
                .iter()
                .zip(mask.words())
                .map(|(x, m)| (x & !m).count_ones() as usize)
                .sum(),
            _ => self.weight() - self.weight_onto(mask),
        }
    }

    /// Weight of `self + c * other` without materializing it.
    pub fn weight_after_add_scaled(&self, other: &Word, c: Elt) -> usize {
        debug_assert_eq!(self.len, other.len);
        if c == 0 {
            return self.weight();
        }
        let f = &self.field;
        match (&self.storage, &other.storage) {
            (Storage::Bits(a), Storage::Bits(b)) => a
                .iter()
                .zip(b)
                .map(|(x, y)| (x ^ y).count_ones() as usize)
                .sum(),
            (Storage::Bytes(a), Storage::Bytes(b)) => a
                .iter()
                .zip(b)
                .filter(|(&x, &y)| f.add(x as Elt, f.mul(c, y as Elt)) != 0)
                .count(),
            (Storage::Wide(a), Storage::Wide(b)) => a
                .iter()
                .zip(b)
                .filter(|(&x, &y)| f.add(x, f.mul(c, y)) != 0)
                .count(),
            _ => unreachable!(),
        }
    }

    /// Copy of the first `new_len` coordinates.
    pub fn truncated(&self, new_len: usize) -> Word {
        debug_assert!(new_len <= self.len);
        let mut out = Word::zero(self.field.clone(), new_len);
        match (&mut out.storage, &self.storage) {
            (Storage::Bits(dst), Storage::Bits(src)) => {
                let nw = dst.len();
                dst.copy_from_slice(&src[..nw]);
                let tail = new_len & 63;
                if tail != 0 {
                    dst[nw - 1] &= (1u64 << tail) - 1;
                }
            }
            (Storage::Bytes(dst), Storage::Bytes(src)) => dst.copy_from_slice(&src[..new_len]),
            (Storage::Wide(dst), Storage::Wide(src)) => dst.copy_from_slice(&src[..new_len]),
            _ => unreachable!(),
        }
        out
    }
}

struct BitIter(u64);
impl Iterator for BitIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let b = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(b)
        }
    }
}
