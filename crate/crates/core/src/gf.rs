//! Exact arithmetic in F_q for prime powers q <= 2^16.
//!
//! Elements are encoded canonically as integers in `0..q`. For a prime field
//! the encoding is the residue itself; for q = p^m the base-p digits of the
//! encoding are the coefficients (low to high) of the residue polynomial
//! modulo a fixed irreducible polynomial. The polynomial is the
//! lexicographically least monic irreducible of degree m over F_p, "least"
//! meaning the smallest integer `sum c_i p^i` over the non-leading
//! coefficients. Multiplication in extension fields goes through log/antilog
//! tables with respect to the smallest-encoding primitive element, and
//! addition through the corresponding Zech table, so every field operation is
//! O(1) after construction.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Canonical integer encoding of a field element, in `0..q`.
pub type Elt = u16;

const ZECH_NONE: u32 = u32::MAX;

/// Serializable description of a field: q = p^m with modulus polynomial
/// coefficients low-to-high (length m + 1, leading coefficient 1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    pub poly: Vec<Elt>,
}

enum Tables {
    Prime {
        inv: Vec<Elt>,
    },
    Extension {
        log: Vec<Elt>,
        exp: Vec<Elt>,
        zech: Vec<u32>,
        generator: Elt,
        neg_one: Elt,
    },
}

/// An immutable F_q with O(1) arithmetic. Construct once, share via `Arc`.
pub struct Field {
    q: u32,
    p: u32,
    m: u32,
    poly: Vec<Elt>,
    tables: Tables,
}

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}
impl Eq for Field {}

impl Field {
    /// Builds F_q. Fails unless q is a prime power with q <= 2^16.
    pub fn new(q: u32) -> Result<Arc<Field>> {
        if q > 1 << 16 {
            return Err(Error::FieldTooLarge(q as u64));
        }
        let (p, m) = factor_prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if m == 1 {
            let mut inv = vec![0 as Elt; q as usize];
            if q > 1 {
                inv[1] = 1;
            }
            for i in 2..q as u64 {
                let p64 = p as u64;
                // inv[i] = -(p/i) * inv[p mod i] mod p
                let v = (p64 - (p64 / i) * inv[(p64 % i) as usize] as u64 % p64) % p64;
                inv[i as usize] = v as Elt;
            }
            return Ok(Arc::new(Field {
                q,
                p,
                m: 1,
                poly: vec![0, 1],
                tables: Tables::Prime { inv },
            }));
        }

        let poly = least_irreducible(p, m);
        let ctx = PolyCtx {
            p,
            m,
            poly: poly.clone(),
        };
        let generator = ctx.find_generator(q);

        let order = (q - 1) as usize;
        let mut exp = vec![0 as Elt; 2 * order];
        let mut log = vec![0 as Elt; q as usize];
        let mut cur: Elt = 1;
        for (i, slot) in exp.iter_mut().enumerate().take(order) {
            *slot = cur;
            log[cur as usize] = i as Elt;
            cur = ctx.mul(cur, generator);
        }
        debug_assert_eq!(cur, 1, "generator order must be q - 1");
        for i in 0..order {
            exp[order + i] = exp[i];
        }
        let mut zech = vec![ZECH_NONE; order];
        for (i, slot) in zech.iter_mut().enumerate() {
            let t = ctx.add(1, exp[i]);
            if t != 0 {
                *slot = log[t as usize] as u32;
            }
        }
        let neg_one = if p == 2 { 1 } else { exp[order / 2] };
        Ok(Arc::new(Field {
            q,
            p,
            m,
            poly,
            tables: Tables::Extension {
                log,
                exp,
                zech,
                generator,
                neg_one,
            },
        }))
    }

    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn characteristic(&self) -> u32 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.m
    }
    /// Modulus polynomial, coefficients low-to-high.
    pub fn modulus(&self) -> &[Elt] {
        &self.poly
    }
    /// Smallest-encoding primitive element (extension fields only).
    pub fn generator(&self) -> Option<Elt> {
        match &self.tables {
            Tables::Prime { .. } => None,
            Tables::Extension { generator, .. } => Some(*generator),
        }
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p,
            m: self.m,
            poly: self.poly.clone(),
        }
    }

    pub fn is_valid(&self, a: Elt) -> bool {
        (a as u32) < self.q
    }

    #[inline]
    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        match &self.tables {
            Tables::Prime { .. } => {
                let s = a as u32 + b as u32;
                (if s >= self.q { s - self.q } else { s }) as Elt
            }
            Tables::Extension { log, exp, zech, .. } => {
                if a == 0 {
                    return b;
                }
                if b == 0 {
                    return a;
                }
                let order = self.q - 1;
                let la = log[a as usize] as u32;
                let lb = log[b as usize] as u32;
                let d = if lb >= la { lb - la } else { lb + order - la };
                match zech[d as usize] {
                    ZECH_NONE => 0,
                    z => {
                        let mut e = la + z;
                        if e >= order {
                            e -= order;
                        }
                        exp[e as usize]
                    }
                }
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: Elt) -> Elt {
        match &self.tables {
            Tables::Prime { .. } => {
                if a == 0 {
                    0
                } else {
                    (self.q - a as u32) as Elt
                }
            }
            Tables::Extension { neg_one, .. } => {
                if self.p == 2 {
                    a
                } else {
                    self.mul(a, *neg_one)
                }
            }
        }
    }

    #[inline]
    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        match &self.tables {
            Tables::Prime { .. } => ((a as u32 * b as u32) % self.q) as Elt,
            Tables::Extension { log, exp, .. } => {
                if a == 0 || b == 0 {
                    0
                } else {
                    exp[log[a as usize] as usize + log[b as usize] as usize]
                }
            }
        }
    }

    /// Multiplicative inverse; `inv(0)` is a domain error.
    pub fn inv(&self, a: Elt) -> Result<Elt> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.inv_nz(a))
    }

    #[inline]
    pub(crate) fn inv_nz(&self, a: Elt) -> Elt {
        debug_assert!(a != 0);
        match &self.tables {
            Tables::Prime { inv } => inv[a as usize],
            Tables::Extension { log, exp, .. } => {
                let order = (self.q - 1) as usize;
                let la = log[a as usize] as usize;
                exp[(order - la) % order]
            }
        }
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Elt> {
        (0..self.q).map(|v| v as Elt)
    }
}

fn factor_prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u32;
    while p * p <= q {
        if q % p == 0 {
            let mut rest = q;
            let mut m = 0;
            while rest % p == 0 {
                rest /= p;
                m += 1;
            }
            return if rest == 1 { Some((p, m)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

/// Dense polynomial arithmetic over F_p modulo a fixed monic polynomial,
/// operating on canonically encoded elements. Only used while building
/// tables; everything afterwards is table lookups.
struct PolyCtx {
    p: u32,
    m: u32,
    poly: Vec<Elt>,
}

impl PolyCtx {
    fn decode(&self, a: Elt) -> Vec<u32> {
        let mut digits = vec![0u32; self.m as usize];
        let mut v = a as u32;
        for d in digits.iter_mut() {
            *d = v % self.p;
            v /= self.p;
        }
        digits
    }

    fn encode(&self, digits: &[u32]) -> Elt {
        let mut v = 0u32;
        for &d in digits.iter().rev() {
            v = v * self.p + d;
        }
        v as Elt
    }

    fn add(&self, a: Elt, b: Elt) -> Elt {
        let da = self.decode(a);
        let db = self.decode(b);
        let sum: Vec<u32> = da
            .iter()
            .zip(&db)
            .map(|(x, y)| (x + y) % self.p)
            .collect();
        self.encode(&sum)
    }

    fn mul(&self, a: Elt, b: Elt) -> Elt {
        let da = self.decode(a);
        let db = self.decode(b);
        let m = self.m as usize;
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] += (x as u64) * (y as u64);
            }
        }
        // Reduce modulo the monic modulus: x^m = -(lower coefficients).
        for i in (m..2 * m - 1).rev() {
            let c = (prod[i] % self.p as u64) as u32;
            prod[i] = 0;
            if c == 0 {
                continue;
            }
            for j in 0..m {
                let coef = self.poly[j] as u64;
                if coef != 0 {
                    let sub = c as u64 * coef % self.p as u64;
                    prod[i - m + j] += self.p as u64 - sub;
                }
            }
        }
        let digits: Vec<u32> = prod[..m].iter().map(|&v| (v % self.p as u64) as u32).collect();
        self.encode(&digits)
    }

    fn pow(&self, mut base: Elt, mut e: u64) -> Elt {
        let mut acc: Elt = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn find_generator(&self, q: u32) -> Elt {
        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        'cand: for g in 2..q {
            for &r in &factors {
                if self.pow(g as Elt, order / r) == 1 {
                    continue 'cand;
                }
            }
            return g as Elt;
        }
        unreachable!("every finite field has a primitive element")
    }
}

fn prime_factors(mut v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= v {
        if v % d == 0 {
            out.push(d);
            while v % d == 0 {
                v /= d;
            }
        }
        d += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}

/// Lexicographically least monic irreducible polynomial of degree m over F_p,
/// returned low-to-high with the leading 1 included.
fn least_irreducible(p: u32, m: u32) -> Vec<Elt> {
    let lower_count = p.pow(m);
    for n in 0..lower_count {
        let mut coeffs = vec![0 as Elt; m as usize + 1];
        let mut v = n;
        for c in coeffs.iter_mut().take(m as usize) {
            *c = (v % p) as Elt;
            v /= p;
        }
        coeffs[m as usize] = 1;
        if is_irreducible(p, &coeffs) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}

/// Irreducibility over F_p via x^(p^m) = x mod f plus gcd checks at the
/// maximal proper sub-degrees.
fn is_irreducible(p: u32, poly: &[Elt]) -> bool {
    let m = (poly.len() - 1) as u32;
    if m == 0 {
        return false;
    }
    let x = vec![0u32, 1];
    let frob = poly_modexp(p, poly, &x, (p as u64).pow(m));
    if poly_sub(p, &frob, &x).iter().any(|&c| c != 0) {
        return false;
    }
    for r in prime_factors(m as u64) {
        let e = (p as u64).pow((m as u64 / r) as u32);
        let fr = poly_modexp(p, poly, &x, e);
        let diff = poly_sub(p, &fr, &x);
        let g = poly_gcd(p, &diff, &poly.iter().map(|&c| c as u32).collect::<Vec<_>>());
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn poly_trim(v: &mut Vec<u32>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn poly_sub(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; a.len().max(b.len())];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = (x + p - y) % p;
    }
    poly_trim(&mut out);
    out
}

fn poly_mulmod(p: u32, modulus: &[Elt], a: &[u32], b: &[u32]) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for i in (m..prod.len()).rev() {
        let c = prod[i];
        prod[i] = 0;
        if c == 0 {
            continue;
        }
        for j in 0..m {
            if modulus[j] != 0 {
                let sub = c * modulus[j] as u64 % p as u64;
                prod[i - m + j] = (prod[i - m + j] + p as u64 - sub) % p as u64;
            }
        }
    }
    let mut out: Vec<u32> = prod[..m.min(prod.len())].iter().map(|&v| v as u32).collect();
    if out.is_empty() {
        out.push(0);
    }
    poly_trim(&mut out);
    out
}

fn poly_modexp(p: u32, modulus: &[Elt], base: &[u32], mut e: u64) -> Vec<u32> {
    let mut acc = vec![1u32];
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(p, modulus, &acc, &b);
        }
        b = poly_mulmod(p, modulus, &b, &b);
        e >>= 1;
    }
    acc
}

fn poly_gcd(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !(b.len() == 1 && b[0] == 0) {
        let r = poly_rem(p, &a, &b);
        a = b;
        b = r;
    }
    a
}

fn poly_rem(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut divisor = b.to_vec();
    poly_trim(&mut divisor);
    let db = divisor.len() - 1;
    if db == 0 {
        // Division by a nonzero constant leaves no remainder.
        return vec![0];
    }
    let mut rem = a.to_vec();
    poly_trim(&mut rem);
    let lead_inv = mod_inv(*divisor.last().unwrap(), p);
    while rem.len() > db {
        let shift = rem.len() - 1 - db;
        let factor = *rem.last().unwrap() as u64 * lead_inv as u64 % p as u64;
        if factor != 0 {
            for (j, &coef) in divisor.iter().enumerate() {
                let sub = factor * coef as u64 % p as u64;
                let idx = shift + j;
                rem[idx] = ((rem[idx] as u64 + p as u64 - sub) % p as u64) as u32;
            }
        }
        rem.pop();
        poly_trim(&mut rem);
        if rem.len() == 1 && rem[0] == 0 {
            break;
        }
    }
    rem
}

fn mod_inv(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2) mod p.
    let mut acc = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}
