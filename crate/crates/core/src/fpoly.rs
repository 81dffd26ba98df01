//! Dense univariate polynomials over a fixed-point ring, stored as element
//! vectors from low to high degree.
//!
//! Division needs a unit leading coefficient; over a residue field (one
//! digit) that means any nonzero one, and `xgcd` is the usual extended
//! Euclidean algorithm.

use crate::error::{Error, Result};
use crate::padic::{FixedPointElem, PrecisionContext};
use crate::series::elem_poly_mul;

pub type Poly = Vec<FixedPointElem>;

pub fn trim(a: &mut Poly) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

pub fn trimmed(a: &[FixedPointElem]) -> Poly {
    let mut v = a.to_vec();
    trim(&mut v);
    v
}

/// Degree of the trimmed polynomial; `None` for zero.
pub fn degree(a: &[FixedPointElem]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

pub fn add(k: &PrecisionContext, a: &[FixedPointElem], b: &[FixedPointElem]) -> Poly {
    let len = a.len().max(b.len());
    let zero = k.zero();
    let mut out: Poly = (0..len)
        .map(|i| k.add_unchecked(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(&mut out);
    out
}

pub fn sub(k: &PrecisionContext, a: &[FixedPointElem], b: &[FixedPointElem]) -> Poly {
    let len = a.len().max(b.len());
    let zero = k.zero();
    let mut out: Poly = (0..len)
        .map(|i| k.sub_unchecked(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(&mut out);
    out
}

pub fn neg(k: &PrecisionContext, a: &[FixedPointElem]) -> Poly {
    a.iter().map(|c| k.neg(c)).collect()
}

pub fn scale(k: &PrecisionContext, a: &[FixedPointElem], c: &FixedPointElem) -> Poly {
    let mut out: Poly = a.iter().map(|x| k.mul_unchecked(x, c)).collect();
    trim(&mut out);
    out
}

pub fn mul(k: &PrecisionContext, a: &[FixedPointElem], b: &[FixedPointElem]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let d = k.degree();
    let flat = |v: &[FixedPointElem]| -> Vec<u64> {
        v.iter().flat_map(|c| c.coeffs().iter().copied()).collect()
    };
    let prod = elem_poly_mul(k, &flat(a), &flat(b));
    let mut out: Poly = prod.chunks(d).map(|c| FixedPointElem::from_raw(c.to_vec())).collect();
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must have a unit leading coefficient.
pub fn divrem(
    k: &PrecisionContext,
    a: &[FixedPointElem],
    b: &[FixedPointElem],
) -> Result<(Poly, Poly)> {
    let db = degree(b).ok_or(Error::NotInvertible)?;
    let lead_inv = k.inv(&b[db])?;
    let mut r = trimmed(a);
    let Some(da) = degree(&r) else {
        return Ok((Vec::new(), Vec::new()));
    };
    if da < db {
        return Ok((Vec::new(), r));
    }
    let mut q = vec![k.zero(); da - db + 1];
    for i in (db..=da).rev() {
        let c = k.mul_unchecked(&r[i], &lead_inv);
        if c.is_zero() {
            continue;
        }
        for j in 0..=db {
            r[i - db + j] = k.sub_unchecked(&r[i - db + j], &k.mul_unchecked(&c, &b[j]));
        }
        q[i - db] = c;
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    Ok((q, r))
}

pub fn rem(k: &PrecisionContext, a: &[FixedPointElem], b: &[FixedPointElem]) -> Result<Poly> {
    Ok(divrem(k, a, b)?.1)
}

/// Scales to leading coefficient one.
pub fn monic(k: &PrecisionContext, a: &[FixedPointElem]) -> Result<Poly> {
    let Some(d) = degree(a) else {
        return Ok(Vec::new());
    };
    let inv = k.inv(&a[d])?;
    Ok(scale(k, &a[..=d], &inv))
}

/// `(g, s, t)` with `s a + t b = g` and `g` monic (or zero). Field only.
pub fn xgcd(
    k: &PrecisionContext,
    a: &[FixedPointElem],
    b: &[FixedPointElem],
) -> Result<(Poly, Poly, Poly)> {
    let (mut r0, mut r1) = (trimmed(a), trimmed(b));
    let (mut s0, mut s1) = (vec![k.one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![k.one()]);
    while degree(&r1).is_some() {
        let (q, r) = divrem(k, &r0, &r1)?;
        let s = sub(k, &s0, &mul(k, &q, &s1));
        let t = sub(k, &t0, &mul(k, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    match degree(&r0) {
        None => Ok((Vec::new(), s0, t0)),
        Some(d) => {
            let inv = k.inv(&r0[d])?;
            Ok((scale(k, &r0, &inv), scale(k, &s0, &inv), scale(k, &t0, &inv)))
        }
    }
}

pub fn eval(k: &PrecisionContext, a: &[FixedPointElem], x: &FixedPointElem) -> FixedPointElem {
    a.iter().rev().fold(k.zero(), |acc, c| k.add_unchecked(&k.mul_unchecked(&acc, x), c))
}

pub fn derivative(k: &PrecisionContext, a: &[FixedPointElem]) -> Poly {
    let mut out: Poly = a.iter().enumerate().skip(1).map(|(i, c)| k.scale(c, i as u64)).collect();
    trim(&mut out);
    out
}

/// `a^e mod m`.
pub fn pow_mod(
    k: &PrecisionContext,
    a: &[FixedPointElem],
    mut e: u128,
    m: &[FixedPointElem],
) -> Result<Poly> {
    let mut base = rem(k, a, m)?;
    let mut acc = rem(k, &[k.one()], m)?;
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(k, &mul(k, &acc, &base), m)?;
        }
        base = rem(k, &mul(k, &base, &base), m)?;
        e >>= 1;
    }
    Ok(acc)
}
