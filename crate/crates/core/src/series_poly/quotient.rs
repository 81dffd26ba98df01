//! Arithmetic in `R[z]/U` for a monic `U` of degree `g`.

use crate::error::{Error, Result};
use crate::fpoly;
use crate::ntt::add_mod;
use crate::padic::FixedPointElem;

use super::SeriesPoly;

/// `R[z]/U` with the inverse of the reversal of `U` cached, so that a
/// reduction costs two products instead of a long division.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    u: SeriesPoly,
    g: usize,
    rev_inv: SeriesPoly,
}

/// `2 - x` for a polynomial `x`.
fn two_minus(x: &SeriesPoly) -> SeriesPoly {
    let mut out = x.neg();
    if out.is_empty() {
        out = out.resized_z(1);
    }
    if out.n() > 0 {
        let m = out.ctx().pm();
        let blk = out.block_mut(0);
        blk[0] = add_mod(blk[0], 2 % m, m);
    }
    out
}

/// `(3 - x) / 2`.
fn three_minus_half(x: &SeriesPoly) -> Result<SeriesPoly> {
    let ctx = x.ctx().clone();
    let mut out = x.neg();
    if out.n() > 0 {
        let m = ctx.pm();
        let blk = out.block_mut(0);
        blk[0] = add_mod(blk[0], 3 % m, m);
    }
    Ok(out.scale(&ctx.inv(&ctx.from_u64(2))?))
}

/// Number of Newton doublings that take one correct digit to all of them.
fn digit_rounds(digits: u32) -> u32 {
    let mut r = 0;
    while (1u64 << r) < digits as u64 {
        r += 1;
    }
    r
}

impl QuotientRing {
    pub fn new(u: &SeriesPoly) -> Result<Self> {
        let g = u.degree().ok_or(Error::NotMonic(0))?;
        if !u.is_monic(g) {
            return Err(Error::NotMonic(g));
        }
        let u = u.resized_z(g + 1);
        let rev_inv = Self::reversal_inverse(&u, g, 2 * g + 2);
        Ok(QuotientRing { u, g, rev_inv })
    }

    /// `1 / rev_g(U) mod y^prec` by Newton iteration.
    pub(crate) fn reversal_inverse(u: &SeriesPoly, g: usize, prec: usize) -> SeriesPoly {
        let rev = u.reversed(g);
        let mut inv = SeriesPoly::one(u.ctx(), u.n());
        let mut k = 1;
        while k < prec {
            k = (2 * k).min(prec);
            let e = rev.mul_range(&inv, 0, k);
            inv = inv.mul_range(&two_minus(&e), 0, k);
        }
        inv.resized_z(prec)
    }

    pub fn modulus(&self) -> &SeriesPoly {
        &self.u
    }

    pub fn degree(&self) -> usize {
        self.g
    }

    pub fn n(&self) -> usize {
        self.u.n()
    }

    /// `1 / rev_g(U)` to `y^{2g+2}`.
    pub(crate) fn rev_inverse(&self) -> &SeriesPoly {
        &self.rev_inv
    }

    /// The same ring with every series truncated at `t^n`.
    pub fn truncated(&self, n: usize) -> Self {
        QuotientRing { u: self.u.resized_t(n), g: self.g, rev_inv: self.rev_inv.resized_t(n) }
    }

    /// Remainder of `a` modulo `U`, with exactly `g` coefficients.
    pub fn reduce(&self, a: &SeriesPoly) -> Result<SeriesPoly> {
        a.check_compatible(&self.u)?;
        let g = self.g;
        if a.len() <= g {
            return Ok(a.resized_z(g));
        }
        let top = a.len() - 1;
        let e = top - g;
        let rev_inv = if e < self.rev_inv.len() {
            self.rev_inv.clone()
        } else {
            Self::reversal_inverse(&self.u, g, e + 1)
        };
        let q_rev = a.reversed(top).mul_range(&rev_inv, 0, e + 1);
        let q = q_rev.reversed(e);
        let qu = q.mul_range(&self.u, 0, g);
        a.resized_z(g).sub(&qu)
    }

    pub fn mul(&self, a: &SeriesPoly, b: &SeriesPoly) -> Result<SeriesPoly> {
        self.reduce(&a.mul(b)?)
    }

    /// Inverse of `a` modulo `U`: Bezout over the residue field at `t = 0`,
    /// lifted p-adically and then in `t`.
    pub fn inv(&self, a: &SeriesPoly) -> Result<SeriesPoly> {
        let a = self.reduce(a)?;
        let ctx = a.ctx().clone();
        let k = ctx.residue_field();
        let res = |p: &SeriesPoly| -> Vec<FixedPointElem> {
            p.constant_terms().iter().map(|c| ctx.residue(c)).collect()
        };
        let (gcd, s, _) = fpoly::xgcd(&k, &res(&a), &res(&self.u))?;
        if gcd.len() != 1 {
            return Err(Error::NotInvertible);
        }
        let mut w = SeriesPoly::from_constants(&ctx, &s, 1)?.resized_z(self.g);
        let ring1 = self.truncated(1);
        let a1 = a.resized_t(1);
        for _ in 0..digit_rounds(ctx.digits()) {
            w = ring1.mul(&w, &two_minus(&ring1.mul(&a1, &w)?))?;
        }
        let n = self.n();
        let mut prec = 1;
        while prec < n {
            prec = (2 * prec).min(n);
            let ring = self.truncated(prec);
            let wk = w.resized_t(prec);
            w = ring.mul(&wk, &two_minus(&ring.mul(&a.resized_t(prec), &wk)?))?;
        }
        Ok(w.with_loss(a.loss()))
    }

    /// Refines `w` with `f w^2 = 1 mod (U, t^known)` to full `t`-precision.
    /// `f` must already be reduced modulo `U`.
    pub fn inv_sqrt_from(&self, f: &SeriesPoly, w: &SeriesPoly, known: usize) -> Result<SeriesPoly> {
        let n = self.n();
        let mut w = w.resized_t(n.min(known.max(1)));
        let mut prec = w.n();
        while prec < n {
            prec = (2 * prec).min(n);
            let ring = self.truncated(prec);
            let wk = w.resized_t(prec);
            let fw2 = ring.mul(&f.resized_t(prec), &ring.mul(&wk, &wk)?)?;
            w = ring.mul(&wk, &three_minus_half(&fw2)?)?;
        }
        Ok(w)
    }
}

/// `a b mod U`.
pub fn quotient_mul(a: &SeriesPoly, b: &SeriesPoly, u: &SeriesPoly) -> Result<SeriesPoly> {
    QuotientRing::new(u)?.mul(a, b)
}

/// `a^{-1} mod U`; fails with `NotInvertible` when `a` and `U` share a
/// factor modulo `(p, t)`.
pub fn quotient_inv(a: &SeriesPoly, u: &SeriesPoly) -> Result<SeriesPoly> {
    QuotientRing::new(u)?.inv(a)
}

/// `W` with `W^2 f = 1 mod U`, lifted from an approximation `w_init` that
/// is correct modulo `(p, t)`, together with `V = f W mod U`.
pub fn inverse_sqrt_mod(
    f: &SeriesPoly,
    u: &SeriesPoly,
    w_init: &SeriesPoly,
) -> Result<(SeriesPoly, SeriesPoly)> {
    let ring = QuotientRing::new(u)?;
    let n = ring.n();
    let f = ring.reduce(&f.resized_t(n))?;
    let ring1 = ring.truncated(1);
    let f1 = f.resized_t(1);
    let mut w = ring1.reduce(&w_init.resized_t(1))?;

    let check = ring1.mul(&f1, &ring1.mul(&w, &w)?)?;
    let p = f.ctx().p();
    let is_one = (0..ring.degree()).all(|k| {
        check.block(k).iter().enumerate().all(|(j, &c)| {
            let want = u64::from(k == 0 && j == 0);
            c % p == want
        })
    });
    if !is_one {
        return Err(Error::BadInit);
    }
    for _ in 0..digit_rounds(f.ctx().digits()) {
        let fw2 = ring1.mul(&f1, &ring1.mul(&w, &w)?)?;
        w = ring1.mul(&w, &three_minus_half(&fw2)?)?;
    }
    let w = ring.inv_sqrt_from(&f, &w, 1)?;
    let v = ring.mul(&f, &w)?;
    Ok((w, v))
}
