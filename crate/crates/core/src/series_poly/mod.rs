//! Polynomials in `z` whose coefficients are truncated series in `t`, and
//! the kernels the Mumford Newton step is built from.
//!
//! Storage is z-major: coefficient `z^k` is a contiguous block of `n` ring
//! elements. Products go through Kronecker substitution into a single
//! univariate product, so a product of two degree-`g` polynomials costs
//! `O(M(g n))` rather than `g^2` series products.
//!
//! A polynomial with `n = 1` is just a polynomial over the fixed-point ring;
//! the curve equation and the initial Mumford data are stored that way.

mod compose;
mod quotient;
mod sums;

use std::fmt;
use std::sync::Arc;

use rand::Rng;

pub use compose::{min_poly_of, modular_compose};
pub use quotient::{inverse_sqrt_mod, quotient_inv, quotient_mul, QuotientRing};
pub use sums::{deriv_sums, hankel_apply, newton_sums};

pub(crate) use compose::charpoly_in;

use crate::error::{Error, Result};
use crate::ntt::{add_mod, mul_mod, poly_mul, sub_mod};
use crate::padic::{Ctx, FixedPointElem};
use crate::series::TruncatedSeries;

/// `sum_k c_k(t) z^k` with every `c_k` truncated at `t^n`.
#[derive(Clone)]
pub struct SeriesPoly {
    ctx: Ctx,
    n: usize,
    len: usize,
    data: Vec<u64>,
    loss: u32,
}

/// Equality of values; the precision-loss annotation is ignored.
impl PartialEq for SeriesPoly {
    fn eq(&self, other: &Self) -> bool {
        *self.ctx == *other.ctx && self.n == other.n && self.len == other.len && self.data == other.data
    }
}

impl Eq for SeriesPoly {}

impl fmt::Debug for SeriesPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut l = f.debug_list();
        for k in 0..self.len {
            l.entry(&self.coeff(k));
        }
        l.finish()
    }
}

impl SeriesPoly {
    pub fn zero(ctx: &Ctx, n: usize, len: usize) -> Self {
        SeriesPoly { ctx: ctx.clone(), n, len, data: vec![0; len * n * ctx.degree()], loss: 0 }
    }

    pub fn one(ctx: &Ctx, n: usize) -> Self {
        Self::constant(ctx, &ctx.one(), n)
    }

    /// The constant polynomial `c`.
    pub fn constant(ctx: &Ctx, c: &FixedPointElem, n: usize) -> Self {
        let mut p = Self::zero(ctx, n, 1);
        if n > 0 {
            p.data[..ctx.degree()].copy_from_slice(c.coeffs());
        }
        p
    }

    /// The polynomial `z`.
    pub fn z(ctx: &Ctx, n: usize) -> Self {
        let mut p = Self::zero(ctx, n, 2);
        if n > 0 {
            p.data[n * ctx.degree()] = 1;
        }
        p
    }

    pub fn from_series(ctx: &Ctx, n: usize, coeffs: &[TruncatedSeries]) -> Result<Self> {
        let mut p = Self::zero(ctx, n, coeffs.len());
        let mut loss = 0;
        for (k, c) in coeffs.iter().enumerate() {
            if **c.ctx() != **ctx {
                return Err(Error::ContextMismatch);
            }
            if c.n() != n {
                return Err(Error::LengthMismatch { expected: n, got: c.n() });
            }
            p.block_mut(k).copy_from_slice(&c.data);
            loss = loss.max(c.loss());
        }
        p.loss = loss;
        Ok(p)
    }

    /// Polynomial with coefficients constant in `t`.
    pub fn from_constants(ctx: &Ctx, coeffs: &[FixedPointElem], n: usize) -> Result<Self> {
        let mut p = Self::zero(ctx, n, coeffs.len());
        let d = ctx.degree();
        for (k, c) in coeffs.iter().enumerate() {
            ctx.check(c)?;
            if n > 0 {
                p.block_mut(k)[..d].copy_from_slice(c.coeffs());
            }
        }
        Ok(p)
    }

    /// Degree-one convenience: `coeffs[k][i]` is the coefficient of `z^k t^i`.
    pub fn from_i64s(ctx: &Ctx, coeffs: &[&[i64]], n: usize) -> Self {
        let series: Vec<TruncatedSeries> =
            coeffs.iter().map(|c| TruncatedSeries::from_i64s(ctx, c, n)).collect();
        Self::from_series(ctx, n, &series).expect("same context")
    }

    /// Random polynomial with `len` coefficients.
    pub fn random<R: Rng + ?Sized>(ctx: &Ctx, n: usize, len: usize, rng: &mut R) -> Self {
        let data = (0..len * n * ctx.degree()).map(|_| rng.gen_range(0..ctx.pm())).collect();
        SeriesPoly { ctx: ctx.clone(), n, len, data, loss: 0 }
    }

    /// Random monic polynomial of degree `deg`.
    pub fn random_monic<R: Rng + ?Sized>(ctx: &Ctx, n: usize, deg: usize, rng: &mut R) -> Self {
        let mut p = Self::random(ctx, n, deg + 1, rng);
        p.block_mut(deg).fill(0);
        p.block_mut(deg)[0] = 1;
        p
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    /// Truncation order in `t`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of stored z-coefficients (degree bound plus one).
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn loss(&self) -> u32 {
        self.loss
    }

    pub fn with_loss(mut self, loss: u32) -> Self {
        self.loss = loss;
        self
    }

    fn stride(&self) -> usize {
        self.n * self.ctx.degree()
    }

    pub(crate) fn block(&self, k: usize) -> &[u64] {
        let s = self.stride();
        &self.data[k * s..(k + 1) * s]
    }

    pub(crate) fn block_mut(&mut self, k: usize) -> &mut [u64] {
        let s = self.stride();
        &mut self.data[k * s..(k + 1) * s]
    }

    /// Coefficient of `z^k` (zero past the stored length).
    pub fn coeff(&self, k: usize) -> TruncatedSeries {
        if k >= self.len {
            return TruncatedSeries::zero(&self.ctx, self.n);
        }
        TruncatedSeries::from_raw(&self.ctx, self.n, self.block(k).to_vec(), self.loss)
    }

    pub fn coeffs(&self) -> Vec<TruncatedSeries> {
        (0..self.len).map(|k| self.coeff(k)).collect()
    }

    pub fn set_coeff(&mut self, k: usize, c: &TruncatedSeries) -> Result<()> {
        if c.n() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, got: c.n() });
        }
        if k >= self.len {
            *self = self.resized_z(k + 1);
        }
        self.block_mut(k).copy_from_slice(&c.data);
        self.loss = self.loss.max(c.loss());
        Ok(())
    }

    /// Coefficient of `z^k t^i`.
    pub fn term(&self, k: usize, i: usize) -> FixedPointElem {
        let d = self.ctx.degree();
        if k >= self.len || i >= self.n {
            return self.ctx.zero();
        }
        FixedPointElem::from_raw(self.block(k)[i * d..(i + 1) * d].to_vec())
    }

    /// Highest z-degree with a nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        (0..self.len).rev().find(|&k| self.block(k).iter().any(|&c| c != 0))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&c| c == 0)
    }

    /// Leading coefficient at `z^deg` is exactly one.
    pub fn is_monic(&self, deg: usize) -> bool {
        if self.degree() != Some(deg) {
            return false;
        }
        let b = self.block(deg);
        b[0] == 1 && b[1..].iter().all(|&c| c == 0)
    }

    /// Drops trailing zero coefficients.
    pub fn trimmed(&self) -> Self {
        let len = self.degree().map_or(0, |d| d + 1);
        self.resized_z(len)
    }

    /// Keeps or zero-pads z-coefficients up to `len`.
    pub fn resized_z(&self, len: usize) -> Self {
        let mut data = self.data.clone();
        data.resize(len * self.stride(), 0);
        SeriesPoly { ctx: self.ctx.clone(), n: self.n, len, data, loss: self.loss }
    }

    /// Changes the truncation order, dropping or zero-padding t-terms.
    pub fn resized_t(&self, n: usize) -> Self {
        if n == self.n {
            return self.clone();
        }
        let d = self.ctx.degree();
        let mut out = SeriesPoly::zero(&self.ctx, n, self.len);
        let keep = n.min(self.n) * d;
        for k in 0..self.len {
            out.block_mut(k)[..keep].copy_from_slice(&self.block(k)[..keep]);
        }
        out.loss = self.loss;
        out
    }

    /// Reinterprets the coefficients in a compatible context.
    pub fn convert(&self, other: &Ctx) -> Result<Self> {
        if !self.ctx.compatible(other) {
            return Err(Error::ContextMismatch);
        }
        let m = other.pm();
        let data = self.data.iter().map(|&c| c % m).collect();
        Ok(SeriesPoly { ctx: other.clone(), n: self.n, len: self.len, data, loss: self.loss })
    }

    pub(crate) fn check_compatible(&self, other: &Self) -> Result<()> {
        if !Arc::ptr_eq(&self.ctx, &other.ctx) && *self.ctx != *other.ctx {
            return Err(Error::ContextMismatch);
        }
        if self.n != other.n {
            return Err(Error::LengthMismatch { expected: self.n, got: other.n });
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64, u64) -> u64) -> Self {
        let len = self.len.max(other.len);
        let a = self.resized_z(len);
        let b = other.resized_z(len);
        let m = self.ctx.pm();
        let data = a.data.iter().zip(&b.data).map(|(&x, &y)| f(x, y, m)).collect();
        SeriesPoly { ctx: self.ctx.clone(), n: self.n, len, data, loss: self.loss.max(other.loss) }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, add_mod))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, sub_mod))
    }

    pub fn neg(&self) -> Self {
        let m = self.ctx.pm();
        let data = self.data.iter().map(|&c| sub_mod(0, c, m)).collect();
        SeriesPoly { data, ..self.clone() }
    }

    /// Multiplies every coefficient by a ring element.
    pub fn scale(&self, c: &FixedPointElem) -> Self {
        let d = self.ctx.degree();
        let m = self.ctx.pm();
        let mut data = vec![0u64; self.data.len()];
        if d == 1 {
            let k = c.coeffs()[0];
            for (o, &a) in data.iter_mut().zip(&self.data) {
                *o = mul_mod(a, k, m);
            }
        } else {
            for (o, a) in data.chunks_mut(d).zip(self.data.chunks(d)) {
                self.ctx.mul_words(a, c.coeffs(), o);
            }
        }
        SeriesPoly { data, ..self.clone() }
    }

    /// Multiplies every coefficient by the series `s`.
    pub fn scale_series(&self, s: &TruncatedSeries) -> Result<Self> {
        let sp = SeriesPoly::from_series(&self.ctx, self.n, std::slice::from_ref(s))?;
        self.mul(&sp)
    }

    /// Full product in `z`, truncated at `t^n`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.len == 0 || other.len == 0 {
            return Ok(SeriesPoly::zero(&self.ctx, self.n, 0));
        }
        Ok(self.mul_range(other, 0, self.len + other.len - 1))
    }

    /// Coefficients `z^lo .. z^hi` (exclusive) of the product, re-indexed
    /// from zero.
    pub(crate) fn mul_range(&self, other: &Self, lo: usize, hi: usize) -> Self {
        let ctx = &self.ctx;
        let n = self.n;
        let d = ctx.degree();
        let loss = self.loss.max(other.loss);
        let out_len = hi.saturating_sub(lo);
        if out_len == 0 || self.len == 0 || other.len == 0 || n == 0 {
            return SeriesPoly::zero(ctx, n, out_len).with_loss(loss);
        }
        let la = self.len.min(hi);
        let lb = other.len.min(hi);
        let w = if d == 1 { 1 } else { 2 * d - 1 };
        let slot = (2 * n - 1) * w;
        let pack = |src: &SeriesPoly, len: usize| {
            let mut out = vec![0u64; (len - 1) * slot + n * w];
            for k in 0..len {
                let blk = src.block(k);
                if d == 1 {
                    out[k * slot..k * slot + n].copy_from_slice(blk);
                } else {
                    for i in 0..n {
                        let base = k * slot + i * w;
                        out[base..base + d].copy_from_slice(&blk[i * d..(i + 1) * d]);
                    }
                }
            }
            out
        };
        let prod = poly_mul(&pack(self, la), &pack(other, lb), ctx.pm());
        let mut out = SeriesPoly::zero(ctx, n, out_len);
        let mut wide = vec![0u64; w];
        for k in lo..hi.min(la + lb - 1) {
            let blk = out.block_mut(k - lo);
            for i in 0..n {
                let base = k * slot + i * w;
                if base >= prod.len() {
                    break;
                }
                if d == 1 {
                    blk[i] = prod[base];
                } else {
                    let end = (base + w).min(prod.len());
                    wide.fill(0);
                    wide[..end - base].copy_from_slice(&prod[base..end]);
                    ctx.reduce_wide(&mut wide);
                    blk[i * d..(i + 1) * d].copy_from_slice(&wide[..d]);
                }
            }
        }
        out.loss = loss;
        out
    }

    /// Product truncated to the first `len` z-coefficients.
    pub fn mul_trunc_z(&self, other: &Self, len: usize) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.mul_range(other, 0, len))
    }

    /// `y^k P(1/y)`: coefficient `i` moves to `k - i`. Coefficients above
    /// `k` must be zero.
    pub fn reversed(&self, k: usize) -> Self {
        let mut out = SeriesPoly::zero(&self.ctx, self.n, k + 1);
        for i in 0..=k.min(self.len.saturating_sub(1)) {
            out.block_mut(k - i).copy_from_slice(self.block(i));
        }
        out.loss = self.loss;
        out
    }

    /// Derivative in `z`.
    pub fn derivative_z(&self) -> Self {
        if self.len <= 1 {
            return SeriesPoly::zero(&self.ctx, self.n, 0).with_loss(self.loss);
        }
        let mut out = SeriesPoly::zero(&self.ctx, self.n, self.len - 1);
        for k in 1..self.len {
            let c = self.coeff(k).scale_int(k as u64);
            out.block_mut(k - 1).copy_from_slice(&c.data);
        }
        out.loss = self.loss;
        out
    }

    /// Derivative in `t`, truncated at `t^{n-1}`.
    pub fn derivative_t(&self) -> Self {
        let coeffs: Vec<TruncatedSeries> = self.coeffs().iter().map(|c| c.derive()).collect();
        SeriesPoly::from_series(&self.ctx, self.n.saturating_sub(1), &coeffs)
            .expect("same context")
            .with_loss(self.loss)
    }

    /// Evaluates at `z = x(t)` by Horner's rule.
    pub fn eval_series(&self, x: &TruncatedSeries) -> Result<TruncatedSeries> {
        let mut acc = TruncatedSeries::zero(&self.ctx, self.n);
        for k in (0..self.len).rev() {
            acc = acc.mul(x)?.add_unchecked(&self.coeff(k));
        }
        Ok(acc)
    }

    /// Remainder by a monic polynomial via schoolbook long division.
    pub fn rem_monic(&self, u: &SeriesPoly) -> Result<Self> {
        Ok(self.divrem_monic(u)?.1)
    }

    /// Quotient and remainder by a monic polynomial (schoolbook).
    pub fn divrem_monic(&self, u: &SeriesPoly) -> Result<(Self, Self)> {
        self.check_compatible(u)?;
        let g = u.degree().ok_or(Error::NotMonic(0))?;
        if !u.is_monic(g) {
            return Err(Error::NotMonic(g));
        }
        let mut r = self.clone();
        if r.len <= g {
            return Ok((SeriesPoly::zero(&self.ctx, self.n, 0), r.resized_z(g)));
        }
        let mut q = SeriesPoly::zero(&self.ctx, self.n, r.len - g);
        for k in (g..r.len).rev() {
            let c = r.coeff(k);
            if c.is_zero() {
                continue;
            }
            q.block_mut(k - g).copy_from_slice(&c.data);
            for i in 0..g {
                let prod = c.mul_unchecked(&u.coeff(i));
                let cur = r.coeff(k - g + i).sub_unchecked(&prod);
                r.block_mut(k - g + i).copy_from_slice(&cur.data);
            }
            r.block_mut(k).fill(0);
        }
        q.loss = self.loss.max(u.loss);
        Ok((q, r.resized_z(g).with_loss(self.loss.max(u.loss))))
    }

    /// Value at `t = 0`, as a polynomial with `n = 1`.
    pub fn at_t0(&self) -> Self {
        self.resized_t(1)
    }

    /// Reduction modulo p, into the residue field context.
    pub fn residue(&self) -> Self {
        self.convert(&self.ctx.residue_field()).expect("residue field is compatible")
    }

    /// Constant-in-t coefficients as elements (t^0 terms).
    pub fn constant_terms(&self) -> Vec<FixedPointElem> {
        (0..self.len).map(|k| self.term(k, 0)).collect()
    }

    pub(crate) fn raw(&self) -> &[u64] {
        &self.data
    }

    /// Drops the first `k` z-coefficients (division by `z^k`, discarding
    /// the remainder).
    pub(crate) fn drop_low(&self, k: usize) -> Self {
        let k = k.min(self.len);
        let s = self.stride();
        SeriesPoly {
            ctx: self.ctx.clone(),
            n: self.n,
            len: self.len - k,
            data: self.data[k * s..].to_vec(),
            loss: self.loss,
        }
    }
}
