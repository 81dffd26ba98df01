//! Dense power series in `t` over the fixed-point ring, truncated at `t^n`.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::ntt::{add_mod, mul_mod, poly_mul, sub_mod};
use crate::padic::{int_valuation, Ctx, FixedPointElem, PrecisionContext};

/// A power series `sum_{i<n} c_i t^i`.
///
/// `loss` counts the p-adic digits that may be wrong at the top of the
/// stored residues because of divisions by powers of p.
#[derive(Clone)]
pub struct TruncatedSeries {
    pub(crate) ctx: Ctx,
    pub(crate) n: usize,
    pub(crate) data: Vec<u64>,
    pub(crate) loss: u32,
}

/// Equality of values; the precision-loss annotation is ignored.
impl PartialEq for TruncatedSeries {
    fn eq(&self, other: &Self) -> bool {
        *self.ctx == *other.ctx && self.n == other.n && self.data == other.data
    }
}

impl Eq for TruncatedSeries {}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.ctx.degree();
        let mut first = true;
        for i in 0..self.n {
            let c = &self.data[i * d..(i + 1) * d];
            if c.iter().all(|&x| x == 0) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if d == 1 {
                write!(f, "{}", c[0])?;
            } else {
                write!(f, "{c:?}")?;
            }
            if i > 0 {
                write!(f, "*t^{i}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.n)
    }
}

/// Full product of two arrays of ring elements (stride `d`) viewed as
/// univariate polynomials. Lengths are in elements.
pub(crate) fn elem_poly_mul(ctx: &PrecisionContext, a: &[u64], b: &[u64]) -> Vec<u64> {
    let d = ctx.degree();
    if d == 1 {
        return poly_mul(a, b, ctx.pm());
    }
    let (la, lb) = (a.len() / d, b.len() / d);
    if la == 0 || lb == 0 {
        return Vec::new();
    }
    let w = 2 * d - 1;
    let pack = |src: &[u64], len: usize| {
        let mut out = vec![0u64; len * w];
        for i in 0..len {
            out[i * w..i * w + d].copy_from_slice(&src[i * d..(i + 1) * d]);
        }
        out
    };
    let prod = poly_mul(&pack(a, la), &pack(b, lb), ctx.pm());
    let len = la + lb - 1;
    let mut out = vec![0u64; len * d];
    let mut block = vec![0u64; w];
    for i in 0..len {
        let end = ((i + 1) * w).min(prod.len());
        block.fill(0);
        block[..end - i * w].copy_from_slice(&prod[i * w..end]);
        ctx.reduce_wide(&mut block);
        out[i * d..(i + 1) * d].copy_from_slice(&block[..d]);
    }
    out
}

impl TruncatedSeries {
    pub fn zero(ctx: &Ctx, n: usize) -> Self {
        TruncatedSeries { ctx: ctx.clone(), n, data: vec![0; n * ctx.degree()], loss: 0 }
    }

    /// The constant series `c`.
    pub fn constant(ctx: &Ctx, c: &FixedPointElem, n: usize) -> Self {
        let mut s = Self::zero(ctx, n);
        if n > 0 {
            s.data[..ctx.degree()].copy_from_slice(c.coeffs());
        }
        s
    }

    /// The series `t` (zero when `n < 2`).
    pub fn variable(ctx: &Ctx, n: usize) -> Self {
        let mut s = Self::zero(ctx, n);
        if n > 1 {
            s.data[ctx.degree()] = 1;
        }
        s
    }

    /// Series from elements; missing terms are zero, extra terms dropped.
    pub fn from_elems(ctx: &Ctx, coeffs: &[FixedPointElem], n: usize) -> Result<Self> {
        let mut s = Self::zero(ctx, n);
        let d = ctx.degree();
        for (i, c) in coeffs.iter().take(n).enumerate() {
            ctx.check(c)?;
            s.data[i * d..(i + 1) * d].copy_from_slice(c.coeffs());
        }
        Ok(s)
    }

    /// Series over a degree-one context from signed integers.
    pub fn from_i64s(ctx: &Ctx, coeffs: &[i64], n: usize) -> Self {
        let elems: Vec<FixedPointElem> = coeffs.iter().map(|&c| ctx.from_i64(c)).collect();
        Self::from_elems(ctx, &elems, n).expect("integers embed in any context")
    }

    pub fn random<R: Rng + ?Sized>(ctx: &Ctx, n: usize, rng: &mut R) -> Self {
        TruncatedSeries {
            ctx: ctx.clone(),
            n,
            data: (0..n * ctx.degree()).map(|_| rng.gen_range(0..ctx.pm())).collect(),
            loss: 0,
        }
    }

    pub(crate) fn from_raw(ctx: &Ctx, n: usize, data: Vec<u64>, loss: u32) -> Self {
        debug_assert_eq!(data.len(), n * ctx.degree());
        TruncatedSeries { ctx: ctx.clone(), n, data, loss }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    /// Truncation order.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Digits possibly lost to p-divisions.
    pub fn loss(&self) -> u32 {
        self.loss
    }

    pub fn with_loss(mut self, loss: u32) -> Self {
        self.loss = loss;
        self
    }

    pub fn coeff(&self, i: usize) -> FixedPointElem {
        let d = self.ctx.degree();
        if i >= self.n {
            return self.ctx.zero();
        }
        FixedPointElem::from_raw(self.data[i * d..(i + 1) * d].to_vec())
    }

    pub fn coeffs(&self) -> Vec<FixedPointElem> {
        (0..self.n).map(|i| self.coeff(i)).collect()
    }

    pub fn set_coeff(&mut self, i: usize, c: &FixedPointElem) -> Result<()> {
        self.ctx.check(c)?;
        let d = self.ctx.degree();
        self.data[i * d..(i + 1) * d].copy_from_slice(c.coeffs());
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&c| c == 0)
    }

    /// Index of the first nonzero coefficient (`n` if zero).
    pub fn t_valuation(&self) -> usize {
        let d = self.ctx.degree();
        (0..self.n)
            .find(|&i| self.data[i * d..(i + 1) * d].iter().any(|&c| c != 0))
            .unwrap_or(self.n)
    }

    /// Keeps the first `n` terms, or pads with zeros.
    pub fn resized(&self, n: usize) -> Self {
        let d = self.ctx.degree();
        let mut data = self.data.clone();
        data.resize(n * d, 0);
        TruncatedSeries { ctx: self.ctx.clone(), n, data, loss: self.loss }
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if !Arc::ptr_eq(&self.ctx, &other.ctx) && *self.ctx != *other.ctx {
            return Err(Error::ContextMismatch);
        }
        if self.n != other.n {
            return Err(Error::LengthMismatch { expected: self.n, got: other.n });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &Self) -> Self {
        let m = self.ctx.pm();
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| add_mod(a, b, m)).collect();
        TruncatedSeries::from_raw(&self.ctx, self.n, data, self.loss.max(other.loss))
    }

    pub(crate) fn sub_unchecked(&self, other: &Self) -> Self {
        let m = self.ctx.pm();
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| sub_mod(a, b, m)).collect();
        TruncatedSeries::from_raw(&self.ctx, self.n, data, self.loss.max(other.loss))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let d = self.ctx.degree();
        let mut data = elem_poly_mul(&self.ctx, &self.data, &other.data);
        data.resize(self.n * d, 0);
        TruncatedSeries::from_raw(&self.ctx, self.n, data, self.loss.max(other.loss))
    }

    pub fn neg(&self) -> Self {
        let m = self.ctx.pm();
        let data = self.data.iter().map(|&a| sub_mod(0, a, m)).collect();
        TruncatedSeries::from_raw(&self.ctx, self.n, data, self.loss)
    }

    /// Multiplies every coefficient by a ring element.
    pub fn scale(&self, c: &FixedPointElem) -> Self {
        let d = self.ctx.degree();
        let mut data = vec![0u64; self.data.len()];
        if d == 1 {
            let (k, m) = (c.coeffs()[0], self.ctx.pm());
            for (o, &a) in data.iter_mut().zip(&self.data) {
                *o = mul_mod(a, k, m);
            }
        } else {
            for i in 0..self.n {
                self.ctx.mul_words(
                    &self.data[i * d..(i + 1) * d],
                    c.coeffs(),
                    &mut data[i * d..(i + 1) * d],
                );
            }
        }
        TruncatedSeries::from_raw(&self.ctx, self.n, data, self.loss)
    }

    /// Multiplies every coefficient by an integer.
    pub fn scale_int(&self, k: u64) -> Self {
        let m = self.ctx.pm();
        let k = k % m;
        let data = self.data.iter().map(|&a| mul_mod(a, k, m)).collect();
        TruncatedSeries::from_raw(&self.ctx, self.n, data, self.loss)
    }

    /// Termwise antiderivative with zero constant term.
    ///
    /// The division by `i + 1` of the coefficient of `t^i` removes
    /// `v_p(i + 1)` digits; the loss grows by the largest such valuation in
    /// range.
    pub fn integrate(&self) -> Result<Self> {
        let ctx = &self.ctx;
        let d = ctx.degree();
        let p = ctx.p();
        let mut out = TruncatedSeries::zero(ctx, self.n);
        let mut max_v = 0;
        for i in 0..self.n.saturating_sub(1) {
            let k = (i + 1) as u64;
            let v = int_valuation(k, p);
            max_v = max_v.max(v);
            let unit = k / p.pow(v);
            let c = self.coeff(i);
            let (q, _) = ctx
                .divide_by_p_power(&c, v)
                .map_err(|_| Error::NonIntegralIntegral { index: i + 1, valuation: v })?;
            let q = if unit == 1 { q } else { ctx.mul_unchecked(&q, &ctx.inv(&ctx.from_u64(unit))?) };
            out.data[(i + 1) * d..(i + 2) * d].copy_from_slice(q.coeffs());
        }
        out.loss = self.loss + max_v;
        Ok(out)
    }

    /// Termwise derivative; the result is truncated at `t^{n-1}`.
    pub fn derive(&self) -> Self {
        let d = self.ctx.degree();
        let n = self.n.saturating_sub(1);
        let m = self.ctx.pm();
        let mut data = vec![0u64; n * d];
        for i in 0..n {
            let k = (i + 1) as u64 % m;
            for j in 0..d {
                data[i * d + j] = mul_mod(self.data[(i + 1) * d + j], k, m);
            }
        }
        TruncatedSeries::from_raw(&self.ctx, n, data, self.loss)
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inverse(&self) -> Result<Self> {
        let ctx = &self.ctx;
        let c0 = ctx.inv(&self.coeff(0))?;
        let mut y = TruncatedSeries::constant(ctx, &c0, 1);
        let two = TruncatedSeries::constant(ctx, &ctx.from_u64(2), self.n);
        let mut k = 1;
        while k < self.n {
            k = (2 * k).min(self.n);
            let y2 = y.resized(k);
            let ay = self.resized(k).mul_unchecked(&y2);
            y = y2.mul_unchecked(&two.resized(k).sub_unchecked(&ay));
        }
        Ok(y.resized(self.n).with_loss(self.loss))
    }

    /// Square root whose constant term reduces to `branch` mod p.
    pub fn sqrt(&self, branch: &FixedPointElem) -> Result<Self> {
        let w = self.inverse_sqrt(branch)?;
        Ok(self.mul_unchecked(&w))
    }

    /// `1/sqrt(self)` with constant term reducing to `1/branch`.
    pub fn inverse_sqrt(&self, branch: &FixedPointElem) -> Result<Self> {
        let ctx = &self.ctx;
        let root0 = ctx.sqrt(&self.coeff(0), branch)?;
        let w0 = ctx.inv(&root0)?;
        let half = ctx.inv(&ctx.from_u64(2))?;
        let three = ctx.from_u64(3);
        let mut w = TruncatedSeries::constant(ctx, &w0, 1);
        let mut k = 1;
        while k < self.n {
            k = (2 * k).min(self.n);
            let wk = w.resized(k);
            let e = self.resized(k).mul_unchecked(&wk.mul_unchecked(&wk));
            let three_k = TruncatedSeries::constant(ctx, &three, k);
            w = wk.mul_unchecked(&three_k.sub_unchecked(&e)).scale(&half);
        }
        Ok(w.resized(self.n).with_loss(self.loss))
    }

    /// Evaluates a polynomial with constant coefficients at this series.
    pub fn compose_poly(&self, poly: &[FixedPointElem]) -> Result<Self> {
        let mut acc = TruncatedSeries::zero(&self.ctx, self.n);
        for c in poly.iter().rev() {
            acc = acc.mul_unchecked(self);
            acc = acc.add_unchecked(&TruncatedSeries::constant(&self.ctx, c, self.n));
        }
        Ok(acc)
    }

    /// Reinterprets the series in a compatible context (reducing digits).
    pub fn convert(&self, other: &Ctx) -> Result<Self> {
        if !self.ctx.compatible(other) {
            return Err(Error::ContextMismatch);
        }
        let m = other.pm();
        let data = self.data.iter().map(|&c| c % m).collect();
        Ok(TruncatedSeries::from_raw(other, self.n, data, self.loss))
    }
}
