//! Frobenius on an unramified extension and moving data between a base
//! ring `Z/p^M` and an extension of it.

use crate::error::{Error, Result};
use crate::padic::{Ctx, FixedPointElem};
use crate::series::TruncatedSeries;
use crate::series_poly::SeriesPoly;

/// The lift of `x -> x^p` to an unramified extension `Z_p[a]/(F)`: it sends
/// `a` to the root of `F` congruent to `a^p` mod p.
#[derive(Clone, Debug)]
pub struct Frobenius {
    ctx: Ctx,
    image: Option<FixedPointElem>,
}

impl Frobenius {
    pub fn new(ctx: &Ctx) -> Result<Self> {
        if ctx.degree() == 1 {
            return Ok(Frobenius { ctx: ctx.clone(), image: None });
        }
        let modulus: Vec<FixedPointElem> =
            ctx.modulus().iter().map(|&c| ctx.from_u64(c)).collect();
        let eval = |x: &FixedPointElem, coeffs: &[FixedPointElem]| {
            coeffs.iter().rev().fold(ctx.zero(), |acc, c| {
                ctx.add_unchecked(&ctx.mul_unchecked(&acc, x), c)
            })
        };
        let deriv: Vec<FixedPointElem> = modulus
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| ctx.scale(c, i as u64))
            .collect();
        let mut beta = ctx.pow(&ctx.generator(), ctx.p() as u128);
        let mut prec = 1;
        while prec < ctx.digits() {
            let num = eval(&beta, &modulus);
            let den = ctx.inv(&eval(&beta, &deriv))?;
            beta = ctx.sub_unchecked(&beta, &ctx.mul_unchecked(&num, &den));
            prec *= 2;
        }
        Ok(Frobenius { ctx: ctx.clone(), image: Some(beta) })
    }

    pub fn apply(&self, a: &FixedPointElem) -> FixedPointElem {
        let Some(beta) = &self.image else {
            return a.clone();
        };
        let ctx = &self.ctx;
        a.coeffs().iter().rev().fold(ctx.zero(), |acc, &c| {
            ctx.add_unchecked(&ctx.mul_unchecked(&acc, beta), &ctx.from_u64(c))
        })
    }

    pub fn apply_series(&self, s: &TruncatedSeries) -> TruncatedSeries {
        let coeffs: Vec<FixedPointElem> = s.coeffs().iter().map(|c| self.apply(c)).collect();
        TruncatedSeries::from_elems(&self.ctx, &coeffs, s.n()).expect("same context")
    }
}

/// Base-ring element viewed in an extension with the same prime.
pub fn embed(a: &FixedPointElem, ext: &Ctx) -> FixedPointElem {
    let mut coeffs = vec![0u64; ext.degree()];
    coeffs[0] = a.coeffs()[0] % ext.pm();
    ext.from_coeffs(coeffs).expect("reduced")
}

pub fn embed_series(s: &TruncatedSeries, ext: &Ctx) -> TruncatedSeries {
    let coeffs: Vec<FixedPointElem> = s.coeffs().iter().map(|c| embed(c, ext)).collect();
    TruncatedSeries::from_elems(ext, &coeffs, s.n()).expect("same context")
}

pub fn embed_poly(p: &SeriesPoly, ext: &Ctx) -> SeriesPoly {
    let coeffs: Vec<TruncatedSeries> = p.coeffs().iter().map(|c| embed_series(c, ext)).collect();
    SeriesPoly::from_series(ext, p.n(), &coeffs).expect("same context")
}

/// Extension element that must lie in the base ring.
pub fn descend(a: &FixedPointElem, base: &Ctx) -> Result<FixedPointElem> {
    if a.coeffs()[1..].iter().any(|&c| c % base.pm() != 0) {
        return Err(Error::NotRational);
    }
    Ok(base.from_u64(a.coeffs()[0]))
}

pub fn descend_series(s: &TruncatedSeries, base: &Ctx) -> Result<TruncatedSeries> {
    let coeffs = s.coeffs().iter().map(|c| descend(c, base)).collect::<Result<Vec<_>>>()?;
    TruncatedSeries::from_elems(base, &coeffs, s.n())
}

pub fn descend_poly(p: &SeriesPoly, base: &Ctx) -> Result<SeriesPoly> {
    let coeffs =
        p.coeffs().iter().map(|c| descend_series(c, base)).collect::<Result<Vec<_>>>()?;
    SeriesPoly::from_series(base, p.n(), &coeffs)
}
