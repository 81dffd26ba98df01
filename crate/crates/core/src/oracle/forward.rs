//! Instances with a known solution: choose the points `X(t)` first, then
//! compute `G = H(X) X'` directly from them.
//!
//! Nothing here uses Mumford coordinates or Hankel structure; `G` and the
//! expected `U = prod (z - x_j(t))` come from plain series arithmetic on
//! the individual points.

use rand::Rng;

use crate::error::{Error, Result};
use crate::fpoly;
use crate::mumford_newton::Rhs;
use crate::padic::{Ctx, FixedPointElem, PrecisionContext};
use crate::series::TruncatedSeries;
use crate::series_poly::SeriesPoly;

use super::galois::{descend_poly, descend_series, Frobenius};

/// A forward-generated problem and its solution.
#[derive(Clone, Debug)]
pub struct ForwardInstance {
    /// Curve polynomial over the base ring (`n = 1`).
    pub f: SeriesPoly,
    pub u0: SeriesPoly,
    pub v0: SeriesPoly,
    pub rhs: Rhs,
    /// Expected solution modulo `t^n`.
    pub u: SeriesPoly,
    /// The chosen points, over the ring where they live.
    pub x: Vec<TruncatedSeries>,
    pub y: Vec<TruncatedSeries>,
    /// All `x_j(t)` lie in the base ring.
    pub split: bool,
}

impl ForwardInstance {
    pub fn genus(&self) -> usize {
        self.u0.len() - 1
    }

    pub fn n(&self) -> usize {
        self.u.n()
    }

    /// The same instance in a context with fewer (or equally many) digits.
    pub fn with_digits(&self, digits: u32) -> Result<ForwardInstance> {
        let base = self.f.ctx().with_digits(digits)?;
        let point_ctx = self.x[0].ctx().with_digits(digits)?;
        let conv = |s: &TruncatedSeries| s.convert(&point_ctx);
        Ok(ForwardInstance {
            f: self.f.convert(&base)?,
            u0: self.u0.convert(&base)?,
            v0: self.v0.convert(&base)?,
            rhs: Rhs::new(self.rhs.g.iter().map(|s| s.convert(&base)).collect::<Result<_>>()?),
            u: self.u.convert(&base)?,
            x: self.x.iter().map(conv).collect::<Result<_>>()?,
            y: self.y.iter().map(conv).collect::<Result<_>>()?,
            split: self.split,
        })
    }
}

fn residues(p: &SeriesPoly) -> Vec<FixedPointElem> {
    let ctx = p.ctx();
    let mut v: Vec<FixedPointElem> = p.constant_terms().iter().map(|c| ctx.residue(c)).collect();
    fpoly::trim(&mut v);
    v
}

fn random_poly<R: Rng + ?Sized>(ctx: &Ctx, len: usize, rng: &mut R) -> SeriesPoly {
    SeriesPoly::random(ctx, 1, len, rng)
}

/// `f = V0^2 + U0 h` with `h` monic of degree `g + 1`, redrawn until `f` is
/// squarefree mod p and `V0` is a unit at every root of `U0`.
fn curve_through<R: Rng + ?Sized>(u0: &SeriesPoly, rng: &mut R) -> (SeriesPoly, SeriesPoly) {
    let ctx = u0.ctx().clone();
    let k = ctx.residue_field();
    let g = u0.len() - 1;
    loop {
        let v0 = random_poly(&ctx, g, rng);
        let h = SeriesPoly::random_monic(&ctx, 1, g + 1, rng);
        let f = v0.mul(&v0).unwrap().add(&u0.mul(&h).unwrap()).unwrap();
        let fbar = residues(&f);
        let (gf, _, _) = fpoly::xgcd(&k, &fbar, &fpoly::derivative(&k, &fbar)).unwrap();
        let (gv, _, _) = fpoly::xgcd(&k, &residues(&v0), &residues(u0)).unwrap();
        if gf.len() == 1 && gv.len() == 1 {
            return (f, v0);
        }
    }
}

/// `x(0) + sum_{1 <= i <= n} c_i t^i` with random `c_i`.
fn random_path<R: Rng + ?Sized>(ctx: &Ctx, x0: &FixedPointElem, n: usize, rng: &mut R) -> TruncatedSeries {
    let mut s = TruncatedSeries::random(ctx, n + 1, rng);
    s.set_coeff(0, x0).unwrap();
    s
}

/// Evaluates the base-ring polynomial `p` (constant in `t`) at a series
/// over a possibly larger ring.
fn eval_at(p: &SeriesPoly, x: &TruncatedSeries) -> TruncatedSeries {
    let ext = x.ctx();
    let coeffs: Vec<FixedPointElem> = if ext.degree() == p.ctx().degree() {
        p.constant_terms()
    } else {
        p.constant_terms().iter().map(|c| super::galois::embed(c, ext)).collect()
    };
    x.compose_poly(&coeffs).unwrap()
}

/// Completes an instance from the roots `x_j(t)` (length `n + 1`).
fn finish<R: Rng + ?Sized>(
    base: &Ctx,
    roots: Vec<TruncatedSeries>,
    n: usize,
    split: bool,
    rng: &mut R,
) -> Result<ForwardInstance> {
    let ext = roots[0].ctx().clone();
    let g = roots.len();
    let one = TruncatedSeries::constant(&ext, &ext.one(), n + 1);
    let mut u_ext = SeriesPoly::one(&ext, n + 1);
    for x in &roots {
        let lin = SeriesPoly::from_series(&ext, n + 1, &[x.neg(), one.clone()])?;
        u_ext = u_ext.mul(&lin)?;
    }
    let u_full = descend_poly(&u_ext, base)?;
    let u0 = u_full.resized_t(1);
    let (f, v0) = curve_through(&u0, rng);

    let mut ys = Vec::with_capacity(g);
    let mut gk = vec![TruncatedSeries::zero(&ext, n); g];
    for x in &roots {
        let fx = eval_at(&f, x);
        let branch = ext.residue(&eval_at(&v0, &x.resized(1)).coeff(0));
        let inv_y = fx.inverse_sqrt(&branch)?;
        ys.push(fx.mul(&inv_y)?);
        // x^k x' / y, k = 0..g-1
        let mut term = x.derive().mul(&inv_y.resized(n))?;
        let xn = x.resized(n);
        for acc in gk.iter_mut() {
            *acc = acc.add(&term)?;
            term = term.mul(&xn)?;
        }
    }
    let rhs = Rhs::new(gk.iter().map(|s| descend_series(s, base)).collect::<Result<_>>()?);
    Ok(ForwardInstance {
        f,
        u0: u0.clone(),
        v0,
        rhs,
        u: u_full.resized_t(n),
        x: roots.iter().map(|x| x.resized(n)).collect(),
        y: ys.iter().map(|y| y.resized(n)).collect(),
        split,
    })
}

/// `g` independent points over the base ring with distinct `x_j(0)` mod p.
/// Uses units when `p - 1 >= g`; needs `g <= p`.
pub fn forward_split<R: Rng + ?Sized>(ctx: &Ctx, g: usize, n: usize, rng: &mut R) -> Result<ForwardInstance> {
    let q = ctx.residue_size();
    if (g as u128) > q {
        return Err(Error::CollidingRoots);
    }
    let allow_zero = (g as u128) > q - 1;
    let mut chosen: Vec<FixedPointElem> = Vec::new();
    while chosen.len() < g {
        let c = ctx.random(rng);
        let r = ctx.residue(&c);
        if (!allow_zero && r.is_zero()) || chosen.iter().any(|x| ctx.residue(x) == r) {
            continue;
        }
        chosen.push(c);
    }
    let roots = chosen.iter().map(|x0| random_path(ctx, x0, n, rng)).collect();
    finish(ctx, roots, n, true, rng)
}

/// One Galois orbit of size `g`: `x_1(t)` over the degree-`g` unramified
/// extension with `x_1(0)` generating the residue field extension, and
/// `x_j = sigma^{j-1}(x_1)`. Works for any `g` and `p`.
pub fn forward_orbit<R: Rng + ?Sized>(ctx: &Ctx, g: usize, n: usize, rng: &mut R) -> Result<ForwardInstance> {
    if ctx.degree() != 1 {
        return Err(Error::InvalidContext("orbit instances need a prime-field base".into()));
    }
    if g == 1 {
        return forward_split(ctx, 1, n, rng);
    }
    let ext = PrecisionContext::unramified(ctx.p(), ctx.digits(), g)?;
    let frob = Frobenius::new(&ext)?;
    let x1 = loop {
        let x0 = ext.random(rng);
        let mut conj = vec![ext.residue(&x0)];
        for _ in 1..g {
            let next = ext.residue(&frob.apply(conj.last().unwrap()));
            conj.push(next);
        }
        let distinct = (0..g).all(|i| (0..i).all(|j| conj[i] != conj[j]));
        if distinct {
            break random_path(&ext, &x0, n, rng);
        }
    };
    let mut roots = vec![x1];
    for _ in 1..g {
        let next = frob.apply_series(roots.last().unwrap());
        roots.push(next);
    }
    finish(ctx, roots, n, false, rng)
}

/// Split when distinct unit starting points exist (`g < p`), otherwise a
/// single orbit.
pub fn forward_instance<R: Rng + ?Sized>(ctx: &Ctx, g: usize, n: usize, rng: &mut R) -> Result<ForwardInstance> {
    if (g as u64) < ctx.p() || ctx.degree() > 1 {
        forward_split(ctx, g, n, rng)
    } else {
        forward_orbit(ctx, g, n, rng)
    }
}

/// Mumford data `(U, V)` of points given over an extension, pushed down to
/// the base ring.
pub fn mumford_of_points(
    base: &Ctx,
    xs: &[TruncatedSeries],
    ys: &[TruncatedSeries],
) -> Result<(SeriesPoly, SeriesPoly)> {
    let ext = xs[0].ctx().clone();
    let n = xs[0].n();
    let g = xs.len();
    let one = TruncatedSeries::constant(&ext, &ext.one(), n);
    let mut u = SeriesPoly::one(&ext, n);
    for x in xs {
        u = u.mul(&SeriesPoly::from_series(&ext, n, &[x.neg(), one.clone()])?)?;
    }
    // Lagrange: V = sum_j y_j U / ((z - x_j) U'(x_j)).
    let mut v = SeriesPoly::zero(&ext, n, g);
    for (j, (x, y)) in xs.iter().zip(ys).enumerate() {
        let mut basis = SeriesPoly::one(&ext, n);
        let mut den = one.clone();
        for (i, xi) in xs.iter().enumerate() {
            if i != j {
                basis = basis.mul(&SeriesPoly::from_series(&ext, n, &[xi.neg(), one.clone()])?)?;
                den = den.mul(&x.sub(xi)?)?;
            }
        }
        let coef = y.mul(&den.inverse()?)?;
        v = v.add(&basis.scale_series(&coef)?.resized_z(g))?;
    }
    Ok((descend_poly(&u, base)?, descend_poly(&v, base)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::PrecisionContext;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn instances_are_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for (p, g) in [(7, 3), (3, 4), (5, 2)] {
            let ctx = PrecisionContext::new(p, 6).unwrap();
            for inst in [forward_instance(&ctx, g, 10, &mut rng).unwrap()] {
                assert_eq!(inst.genus(), g);
                for (x, y) in inst.x.iter().zip(&inst.y) {
                    assert_eq!(y.mul(y).unwrap(), eval_at(&inst.f, x));
                }
                let (u, v) = mumford_of_points(&ctx, &inst.x, &inst.y).unwrap();
                assert_eq!(u, inst.u);
                assert_eq!(v.resized_t(1), inst.v0.resized_z(g));
            }
        }
    }
}
