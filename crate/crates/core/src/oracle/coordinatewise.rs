//! Direct Newton iteration on the point coordinates `X(t)`, with dense
//! `g x g` linear solves. Restricted to split instances so that everything
//! stays in the base ring.

use crate::error::{Error, Result};
use crate::mumford_newton::Rhs;
use crate::padic::FixedPointElem;
use crate::series::TruncatedSeries;
use crate::series_poly::SeriesPoly;

use super::forward::ForwardInstance;

/// Points `(x_j(0), y_j(0))` over the base ring and the right-hand side.
#[derive(Clone, Debug)]
pub struct SplitInstance {
    pub f: SeriesPoly,
    pub x0: Vec<FixedPointElem>,
    pub y0: Vec<FixedPointElem>,
    pub rhs: Rhs,
}

impl SplitInstance {
    pub fn from_forward(inst: &ForwardInstance) -> Option<SplitInstance> {
        if !inst.split {
            return None;
        }
        Some(SplitInstance {
            f: inst.f.clone(),
            x0: inst.x.iter().map(|x| x.coeff(0)).collect(),
            y0: inst.y.iter().map(|y| y.coeff(0)).collect(),
            rhs: inst.rhs.clone(),
        })
    }
}

/// Solves `A d = b` over truncated series by Gaussian elimination with
/// pivots whose constant term is a unit.
fn solve_dense(mut a: Vec<Vec<TruncatedSeries>>, mut b: Vec<TruncatedSeries>) -> Result<Vec<TruncatedSeries>> {
    let size = b.len();
    for col in 0..size {
        let ctx = a[col][col].ctx().clone();
        let piv = (col..size)
            .find(|&r| ctx.is_unit(&a[r][col].coeff(0)))
            .ok_or(Error::SingularH)?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].inverse()?;
        for r in 0..size {
            if r == col {
                continue;
            }
            let factor = a[r][col].mul_unchecked(&inv);
            if factor.is_zero() {
                continue;
            }
            for c in col..size {
                let sub = factor.mul_unchecked(&a[col][c]);
                a[r][c] = a[r][c].sub_unchecked(&sub);
            }
            let sub = factor.mul_unchecked(&b[col]);
            b[r] = b[r].sub_unchecked(&sub);
        }
        b[col] = b[col].mul_unchecked(&inv);
        let row: Vec<TruncatedSeries> = a[col].iter().map(|e| e.mul_unchecked(&inv)).collect();
        a[col] = row;
    }
    Ok(b)
}

/// `X(t) mod t^n` by `X <- X + H(X)^{-1} integral(G - H(X) X')`.
pub fn solve_coordinatewise(inst: &SplitInstance, n: usize) -> Result<Vec<TruncatedSeries>> {
    let ctx = inst.f.ctx().clone();
    let g = inst.x0.len();
    let fcoeffs = inst.f.constant_terms();
    let mut xs: Vec<TruncatedSeries> =
        inst.x0.iter().map(|x| TruncatedSeries::constant(&ctx, x, 1)).collect();
    let mut m = 1;
    if n <= 1 {
        return Ok(xs.iter().map(|x| x.resized(n)).collect());
    }
    while m < n {
        let target = (2 * m).min(n);
        let x: Vec<TruncatedSeries> = xs.iter().map(|s| s.resized(target)).collect();
        let mut h = vec![Vec::with_capacity(g); g];
        let mut hx_prime = vec![TruncatedSeries::zero(&ctx, target - 1); g];
        for (j, xj) in x.iter().enumerate() {
            let fx = xj.compose_poly(&fcoeffs)?;
            let inv_y = fx.inverse_sqrt(&ctx.residue(&inst.y0[j]))?;
            let dx = xj.derive();
            let mut entry = inv_y.clone();
            for (k, row) in h.iter_mut().enumerate() {
                row.push(entry.clone());
                hx_prime[k] = hx_prime[k].add_unchecked(&entry.resized(target - 1).mul_unchecked(&dx));
                entry = entry.mul_unchecked(xj);
            }
        }
        let rhs: Vec<TruncatedSeries> = (0..g)
            .map(|k| {
                let gk = inst.rhs.g[k].resized(target - 1);
                gk.sub_unchecked(&hx_prime[k]).resized(target).integrate()
            })
            .collect::<Result<_>>()?;
        let delta = solve_dense(h, rhs)?;
        xs = x.iter().zip(&delta).map(|(a, d)| a.add_unchecked(d)).collect();
        m = target;
    }
    Ok(xs)
}

/// `prod (z - x_j)`.
pub fn product_of_roots(xs: &[TruncatedSeries]) -> Result<SeriesPoly> {
    let ctx = xs[0].ctx().clone();
    let n = xs[0].n();
    let one = TruncatedSeries::constant(&ctx, &ctx.one(), n);
    let mut u = SeriesPoly::one(&ctx, n);
    for x in xs {
        u = u.mul(&SeriesPoly::from_series(&ctx, n, &[x.neg(), one.clone()])?)?;
    }
    Ok(u)
}

/// `H(X) X' - G` for explicit points.
pub fn coordinate_residual(inst: &SplitInstance, xs: &[TruncatedSeries]) -> Result<Vec<TruncatedSeries>> {
    let ctx = inst.f.ctx().clone();
    let n = xs[0].n();
    let fcoeffs = inst.f.constant_terms();
    let g = xs.len();
    let mut out: Vec<TruncatedSeries> = (0..g).map(|k| inst.rhs.g[k].resized(n - 1).neg()).collect();
    for (j, xj) in xs.iter().enumerate() {
        let inv_y = xj.compose_poly(&fcoeffs)?.inverse_sqrt(&ctx.residue(&inst.y0[j]))?;
        let dx = xj.derive();
        let mut entry = inv_y.resized(n - 1);
        for o in out.iter_mut() {
            *o = o.add_unchecked(&entry.mul_unchecked(&dx));
            entry = entry.mul_unchecked(&xj.resized(n - 1));
        }
    }
    Ok(out)
}
