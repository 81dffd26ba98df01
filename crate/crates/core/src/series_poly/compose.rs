//! Modular composition and characteristic polynomials in `R[z]/U`.

use crate::error::Result;
use crate::series::TruncatedSeries;

use super::{newton_sums, QuotientRing, SeriesPoly};

fn isqrt_ceil(n: usize) -> usize {
    let mut k = (n as f64).sqrt() as usize;
    while k * k < n {
        k += 1;
    }
    k.max(1)
}

/// Powers `T^0, ..., T^{k-1}` and `T^k`, all reduced.
fn baby_steps(ring: &QuotientRing, t: &SeriesPoly, k: usize) -> Result<(Vec<SeriesPoly>, SeriesPoly)> {
    let g = ring.degree();
    let t = ring.reduce(t)?;
    let mut pows = vec![SeriesPoly::one(t.ctx(), t.n()).resized_z(g)];
    for i in 1..k {
        let next = ring.mul(&pows[i - 1], &t)?;
        pows.push(next);
    }
    let giant = ring.mul(&pows[k - 1], &t)?;
    Ok((pows, giant))
}

/// `A(T) mod U` by baby-step giant-step.
pub fn modular_compose(a: &SeriesPoly, t: &SeriesPoly, u: &SeriesPoly) -> Result<SeriesPoly> {
    a.check_compatible(t)?;
    let ring = QuotientRing::new(u)?;
    let g = ring.degree();
    let len = a.len();
    if len == 0 {
        return Ok(SeriesPoly::zero(a.ctx(), a.n(), g));
    }
    let k = isqrt_ceil(len);
    let (baby, giant) = baby_steps(&ring, t, k)?;
    let blocks = len.div_ceil(k);
    let mut acc = SeriesPoly::zero(a.ctx(), a.n(), g);
    for j in (0..blocks).rev() {
        let mut block = SeriesPoly::zero(a.ctx(), a.n(), g);
        for (i, p) in baby.iter().enumerate() {
            let idx = j * k + i;
            if idx >= len {
                break;
            }
            let c = a.coeff(idx);
            if c.is_zero() {
                continue;
            }
            block = block.add(&p.scale_series(&c)?.resized_z(g))?;
        }
        acc = if j + 1 == blocks { block } else { ring.mul(&acc, &giant)?.add(&block)? };
    }
    Ok(acc)
}

/// Applies the transpose of multiplication by `b` to a linear functional
/// given by its values on `1, z, ..., z^{g-1}`.
fn transposed_mul(ring: &QuotientRing, b: &SeriesPoly, ell: &SeriesPoly) -> Result<SeriesPoly> {
    let g = ring.degree();
    let rev_u = ring.modulus().reversed(g);
    // Values on z^c for c < 2g-1, from the linear recurrence U gives them.
    let num = ell.mul_range(&rev_u, 0, g);
    let ext = num.mul_range(ring.rev_inverse(), 0, 2 * g - 1);
    super::hankel_apply(&ext, b)
}

/// Characteristic polynomial of multiplication by `T` from the traces of
/// its powers and Newton's identities. Needs `p > g`.
pub(crate) fn min_poly_traces(ring: &QuotientRing, t: &SeriesPoly) -> Result<SeriesPoly> {
    let g = ring.degree();
    let ctx = t.ctx().clone();
    let n = t.n();
    let count = g + 1;
    let k = isqrt_ceil(count);
    let (baby, giant) = baby_steps(ring, t, k)?;

    // Pack the reversed baby steps so one product yields every dot product
    // <ell, P_i>: the value sits at z^{i(2g-1) + g-1}.
    let stride = 2 * g - 1;
    let mut packed = SeriesPoly::zero(&ctx, n, k * stride);
    for (i, p) in baby.iter().enumerate() {
        for c in 0..g {
            packed.block_mut(i * stride + g - 1 - c).copy_from_slice(p.block(c));
        }
    }

    let mut traces = vec![TruncatedSeries::zero(&ctx, n); count];
    let mut ell = newton_sums(ring.modulus(), g)?;
    let mut j = 0;
    while j * k < count {
        let prod = ell.mul(&packed)?;
        for i in 0..k {
            let m = j * k + i;
            if m < count {
                traces[m] = prod.coeff(i * stride + g - 1);
            }
        }
        j += 1;
        if j * k < count {
            ell = transposed_mul(ring, &giant, &ell)?;
        }
    }

    // m c_m = -sum_{i=1}^m c_{m-i} p_i, with c_m the coefficient of z^{g-m}.
    let mut c = vec![TruncatedSeries::constant(&ctx, &ctx.one(), n)];
    for m in 1..=g {
        let mut acc = TruncatedSeries::zero(&ctx, n);
        for i in 1..=m {
            acc = acc.add_unchecked(&c[m - i].mul_unchecked(&traces[i]));
        }
        let inv_m = ctx.inv(&ctx.from_u64(m as u64))?;
        c.push(acc.neg().scale(&inv_m));
    }
    c.reverse();
    SeriesPoly::from_series(&ctx, n, &c)
}

/// Division-free characteristic polynomial `det(zI - A)` (Berkowitz).
/// Returns coefficients from `z^g` down to `z^0`.
pub(crate) fn berkowitz_charpoly(a: &[Vec<TruncatedSeries>]) -> Vec<TruncatedSeries> {
    let size = a.len();
    let ctx = a[0][0].ctx().clone();
    let n = a[0][0].n();
    let one = TruncatedSeries::constant(&ctx, &ctx.one(), n);
    let mut vect = vec![one.clone(), a[0][0].neg()];
    for r in 1..size {
        let mut q = Vec::with_capacity(r + 2);
        q.push(one.clone());
        q.push(a[r][r].neg());
        let mut x: Vec<TruncatedSeries> = (0..r).map(|i| a[i][r].clone()).collect();
        for _ in 2..r + 2 {
            let mut dot = TruncatedSeries::zero(&ctx, n);
            for (i, xi) in x.iter().enumerate() {
                dot = dot.add_unchecked(&a[r][i].mul_unchecked(xi));
            }
            q.push(dot.neg());
            x = (0..r)
                .map(|i| {
                    let mut s = TruncatedSeries::zero(&ctx, n);
                    for (j, xj) in x.iter().enumerate() {
                        s = s.add_unchecked(&a[i][j].mul_unchecked(xj));
                    }
                    s
                })
                .collect();
        }
        vect = (0..r + 2)
            .map(|i| {
                let mut s = TruncatedSeries::zero(&ctx, n);
                for j in 0..=i.min(r) {
                    s = s.add_unchecked(&q[i - j].mul_unchecked(&vect[j]));
                }
                s
            })
            .collect();
    }
    vect
}

/// Characteristic polynomial of multiplication by `T` on `R[z]/U`, monic of
/// degree `g`.
///
/// For `p > g` this uses traces of powers (power projection with transposed
/// products) and Newton's identities; otherwise it falls back to the
/// division-free Berkowitz algorithm on the multiplication matrix.
pub fn min_poly_of(t: &SeriesPoly, u: &SeriesPoly) -> Result<SeriesPoly> {
    t.check_compatible(u)?;
    charpoly_in(&QuotientRing::new(u)?, t)
}

pub(crate) fn charpoly_in(ring: &QuotientRing, t: &SeriesPoly) -> Result<SeriesPoly> {
    let g = ring.degree();
    if t.ctx().p() > g as u64 {
        return min_poly_traces(ring, t);
    }
    let mut cols = Vec::with_capacity(g);
    let mut col = ring.reduce(t)?;
    for c in 0..g {
        cols.push(col.coeffs());
        if c + 1 < g {
            let shifted = SeriesPoly::z(t.ctx(), t.n()).mul(&col)?;
            col = ring.reduce(&shifted)?;
        }
    }
    let matrix: Vec<Vec<TruncatedSeries>> =
        (0..g).map(|r| (0..g).map(|c| cols[c][r].clone()).collect()).collect();
    let mut coeffs = berkowitz_charpoly(&matrix);
    coeffs.reverse();
    SeriesPoly::from_series(t.ctx(), t.n(), &coeffs)
}
