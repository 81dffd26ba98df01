//! Power sums of the roots of `U` and the Hankel products built from them.
//!
//! Writing `x_1, ..., x_g` for the roots of `U`, both families come out of a
//! single power-series division in `y = 1/z`:
//!
//! ```text
//! rev(U') / rev(U)    = sum_i  (sum_j x_j^i)        y^i
//! rev(-U_t) / rev(U)  = sum_i  (sum_j x_j^i x_j')   y^i
//! ```

use crate::error::{Error, Result};

use super::{QuotientRing, SeriesPoly};

fn series_quotient(num: &SeriesPoly, u: &SeriesPoly, count: usize) -> Result<SeriesPoly> {
    let g = u.degree().ok_or(Error::NotMonic(0))?;
    if !u.is_monic(g) {
        return Err(Error::NotMonic(g));
    }
    let u = u.resized_t(num.n());
    let inv = QuotientRing::reversal_inverse(&u, g, count);
    Ok(num.reversed(g.saturating_sub(1)).mul_range(&inv, 0, count))
}

/// Power sums `s_i = sum_j x_j^i` for `i < count`; `s_0 = g`.
pub fn newton_sums(u: &SeriesPoly, count: usize) -> Result<SeriesPoly> {
    let du = u.derivative_z();
    series_quotient(&du.resized_z(u.len().saturating_sub(1).max(1)), u, count)
}

/// `r_i = sum_j x_j^i x_j'` for `i < count`, where `'` is `d/dt`. The result
/// is truncated at `t^{n-1}` since `U_t` is.
pub fn deriv_sums(u: &SeriesPoly, count: usize) -> Result<SeriesPoly> {
    let g = u.degree().ok_or(Error::NotMonic(0))?;
    let ut = u.derivative_t().resized_z(g.max(1)).neg();
    series_quotient(&ut, u, count)
}

/// `out_k = sum_{i<g} r_{k+i} w_i` for `k < g`, with `g = w.len()`, as one
/// product: the entries are the middle coefficients of `R(y) * rev(W)(y)`.
pub fn hankel_apply(r: &SeriesPoly, w: &SeriesPoly) -> Result<SeriesPoly> {
    let g = w.len();
    if g == 0 {
        return Ok(SeriesPoly::zero(r.ctx(), r.n(), 0));
    }
    if r.len() + 1 < 2 * g {
        return Err(Error::LengthMismatch { expected: 2 * g - 1, got: r.len() });
    }
    r.check_compatible(w)?;
    let r = r.resized_z(2 * g - 1);
    Ok(r.mul_range(&w.reversed(g - 1), g - 1, 2 * g - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::PrecisionContext;
    use crate::series::TruncatedSeries;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sums_of_known_roots() {
        let ctx = PrecisionContext::new(101, 2).unwrap();
        // U = (z - 1)(z - 2) = z^2 - 3z + 2
        let u = SeriesPoly::from_i64s(&ctx, &[&[2], &[-3], &[1]], 1);
        let s = newton_sums(&u, 5).unwrap();
        let want = [2, 3, 5, 9, 17];
        for (i, &w) in want.iter().enumerate() {
            assert_eq!(s.term(i, 0), ctx.from_i64(w), "s_{i}");
        }
    }

    #[test]
    fn sums_against_explicit_roots() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ctx = PrecisionContext::new(7, 5).unwrap();
        let n = 10;
        let g = 3;
        let roots: Vec<TruncatedSeries> =
            (0..g).map(|_| TruncatedSeries::random(&ctx, n, &mut rng)).collect();
        let mut u = SeriesPoly::one(&ctx, n);
        for x in &roots {
            let lin = SeriesPoly::from_series(&ctx, n, &[x.neg(), TruncatedSeries::constant(&ctx, &ctx.one(), n)])
                .unwrap();
            u = u.mul(&lin).unwrap();
        }
        let s = newton_sums(&u, 2 * g).unwrap();
        let r = deriv_sums(&u, 2 * g).unwrap();
        for i in 0..2 * g {
            let mut ps = TruncatedSeries::zero(&ctx, n);
            let mut ds = TruncatedSeries::zero(&ctx, n - 1);
            for x in &roots {
                let mut xi = TruncatedSeries::constant(&ctx, &ctx.one(), n);
                for _ in 0..i {
                    xi = xi.mul(x).unwrap();
                }
                ps = ps.add(&xi).unwrap();
                ds = ds.add(&xi.resized(n - 1).mul(&x.derive()).unwrap()).unwrap();
            }
            assert_eq!(s.coeff(i), ps, "s_{i}");
            assert_eq!(r.coeff(i), ds, "r_{i}");
        }
    }

    #[test]
    fn hankel_matches_definition() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let ctx = PrecisionContext::with_modulus(5, 3, &[2, 0, 1]).unwrap();
        let g = 4;
        let r = SeriesPoly::random(&ctx, 6, 2 * g - 1, &mut rng);
        let w = SeriesPoly::random(&ctx, 6, g, &mut rng);
        let h = hankel_apply(&r, &w).unwrap();
        for k in 0..g {
            let mut acc = TruncatedSeries::zero(&ctx, 6);
            for i in 0..g {
                acc = acc.add(&r.coeff(k + i).mul(&w.coeff(i)).unwrap()).unwrap();
            }
            assert_eq!(h.coeff(k), acc);
        }
    }
}
