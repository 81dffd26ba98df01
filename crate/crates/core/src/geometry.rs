//! Curves `y^2 = f(x)` of odd degree, local expansions at a point, and the
//! inputs of the solver: the right-hand side `G(t)` and initial Mumford
//! data.

use crate::error::{Error, Result};
use crate::fpoly::{self, Poly};
use crate::mumford_newton::Rhs;
use crate::padic::{Ctx, FixedPointElem};
use crate::series::TruncatedSeries;
use crate::series_poly::SeriesPoly;

/// `y^2 = f(x)` with `deg f = 2g + 1` and squarefree reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveData {
    pub ctx: Ctx,
    /// Coefficients from low to high degree.
    pub f: Poly,
    pub g: usize,
}

/// A point `(u0, v0)` with `v0^2 = f(u0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvePoint {
    pub u0: FixedPointElem,
    pub v0: FixedPointElem,
}

impl CurveData {
    /// Validates a model over the fixed-point ring.
    pub fn new(ctx: &Ctx, f: Poly) -> Result<Self> {
        for c in &f {
            ctx.check(c)?;
        }
        let f = fpoly::trimmed(&f);
        let k = ctx.residue_field();
        let fbar: Poly = fpoly::trimmed(&f.iter().map(|c| ctx.residue(c)).collect::<Vec<_>>());
        let deg = fpoly::degree(&f).unwrap_or(0);
        if deg < 3 || deg % 2 == 0 {
            return Err(Error::WrongModel(deg));
        }
        if fpoly::degree(&fbar) != Some(deg) {
            return Err(Error::SingularReduction);
        }
        let (gcd, _, _) = fpoly::xgcd(&k, &fbar, &fpoly::derivative(&k, &fbar))?;
        if gcd.len() != 1 {
            return Err(Error::SingularReduction);
        }
        Ok(CurveData { ctx: ctx.clone(), f, g: (deg - 1) / 2 })
    }

    /// A random monic model of genus `g` with good reduction.
    pub fn random<R: rand::Rng + ?Sized>(ctx: &Ctx, g: usize, rng: &mut R) -> Self {
        loop {
            let mut f: Poly = (0..2 * g + 1).map(|_| ctx.random(rng)).collect();
            f.push(ctx.one());
            if let Ok(c) = CurveData::new(ctx, f) {
                return c;
            }
        }
    }

    /// A point with `v0` a unit, found by trying small `u0`.
    pub fn some_point(&self, skip: usize) -> Option<CurvePoint> {
        let ctx = &self.ctx;
        let k = ctx.residue_field();
        (0..ctx.p())
            .filter_map(|u| {
                let fu = ctx.residue(&self.eval(&ctx.from_u64(u)));
                let y = k.residue_sqrt(&fu)?;
                if y.is_zero() {
                    return None;
                }
                self.point(&ctx.from_u64(u), &ctx.from_coeffs_reduced(y.coeffs()).ok()?).ok()
            })
            .nth(skip)
    }

    /// `f` as a polynomial constant in `t`.
    pub fn f_poly(&self) -> SeriesPoly {
        SeriesPoly::from_constants(&self.ctx, &self.f, 1).expect("same context")
    }

    pub fn eval(&self, x: &FixedPointElem) -> FixedPointElem {
        fpoly::eval(&self.ctx, &self.f, x)
    }

    /// Completes `(u0, v0)` to a point: `v0` only has to be right mod p and
    /// is Hensel-lifted.
    pub fn point(&self, u0: &FixedPointElem, v0: &FixedPointElem) -> Result<CurvePoint> {
        let ctx = &self.ctx;
        ctx.check(u0)?;
        let fu = self.eval(u0);
        if !ctx.is_unit(v0) {
            if ctx.residue(&fu).is_zero() {
                return Err(Error::WeierstrassPoint);
            }
            return Err(Error::NotOnCurve);
        }
        let v = ctx.sqrt(&fu, v0).map_err(|e| match e {
            Error::NotUnit | Error::NoSquareRoot | Error::BadBranch => Error::NotOnCurve,
            e => e,
        })?;
        Ok(CurvePoint { u0: u0.clone(), v0: v })
    }
}

/// Lifts a squarefree model over the residue field, coefficient by
/// coefficient, using least nonnegative representatives.
pub fn lift_curve(f_bar: &[FixedPointElem], ctx: &Ctx) -> Result<CurveData> {
    let f = f_bar
        .iter()
        .map(|c| ctx.from_coeffs_reduced(c.coeffs()))
        .collect::<Result<Poly>>()?;
    CurveData::new(ctx, f)
}

/// `u(t) = u0 + t` and the branch of `sqrt(f(u))` through `v0`.
pub fn local_expansion(curve: &CurveData, q: &CurvePoint, n: usize) -> Result<(TruncatedSeries, TruncatedSeries)> {
    let ctx = &curve.ctx;
    if !ctx.is_unit(&q.v0) {
        return Err(Error::WeierstrassPoint);
    }
    let mut u = TruncatedSeries::constant(ctx, &q.u0, n);
    if n > 1 {
        u.set_coeff(1, &ctx.one())?;
    }
    let fu = u.compose_poly(&curve.f)?;
    let v = fu.sqrt(&ctx.residue(&q.v0))?;
    Ok((u, v))
}

/// `(u^k u' / v)_{k < g}` with `u' = 1`.
fn differential_basis(curve: &CurveData, q: &CurvePoint, n: usize) -> Result<Vec<TruncatedSeries>> {
    let (u, v) = local_expansion(curve, q, n)?;
    let mut term = v.inverse()?;
    let mut out = Vec::with_capacity(curve.g);
    for _ in 0..curve.g {
        out.push(term.clone());
        term = term.mul(&u)?;
    }
    Ok(out)
}

/// Right-hand side for multiplication by `ell`: `G_k = ell u^k / v`.
pub fn build_g_mult_ell(curve: &CurveData, q: &CurvePoint, ell: i64, n: usize) -> Result<Rhs> {
    let c = curve.ctx.from_i64(ell);
    Ok(Rhs::new(differential_basis(curve, q, n)?.iter().map(|b| b.scale(&c)).collect()))
}

/// Right-hand side `G = M (u^k / v)_k` for a `g x g` matrix `M`.
pub fn build_g_matrix(curve: &CurveData, q: &CurvePoint, m: &[Vec<FixedPointElem>], n: usize) -> Result<Rhs> {
    let g = curve.g;
    if m.len() != g {
        return Err(Error::LengthMismatch { expected: g, got: m.len() });
    }
    let basis = differential_basis(curve, q, n)?;
    let mut rows = Vec::with_capacity(g);
    for row in m {
        if row.len() != g {
            return Err(Error::LengthMismatch { expected: g, got: row.len() });
        }
        let mut acc = TruncatedSeries::zero(&curve.ctx, n);
        for (c, b) in row.iter().zip(&basis) {
            curve.ctx.check(c)?;
            acc = acc.add(&b.scale(c))?;
        }
        rows.push(acc);
    }
    Ok(Rhs::new(rows))
}

/// `(U0, V0)` through `g` points given over an extension of the base ring
/// (same prime and digits). The point set must be Galois-stable.
pub fn mumford_from_points(
    points: &[(FixedPointElem, FixedPointElem)],
    point_ctx: &Ctx,
    base: &Ctx,
) -> Result<(SeriesPoly, SeriesPoly)> {
    if points.is_empty() {
        return Err(Error::LengthMismatch { expected: 1, got: 0 });
    }
    for (i, (xi, _)) in points.iter().enumerate() {
        for (xj, _) in &points[..i] {
            if point_ctx.residue(xi) == point_ctx.residue(xj) {
                return Err(Error::CollidingRoots);
            }
        }
    }
    let xs: Vec<TruncatedSeries> =
        points.iter().map(|(x, _)| TruncatedSeries::constant(point_ctx, x, 1)).collect();
    let ys: Vec<TruncatedSeries> =
        points.iter().map(|(_, y)| TruncatedSeries::constant(point_ctx, y, 1)).collect();
    crate::oracle::mumford_of_points(base, &xs, &ys)
}

fn to_sp(ctx: &Ctx, p: &[FixedPointElem]) -> SeriesPoly {
    let p = if p.is_empty() { vec![ctx.zero()] } else { p.to_vec() };
    SeriesPoly::from_constants(ctx, &p, 1).expect("same context")
}

fn degenerate(e: Error) -> Error {
    match e {
        Error::NotInvertible | Error::NotUnit | Error::NotMonic(_) => Error::DegenerateDivisor,
        e => e,
    }
}

/// Exact Mumford data of `[ell](Q - infinity)` over the fixed-point ring.
///
/// `ell Q` is `((z - u0)^ell, sqrt(f) expanded at u0 to order ell)`; Cantor
/// reduction brings it to degree `g`. A reduction step whose quotient has a
/// non-unit leading coefficient, or an image that is not `g` distinct
/// non-Weierstrass points mod p, gives `DegenerateDivisor`.
pub fn mult_ell_initial_data(curve: &CurveData, q: &CurvePoint, ell: u64) -> Result<(SeriesPoly, SeriesPoly)> {
    let ctx = &curve.ctx;
    let ell = ell as usize;
    if ell <= curve.g {
        return Err(Error::DegenerateDivisor);
    }
    let (_, v) = local_expansion(curve, q, ell)?;
    // Taylor data in t = z - u0, moved back to z.
    let shift = vec![ctx.neg(&q.u0), ctx.one()];
    let mut a: Poly = vec![ctx.one()];
    let mut b: Poly = Vec::new();
    for i in 0..ell {
        b = fpoly::add(ctx, &b, &fpoly::scale(ctx, &a, &v.coeff(i)));
        a = fpoly::mul(ctx, &a, &shift);
    }
    let mut b = fpoly::trimmed(&b);
    while fpoly::degree(&a).unwrap_or(0) > curve.g {
        let diff = fpoly::sub(ctx, &curve.f, &fpoly::mul(ctx, &b, &b));
        let (quot, rem) = fpoly::divrem(ctx, &diff, &a).map_err(degenerate)?;
        debug_assert!(fpoly::trimmed(&rem).is_empty());
        a = fpoly::monic(ctx, &quot).map_err(degenerate)?;
        b = fpoly::rem(ctx, &fpoly::neg(ctx, &b), &a).map_err(degenerate)?;
    }
    if fpoly::degree(&a) != Some(curve.g) {
        return Err(Error::DegenerateDivisor);
    }
    let u0 = to_sp(ctx, &a);
    let v0 = to_sp(ctx, &b).resized_z(curve.g);
    match crate::mumford_newton::build_initial_state(&u0, &v0, &curve.f_poly()) {
        Ok(_) => Ok((u0, v0)),
        Err(Error::NotSeparable | Error::WeierstrassImage | Error::BadInitialData) => {
            Err(Error::DegenerateDivisor)
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::cantor::FieldCurve;
    use crate::padic::PrecisionContext;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn poly(ctx: &Ctx, v: &[i64]) -> Poly {
        v.iter().map(|&c| ctx.from_i64(c)).collect()
    }

    #[test]
    fn curve_validation() {
        let k = PrecisionContext::new(7, 1).unwrap();
        let ctx = PrecisionContext::new(7, 5).unwrap();
        let c = lift_curve(&poly(&k, &[1, 0, 0, 0, 0, 1]), &ctx).unwrap();
        assert_eq!(c.g, 2);
        assert_eq!(c.f, poly(&ctx, &[1, 0, 0, 0, 0, 1]));
        assert_eq!(lift_curve(&poly(&k, &[0, 0, 0, 0, 0, 1]), &ctx), Err(Error::SingularReduction));
        assert_eq!(lift_curve(&poly(&k, &[1, 0, 0, 0, 1]), &ctx), Err(Error::WrongModel(4)));
    }

    #[test]
    fn expansion_example() {
        let ctx = PrecisionContext::new(7, 3).unwrap();
        let c = CurveData::new(&ctx, poly(&ctx, &[1, 0, 0, 0, 0, 1])).unwrap();
        let q = c.point(&ctx.zero(), &ctx.one()).unwrap();
        let (u, v) = local_expansion(&c, &q, 6).unwrap();
        assert_eq!(v.mul(&v).unwrap(), u.compose_poly(&c.f).unwrap());
        let k = PrecisionContext::new(7, 1).unwrap();
        assert_eq!(v.convert(&k).unwrap(), TruncatedSeries::from_i64s(&k, &[1, 0, 0, 0, 0, 4], 6));
        let g = build_g_mult_ell(&c, &q, 3, 4).unwrap();
        assert_eq!(g.g[0].coeff(0), ctx.from_u64(3));
        assert_eq!(g.g[1].coeff(0), ctx.zero());
        let w = CurvePoint { u0: ctx.from_i64(-1), v0: ctx.zero() };
        assert_eq!(local_expansion(&c, &w, 4).unwrap_err(), Error::WeierstrassPoint);
    }

    #[test]
    fn matrix_rhs_matches_scalar() {
        let ctx = PrecisionContext::new(11, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let c = CurveData::random(&ctx, 2, &mut rng);
        let q = c.some_point(0).unwrap();
        let ell = ctx.from_u64(5);
        let m = vec![vec![ell.clone(), ctx.zero()], vec![ctx.zero(), ell]];
        assert_eq!(build_g_matrix(&c, &q, &m, 8).unwrap(), build_g_mult_ell(&c, &q, 5, 8).unwrap());
    }

    #[test]
    fn interpolation_example() {
        let ctx = PrecisionContext::new(101, 2).unwrap();
        let pts = vec![(ctx.from_u64(1), ctx.from_u64(2)), (ctx.from_u64(2), ctx.from_u64(5))];
        let (u, v) = mumford_from_points(&pts, &ctx, &ctx).unwrap();
        assert_eq!(u, SeriesPoly::from_i64s(&ctx, &[&[2], &[-3], &[1]], 1));
        assert_eq!(v, SeriesPoly::from_i64s(&ctx, &[&[-1], &[3]], 1));
        let dup = vec![(ctx.from_u64(1), ctx.from_u64(2)), (ctx.from_u64(102 % 10201), ctx.from_u64(5))];
        assert_eq!(mumford_from_points(&dup, &ctx, &ctx).unwrap_err(), Error::CollidingRoots);
    }

    #[test]
    fn local_cantor_reduces_to_field_cantor() {
        let ctx = PrecisionContext::new(11, 6).unwrap();
        let k = ctx.residue_field();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let c = CurveData::random(&ctx, 2, &mut rng);
        let fc = FieldCurve::new(&k, c.f.iter().map(|x| ctx.residue(x)).collect()).unwrap();
        let mut checked = 0;
        for q in (0..).map_while(|i| c.some_point(i)) {
            let (u, y) = (ctx.residue(&q.u0), ctx.residue(&q.v0));
            for ell in [3u64, 4, 5, 7] {
                let Ok((u0, v0)) = mult_ell_initial_data(&c, &q, ell) else { continue };
                let d = fc.mul(&fc.point(&u, &y).unwrap(), ell as i64);
                let ubar: Poly = u0.constant_terms().iter().map(|x| ctx.residue(x)).collect();
                let vbar: Poly = fpoly::trimmed(&v0.constant_terms().iter().map(|x| ctx.residue(x)).collect::<Vec<_>>());
                assert_eq!((ubar, vbar), (d.a.clone(), d.b.clone()));
                // exact relation f = V0^2 mod U0 over Z/p^M
                let diff = c.f_poly().sub(&v0.mul(&v0).unwrap()).unwrap();
                assert!(diff.rem_monic(&u0).unwrap().is_zero());
                checked += 1;
            }
        }
        assert!(checked > 5);
    }
}
