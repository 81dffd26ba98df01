//! Rational representation of an isogeny: the coefficients of `(U, V)` as
//! rational fractions of the coordinate of the source point, recovered from
//! the series solution by Padé approximation.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fpoly::{self, Poly};
use crate::geometry::{local_expansion, CurveData, CurvePoint};
use crate::padic::{Ctx, FixedPointElem};
use crate::series::TruncatedSeries;
use crate::series_poly::SeriesPoly;

/// `num / den` with `den(0) = 1` (in the variable `t`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction {
    pub num: Poly,
    pub den: Poly,
}

impl Fraction {
    /// `max(deg num, deg den)`.
    pub fn degree(&self) -> usize {
        fpoly::degree(&self.num).unwrap_or(0).max(fpoly::degree(&self.den).unwrap_or(0))
    }

    /// Power series of `num / den` to order `n`.
    pub fn expand(&self, ctx: &Ctx, n: usize) -> Result<TruncatedSeries> {
        let num = TruncatedSeries::from_elems(ctx, &self.num, n)?;
        let den = TruncatedSeries::from_elems(ctx, &self.den, n)?;
        num.mul(&den.inverse()?)
    }

    /// `num(x) / den(x)`; `PoleAtPoint` when `den(x)` is not a unit.
    pub fn eval(&self, ctx: &Ctx, x: &FixedPointElem) -> Result<FixedPointElem> {
        let d = fpoly::eval(ctx, &self.den, x);
        let inv = ctx.inv(&d).map_err(|_| Error::PoleAtPoint)?;
        Ok(ctx.mul(&fpoly::eval(ctx, &self.num, x), &inv)?)
    }

    fn map(&self, f: impl Fn(&Poly) -> Result<Poly>) -> Result<Fraction> {
        Ok(Fraction { num: f(&self.num)?, den: f(&self.den)? })
    }
}

/// Solves `a x = b` by elimination with unit pivots; `None` if some column
/// has no unit pivot.
fn solve_unit_pivot(ctx: &Ctx, mut a: Vec<Vec<FixedPointElem>>, mut b: Vec<FixedPointElem>) -> Option<Vec<FixedPointElem>> {
    let size = b.len();
    for col in 0..size {
        let piv = (col..size).find(|&r| ctx.is_unit(&a[r][col]))?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = ctx.inv(&a[col][col]).ok()?;
        for c in col..size {
            a[col][c] = ctx.mul_unchecked(&a[col][c], &inv);
        }
        b[col] = ctx.mul_unchecked(&b[col], &inv);
        for r in 0..size {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..size {
                let s = ctx.mul_unchecked(&factor, &a[col][c]);
                a[r][c] = ctx.sub_unchecked(&a[r][c], &s);
            }
            let s = ctx.mul_unchecked(&factor, &b[col]);
            b[r] = ctx.sub_unchecked(&b[r], &s);
        }
    }
    Some(b)
}

/// Padé approximant with `deg num <= d_num`, `deg den <= d_den`, matching `s`
/// modulo `t^{d_num + d_den + 1}`.
///
/// Denominator degrees are tried in increasing order, so the result is the
/// reduced fraction whenever one exists within the bounds.
pub fn pade(s: &TruncatedSeries, d_num: usize, d_den: usize) -> Result<Fraction> {
    let ctx = s.ctx().clone();
    let order = d_num + d_den + 1;
    if s.n() < order {
        return Err(Error::TooFewTerms { have: s.n(), need: order });
    }
    let sc = |i: isize| if i < 0 { ctx.zero() } else { s.coeff(i as usize) };
    let target = s.resized(order);
    for e in 0..=d_den {
        // sum_{j=1..e} q_j s_{k-j} = -s_k for k = d_num+1 .. d_num+e
        let rows: Vec<usize> = (d_num + 1..=d_num + e).collect();
        let a = rows
            .iter()
            .map(|&k| (1..=e).map(|j| sc(k as isize - j as isize)).collect())
            .collect();
        let b = rows.iter().map(|&k| ctx.neg(&sc(k as isize))).collect();
        let Some(q) = solve_unit_pivot(&ctx, a, b) else { continue };
        let mut den = vec![ctx.one()];
        den.extend(q);
        let den_series = TruncatedSeries::from_elems(&ctx, &den, order)?;
        let num_series = target.mul(&den_series)?;
        let num = fpoly::trimmed(&num_series.coeffs());
        if num.len() <= d_num + 1 {
            return Ok(Fraction { num, den: fpoly::trimmed(&den) });
        }
    }
    Err(Error::NoSolution)
}

/// Variable the fractions are written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variable {
    /// The local parameter `t = u - u0`.
    T,
    /// The source coordinate `u`.
    U,
}

/// `U_i = u_fracs[i]` and `V_i = v * v_fracs[i]` as functions of a source
/// point `(u, v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalRepresentation {
    pub ctx: Ctx,
    pub g: usize,
    pub u0: FixedPointElem,
    pub variable: Variable,
    pub u_fracs: Vec<Fraction>,
    pub v_fracs: Vec<Fraction>,
}

/// Default degree bound `2 g ell + g`.
pub fn default_bound(g: usize, ell: usize) -> usize {
    2 * g * ell + g
}

/// Bound for multiplication by `ell`, which behaves as an isogeny with
/// parameter `ell^2`: measured degrees are `2 ell^2 - 1` for `U` and
/// `3 ell^2 - 2` for `V / v` in genus 2.
pub fn mult_ell_bound(g: usize, ell: usize) -> usize {
    default_bound(g, ell * ell)
}

/// Series order needed for a degree bound.
pub fn order_for_bound(bound: usize) -> usize {
    2 * bound + 2
}

/// Padé on each `z`-coefficient of `U` and of `V / v`.
///
/// `V` changes sign with `v` under the hyperelliptic involution of the source
/// curve, so `V_i / v` is rational in `u` while `V_i` itself is not.
pub fn reconstruct(
    u_sol: &SeriesPoly,
    v_sol: &SeriesPoly,
    curve: &CurveData,
    q: &CurvePoint,
    bound: usize,
) -> Result<RationalRepresentation> {
    let ctx = u_sol.ctx().clone();
    let n = u_sol.n();
    let need = order_for_bound(bound);
    if n < need {
        return Err(Error::TooFewTerms { have: n, need });
    }
    let g = u_sol.len() - 1;
    let to_out = |x: &FixedPointElem| curve.ctx.convert(x, &ctx);
    let q_out = CurvePoint { u0: to_out(&q.u0)?, v0: to_out(&q.v0)? };
    let curve_out = CurveData { ctx: ctx.clone(), f: curve.f.iter().map(to_out).collect::<Result<_>>()?, g: curve.g };
    let (_, v) = local_expansion(&curve_out, &q_out, n)?;
    let v_inv = v.inverse()?;
    let u_fracs = (0..g)
        .map(|i| pade(&u_sol.coeff(i).resized(n), bound, bound))
        .collect::<Result<_>>()?;
    let v_fracs = (0..g)
        .map(|i| pade(&v_sol.coeff(i).resized(n).mul(&v_inv)?, bound, bound))
        .collect::<Result<_>>()?;
    Ok(RationalRepresentation { ctx, g, u0: q_out.u0, variable: Variable::T, u_fracs, v_fracs })
}

/// Reduction of a base-ring element into the residue field `k`, which is
/// either the residue field of the base or an extension of `F_p`.
pub(crate) fn to_field(base: &Ctx, k: &Ctx, c: &FixedPointElem) -> Result<FixedPointElem> {
    let r = base.residue(c);
    if base.degree() == 1 {
        Ok(k.from_u64(r.value()))
    } else if base.modulus() == k.modulus() {
        k.from_coeffs_reduced(r.coeffs())
    } else {
        Err(Error::ContextMismatch)
    }
}

impl RationalRepresentation {
    /// `(U, V)` over the residue field `k` at the source point `(u, v)`.
    pub fn evaluate(&self, k: &Ctx, u: &FixedPointElem, v: &FixedPointElem) -> Result<(Poly, Poly)> {
        if k.digits() != 1 || k.p() != self.ctx.p() {
            return Err(Error::ContextMismatch);
        }
        let x = match self.variable {
            Variable::T => k.sub(u, &to_field(&self.ctx, k, &self.u0)?)?,
            Variable::U => u.clone(),
        };
        let eval = |fr: &Fraction| -> Result<FixedPointElem> {
            fr.map(|p| p.iter().map(|c| to_field(&self.ctx, k, c)).collect())?.eval(k, &x)
        };
        let mut uz = self.u_fracs.iter().map(eval).collect::<Result<Vec<_>>>()?;
        uz.push(k.one());
        let vz = self
            .v_fracs
            .iter()
            .map(|fr| Ok(k.mul(&eval(fr)?, v)?))
            .collect::<Result<Vec<_>>>()?;
        Ok((uz, fpoly::trimmed(&vz)))
    }

    /// Rewrites the fractions in `u` by substituting `t = u - u0`.
    pub fn to_u_variable(&self) -> RationalRepresentation {
        if self.variable == Variable::U {
            return self.clone();
        }
        let ctx = &self.ctx;
        let shift = vec![ctx.neg(&self.u0), ctx.one()];
        let subst = |p: &Poly| -> Result<Poly> {
            let mut acc: Poly = Vec::new();
            for c in p.iter().rev() {
                acc = fpoly::add(ctx, &fpoly::mul(ctx, &acc, &shift), &[c.clone()]);
            }
            Ok(fpoly::trimmed(&acc))
        };
        let conv = |v: &[Fraction]| v.iter().map(|f| f.map(subst).expect("infallible")).collect();
        RationalRepresentation {
            u_fracs: conv(&self.u_fracs),
            v_fracs: conv(&self.v_fracs),
            variable: Variable::U,
            ..self.clone()
        }
    }

    /// Largest numerator or denominator degree.
    pub fn max_degree(&self) -> usize {
        self.u_fracs.iter().chain(&self.v_fracs).map(Fraction::degree).max().unwrap_or(0)
    }

    /// `{u0, variable, coefficients: [{role, num, den}]}` with decimal strings.
    pub fn to_json(&self) -> Value {
        let ctx = &self.ctx;
        let poly = |p: &Poly| Value::Array(p.iter().map(|c| elem_json(ctx, c)).collect());
        let mut coeffs = Vec::new();
        for (role, fracs) in [("u", &self.u_fracs), ("v", &self.v_fracs)] {
            for (i, fr) in fracs.iter().enumerate() {
                coeffs.push(json!({"role": format!("{role}_{i}"), "num": poly(&fr.num), "den": poly(&fr.den)}));
            }
        }
        json!({
            "u0": elem_json(ctx, &self.u0),
            "variable": match self.variable { Variable::T => "t", Variable::U => "u" },
            "coefficients": coeffs,
        })
    }
}

/// A decimal string, or a list of them for extension elements.
pub fn elem_json(ctx: &Ctx, c: &FixedPointElem) -> Value {
    if ctx.degree() == 1 {
        Value::String(c.value().to_string())
    } else {
        Value::Array(c.coeffs().iter().map(|x| Value::String(x.to_string())).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::PrecisionContext;
    use proptest::prelude::*;

    fn ctx() -> Ctx {
        PrecisionContext::new(7, 6).unwrap()
    }

    fn poly(ctx: &Ctx, v: &[i64]) -> Poly {
        fpoly::trimmed(&v.iter().map(|&c| ctx.from_i64(c)).collect::<Vec<_>>())
    }

    #[test]
    fn geometric_series() {
        let ctx = ctx();
        let s = TruncatedSeries::from_i64s(&ctx, &[1; 8], 8);
        assert_eq!(pade(&s, 0, 1).unwrap(), Fraction { num: poly(&ctx, &[1]), den: poly(&ctx, &[1, -1]) });
        let s = TruncatedSeries::from_i64s(&ctx, &[1, 2, 2, 2, 2, 2], 6);
        assert_eq!(pade(&s, 1, 1).unwrap(), Fraction { num: poly(&ctx, &[1, 1]), den: poly(&ctx, &[1, -1]) });
    }

    #[test]
    fn polynomial_input() {
        let ctx = ctx();
        let s = TruncatedSeries::from_i64s(&ctx, &[3, 0, 5], 12);
        for d in [0, 1, 4] {
            assert_eq!(pade(&s, 3, d).unwrap(), Fraction { num: poly(&ctx, &[3, 0, 5]), den: poly(&ctx, &[1]) });
        }
    }

    #[test]
    fn needs_enough_terms() {
        let ctx = ctx();
        let s = TruncatedSeries::from_i64s(&ctx, &[1, 1], 2);
        assert!(matches!(pade(&s, 1, 1), Err(Error::TooFewTerms { .. })));
    }

    #[test]
    fn evaluate_pole() {
        let ctx = ctx();
        let k = ctx.residue_field();
        let fr = Fraction { num: poly(&ctx, &[1]), den: poly(&ctx, &[1, -1]) };
        let repr = RationalRepresentation {
            ctx: ctx.clone(),
            g: 1,
            u0: ctx.from_u64(2),
            variable: Variable::T,
            u_fracs: vec![fr.clone()],
            v_fracs: vec![fr],
        };
        assert_eq!(repr.evaluate(&k, &k.from_u64(3), &k.one()), Err(Error::PoleAtPoint));
        let (u, v) = repr.evaluate(&k, &k.from_u64(2), &k.from_u64(5)).unwrap();
        assert_eq!((u, v), (poly(&k, &[1, 1]), poly(&k, &[5])));
        let ru = repr.to_u_variable();
        assert_eq!(ru.u_fracs[0].den, poly(&ctx, &[3, -1]));
        assert_eq!(ru.evaluate(&k, &k.from_u64(4), &k.one()), repr.evaluate(&k, &k.from_u64(4), &k.one()));
        let j = repr.to_json();
        assert_eq!(j["coefficients"][0]["den"], json!(["1", (7u64.pow(6) - 1).to_string()]));
        assert_eq!(j["coefficients"][1]["role"], "v_0");
    }

    proptest! {
        #[test]
        fn pade_round_trip(
            num in proptest::collection::vec(0i64..343, 1..5),
            den_tail in proptest::collection::vec(0i64..343, 0..4),
        ) {
            let ctx = ctx();
            let num = poly(&ctx, &num);
            let mut den = vec![ctx.one()];
            den.extend(den_tail.iter().map(|&c| ctx.from_i64(c)));
            let den = fpoly::trimmed(&den);
            // the reduction mod p must still be a reduced fraction of the same
            // denominator degree, otherwise NoSolution is the right answer
            let k = ctx.residue_field();
            let red = |p: &Poly| fpoly::trimmed(&p.iter().map(|c| ctx.residue(c)).collect::<Vec<_>>());
            prop_assume!(red(&den).len() == den.len() && !red(&num).is_empty());
            let (gcd, _, _) = fpoly::xgcd(&k, &red(&num), &red(&den)).unwrap();
            prop_assume!(gcd.len() == 1);
            let fr = Fraction { num: num.clone(), den: den.clone() };
            let (dn, dd) = (4, 3);
            let s = fr.expand(&ctx, dn + dd + 1).unwrap();
            let got = pade(&s, dn, dd).unwrap();
            // same fraction: got.num * den == num * got.den
            prop_assert_eq!(fpoly::mul(&ctx, &got.num, &den), fpoly::mul(&ctx, &num, &got.den));
            prop_assert!(got.den.len() <= den.len());
        }
    }
}
