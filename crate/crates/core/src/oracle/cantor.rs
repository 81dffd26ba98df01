//! Cantor's group law on the Jacobian of `y^2 = f(x)` over a finite field
//! `F_q` (a context with one digit).

use rand::Rng;

use crate::error::{Error, Result};
use crate::fpoly::{self, Poly};
use crate::padic::{Ctx, FixedPointElem};

/// Hyperelliptic curve `y^2 = f(x)` with `deg f = 2g + 1` over a field.
#[derive(Clone, Debug)]
pub struct FieldCurve {
    pub k: Ctx,
    pub f: Poly,
    pub g: usize,
}

/// Reduced divisor in Mumford form: `a` monic, `deg b < deg a <= g`,
/// `a | f - b^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedDivisor {
    pub a: Poly,
    pub b: Poly,
}

impl FieldCurve {
    pub fn new(k: &Ctx, f: Poly) -> Result<Self> {
        if k.digits() != 1 {
            return Err(Error::InvalidContext("Cantor arithmetic needs a field".into()));
        }
        let f = fpoly::trimmed(&f);
        let deg = fpoly::degree(&f).unwrap_or(0);
        if deg < 3 || deg % 2 == 0 {
            return Err(Error::WrongModel(deg));
        }
        Ok(FieldCurve { k: k.clone(), f, g: (deg - 1) / 2 })
    }

    pub fn identity(&self) -> ReducedDivisor {
        ReducedDivisor { a: vec![self.k.one()], b: Vec::new() }
    }

    pub fn is_on_curve(&self, x: &FixedPointElem, y: &FixedPointElem) -> bool {
        let k = &self.k;
        k.mul_unchecked(y, y) == fpoly::eval(k, &self.f, x)
    }

    /// Divisor `P - infinity`.
    pub fn point(&self, x: &FixedPointElem, y: &FixedPointElem) -> Result<ReducedDivisor> {
        if !self.is_on_curve(x, y) {
            return Err(Error::NotOnCurve);
        }
        let k = &self.k;
        Ok(ReducedDivisor { a: vec![k.neg(x), k.one()], b: fpoly::trimmed(&[y.clone()]) })
    }

    /// Checks the Mumford conditions.
    pub fn is_reduced(&self, d: &ReducedDivisor) -> bool {
        let k = &self.k;
        let Some(da) = fpoly::degree(&d.a) else {
            return false;
        };
        if da > self.g || d.a[da] != k.one() {
            return false;
        }
        if fpoly::degree(&d.b).is_some_and(|db| db >= da) {
            return false;
        }
        let diff = fpoly::sub(k, &self.f, &fpoly::mul(k, &d.b, &d.b));
        fpoly::rem(k, &diff, &d.a).map(|r| r.is_empty()).unwrap_or(false)
    }

    pub fn neg(&self, d: &ReducedDivisor) -> ReducedDivisor {
        ReducedDivisor { a: d.a.clone(), b: fpoly::neg(&self.k, &d.b) }
    }

    /// Composition followed by reduction.
    pub fn add(&self, d1: &ReducedDivisor, d2: &ReducedDivisor) -> ReducedDivisor {
        let k = &self.k;
        let (d0, e1, e2) = fpoly::xgcd(k, &d1.a, &d2.a).expect("field");
        let bsum = fpoly::add(k, &d1.b, &d2.b);
        let (d, c1, c2) = fpoly::xgcd(k, &d0, &bsum).expect("field");
        let s1 = fpoly::mul(k, &c1, &e1);
        let s2 = fpoly::mul(k, &c1, &e2);
        let s3 = c2;
        let a_prod = fpoly::mul(k, &d1.a, &d2.a);
        let d_sq = fpoly::mul(k, &d, &d);
        let (mut a, _) = fpoly::divrem(k, &a_prod, &d_sq).expect("field");
        let t1 = fpoly::mul(k, &fpoly::mul(k, &s1, &d1.a), &d2.b);
        let t2 = fpoly::mul(k, &fpoly::mul(k, &s2, &d2.a), &d1.b);
        let t3 = fpoly::mul(k, &s3, &fpoly::add(k, &fpoly::mul(k, &d1.b, &d2.b), &self.f));
        let num = fpoly::add(k, &fpoly::add(k, &t1, &t2), &t3);
        let (bq, _) = fpoly::divrem(k, &num, &d).expect("field");
        let mut b = fpoly::rem(k, &bq, &a).expect("field");
        while fpoly::degree(&a).unwrap_or(0) > self.g {
            let diff = fpoly::sub(k, &self.f, &fpoly::mul(k, &b, &b));
            let (a_new, _) = fpoly::divrem(k, &diff, &a).expect("field");
            a = fpoly::monic(k, &a_new).expect("field");
            b = fpoly::rem(k, &fpoly::neg(k, &b), &a).expect("field");
        }
        let a = fpoly::monic(k, &a).expect("field");
        let b = fpoly::rem(k, &b, &a).expect("field");
        ReducedDivisor { a, b }
    }

    /// `[ell] d` by double-and-add; negative `ell` negates.
    pub fn mul(&self, d: &ReducedDivisor, ell: i64) -> ReducedDivisor {
        let base = if ell < 0 { self.neg(d) } else { d.clone() };
        let mut e = ell.unsigned_abs();
        let mut acc = self.identity();
        let mut pow = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(&acc, &pow);
            }
            pow = self.add(&pow, &pow);
            e >>= 1;
        }
        acc
    }

    /// A random point with `y != 0`, or `None` after many failed draws.
    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<(FixedPointElem, FixedPointElem)> {
        let k = &self.k;
        for _ in 0..1000 {
            let x = k.random(rng);
            let fx = fpoly::eval(k, &self.f, &x);
            if fx.is_zero() {
                continue;
            }
            if let Some(y) = k.residue_sqrt(&fx) {
                let y = if rng.gen::<bool>() { k.neg(&y) } else { y };
                return Some((x, y));
            }
        }
        None
    }

    /// A random reduced divisor: sum of up to `g` random points, reduced.
    pub fn random_divisor<R: Rng + ?Sized>(&self, rng: &mut R) -> ReducedDivisor {
        let mut d = self.identity();
        for _ in 0..self.g {
            if let Some((x, y)) = self.random_point(rng) {
                d = self.add(&d, &self.point(&x, &y).expect("on curve"));
            }
        }
        d
    }
}

/// `[ell] d` on `curve`.
pub fn cantor_mul(d: &ReducedDivisor, ell: i64, curve: &FieldCurve) -> ReducedDivisor {
    curve.mul(d, ell)
}

/// `d1 + d2` on `curve`.
pub fn cantor_add(d1: &ReducedDivisor, d2: &ReducedDivisor, curve: &FieldCurve) -> ReducedDivisor {
    curve.add(d1, d2)
}
