//! Checks a reconstructed representation of `[ell]` against Cantor's group
//! law at random points over the residue field (or its quadratic extension).

use rand::Rng;

use crate::error::Result;
use crate::fpoly;
use crate::geometry::CurveData;
use crate::padic::{Ctx, PrecisionContext};
use crate::rational_repr::{to_field, RationalRepresentation};

use super::cantor::FieldCurve;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CantorReport {
    pub agree: usize,
    pub disagree: usize,
    /// Points whose image is not `g` finite points, or where a fraction has
    /// a pole.
    pub skipped: usize,
}

impl CantorReport {
    pub fn compared(&self) -> usize {
        self.agree + self.disagree
    }
}

/// Field the sample points are drawn from: `F_{p^2}` over a prime base,
/// the base residue field otherwise.
pub fn sample_field(base: &Ctx) -> Result<Ctx> {
    if base.degree() == 1 {
        PrecisionContext::unramified(base.p(), 1, 2)
    } else {
        Ok(base.residue_field())
    }
}

/// Compares `repr` with `[ell] (P - infinity)` until `samples` points with a
/// non-degenerate image have been compared (or `50 * samples` draws).
pub fn cantor_agreement<R: Rng + ?Sized>(
    repr: &RationalRepresentation,
    curve: &CurveData,
    ell: i64,
    samples: usize,
    rng: &mut R,
) -> Result<CantorReport> {
    let k = sample_field(&curve.ctx)?;
    let f = curve.f.iter().map(|c| to_field(&curve.ctx, &k, c)).collect::<Result<Vec<_>>>()?;
    let fc = FieldCurve::new(&k, f)?;
    let mut report = CantorReport::default();
    for _ in 0..50 * samples {
        if report.compared() >= samples {
            break;
        }
        let Some((x, y)) = fc.random_point(rng) else { break };
        let image = fc.mul(&fc.point(&x, &y)?, ell);
        if fpoly::degree(&image.a) != Some(curve.g) {
            report.skipped += 1;
            continue;
        }
        match repr.evaluate(&k, &x, &y) {
            Ok((a, b)) if a == image.a && b == image.b => report.agree += 1,
            Ok(_) => report.disagree += 1,
            Err(_) => report.skipped += 1,
        }
    }
    Ok(report)
}
