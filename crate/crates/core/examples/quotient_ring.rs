//! Truncated power series and the quotient ring R[[t]][z]/U.

use jacobian_isogeny::series_poly::{min_poly_of, newton_sums};
use jacobian_isogeny::{PrecisionContext, QuotientRing, SeriesPoly, TruncatedSeries};

fn show(s: &TruncatedSeries) -> Vec<u64> {
    s.coeffs().iter().map(|c| c.value()).collect()
}

fn main() -> jacobian_isogeny::Result<()> {
    let ctx = PrecisionContext::new(11, 3)?;
    let n = 8;
    let s = TruncatedSeries::from_i64s(&ctx, &[1, 1], n);
    println!("1/(1+t)     = {:?}", show(&s.inverse()?));
    println!("sqrt(1+t)   = {:?}", show(&s.sqrt(&ctx.one())?));
    println!("int (1+t)^-1 = {:?}", show(&s.inverse()?.integrate()?));

    // U = z^2 - (1 + t) z + t = (z - 1)(z - t)
    let u = SeriesPoly::from_series(
        &ctx,
        n,
        &[TruncatedSeries::variable(&ctx, n), TruncatedSeries::from_i64s(&ctx, &[-1, -1], n), TruncatedSeries::constant(&ctx, &ctx.one(), n)],
    )?;
    let s = newton_sums(&u, 4)?;
    for i in 0..4 {
        println!("s_{i} = 1 + t^{i}: {:?}", show(&s.coeff(i)));
    }
    let ring = QuotientRing::new(&u)?;
    let z = SeriesPoly::z(&ctx, n);
    let w = ring.inv(&z.add(&SeriesPoly::one(&ctx, n))?)?;
    println!("(z + 1)^-1 mod U has z-degree {:?}", w.degree());
    let chi = min_poly_of(&ring.reduce(&z.mul(&z)?)?, &u)?;
    println!("charpoly of z^2 mod U: {} coefficients, monic = {}", chi.len(), chi.is_monic(2));
    Ok(())
}
