//! Recovering a rational function from its power series.

use jacobian_isogeny::rational_repr::{pade, Fraction};
use jacobian_isogeny::PrecisionContext;

fn main() -> jacobian_isogeny::Result<()> {
    let ctx = PrecisionContext::new(101, 4)?;
    let e = |v: &[i64]| v.iter().map(|&c| ctx.from_i64(c)).collect::<Vec<_>>();
    let f = Fraction { num: e(&[3, -1, 7]), den: e(&[1, 5, 0, 2]) };
    let s = f.expand(&ctx, 12)?;
    println!("series: {:?}", s.coeffs().iter().map(|c| c.value()).collect::<Vec<_>>());
    let back = pade(&s, 3, 3)?;
    println!("recovered: num degree {}, den degree {}, equal = {}", back.num.len() - 1, back.den.len() - 1, back == f);
    match pade(&s.resized(6), 3, 3) {
        Ok(_) => println!("6 terms were enough"),
        Err(e) => println!("6 terms: {e}"),
    }
    Ok(())
}
