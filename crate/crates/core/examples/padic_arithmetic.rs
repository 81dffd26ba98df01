//! Fixed-precision arithmetic in Z/7^6 and in the unramified extension of
//! degree 3.

use jacobian_isogeny::PrecisionContext;

fn main() -> jacobian_isogeny::Result<()> {
    let z = PrecisionContext::new(7, 6)?;
    let a = z.from_i64(-3);
    let b = z.from_u64(49 * 5);
    println!("-3 mod 7^6 = {}", a.value());
    println!("v_7(245) = {:?}", z.valuation(&b));
    println!("1/(-3) = {}", z.inv(&a)?.value());

    // sqrt(2) with the branch 3 mod 7 (3^2 = 9 = 2)
    let two = z.from_u64(2);
    let r = z.sqrt(&two, &z.from_u64(3))?;
    println!("sqrt(2) = {}, squared = {}", r.value(), z.mul(&r, &r)?.value());

    // dividing by p drops a digit, which the result reports
    let (q, lost) = z.divide_by_p_power(&b, 2)?;
    println!("245 / 7^2 = {} (digits lost: {lost})", q.value());

    let k = PrecisionContext::unramified(7, 4, 3)?;
    let x = k.generator();
    println!("modulus of the degree-3 extension: {:?}", k.modulus());
    let x7 = k.pow(&x, 7);
    println!("x^7 = {:?}", x7.coeffs());
    let y = k.add(&x, &k.one())?;
    let yi = k.inv(&y)?;
    println!("(x + 1)^-1 = {:?}, check {:?}", yi.coeffs(), k.mul(&y, &yi)?.coeffs());
    Ok(())
}
