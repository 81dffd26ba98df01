//! Picks g moving points, computes the right-hand side they satisfy, and
//! solves for their Mumford polynomial from the initial data alone.

use jacobian_isogeny::mumford_newton::{guard_digits, solve};
use jacobian_isogeny::oracle::forward_instance;
use jacobian_isogeny::PrecisionContext;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> jacobian_isogeny::Result<()> {
    let (p, g, n, digits) = (13, 4, 256, 8);
    let ctx = PrecisionContext::new(p, digits + guard_digits(p, n))?;
    let inst = forward_instance(&ctx, g, n, &mut ChaCha8Rng::seed_from_u64(1))?;
    let sol = solve(&inst.f, &inst.u0, &inst.v0, &inst.rhs, n, digits)?;
    let out = ctx.with_digits(digits)?;
    println!("p = {p}, g = {g}, n = {n}, working digits {}", ctx.digits());
    println!("matches the chosen points: {}", sol.u() == inst.u.convert(&out)?);
    println!("digits lost to divisions by p: {}", sol.state.loss);
    let names = ["W and V", "power sums", "hankel", "integrate", "Q", "T", "charpoly"];
    for (name, t) in names.iter().zip(sol.stats.time) {
        println!("  {name:<12} {:>8.2} ms", t.as_secs_f64() * 1e3);
    }
    Ok(())
}
