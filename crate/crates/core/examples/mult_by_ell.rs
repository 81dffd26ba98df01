//! Rational representation of multiplication by 3 on the Jacobian of
//! y^2 = x^5 + x^3 + 2x + 3 over F_11, checked against Cantor's algorithm.

use jacobian_isogeny::geometry::{build_g_mult_ell, lift_curve, mult_ell_initial_data};
use jacobian_isogeny::mumford_newton::{guard_digits, solve};
use jacobian_isogeny::oracle::cantor_agreement;
use jacobian_isogeny::rational_repr::{mult_ell_bound, order_for_bound, reconstruct};
use jacobian_isogeny::PrecisionContext;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> jacobian_isogeny::Result<()> {
    let (p, ell, digits) = (11, 3u64, 3);
    let bound = mult_ell_bound(2, ell as usize);
    let n = order_for_bound(bound);
    let ctx = PrecisionContext::new(p, digits + guard_digits(p, n))?;
    let k = ctx.residue_field();
    let fbar: Vec<_> = [3i64, 2, 0, 1, 0, 1].iter().map(|&c| k.from_i64(c)).collect();
    let curve = lift_curve(&fbar, &ctx)?;

    let (q, (u0, v0)) = (0..)
        .map_while(|i| curve.some_point(i))
        .find_map(|q| mult_ell_initial_data(&curve, &q, ell).ok().map(|d| (q, d)))
        .expect("a usable base point");
    println!("base point Q = ({}, {})", ctx.residue(&q.u0).value(), ctx.residue(&q.v0).value());

    let rhs = build_g_mult_ell(&curve, &q, ell as i64, n)?;
    let sol = solve(&curve.f_poly(), &u0, &v0, &rhs, n, digits)?;
    let repr = reconstruct(&sol.u(), &sol.v(), &curve, &q, bound)?;
    println!("n = {n}, largest fraction degree {}", repr.max_degree());
    for (i, fr) in repr.u_fracs.iter().enumerate() {
        println!("  U_{i}: numerator degree {}, denominator degree {}", fr.num.len() - 1, fr.den.len() - 1);
    }

    let report = cantor_agreement(&repr, &curve, ell as i64, 20, &mut ChaCha8Rng::seed_from_u64(2))?;
    println!("Cantor: {} agree, {} disagree, {} skipped", report.agree, report.disagree, report.skipped);
    Ok(())
}
