mod common;

use common::rng;
use jacobian_isogeny::geometry::{build_g_mult_ell, lift_curve, mult_ell_initial_data, CurveData};
use jacobian_isogeny::mumford_newton::{guard_digits, solve};
use jacobian_isogeny::oracle::cantor_agreement;
use jacobian_isogeny::rational_repr::{mult_ell_bound, order_for_bound, reconstruct, Fraction};
use jacobian_isogeny::{fpoly, Error, PrecisionContext, SeriesPoly, TruncatedSeries};

fn genus2_curve(digits: u32) -> CurveData {
    let ctx = PrecisionContext::new(11, digits).unwrap();
    let k = ctx.residue_field();
    let fbar: Vec<_> = [3i64, 2, 0, 1, 0, 1].iter().map(|&c| k.from_i64(c)).collect();
    lift_curve(&fbar, &ctx).unwrap()
}

#[test]
fn mult_by_three_matches_cantor() {
    let ell = 3;
    let bound = mult_ell_bound(2, ell);
    let n = order_for_bound(bound) + 8;
    let curve = genus2_curve(3 + guard_digits(11, n));
    let q = (0..).map_while(|i| curve.some_point(i)).find(|q| mult_ell_initial_data(&curve, q, ell as u64).is_ok()).unwrap();
    let (u0, v0) = mult_ell_initial_data(&curve, &q, ell as u64).unwrap();
    let rhs = build_g_mult_ell(&curve, &q, ell as i64, n).unwrap();
    let sol = solve(&curve.f_poly(), &u0, &v0, &rhs, n, 3).unwrap();
    let (u, v) = (sol.u(), sol.v());

    let short = reconstruct(&u.resized_t(n - 8), &v.resized_t(n - 8), &curve, &q, bound).unwrap();
    let long = reconstruct(&u, &v, &curve, &q, bound).unwrap();
    assert_eq!(short, long);

    // evaluate at t = 0 gives the initial data mod p
    let k = curve.ctx.residue_field();
    let (a, b) = long.evaluate(&k, &curve.ctx.residue(&q.u0), &curve.ctx.residue(&q.v0)).unwrap();
    let red = |p: &SeriesPoly| fpoly::trimmed(&p.constant_terms().iter().map(|c| curve.ctx.residue(c)).collect::<Vec<_>>());
    assert_eq!((a, b), (red(&u0), red(&v0)));

    let rep = cantor_agreement(&long, &curve, ell as i64, 25, &mut rng(3)).unwrap();
    assert_eq!(rep.disagree, 0);
    assert_eq!(rep.agree, 25);

    // the same fractions written in u
    let in_u = long.to_u_variable();
    let x = k.from_u64(7);
    if let (Ok(a), Ok(b)) = (long.evaluate(&k, &x, &k.one()), in_u.evaluate(&k, &x, &k.one())) {
        assert_eq!(a, b);
    }
}

#[test]
fn too_small_bound_fails_cantor() {
    let ell = 3;
    let bound = 2 * 2 * 3 + 2;
    let n = order_for_bound(bound) + 8;
    let curve = genus2_curve(3 + guard_digits(11, n));
    let q = (0..).map_while(|i| curve.some_point(i)).find(|q| mult_ell_initial_data(&curve, q, ell).is_ok()).unwrap();
    let (u0, v0) = mult_ell_initial_data(&curve, &q, ell).unwrap();
    let rhs = build_g_mult_ell(&curve, &q, ell as i64, n).unwrap();
    let sol = solve(&curve.f_poly(), &u0, &v0, &rhs, n, 3).unwrap();
    let (u, v) = (sol.u(), sol.v());
    match reconstruct(&u, &v, &curve, &q, bound) {
        Ok(r) => assert!(cantor_agreement(&r, &curve, ell as i64, 20, &mut rng(4)).unwrap().disagree > 0),
        Err(e) => assert!(matches!(e, Error::NoSolution)),
    }
}

#[test]
fn constant_solution_gives_constant_fractions() {
    let curve = genus2_curve(4);
    let ctx = curve.ctx.clone();
    let q = curve.some_point(0).unwrap();
    let (u0, v0) = mult_ell_initial_data(&curve, &q, 3).unwrap();
    let n = 12;
    let rhs = jacobian_isogeny::mumford_newton::Rhs::zero(&ctx, 2, n);
    let sol = solve(&curve.f_poly(), &u0, &v0, &rhs, n, 4).unwrap();
    let r = reconstruct(&sol.u(), &sol.v(), &curve, &q, 5).unwrap();
    for (i, fr) in r.u_fracs.iter().enumerate() {
        assert_eq!(fr.den, vec![ctx.one()]);
        assert_eq!(fpoly::trimmed(&fr.num), fpoly::trimmed(&[u0.term(i, 0)]));
    }
}

#[test]
fn reconstruct_known_fractions() {
    // U coefficients built from chosen fractions come back unchanged
    let curve = genus2_curve(5);
    let ctx = curve.ctx.clone();
    let q = curve.some_point(0).unwrap();
    let n = 20;
    let e = |v: &[i64]| v.iter().map(|&c| ctx.from_i64(c)).collect::<Vec<_>>();
    let fr = [
        Fraction { num: e(&[2, 1]), den: e(&[1, 3]) },
        Fraction { num: e(&[-1, 4]), den: e(&[1, 0, 2]) },
    ];
    let mut coeffs: Vec<TruncatedSeries> = fr.iter().map(|f| f.expand(&ctx, n).unwrap()).collect();
    coeffs.push(TruncatedSeries::constant(&ctx, &ctx.one(), n));
    let u = SeriesPoly::from_series(&ctx, n, &coeffs).unwrap();
    let v = SeriesPoly::zero(&ctx, n, 2);
    let r = reconstruct(&u, &v, &curve, &q, 6).unwrap();
    assert_eq!(r.u_fracs, fr.to_vec());
    assert!(matches!(reconstruct(&u, &v, &curve, &q, 10), Err(Error::TooFewTerms { .. })));
}
