mod common;

use common::{first_difference, guarded, rng};
use jacobian_isogeny::fpoly;
use jacobian_isogeny::geometry::{build_g_matrix, build_g_mult_ell, local_expansion, mumford_from_points, CurveData};
use jacobian_isogeny::mumford_newton::{build_initial_state, newton_step, residual_vanishing_order, solve};
use jacobian_isogeny::oracle::{
    coordinate_residual, forward_instance, forward_split, solve_coordinatewise, FieldCurve, SplitInstance,
};
use jacobian_isogeny::series_poly::{
    deriv_sums, hankel_apply, inverse_sqrt_mod, min_poly_of, modular_compose, newton_sums, quotient_inv, quotient_mul,
};
use jacobian_isogeny::{PrecisionContext, SeriesPoly, TruncatedSeries};
use proptest::prelude::*;
use rand::Rng;

fn small() -> ProptestConfig {
    ProptestConfig::with_cases(24)
}

proptest! {
    #![proptest_config(small())]

    #[test]
    fn newton_identities(seed in any::<u64>(), g in 1usize..=4, p in prop::sample::select(vec![5u64, 7, 11])) {
        let mut r = rng(seed);
        let ctx = PrecisionContext::new(p, 4).unwrap();
        let n = 6;
        let u = SeriesPoly::random_monic(&ctx, n, g, &mut r);
        let s = newton_sums(&u, 2 * g + 1).unwrap();
        prop_assert_eq!(s.coeff(0), TruncatedSeries::constant(&ctx, &ctx.from_u64(g as u64), n));
        // s_k + a_{g-1} s_{k-1} + ... + k a_{g-k} = 0 (a_j = 0 for j < 0)
        for k in 1..=2 * g {
            let mut acc = s.coeff(k);
            for i in 1..k.min(g + 1) {
                acc = acc.add(&u.coeff(g - i).mul(&s.coeff(k - i)).unwrap()).unwrap();
            }
            if k <= g {
                acc = acc.add(&u.coeff(g - k).scale_int(k as u64)).unwrap();
            }
            prop_assert!(acc.is_zero(), "k = {}", k);
        }
    }

    #[test]
    fn power_sum_derivatives(seed in any::<u64>(), g in 1usize..=5) {
        let mut r = rng(seed);
        let p = 7u64;
        let ctx = PrecisionContext::new(p, 5).unwrap();
        let n = 10;
        let u = SeriesPoly::random_monic(&ctx, n, g, &mut r);
        let s = newton_sums(&u, 2 * g).unwrap();
        let rs = deriv_sums(&u, 2 * g).unwrap();
        // s_i' = i sum_j x_j^{i-1} x_j' = i r_{i-1}
        for i in 1..2 * g {
            prop_assert_eq!(s.coeff(i).derive(), rs.coeff(i - 1).resized(n - 1).scale_int(i as u64));
        }
    }

    #[test]
    fn hankel_matches_naive(seed in any::<u64>(), g in 1usize..=8) {
        let mut r = rng(seed);
        let ctx = PrecisionContext::new(13, 3).unwrap();
        let n = 5;
        let rr = SeriesPoly::random(&ctx, n, 2 * g - 1, &mut r);
        let w = SeriesPoly::random(&ctx, n, g, &mut r);
        let got = hankel_apply(&rr, &w).unwrap();
        for k in 0..g {
            let mut acc = TruncatedSeries::zero(&ctx, n);
            for i in 0..g {
                acc = acc.add(&rr.coeff(k + i).mul(&w.coeff(i)).unwrap()).unwrap();
            }
            prop_assert_eq!(got.coeff(k), acc);
        }
    }

    #[test]
    fn min_poly_annihilates(seed in any::<u64>(), g in 1usize..=5, p in prop::sample::select(vec![3u64, 5, 11])) {
        let mut r = rng(seed);
        let ctx = PrecisionContext::new(p, 4).unwrap();
        let n = 8;
        let u = SeriesPoly::random_monic(&ctx, n, g, &mut r);
        let t = SeriesPoly::random(&ctx, n, g, &mut r);
        let chi = min_poly_of(&t, &u).unwrap();
        prop_assert!(chi.is_monic(g));
        prop_assert!(modular_compose(&chi, &t, &u).unwrap().is_zero());
    }

    #[test]
    fn quotient_inverse_and_sqrt(seed in any::<u64>(), g in 1usize..=4) {
        let mut r = rng(seed);
        let ctx = PrecisionContext::new(11, 4).unwrap();
        let n = 12;
        let u = SeriesPoly::random_monic(&ctx, n, g, &mut r);
        let a = SeriesPoly::random(&ctx, n, g, &mut r);
        if let Ok(ai) = quotient_inv(&a, &u) {
            let one = SeriesPoly::one(&ctx, n).resized_z(g);
            prop_assert_eq!(quotient_mul(&a, &ai, &u).unwrap(), one);
        }
        // f = h^2 for a random unit-ish h keeps a square root mod U
        let h = SeriesPoly::random(&ctx, n, g, &mut r);
        let f = quotient_mul(&h, &h, &u).unwrap();
        let Ok(w0) = quotient_inv(&h.at_t0(), &u.at_t0()) else { return Ok(()) };
        let (w, v) = inverse_sqrt_mod(&f, &u, &w0).unwrap();
        let one = SeriesPoly::one(&ctx, n).resized_z(g);
        prop_assert_eq!(quotient_mul(&quotient_mul(&w, &w, &u).unwrap(), &f, &u).unwrap(), one);
        prop_assert_eq!(quotient_mul(&v, &v, &u).unwrap(), f.rem_monic(&u).unwrap().resized_z(g));
    }

    #[test]
    fn solver_state_invariants(seed in any::<u64>(), g in 1usize..=4, p in prop::sample::select(vec![3u64, 7, 13])) {
        let mut r = rng(seed);
        let n = 24;
        let ctx = guarded(p, 5, n);
        let inst = forward_instance(&ctx, g, n, &mut r).unwrap();
        let mut state = build_initial_state(&inst.u0, &inst.v0, &inst.f).unwrap();
        let mut history = vec![state.clone()];
        while state.order < n {
            let target = (2 * state.order).min(n);
            state = newton_step(&state, &inst.rhs, target).unwrap();
            prop_assert!(state.u.is_monic(g));
            prop_assert_eq!(state.u.len(), g + 1);
            prop_assert_eq!(state.u.ctx(), &ctx);
            let m = state.order;
            let f = state.f.resized_t(m);
            let rem = f.sub(&state.v.mul(&state.v).unwrap()).unwrap().rem_monic(&state.u).unwrap();
            let out = ctx.with_digits(5).unwrap();
            prop_assert!(rem.convert(&out).unwrap().is_zero(), "Mumford invariant at order {}", m);
            prop_assert!(residual_vanishing_order(&state, &inst.rhs, 5).unwrap() >= m - 1);
            history.push(state.clone());
        }
        // doubling contract: later states agree with earlier ones on their orders
        for pair in history.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            prop_assert_eq!(first_difference(&b.u.resized_t(a.order), &a.u, 5), None);
        }
    }

    #[test]
    fn guard_digit_contract(seed in any::<u64>(), g in 1usize..=3, p in prop::sample::select(vec![3u64, 5])) {
        let mut r = rng(seed);
        let n = 32;
        let digits = 5;
        let big = guarded(p, digits + 3, n);
        let inst = forward_instance(&big, g, n, &mut r).unwrap();
        let small = inst.with_digits(big.digits() - 3).unwrap();
        let a = solve(&inst.f, &inst.u0, &inst.v0, &inst.rhs, n, digits).unwrap();
        let b = solve(&small.f, &small.u0, &small.v0, &small.rhs, n, digits).unwrap();
        prop_assert_eq!(a.u(), b.u());
    }

    #[test]
    fn coordinatewise_residual(seed in any::<u64>(), g in 1usize..=3) {
        let mut r = rng(seed);
        let n = 16;
        let ctx = guarded(11, 5, n);
        let inst = forward_split(&ctx, g, n, &mut r).unwrap();
        let split = SplitInstance::from_forward(&inst).unwrap();
        let xs = solve_coordinatewise(&split, n).unwrap();
        let out = ctx.with_digits(5).unwrap();
        for res in coordinate_residual(&split, &xs).unwrap() {
            prop_assert!(res.convert(&out).unwrap().is_zero());
        }
    }

    #[test]
    fn local_expansion_squares(seed in any::<u64>(), g in 1usize..=3, n in 1usize..24) {
        let mut r = rng(seed);
        let ctx = PrecisionContext::new(7, 6).unwrap();
        let curve = CurveData::random(&ctx, g, &mut r);
        let Some(q) = curve.some_point(r.gen_range(0..3)).or_else(|| curve.some_point(0)) else { return Ok(()) };
        let (u, v) = local_expansion(&curve, &q, n).unwrap();
        prop_assert_eq!(v.coeff(0), q.v0.clone());
        prop_assert_eq!(v.mul(&v).unwrap(), u.compose_poly(&curve.f).unwrap());
    }

    #[test]
    fn rhs_builders_agree(seed in any::<u64>(), g in 1usize..=3, ell in 0i64..7) {
        let mut r = rng(seed);
        let ctx = PrecisionContext::new(11, 4).unwrap();
        let curve = CurveData::random(&ctx, g, &mut r);
        let Some(q) = curve.some_point(0) else { return Ok(()) };
        let diag: Vec<Vec<_>> = (0..g)
            .map(|i| (0..g).map(|j| if i == j { ctx.from_i64(ell) } else { ctx.zero() }).collect())
            .collect();
        prop_assert_eq!(build_g_matrix(&curve, &q, &diag, 10).unwrap(), build_g_mult_ell(&curve, &q, ell, 10).unwrap());
        let m: Vec<Vec<_>> = (0..g).map(|_| (0..g).map(|_| ctx.random(&mut r)).collect()).collect();
        let got = build_g_matrix(&curve, &q, &m, 10).unwrap();
        let basis = build_g_mult_ell(&curve, &q, 1, 10).unwrap();
        for i in 0..g {
            let mut acc = TruncatedSeries::zero(&ctx, 10);
            for j in 0..g {
                acc = acc.add(&basis.g[j].scale(&m[i][j])).unwrap();
            }
            prop_assert_eq!(&got.g[i], &acc);
        }
    }

    #[test]
    fn interpolation_satisfies_curve(seed in any::<u64>(), g in 1usize..=3) {
        let mut r = rng(seed);
        let ctx = PrecisionContext::new(13, 4).unwrap();
        let curve = CurveData::random(&ctx, g, &mut r);
        let pts: Vec<_> = (0..).map_while(|i| curve.some_point(i)).take(g).collect();
        if pts.len() < g {
            return Ok(());
        }
        let pairs: Vec<_> = pts.iter().map(|q| (q.u0.clone(), q.v0.clone())).collect();
        let (u0, v0) = mumford_from_points(&pairs, &ctx, &ctx).unwrap();
        let rem = curve.f_poly().sub(&v0.mul(&v0).unwrap()).unwrap().rem_monic(&u0).unwrap();
        prop_assert!(rem.is_zero());
    }

    #[test]
    fn cantor_group_axioms(seed in any::<u64>(), q in prop::sample::select(vec![7u64, 11, 13]), g in 1usize..=3) {
        let mut r = rng(seed);
        let k = PrecisionContext::new(q, 1).unwrap();
        let curve = loop {
            let c = CurveData::random(&k, g, &mut r);
            break FieldCurve::new(&k, c.f).unwrap();
        };
        let d1 = curve.random_divisor(&mut r);
        let d2 = curve.random_divisor(&mut r);
        let d3 = curve.random_divisor(&mut r);
        prop_assert!(curve.is_reduced(&d1) && curve.is_reduced(&d2) && curve.is_reduced(&d3));
        let id = curve.identity();
        prop_assert_eq!(curve.add(&d1, &id), d1.clone());
        prop_assert_eq!(curve.add(&d1, &curve.neg(&d1)), id);
        prop_assert_eq!(curve.add(&d1, &d2), curve.add(&d2, &d1));
        let left = curve.add(&curve.add(&d1, &d2), &d3);
        let right = curve.add(&d1, &curve.add(&d2, &d3));
        prop_assert!(curve.is_reduced(&left));
        prop_assert_eq!(left, right);
        prop_assert_eq!(curve.mul(&d1, 3), curve.add(&curve.add(&d1, &d1), &d1));
        prop_assert_eq!(fpoly::degree(&curve.mul(&d1, 0).a), Some(0));
    }
}
