mod common;

use common::{first_difference, guarded, rng};
use jacobian_isogeny::mumford_newton::{solve, solve_with, SolverOptions};
use jacobian_isogeny::oracle::{forward_instance, forward_orbit, forward_split, product_of_roots, solve_coordinatewise, SplitInstance};
use jacobian_isogeny::{Error, PrecisionContext};

#[test]
fn split_round_trips() {
    let mut r = rng(11);
    for (p, g, n) in [(11u64, 1usize, 8usize), (11, 2, 17), (7, 3, 16), (13, 5, 64)] {
        let ctx = guarded(p, 8, n);
        let inst = forward_split(&ctx, g, n, &mut r).unwrap();
        let sol = solve(&inst.f, &inst.u0, &inst.v0, &inst.rhs, n, 8).unwrap();
        assert_eq!(first_difference(&sol.u(), &inst.u, 8), None, "p={p} g={g} n={n}");
        assert!(sol.warnings.is_empty());
    }
}

#[test]
fn galois_orbit_round_trips() {
    let mut r = rng(12);
    for (p, g, n) in [(3u64, 2usize, 16usize), (3, 4, 32), (5, 3, 40), (3, 5, 128)] {
        let ctx = guarded(p, 8, n);
        let inst = forward_orbit(&ctx, g, n, &mut r).unwrap();
        assert!(!inst.split);
        let sol = solve(&inst.f, &inst.u0, &inst.v0, &inst.rhs, n, 8).unwrap();
        assert_eq!(first_difference(&sol.u(), &inst.u, 8), None, "p={p} g={g} n={n}");
        assert!(sol.state.loss <= jacobian_isogeny::mumford_newton::guard_digits(p, n));
    }
}

#[test]
fn agrees_with_coordinatewise_solver() {
    let mut r = rng(13);
    for g in [2usize, 3, 4] {
        let n = 48;
        let ctx = guarded(13, 6, n);
        let inst = forward_split(&ctx, g, n, &mut r).unwrap();
        let split = SplitInstance::from_forward(&inst).unwrap();
        let prod = product_of_roots(&solve_coordinatewise(&split, n).unwrap()).unwrap();
        let sol = solve(&inst.f, &inst.u0, &inst.v0, &inst.rhs, n, 6).unwrap();
        assert_eq!(first_difference(&sol.u(), &prod, 6), None);
    }
}

#[test]
fn flipped_sign_is_detected() {
    let mut r = rng(14);
    let n = 32;
    let ctx = guarded(11, 6, n);
    let inst = forward_instance(&ctx, 2, n, &mut r).unwrap();
    let opts = SolverOptions { flip_step4_sign: true };
    match solve_with(&inst.f, &inst.u0, &inst.v0, &inst.rhs, n, 6, opts) {
        Ok(sol) => assert!(first_difference(&sol.u(), &inst.u, 6).is_some()),
        Err(e) => assert!(matches!(e, Error::NonIntegralIntegral { .. })),
    }
}

#[test]
fn short_precision_is_reported() {
    let mut r = rng(15);
    let n = 64;
    let ctx = PrecisionContext::new(3, 4).unwrap();
    let inst = forward_instance(&ctx, 2, n, &mut r).unwrap();
    let sol = solve(&inst.f, &inst.u0, &inst.v0, &inst.rhs, n, 4).unwrap();
    assert!(matches!(sol.warnings[..], [Error::InsufficientPrecision { have: 4, need: 7 }]));
}

#[test]
fn order_one_returns_initial_data() {
    let mut r = rng(16);
    let ctx = guarded(7, 4, 8);
    let inst = forward_instance(&ctx, 2, 8, &mut r).unwrap();
    let sol = solve(&inst.f, &inst.u0, &inst.v0, &inst.rhs, 1, 4).unwrap();
    assert_eq!(first_difference(&sol.u(), &inst.u0, 4), None);
}
