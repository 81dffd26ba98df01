//! Doubling Newton iteration on the Mumford coordinate `U(t, z)`.
//!
//! The unknowns are `g` points `(x_j(t), y_j(t))` on `y^2 = f(x)` with
//! `H(X) X' = G`, where row `k` of `H` is `(x_j^k / y_j)_j` for
//! `k = 0..g-1`. The points never appear individually: each step works with
//! `U = prod (z - x_j)`, `V` (interpolating `y_j`) and `W` (interpolating
//! `1/y_j`), so every operation stays over the base ring even when the
//! `x_j` only live in an extension.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::fpoly;
use crate::ntt::op_count;
use crate::padic::{floor_log, int_valuation, FixedPointElem};
use crate::series::TruncatedSeries;
use crate::series_poly::{
    charpoly_in, deriv_sums, hankel_apply, newton_sums, QuotientRing, SeriesPoly,
};

/// Solver state at t-adic order `order`.
#[derive(Clone, Debug)]
pub struct MumfordState {
    /// Curve polynomial, constant in `t`.
    pub f: SeriesPoly,
    /// Monic of degree `g`, stored with `g + 1` coefficients.
    pub u: SeriesPoly,
    /// `g` coefficients; `V(x_j) = y_j`.
    pub v: SeriesPoly,
    /// `g` coefficients; `W(x_j) = 1 / y_j`.
    pub w: SeriesPoly,
    /// Number of correct t-terms.
    pub order: usize,
    /// p-adic digits possibly lost to divisions so far.
    pub loss: u32,
}

/// Right-hand side `G = (G_1, ..., G_g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rhs {
    pub g: Vec<TruncatedSeries>,
}

impl Rhs {
    pub fn new(g: Vec<TruncatedSeries>) -> Self {
        Rhs { g }
    }

    pub fn zero(ctx: &crate::Ctx, genus: usize, n: usize) -> Self {
        Rhs { g: vec![TruncatedSeries::zero(ctx, n); genus] }
    }

    pub fn genus(&self) -> usize {
        self.g.len()
    }

    /// Shortest stored series length.
    pub fn len(&self) -> usize {
        self.g.iter().map(TruncatedSeries::n).min().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn as_poly(&self, ctx: &crate::Ctx, n: usize) -> Result<SeriesPoly> {
        let coeffs: Vec<TruncatedSeries> = self.g.iter().map(|s| s.resized(n)).collect();
        SeriesPoly::from_series(ctx, n, &coeffs)
    }
}

/// Knobs for experiments; the defaults are the correct algorithm.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolverOptions {
    /// Uses `H X - integral(...)` in step 4 instead of `+`. Only useful to
    /// check that the test harness notices.
    pub flip_step4_sign: bool,
}

/// Wall time and multiplication work per step 1..7.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StepStats {
    pub time: [Duration; 7],
    pub products: [u64; 7],
    pub coefficients: [u64; 7],
}

impl StepStats {
    fn record(&mut self, step: usize, start: Instant, ops: crate::ntt::OpCount) {
        let now = op_count();
        self.time[step] += start.elapsed();
        self.products[step] += now.products - ops.products;
        self.coefficients[step] += now.coefficients - ops.coefficients;
    }

    pub fn merge(&mut self, other: &StepStats) {
        for i in 0..7 {
            self.time[i] += other.time[i];
            self.products[i] += other.products[i];
            self.coefficients[i] += other.coefficients[i];
        }
    }

    pub fn total_time(&self) -> Duration {
        self.time.iter().sum()
    }
}

fn residue_poly(p: &SeriesPoly) -> Vec<FixedPointElem> {
    let ctx = p.ctx();
    let mut v: Vec<FixedPointElem> = p.constant_terms().iter().map(|c| ctx.residue(c)).collect();
    fpoly::trim(&mut v);
    v
}

/// Checks the initial data and lifts `V0` so that `f = V0^2 mod U0` holds
/// to full p-adic precision. Only the relation modulo p is required of the
/// input.
pub fn build_initial_state(u0: &SeriesPoly, v0: &SeriesPoly, f: &SeriesPoly) -> Result<MumfordState> {
    let ctx = u0.ctx().clone();
    let u0 = u0.resized_t(1).trimmed();
    let f = f.resized_t(1).trimmed();
    let g = u0.degree().filter(|&g| g > 0).ok_or(Error::NotMonic(1))?;
    if !u0.is_monic(g) {
        return Err(Error::NotMonic(g));
    }
    let v0 = v0.resized_t(1);
    u0.check_compatible(&v0)?;
    u0.check_compatible(&f)?;

    let k = ctx.residue_field();
    let ubar = residue_poly(&u0);
    let (gcd, _, _) = fpoly::xgcd(&k, &ubar, &fpoly::derivative(&k, &ubar))?;
    if gcd.len() != 1 {
        return Err(Error::NotSeparable);
    }
    let ring = QuotientRing::new(&u0)?;
    let w0 = ring.inv(&v0).map_err(|e| match e {
        Error::NotInvertible => Error::WeierstrassImage,
        e => e,
    })?;
    let v0 = ring.reduce(&v0)?;
    let diff = f.sub(&v0.mul(&v0)?)?;
    let rem = ring.reduce(&diff)?;
    let p = ctx.p();
    if rem.raw().iter().any(|&c| c % p != 0) {
        return Err(Error::BadInitialData);
    }
    let (w, v) = crate::series_poly::inverse_sqrt_mod(&f, &u0, &w0)?;
    Ok(MumfordState { f, u: u0, v, w, order: 1, loss: 0 })
}

impl MumfordState {
    pub fn genus(&self) -> usize {
        self.u.len() - 1
    }

    pub fn ctx(&self) -> &crate::Ctx {
        self.u.ctx()
    }

    /// Digits of the fixed-point ring that are still trustworthy.
    pub fn reliable_digits(&self) -> u32 {
        self.ctx().digits().saturating_sub(self.loss)
    }
}

fn f_at(state: &MumfordState, n: usize) -> SeriesPoly {
    state.f.resized_t(n)
}

/// One Newton step from `state.order = m` to `target <= 2m`.
pub fn newton_step(state: &MumfordState, rhs: &Rhs, target: usize) -> Result<MumfordState> {
    newton_step_with(state, rhs, target, SolverOptions::default(), &mut StepStats::default())
}

/// [`newton_step`] with options and per-step accounting.
pub fn newton_step_with(
    state: &MumfordState,
    rhs: &Rhs,
    target: usize,
    opts: SolverOptions,
    stats: &mut StepStats,
) -> Result<MumfordState> {
    let m = state.order;
    let g = state.genus();
    let n = target;
    if n <= m {
        return Ok(state.clone());
    }
    if n > 2 * m {
        return Err(Error::LengthMismatch { expected: 2 * m, got: n });
    }
    if rhs.genus() != g {
        return Err(Error::LengthMismatch { expected: g, got: rhs.genus() });
    }
    if rhs.len() + 1 < n {
        return Err(Error::LengthMismatch { expected: n - 1, got: rhs.len() });
    }
    let ctx = state.ctx().clone();

    // 1. W, V against U_m at the new order.
    let (start, ops) = (Instant::now(), op_count());
    let u = state.u.resized_t(n);
    let ring = QuotientRing::new(&u)?;
    let f_red = ring.reduce(&f_at(state, n))?;
    let w = ring.inv_sqrt_from(&f_red, &state.w, m)?;
    let v = ring.mul(&f_red, &w)?;
    stats.record(0, start, ops);

    // 2. Power sums s_i and r_i = sum x_j^i x_j'.
    let (start, ops) = (Instant::now(), op_count());
    let s = newton_sums(&u, 2 * g)?;
    let r = deriv_sums(&u, 2 * g - 1)?;
    stats.record(1, start, ops);

    // 3. H X' and H X as Hankel products against the coefficients of W.
    let (start, ops) = (Instant::now(), op_count());
    let hx_prime = hankel_apply(&r, &w.resized_t(n - 1))?;
    let hx = hankel_apply(&s.drop_low(1), &w)?;
    stats.record(2, start, ops);

    // 4. F = H X + integral(G - H X').
    let (start, ops) = (Instant::now(), op_count());
    let gpoly = rhs.as_poly(&ctx, n - 1)?;
    let diff = gpoly.sub(&hx_prime)?;
    let mut f_vec = Vec::with_capacity(g);
    let mut loss = 0;
    for k in 0..g {
        let integral = diff.coeff(k).with_loss(0).resized(n).integrate()?;
        loss = loss.max(integral.loss());
        let hxk = hx.coeff(k);
        f_vec.push(if opts.flip_step4_sign {
            hxk.sub_unchecked(&integral)
        } else {
            hxk.add_unchecked(&integral)
        });
    }
    stats.record(3, start, ops);

    // 5. Q(x_j) = a_j U'(x_j) where sum_j x_j^k a_j = F_k: the polynomial
    //    part of U(z) sum_k F_k z^{-k-1}.
    let (start, ops) = (Instant::now(), op_count());
    let mut d_coeffs = vec![TruncatedSeries::zero(&ctx, n); g + 1];
    for (k, fk) in f_vec.into_iter().enumerate() {
        d_coeffs[g - k] = fk;
    }
    let d = SeriesPoly::from_series(&ctx, n, &d_coeffs)?;
    let q = u.mul_range(&d, g + 1, 2 * g + 1);
    stats.record(4, start, ops);

    // 6. T(x_j) = x_j^{new}.
    let (start, ops) = (Instant::now(), op_count());
    let du_inv = ring.inv(&u.derivative_z())?;
    let t = ring.mul(&ring.mul(&q, &v)?, &du_inv)?;
    stats.record(5, start, ops);

    // 7. U_new = prod (z - T(x_j)).
    let (start, ops) = (Instant::now(), op_count());
    let mut u_new = charpoly_in(&ring, &t)?;
    stats.record(6, start, ops);

    // Terms below t^m are already exact; keep them bit-for-bit.
    let dg = ctx.degree();
    for k in 0..=g {
        let keep = m * dg;
        let src = state.u.block(k)[..keep].to_vec();
        u_new.block_mut(k)[..keep].copy_from_slice(&src);
    }

    // Refresh W, V against U_new (they agree with U_m below t^m).
    let (start, ops) = (Instant::now(), op_count());
    let ring_new = QuotientRing::new(&u_new)?;
    let f_new = ring_new.reduce(&f_at(state, n))?;
    let w_new = ring_new.inv_sqrt_from(&f_new, &state.w, m)?;
    let v_new = ring_new.mul(&f_new, &w_new)?;
    stats.record(0, start, ops);

    let total_loss = state.loss.max(loss);
    Ok(MumfordState {
        f: state.f.clone(),
        u: u_new.with_loss(total_loss),
        v: v_new.with_loss(total_loss),
        w: w_new.with_loss(total_loss),
        order: n,
        loss: total_loss,
    })
}

/// `H(X) X' - G`, truncated at `t^{order-1}`.
pub fn residual(state: &MumfordState, rhs: &Rhs) -> Result<Vec<TruncatedSeries>> {
    let g = state.genus();
    let n = state.order;
    let r = deriv_sums(&state.u, 2 * g - 1)?;
    let hx_prime = hankel_apply(&r, &state.w.resized_t(n.saturating_sub(1)))?;
    let gpoly = rhs.as_poly(state.ctx(), n.saturating_sub(1))?;
    Ok(hx_prime.sub(&gpoly)?.coeffs())
}

/// Index of the first t-term where some residual entry is nonzero modulo
/// `p^digits`; `order - 1` if none is.
pub fn residual_vanishing_order(state: &MumfordState, rhs: &Rhs, digits: u32) -> Result<usize> {
    let res = residual(state, rhs)?;
    let pd = state.ctx().p().checked_pow(digits).unwrap_or(u64::MAX);
    let len = state.order.saturating_sub(1);
    let mut first = len;
    for s in &res {
        for i in 0..len {
            if s.coeff(i).coeffs().iter().any(|&c| c % pd != 0) {
                first = first.min(i);
                break;
            }
        }
    }
    Ok(first)
}

/// Output of [`solve`].
#[derive(Clone, Debug)]
pub struct Solution {
    pub state: MumfordState,
    /// Requested output digits.
    pub digits: u32,
    pub stats: StepStats,
    pub warnings: Vec<Error>,
}

impl Solution {
    /// `U` reduced to the requested `digits`.
    pub fn u(&self) -> SeriesPoly {
        let out = self.state.ctx().with_digits(self.digits).expect("fewer digits");
        self.state.u.convert(&out).expect("same ring")
    }

    /// `V` reduced to the requested `digits`.
    pub fn v(&self) -> SeriesPoly {
        let out = self.state.ctx().with_digits(self.digits).expect("fewer digits");
        self.state.v.convert(&out).expect("same ring")
    }
}

/// Guard digits for series order `n`: `floor(log_p n)`.
pub fn guard_digits(p: u64, n: usize) -> u32 {
    if n <= 1 {
        0
    } else {
        floor_log(p, n as u64)
    }
}

/// Largest `v_p(i)` for `1 <= i < n`: the digits one integration can cost.
pub fn integration_loss(p: u64, n: usize) -> u32 {
    (1..n.max(1) as u64).map(|i| int_valuation(i, p)).max().unwrap_or(0)
}

/// Solves `H(X) X' = G` with `X(0)` given by `(U0, V0)`, returning `U` modulo
/// `(p^digits, t^n)`. The working precision is the context of `U0`.
pub fn solve(
    f: &SeriesPoly,
    u0: &SeriesPoly,
    v0: &SeriesPoly,
    rhs: &Rhs,
    n: usize,
    digits: u32,
) -> Result<Solution> {
    solve_with(f, u0, v0, rhs, n, digits, SolverOptions::default())
}

pub fn solve_with(
    f: &SeriesPoly,
    u0: &SeriesPoly,
    v0: &SeriesPoly,
    rhs: &Rhs,
    n: usize,
    digits: u32,
    opts: SolverOptions,
) -> Result<Solution> {
    let ctx = u0.ctx().clone();
    if digits == 0 || digits > ctx.digits() {
        return Err(Error::InvalidContext(format!(
            "output digits {digits} must be in 1..={}",
            ctx.digits()
        )));
    }
    let mut warnings = Vec::new();
    let need = digits + guard_digits(ctx.p(), n);
    if ctx.digits() < need {
        warnings.push(Error::InsufficientPrecision { have: ctx.digits(), need });
    }
    let mut state = build_initial_state(u0, v0, f)?;
    let mut stats = StepStats::default();
    while state.order < n {
        let target = (2 * state.order).min(n);
        state = newton_step_with(&state, rhs, target, opts, &mut stats)?;
    }
    if n == 0 {
        state.u = state.u.resized_t(0);
        state.v = state.v.resized_t(0);
        state.w = state.w.resized_t(0);
        state.order = 0;
    }
    Ok(Solution { state, digits, stats, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::PrecisionContext;

    #[test]
    fn initial_state_checks() {
        let ctx = PrecisionContext::new(7, 5).unwrap();
        // f = z^5 + 1, point (2, y) with y^2 = 33 = 5 mod 7: 5 is not a square
        // mod 7, so use z = 1 (f = 2 = 3^2 mod 7).
        let f = SeriesPoly::from_i64s(&ctx, &[&[1], &[0], &[0], &[0], &[0], &[1]], 1);
        let u0 = SeriesPoly::from_i64s(&ctx, &[&[-1], &[1]], 1);
        let v0 = SeriesPoly::from_i64s(&ctx, &[&[3]], 1);
        let st = build_initial_state(&u0, &v0, &f).unwrap();
        let vv = st.v.mul(&st.v).unwrap();
        let ring = QuotientRing::new(&st.u).unwrap();
        assert_eq!(ring.reduce(&vv).unwrap(), ring.reduce(&f).unwrap());

        let double = SeriesPoly::from_i64s(&ctx, &[&[1], &[-2], &[1]], 1);
        let v1 = SeriesPoly::from_i64s(&ctx, &[&[3], &[0]], 1);
        assert_eq!(build_initial_state(&double, &v1, &f).unwrap_err(), Error::NotSeparable);
        let zero = SeriesPoly::from_i64s(&ctx, &[&[0]], 1);
        assert_eq!(build_initial_state(&u0, &zero, &f).unwrap_err(), Error::WeierstrassImage);
        let wrong = SeriesPoly::from_i64s(&ctx, &[&[2]], 1);
        assert_eq!(build_initial_state(&u0, &wrong, &f).unwrap_err(), Error::BadInitialData);
    }

    #[test]
    fn stationary_solution() {
        let ctx = PrecisionContext::new(11, 6).unwrap();
        // f = z^5 + 3z + 1; points with x = 0 (f = 1) and x = 1 (f = 5 = 4^2).
        let f = SeriesPoly::from_i64s(&ctx, &[&[1], &[3], &[0], &[0], &[0], &[1]], 1);
        let u0 = SeriesPoly::from_i64s(&ctx, &[&[0], &[-1], &[1]], 1);
        let v0 = SeriesPoly::from_i64s(&ctx, &[&[1], &[3]], 1);
        let rhs = Rhs::zero(&ctx, 2, 16);
        let sol = solve(&f, &u0, &v0, &rhs, 16, 6).unwrap();
        assert_eq!(sol.state.u, u0.resized_t(16).with_loss(sol.state.loss));
        assert!(residual(&sol.state, &rhs).unwrap().iter().all(TruncatedSeries::is_zero));
        let one = solve(&f, &u0, &v0, &rhs, 1, 6).unwrap();
        assert_eq!(one.u(), u0.convert(&ctx.with_digits(6).unwrap()).unwrap());
    }
}
