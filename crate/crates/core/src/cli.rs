//! Command-line front end: problem files in, result files out.
//!
//! Exit codes: 0 success, 2 malformed problem, 3 solver error, 4 failed check.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::{build_g_matrix, build_g_mult_ell, mult_ell_initial_data, CurveData, CurvePoint};
use crate::mumford_newton::{guard_digits, residual_vanishing_order, solve_with, Rhs, Solution, SolverOptions};
use crate::oracle::{cantor_agreement, forward_instance, ForwardInstance, product_of_roots, solve_coordinatewise, SplitInstance};
use crate::padic::{Ctx, FixedPointElem, PrecisionContext};
use crate::rational_repr::{self, elem_json, mult_ell_bound, order_for_bound, reconstruct, RationalRepresentation};
use crate::series::TruncatedSeries;
use crate::series_poly::SeriesPoly;

pub const EXIT_SCHEMA: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;
pub const EXIT_CHECK: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "jacobian-isogeny", version, about = "p-adic Newton solver for rational representations of Jacobian isogenies")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output digits N (overrides the problem file).
    #[arg(long, global = true)]
    pub precision_digits: Option<u32>,
    /// Reconstruct the rational representation.
    #[arg(long, global = true)]
    pub reconstruct: bool,
    /// Variable of the reconstructed fractions.
    #[arg(long = "var", global = true, value_enum)]
    pub var: Option<VarArg>,
    /// Use the opposite sign in the integration step (for probing the checks).
    #[arg(long, global = true)]
    pub flip_step4_sign: bool,
    /// Include wall-clock timings in results (makes output non-deterministic).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VarArg {
    T,
    U,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve a problem file.
    Solve {
        spec: PathBuf,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Run oracle comparisons and invariant checks on a problem file.
    Check {
        spec: PathBuf,
        /// Cantor sample points for multiplication-by-ell problems.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Time the solver on forward-generated instances.
    Bench {
        /// Genus range `a..b`, doubling from a.
        #[arg(long, default_value = "1..8")]
        g: String,
        /// Series order range `a..b`, doubling from a.
        #[arg(long, default_value = "64..1024")]
        n: String,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 101)]
        p: u64,
        #[arg(long, default_value_t = 4)]
        digits: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Runs per instance; the fastest is reported.
        #[arg(long, default_value_t = 1)]
        repeats: usize,
    },
}

// ----- problem files ---------------------------------------------------------

/// Integer as a decimal string or JSON number, or a list of coordinates for
/// extension elements.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Text(String),
    Coords(Vec<Num>),
}

impl From<&str> for Num {
    fn from(s: &str) -> Self {
        Num::Text(s.to_string())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ContextSpec {
    pub p: u64,
    /// Output digits.
    #[serde(rename = "N")]
    pub digits: u32,
    /// Working digits; `N + floor(log_p n)` when absent.
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    pub working: Option<u32>,
    /// Extension degree (default modulus) when `modulus` is absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub f: Vec<Num>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum InitialSpec {
    Mumford {
        #[serde(rename = "U0")]
        u0: Vec<Num>,
        #[serde(rename = "V0")]
        v0: Vec<Num>,
    },
    Points {
        points: Vec<[Num; 2]>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind")]
pub enum RhsSpec {
    /// Explicit coefficients of `G_0 .. G_{g-1}`.
    #[serde(rename = "series")]
    Series {
        #[serde(rename = "G")]
        g: Vec<Vec<Num>>,
    },
    #[serde(rename = "mult-by-ell")]
    MultByEll {
        ell: i64,
        #[serde(rename = "Q")]
        q: [Num; 2],
    },
    #[serde(rename = "matrix")]
    Matrix {
        #[serde(rename = "M")]
        m: Vec<Vec<Num>>,
        #[serde(rename = "Q")]
        q: [Num; 2],
    },
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct OptionsSpec {
    #[serde(default)]
    pub reconstruct: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variable: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub context: ContextSpec,
    pub curve: CurveSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<InitialSpec>,
    pub rhs: RhsSpec,
    pub n: usize,
    #[serde(default)]
    pub options: OptionsSpec,
}

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

fn parse_int(s: &str) -> Result<i128> {
    s.trim().parse::<i128>().map_err(|_| schema(format!("not an integer: {s:?}")))
}

fn reduce(ctx: &Ctx, v: i128) -> u64 {
    v.rem_euclid(ctx.pm() as i128) as u64
}

pub fn parse_elem(ctx: &Ctx, n: &Num) -> Result<FixedPointElem> {
    let scalar = |n: &Num| -> Result<u64> {
        match n {
            Num::Int(v) => Ok(reduce(ctx, *v as i128)),
            Num::Text(s) => Ok(reduce(ctx, parse_int(s)?)),
            Num::Coords(_) => Err(schema("nested coordinates")),
        }
    };
    match n {
        Num::Coords(cs) => {
            if cs.len() > ctx.degree() {
                return Err(schema(format!("{} coordinates for degree {}", cs.len(), ctx.degree())));
            }
            ctx.from_coeffs_reduced(&cs.iter().map(scalar).collect::<Result<Vec<_>>>()?)
        }
        n => Ok(ctx.from_u64(scalar(n)?)),
    }
}

fn parse_poly(ctx: &Ctx, v: &[Num]) -> Result<Vec<FixedPointElem>> {
    v.iter().map(|c| parse_elem(ctx, c)).collect()
}

/// Everything a command needs, parsed and validated.
pub struct Problem {
    pub spec: ProblemSpec,
    pub ctx: Ctx,
    /// Output digits `N`.
    pub digits: u32,
    pub n: usize,
    pub curve: CurveData,
    pub point: Option<CurvePoint>,
    pub u0: SeriesPoly,
    pub v0: SeriesPoly,
    /// Split initial points over the base ring, when given as points.
    pub points: Option<Vec<(FixedPointElem, FixedPointElem)>>,
}

impl ProblemSpec {
    pub fn from_json(text: &str) -> Result<ProblemSpec> {
        serde_json::from_str(text).map_err(|e| schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    /// Problem file for a forward-generated instance over a prime base ring.
    /// Split instances carry their initial points, others `(U0, V0)`.
    pub fn from_forward(inst: &ForwardInstance, digits: u32, n: usize) -> Result<ProblemSpec> {
        let ctx = inst.u0.ctx();
        if ctx.degree() != 1 {
            return Err(schema("forward problem files need a prime base ring"));
        }
        let num = |c: &FixedPointElem| Num::Text(c.value().to_string());
        let consts = |p: &SeriesPoly| (0..p.len()).map(|k| num(&p.term(k, 0))).collect::<Vec<_>>();
        let initial = if inst.split {
            InitialSpec::Points {
                points: inst.x.iter().zip(&inst.y).map(|(x, y)| [num(&x.coeff(0)), num(&y.coeff(0))]).collect(),
            }
        } else {
            InitialSpec::Mumford { u0: consts(&inst.u0), v0: consts(&inst.v0) }
        };
        let g = inst.rhs.g.iter().map(|s| s.resized(n).coeffs().iter().map(num).collect()).collect();
        Ok(ProblemSpec {
            context: ContextSpec { p: ctx.p(), digits, working: None, d: None, modulus: None },
            curve: CurveSpec { f: consts(&inst.f) },
            initial: Some(initial),
            rhs: RhsSpec::Series { g },
            n,
            options: OptionsSpec::default(),
        })
    }
}

impl Problem {
    /// Validates `spec`; `digits` overrides `N`.
    pub fn new(spec: ProblemSpec, digits: Option<u32>) -> Result<Problem> {
        let c = &spec.context;
        let digits = digits.unwrap_or(c.digits);
        let n = spec.n;
        let working = c.working.unwrap_or(digits + guard_digits(c.p, n));
        if working < digits {
            return Err(schema(format!("M = {working} is below N = {digits}")));
        }
        let ctx = match (&c.modulus, c.d) {
            (Some(m), _) => PrecisionContext::with_modulus(c.p, working, m),
            (None, Some(d)) => PrecisionContext::unramified(c.p, working, d),
            (None, None) => PrecisionContext::new(c.p, working),
        }
        .map_err(|e| schema(e.to_string()))?;
        let curve = CurveData::new(&ctx, parse_poly(&ctx, &spec.curve.f)?)?;
        let g = curve.g;
        let point = match &spec.rhs {
            RhsSpec::MultByEll { q, .. } | RhsSpec::Matrix { q, .. } => {
                Some(curve.point(&parse_elem(&ctx, &q[0])?, &parse_elem(&ctx, &q[1])?)?)
            }
            RhsSpec::Series { .. } => None,
        };
        let mut points = None;
        let (u0, v0) = match (&spec.initial, &spec.rhs) {
            (Some(InitialSpec::Mumford { u0, v0 }), _) => {
                let u = parse_poly(&ctx, u0)?;
                if u.len() != g + 1 {
                    return Err(schema(format!("U0 has degree {}, expected {g}", u.len().saturating_sub(1))));
                }
                let mut v = parse_poly(&ctx, v0)?;
                if v.len() > g {
                    return Err(schema(format!("V0 has {} coefficients, expected at most {g}", v.len())));
                }
                v.resize(g, ctx.zero());
                (SeriesPoly::from_constants(&ctx, &u, 1)?, SeriesPoly::from_constants(&ctx, &v, 1)?)
            }
            (Some(InitialSpec::Points { points: pts }), _) => {
                if pts.len() != g {
                    return Err(schema(format!("{} points, expected {g}", pts.len())));
                }
                let pts = pts
                    .iter()
                    .map(|[x, y]| Ok((parse_elem(&ctx, x)?, parse_elem(&ctx, y)?)))
                    .collect::<Result<Vec<_>>>()?;
                let pair = crate::geometry::mumford_from_points(&pts, &ctx, &ctx)?;
                points = Some(pts);
                pair
            }
            (None, RhsSpec::MultByEll { ell, .. }) => {
                let ell = u64::try_from(*ell).map_err(|_| schema("ell must be nonnegative"))?;
                mult_ell_initial_data(&curve, point.as_ref().expect("mult-by-ell has Q"), ell)?
            }
            (None, _) => return Err(schema("initial data is required unless rhs is mult-by-ell")),
        };
        Ok(Problem { spec, ctx, digits, n, curve, point, u0, v0, points })
    }

    pub fn genus(&self) -> usize {
        self.curve.g
    }

    pub fn ell(&self) -> Option<i64> {
        match self.spec.rhs {
            RhsSpec::MultByEll { ell, .. } => Some(ell),
            _ => None,
        }
    }

    /// Right-hand side to order `n`.
    pub fn rhs(&self, n: usize) -> Result<Rhs> {
        let g = self.genus();
        let ctx = &self.ctx;
        match &self.spec.rhs {
            RhsSpec::Series { g: rows } => {
                if rows.len() != g {
                    return Err(schema(format!("G has {} rows, expected {g}", rows.len())));
                }
                let series = rows
                    .iter()
                    .map(|r| {
                        let mut c = parse_poly(ctx, r)?;
                        c.resize(n.max(c.len()), ctx.zero());
                        TruncatedSeries::from_elems(ctx, &c[..n], n)
                    })
                    .collect::<Result<_>>()?;
                Ok(Rhs::new(series))
            }
            RhsSpec::MultByEll { ell, .. } => build_g_mult_ell(&self.curve, self.point.as_ref().expect("Q"), *ell, n),
            RhsSpec::Matrix { m, .. } => {
                let m = m.iter().map(|r| parse_poly(ctx, r)).collect::<Result<Vec<_>>>()?;
                build_g_matrix(&self.curve, self.point.as_ref().expect("Q"), &m, n)
            }
        }
    }

    pub fn solve(&self, n: usize, opts: SolverOptions) -> Result<(Solution, Rhs)> {
        let rhs = self.rhs(n)?;
        let sol = solve_with(&self.curve.f_poly(), &self.u0, &self.v0, &rhs, n, self.digits, opts)?;
        Ok((sol, rhs))
    }

    /// Degree bound for reconstruction: the file's, else `2 g ell^2 + g` for
    /// multiplication by `ell`, else the largest bound `n` supports.
    pub fn bound(&self) -> usize {
        if let Some(b) = self.spec.options.bound {
            return b;
        }
        match self.ell() {
            Some(ell) => mult_ell_bound(self.genus(), ell.unsigned_abs() as usize),
            None => self.n.saturating_sub(2) / 2,
        }
    }

    pub fn reconstruct(&self, sol: &Solution, bound: usize) -> Result<RationalRepresentation> {
        let q = self.point.as_ref().ok_or_else(|| schema("reconstruction needs a base point Q"))?;
        reconstruct(&sol.u(), &sol.v(), &self.curve, q, bound)
    }
}

// ----- results -----------------------------------------------------------------

fn poly_table(p: &SeriesPoly) -> Value {
    let ctx = p.ctx();
    Value::Array(
        (0..p.len())
            .map(|k| Value::Array(p.coeff(k).coeffs().iter().map(|c| elem_json(ctx, c)).collect()))
            .collect(),
    )
}

/// Result file contents for a solved problem.
pub fn result_envelope(
    problem: &Problem,
    sol: &Solution,
    rhs: &Rhs,
    repr: Option<&RationalRepresentation>,
    timings: bool,
) -> Result<Value> {
    let ctx = &problem.ctx;
    let mut context = json!({"p": ctx.p().to_string(), "N": problem.digits, "M": ctx.digits()});
    if ctx.degree() > 1 {
        context["modulus"] = json!(ctx.modulus().iter().map(|c| c.to_string()).collect::<Vec<_>>());
    }
    let order = if problem.n == 0 { 0 } else { residual_vanishing_order(&sol.state, rhs, problem.digits)? };
    let mut diagnostics = json!({
        "precision_loss": sol.state.loss,
        "residual_order": order,
        "warnings": sol.warnings.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
    });
    if timings {
        let st = &sol.stats;
        diagnostics["timings"] = json!({
            "steps_ms": st.time.iter().map(|d| d.as_secs_f64() * 1e3).collect::<Vec<_>>(),
            "products": st.products,
            "coefficients": st.coefficients,
        });
    }
    let mut out = json!({
        "context": context,
        "g": problem.genus(),
        "n": problem.n,
        "U": poly_table(&sol.u()),
        "V": poly_table(&sol.v()),
        "diagnostics": diagnostics,
    });
    if let Some(r) = repr {
        out["rational"] = r.to_json();
    }
    Ok(out)
}

// ----- commands ------------------------------------------------------------------

fn read_problem(path: &Path, digits: Option<u32>) -> Result<Problem> {
    let text = fs::read_to_string(path).map_err(|e| schema(format!("{}: {e}", path.display())))?;
    Problem::new(ProblemSpec::from_json(&text)?, digits)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Schema(_) | Error::InvalidContext(_) => EXIT_SCHEMA,
        _ => EXIT_SOLVER,
    }
}

fn report_error(e: &Error) -> i32 {
    eprintln!("error: {} ({e})", e.name());
    exit_code(e)
}

/// `solve`: returns the result document.
pub fn cmd_solve(problem: &Problem, cli: &Cli) -> Result<String> {
    let opts = SolverOptions { flip_step4_sign: cli.flip_step4_sign };
    let (sol, rhs) = problem.solve(problem.n, opts)?;
    let repr = if cli.reconstruct || problem.spec.options.reconstruct {
        let r = problem.reconstruct(&sol, problem.bound())?;
        let var = cli.var.or(match problem.spec.options.variable.as_deref() {
            Some("u") => Some(VarArg::U),
            _ => None,
        });
        Some(if var == Some(VarArg::U) { r.to_u_variable() } else { r })
    } else {
        None
    };
    let doc = result_envelope(problem, &sol, &rhs, repr.as_ref(), cli.timings)?;
    Ok(serde_json::to_string_pretty(&doc).expect("serializable") + "\n")
}

/// One line of a `check` report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

/// `check`: residual, Mumford invariant, and whichever oracle applies.
pub fn cmd_check(problem: &Problem, cli: &Cli, samples: usize, seed: u64) -> Result<Vec<CheckLine>> {
    let opts = SolverOptions { flip_step4_sign: cli.flip_step4_sign };
    let n = problem.n;
    let out_ctx = problem.ctx.with_digits(problem.digits)?;
    let mut lines = Vec::new();
    let (sol, rhs) = match problem.solve(n, opts) {
        Ok(x) => x,
        Err(e @ (Error::Schema(_) | Error::InvalidContext(_))) => return Err(e),
        Err(e) => {
            lines.push(CheckLine { name: "residual", pass: false, detail: format!("solver stopped: {}", e.name()) });
            return Ok(lines);
        }
    };

    let order = residual_vanishing_order(&sol.state, &rhs, problem.digits)?;
    let want = n.saturating_sub(1);
    lines.push(CheckLine { name: "residual", pass: order >= want, detail: format!("vanishing order {order}, need {want}") });

    let f = problem.curve.f_poly().resized_t(n).convert(&out_ctx)?;
    let (u, v) = (sol.u(), sol.v());
    let rem = f.sub(&v.mul(&v)?)?.rem_monic(&u)?;
    lines.push(CheckLine { name: "mumford", pass: rem.is_zero(), detail: "U divides f - V^2".into() });

    if let Some(pts) = &problem.points {
        let inst = SplitInstance {
            f: problem.curve.f_poly(),
            x0: pts.iter().map(|p| p.0.clone()).collect(),
            y0: pts.iter().map(|p| p.1.clone()).collect(),
            rhs: rhs.clone(),
        };
        let pass = match solve_coordinatewise(&inst, n).and_then(|xs| product_of_roots(&xs)) {
            Ok(prod) => prod.convert(&out_ctx)? == u,
            Err(_) => false,
        };
        lines.push(CheckLine { name: "coordinatewise", pass, detail: "agrees with the coordinate-wise solver".into() });
    }

    if let Some(ell) = problem.ell() {
        let bound = problem.bound();
        let n_check = order_for_bound(bound) + 8;
        let (big, _) = problem.solve(n_check, opts)?;
        let at = |m: usize| -> Result<RationalRepresentation> {
            let q = problem.point.as_ref().expect("Q");
            reconstruct(&big.u().resized_t(m), &big.v().resized_t(m), &problem.curve, q, bound)
        };
        match (at(n_check - 8), at(n_check)) {
            (Ok(r1), Ok(r2)) => {
                lines.push(CheckLine {
                    name: "stability",
                    pass: r1 == r2,
                    detail: format!("bound {bound}, orders {} and {n_check}", n_check - 8),
                });
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let rep = cantor_agreement(&r2, &problem.curve, ell, samples, &mut rng)?;
                lines.push(CheckLine {
                    name: "cantor",
                    pass: rep.disagree == 0 && rep.agree >= samples,
                    detail: format!("{} of {} points agree ({} skipped)", rep.agree, rep.compared(), rep.skipped),
                });
            }
            (Err(e), _) | (_, Err(e)) => {
                lines.push(CheckLine { name: "stability", pass: false, detail: format!("reconstruction failed: {}", e.name()) });
            }
        }
    }
    Ok(lines)
}

/// `a..b` doubling from `a`, or a single value. `a > b` is empty.
pub fn parse_range(s: &str) -> Result<Vec<usize>> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| schema(format!("bad range {s:?}")));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => (num(s)?, num(s)?),
    };
    if a == 0 {
        return Err(schema("range must start at 1 or more"));
    }
    let mut out = Vec::new();
    let mut x = a;
    while x <= b {
        out.push(x);
        x *= 2;
    }
    Ok(out)
}

/// Least-squares slope of `log y` against `log x`.
pub fn fit_exponent(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() < 2 {
        return None;
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.max(1e-9).ln()).collect();
    let k = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / k, ly.iter().sum::<f64>() / k);
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// One row of the benchmark table.
#[derive(Clone, Debug)]
pub struct BenchRow {
    pub g: usize,
    pub n: usize,
    pub seconds: f64,
    pub steps: [f64; 7],
    pub products: u64,
    pub coefficients: u64,
}

/// Solves a forward-generated instance `repeats` times and keeps the
/// fastest run.
pub fn bench_one(p: u64, digits: u32, g: usize, n: usize, seed: u64, repeats: usize) -> Result<BenchRow> {
    let ctx = PrecisionContext::new(p, digits + guard_digits(p, n))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((g as u64) << 32) ^ n as u64);
    let inst = forward_instance(&ctx, g, n, &mut rng)?;
    let mut best: Option<BenchRow> = None;
    for _ in 0..repeats.max(1) {
        let start = Instant::now();
        let sol = solve_with(&inst.f, &inst.u0, &inst.v0, &inst.rhs, n, digits, SolverOptions::default())?;
        let seconds = start.elapsed().as_secs_f64();
        if best.as_ref().is_none_or(|b| seconds < b.seconds) {
            let st = &sol.stats;
            best = Some(BenchRow {
                g,
                n,
                seconds,
                steps: std::array::from_fn(|i| st.time[i].as_secs_f64()),
                products: st.products.iter().sum(),
                coefficients: st.coefficients.iter().sum(),
            });
        }
    }
    Ok(best.expect("at least one run"))
}

pub fn bench_csv(rows: &[BenchRow]) -> String {
    let mut s = String::from("g,n,seconds,step1,step2,step3,step4,step5,step6,step7,products,coefficients\n");
    for r in rows {
        let _ = write!(s, "{},{},{:.6}", r.g, r.n, r.seconds);
        for t in r.steps {
            let _ = write!(s, ",{t:.6}");
        }
        let _ = writeln!(s, ",{},{}", r.products, r.coefficients);
    }
    s
}

/// Fitted exponents: time against n per genus, and against g per order
/// (total, steps 1-6, step 7).
pub fn bench_fits(rows: &[BenchRow]) -> Vec<String> {
    let mut out = Vec::new();
    let mut gs: Vec<usize> = rows.iter().map(|r| r.g).collect();
    gs.sort_unstable();
    gs.dedup();
    let mut ns: Vec<usize> = rows.iter().map(|r| r.n).collect();
    ns.sort_unstable();
    ns.dedup();
    for &g in &gs {
        let sel: Vec<&BenchRow> = rows.iter().filter(|r| r.g == g).collect();
        let xs: Vec<f64> = sel.iter().map(|r| r.n as f64).collect();
        if let Some(e) = fit_exponent(&xs, &sel.iter().map(|r| r.seconds).collect::<Vec<_>>()) {
            out.push(format!("g={g}: time ~ n^{e:.2}"));
        }
    }
    for &n in &ns {
        let sel: Vec<&BenchRow> = rows.iter().filter(|r| r.n == n).collect();
        let xs: Vec<f64> = sel.iter().map(|r| r.g as f64).collect();
        let total = fit_exponent(&xs, &sel.iter().map(|r| r.seconds).collect::<Vec<_>>());
        let early = fit_exponent(&xs, &sel.iter().map(|r| r.steps[..6].iter().sum()).collect::<Vec<_>>());
        let last = fit_exponent(&xs, &sel.iter().map(|r| r.steps[6]).collect::<Vec<_>>());
        if let (Some(a), Some(b), Some(c)) = (total, early, last) {
            out.push(format!("n={n}: time ~ g^{a:.2} (steps 1-6 g^{b:.2}, step 7 g^{c:.2})"));
        }
    }
    out
}

/// Parses arguments and runs a command; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_SCHEMA } else { 0 };
        }
    };
    match &cli.command {
        Command::Solve { spec, output } => {
            let res = read_problem(spec, cli.precision_digits).and_then(|p| cmd_solve(&p, &cli));
            match res {
                Ok(doc) => match output {
                    Some(path) => match fs::write(path, doc) {
                        Ok(()) => 0,
                        Err(e) => {
                            eprintln!("error: {}: {e}", path.display());
                            1
                        }
                    },
                    None => {
                        print!("{doc}");
                        0
                    }
                },
                Err(e) => report_error(&e),
            }
        }
        Command::Check { spec, samples, seed } => {
            let res = read_problem(spec, cli.precision_digits).and_then(|p| cmd_check(&p, &cli, *samples, *seed));
            match res {
                Ok(lines) => {
                    for l in &lines {
                        println!("{} {}: {}", if l.pass { "PASS" } else { "FAIL" }, l.name, l.detail);
                    }
                    if lines.iter().all(|l| l.pass) {
                        0
                    } else {
                        EXIT_CHECK
                    }
                }
                Err(e) => report_error(&e),
            }
        }
        Command::Bench { g, n, output, p, digits, seed, repeats } => {
            let (gs, ns) = match (parse_range(g), parse_range(n)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return report_error(&e),
            };
            let mut rows = Vec::new();
            for &gv in &gs {
                for &nv in &ns {
                    match bench_one(*p, *digits, gv, nv, *seed, *repeats) {
                        Ok(r) => rows.push(r),
                        Err(e) => return report_error(&e),
                    }
                }
            }
            let csv = bench_csv(&rows);
            let fits = bench_fits(&rows);
            match output {
                Some(path) => {
                    if let Err(e) = fs::write(path, &csv) {
                        eprintln!("error: {}: {e}", path.display());
                        return 1;
                    }
                    for f in &fits {
                        println!("{f}");
                    }
                }
                None => {
                    print!("{csv}");
                    for f in &fits {
                        println!("# {f}");
                    }
                }
            }
            0
        }
    }
}

/// Entry point for the binary.
pub fn main_from_env() -> i32 {
    run(std::env::args_os())
}

pub use rational_repr::Variable;
