//! Command-line front end. Every command prints a single document to stdout:
//! a JSON [`RunResult`], or CSV (curves as data rows, everything else as
//! `name,value` pairs). Diagnostics go to stderr.
//!
//! Exit codes: 0 on success, 2 when a hypothesis of the requested
//! construction fails, 1 for every other error including bad flags.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::domination::{
    chain_domination_report, degree_bounds, tau, threshold, ChainSpec, ThresholdKind,
    BRANCH_TIE_TOL, CROSS_CHECK_TIE_TOL,
};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fuzzy::{
    free_chain, free_product_threshold, nondomination_certificate, nondomination_certificate_exact,
    phase_unique, rate_bounds, ratios, witness_p, FuzzyParams, C_STEP_TOL, UNIQUE_TOL,
};
use crate::ising::{
    h_star, solve_fixed_points, stationary, t_extreme, t_star, transition_matrix, ModelParams,
    Sign, TransitionMatrix2, DEFAULT_RESIDUAL_TOL, DEFAULT_TANGENCY_TOL,
};
use crate::oracle::{
    all_minus_rate, build_tree, chain_distribution, coupling_flow, gibbs_sample,
    potts_subtree_ratio_exact, product_distribution, Boundary, Limits, FLOW_TOL,
};
use crate::sweep::{hstar_curve, psi_curve, theta_curve, CurvePoint};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "gibbsdom", version, about = "Domination thresholds for Gibbs measures on regular trees")]
pub struct Cli {
    /// Output format (curves default to csv, everything else to json).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Run sweeps and enumerations on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Roots of t = h + d phi_J(t).
    Fixpoints(IsingArgs),
    /// h*(J) and t*(J) on a grid of couplings.
    HstarCurve(HstarArgs),
    /// Smallest dominating field: f+/f- (plus dominator) or g+/g- (minus dominator).
    Threshold(ThresholdArgs),
    /// t -> psi(J2, t).
    PsiCurve(CurveArgs),
    /// t -> theta(J2, t).
    ThetaCurve(CurveArgs),
    /// Domination between two extremal Ising states.
    Dominates(DominatesArgs),
    /// Fuzzy Potts computations.
    #[command(subcommand)]
    Fuzzy(FuzzyCommand),
    /// Exact and Monte Carlo checks on finite trees.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Debug, Args)]
pub struct IsingArgs {
    #[arg(long)]
    pub d: u32,
    #[arg(long = "J")]
    pub coupling: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub h: f64,
}

#[derive(Debug, Args)]
pub struct HstarArgs {
    #[arg(long)]
    pub d: u32,
    #[arg(long = "J-min")]
    pub j_min: f64,
    #[arg(long = "J-max")]
    pub j_max: f64,
    #[arg(long)]
    pub steps: usize,
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    /// One of f+, f-, g+, g-.
    pub kind: String,
    #[arg(long)]
    pub d: u32,
    #[arg(long = "J1")]
    pub j1: f64,
    #[arg(long = "J2")]
    pub j2: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub h1: f64,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[arg(long)]
    pub d: u32,
    #[arg(long = "J2")]
    pub j2: f64,
    #[arg(long = "t-min", allow_negative_numbers = true)]
    pub t_min: f64,
    #[arg(long = "t-max", allow_negative_numbers = true)]
    pub t_max: f64,
    #[arg(long)]
    pub steps: usize,
}

#[derive(Debug, Args)]
pub struct DominatesArgs {
    #[arg(long)]
    pub d: u32,
    #[arg(long = "J1")]
    pub j1: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub h1: f64,
    #[arg(long, default_value = "plus")]
    pub sign1: Sign,
    #[arg(long = "J2")]
    pub j2: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub h2: f64,
    #[arg(long, default_value = "plus")]
    pub sign2: Sign,
}

#[derive(Debug, Args)]
pub struct FuzzyArgs {
    #[arg(long)]
    pub q: u32,
    #[arg(long = "J")]
    pub coupling: f64,
    #[arg(long)]
    pub r: u32,
    #[arg(long, default_value_t = 2)]
    pub d: u32,
}

#[derive(Debug, Subcommand)]
pub enum FuzzyCommand {
    /// Largest product density dominated by the free fuzzy measure.
    Threshold(FuzzyArgs),
    /// Plus-boundary ratios a, b, c and the all-minus rate bounds.
    Ratios(FuzzyArgs),
    /// Densities separating the free and minus fuzzy measures.
    Witness(FuzzyArgs),
    /// Whether the minus fuzzy measure provably fails to dominate gamma_p.
    Certify {
        #[command(flatten)]
        params: FuzzyArgs,
        #[arg(long)]
        p: f64,
    },
}

#[derive(Debug, Args)]
pub struct ChainArgs {
    #[arg(long = "J")]
    pub coupling: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub h: f64,
    #[arg(long, default_value = "plus")]
    pub sign: Sign,
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Strassen coupling check between two chain laws on a finite tree.
    Dominates {
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 1)]
        depth: u32,
        #[arg(long = "J1")]
        j1: f64,
        #[arg(long, allow_negative_numbers = true)]
        h1: f64,
        #[arg(long, default_value = "plus")]
        sign1: Sign,
        #[arg(long = "J2")]
        j2: f64,
        #[arg(long, allow_negative_numbers = true)]
        h2: f64,
        #[arg(long, default_value = "plus")]
        sign2: Sign,
    },
    /// Whether a chain law dominates the product law with density p. Uses
    /// the fuzzy Potts free chain when --q and --r are given, otherwise the
    /// Ising state selected by --J, --h, --sign.
    Product {
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 1)]
        depth: u32,
        #[command(flatten)]
        chain: ChainArgs,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        p: f64,
    },
    /// Exact finite-depth subtree ratio next to the analytic c.
    Ratio {
        #[arg(long)]
        q: u32,
        #[arg(long = "J")]
        coupling: f64,
        #[arg(long, default_value_t = 2)]
        d: u32,
        #[arg(long, default_value_t = 10)]
        depth: u32,
    },
    /// Exact all-minus rate next to the analytic rate bounds.
    Rate {
        #[arg(long)]
        q: u32,
        #[arg(long = "J")]
        coupling: f64,
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = 2)]
        d: u32,
        #[arg(long, default_value_t = 10)]
        depth: u32,
    },
    /// Heat-bath sampler, root marginal next to the analytic one.
    Sample {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        depth: u32,
        #[arg(long = "J")]
        coupling: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        h: f64,
        #[arg(long, default_value = "plus")]
        boundary: Boundary,
        #[arg(long, default_value_t = 10_000)]
        sweeps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// The JSON document every non-curve command produces.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunResult {
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub outputs: BTreeMap<String, Value>,
    pub tolerances: BTreeMap<String, f64>,
    pub version: String,
}

impl RunResult {
    fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            params: BTreeMap::new(),
            outputs: BTreeMap::new(),
            tolerances: BTreeMap::new(),
            version: VERSION.to_string(),
        }
    }

    fn param(mut self, name: &str, v: impl Serialize) -> Self {
        self.params.insert(name.into(), to_value(v));
        self
    }

    fn out(mut self, name: &str, v: impl Serialize) -> Self {
        self.outputs.insert(name.into(), to_value(v));
        self
    }

    fn tol(mut self, name: &str, v: f64) -> Self {
        self.tolerances.insert(name.into(), v);
        self
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

/// `%.12g`-style formatting.
pub fn fmt_g(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let s = format!("{x:.11e}");
        let (mant, e) = s.split_once('e').unwrap_or((&s, "0"));
        let mant = if mant.contains('.') {
            mant.trim_end_matches('0').trim_end_matches('.')
        } else {
            mant
        };
        format!("{mant}e{e}")
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.to_string(),
            (_, Some(u)) => u.to_string(),
            _ => fmt_g(n.as_f64().unwrap_or(f64::NAN)),
        },
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let name = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&name, x, rows);
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, rows);
            }
        }
        _ => rows.push((prefix.to_string(), csv_cell(v))),
    }
}

fn render_result(r: &RunResult, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("run result serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut rows = vec![("command".to_string(), r.command.clone())];
            for (section, map) in [("params", &r.params), ("outputs", &r.outputs)] {
                for (k, v) in map {
                    flatten(&format!("{section}.{k}"), v, &mut rows);
                }
            }
            for (k, v) in &r.tolerances {
                rows.push((format!("tolerances.{k}"), fmt_g(*v)));
            }
            rows.push(("version".into(), r.version.clone()));
            let mut s = String::from("name,value\n");
            for (k, v) in rows {
                let _ = writeln!(s, "{k},{v}");
            }
            s
        }
    }
}

fn render_curve(command: &str, params: RunResult, header: &str, rows: Vec<Vec<String>>, json_rows: Value, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut s = format!("{header}\n");
            for row in rows {
                let _ = writeln!(s, "{}", row.join(","));
            }
            s
        }
        Format::Json => {
            let mut r = params.out("rows", json_rows);
            r.command = command.to_string();
            render_result(&r, Format::Json)
        }
    }
}

fn matrix_value(p: &TransitionMatrix2) -> Value {
    json!({
        "P(-1,-1)": p.p_mm(),
        "P(-1,1)": p.p_mp(),
        "P(1,-1)": p.p_pm(),
        "P(1,1)": p.p_pp(),
    })
}

fn chain_matrix(d: u32, coupling: f64, h: f64, sign: Sign) -> Result<TransitionMatrix2> {
    let t = t_extreme(&ModelParams::new(d, coupling, h)?, sign)?;
    transition_matrix(coupling, t)
}

/// Runs a parsed command and returns what should go to stdout.
pub fn run(cli: &Cli) -> Result<String> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    let fmt_or = |default: Format| cli.format.unwrap_or(default);
    let json = fmt_or(Format::Json);

    let out = match &cli.command {
        Command::Fixpoints(a) => {
            let sol = solve_fixed_points(&ModelParams::new(a.d, a.coupling, a.h)?)?;
            let r = RunResult::new("fixpoints")
                .param("d", a.d)
                .param("J", a.coupling)
                .param("h", a.h)
                .out("roots", sol.roots())
                .out("class", sol.class())
                .out("root_count", sol.roots().len())
                .out("residuals", sol.residuals())
                .out("t_plus", sol.largest())
                .out("t_minus", sol.smallest())
                .out("h_star", h_star(a.d, a.coupling)?)
                .out("t_star", t_star(a.d, a.coupling)?)
                .tol("tangency", DEFAULT_TANGENCY_TOL)
                .tol("residual", DEFAULT_RESIDUAL_TOL);
            render_result(&r, json)
        }
        Command::HstarCurve(a) => {
            if a.j_min.is_nan() || a.j_min <= 0.0 {
                return Err(Error::Domain(format!("J-min must be positive, got {}", a.j_min)));
            }
            let pts = hstar_curve(a.d, a.j_min, a.j_max, a.steps, exec)?;
            let rows = pts
                .iter()
                .map(|p| vec![fmt_g(p.coupling), fmt_g(p.h_star), fmt_g(p.t_star)])
                .collect();
            let params = RunResult::new("hstar-curve")
                .param("d", a.d)
                .param("J_min", a.j_min)
                .param("J_max", a.j_max)
                .param("steps", a.steps);
            render_curve("hstar-curve", params, "J,h_star,t_star", rows, to_value(&pts), fmt_or(Format::Csv))
        }
        Command::Threshold(a) => {
            let kind: ThresholdKind = a.kind.parse()?;
            let th = threshold(kind, a.j1, a.j2, a.h1, a.d)?;
            let tau = tau(a.j1, a.j2, a.h1, kind.source, a.d)?;
            let mut r = RunResult::new("threshold")
                .param("kind", kind.to_string())
                .param("d", a.d)
                .param("J1", a.j1)
                .param("J2", a.j2)
                .param("h1", a.h1)
                .out("value", th.value)
                .out("attained", th.attained)
                .out("branch", th.branch)
                .out("tau", tau)
                .tol("branch_tie", BRANCH_TIE_TOL);
            // The degree bounds constrain the plus dominator only.
            r = if kind.dominator == Sign::Plus {
                let (lo, hi) = degree_bounds(a.j1, a.j2, a.h1, a.d + 1)?;
                r.out("bounds", json!({ "lower": lo, "upper": hi }))
            } else {
                r.out("bounds", Value::Null)
            };
            render_result(&r, json)
        }
        Command::PsiCurve(a) | Command::ThetaCurve(a) => {
            let (name, pts) = match &cli.command {
                Command::PsiCurve(_) => ("psi-curve", psi_curve(a.d, a.j2, a.t_min, a.t_max, a.steps, exec)?),
                _ => ("theta-curve", theta_curve(a.d, a.j2, a.t_min, a.t_max, a.steps, exec)?),
            };
            let rows = pts
                .iter()
                .map(|p: &CurvePoint| vec![fmt_g(p.t), fmt_g(p.value), p.branch.to_string()])
                .collect();
            let params = RunResult::new(name)
                .param("d", a.d)
                .param("J2", a.j2)
                .param("t_min", a.t_min)
                .param("t_max", a.t_max)
                .param("steps", a.steps);
            render_curve(name, params, "t,value,branch", rows, to_value(&pts), fmt_or(Format::Csv))
        }
        Command::Dominates(a) => {
            let c1 = ChainSpec::new(a.d, a.j1, a.h1, a.sign1)?;
            let c2 = ChainSpec::new(a.d, a.j2, a.h2, a.sign2)?;
            let rep = chain_domination_report(&c1, &c2)?;
            let r = RunResult::new("dominates")
                .param("d", a.d)
                .param("J1", a.j1)
                .param("h1", a.h1)
                .param("sign1", a.sign1)
                .param("J2", a.j2)
                .param("h2", a.h2)
                .param("sign2", a.sign2)
                .out("dominates", rep.dominates)
                .out("t1", rep.t_dominator)
                .out("t2", rep.t_dominated)
                .out("coupling_gap", rep.coupling_gap)
                .out("margin", rep.margin)
                .tol("cross_check_tie", CROSS_CHECK_TIE_TOL);
            render_result(&r, json)
        }
        Command::Fuzzy(sub) => render_result(&run_fuzzy(sub)?, json),
        Command::Oracle(sub) => render_result(&run_oracle(sub, exec)?, json),
    };
    Ok(out)
}

fn fuzzy_params(a: &FuzzyArgs) -> Result<FuzzyParams> {
    FuzzyParams::new(a.q, a.coupling, a.r, a.d)
}

fn fuzzy_result(name: &str, a: &FuzzyArgs, p: &FuzzyParams) -> RunResult {
    RunResult::new(name)
        .param("q", a.q)
        .param("J", a.coupling)
        .param("r", a.r)
        .param("d", a.d)
        .out("regime", p.regime())
}

fn run_fuzzy(sub: &FuzzyCommand) -> Result<RunResult> {
    Ok(match sub {
        FuzzyCommand::Threshold(a) => {
            let p = fuzzy_params(a)?;
            let chain = free_chain(&p)?;
            fuzzy_result("fuzzy threshold", a, &p)
                .out("threshold", free_product_threshold(&p)?)
                .out("free_chain", matrix_value(&chain))
        }
        FuzzyCommand::Ratios(a) => {
            let p = fuzzy_params(a)?;
            let rat = ratios(&p)?;
            let bounds = rate_bounds(&p, &rat)?;
            fuzzy_result("fuzzy ratios", a, &p)
                .out("c", rat.c)
                .out("b", rat.b)
                .out("a", rat.a)
                .out("phase_unique", phase_unique(&p)?)
                .out("rate_bounds", bounds)
                .tol("c_step", C_STEP_TOL)
                .tol("unique", UNIQUE_TOL)
        }
        FuzzyCommand::Witness(a) => {
            let p = fuzzy_params(a)?;
            let w = witness_p(&p)?;
            fuzzy_result("fuzzy witness", a, &p)
                .out("empty", w.is_none())
                .out("interval", w)
        }
        FuzzyCommand::Certify { params: a, p: density } => {
            let p = fuzzy_params(a)?;
            if !p.regime() {
                return Err(Error::Precondition(format!(
                    "certificate needs e^(2J) >= q - 2 (q = {}, J = {})",
                    a.q, a.coupling
                )));
            }
            let bounds = rate_bounds(&p, &ratios(&p)?)?;
            fuzzy_result("fuzzy certify", a, &p)
                .param("p", *density)
                .out("certificate", nondomination_certificate(&p, *density)?)
                .out("exact_certificate", nondomination_certificate_exact(&p, *density)?)
                .out("simplified_bound", bounds.simplified_bound)
                .out("exact_rate", bounds.exact_rate)
                .out("one_minus_p", 1.0 - density)
        }
    })
}

fn run_oracle(sub: &OracleCommand, exec: Exec) -> Result<RunResult> {
    let limits = Limits::from_env()?;
    Ok(match sub {
        OracleCommand::Dominates { d, depth, j1, h1, sign1, j2, h2, sign2 } => {
            let tree = build_tree(*d, *depth, limits.distribution_vertices)?;
            let p1 = chain_matrix(*d, *j1, *h1, *sign1)?;
            let p2 = chain_matrix(*d, *j2, *h2, *sign2)?;
            let dist1 = chain_distribution(&tree, &p1, &stationary(&p1)?, &limits, exec)?;
            let dist2 = chain_distribution(&tree, &p2, &stationary(&p2)?, &limits, exec)?;
            let flow = coupling_flow(&dist1, &dist2, &limits)?;
            let analytic = chain_domination_report(
                &ChainSpec::new(*d, *j1, *h1, *sign1)?,
                &ChainSpec::new(*d, *j2, *h2, *sign2)?,
            )?;
            RunResult::new("oracle dominates")
                .param("d", d)
                .param("depth", depth)
                .param("J1", j1)
                .param("h1", h1)
                .param("sign1", sign1)
                .param("J2", j2)
                .param("h2", h2)
                .param("sign2", sign2)
                .out("vertices", tree.len())
                .out("flow", flow)
                .out("oracle", flow >= 1.0 - FLOW_TOL)
                .out("analytic", analytic.dominates)
                .tol("flow", FLOW_TOL)
        }
        OracleCommand::Product { d, depth, chain, q, r, p } => {
            let tree = build_tree(*d, *depth, limits.distribution_vertices)?;
            let (matrix, label) = match (q, r) {
                (Some(q), Some(r)) => (free_chain(&FuzzyParams::new(*q, chain.coupling, *r, *d)?)?, "fuzzy free chain"),
                (None, None) => (chain_matrix(*d, chain.coupling, chain.h, chain.sign)?, "ising state"),
                _ => return Err(Error::Domain("--q and --r must be given together".into())),
            };
            let dist = chain_distribution(&tree, &matrix, &stationary(&matrix)?, &limits, exec)?;
            let gamma = product_distribution(&tree, *p, &limits, exec)?;
            let flow = coupling_flow(&dist, &gamma, &limits)?;
            RunResult::new("oracle product")
                .param("d", d)
                .param("depth", depth)
                .param("J", chain.coupling)
                .param("h", chain.h)
                .param("sign", chain.sign)
                .param("q", q)
                .param("r", r)
                .param("p", p)
                .out("chain", label)
                .out("vertices", tree.len())
                .out("matrix", matrix_value(&matrix))
                .out("flow", flow)
                .out("oracle", flow >= 1.0 - FLOW_TOL)
                .out("analytic", matrix.p_mp() <= matrix.p_pp() && *p <= matrix.p_mp())
                .tol("flow", FLOW_TOL)
        }
        OracleCommand::Ratio { q, coupling, d, depth } => {
            let exact = potts_subtree_ratio_exact(*q, *coupling, *d, *depth)?;
            let c = crate::fuzzy::subtree_ratio(&FuzzyParams::new(*q, *coupling, 1, *d)?)?;
            RunResult::new("oracle ratio")
                .param("q", q)
                .param("J", coupling)
                .param("d", d)
                .param("depth", depth)
                .out("oracle", exact)
                .out("analytic", c)
                .out("abs_diff", (exact - c).abs())
        }
        OracleCommand::Rate { q, coupling, r, d, depth } => {
            let params = FuzzyParams::new(*q, *coupling, *r, *d)?;
            let exact = all_minus_rate(*q, *coupling, *r, *d, *depth)?;
            let bounds = rate_bounds(&params, &ratios(&params)?)?;
            RunResult::new("oracle rate")
                .param("q", q)
                .param("J", coupling)
                .param("r", r)
                .param("d", d)
                .param("depth", depth)
                .out("oracle", exact)
                .out("analytic", bounds.exact_rate)
                .out("rate_bounds", bounds)
                .out("abs_diff", (exact - bounds.exact_rate).abs())
        }
        OracleCommand::Sample { d, depth, coupling, h, boundary, sweeps, seed } => {
            let tree = build_tree(*d, *depth, limits.sampler_vertices)?;
            let s = gibbs_sample(&tree, *coupling, *h, *boundary, *sweeps, *seed, &limits)?;
            let analytic = match boundary {
                Boundary::Plus | Boundary::Minus => {
                    let sign = if *boundary == Boundary::Plus { Sign::Plus } else { Sign::Minus };
                    let m = chain_matrix(*d, *coupling, *h, sign)?;
                    Some(stationary(&m)?.prob_plus)
                }
                Boundary::Free => None,
            };
            RunResult::new("oracle sample")
                .param("d", d)
                .param("depth", depth)
                .param("J", coupling)
                .param("h", h)
                .param("boundary", boundary)
                .param("sweeps", sweeps)
                .param("seed", seed)
                .out("vertices", tree.len())
                .out("root_plus", s.plus_prob[0])
                .out("root_std_err", s.std_err[0])
                .out("kept_sweeps", s.kept_sweeps)
                .out("analytic", analytic)
        }
    })
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Precondition(_) => 2,
        _ => 1,
    }
}

/// Parses `args` (including the program name), runs, prints and returns the
/// process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
