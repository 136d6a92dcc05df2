//! Ising model on the homogeneous tree in which every site has `d + 1`
//! neighbours.
//!
//! The translation-invariant Markov-chain Gibbs states are parametrized by
//! the real solutions `t` of
//!
//! ```text
//! t = h + d * phi_J(t),    phi_J(t) = 1/2 * ln(cosh(t + J) / cosh(t - J))
//! ```
//!
//! The largest solution belongs to the plus state and the smallest to the
//! minus state. Everything here is a pure function of its arguments.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{ensure_branching, ensure_coupling, ensure_finite, Error, Result};

/// Absolute tolerance on `|h| - h*(J)` below which the fixed-point equation is
/// treated as tangent.
pub const DEFAULT_TANGENCY_TOL: f64 = 1e-9;
/// Target residual `|t - h - d phi_J(t)|` for bisected roots.
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-12;

const LN_2: f64 = std::f64::consts::LN_2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    pub d: u32,
    pub coupling: f64,
    pub field: f64,
}

impl ModelParams {
    pub fn new(d: u32, coupling: f64, field: f64) -> Result<Self> {
        ensure_branching(d)?;
        ensure_coupling(coupling)?;
        ensure_finite("field h", field)?;
        Ok(Self { d, coupling, field })
    }
}

/// Which extremal Gibbs state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(Sign::Plus),
            "minus" | "-" => Ok(Sign::Minus),
            other => Err(Error::Domain(format!("unknown sign {other:?}, expected plus or minus"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RootClass {
    Unique,
    TangentPair,
    Triple,
}

impl RootClass {
    pub fn root_count(self) -> usize {
        match self {
            RootClass::Unique => 1,
            RootClass::TangentPair => 2,
            RootClass::Triple => 3,
        }
    }
}

/// All real solutions of the fixed-point equation, ascending.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixedPointSolution {
    roots: Vec<f64>,
    class: RootClass,
    residuals: Vec<f64>,
}

impl FixedPointSolution {
    pub fn roots(&self) -> &[f64] {
        &self.roots
    }

    pub fn class(&self) -> RootClass {
        self.class
    }

    pub fn residuals(&self) -> &[f64] {
        &self.residuals
    }

    pub fn largest(&self) -> f64 {
        self.roots[self.roots.len() - 1]
    }

    pub fn smallest(&self) -> f64 {
        self.roots[0]
    }

    pub fn extreme(&self, sign: Sign) -> f64 {
        match sign {
            Sign::Plus => self.largest(),
            Sign::Minus => self.smallest(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverTolerances {
    pub tangency: f64,
    pub residual: f64,
}

impl Default for SolverTolerances {
    fn default() -> Self {
        Self {
            tangency: DEFAULT_TANGENCY_TOL,
            residual: DEFAULT_RESIDUAL_TOL,
        }
    }
}

/// `ln cosh x`, switching to `|x| - ln 2 + ln(1 + e^{-2|x|})` once `cosh`
/// would lose range.
pub(crate) fn ln_cosh(x: f64) -> f64 {
    let a = x.abs();
    if a <= 30.0 {
        a.cosh().ln()
    } else {
        a - LN_2 + (-2.0 * a).exp().ln_1p()
    }
}

pub(crate) fn phi_unchecked(j: f64, t: f64) -> f64 {
    0.5 * (ln_cosh(t + j) - ln_cosh(t - j))
}

/// `phi_J(t) = 1/2 ln(cosh(t+J)/cosh(t-J))`. Odd, increasing, bounded by `J`.
pub fn phi(j: f64, t: f64) -> Result<f64> {
    ensure_coupling(j)?;
    ensure_finite("t", t)?;
    Ok(phi_unchecked(j, t))
}

pub(crate) fn phi_partials_unchecked(j: f64, t: f64) -> (f64, f64) {
    let a = (j + t).tanh();
    let b = (j - t).tanh();
    (0.5 * (a - b), 0.5 * (a + b))
}

/// Partial derivatives `(d phi / dJ, d phi / dt)`.
pub fn phi_partials(j: f64, t: f64) -> Result<(f64, f64)> {
    ensure_coupling(j)?;
    ensure_finite("t", t)?;
    Ok(phi_partials_unchecked(j, t))
}

/// `J_c = arccoth d`, the coupling above which the zero-field model has
/// several Gibbs states.
pub fn critical_coupling(d: u32) -> Result<f64> {
    ensure_branching(d)?;
    let d = d as f64;
    Ok(0.5 * ((d + 1.0) / (d - 1.0)).ln())
}

/// `tanh^2(t*)`, clamped at zero just above `J_c` where rounding can make it
/// slightly negative.
fn tanh_sq_t_star(d: f64, j: f64) -> f64 {
    let (th, cth) = (j.tanh(), 1.0 / j.tanh());
    ((d - cth) / (d - th)).max(0.0)
}

fn t_star_unchecked(d: u32, j: f64, jc: f64) -> f64 {
    if j <= jc {
        return 0.0;
    }
    let df = d as f64;
    let x = tanh_sq_t_star(df, j);
    if x <= 0.8 {
        x.sqrt().atanh()
    } else {
        // Same quantity via cosh^2(t*) = (d - tanh J) sinh(2J) / 2, which does
        // not cancel when tanh^2(t*) is close to one.
        ((df - j.tanh()) * (2.0 * j).sinh() * 0.5).sqrt().acosh()
    }
}

/// Argmax over `t >= 0` of `d phi_J(t) - t`; zero for `J <= J_c`.
pub fn t_star(d: u32, j: f64) -> Result<f64> {
    ensure_coupling(j)?;
    let jc = critical_coupling(d)?;
    Ok(t_star_unchecked(d, j, jc))
}

fn h_star_unchecked(d: u32, j: f64, jc: f64) -> f64 {
    if j <= jc {
        return 0.0;
    }
    let df = d as f64;
    let (th, cth) = (j.tanh(), 1.0 / j.tanh());
    let y = ((df * th - 1.0) / (df * cth - 1.0)).max(0.0);
    let x = tanh_sq_t_star(df, j);
    let h = if x <= 0.8 && y <= 0.8 {
        df * y.sqrt().atanh() - x.sqrt().atanh()
    } else {
        let ts = t_star_unchecked(d, j, jc);
        df * phi_unchecked(j, ts) - ts
    };
    h.max(0.0)
}

/// `max_{t >= 0} (d phi_J(t) - t)`: the field range `|h| < h*` over which the
/// fixed-point equation has three solutions. Zero for `J <= J_c`.
pub fn h_star(d: u32, j: f64) -> Result<f64> {
    ensure_coupling(j)?;
    let jc = critical_coupling(d)?;
    Ok(h_star_unchecked(d, j, jc))
}

/// Bisection on a bracket with a sign change, run until the bracket cannot
/// shrink any further in floating point.
fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> Result<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::InternalConsistency(format!(
            "no sign change on [{lo}, {hi}]: f = ({flo}, {fhi})"
        )));
    }
    let mut fhi = fhi;
    for _ in 0..2200 {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    Ok(if flo.abs() <= fhi.abs() { lo } else { hi })
}

pub fn solve_fixed_points(params: &ModelParams) -> Result<FixedPointSolution> {
    solve_fixed_points_with(params, &SolverTolerances::default())
}

/// Solves `t = h + d phi_J(t)`.
///
/// The number of roots is decided from `|h|` against the closed-form `h*(J)`.
/// For `J > J_c` the map `t -> h + d phi_J(t) - t` is strictly monotone on
/// each of `(-inf, -t*]`, `[-t*, t*]` and `[t*, inf)`, so every root is
/// isolated by a bracket before bisection. Tangent roots are the closed-form
/// `+-t*` and are never bisected.
pub fn solve_fixed_points_with(
    params: &ModelParams,
    tol: &SolverTolerances,
) -> Result<FixedPointSolution> {
    let ModelParams {
        d,
        coupling: j,
        field: h,
    } = *params;
    ensure_branching(d)?;
    ensure_coupling(j)?;
    ensure_finite("field h", h)?;

    let df = d as f64;
    let jc = critical_coupling(d)?;
    let hs = h_star_unchecked(d, j, jc);
    let ts = t_star_unchecked(d, j, jc);
    let f = |t: f64| h + df * phi_unchecked(j, t) - t;
    // |phi_J| < J, so every root lies in this interval.
    let bound = h.abs() + df * j + 1.0;

    let gap = h.abs() - hs;
    let class = if hs == 0.0 || gap > tol.tangency {
        RootClass::Unique
    } else if gap.abs() <= tol.tangency {
        RootClass::TangentPair
    } else {
        RootClass::Triple
    };

    let roots = if hs == 0.0 {
        vec![bisect(f, -bound, bound)?]
    } else {
        let f_lo = f(-ts);
        let f_hi = f(ts);
        let consistent = match class {
            RootClass::Unique if h > 0.0 => f_lo > 0.0 && f_hi > 0.0,
            RootClass::Unique => f_lo < 0.0 && f_hi < 0.0,
            RootClass::TangentPair if h > 0.0 => f_hi > 0.0,
            RootClass::TangentPair => f_lo < 0.0,
            RootClass::Triple => f_lo < 0.0 && f_hi > 0.0,
        };
        if !consistent {
            return Err(Error::InternalConsistency(format!(
                "class {class:?} for d={d}, J={j}, h={h} but f(-t*)={f_lo}, f(t*)={f_hi}"
            )));
        }
        match class {
            RootClass::Unique if h > 0.0 => vec![bisect(f, ts, bound)?],
            RootClass::Unique => vec![bisect(f, -bound, -ts)?],
            RootClass::TangentPair if h > 0.0 => vec![-ts, bisect(f, ts, bound)?],
            RootClass::TangentPair => vec![bisect(f, -bound, -ts)?, ts],
            RootClass::Triple => vec![
                bisect(f, -bound, -ts)?,
                bisect(f, -ts, ts)?,
                bisect(f, ts, bound)?,
            ],
        }
    };

    if roots.len() != class.root_count() || roots.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InternalConsistency(format!(
            "class {class:?} but roots {roots:?} for d={d}, J={j}, h={h}"
        )));
    }

    let residuals: Vec<f64> = roots.iter().map(|&t| f(t).abs()).collect();
    for (&t, &r) in roots.iter().zip(&residuals) {
        let tangent = class == RootClass::TangentPair && t.abs() == ts;
        if !tangent && r > tol.residual * t.abs().max(1.0) {
            return Err(Error::NoConvergence {
                what: "fixed-point bisection residual",
                iterations: 2200,
            });
        }
    }

    Ok(FixedPointSolution {
        roots,
        class,
        residuals,
    })
}

/// `t_+(J, h)` for [`Sign::Plus`], `t_-(J, h)` for [`Sign::Minus`].
pub fn t_extreme(params: &ModelParams, sign: Sign) -> Result<f64> {
    Ok(solve_fixed_points(params)?.extreme(sign))
}

/// Numerically safe logistic function `1 / (1 + e^{-x})`.
pub(crate) fn logistic(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// 2x2 stochastic matrix over spins `{-1, +1}`.
///
/// All four entries are stored because `1 - p` loses every significant digit
/// of a tiny complementary probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransitionMatrix2 {
    p_mm: f64,
    p_mp: f64,
    p_pm: f64,
    p_pp: f64,
}

impl TransitionMatrix2 {
    pub const ROW_SUM_TOL: f64 = 1e-14;

    pub fn new(p_mm: f64, p_mp: f64, p_pm: f64, p_pp: f64) -> Result<Self> {
        let entries = [p_mm, p_mp, p_pm, p_pp];
        if entries.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::Domain(format!("transition entries must lie in [0,1]: {entries:?}")));
        }
        for (row, sum) in [("-1", p_mm + p_mp), ("+1", p_pm + p_pp)] {
            if (sum - 1.0).abs() > 1e-12 {
                return Err(Error::Domain(format!("row {row} sums to {sum}")));
            }
        }
        Ok(Self { p_mm, p_mp, p_pm, p_pp })
    }

    /// Builds the matrix from its two `-> +1` entries.
    pub fn from_plus_column(p_mp: f64, p_pp: f64) -> Result<Self> {
        Self::new(1.0 - p_mp, p_mp, 1.0 - p_pp, p_pp)
    }

    pub fn p_mm(&self) -> f64 {
        self.p_mm
    }
    pub fn p_mp(&self) -> f64 {
        self.p_mp
    }
    pub fn p_pm(&self) -> f64 {
        self.p_pm
    }
    pub fn p_pp(&self) -> f64 {
        self.p_pp
    }

    /// `P(from, to)` with spins encoded as `false = -1`, `true = +1`.
    pub fn entry(&self, from_plus: bool, to_plus: bool) -> f64 {
        match (from_plus, to_plus) {
            (false, false) => self.p_mm,
            (false, true) => self.p_mp,
            (true, false) => self.p_pm,
            (true, true) => self.p_pp,
        }
    }
}

/// Distribution over `{-1, +1}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Distribution2 {
    pub prob_minus: f64,
    pub prob_plus: f64,
}

impl Distribution2 {
    pub fn new(prob_minus: f64, prob_plus: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&prob_minus)
            || !(0.0..=1.0).contains(&prob_plus)
            || (prob_minus + prob_plus - 1.0).abs() > 1e-12
        {
            return Err(Error::Domain(format!(
                "not a distribution: ({prob_minus}, {prob_plus})"
            )));
        }
        Ok(Self {
            prob_minus,
            prob_plus,
        })
    }

    pub fn prob(&self, plus: bool) -> f64 {
        if plus {
            self.prob_plus
        } else {
            self.prob_minus
        }
    }
}

/// Transition matrix of the completely homogeneous chain attached to the
/// solution `t`: `P(s, +1) = 1 / (1 + e^{-2(t + sJ)})`.
pub fn transition_matrix(j: f64, t: f64) -> Result<TransitionMatrix2> {
    ensure_coupling(j)?;
    ensure_finite("t", t)?;
    Ok(TransitionMatrix2 {
        p_mm: logistic(2.0 * (j - t)),
        p_mp: logistic(2.0 * (t - j)),
        p_pm: logistic(-2.0 * (t + j)),
        p_pp: logistic(2.0 * (t + j)),
    })
}

/// Stationary distribution of an irreducible two-state chain.
pub fn stationary(p: &TransitionMatrix2) -> Result<Distribution2> {
    let (a, b) = (p.p_mp, p.p_pm);
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::Domain(format!(
            "chain is not irreducible: P(-1,1)={a}, P(1,-1)={b}"
        )));
    }
    Ok(Distribution2 {
        prob_minus: b / (a + b),
        prob_plus: a / (a + b),
    })
}
