//! Stochastic domination between completely homogeneous tree Markov chains,
//! and the smallest fields at which a plus (or minus) state dominates a given
//! extremal state.
//!
//! Two chains with transition matrices `P` and `Q` satisfy `mu_P >= mu_Q` iff
//! `P(-1,1) >= Q(-1,1)` and `P(1,1) >= Q(1,1)`. For extremal Ising states
//! that reduces to `t_1 >= t_2 + |J_1 - J_2|`, and the threshold fields follow
//! from inverting `t -> t - d phi_J(t)` on the branch where it is monotone.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{ensure_branching, ensure_coupling, ensure_finite, Error, Result};
use crate::ising::{
    critical_coupling, h_star, phi_partials_unchecked, phi_unchecked, solve_fixed_points,
    t_extreme, t_star, transition_matrix, ModelParams, Sign, TransitionMatrix2,
};

/// Absolute tolerance used when deciding whether `tau` lies inside a flat
/// interval. Endpoints are exact functions of `(d, J)`.
pub const BRANCH_TIE_TOL: f64 = 1e-12;

/// Below this margin the reduced inequality `t_1 - t_2 - |J_1 - J_2|` is
/// treated as a tie and not used to second-guess the matrix comparison.
pub const CROSS_CHECK_TIE_TOL: f64 = 1e-12;

/// `a >= b` as far as an entry comparison can tell. When both entries are
/// above one half the complementary entries carry more significant digits,
/// so those are compared instead (`a >= b` iff `1 - a <= 1 - b`).
fn plus_entry_geq(a_minus: f64, a_plus: f64, b_minus: f64, b_plus: f64) -> bool {
    if a_plus > 0.5 && b_plus > 0.5 {
        a_minus <= b_minus
    } else {
        a_plus >= b_plus
    }
}

/// `mu_P >= mu_Q` for completely homogeneous chains on the infinite tree.
pub fn mc_dominates(p: &TransitionMatrix2, q: &TransitionMatrix2) -> bool {
    plus_entry_geq(p.p_mm(), p.p_mp(), q.p_mm(), q.p_mp())
        && plus_entry_geq(p.p_pm(), p.p_pp(), q.p_pm(), q.p_pp())
}

/// The extremal Ising state `mu_h^{J,sign}` on the tree with branching `d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChainSpec {
    pub d: u32,
    pub coupling: f64,
    pub field: f64,
    pub sign: Sign,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResolvedChain {
    pub t: f64,
    pub coupling: f64,
    pub matrix: TransitionMatrix2,
}

impl ChainSpec {
    pub fn new(d: u32, coupling: f64, field: f64, sign: Sign) -> Result<Self> {
        ModelParams::new(d, coupling, field)?;
        Ok(Self {
            d,
            coupling,
            field,
            sign,
        })
    }

    pub fn params(&self) -> Result<ModelParams> {
        ModelParams::new(self.d, self.coupling, self.field)
    }

    pub fn resolve(&self) -> Result<ResolvedChain> {
        let t = t_extreme(&self.params()?, self.sign)?;
        Ok(ResolvedChain {
            t,
            coupling: self.coupling,
            matrix: transition_matrix(self.coupling, t)?,
        })
    }
}

/// Diagnostics behind a [`chain_dominates`] verdict.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DominationReport {
    pub dominates: bool,
    pub t_dominator: f64,
    pub t_dominated: f64,
    pub coupling_gap: f64,
    /// `t_dominator - t_dominated - |J_1 - J_2|`; non-negative iff dominated.
    pub margin: f64,
}

/// Decides `mu(c1) >= mu(c2)` and cross-checks the matrix criterion against
/// the reduced inequality on `t`.
pub fn chain_domination_report(c1: &ChainSpec, c2: &ChainSpec) -> Result<DominationReport> {
    if c1.d != c2.d {
        return Err(Error::Domain(format!(
            "chains live on different trees (d = {} vs {})",
            c1.d, c2.d
        )));
    }
    let r1 = c1.resolve()?;
    let r2 = c2.resolve()?;
    let dominates = mc_dominates(&r1.matrix, &r2.matrix);
    let coupling_gap = (r1.coupling - r2.coupling).abs();
    let margin = r1.t - r2.t - coupling_gap;
    if margin.abs() > CROSS_CHECK_TIE_TOL && (margin >= 0.0) != dominates {
        return Err(Error::InternalConsistency(format!(
            "matrix criterion says {dominates} but t-margin is {margin:e} for {c1:?} vs {c2:?}"
        )));
    }
    Ok(DominationReport {
        dominates,
        t_dominator: r1.t,
        t_dominated: r2.t,
        coupling_gap,
        margin,
    })
}

pub fn chain_dominates(c1: &ChainSpec, c2: &ChainSpec) -> Result<bool> {
    Ok(chain_domination_report(c1, c2)?.dominates)
}

/// `tau = t_which(J1, h1) + |J1 - J2|`.
pub fn tau(j1: f64, j2: f64, h1: f64, which: Sign, d: u32) -> Result<f64> {
    ensure_coupling(j2)?;
    let t = t_extreme(&ModelParams::new(d, j1, h1)?, which)?;
    Ok(t + (j1 - j2).abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Attained {
    /// The threshold itself belongs to the set of dominating fields.
    Closed,
    Open,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// The plateau at `-h*(J2)` (for `psi`) or `+h*(J2)` (for `theta`).
    Flat,
    /// `t - d phi_{J2}(t)`.
    Curve,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Flat => "flat",
            Branch::Curve => "curve",
        })
    }
}

/// Left endpoint of the set of fields `h` at which domination holds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Threshold {
    pub value: f64,
    pub attained: Attained,
    pub branch: Branch,
}

impl Threshold {
    /// Membership of `h` in the (upward closed) set of dominating fields.
    /// At `h == value` the answer comes from `attained`, not from a re-probe.
    pub fn admits(&self, h: f64) -> bool {
        if h > self.value {
            true
        } else if h < self.value {
            false
        } else {
            self.attained == Attained::Closed
        }
    }
}

/// The plateau geometry of `psi(J2, .)` and `theta(J2, .)` for fixed `(d, J2)`.
///
/// Computing it once lets curve sweeps avoid re-solving the tangent fixed
/// points at every sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlatWindows {
    pub d: u32,
    pub coupling: f64,
    pub h_star: f64,
    pub t_star: f64,
    /// `t_-(J2, -h*(J2))`: left end of the `psi` plateau.
    pub psi_left: f64,
    /// `t_+(J2, h*(J2))`: right end of the `theta` plateau.
    pub theta_right: f64,
}

impl FlatWindows {
    pub fn new(d: u32, coupling: f64) -> Result<Self> {
        ensure_coupling(coupling)?;
        let h_star = h_star(d, coupling)?;
        let t_star = t_star(d, coupling)?;
        let (psi_left, theta_right) = if h_star > 0.0 {
            let below = solve_fixed_points(&ModelParams::new(d, coupling, -h_star)?)?;
            let above = solve_fixed_points(&ModelParams::new(d, coupling, h_star)?)?;
            (below.smallest(), above.largest())
        } else {
            (0.0, 0.0)
        };
        Ok(Self {
            d,
            coupling,
            h_star,
            t_star,
            psi_left,
            theta_right,
        })
    }

    fn curve(&self, t: f64) -> f64 {
        t - self.d as f64 * phi_unchecked(self.coupling, t)
    }

    /// Threshold for domination by a plus state, as a function of `tau`.
    pub fn psi(&self, t: f64) -> Result<Threshold> {
        ensure_finite("t", t)?;
        let flat = t >= self.psi_left - BRANCH_TIE_TOL && t < self.t_star - BRANCH_TIE_TOL;
        Ok(if flat {
            Threshold {
                value: -self.h_star,
                attained: Attained::Closed,
                branch: Branch::Flat,
            }
        } else {
            Threshold {
                value: self.curve(t),
                attained: Attained::Closed,
                branch: Branch::Curve,
            }
        })
    }

    /// Threshold for domination by a minus state, as a function of `tau`.
    pub fn theta(&self, t: f64) -> Result<Threshold> {
        ensure_finite("t", t)?;
        let flat = t > -self.t_star + BRANCH_TIE_TOL && t <= self.theta_right + BRANCH_TIE_TOL;
        Ok(if flat {
            Threshold {
                value: self.h_star,
                attained: Attained::Open,
                branch: Branch::Flat,
            }
        } else {
            Threshold {
                value: self.curve(t),
                attained: Attained::Closed,
                branch: Branch::Curve,
            }
        })
    }
}

pub fn psi(d: u32, j2: f64, t: f64) -> Result<Threshold> {
    FlatWindows::new(d, j2)?.psi(t)
}

pub fn theta(d: u32, j2: f64, t: f64) -> Result<Threshold> {
    FlatWindows::new(d, j2)?.theta(t)
}

/// `inf { h : mu_h^{J2,+} >= mu_{h1}^{J1,which} }`.
pub fn f_threshold(j1: f64, j2: f64, h1: f64, which: Sign, d: u32) -> Result<Threshold> {
    psi(d, j2, tau(j1, j2, h1, which, d)?)
}

/// `inf { h : mu_h^{J2,-} >= mu_{h1}^{J1,which} }`.
pub fn g_threshold(j1: f64, j2: f64, h1: f64, which: Sign, d: u32) -> Result<Threshold> {
    theta(d, j2, tau(j1, j2, h1, which, d)?)
}

/// Degree-only bounds `[h1 - N(J1 + J2), h1 + N|J1 - J2|]` on the smallest
/// field at which a plus state dominates, valid on any graph of maximum
/// degree `N`. On the tree `N = d + 1`.
pub fn degree_bounds(j1: f64, j2: f64, h1: f64, max_degree: u32) -> Result<(f64, f64)> {
    ensure_coupling(j1)?;
    ensure_coupling(j2)?;
    ensure_finite("h1", h1)?;
    if max_degree < 1 {
        return Err(Error::Domain("maximum degree must be at least 1".into()));
    }
    let n = max_degree as f64;
    Ok((h1 - n * (j1 + j2), h1 + n * (j1 - j2).abs()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Continuity {
    Continuous,
    Discontinuous,
}

/// Which row of the continuity table applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ContinuityCase {
    /// `J1 <= J_c`.
    SubcriticalSource,
    /// `J1 == J2`.
    EqualCouplings,
    /// `J1 > J_c >= J2`.
    SupercriticalToSubcritical,
    /// `J1, J2 > J_c`, `J1 != J2`: decided by the plateau test on `a`, `b`.
    BothSupercritical,
}

/// Continuity of `h1 -> f_+(J1, J2, h1)` at `h1 = -h*(J1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContinuityVerdict {
    pub point: f64,
    pub verdict: Continuity,
    pub case_label: ContinuityCase,
    /// `t_-(J1, -h*(J1)) + |J1 - J2|`, the left limit of `tau_+`.
    pub a: f64,
    /// `t_+(J1, -h*(J1)) + |J1 - J2|`, the right limit of `tau_+`.
    pub b: f64,
}

/// Analytic continuity verdict. The numerical check lives separately in
/// [`f_plus_one_sided_limits`] so the two can be compared.
pub fn continuity_classify(j1: f64, j2: f64, d: u32) -> Result<ContinuityVerdict> {
    ensure_coupling(j1)?;
    ensure_coupling(j2)?;
    let jc = critical_coupling(d)?;
    let hs1 = h_star(d, j1)?;
    let at_point = solve_fixed_points(&ModelParams::new(d, j1, -hs1)?)?;
    let gap = (j1 - j2).abs();
    let a = at_point.smallest() + gap;
    let b = at_point.largest() + gap;

    let (case_label, verdict) = if j1 <= jc {
        (ContinuityCase::SubcriticalSource, Continuity::Continuous)
    } else if j1 == j2 {
        (ContinuityCase::EqualCouplings, Continuity::Continuous)
    } else if j2 <= jc {
        (ContinuityCase::SupercriticalToSubcritical, Continuity::Discontinuous)
    } else {
        let w = FlatWindows::new(d, j2)?;
        let continuous = w.psi_left <= a && a < w.t_star && w.psi_left <= b && b <= w.t_star;
        (
            ContinuityCase::BothSupercritical,
            if continuous {
                Continuity::Continuous
            } else {
                Continuity::Discontinuous
            },
        )
    };
    Ok(ContinuityVerdict {
        point: -hs1,
        verdict,
        case_label,
        a,
        b,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OneSidedLimits {
    pub left: f64,
    pub right: f64,
    pub gap: f64,
}

/// `f_+(J1, J2, .)` evaluated at `-h*(J1) - step` and `-h*(J1) + step`.
pub fn f_plus_one_sided_limits(j1: f64, j2: f64, d: u32, step: f64) -> Result<OneSidedLimits> {
    if step.is_nan() || step <= 0.0 {
        return Err(Error::Domain(format!("step must be positive, got {step}")));
    }
    let point = -h_star(d, j1)?;
    let w = FlatWindows::new(d, j2)?;
    let eval = |h1: f64| -> Result<f64> { Ok(w.psi(tau(j1, j2, h1, Sign::Plus, d)?)?.value) };
    let left = eval(point - step)?;
    let right = eval(point + step)?;
    Ok(OneSidedLimits {
        left,
        right,
        gap: (right - left).abs(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonotoneCheck {
    /// `d t_+ / dJ = d phi_1 / (1 - d phi_2)` at `(J, t_+(J, h))`.
    pub derivative: f64,
    /// Whether `(J, h)` is in the region where the plus states increase in `J`.
    pub in_region: bool,
}

/// Implicit derivative of `t_+(J, h)` in `J`, and whether the plus state is
/// known to increase in `J` at `(J, h)` (then the derivative is at least 1).
#[allow(non_snake_case)]
pub fn monotone_in_J_check(d: u32, j: f64, h: f64) -> Result<MonotoneCheck> {
    ensure_branching(d)?;
    let t = t_extreme(&ModelParams::new(d, j, h)?, Sign::Plus)?;
    let df = d as f64;
    let (p1, p2) = phi_partials_unchecked(j, t);
    let denom = 1.0 - df * p2;
    if denom <= 0.0 {
        return Err(Error::Singular(format!(
            "1 - d*phi_t = {denom:e} at J={j}, t_+={t}: the plus root is not a transversal crossing"
        )));
    }
    let derivative = df * p1 / denom;
    let jc = critical_coupling(d)?;
    let in_region = (h >= 0.0 && j >= jc) || (h < 0.0 && h_star(d, j)? > -h);
    if in_region && derivative < 1.0 - 1e-12 {
        return Err(Error::InternalConsistency(format!(
            "d t_+/dJ = {derivative} < 1 inside the monotone region at d={d}, J={j}, h={h}"
        )));
    }
    Ok(MonotoneCheck {
        derivative,
        in_region,
    })
}

/// Which threshold the CLI asks for: `f` (plus dominator) or `g` (minus
/// dominator), against the plus or minus source state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ThresholdKind {
    pub dominator: Sign,
    pub source: Sign,
}

impl FromStr for ThresholdKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (dominator, source) = match s {
            "f+" => (Sign::Plus, Sign::Plus),
            "f-" => (Sign::Plus, Sign::Minus),
            "g+" => (Sign::Minus, Sign::Plus),
            "g-" => (Sign::Minus, Sign::Minus),
            other => {
                return Err(Error::Domain(format!(
                    "unknown threshold kind {other:?}, expected f+, f-, g+ or g-"
                )))
            }
        };
        Ok(Self { dominator, source })
    }
}

impl fmt::Display for ThresholdKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.dominator {
            Sign::Plus => 'f',
            Sign::Minus => 'g',
        };
        let sign = match self.source {
            Sign::Plus => '+',
            Sign::Minus => '-',
        };
        write!(f, "{letter}{sign}")
    }
}

pub fn threshold(kind: ThresholdKind, j1: f64, j2: f64, h1: f64, d: u32) -> Result<Threshold> {
    match kind.dominator {
        Sign::Plus => f_threshold(j1, j2, h1, kind.source, d),
        Sign::Minus => g_threshold(j1, j2, h1, kind.source, d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(d: u32, j: f64, h: f64, sign: Sign) -> ChainSpec {
        ChainSpec::new(d, j, h, sign).unwrap()
    }

    #[test]
    fn mc_dominates_basics() {
        let p = transition_matrix(1.0, 0.3).unwrap();
        assert!(mc_dominates(&p, &p));
        let lower = transition_matrix(1.0, -0.2).unwrap();
        assert!(mc_dominates(&p, &lower));
        assert!(!mc_dominates(&lower, &p));

        let a = transition_matrix(1.0, 0.5).unwrap();
        let b = transition_matrix(2.0, 0.5).unwrap();
        assert!(!(mc_dominates(&a, &b) && mc_dominates(&b, &a)));
        assert!(!mc_dominates(&a, &b) || !mc_dominates(&b, &a));
    }

    #[test]
    fn mc_dominates_resolves_saturated_entries() {
        // Both P(1,1) round to 1.0 but the complements differ.
        let p = transition_matrix(2.0, 20.0).unwrap();
        let q = transition_matrix(2.0, 19.0).unwrap();
        assert_eq!(p.p_pp(), q.p_pp());
        assert!(mc_dominates(&p, &q));
        assert!(!mc_dominates(&q, &p));
    }

    #[test]
    fn chain_dominates_examples() {
        let c = spec(4, 1.0, 0.3, Sign::Plus);
        assert!(chain_dominates(&c, &c).unwrap());
        assert!(chain_dominates(&spec(4, 1.0, 2.0, Sign::Plus), &spec(4, 1.0, 0.0, Sign::Plus)).unwrap());
        // Same t (h = 0, subcritical gives t = 0 for both), different J.
        let a = spec(4, 0.1, 0.0, Sign::Plus);
        let b = spec(4, 0.2, 0.0, Sign::Plus);
        assert!(!chain_dominates(&a, &b).unwrap());
        assert!(!chain_dominates(&b, &a).unwrap());
        assert!(chain_dominates(&spec(3, 1.0, 0.0, Sign::Plus), &spec(4, 1.0, 0.0, Sign::Plus)).is_err());
    }

    #[test]
    fn tau_examples() {
        let s = tau(1.0, 1.0, 0.4, Sign::Plus, 4).unwrap();
        assert_eq!(s, t_extreme(&ModelParams::new(4, 1.0, 0.4).unwrap(), Sign::Plus).unwrap());
        let t1 = t_extreme(&ModelParams::new(4, 1.0, 0.0).unwrap(), Sign::Plus).unwrap();
        assert_eq!(tau(1.0, 2.0, 0.0, Sign::Plus, 4).unwrap(), t1 + 1.0);
        // plus and minus agree exactly when the fixed point is unique
        let hs = h_star(4, 1.0).unwrap();
        for h1 in [-3.0, -hs - 0.01, hs + 0.01, 3.0] {
            assert_eq!(tau(1.0, 2.0, h1, Sign::Plus, 4).unwrap(), tau(1.0, 2.0, h1, Sign::Minus, 4).unwrap());
        }
        for h1 in [-hs + 0.01, 0.0, hs - 0.01] {
            assert!(tau(1.0, 2.0, h1, Sign::Plus, 4).unwrap() > tau(1.0, 2.0, h1, Sign::Minus, 4).unwrap());
        }
    }

    #[test]
    fn psi_theta_subcritical_have_no_plateau() {
        for t in [-3.0, -1e-13, 0.0, 1e-13, 0.5, 7.0] {
            let p = psi(4, 0.1, t).unwrap();
            let q = theta(4, 0.1, t).unwrap();
            assert_eq!(p.branch, Branch::Curve);
            assert_eq!(p, q);
        }
    }

    #[test]
    fn psi_seam_and_curve_value() {
        let w = FlatWindows::new(4, 2.0).unwrap();
        let at = w.psi(w.t_star).unwrap();
        assert_eq!(at.branch, Branch::Curve);
        assert!((at.value + w.h_star).abs() < 1e-12);
        let inside = w.psi(w.t_star - 1e-3).unwrap();
        assert_eq!(inside.branch, Branch::Flat);
        assert_eq!(inside.value, -w.h_star);

        let v = psi(4, 2.0, 10.0).unwrap();
        assert_eq!(v.branch, Branch::Curve);
        assert!((v.value - (10.0 - 4.0 * phi_unchecked(2.0, 10.0))).abs() < 1e-15);
    }

    #[test]
    fn theta_is_reflected_psi_on_curve() {
        let w = FlatWindows::new(4, 2.0).unwrap();
        for i in 0..200 {
            let t = -20.0 + 0.2 * i as f64;
            let th = w.theta(t).unwrap();
            let ps = w.psi(-t).unwrap();
            if th.branch == Branch::Curve && ps.branch == Branch::Curve {
                assert!((th.value + ps.value).abs() < 1e-12);
            }
            assert!(th.value >= ps.value - 1e-12 || th.value >= w.psi(t).unwrap().value);
            assert!(th.value >= w.psi(t).unwrap().value - 1e-12);
        }
        let flat = w.theta(0.0).unwrap();
        assert_eq!(flat.branch, Branch::Flat);
        assert_eq!(flat.attained, Attained::Open);
        assert!(!flat.admits(flat.value));
        assert!(flat.admits(flat.value + 1e-9));
    }

    #[test]
    fn f_threshold_self_domination() {
        let hs = h_star(4, 1.0).unwrap();
        for h1 in [-hs, -0.5, 0.0, 0.3, 2.5] {
            let th = f_threshold(1.0, 1.0, h1, Sign::Plus, 4).unwrap();
            assert!((th.value - h1).abs() < 1e-10, "h1={h1}: {th:?}");
            assert_eq!(th.attained, Attained::Closed);
        }
    }

    #[test]
    fn g_equals_f_for_subcritical_dominator() {
        for &(j1, h1) in &[(0.5, 0.0), (1.3, -0.8), (2.0, 1.0)] {
            for which in [Sign::Plus, Sign::Minus] {
                let f = f_threshold(j1, 0.2, h1, which, 4).unwrap();
                let g = g_threshold(j1, 0.2, h1, which, 4).unwrap();
                assert_eq!(f, g);
            }
        }
    }

    #[test]
    fn degree_bounds_basics() {
        let (lo, hi) = degree_bounds(1.0, 1.0, 0.5, 5).unwrap();
        assert_eq!(hi, 0.5);
        assert!(lo < hi);
        assert!(degree_bounds(1.0, 1.0, 0.5, 0).is_err());
    }

    #[test]
    fn continuity_clauses() {
        let v = continuity_classify(0.1, 1.0, 4).unwrap();
        assert_eq!(v.verdict, Continuity::Continuous);
        assert_eq!(v.case_label, ContinuityCase::SubcriticalSource);
        let v = continuity_classify(1.0, 0.1, 4).unwrap();
        assert_eq!(v.verdict, Continuity::Discontinuous);
        assert_eq!(v.case_label, ContinuityCase::SupercriticalToSubcritical);
        assert!(v.a <= v.b);
        let v = continuity_classify(1.0, 1.0, 4).unwrap();
        assert_eq!(v.case_label, ContinuityCase::EqualCouplings);

        let lim = f_plus_one_sided_limits(1.0, 0.1, 4, 1e-7).unwrap();
        assert!(lim.gap > 1e-5);
        let lim = f_plus_one_sided_limits(1.0, 1.0, 4, 1e-7).unwrap();
        assert!(lim.gap < 1e-6);
    }

    #[test]
    fn monotone_check_examples() {
        let d = 4;
        let jc = critical_coupling(d).unwrap();
        let (p1, p2) = phi_partials_unchecked(jc, 0.0);
        assert!((p1 + p2 - 0.25).abs() < 1e-15);
        assert!(matches!(monotone_in_J_check(d, jc, 0.0), Err(Error::Singular(_))));

        let m = monotone_in_J_check(d, 1.0, 0.5).unwrap();
        assert!(m.in_region && m.derivative >= 1.0);
        let step = 1e-6;
        let tp = |j: f64| t_extreme(&ModelParams::new(d, j, 0.5).unwrap(), Sign::Plus).unwrap();
        let fd = (tp(1.0 + step) - tp(1.0 - step)) / (2.0 * step);
        assert!((fd - m.derivative).abs() < 1e-4);

        let out = monotone_in_J_check(d, 0.1, 0.5).unwrap();
        assert!(!out.in_region);
    }

    #[test]
    fn threshold_kind_parsing() {
        for s in ["f+", "f-", "g+", "g-"] {
            assert_eq!(s.parse::<ThresholdKind>().unwrap().to_string(), s);
        }
        assert!("h+".parse::<ThresholdKind>().is_err());
    }
}
