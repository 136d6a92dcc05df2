//! Fuzzy Potts measures on the tree: the free-boundary chain, its product
//! threshold, the plus-boundary ratios `a`, `b`, `c`, and the construction of
//! a density `p` that separates the free and minus fuzzy measures.

use serde::Serialize;

use crate::error::{ensure_branching, ensure_coupling, Error, Result};
use crate::ising::TransitionMatrix2;

/// Successive iterates of the c-map closer than this stop the iteration. For
/// large `c` the iteration also stops once steps reach rounding level.
pub const C_STEP_TOL: f64 = 1e-13;
/// A converged `c` this close to 1 is reported as exactly 1.
pub const C_SNAP_TOL: f64 = 1e-10;
/// `phase_unique` accepts `|c - 1|` up to this.
pub const UNIQUE_TOL: f64 = 1e-9;
pub const C_MAX_ITER: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FuzzyParams {
    q: u32,
    coupling: f64,
    r: u32,
    d: u32,
    regime: bool,
}

impl FuzzyParams {
    /// `q >= 3`, `1 <= r <= q - 1`, `J > 0`, `d >= 2`. The coupling must also
    /// keep `e^{2J(d+1)}` finite so the ratio recursions cannot overflow.
    pub fn new(q: u32, coupling: f64, r: u32, d: u32) -> Result<Self> {
        if q < 3 {
            return Err(Error::Domain(format!("q must be at least 3, got {q}")));
        }
        if r < 1 || r >= q {
            return Err(Error::Domain(format!("r must lie in 1..={}, got {r}", q - 1)));
        }
        ensure_coupling(coupling)?;
        ensure_branching(d)?;
        if !(2.0 * coupling * (d as f64 + 1.0)).exp().is_finite() {
            return Err(Error::Domain(format!(
                "coupling {coupling} too large for d = {d}: e^(2J(d+1)) overflows"
            )));
        }
        let regime = (2.0 * coupling).exp() >= q as f64 - 2.0;
        Ok(Self {
            q,
            coupling,
            r,
            d,
            regime,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// `e^{2J} >= q - 2`, the regime in which the witness construction applies.
    pub fn regime(&self) -> bool {
        self.regime
    }

    fn e2j(&self) -> f64 {
        (2.0 * self.coupling).exp()
    }
}

/// Plus-boundary ratios.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioPair {
    /// Subtree odds of spin 1 against spin 2 under spin-1 boundary.
    pub c: f64,
    /// Root odds `(q - 1) a / (1 - a)`.
    pub b: f64,
    /// Root probability of spin 1.
    pub a: f64,
}

/// Transition matrix of the free-boundary fuzzy Potts chain.
pub fn free_chain(params: &FuzzyParams) -> Result<TransitionMatrix2> {
    // Written in terms of w = e^{-2J} so large couplings cannot overflow.
    let w = (-2.0 * params.coupling).exp();
    let q = params.q as f64;
    let r = params.r as f64;
    let denom = 1.0 + (q - 1.0) * w;
    TransitionMatrix2::new(
        (1.0 + (r - 1.0) * w) / denom,
        (q - r) * w / denom,
        r * w / denom,
        (1.0 + (q - r - 1.0) * w) / denom,
    )
}

/// Largest `p` with the free fuzzy measure dominating the product measure of
/// density `p`. Requires `P(-1,1) <= P(1,1)`.
pub fn free_product_threshold(params: &FuzzyParams) -> Result<f64> {
    let p = free_chain(params)?;
    if p.p_mp() > p.p_pp() {
        return Err(Error::Precondition(format!(
            "product-measure criterion needs P(-1,1) <= P(1,1), got {} > {}",
            p.p_mp(),
            p.p_pp()
        )));
    }
    Ok(p.p_mp())
}

fn c_map(x: f64, e: f64, q: f64, d: i32) -> f64 {
    ((x * e + q - 1.0) / (x + e + q - 2.0)).powi(d)
}

/// One application of the subtree recursion; `c` is its largest fixed point.
pub fn c_map_value(params: &FuzzyParams, x: f64) -> f64 {
    c_map(x, params.e2j(), params.q as f64, params.d as i32)
}

/// Largest fixed point of `x -> ((x e^{2J} + q - 1) / (x + e^{2J} + q - 2))^d`,
/// reached by monotone iteration from `e^{2Jd}`.
pub fn subtree_ratio(params: &FuzzyParams) -> Result<f64> {
    let e = params.e2j();
    let q = params.q as f64;
    let d = params.d as i32;
    let mut x = e.powi(d);
    for _ in 0..C_MAX_ITER {
        let next = c_map(x, e, q, d);
        if next > x * (1.0 + 4.0 * f64::EPSILON) {
            return Err(Error::InternalConsistency(format!(
                "c iteration increased from {x} to {next} at {params:?}"
            )));
        }
        let step = (x - next).abs();
        if step < C_STEP_TOL || step <= 4.0 * f64::EPSILON * x {
            return Ok(if (next - 1.0).abs() < C_SNAP_TOL { 1.0 } else { next });
        }
        x = next;
    }
    Err(Error::NoConvergence {
        what: "subtree ratio iteration",
        iterations: C_MAX_ITER,
    })
}

/// Root ratios `b` and `a` from a subtree ratio `c >= 1`.
pub fn root_ratio(params: &FuzzyParams, c: f64) -> Result<RatioPair> {
    if !c.is_finite() || c < 1.0 {
        return Err(Error::Domain(format!("subtree ratio must be finite and >= 1, got {c}")));
    }
    let e = params.e2j();
    let q = params.q as f64;
    let b = if c == 1.0 {
        1.0
    } else {
        ((c * e + q - 1.0) / (c + e + q - 2.0)).powi(params.d as i32 + 1)
    };
    let a = b / (b + q - 1.0);
    let back = (q - 1.0) * a / (1.0 - a);
    if (back - b).abs() > 1e-10 * b.max(1.0) {
        return Err(Error::InternalConsistency(format!(
            "b = {b} but (q-1)a/(1-a) = {back}"
        )));
    }
    Ok(RatioPair { c, b, a })
}

pub fn ratios(params: &FuzzyParams) -> Result<RatioPair> {
    root_ratio(params, subtree_ratio(params)?)
}

/// Whether the plus-boundary Potts state coincides with the free one.
pub fn phase_unique(params: &FuzzyParams) -> Result<bool> {
    Ok((subtree_ratio(params)? - 1.0).abs() <= UNIQUE_TOL)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateBounds {
    /// Sum of the two geometric bases.
    pub two_term_sum: f64,
    /// Larger of the two bases; the true exponential rate of the all-minus
    /// probability lower bound.
    pub exact_rate: f64,
    /// `(c e^{2J} + q - 2) / (c e^{2J} + q - 1)`.
    pub simplified_bound: f64,
    /// `two_term_sum > 1`, in which case it bounds nothing.
    pub sum_exceeds_one: bool,
}

/// Per-site rates bounding the all-minus probability of the minus fuzzy
/// measure from below.
pub fn rate_bounds(params: &FuzzyParams, ratios: &RatioPair) -> Result<RateBounds> {
    let c = ratios.c;
    if !c.is_finite() || c < 1.0 {
        return Err(Error::Domain(format!("subtree ratio must be finite and >= 1, got {c}")));
    }
    let e = params.e2j();
    let q = params.q as f64;
    let ce = c * e;
    let same = ce / (ce + q - 1.0);
    let other = e / (c + e + q - 2.0);
    let two_term_sum = same + other;
    Ok(RateBounds {
        two_term_sum,
        exact_rate: same.max(other),
        simplified_bound: (ce + q - 2.0) / (ce + q - 1.0),
        sum_exceeds_one: two_term_sum > 1.0,
    })
}

/// Half-open interval `(lo, hi]` of product densities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WitnessInterval {
    pub lo: f64,
    pub hi: f64,
}

impl WitnessInterval {
    pub fn contains(&self, p: f64) -> bool {
        self.lo < p && p <= self.hi
    }
}

/// Densities `p` with the free fuzzy measure dominating the product measure
/// while the minus fuzzy measure does not. `None` in the unique phase.
pub fn witness_p(params: &FuzzyParams) -> Result<Option<WitnessInterval>> {
    if !params.regime {
        return Err(Error::Precondition(format!(
            "witness construction needs e^(2J) >= q - 2, got e^(2J) = {} with q = {}",
            params.e2j(),
            params.q
        )));
    }
    let c = subtree_ratio(params)?;
    if c == 1.0 {
        return Ok(None);
    }
    let hi = free_product_threshold(params)?;
    // same form as the free chain entry, with c in place of 1
    let w = (-2.0 * params.coupling).exp();
    let lo = (params.q - params.r) as f64 * w / (c + (params.q - 1) as f64 * w);
    Ok((lo < hi).then_some(WitnessInterval { lo, hi }))
}

/// True when the simplified rate bound exceeds `1 - p`, which rules out the
/// minus fuzzy measure dominating the product measure of density `p`.
pub fn nondomination_certificate(params: &FuzzyParams, p: f64) -> Result<bool> {
    check_probability(p)?;
    let bounds = rate_bounds(params, &ratios(params)?)?;
    Ok(bounds.simplified_bound > 1.0 - p)
}

/// Same test against the exact rate. Weaker requirement, same conclusion.
pub fn nondomination_certificate_exact(params: &FuzzyParams, p: f64) -> Result<bool> {
    check_probability(p)?;
    let bounds = rate_bounds(params, &ratios(params)?)?;
    Ok(bounds.exact_rate > 1.0 - p)
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Domain(format!("p must be a probability, got {p}")))
    }
}
