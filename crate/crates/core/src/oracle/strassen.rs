//! Stochastic domination between configuration laws on a finite tree.
//!
//! `D1 >= D2` iff some coupling puts all its mass on `{(eta, xi) : eta <= xi}`
//! with `eta ~ D2` and `xi ~ D1`. That is a transportation feasibility
//! question, answered here by max flow and, for tiny trees, by checking every
//! up-set directly.

use super::{check_cap, product_distribution, ConfigDistribution, FlowNetwork, Limits};
use crate::error::{Error, Result};
use crate::exec::Exec;

/// A coupling exists iff the max flow reaches `1 - FLOW_TOL`.
pub const FLOW_TOL: f64 = 1e-10;
/// Up-set enumeration slack: `D1(U) >= D2(U) - UPSET_TOL`.
pub const UPSET_TOL: f64 = 1e-12;
/// Largest tree for [`dominates_brute`]; configurations then fit in a `u64`.
pub const BRUTE_MAX_VERTICES: usize = 5;

fn same_shape(d1: &ConfigDistribution, d2: &ConfigDistribution) -> Result<()> {
    if d1.tree() != d2.tree() {
        return Err(Error::Domain("distributions live on different trees".into()));
    }
    Ok(())
}

/// Value of the max flow source -> D2 configs -> D1 configs -> sink, where a
/// D2 configuration feeds every D1 configuration above it.
pub fn coupling_flow(d1: &ConfigDistribution, d2: &ConfigDistribution, limits: &Limits) -> Result<f64> {
    same_shape(d1, d2)?;
    let n = d1.tree().len();
    check_cap("coupling tree", n, limits.flow_vertices)?;
    let size = 1usize << n;
    let full = size - 1;
    let source = 0;
    let sink = 2 * size + 1;
    let lower = |s: usize| 1 + s;
    let upper = |s: usize| 1 + size + s;

    let mut net = FlowNetwork::new(2 * size + 2);
    let (p1, p2) = (d1.probs(), d2.probs());
    for s in 0..size {
        if p2[s] > 0.0 {
            net.add_edge(source, lower(s), p2[s]);
        }
        if p1[s] > 0.0 {
            net.add_edge(upper(s), sink, p1[s]);
        }
    }
    for eta in (0..size).filter(|&s| p2[s] > 0.0) {
        let free = !eta & full;
        let mut extra = free;
        loop {
            let xi = eta | extra;
            if p1[xi] > 0.0 {
                // Any capacity above the total mass acts as infinite.
                net.add_edge(lower(eta), upper(xi), 2.0);
            }
            if extra == 0 {
                break;
            }
            extra = (extra - 1) & free;
        }
    }
    Ok(net.max_flow(source, sink))
}

/// `D1 >= D2` by Strassen's coupling criterion.
pub fn dominates_exact(d1: &ConfigDistribution, d2: &ConfigDistribution, limits: &Limits) -> Result<bool> {
    let flow = coupling_flow(d1, d2, limits)?;
    if flow > 1.0 + FLOW_TOL {
        return Err(Error::InternalConsistency(format!("flow {flow} exceeds total mass")));
    }
    Ok(flow >= 1.0 - FLOW_TOL)
}

/// `D1 >= D2` by comparing the masses of every up-set. At most five vertices.
pub fn dominates_brute(d1: &ConfigDistribution, d2: &ConfigDistribution) -> Result<bool> {
    same_shape(d1, d2)?;
    let n = d1.tree().len();
    check_cap("up-set tree", n, BRUTE_MAX_VERTICES)?;
    let size = 1usize << n;
    // above[s] = configurations >= s, as a bitmask over configurations
    let above: Vec<u64> = (0..size)
        .map(|s| (0..size).filter(|&x| x & s == s).fold(0u64, |m, x| m | 1 << x))
        .collect();
    let mass = |p: &[f64], set: u64| -> f64 {
        (0..size).filter(|&x| set >> x & 1 == 1).map(|x| p[x]).sum()
    };

    struct Walk<'a> {
        size: usize,
        above: &'a [u64],
        check: &'a dyn Fn(u64) -> bool,
    }
    // Each antichain is grown in increasing element order, so every up-set is
    // visited once.
    fn extend(w: &Walk, start: usize, up: u64, chain: &mut Vec<usize>) -> bool {
        if !(w.check)(up) {
            return false;
        }
        for s in start..w.size {
            let comparable = chain.iter().any(|&a| a & s == a || a & s == s);
            if comparable {
                continue;
            }
            chain.push(s);
            let ok = extend(w, s + 1, up | w.above[s], chain);
            chain.pop();
            if !ok {
                return false;
            }
        }
        true
    }

    let check = |up: u64| mass(d1.probs(), up) >= mass(d2.probs(), up) - UPSET_TOL;
    let walk = Walk {
        size,
        above: &above,
        check: &check,
    };
    Ok(extend(&walk, 0, 0, &mut Vec::new()))
}

/// Number of up-sets of `{-1, +1}^n` (including the empty one), counted by
/// the same antichain walk that [`dominates_brute`] uses.
pub fn count_upsets(n: usize) -> usize {
    fn rec(size: usize, start: usize, chain: &mut Vec<usize>) -> usize {
        let mut total = 1;
        for s in start..size {
            if chain.iter().any(|&a| a & s == a || a & s == s) {
                continue;
            }
            chain.push(s);
            total += rec(size, s + 1, chain);
            chain.pop();
        }
        total
    }
    rec(1 << n, 0, &mut Vec::new())
}

/// `D >= gamma_p`, the product law with plus-density `p`.
pub fn product_dominates_exact(d: &ConfigDistribution, p: f64, limits: &Limits, exec: Exec) -> Result<bool> {
    let gamma = product_distribution(d.tree(), p, limits, exec)?;
    dominates_exact(d, &gamma, limits)
}
