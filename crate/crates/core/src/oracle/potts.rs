//! Exact q-state Potts computations on the tree by leaf-to-root transfer.
//!
//! Pair weight is `e^{2J}` for equal spins and 1 otherwise. Spins are
//! `0..q`, index 0 standing for spin 1. Messages are q-vectors rescaled to
//! unit maximum at every level so deep recursions stay in range.

use super::tree_size;
use crate::error::{ensure_branching, ensure_coupling, Error, Result};

pub const MAX_RATIO_DEPTH: u32 = 30;
pub const MAX_RATE_DEPTH: u32 = 20;
const MESSAGE_TOL: f64 = 1e-15;
const MESSAGE_MAX_ITER: usize = 10_000_000;

fn check_q(q: u32) -> Result<()> {
    if q < 2 {
        return Err(Error::Domain(format!("q must be at least 2, got {q}")));
    }
    Ok(())
}

fn normalize(v: &mut [f64]) {
    let m = v.iter().cloned().fold(0.0, f64::max);
    v.iter_mut().for_each(|x| *x /= m);
}

/// `out[s] = sum_k w(s, k) m[k]`.
fn pass_edge(m: &[f64], e: f64) -> Vec<f64> {
    let total: f64 = m.iter().sum();
    m.iter().map(|&mk| total + (e - 1.0) * mk).collect()
}

/// Message a vertex sends up given identical messages `m` from `fan` children.
fn combine(m: &[f64], e: f64, fan: u32) -> Vec<f64> {
    let mut v: Vec<f64> = pass_edge(m, e).into_iter().map(|x| x.powi(fan as i32)).collect();
    normalize(&mut v);
    v
}

fn spin_one_boundary(q: usize) -> Vec<f64> {
    let mut m = vec![0.0; q];
    m[0] = 1.0;
    m
}

/// Odds of spin 1 against spin 2 at the root of a depth-`depth` subtree in
/// which every vertex has `d` children and the children of the deepest
/// level are pinned to spin 1. The root has no parent edge.
pub fn potts_subtree_ratio_exact(q: u32, j: f64, d: u32, depth: u32) -> Result<f64> {
    check_q(q)?;
    ensure_coupling(j)?;
    ensure_branching(d)?;
    if depth > MAX_RATIO_DEPTH {
        return Err(Error::Domain(format!("depth must be at most {MAX_RATIO_DEPTH}, got {depth}")));
    }
    let e = (2.0 * j).exp();
    let mut m = spin_one_boundary(q as usize);
    for _ in 0..=depth {
        m = combine(&m, e, d);
    }
    Ok(m[0] / m[1])
}

/// Subtree message under a spin-1 boundary at infinite distance.
fn limiting_message(q: usize, e: f64, d: u32) -> Result<Vec<f64>> {
    let mut m = spin_one_boundary(q);
    for _ in 0..MESSAGE_MAX_ITER {
        let next = combine(&m, e, d);
        let step = next.iter().zip(&m).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        m = next;
        if step < MESSAGE_TOL {
            return Ok(m);
        }
    }
    Err(Error::NoConvergence {
        what: "Potts boundary message",
        iterations: MESSAGE_MAX_ITER,
    })
}

/// `(sum_{i <= r} P(X = i on V_n))^{1/|V_n|}` under the spin-1 boundary Potts
/// state, where `V_n` is the radius-`depth` ball around a vertex.
pub fn all_minus_rate(q: u32, j: f64, r: u32, d: u32, depth: u32) -> Result<f64> {
    check_q(q)?;
    ensure_coupling(j)?;
    ensure_branching(d)?;
    if r < 1 || r >= q {
        return Err(Error::Domain(format!("r must lie in 1..={}, got {r}", q - 1)));
    }
    if depth > MAX_RATE_DEPTH {
        return Err(Error::Domain(format!("depth must be at most {MAX_RATE_DEPTH}, got {depth}")));
    }
    let q = q as usize;
    let e = (2.0 * j).exp();
    let m = limiting_message(q, e, d)?;
    let field = pass_edge(&m, e);

    // root law from d + 1 neighbours; along an edge P(i | i) = e m_i / field_i
    let root: Vec<f64> = field.iter().map(|x| x.powi(d as i32 + 1)).collect();
    let root_total: f64 = root.iter().sum();
    let n = tree_size(d, depth).ok_or_else(|| Error::Domain("ball size overflows".into()))?;
    let edges = (n - 1) as f64;
    let logs: Vec<f64> = (0..r as usize)
        .map(|i| (root[i] / root_total).ln() + edges * (e * m[i] / field[i]).ln())
        .collect();
    let top = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let log_prob = top + logs.iter().map(|l| (l - top).exp()).sum::<f64>().ln();
    Ok((log_prob / n as f64).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_zero_ratio() {
        let r = potts_subtree_ratio_exact(3, 0.8, 2, 0).unwrap();
        assert!((r - (2.0f64 * 0.8 * 2.0).exp()).abs() < 1e-12);
    }

    #[test]
    fn weak_coupling_ratio_near_one() {
        let r = potts_subtree_ratio_exact(3, 1e-6, 2, 10).unwrap();
        assert!((r - 1.0).abs() < 1e-5);
    }

    #[test]
    fn ratio_decreases_with_depth() {
        let mut last = f64::INFINITY;
        for depth in 0..15 {
            let r = potts_subtree_ratio_exact(3, 1.2, 2, depth).unwrap();
            assert!(r < last);
            last = r;
        }
    }

    #[test]
    fn ratio_matches_brute_force_small_tree() {
        // depth 1, d = 2: root, two children, each child with two pinned
        // spin-1 neighbours. Enumerate the three free spins.
        let (q, j) = (3usize, 0.7f64);
        let e = (2.0 * j).exp();
        let w = |a: usize, b: usize| if a == b { e } else { 1.0 };
        let root: Vec<f64> = (0..q)
            .map(|x| {
                let mut s = 0.0;
                for y in 0..q {
                    for z in 0..q {
                        s += w(x, y) * w(x, z) * w(y, 0).powi(2) * w(z, 0).powi(2);
                    }
                }
                s
            })
            .collect();
        let exact = root[0] / root[1];
        let got = potts_subtree_ratio_exact(q as u32, j, 2, 1).unwrap();
        assert!((exact - got).abs() < 1e-12 * exact);
    }

    #[test]
    fn rate_range_and_weak_coupling() {
        for depth in [1, 5, 10] {
            let rate = all_minus_rate(3, 1.2, 1, 2, depth).unwrap();
            assert!(rate > 0.0 && rate <= 1.0);
        }
        // decoupled spins: r / q^|V|, so the rate tends to 1/q
        let n = tree_size(2, 10).unwrap() as f64;
        let rate = all_minus_rate(4, 1e-9, 3, 2, 10).unwrap();
        assert!((rate - 3f64.powf(1.0 / n) / 4.0).abs() < 1e-8);
    }

    #[test]
    fn argument_checks() {
        assert!(potts_subtree_ratio_exact(3, 1.0, 2, 31).is_err());
        assert!(all_minus_rate(3, 1.0, 3, 2, 4).is_err());
        assert!(all_minus_rate(3, 1.0, 1, 2, 21).is_err());
    }
}
