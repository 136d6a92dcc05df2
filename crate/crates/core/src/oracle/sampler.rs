//! Heat-bath Gibbs sampler for the Ising model on a finite tree.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{check_cap, FiniteTree, Limits};
use crate::error::{ensure_finite, Error, Result};
use crate::ising::logistic;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Plus,
    Minus,
    Free,
}

impl Boundary {
    fn spin(self) -> i32 {
        match self {
            Boundary::Plus => 1,
            Boundary::Minus => -1,
            Boundary::Free => 0,
        }
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Boundary::Plus => "plus",
            Boundary::Minus => "minus",
            Boundary::Free => "free",
        })
    }
}

impl FromStr for Boundary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(Boundary::Plus),
            "minus" | "-" => Ok(Boundary::Minus),
            "free" | "0" => Ok(Boundary::Free),
            other => Err(Error::Domain(format!("unknown boundary {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleResult {
    /// Fraction of kept sweeps in which each vertex was plus.
    pub plus_prob: Vec<f64>,
    /// Batch-means standard error of each entry of `plus_prob`, binomial when
    /// there are too few sweeps to batch.
    pub std_err: Vec<f64>,
    pub kept_sweeps: usize,
}

/// Runs `sweeps` heat-bath sweeps in vertex order, discards the first half
/// and reports per-vertex plus frequencies. Boundary neighbours are fixed to
/// the boundary spin (and ignored for `Free`).
pub fn gibbs_sample(
    tree: &FiniteTree,
    j: f64,
    h: f64,
    boundary: Boundary,
    sweeps: usize,
    seed: u64,
    limits: &Limits,
) -> Result<SampleResult> {
    ensure_finite("J", j)?;
    ensure_finite("h", h)?;
    if sweeps < 2 {
        return Err(Error::Domain(format!("need at least 2 sweeps, got {sweeps}")));
    }
    check_cap("sampler tree", tree.len(), limits.sampler_vertices)?;
    let n = tree.len();
    let neighbours: Vec<Vec<usize>> = (0..n)
        .map(|v| tree.parent(v).into_iter().chain(tree.children(v).iter().copied()).collect())
        .collect();
    let fixed: Vec<i32> = (0..n)
        .map(|v| tree.boundary_degree(v) as i32 * boundary.spin())
        .collect();
    let max_deg = (0..n).map(|v| tree.degree(v)).max().unwrap_or(0) as i32;
    // P(plus | local field S) for integer S in -max_deg..=max_deg
    let table: Vec<f64> = (-max_deg..=max_deg)
        .map(|s| logistic(2.0 * (j * s as f64 + h)))
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spins: Vec<i32> = match boundary {
        Boundary::Plus => vec![1; n],
        Boundary::Minus => vec![-1; n],
        Boundary::Free => (0..n).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect(),
    };

    let burn = sweeps / 2;
    let kept = sweeps - burn;
    // Batch means over about sqrt(kept) batches of about sqrt(kept) sweeps;
    // sweeps past the last full batch count towards the mean only.
    let batches = ((kept as f64).sqrt() as usize).max(2);
    let batch_len = kept / batches;
    let mut counts = vec![0u64; n];
    let mut in_batch = vec![0u32; n];
    let mut batch_sum = vec![0.0f64; n];
    let mut batch_sq = vec![0.0f64; n];
    for sweep in 0..sweeps {
        for v in 0..n {
            let field: i32 = fixed[v] + neighbours[v].iter().map(|&u| spins[u]).sum::<i32>();
            let up = rng.random::<f64>() < table[(field + max_deg) as usize];
            spins[v] = if up { 1 } else { -1 };
        }
        if sweep < burn {
            continue;
        }
        for v in 0..n {
            if spins[v] == 1 {
                counts[v] += 1;
                in_batch[v] += 1;
            }
        }
        let k = sweep - burn + 1;
        if batch_len > 0 && k.is_multiple_of(batch_len) && k / batch_len <= batches {
            for v in 0..n {
                let m = in_batch[v] as f64 / batch_len as f64;
                batch_sum[v] += m;
                batch_sq[v] += m * m;
                in_batch[v] = 0;
            }
        }
    }

    let plus_prob: Vec<f64> = counts.iter().map(|&c| c as f64 / kept as f64).collect();
    let b = batches as f64;
    let std_err = (0..n)
        .map(|v| {
            if batch_len >= 2 {
                let mean = batch_sum[v] / b;
                let var = ((batch_sq[v] - b * mean * mean) / (b - 1.0)).max(0.0);
                (var / b).sqrt()
            } else {
                let p = plus_prob[v];
                (p * (1.0 - p) / kept as f64).sqrt()
            }
        })
        .collect();
    Ok(SampleResult {
        plus_prob,
        std_err,
        kept_sweeps: kept,
    })
}
