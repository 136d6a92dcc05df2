//! Exact and Monte Carlo ground truth on finite trees.
//!
//! Configurations of an `n`-vertex tree are stored as `n`-bit masks: bit `i`
//! is set iff vertex `i` carries spin `+1`. Vertex 0 is the root and vertices
//! are numbered breadth first.

mod distribution;
mod flow;
mod potts;
mod sampler;
mod strassen;
mod tree;

pub use distribution::{chain_distribution, product_distribution, ConfigDistribution};
pub use flow::FlowNetwork;
pub use potts::{all_minus_rate, potts_subtree_ratio_exact, MAX_RATE_DEPTH, MAX_RATIO_DEPTH};
pub use sampler::{gibbs_sample, Boundary, SampleResult};
pub use strassen::{
    count_upsets, coupling_flow, dominates_brute, dominates_exact, product_dominates_exact, BRUTE_MAX_VERTICES,
    FLOW_TOL,
};
pub use tree::{build_tree, tree_size, FiniteTree};

use crate::error::{Error, Result};

/// Environment variable overriding the exact-oracle vertex caps.
pub const MAX_VERTICES_ENV: &str = "GD_MAX_VERTICES";

/// Size caps for the finite-tree oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest tree for which a dense configuration distribution is built.
    pub distribution_vertices: usize,
    /// Largest tree handed to the max-flow coupling check.
    pub flow_vertices: usize,
    /// Largest tree the sampler accepts.
    pub sampler_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            distribution_vertices: 20,
            flow_vertices: 12,
            sampler_vertices: 100_000,
        }
    }
}

impl Limits {
    /// Defaults, with both exact caps replaced by `GD_MAX_VERTICES` if set.
    pub fn from_env() -> Result<Self> {
        let mut limits = Self::default();
        if let Ok(raw) = std::env::var(MAX_VERTICES_ENV) {
            let cap: usize = raw.trim().parse().map_err(|_| {
                Error::Domain(format!("{MAX_VERTICES_ENV} must be a vertex count, got {raw:?}"))
            })?;
            if cap == 0 || cap > 30 {
                return Err(Error::Domain(format!(
                    "{MAX_VERTICES_ENV} must lie in 1..=30, got {cap}"
                )));
            }
            limits.distribution_vertices = cap;
            limits.flow_vertices = cap;
        }
        Ok(limits)
    }
}

pub(crate) fn check_cap(what: &'static str, actual: usize, cap: usize) -> Result<()> {
    if actual > cap {
        Err(Error::Size { what, actual, cap })
    } else {
        Ok(())
    }
}
