use serde::Serialize;

use super::{check_cap, FiniteTree, Limits};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::ising::{Distribution2, TransitionMatrix2};

const MASS_TOL: f64 = 1e-10;

/// Dense law on `{-1, +1}^V`. Entry `s` is the probability of the
/// configuration whose plus vertices are the set bits of `s`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigDistribution {
    tree: FiniteTree,
    probs: Vec<f64>,
}

impl ConfigDistribution {
    pub fn new(tree: FiniteTree, probs: Vec<f64>) -> Result<Self> {
        if tree.len() >= usize::BITS as usize || probs.len() != 1usize << tree.len() {
            return Err(Error::Domain(format!(
                "{} probabilities for a {}-vertex tree",
                probs.len(),
                tree.len()
            )));
        }
        if let Some(bad) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::Domain(format!("invalid probability {bad}")));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > MASS_TOL {
            return Err(Error::Domain(format!("probabilities sum to {total}")));
        }
        Ok(Self { tree, probs })
    }

    /// Normalizes nonnegative weights.
    pub fn from_weights(tree: FiniteTree, mut weights: Vec<f64>) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if !total.is_finite() || total <= 0.0 {
            return Err(Error::Domain(format!("weights sum to {total}")));
        }
        weights.iter_mut().for_each(|w| *w /= total);
        Self::new(tree, weights)
    }

    /// Point mass on one configuration.
    pub fn point_mass(tree: FiniteTree, config: usize) -> Result<Self> {
        let mut probs = vec![0.0; 1usize << tree.len()];
        if config >= probs.len() {
            return Err(Error::Domain(format!("configuration {config} out of range")));
        }
        probs[config] = 1.0;
        Self::new(tree, probs)
    }

    pub fn tree(&self) -> &FiniteTree {
        &self.tree
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// Probability that vertex `v` is plus.
    pub fn marginal_plus(&self, v: usize) -> f64 {
        let bit = 1usize << v;
        self.probs
            .iter()
            .enumerate()
            .filter(|(s, _)| s & bit != 0)
            .map(|(_, p)| p)
            .sum()
    }

    pub fn all_minus(&self) -> f64 {
        self.probs[0]
    }
}

/// Law of the tree-indexed Markov chain with root law `root` and transition
/// matrix `p` along every edge, away from the root.
pub fn chain_distribution(
    tree: &FiniteTree,
    p: &TransitionMatrix2,
    root: &Distribution2,
    limits: &Limits,
    exec: Exec,
) -> Result<ConfigDistribution> {
    check_cap("distribution tree", tree.len(), limits.distribution_vertices)?;
    let edges: Vec<(usize, usize)> = tree.edges().collect();
    let probs = exec.map(1usize << tree.len(), |s| {
        let spin = |v: usize| s >> v & 1 == 1;
        edges
            .iter()
            .fold(root.prob(spin(0)), |acc, &(u, v)| acc * p.entry(spin(u), spin(v)))
    });
    ConfigDistribution::new(tree.clone(), probs)
}

/// Independent spins, each plus with probability `density`.
pub fn product_distribution(
    tree: &FiniteTree,
    density: f64,
    limits: &Limits,
    exec: Exec,
) -> Result<ConfigDistribution> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::Domain(format!("density must be a probability, got {density}")));
    }
    check_cap("distribution tree", tree.len(), limits.distribution_vertices)?;
    let n = tree.len() as i32;
    let probs = exec.map(1usize << n, |s| {
        let k = s.count_ones() as i32;
        density.powi(k) * (1.0 - density).powi(n - k)
    });
    ConfigDistribution::new(tree.clone(), probs)
}
