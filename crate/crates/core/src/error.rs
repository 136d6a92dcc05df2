use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A finite-tree computation would exceed its configured size cap.
    #[error("size error: {what} has {actual} vertices, cap is {cap}")]
    Size {
        what: &'static str,
        actual: usize,
        cap: usize,
    },

    /// A hypothesis that a result depends on does not hold for these inputs.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Two independent routes to the same quantity disagree.
    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),

    #[error("singular point: {0}")]
    Singular(String),

    #[error("no convergence after {iterations} iterations: {what}")]
    NoConvergence { what: &'static str, iterations: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(name: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be finite, got {x}")))
    }
}

pub(crate) fn ensure_coupling(j: f64) -> Result<()> {
    ensure_finite("coupling J", j)?;
    if j > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("coupling J must be positive, got {j}")))
    }
}

pub(crate) fn ensure_branching(d: u32) -> Result<()> {
    if d >= 2 {
        Ok(())
    } else {
        Err(Error::Domain(format!("branching d must be at least 2, got {d}")))
    }
}
