//! Execution strategy for data-parallel loops.
//!
//! Grid sweeps, configuration-space enumerations and curve generation all
//! reduce to "evaluate `f(i)` for `i in 0..n` and collect in index order".
//! [`Exec::Parallel`] runs those loops on the rayon pool when the `parallel`
//! feature is enabled and silently falls back to the sequential loop
//! otherwise. Results are always returned in index order, so output does not
//! depend on the strategy.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// True when this strategy actually runs on more than one thread.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n).into_par_iter().map(f).collect(),
            _ => (0..n).map(f).collect(),
        }
    }

    /// Like [`Exec::map`] but short-circuits on the first error (in index
    /// order for the sequential path; some error for the parallel path).
    pub fn try_map<T, E, F>(self, n: usize, f: F) -> Result<Vec<T>, E>
    where
        T: Send,
        E: Send,
        F: Fn(usize) -> Result<T, E> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n).into_par_iter().map(f).collect(),
            _ => (0..n).map(f).collect(),
        }
    }

    pub fn sum<F>(self, n: usize, f: F) -> f64
    where
        F: Fn(usize) -> f64 + Sync + Send,
    {
        // Summation order must not depend on the strategy, so the parallel
        // path materializes the terms and reduces sequentially.
        self.map(n, f).iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree_in_order() {
        let f = |i: usize| (i as f64).sqrt();
        let a = Exec::Sequential.map(1000, f);
        let b = Exec::Parallel.map(1000, f);
        assert_eq!(a, b);
        assert_eq!(Exec::Sequential.sum(1000, f), Exec::Parallel.sum(1000, f));
    }

    #[test]
    fn try_map_propagates_errors() {
        let r: Result<Vec<usize>, String> =
            Exec::Sequential.try_map(10, |i| if i == 7 { Err(format!("bad {i}")) } else { Ok(i) });
        assert_eq!(r, Err("bad 7".to_string()));
        let r: Result<Vec<usize>, String> = Exec::Parallel.try_map(10, Ok);
        assert_eq!(r.unwrap(), (0..10).collect::<Vec<_>>());
    }
}
