//! Execution policy for batch checks.
//!
//! Every sweep in the crate (squares of a cube, subsets `T`, quantifier
//! tuples, corpora of instances) goes through these helpers so the
//! sequential and data-parallel paths produce identical, ordered results.

/// How a batch of independent checks is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Execution {
    #[default]
    Parallel,
    Sequential,
}

impl Execution {
    /// True when this build can actually run work in parallel.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Map over a slice, preserving order.
pub fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Returns the first item (in slice order) for which `f` yields `Some`.
pub fn find_first<T, R, F>(exec: Execution, items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().find_map_first(f);
    }
    let _ = exec;
    items.iter().find_map(f)
}

/// Default policy from the environment: `ADMCUBE_SEQUENTIAL=1` forces the
/// sequential path.
pub fn default_execution() -> Execution {
    match std::env::var("ADMCUBE_SEQUENTIAL") {
        Ok(v) if v == "1" => Execution::Sequential,
        _ => Execution::Parallel,
    }
}
