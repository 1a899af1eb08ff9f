//! Serial/parallel execution switch.
//!
//! Work is always cut into the same fixed chunks and the per-chunk results
//! are merged in chunk order, so both paths produce identical output. With
//! the `parallel` feature disabled, [`Execution::Parallel`] quietly runs
//! serially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Serial,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether work will actually be spread over the rayon pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Evaluates `f(0..chunks)` and returns the results in chunk order.
pub(crate) fn map_chunks<T, F>(chunks: usize, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..chunks).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..chunks).map(f).collect()
}
