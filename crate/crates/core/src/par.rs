//! Thin fan-out helper: with the `parallel` feature the closure runs over a
//! rayon pool when asked to, otherwise everything stays on the calling
//! thread. Callers must only hand in closures whose per-index results are
//! independent of scheduling, so both paths produce identical output.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub fn run_indexed<T, F>(count: usize, parallel: bool, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if parallel {
        (0..count).into_par_iter().map(f).collect()
    } else {
        (0..count).map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
pub fn run_indexed<T, F>(count: usize, _parallel: bool, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..count).map(f).collect()
}

/// True when the `parallel` feature is compiled in.
pub fn parallel_available() -> bool {
    cfg!(feature = "parallel")
}
