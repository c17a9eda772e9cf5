//! Work-splitting strategy for sweep-style operations.

/// How sweep operations (permutation tables, verification runs) split their
/// work across threads. Defaults to [`Threading::Parallel`] when the
/// `parallel` feature is enabled, [`Threading::Sequential`] otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Threading {
    /// Single-threaded; always available.
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    /// Fan out over the rayon thread pool.
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

/// Maps `0..count` through `f`, preserving index order in the output so the
/// result is identical whichever strategy ran it.
pub(crate) fn map_indices<T, F>(threading: Threading, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match threading {
        Threading::Sequential => (0..count).map(f).collect(),
        #[cfg(feature = "parallel")]
        Threading::Parallel => {
            use rayon::prelude::*;
            (0..count).into_par_iter().map(f).collect()
        }
    }
}
