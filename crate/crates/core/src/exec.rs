//! Data-parallel map over index ranges.
//!
//! Grid tabulation and Monte Carlo paths both reduce to "evaluate `f(i)` for
//! `i in 0..n` and keep the results in index order". With the `parallel`
//! feature this runs on the rayon pool; without it, or with
//! [`Execution::Sequential`], it is a plain loop. Output order never depends
//! on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    pub fn map_range<R, F>(self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => (0..n).into_par_iter().map(f).collect(),
            _ => (0..n).map(f).collect(),
        }
    }

    pub fn try_map_range<R, F>(self, n: usize, f: F) -> Result<Vec<R>>
    where
        R: Send,
        F: Fn(usize) -> Result<R> + Sync + Send,
    {
        self.map_range(n, f).into_iter().collect()
    }

    pub fn try_map_slice<T, R, F>(self, items: &[T], f: F) -> Result<Vec<R>>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Result<R> + Sync + Send,
    {
        self.try_map_range(items.len(), |i| f(&items[i]))
    }
}

/// Cap the global worker pool. A no-op without the `parallel` feature.
///
/// Must be called before the first parallel map; later calls fail because
/// rayon's global pool can only be built once.
pub fn init_thread_pool(threads: usize) -> Result<()> {
    if threads == 0 {
        return Err(Error::Config("thread count must be at least 1".into()));
    }
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_preserve_order() {
        let seq = Execution::Sequential.map_range(1000, |i| i * i);
        let par = Execution::Parallel.map_range(1000, |i| i * i);
        assert_eq!(seq, par);
        assert_eq!(seq[31], 961);
    }

    #[test]
    fn first_error_is_reported() {
        let r: Result<Vec<usize>> = Execution::default().try_map_range(10, |i| {
            if i == 3 {
                Err(Error::Config("three".into()))
            } else {
                Ok(i)
            }
        });
        assert_eq!(r, Err(Error::Config("three".into())));
    }

    #[test]
    fn zero_threads_rejected() {
        assert!(init_thread_pool(0).is_err());
    }
}
