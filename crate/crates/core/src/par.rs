//! Execution strategy for index-space searches.
//!
//! Searches report the least matching index regardless of strategy, so
//! sequential and parallel runs produce identical results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Rayon work-stealing. Without the `parallel` feature this runs
    /// sequentially.
    #[default]
    Parallel,
}

impl Exec {
    /// Least `i < n` with `f(i) = Some(_)`.
    pub fn find_first<T, F>(self, n: usize, f: F) -> Option<(usize, T)>
    where
        T: Send,
        F: Fn(usize) -> Option<T> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n)
                .into_par_iter()
                .find_map_first(|i| f(i).map(|t| (i, t))),
            _ => (0..n).find_map(|i| f(i).map(|t| (i, t))),
        }
    }

    /// Like [`Exec::find_first`] for fallible probes. An error counts as a
    /// hit, so the earliest of errors and matches is returned.
    pub fn try_find_first<T, E, F>(self, n: usize, f: F) -> Result<Option<(usize, T)>, E>
    where
        T: Send,
        E: Send,
        F: Fn(usize) -> Result<Option<T>, E> + Sync + Send,
    {
        let hit = self.find_first(n, |i| match f(i) {
            Ok(None) => None,
            Ok(Some(t)) => Some(Ok(t)),
            Err(e) => Some(Err(e)),
        });
        match hit {
            None => Ok(None),
            Some((i, Ok(t))) => Ok(Some((i, t))),
            Some((_, Err(e))) => Err(e),
        }
    }

    /// `f` over `0..n`, results in index order.
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
}
