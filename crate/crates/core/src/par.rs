//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) `Strategy::Parallel` runs on
//! the rayon pool; without it every strategy runs sequentially. Results are
//! always returned in index order, so outputs never depend on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

/// `f(0), f(1), …, f(n-1)` in order.
pub fn map_range<U, F>(n: usize, strategy: Strategy, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => (0..n).into_par_iter().map(f).collect(),
        _ => (0..n).map(f).collect(),
    }
}

pub fn map_slice<T, U, F>(items: &[T], strategy: Strategy, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    map_range(items.len(), strategy, |i| f(&items[i]))
}

/// First `Some` in index order.
pub fn find_first<U, F>(n: usize, strategy: Strategy, f: F) -> Option<U>
where
    U: Send,
    F: Fn(usize) -> Option<U> + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => (0..n).into_par_iter().find_map_first(f),
        _ => (0..n).find_map(f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let f = |i: usize| i * i;
        assert_eq!(map_range(100, Strategy::Sequential, f), map_range(100, Strategy::Parallel, f));
        let g = |i: usize| (i % 7 == 6).then_some(i);
        assert_eq!(find_first(100, Strategy::Parallel, g), Some(6));
        assert_eq!(find_first(100, Strategy::Sequential, g), Some(6));
        assert_eq!(find_first(5, Strategy::Parallel, g), None);
    }
}
