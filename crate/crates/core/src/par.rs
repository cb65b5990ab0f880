//! Data-parallel helpers. With the `parallel` feature these fan out over
//! rayon; without it (or with [`Execution::Sequential`]) they run in order on
//! the calling thread. Results are always returned in input order.

use std::ops::Range;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
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
    /// Whether work will actually be spread across threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

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

/// Minimum of `f` over `range`, `None` for an empty range or when `f` yields
/// `None` everywhere.
pub fn min_over<F>(exec: Execution, range: Range<u64>, f: F) -> Option<usize>
where
    F: Fn(u64) -> Option<usize> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return range.into_par_iter().filter_map(f).min();
    }
    let _ = exec;
    range.filter_map(f).min()
}

/// Maximum of `f` over `range`.
pub fn max_over<F>(exec: Execution, range: Range<u64>, f: F) -> Option<usize>
where
    F: Fn(u64) -> usize + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return range.into_par_iter().map(f).max();
    }
    let _ = exec;
    range.map(f).max()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree() {
        let items: Vec<u64> = (0..1000).collect();
        for exec in [Execution::Sequential, Execution::Parallel] {
            assert_eq!(map(exec, &items, |x| x * 2)[999], 1998);
            assert_eq!(min_over(exec, 3..50, |x| Some((x % 7) as usize + 1)), Some(1));
            assert_eq!(min_over(exec, 0..0, |_| Some(1)), None);
            assert_eq!(max_over(exec, 0..50, |x| x as usize), Some(49));
        }
    }
}
