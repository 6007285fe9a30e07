//! Execution strategy for the brute-force sweeps.
//!
//! Every exhaustive search in the crate funnels through [`Execution`], so the
//! same code path runs either on the rayon pool or on the calling thread.
//! Results are always returned in index order, which keeps counts, witness
//! lists and reports identical between the two strategies.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled, otherwise falls back
    /// to sequential evaluation.
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
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// Number of indices in `range` satisfying `pred`.
    pub fn count<F>(self, range: Range<u64>, pred: F) -> usize
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range.into_par_iter().filter(|&i| pred(i)).count();
        }
        range.filter(|&i| pred(i)).count()
    }

    /// Keeps the `Some` results of `f` over `range`, in index order.
    pub fn filter_map<T, F>(self, range: Range<u64>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> Option<T> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range.into_par_iter().filter_map(f).collect();
        }
        range.filter_map(f).collect()
    }

    /// Maps `f` over a slice, preserving order.
    pub fn map<I, T, F>(self, items: &[I], f: F) -> Vec<T>
    where
        I: Sync,
        T: Send,
        F: Fn(&I) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// True iff `pred` holds for every index in `range`.
    pub fn all<F>(self, range: Range<u64>, pred: F) -> bool
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range.into_par_iter().all(pred);
        }
        range.into_iter().all(pred)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        for exec in [Execution::Sequential, Execution::Parallel] {
            assert_eq!(exec.count(0..1000, |i| i % 7 == 0), 143);
            let kept = exec.filter_map(0..50, |i| (i % 10 == 3).then_some(i));
            assert_eq!(kept, vec![3, 13, 23, 33, 43]);
            assert_eq!(exec.map(&[1, 2, 3], |x| x * 2), vec![2, 4, 6]);
            assert!(exec.all(0..10, |i| i < 10));
        }
    }
}
