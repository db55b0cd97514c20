//! Data-parallel helpers. With the `parallel` feature these run on rayon;
//! without it they fall back to plain iterators with the same results.

use std::ops::Range;

/// How an enumeration should be scheduled. `Parallel` degrades to sequential
/// execution when the crate is built without the `parallel` feature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

/// `Σ_{i in range} f(i)`. Integer sums are schedule independent.
pub fn sum_range<F>(range: Range<u32>, exec: Execution, f: F) -> u64
where
    F: Fn(u32) -> u64 + Sync + Send,
{
    match exec {
        Execution::Sequential => range.map(f).sum(),
        Execution::Parallel => par_sum_range(range, f),
    }
}

#[cfg(feature = "parallel")]
fn par_sum_range<F>(range: Range<u32>, f: F) -> u64
where
    F: Fn(u32) -> u64 + Sync + Send,
{
    use rayon::prelude::*;
    range.into_par_iter().map(f).sum()
}

#[cfg(not(feature = "parallel"))]
fn par_sum_range<F>(range: Range<u32>, f: F) -> u64
where
    F: Fn(u32) -> u64 + Sync + Send,
{
    range.map(f).sum()
}

/// Order-preserving map over a slice.
pub fn map_slice<T, R, F>(items: &[T], exec: Execution, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        Execution::Sequential => items.iter().map(f).collect(),
        Execution::Parallel => par_map_slice(items, f),
    }
}

#[cfg(feature = "parallel")]
fn par_map_slice<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map_slice<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_schedules_agree() {
        let f = |i: u32| (i as u64 * 7919) % 101;
        assert_eq!(
            sum_range(0..10_000, Execution::Sequential, f),
            sum_range(0..10_000, Execution::Parallel, f)
        );
        let items: Vec<u32> = (0..100).collect();
        assert_eq!(
            map_slice(&items, Execution::Parallel, |x| x * x),
            map_slice(&items, Execution::Sequential, |x| x * x)
        );
    }
}
