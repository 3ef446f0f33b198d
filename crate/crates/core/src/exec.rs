//! Batch execution helpers: parallel with the `parallel` feature,
//! sequential otherwise. The sequential path is always compiled so the
//! bench suite can compare both in one binary.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items` preserving input order.
#[cfg(feature = "parallel")]
pub fn map_indexed<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(usize, &T) -> U + Sync,
{
    items
        .par_iter()
        .enumerate()
        .map(|(i, item)| f(i, item))
        .collect()
}

/// Maps `f` over `items` preserving input order.
#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(usize, &T) -> U,
{
    map_indexed_seq(items, f)
}

/// Sequential map, kept available for comparison benches.
pub fn map_indexed_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(usize, &T) -> U,
{
    items
        .iter()
        .enumerate()
        .map(|(i, item)| f(i, item))
        .collect()
}

/// Runs `f` inside a pool of `workers` threads when the `parallel`
/// feature is enabled; `None` uses the default pool. Without the
/// feature the cap is irrelevant and `f` just runs.
#[cfg(feature = "parallel")]
pub fn with_workers<R: Send>(workers: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match workers {
        Some(n) if n > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("worker pool")
            .install(f),
        _ => f(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn with_workers<R>(_workers: Option<usize>, f: impl FnOnce() -> R) -> R {
    f()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree() {
        let items: Vec<u64> = (0..500).collect();
        let square = |_i: usize, x: &u64| x * x;
        assert_eq!(map_indexed(&items, square), map_indexed_seq(&items, square));
    }

    #[test]
    fn order_is_preserved() {
        let items: Vec<usize> = (0..1000).collect();
        let mapped = map_indexed(&items, |i, _| i);
        assert_eq!(mapped, items);
    }

    #[test]
    fn worker_cap_changes_nothing_about_results() {
        let items: Vec<u64> = (0..100).collect();
        let doubled = with_workers(Some(2), || map_indexed(&items, |_, x| x * 2));
        assert_eq!(doubled, map_indexed_seq(&items, |_, x| x * 2));
    }
}
