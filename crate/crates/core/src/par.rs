//! Data-parallel helpers. With the `parallel` feature these dispatch to rayon,
//! otherwise they run as plain iterators. Output order never depends on
//! scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// `(0..n).map(f).collect()`, possibly in parallel.
pub fn map_range<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Maximum of the nonnegative values `f(i)` over `lo..hi`; NaN values are
/// ignored. Returns `0.0` for an empty range. `max` is exact, so the result is scheduling independent.
pub fn max_range<F>(lo: usize, hi: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (lo..hi).into_par_iter().map(f).reduce(|| 0.0, f64::max)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (lo..hi).map(f).fold(0.0, f64::max)
    }
}

/// Whether the crate was built with rayon support.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
