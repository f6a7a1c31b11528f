//! Data-parallel helpers. With the `parallel` feature (default) these fan out
//! over rayon; without it they fall back to sequential loops with identical
//! results. Every site that uses them computes elements independently and
//! merges in index order, so output is bit-identical either way.

/// Maps `f` over `0..len`, collecting in index order.
#[cfg(feature = "parallel")]
pub fn par_collect<U, F>(len: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    use rayon::prelude::*;
    (0..len).into_par_iter().map(f).collect()
}

/// Maps `f` over `0..len`, collecting in index order.
#[cfg(not(feature = "parallel"))]
pub fn par_collect<U, F>(len: usize, f: F) -> Vec<U>
where
    F: Fn(usize) -> U,
{
    (0..len).map(f).collect()
}

/// Sequential twin of [`par_collect`], kept available for benchmarking the
/// parallel speedup and for forcing serial execution.
pub fn seq_collect<U, F>(len: usize, f: F) -> Vec<U>
where
    F: Fn(usize) -> U,
{
    (0..len).map(f).collect()
}

/// Runs `f` inside a rayon pool with the given thread count. The result does
/// not depend on `threads`; this only controls resource usage.
#[cfg(feature = "parallel")]
pub fn with_threads<R, F>(threads: usize, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("failed to build thread pool")
        .install(f)
}

/// Runs `f` directly; the sequential build has no pool to configure.
#[cfg(not(feature = "parallel"))]
pub fn with_threads<R, F>(_threads: usize, f: F) -> R
where
    F: FnOnce() -> R,
{
    f()
}
