//! Data-parallel execution primitives with a sequential fallback.
//!
//! Every hot loop in this crate (convolution output samples, Monte-Carlo
//! realizations, delay scans, sweep points) is expressed through the two
//! helpers below. With the default `parallel` feature they fan out over a
//! rayon pool; without it they run as plain sequential loops. Both paths
//! perform bit-identical arithmetic: maps collect in index order and
//! reductions fold fixed-size chunk partials in chunk order, so results do
//! not depend on thread count or scheduling.

pub use self::actual::{map_chunks, map_indexed};

use std::ops::Range;

/// Splits `0..n` into consecutive ranges of at most `chunk` elements.
pub(crate) fn chunk_ranges(n: usize, chunk: usize) -> Vec<Range<usize>> {
    assert!(chunk > 0, "chunk size must be positive");
    (0..n.div_ceil(chunk))
        .map(|c| c * chunk..((c + 1) * chunk).min(n))
        .collect()
}

#[cfg(feature = "parallel")]
mod actual {
    use super::chunk_ranges;
    use rayon::prelude::*;
    use std::ops::Range;

    /// Maps `f` over `0..n`, preserving index order in the output.
    pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..n).into_par_iter().map(f).collect()
    }

    /// Maps `f` over fixed-size chunk ranges of `0..n`, in chunk order.
    ///
    /// Callers fold the returned partials sequentially, which keeps
    /// floating-point reductions deterministic.
    pub fn map_chunks<T, F>(n: usize, chunk: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(Range<usize>) -> T + Sync + Send,
    {
        chunk_ranges(n, chunk).into_par_iter().map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
mod actual {
    use super::chunk_ranges;
    use std::ops::Range;

    pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..n).map(f).collect()
    }

    pub fn map_chunks<T, F>(n: usize, chunk: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(Range<usize>) -> T + Sync + Send,
    {
        chunk_ranges(n, chunk).into_iter().map(f).collect()
    }
}
