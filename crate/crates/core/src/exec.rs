//! Data-parallel map helpers.
//!
//! Every hot loop in the crate (tau sweeps, interferogram scans, photon-count
//! sampling) maps an index range to independent outputs. `map_indexed`
//! dispatches to rayon when the `parallel` feature is enabled and to the
//! sequential path otherwise. Results are collected in index order, so both
//! paths produce bitwise-identical vectors; the `_seq` and `_par` variants
//! stay public for benchmarks that compare them.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `0..n` through `f`, parallel when the `parallel` feature is on.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        map_indexed_par(n, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_indexed_seq(n, f)
    }
}

/// Sequential variant, always available.
pub fn map_indexed_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

/// Rayon variant. Index-ordered collect keeps output identical to `_seq`.
#[cfg(feature = "parallel")]
pub fn map_indexed_par<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_indexed_matches_sequential() {
        let f = |i: usize| (i as f64).sqrt() * 3.7;
        let a = map_indexed(1000, f);
        let b = map_indexed_seq(1000, f);
        assert_eq!(a, b);
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_collect_is_index_ordered() {
        let a = map_indexed_par(10_000, |i| i * 2);
        assert!(a.iter().enumerate().all(|(i, &v)| v == i * 2));
    }
}
