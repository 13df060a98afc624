//! Scan kernels shared by the subgroup operators.
//!
//! Every kernel has a sequential implementation (always compiled; it is the
//! fallback when the `parallel` feature is off) and a rayon implementation
//! behind the feature flag. Both produce identical, deterministically ordered
//! results, so the public operators behave the same either way; the benches
//! compare the two variants directly.

/// Positions in `0..n` satisfying `pred`, in increasing order.
pub fn filter_positions_seq<F>(n: usize, pred: F) -> Vec<usize>
where
    F: Fn(usize) -> bool + Sync,
{
    (0..n).filter(|&i| pred(i)).collect()
}

#[cfg(feature = "parallel")]
pub fn filter_positions_par<F>(n: usize, pred: F) -> Vec<usize>
where
    F: Fn(usize) -> bool + Sync,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().filter(|&i| pred(i)).collect()
}

/// Dispatching wrapper used by the operators.
pub fn filter_positions<F>(n: usize, pred: F) -> Vec<usize>
where
    F: Fn(usize) -> bool + Sync,
{
    #[cfg(feature = "parallel")]
    {
        filter_positions_par(n, pred)
    }
    #[cfg(not(feature = "parallel"))]
    {
        filter_positions_seq(n, pred)
    }
}

/// Maps `f` over `0..n`, preserving index order in the output.
pub fn map_positions_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    (0..n).map(&f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_positions_par<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(&f).collect()
}

pub fn map_positions<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    #[cfg(feature = "parallel")]
    {
        map_positions_par(n, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_positions_seq(n, f)
    }
}

/// Sorts a vector with a stable, deterministic result.
pub fn sort_vec<T: Ord + Send>(v: &mut Vec<T>) {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        v.par_sort_unstable();
    }
    #[cfg(not(feature = "parallel"))]
    {
        v.sort_unstable();
    }
}

pub fn sort_vec_seq<T: Ord>(v: &mut Vec<T>) {
    v.sort_unstable();
}
